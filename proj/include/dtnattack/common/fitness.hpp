#pragma once

namespace dtn {

/// f1: mean delivery rate of honest messages (minimised).
/// f2: mean delivery latency in seconds (maximised).
struct FitnessVector {
    double f1 = 1.0;
    double f2 = 0.0;
    bool operator==(const FitnessVector&) const = default;
};

}  // namespace dtn
