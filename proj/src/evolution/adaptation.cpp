#include "dtnattack/evolution/adaptation.hpp"

#include <algorithm>
#include <numeric>

#include "dtnattack/common/error.hpp"

namespace dtn::evolution {

void normaliseWithFloor(std::vector<double>& p, const std::vector<bool>& enabled, double floor) {
    const auto active = static_cast<std::size_t>(std::count(enabled.begin(), enabled.end(), true));
    if (active == 0) throw ValidationError("no operator is enabled");
    if (static_cast<double>(active) * floor > 1.0) throw ValidationError("probability floor too high");

    std::vector<bool> pinned(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!enabled[i]) p[i] = 0.0;
    // Pin entries that fall below the floor and rescale the rest, until stable.
    for (;;) {
        double pinnedMass = 0.0;
        double freeMass = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!enabled[i]) continue;
            (pinned[i] ? pinnedMass : freeMass) += pinned[i] ? floor : std::max(p[i], 0.0);
        }
        std::size_t freeCount = 0;
        for (std::size_t i = 0; i < p.size(); ++i) freeCount += enabled[i] && !pinned[i];
        bool changed = false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!enabled[i]) continue;
            if (pinned[i]) {
                p[i] = floor;
                continue;
            }
            p[i] = freeMass > 0.0 ? std::max(p[i], 0.0) * (1.0 - pinnedMass) / freeMass
                                  : (1.0 - pinnedMass) / static_cast<double>(freeCount);
            if (p[i] < floor) {
                pinned[i] = true;
                changed = true;
            }
        }
        if (!changed) break;
    }
}

AdaptiveState AdaptiveState::uniform(std::size_t operators, const std::vector<bool>& enabled, double tau,
                                     double sigma, double alpha) {
    if (enabled.size() != operators) throw ValidationError("operator mask size mismatch");
    AdaptiveState s;
    s.tau = std::clamp(tau, kTauMin, kTauMax);
    s.sigma = std::clamp(sigma, kSigmaMin, kSigmaMax);
    s.alpha = alpha;
    s.enabled = enabled;
    s.probabilities.assign(operators, 1.0);
    normaliseWithFloor(s.probabilities, s.enabled, kProbabilityFloor);
    return s;
}

std::size_t AdaptiveState::chooseOperator(Rng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (!enabled[i]) continue;
        acc += probabilities[i];
        last = i;
        if (u < acc) return i;
    }
    return last;  // rounding slack
}

void AdaptiveState::adapt(const std::vector<OperatorTally>& tallies, bool improved) {
    if (tallies.size() != probabilities.size()) throw ValidationError("operator tally size mismatch");
    for (std::size_t i = 0; i < tallies.size(); ++i) {
        if (!enabled[i] || tallies[i].applied == 0) continue;
        const double rate = static_cast<double>(tallies[i].succeeded) / static_cast<double>(tallies[i].applied);
        probabilities[i] = alpha * probabilities[i] + (1.0 - alpha) * rate;
    }
    normaliseWithFloor(probabilities, enabled, kProbabilityFloor);
    sigma = std::clamp(alpha * sigma + (1.0 - alpha) * (improved ? 1.0 : 0.0), kSigmaMin, kSigmaMax);
    tau = std::clamp(alpha * tau + (1.0 - alpha) * (improved ? 1.0 : 4.0), kTauMin, kTauMax);
}

}  // namespace dtn::evolution
