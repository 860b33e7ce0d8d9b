#pragma once

#include <span>
#include <string_view>

namespace dtn::harness {

enum class Verdict { AOutperformsB, BOutperformsA, NoSignificantDifference, NoDecision };
std::string_view toString(Verdict v);

/// Wilcoxon rank-sum (Mann-Whitney) test where "outperforms" means smaller
/// values. Ties get mid-ranks.
struct RankSumResult {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double w = 0.0;         // rank sum of sample A
    double pLess = 1.0;     // H1: A tends to be smaller
    double pGreater = 1.0;  // H1: A tends to be larger
    double pTwoSided = 1.0;
    bool exact = false;
    Verdict verdict = Verdict::NoDecision;
};

/// Exact null distribution (over all rank assignments, ties included) when
/// n1 + n2 <= exactLimit; otherwise the normal approximation with tie
/// correction and continuity correction. Verdict uses the one-sided p-values:
/// p < alpha. All values equal gives NoDecision.
RankSumResult rankSumTest(std::span<const double> a, std::span<const double> b, double alpha = 0.05,
                          std::size_t exactLimit = 20);

double median(std::span<const double> values);

}  // namespace dtn::harness
