#include "dtnattack/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dtnattack/common/error.hpp"

namespace dtn::harness {

std::string_view toString(Verdict v) {
    switch (v) {
        case Verdict::AOutperformsB:
            return "A outperforms B";
        case Verdict::BOutperformsA:
            return "B outperforms A";
        case Verdict::NoSignificantDifference:
            return "no significant difference";
        case Verdict::NoDecision:
            return "no decision";
    }
    return "no decision";
}

double median(std::span<const double> values) {
    if (values.empty()) throw ValidationError("median of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

namespace {

double normalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

RankSumResult rankSumTest(std::span<const double> a, std::span<const double> b, double alpha,
                          std::size_t exactLimit) {
    if (a.empty() || b.empty()) throw ValidationError("rank-sum test needs two non-empty samples");
    RankSumResult r;
    r.n1 = a.size();
    r.n2 = b.size();
    const std::size_t n = r.n1 + r.n2;

    std::vector<std::pair<double, bool>> pooled;  // (value, from A)
    for (const auto x : a) pooled.emplace_back(x, true);
    for (const auto x : b) pooled.emplace_back(x, false);
    std::sort(pooled.begin(), pooled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    // Doubled mid-ranks keep everything integral.
    std::vector<int> rank2(n);
    double tieTerm = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const auto t = static_cast<double>(j - i);
        tieTerm += t * t * t - t;
        for (auto k = i; k < j; ++k) rank2[k] = static_cast<int>(i + j + 1);  // (i+1)+(j) doubled midrank
        i = j;
    }
    int w2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (pooled[i].second) w2 += rank2[i];
    r.w = w2 / 2.0;

    if (pooled.front().first == pooled.back().first) return r;  // NoDecision, p = 1

    const double n1 = static_cast<double>(r.n1);
    const double n2 = static_cast<double>(r.n2);
    const double mean = n1 * (static_cast<double>(n) + 1.0) / 2.0;

    if (n <= exactLimit) {
        r.exact = true;
        const int maxSum = std::accumulate(rank2.begin(), rank2.end(), 0);
        // ways[j][s]: subsets of size j with doubled rank sum s.
        std::vector<std::vector<double>> ways(r.n1 + 1, std::vector<double>(static_cast<std::size_t>(maxSum) + 1, 0.0));
        ways[0][0] = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = std::min(i + 1, r.n1); j >= 1; --j)
                for (int s = maxSum; s >= rank2[i]; --s)
                    ways[j][static_cast<std::size_t>(s)] += ways[j - 1][static_cast<std::size_t>(s - rank2[i])];
        const auto& dist = ways[r.n1];
        const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
        const double mean2 = 2.0 * mean;
        const double dev = std::abs(w2 - mean2);
        double le = 0.0, ge = 0.0, two = 0.0;
        for (int s = 0; s <= maxSum; ++s) {
            const double c = dist[static_cast<std::size_t>(s)];
            if (c == 0.0) continue;
            if (s <= w2) le += c;
            if (s >= w2) ge += c;
            if (std::abs(s - mean2) >= dev - 1e-9) two += c;
        }
        r.pLess = le / total;
        r.pGreater = ge / total;
        r.pTwoSided = std::min(1.0, two / total);
    } else {
        const double nn = static_cast<double>(n);
        const double var = n1 * n2 / 12.0 * ((nn + 1.0) - tieTerm / (nn * (nn - 1.0)));
        const double sd = std::sqrt(var);
        const double d = r.w - mean;
        r.pLess = normalCdf((d + 0.5) / sd);
        r.pGreater = 1.0 - normalCdf((d - 0.5) / sd);
        r.pTwoSided = std::min(1.0, 2.0 * (1.0 - normalCdf((std::abs(d) - 0.5) / sd)));
    }
    if (r.pLess < alpha)
        r.verdict = Verdict::AOutperformsB;
    else if (r.pGreater < alpha)
        r.verdict = Verdict::BOutperformsA;
    else
        r.verdict = Verdict::NoSignificantDifference;
    return r;
}

}  // namespace dtn::harness
