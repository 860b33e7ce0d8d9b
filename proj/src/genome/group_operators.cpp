#include "dtnattack/genome/group_operators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dtnattack/common/error.hpp"

namespace dtn::genome {

namespace {

/// k distinct positions out of [0, n), in ascending order.
std::vector<std::size_t> choosePositions(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

std::vector<IndividualId> sortedMembers(const AttackGroup& g) {
    auto m = g.members;
    std::sort(m.begin(), m.end());
    return m;
}

AttackGroup groupRandomInsertionMutation(const AttackGroup& g, std::span<const IndividualId> population,
                                         const GroupBounds& bounds, Rng& rng) {
    if (static_cast<int>(g.members.size()) >= bounds.kMax || population.empty()) return g;
    AttackGroup out = g;
    out.members.push_back(population[rng.below(population.size())]);
    return out;
}

AttackGroup groupRandomRemovalMutation(const AttackGroup& g, const GroupBounds& bounds, Rng& rng) {
    if (static_cast<int>(g.members.size()) <= std::max(1, bounds.kMin)) return g;
    AttackGroup out = g;
    out.members.erase(out.members.begin() + static_cast<std::ptrdiff_t>(rng.below(out.members.size())));
    return out;
}

GroupPair groupExchange(const AttackGroup& g1, const AttackGroup& g2, std::span<const std::size_t> fromFirst,
                        std::span<const std::size_t> fromSecond) {
    auto split = [](const AttackGroup& g, std::span<const std::size_t> moving) {
        std::vector<bool> out(g.members.size(), false);
        for (const auto i : moving) {
            if (i >= g.members.size() || out[i]) throw ValidationError("invalid group exchange position");
            out[i] = true;
        }
        std::pair<std::vector<IndividualId>, std::vector<IndividualId>> kept_moved;
        for (std::size_t i = 0; i < g.members.size(); ++i)
            (out[i] ? kept_moved.second : kept_moved.first).push_back(g.members[i]);
        return kept_moved;
    };
    auto [keep1, move1] = split(g1, fromFirst);
    auto [keep2, move2] = split(g2, fromSecond);
    keep1.insert(keep1.end(), move2.begin(), move2.end());
    keep2.insert(keep2.end(), move1.begin(), move1.end());
    return {{std::move(keep1)}, {std::move(keep2)}};
}

GroupPair groupBalancedCrossover(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& /*bounds*/,
                                 Rng& rng) {
    const std::size_t limit = std::min(g1.members.size(), g2.members.size());
    if (limit == 0) return {g1, g2};
    const std::size_t count = 1 + rng.below(limit);
    const auto p1 = choosePositions(g1.members.size(), count, rng);
    const auto p2 = choosePositions(g2.members.size(), count, rng);
    return groupExchange(g1, g2, p1, p2);
}

GroupPair groupUnbalancedCrossover(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& bounds,
                                   Rng& rng) {
    const std::size_t n1 = g1.members.size();
    const std::size_t n2 = g2.members.size();
    for (int attempt = 0; attempt < 100; ++attempt) {
        const std::size_t m1 = rng.below(n1 + 1);
        const std::size_t m2 = rng.below(n2 + 1);
        if (m1 + m2 == 0) continue;
        if (!bounds.admits(n1 - m1 + m2) || !bounds.admits(n2 - m2 + m1)) continue;
        const auto p1 = choosePositions(n1, m1, rng);
        const auto p2 = choosePositions(n2, m2, rng);
        return groupExchange(g1, g2, p1, p2);
    }
    return {g1, g2};
}

GroupPair groupUnionIntersection(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& bounds, Rng& rng) {
    std::map<IndividualId, std::pair<int, int>> counts;
    for (const auto m : g1.members) ++counts[m].first;
    for (const auto m : g2.members) ++counts[m].second;

    AttackGroup uni;
    AttackGroup inter;
    for (const auto& [id, c] : counts) {
        uni.members.insert(uni.members.end(), static_cast<std::size_t>(std::max(c.first, c.second)), id);
        inter.members.insert(inter.members.end(), static_cast<std::size_t>(std::min(c.first, c.second)), id);
    }
    while (static_cast<int>(uni.members.size()) > bounds.kMax)
        uni.members.erase(uni.members.begin() + static_cast<std::ptrdiff_t>(rng.below(uni.members.size())));
    // The (possibly truncated) union is the padding pool.
    while (static_cast<int>(inter.members.size()) < bounds.kMin && !uni.members.empty())
        inter.members.push_back(uni.members[rng.below(uni.members.size())]);
    while (static_cast<int>(inter.members.size()) > bounds.kMax)
        inter.members.erase(inter.members.begin() + static_cast<std::ptrdiff_t>(rng.below(inter.members.size())));
    return {std::move(uni), std::move(inter)};
}

AttackGroup groupDreamTeam(std::span<const IndividualId> rankedBestFirst, const GroupBounds& bounds, Rng& rng) {
    if (rankedBestFirst.empty()) return {};
    const auto size = static_cast<std::size_t>(rng.between(bounds.kMin, bounds.kMax));
    const std::size_t quartile = std::max<std::size_t>(1, (rankedBestFirst.size() + 3) / 4);
    const std::size_t pool = std::min(rankedBestFirst.size(), std::max(quartile, size));

    AttackGroup g;
    const auto picked = choosePositions(pool, std::min(pool, size), rng);
    for (const auto i : picked) g.members.push_back(rankedBestFirst[i]);
    // Only reachable when the whole population is smaller than the group.
    while (g.members.size() < size) g.members.push_back(rankedBestFirst[rng.below(pool)]);
    return g;
}

}  // namespace dtn::genome
