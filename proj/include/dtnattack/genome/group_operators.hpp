#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dtnattack/common/random.hpp"

namespace dtn::genome {

using IndividualId = std::uint64_t;

struct GroupBounds {
    int kMin = 1;
    int kMax = 1;
    bool admits(std::size_t size) const {
        return static_cast<int>(size) >= kMin && static_cast<int>(size) <= kMax;
    }
};

/// A team of references into the individual population. The same
/// individual may appear more than once.
struct AttackGroup {
    std::vector<IndividualId> members;
    bool operator==(const AttackGroup&) const = default;
};

struct GroupPair {
    AttackGroup first;
    AttackGroup second;
};

/// Adds a uniformly drawn individual; no-op at kMax.
AttackGroup groupRandomInsertionMutation(const AttackGroup& g, std::span<const IndividualId> population,
                                         const GroupBounds& bounds, Rng& rng);
/// Removes a uniformly drawn member; no-op at kMin.
AttackGroup groupRandomRemovalMutation(const AttackGroup& g, const GroupBounds& bounds, Rng& rng);

/// Swaps `count` randomly chosen members of each group (count drawn in
/// [1, min(|g1|, |g2|)]). Sizes are preserved.
GroupPair groupBalancedCrossover(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& bounds, Rng& rng);

/// Moves the members at positions `fromFirst` of g1 into g2 and those at
/// `fromSecond` of g2 into g1. No bounds check.
GroupPair groupExchange(const AttackGroup& g1, const AttackGroup& g2, std::span<const std::size_t> fromFirst,
                        std::span<const std::size_t> fromSecond);

/// Moves m1 random members out of g1 and m2 out of g2, with m1 and m2 drawn
/// independently and redrawn (at most 100 times) until both offspring fit the
/// bounds; returns the parents unchanged if no draw fits.
GroupPair groupUnbalancedCrossover(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& bounds,
                                   Rng& rng);

/// Multiset union (max multiplicity) and intersection (min multiplicity).
/// Union above kMax loses random members; intersection below kMin is padded
/// with random members of the union.
GroupPair groupUnionIntersection(const AttackGroup& g1, const AttackGroup& g2, const GroupBounds& bounds, Rng& rng);

/// Builds a group from the best individuals. `rankedBestFirst` lists the
/// individual population sorted by individual fitness. Size is uniform in
/// [kMin, kMax]; members are drawn without replacement from the top quartile,
/// widened to the top `size` individuals when the quartile is too small.
AttackGroup groupDreamTeam(std::span<const IndividualId> rankedBestFirst, const GroupBounds& bounds, Rng& rng);

/// Members in ascending order; the canonical multiset view.
std::vector<IndividualId> sortedMembers(const AttackGroup& g);

}  // namespace dtn::genome
