#pragma once

#include <cstddef>
#include <utility>

#include "dtnattack/genome/attacker_genome.hpp"

namespace dtn::genome {

struct CrossoverResult {
    AttackerGenome first;   // head from parent a
    AttackerGenome second;  // head from parent b
    /// Cells added or removed to bring offspring back into [minPois, maxPois].
    int repairs = 0;
};

struct MutationResult {
    AttackerGenome genome;
    /// How many times the mutation was applied (1 + geometric repeats).
    int applications = 0;
};

/// Cut positions are head lengths: cutA in [0, |a|], cutB in [0, |b|].
/// Children are a[:cutA] + b[cutB:] and b[:cutB] + a[cutA:].
CrossoverResult onePointImpreciseCrossoverAt(const AttackerGenome& a, const AttackerGenome& b, std::size_t cutA,
                                             std::size_t cutB, const GenomeSpace& space, Rng& rng);
CrossoverResult onePointImpreciseCrossover(const AttackerGenome& a, const AttackerGenome& b,
                                           const GenomeSpace& space, Rng& rng);

/// Half-open middle slices [startA, endA) and [startB, endB) are exchanged.
CrossoverResult twoPointImpreciseCrossoverAt(const AttackerGenome& a, const AttackerGenome& b,
                                             std::pair<std::size_t, std::size_t> sliceA,
                                             std::pair<std::size_t, std::size_t> sliceB,
                                             const GenomeSpace& space, Rng& rng);
CrossoverResult twoPointImpreciseCrossover(const AttackerGenome& a, const AttackerGenome& b,
                                           const GenomeSpace& space, Rng& rng);

// Mutations. Each is applied once, then re-applied while a uniform draw
// falls below `strength`.

/// Redraws one slot (a POI row, a POI column, the movement class or the
/// attack logic) to a different value from its domain, when one exists.
MutationResult singleParameterAlterationMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng,
                                                 double strength);
/// Adds a random cell at a random position; no-op at maxPois.
MutationResult insertionMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength);
/// Removes a random cell; no-op at minPois.
MutationResult removalMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength);
/// Replaces a random cell with a fresh random cell.
MutationResult replacementMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength);

/// Number of slots singleParameterAlterationMutation chooses between.
std::size_t alterableSlotCount(const AttackerGenome& g);

/// Truncates or pads (with random cells) to the space's length bounds.
/// Returns the number of cells added or removed.
int clampLength(AttackerGenome& g, const GenomeSpace& space, Rng& rng);

}  // namespace dtn::genome
