#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/fitness.hpp"
#include "dtnattack/common/random.hpp"

namespace dtn::evolution {

constexpr double kFitnessEpsilon = 1e-9;

/// `less` means u is better: lower f1 beyond ε, or f1 equal within ε and
/// strictly higher f2.
std::weak_ordering compareLexicographic(const FitnessVector& u, const FitnessVector& v);

inline bool isBetter(const FitnessVector& u, const FitnessVector& v) { return compareLexicographic(u, v) < 0; }

/// floor(τ) entrants plus one more with probability frac(τ).
std::size_t drawTournamentSize(double tau, Rng& rng);

/// Index of the tournament winner among `fitness`. Entrants are drawn
/// uniformly with replacement; the first-drawn wins ties.
std::size_t tournamentSelect(std::span<const FitnessVector> fitness, double tau, Rng& rng);

}  // namespace dtn::evolution
