#include "dtnattack/evolution/selection.hpp"

namespace dtn::evolution {

std::weak_ordering compareLexicographic(const FitnessVector& u, const FitnessVector& v) {
    if (u.f1 < v.f1 - kFitnessEpsilon) return std::weak_ordering::less;
    if (v.f1 < u.f1 - kFitnessEpsilon) return std::weak_ordering::greater;
    if (u.f2 > v.f2) return std::weak_ordering::less;
    if (v.f2 > u.f2) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

std::size_t drawTournamentSize(double tau, Rng& rng) {
    if (!(tau >= 1.0)) throw ValidationError("tournament size must be >= 1");
    const double whole = std::floor(tau);
    auto size = static_cast<std::size_t>(whole);
    if (rng.uniform() < tau - whole) ++size;
    return size;
}

std::size_t tournamentSelect(std::span<const FitnessVector> fitness, double tau, Rng& rng) {
    if (fitness.empty()) throw ValidationError("tournament over an empty pool");
    const auto entrants = drawTournamentSize(tau, rng);
    std::size_t winner = rng.below(fitness.size());
    for (std::size_t i = 1; i < entrants; ++i) {
        const auto challenger = rng.below(fitness.size());
        if (isBetter(fitness[challenger], fitness[winner])) winner = challenger;
    }
    return winner;
}

}  // namespace dtn::evolution
