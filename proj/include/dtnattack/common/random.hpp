#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace dtn {

/// SplitMix64 finalizer. Used to derive independent stream seeds and for
/// counter-based draws that must not depend on call order.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t combineSeed(std::uint64_t seed, std::uint64_t salt) noexcept {
    return mix64(seed ^ mix64(salt + 0x632be59bd9b4e019ULL));
}

template <typename... Salts>
constexpr std::uint64_t deriveSeed(std::uint64_t seed, Salts... salts) noexcept {
    ((seed = combineSeed(seed, static_cast<std::uint64_t>(salts))), ...);
    return seed;
}

/// Maps 64 random bits onto [0, 1) with 53-bit resolution.
constexpr double unitFromBits(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Random stream with portable, implementation-independent distributions.
///
/// The standard library's distribution objects are allowed to differ between
/// vendors, which would break bit-reproducible campaigns; the engine itself
/// (mt19937_64) is fully specified, so only the mapping is done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return unitFromBits(engine_()); }

    /// Uniform double in [lo, hi]; returns lo when the range is degenerate.
    double uniform(double lo, double hi) {
        if (!(hi > lo)) return lo;
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) {
        // Values below `threshold` are rejected so that 2^64 - threshold is a
        // multiple of n.
        const std::uint64_t threshold = (std::uint64_t{0} - n) % n;
        std::uint64_t x = engine_();
        while (x < threshold) x = engine_();
        return x % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::string state() const;
    void restore(std::string_view state);

private:
    std::mt19937_64 engine_;
};

}  // namespace dtn
