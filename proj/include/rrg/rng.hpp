#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rrg {

/// Name recorded in run metadata so that outputs can be regenerated.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

/// splitmix64 finalizer; a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a sequence of words into one seed. Order matters.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = mix64(master);
    for (auto w : words) h = mix64(h ^ mix64(w));
    return h;
}

/// Deterministic random source. Every draw is defined in terms of raw
/// mt19937_64 output, so streams are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Marsaglia polar method).
    double normal();

    /// Re-seeds from the current state; used to advance to an independent stream.
    void advance_stream() { engine_.seed(mix64(engine_())); has_spare_ = false; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rrg
