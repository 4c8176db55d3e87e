// Deterministic random number generation for the simulation harness.
// std::mt19937 with the standard <random> distributions would not give
// byte-reproducible streams across standard library implementations, so both
// the engine (xoshiro256**) and the distribution transforms are pinned here.
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace ent::rng {

// Identifier written into benchmark report headers.
inline constexpr const char* kEngineName = "xoshiro256starstar";

// SplitMix64 finalizer, used for seeding and stream derivation.
std::uint64_t mix64(std::uint64_t x);

class Engine {
public:
    explicit Engine(std::uint64_t seed);

    std::uint64_t next();

    double uniform01();       // [0, 1), 53-bit resolution
    double uniform_open01();  // (0, 1]
    double normal();          // standard normal (Box-Muller)

    // Gamma(shape, 1) via Marsaglia-Tsang; shapes below 1 use the boost
    // Gamma(a) = Gamma(a + 1) * U^(1/a). For shapes small enough that the
    // boost underflows, log_gamma returns the logarithm of the draw instead.
    double gamma(double shape);
    double log_gamma(double shape);

private:
    std::array<std::uint64_t, 4> state_;
};

// Independent child stream for one grid point. The path ids select, for
// example, scenario, dimension, sample size and run index; callers must keep
// the id convention stable for results to be reproducible.
Engine substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

}  // namespace ent::rng
