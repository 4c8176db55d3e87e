#include "ent/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ent::rng {

namespace {

std::uint64_t splitmix_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    return splitmix_next(x);
}

Engine::Engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        word = splitmix_next(s);
    }
    // xoshiro must not start from the all-zero state.
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
        state_[0] = 1;
    }
}

std::uint64_t Engine::next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Engine::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Engine::uniform_open01() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double Engine::normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Engine::gamma(double shape) {
    if (!std::isfinite(shape) || shape <= 0.0) {
        throw std::invalid_argument("gamma shape must be positive");
    }
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        const double u = uniform_open01();
        return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open01();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double Engine::log_gamma(double shape) {
    if (!std::isfinite(shape) || shape <= 0.0) {
        throw std::invalid_argument("gamma shape must be positive");
    }
    if (shape >= 1.0) {
        return std::log(gamma(shape));
    }
    const double g = gamma(shape + 1.0);
    const double u = uniform_open01();
    return std::log(g) + std::log(u) / shape;
}

Engine substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = seed;
    for (std::uint64_t id : path) {
        s = mix64(s + 0x9e3779b97f4a7c15ULL * (id + 1));
    }
    return Engine(s);
}

}  // namespace ent::rng
