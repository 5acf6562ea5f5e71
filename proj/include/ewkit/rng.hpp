// Seeded randomness helpers; every stochastic routine in the library
// derives its stream from an explicit 64-bit seed.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ewkit/matrix.hpp"

namespace ewkit {

// splitmix64 step; used to derive independent child seeds.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

// Complex standard-Gaussian components, normalized: Haar-distributed on
// the unit sphere.
inline std::vector<Complex> random_unit_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(dim);
    double n2;
    do {
        n2 = 0.0;
        for (Complex& z : v) {
            z = Complex{gauss(rng), gauss(rng)};
            n2 += std::norm(z);
        }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& z : v) z *= inv;
    return v;
}

// Dirichlet(1,...,1): exponential draws, normalized.
inline std::vector<double> random_simplex_point(int dim, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x(dim);
    double s = 0.0;
    for (double& e : x) {
        e = expo(rng);
        s += e;
    }
    for (double& e : x) e /= s;
    return x;
}

}  // namespace ewkit
