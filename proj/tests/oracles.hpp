// Test-only oracles, independent of the library's optimization paths:
// direct grid searches, explicit index manipulations, random fixtures.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ewkit/ewkit.hpp"

namespace oracles {

using ewkit::Complex;
using ewkit::ComplexMatrix;

// Random Hermitian matrix with entries of order 1.
inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r) {
        m(r, r) = gauss(rng);
        for (int c = r + 1; c < n; ++c) {
            m(r, c) = Complex{gauss(rng), gauss(rng)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

// Wishart-style random density matrix on (d_a, d_b).
inline ewkit::DensityMatrix random_density(int d_a, int d_b, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = d_a * d_b;
    ComplexMatrix g(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = Complex{gauss(rng), gauss(rng)};
    ComplexMatrix w = g * g.adjoint();
    w *= Complex{1.0 / w.trace().real(), 0.0};
    // symmetrize away rounding
    ComplexMatrix h = w;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (w(r, c) + std::conj(w(c, r)));
    h.set_bipartite_dims({d_a, d_b});
    return ewkit::DensityMatrix(std::move(h));
}

// Convex mixture of random product states: separable by construction.
inline ewkit::DensityMatrix random_separable(int d_a, int d_b, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = d_a * d_b;
    const int terms = 2 * n;
    std::vector<double> weights = ewkit::random_simplex_point(terms, rng);
    ComplexMatrix m(n);
    for (int t = 0; t < terms; ++t) {
        const ewkit::ProductVector pv =
            ewkit::random_product_vector(d_a, d_b, ewkit::derive_seed(seed, 100 + t));
        const ComplexMatrix proj = ewkit::outer(pv.joint, pv.joint);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) += weights[t] * proj(r, c);
    }
    ComplexMatrix h = m;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    h.set_bipartite_dims({d_a, d_b});
    return ewkit::DensityMatrix(std::move(h));
}

// <mu nu| rho |mu nu> with the two-qubit Bloch-angle parameterization
// mu = (cos t1/2, e^{i s1} sin t1/2), nu likewise.
inline double bloch_expectation(const ComplexMatrix& rho, double t1, double s1, double t2,
                                double s2) {
    const Complex mu0{std::cos(t1 / 2.0), 0.0};
    const Complex mu1 = std::polar(std::sin(t1 / 2.0), s1);
    const Complex nu0{std::cos(t2 / 2.0), 0.0};
    const Complex nu1 = std::polar(std::sin(t2 / 2.0), s2);
    const Complex v[4] = {mu0 * nu0, mu0 * nu1, mu1 * nu0, mu1 * nu1};
    Complex s{0.0, 0.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s += std::conj(v[r]) * rho(r, c) * v[c];
    return s.real();
}

// Grid search over the Bloch angles with repeated local refinement around
// the best point.  Independent oracle for the two-qubit product infimum.
inline double bloch_grid_min(const ComplexMatrix& rho, int coarse = 24, int levels = 9) {
    const double pi = std::numbers::pi;
    double c1 = pi / 2.0, cs1 = pi, c2 = pi / 2.0, cs2 = pi;  // centers
    double ht = pi / 2.0, hs = pi;                            // half-widths
    double best = 1e300;
    for (int level = 0; level < levels; ++level) {
        double b1 = c1, bs1 = cs1, b2 = c2, bs2 = cs2;
        for (int i = 0; i <= coarse; ++i)
            for (int j = 0; j <= coarse; ++j)
                for (int k = 0; k <= coarse; ++k)
                    for (int l = 0; l <= coarse; ++l) {
                        const double t1 = c1 + ht * (2.0 * i / coarse - 1.0);
                        const double s1 = cs1 + hs * (2.0 * j / coarse - 1.0);
                        const double t2 = c2 + ht * (2.0 * k / coarse - 1.0);
                        const double s2 = cs2 + hs * (2.0 * l / coarse - 1.0);
                        const double v = bloch_expectation(rho, t1, s1, t2, s2);
                        if (v < best) {
                            best = v;
                            b1 = t1;
                            bs1 = s1;
                            b2 = t2;
                            bs2 = s2;
                        }
                    }
        c1 = b1;
        cs1 = bs1;
        c2 = b2;
        cs2 = bs2;
        ht *= 3.0 / coarse;
        hs *= 3.0 / coarse;
    }
    return best;
}

// Partial transpose over B written as an explicit 2x2-block index swap,
// separate from the library implementation.
inline ComplexMatrix explicit_pt_b(const ComplexMatrix& m, int d_a, int d_b) {
    ComplexMatrix out(m.dim());
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_b; ++j)
            for (int k = 0; k < d_a; ++k)
                for (int l = 0; l < d_b; ++l)
                    out(i * d_b + l, k * d_b + j) = m(i * d_b + j, k * d_b + l);
    out.set_bipartite_dims({d_a, d_b});
    return out;
}

}  // namespace oracles
