// Hermitian eigendecomposition (cyclic Jacobi), Kronecker products,
// partial transpose/trace and the two-sided trace inequality.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ewkit/matrix.hpp"

namespace ewkit {

inline constexpr double kHermitianTol = 1e-9;

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    const int n = m.dim();
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix vectors;            // column r is the eigenvector of eigenvalues[r]

    std::vector<Complex> eigenvector(int r) const {
        std::vector<Complex> v(vectors.dim());
        for (int i = 0; i < vectors.dim(); ++i) v[i] = vectors(i, r);
        return v;
    }
};

namespace detail {

// Zero out A(p,q) with a complex Jacobi rotation; accumulate into V.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex phase = apq / r;  // e^{i phi}
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex sp = s * phase;
    const Complex spc = s * std::conj(phase);

    const int n = a.dim();
    // A <- A U with U = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p,q).
    for (int i = 0; i < n; ++i) {
        const Complex x = a(i, p), y = a(i, q);
        a(i, p) = x * c - y * spc;
        a(i, q) = x * sp + y * c;
    }
    // A <- U^dagger A.
    for (int j = 0; j < n; ++j) {
        const Complex x = a(p, j), y = a(q, j);
        a(p, j) = c * x - sp * y;
        a(q, j) = spc * x + c * y;
    }
    // V <- V U.
    for (int i = 0; i < n; ++i) {
        const Complex x = v(i, p), y = v(i, q);
        v(i, p) = x * c - y * spc;
        v(i, q) = x * sp + y * c;
    }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Largest-magnitude component made real positive; deterministic fixtures
// depend on this canonicalization.
inline void canonicalize_phase(ComplexMatrix& vectors, int col) {
    int best = 0;
    double best_mag = -1.0;
    for (int i = 0; i < vectors.dim(); ++i) {
        const double mag = std::abs(vectors(i, col));
        if (mag > best_mag + 1e-14) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag <= 0.0) return;
    const Complex ph = vectors(best, col) / best_mag;
    for (int i = 0; i < vectors.dim(); ++i) vectors(i, col) /= ph;
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
// Deterministic for a fixed input: fixed sweep order, fixed tie handling.
inline SpectralDecomposition eig_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    if (!is_hermitian(m, tol)) throw NotHermitianError("eig_hermitian: input not Hermitian");
    const int n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = 1e-14 * std::max(m.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::off_diagonal_norm(a) <= target) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.vectors = ComplexMatrix(n);
    for (int r = 0; r < n; ++r) {
        out.eigenvalues[r] = a(order[r], order[r]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, r) = v(i, order[r]);
        detail::canonicalize_phase(out.vectors, r);
    }
    return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < da; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < db; ++j)
                for (int l = 0; l < db; ++l) out(i * db + j, k * db + l) = aik * b(j, l);
        }
    out.set_bipartite_dims({da, db});
    return out;
}

enum class Subsystem { A, B };

inline ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem sub) {
    const BipartiteDims d = m.require_dims();
    ComplexMatrix out(m.dim());
    for (int i = 0; i < d.a; ++i)
        for (int j = 0; j < d.b; ++j)
            for (int k = 0; k < d.a; ++k)
                for (int l = 0; l < d.b; ++l) {
                    const Complex z = m(i * d.b + j, k * d.b + l);
                    if (sub == Subsystem::A)
                        out(k * d.b + j, i * d.b + l) = z;
                    else
                        out(i * d.b + l, k * d.b + j) = z;
                }
    out.set_bipartite_dims(d);
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep) {
    const BipartiteDims d = m.require_dims();
    if (keep == Subsystem::A) {
        ComplexMatrix out(d.a);
        for (int i = 0; i < d.a; ++i)
            for (int k = 0; k < d.a; ++k)
                for (int j = 0; j < d.b; ++j) out(i, k) += m(i * d.b + j, k * d.b + j);
        return out;
    }
    ComplexMatrix out(d.b);
    for (int j = 0; j < d.b; ++j)
        for (int l = 0; l < d.b; ++l)
            for (int i = 0; i < d.a; ++i) out(j, l) += m(i * d.b + j, i * d.b + l);
    return out;
}

// tr(HK) for Hermitian H, K; the imaginary residual must stay below 1e-12.
inline double trace_inner(const ComplexMatrix& h, const ComplexMatrix& k,
                          double tol = kHermitianTol) {
    if (h.dim() != k.dim()) throw DimMismatchError("trace_inner: dimension mismatch");
    if (!is_hermitian(h, tol) || !is_hermitian(k, tol))
        throw NotHermitianError("trace_inner: inputs must be Hermitian");
    Complex t{0.0, 0.0};
    for (int r = 0; r < h.dim(); ++r)
        for (int c = 0; c < h.dim(); ++c) t += h(r, c) * k(c, r);
    if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real())))
        throw NotHermitianError("trace_inner: imaginary residual exceeds tolerance");
    return t.real();
}

struct TraceBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Sum of eigenvalue products in opposed (lower) and aligned (upper) sort
// orders; sandwiches tr(HK) for Hermitian H, K.
inline TraceBounds trace_bounds(const ComplexMatrix& h, const ComplexMatrix& k,
                                double tol = kHermitianTol) {
    if (h.dim() != k.dim()) throw DimMismatchError("trace_bounds: dimension mismatch");
    if (!is_hermitian(h, tol) || !is_hermitian(k, tol))
        throw NotHermitianError("trace_bounds: inputs must be Hermitian");
    const std::vector<double> lh = eig_hermitian(h, tol).eigenvalues;
    const std::vector<double> lk = eig_hermitian(k, tol).eigenvalues;
    TraceBounds out;
    const int n = h.dim();
    for (int i = 0; i < n; ++i) {
        out.lower += lh[i] * lk[n - 1 - i];
        out.upper += lh[i] * lk[i];
    }
    return out;
}

}  // namespace ewkit
