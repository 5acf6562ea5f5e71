// Validated density matrices, the canonical state families, product
// vectors, and the channel/state conversions through P_+.
#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "ewkit/linalg.hpp"
#include "ewkit/rng.hpp"

namespace ewkit {

// Hermitian, PSD, unit-trace operator with a cached eigendecomposition.
// `normalized == false` admits positive non-unit trace (channels behind
// the Choi map need not be trace preserving).
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix mat, bool normalized = true, double tol = kHermitianTol)
        : mat_(std::move(mat)), normalized_(normalized) {
        mat_.require_dims();
        if (!is_hermitian(mat_, tol)) throw NotHermitianError("density matrix not Hermitian");
        spectral_ = eig_hermitian(mat_, tol);
        for (double& ev : spectral_.eigenvalues) {
            if (ev < -tol) throw ConstraintViolationError("density matrix not PSD");
            if (ev < 0.0) ev = 0.0;
        }
        const double tr = mat_.trace().real();
        if (normalized_ && std::abs(tr - 1.0) > tol)
            throw ConstraintViolationError("density matrix trace differs from 1");
        if (!normalized_ && tr <= tol)
            throw ConstraintViolationError("density matrix trace must be positive");
    }

    const ComplexMatrix& mat() const { return mat_; }
    const SpectralDecomposition& spectral() const { return spectral_; }
    BipartiteDims dims() const { return mat_.require_dims(); }
    int dim() const { return mat_.dim(); }
    bool normalized() const { return normalized_; }
    double trace() const { return mat_.trace().real(); }
    double min_eigenvalue() const { return spectral_.eigenvalues.front(); }

    double min_diagonal() const {
        double d = mat_(0, 0).real();
        for (int i = 1; i < mat_.dim(); ++i) d = std::min(d, mat_(i, i).real());
        return d;
    }

private:
    ComplexMatrix mat_;
    SpectralDecomposition spectral_;
    bool normalized_;
};

// Unit vectors on each factor plus their cached tensor product.
struct ProductVector {
    std::vector<Complex> mu;
    std::vector<Complex> nu;
    std::vector<Complex> joint;

    ProductVector(std::vector<Complex> mu_in, std::vector<Complex> nu_in)
        : mu(std::move(mu_in)), nu(std::move(nu_in)) {
        if (std::abs(norm2(mu) - 1.0) > 1e-12 || std::abs(norm2(nu) - 1.0) > 1e-12)
            throw ConstraintViolationError("product vector factors must be unit norm");
        joint.resize(mu.size() * nu.size());
        for (size_t i = 0; i < mu.size(); ++i)
            for (size_t j = 0; j < nu.size(); ++j) joint[i * nu.size() + j] = mu[i] * nu[j];
    }
};

struct KrausSet {
    // Each operator maps H_A -> H_B, stored as rows x cols = d_B x d_A.
    int d_a = 0;
    int d_b = 0;
    std::vector<std::vector<Complex>> ops;  // row-major d_b x d_a blocks

    Complex entry(size_t r, int row_b, int col_a) const {
        return ops[r][static_cast<size_t>(row_b) * d_a + col_a];
    }
};

inline DensityMatrix max_entangled(int d) {
    if (d < 2) throw BadDimensionError("max_entangled requires d >= 2");
    ComplexMatrix m(d * d);
    const double inv = 1.0 / d;
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) m(i * d + i, k * d + k) = inv;
    m.set_bipartite_dims({d, d});
    return DensityMatrix(std::move(m));
}

// pi_p = p |psi><psi| + (1-p) I/4 on two qubits.
inline DensityMatrix werner_family(double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRangeError("werner_family: p must be in [0,1]");
    ComplexMatrix m(4);
    const double mix = (1.0 - p) / 4.0;
    for (int i = 0; i < 4; ++i) m(i, i) = mix;
    m(0, 0) += p / 2.0;
    m(3, 3) += p / 2.0;
    m(0, 3) = m(3, 0) = p / 2.0;
    m.set_bipartite_dims({2, 2});
    return DensityMatrix(std::move(m));
}

// rho_q: diagonal ((1+q)/4, (1-q)/4, (1-q)/4, (1+q)/4) with corners q/2.
inline DensityMatrix rho_q_family(double q) {
    if (q < -1.0 / 3.0 - 1e-15 || q >= 0.0)
        throw OutOfRangeError("rho_q_family: q must be in [-1/3, 0)");
    ComplexMatrix m(4);
    m(0, 0) = m(3, 3) = (1.0 + q) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 - q) / 4.0;
    m(0, 3) = m(3, 0) = q / 2.0;
    m.set_bipartite_dims({2, 2});
    return DensityMatrix(std::move(m));
}

// a |psi><psi| + b |01><01| + b |10><10| + b |phi><phi| with the two Bell
// vectors psi = (|00>+|11>)/sqrt2 and phi = (-|00>+|11>)/sqrt2.
inline DensityMatrix bell_example_state(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw ConstraintViolationError("bell_example_state: a, b > 0");
    if (std::abs(a + 3.0 * b - 1.0) > 1e-12)
        throw ConstraintViolationError("bell_example_state: a + 3b must equal 1");
    if (b <= a) throw ConstraintViolationError("bell_example_state: requires b > a");
    ComplexMatrix m(4);
    m(0, 0) = m(3, 3) = (a + b) / 2.0;
    m(1, 1) = m(2, 2) = b;
    m(0, 3) = m(3, 0) = (a - b) / 2.0;
    m.set_bipartite_dims({2, 2});
    return DensityMatrix(std::move(m));
}

inline ProductVector random_product_vector(int d_a, int d_b, uint64_t seed) {
    if (d_a < 2 || d_b < 2) throw BadDimensionError("random_product_vector: dims >= 2");
    std::mt19937_64 rng = make_rng(seed);
    std::vector<Complex> mu = random_unit_vector(d_a, rng);
    std::vector<Complex> nu = random_unit_vector(d_b, rng);
    return ProductVector(std::move(mu), std::move(nu));
}

// (I x Lambda)(P_+) with Lambda(X) = sum_r U_r X U_r^dagger.  Marked
// unnormalized when the resulting trace is not 1.
inline DensityMatrix state_from_kraus(const KrausSet& k) {
    if (k.ops.empty() || k.d_a < 1 || k.d_b < 1)
        throw DimMismatchError("state_from_kraus: empty or inconsistent Kraus set");
    for (const auto& op : k.ops)
        if (op.size() != static_cast<size_t>(k.d_a) * k.d_b)
            throw DimMismatchError("state_from_kraus: operator dimension mismatch");
    const int da = k.d_a, db = k.d_b;
    ComplexMatrix m(da * db);
    // entry ((i,j),(k,l)) = (1/d_A) sum_r U_r(j,i) conj(U_r(l,k))
    for (size_t r = 0; r < k.ops.size(); ++r)
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j)
                for (int kk = 0; kk < da; ++kk)
                    for (int l = 0; l < db; ++l)
                        m(i * db + j, kk * db + l) +=
                            k.entry(r, j, i) * std::conj(k.entry(r, l, kk)) / double(da);
    m.set_bipartite_dims({da, db});
    const bool unit_trace = std::abs(m.trace().real() - 1.0) <= kHermitianTol;
    return DensityMatrix(std::move(m), unit_trace);
}

// Inverse Choi map: reshape each eigenvector |psi_r> = sum a_mn |m,n> into
// V_r with <n|V_r|m> = sqrt(d_A) a_mn and scale by sqrt(lambda_r).  The
// sqrt(d_A) constant is pinned by the round trip through state_from_kraus.
inline KrausSet kraus_from_state(const DensityMatrix& rho) {
    const BipartiteDims d = rho.dims();
    KrausSet out;
    out.d_a = d.a;
    out.d_b = d.b;
    const double scale = std::sqrt(static_cast<double>(d.a));
    const SpectralDecomposition& sd = rho.spectral();
    for (int r = 0; r < rho.dim(); ++r) {
        const double lam = sd.eigenvalues[r];
        if (lam <= 1e-12) continue;  // below solver noise floor
        std::vector<Complex> op(static_cast<size_t>(d.a) * d.b);
        const double w = std::sqrt(lam) * scale;
        for (int m = 0; m < d.a; ++m)
            for (int n = 0; n < d.b; ++n)
                op[static_cast<size_t>(n) * d.a + m] = w * sd.vectors(m * d.b + n, r);
        out.ops.push_back(std::move(op));
    }
    return out;
}

}  // namespace ewkit
