#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ewkit;

namespace {

ComplexMatrix rho_q_matrix(double q) {
    ComplexMatrix m(4);
    m(0, 0) = m(3, 3) = (1.0 + q) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 - q) / 4.0;
    m(0, 3) = m(3, 0) = q / 2.0;
    m.set_bipartite_dims({2, 2});
    return m;
}

}  // namespace

TEST(IsHermitian, IdentityAndAsymmetric) {
    EXPECT_TRUE(is_hermitian(ComplexMatrix::identity(4), 1e-12));
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    EXPECT_FALSE(is_hermitian(m, 1e-12));
    EXPECT_TRUE(is_hermitian(rho_q_matrix(-1.0 / 3.0), 1e-12));
}

TEST(EigHermitian, DiagonalCase) {
    ComplexMatrix m(3);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    m(2, 2) = 3.0;
    const SpectralDecomposition sd = eig_hermitian(m);
    EXPECT_NEAR(sd.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(sd.eigenvalues[1], 2.0, 1e-14);
    EXPECT_NEAR(sd.eigenvalues[2], 3.0, 1e-14);
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(std::abs(sd.vectors(i, r)), i == r ? 1.0 : 0.0, 1e-14);
}

TEST(EigHermitian, RhoQSpectrum) {
    const double q = -1.0 / 3.0;
    const SpectralDecomposition sd = eig_hermitian(rho_q_matrix(q));
    EXPECT_NEAR(sd.eigenvalues[0], 0.0, 1e-12);
    for (int r = 1; r < 4; ++r) EXPECT_NEAR(sd.eigenvalues[r], 1.0 / 3.0, 1e-12);
}

TEST(EigHermitian, ReconstructionAndOrthonormality) {
    for (int n : {4, 6, 9, 16, 36}) {
        std::mt19937_64 rng(37 + n);
        ComplexMatrix m = oracles::random_hermitian(n, rng);
        const SpectralDecomposition sd = eig_hermitian(m);
        ComplexMatrix rec(n);
        for (int r = 0; r < n; ++r) {
            const std::vector<Complex> v = sd.eigenvector(r);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) rec(i, j) += sd.eigenvalues[r] * v[i] * std::conj(v[j]);
        }
        EXPECT_LE((rec - m).frobenius_norm(), 1e-10 * m.frobenius_norm()) << "n=" << n;
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                const Complex ip = inner(sd.eigenvector(r), sd.eigenvector(s));
                EXPECT_NEAR(std::abs(ip - (r == s ? 1.0 : 0.0)), 0.0, 1e-10);
            }
    }
}

TEST(EigHermitian, Deterministic) {
    std::mt19937_64 rng(99);
    ComplexMatrix m = oracles::random_hermitian(8, rng);
    const SpectralDecomposition a = eig_hermitian(m);
    const SpectralDecomposition b = eig_hermitian(m);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    for (int r = 0; r < 8; ++r)
        for (int i = 0; i < 8; ++i) EXPECT_EQ(a.vectors(i, r), b.vectors(i, r));
}

TEST(EigHermitian, RejectsNonHermitian) {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eig_hermitian(m), NotHermitianError);
}

TEST(Kron, IdentityAndProjector) {
    const ComplexMatrix i4 = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    EXPECT_LE((i4 - ComplexMatrix::identity(4)).frobenius_norm(), 0.0);
    ASSERT_TRUE(i4.bipartite_dims().has_value());
    EXPECT_EQ(i4.bipartite_dims()->a, 2);
    EXPECT_EQ(i4.bipartite_dims()->b, 2);

    ComplexMatrix p0(2), p1(2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const ComplexMatrix kp = kron(p0, p1);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            EXPECT_EQ(kp(r, c), (r == 1 && c == 1) ? Complex(1.0, 0.0) : Complex(0.0, 0.0));
}

TEST(Kron, BellOffDiagonalSupport) {
    ComplexMatrix sx(2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const ComplexMatrix xx = kron(sx, sx);
    const DensityMatrix pplus = max_entangled(2);
    // P_+ off-diagonal support sits exactly where sigma_x x sigma_x has its
    // anti-diagonal ones on the (00,11) block.
    EXPECT_NEAR(pplus.mat()(0, 3).real(), 0.5 * xx(0, 3).real(), 1e-15);
    EXPECT_NEAR(pplus.mat()(3, 0).real(), 0.5 * xx(3, 0).real(), 1e-15);
    EXPECT_EQ(pplus.mat()(1, 2), Complex(0.0, 0.0));
}

TEST(PartialTranspose, IdentityInvariantAndInvolution) {
    ComplexMatrix i4 = ComplexMatrix::identity(4);
    i4.set_bipartite_dims({2, 2});
    EXPECT_LE((partial_transpose(i4, Subsystem::A) - i4).frobenius_norm(), 0.0);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix m = oracles::random_hermitian(6, rng);
        m.set_bipartite_dims({2, 3});
        const ComplexMatrix twice =
            partial_transpose(partial_transpose(m, Subsystem::A), Subsystem::A);
        EXPECT_LE((twice - m).frobenius_norm(), 1e-14);
        EXPECT_TRUE(is_hermitian(partial_transpose(m, Subsystem::B), 1e-12));
    }
}

TEST(PartialTranspose, MaxEntangledMinEigenvalue) {
    const DensityMatrix pplus = max_entangled(2);
    const ComplexMatrix oracle = oracles::explicit_pt_b(pplus.mat(), 2, 2);
    const SpectralDecomposition sd = eig_hermitian(partial_transpose(pplus.mat(), Subsystem::B));
    EXPECT_NEAR(sd.eigenvalues.front(), -0.5, 1e-12);
    EXPECT_LE((partial_transpose(pplus.mat(), Subsystem::B) - oracle).frobenius_norm(), 1e-14);
}

TEST(PartialTrace, MarginalsAndFactorization) {
    const DensityMatrix pplus = max_entangled(2);
    const ComplexMatrix ma = partial_trace(pplus.mat(), Subsystem::A);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_NEAR(std::abs(ma(i, j) - (i == j ? Complex{0.5, 0.0} : Complex{0.0, 0.0})), 0.0,
                        1e-14);

    std::mt19937_64 rng(11);
    const DensityMatrix a = oracles::random_density(2, 2, rng);
    // rho_A (x) rho_B as a (4,?) system is awkward; factorization checked
    // on a 2x2 pair of single-qubit operators instead.
    ComplexMatrix qa(2), qb(2);
    qa(0, 0) = 0.75;
    qa(1, 1) = 0.25;
    qa(0, 1) = qa(1, 0) = 0.1;
    qb(0, 0) = 0.5;
    qb(1, 1) = 1.5;
    const ComplexMatrix joint = kron(qa, qb);
    const ComplexMatrix marg = partial_trace(joint, Subsystem::A);
    const double trb = qb.trace().real();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(marg(i, j) - trb * qa(i, j)), 0.0, 1e-14);
    EXPECT_NEAR(joint.trace().real(), marg.trace().real(), 1e-13);

    const DensityMatrix r = oracles::random_density(2, 2, rng);
    EXPECT_NEAR(partial_trace(r.mat(), Subsystem::B).trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(partial_trace(r.mat(), Subsystem::B), 1e-12));
}

TEST(TraceInner, Basics) {
    std::mt19937_64 rng(3);
    const DensityMatrix rho = oracles::random_density(2, 2, rng);
    EXPECT_NEAR(trace_inner(ComplexMatrix::identity(4), rho.mat()), 1.0, 1e-12);

    const DensityMatrix bell = bell_example_state(0.1, 0.3);
    const DensityMatrix pplus = max_entangled(2);
    EXPECT_NEAR(trace_inner(bell.mat(), pplus.mat()), 0.1, 1e-12);

    ComplexMatrix wrong(3);
    EXPECT_THROW(trace_inner(wrong, rho.mat()), DimMismatchError);
}

TEST(TraceBounds, AlignedDiagonalCase) {
    ComplexMatrix h(2);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    const TraceBounds tb = trace_bounds(h, h);
    EXPECT_NEAR(tb.lower, 4.0, 1e-14);
    EXPECT_NEAR(tb.upper, 5.0, 1e-14);
    EXPECT_NEAR(trace_inner(h, h), 5.0, 1e-14);
}

TEST(TraceBounds, OpposedCommutingPairSaturatesLower) {
    const ComplexMatrix h = rho_q_matrix(-0.25);
    const DensityMatrix k = werner_family(0.6);
    const TraceBounds tb = trace_bounds(h, k.mat());
    EXPECT_NEAR(trace_inner(h, k.mat()), tb.lower, 1e-12);
}

TEST(TraceBounds, SandwichProperty) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix h = oracles::random_hermitian(n, rng);
        const ComplexMatrix k = oracles::random_hermitian(n, rng);
        const TraceBounds tb = trace_bounds(h, k);
        const double tr = trace_inner(h, k);
        EXPECT_LE(tb.lower, tr + 1e-10);
        EXPECT_LE(tr, tb.upper + 1e-10);
    }
}
