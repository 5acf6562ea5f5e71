// Witness construction around W = rho - c I: the closed-form lower bound
// on c_rho^max, the exact product-state infimum by alternating
// eigen-minimization, and the validity predicates.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "ewkit/states.hpp"

namespace ewkit {

struct SeeSawConfig {
    int restarts = 50;
    int max_iters = 500;
    double tol = 1e-12;
    uint64_t seed = 20120601;
};

struct CMaxResult {
    double value = 0.0;
    std::optional<ProductVector> minimizer;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> history;            // final value per restart
    std::vector<double> best_objective_trace;  // per half-step, best restart
};

enum class CMethod { Exact, ClosedForm };

struct Witness {
    DensityMatrix rho;
    double c = 0.0;
    double certified_c_max = 0.0;
    CMethod method = CMethod::Exact;
    std::optional<ProductVector> minimizer;

    // W acting as a matrix, for callers that want the operator itself.
    ComplexMatrix matrix() const {
        ComplexMatrix w = rho.mat();
        for (int i = 0; i < w.dim(); ++i) w(i, i) -= c;
        return w;
    }
};

namespace detail {

// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho_idx = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho_idx = static_cast<int>(i);
            theta = t;
        }
    }
    (void)rho_idx;
    for (double& x : v) x = std::max(x - theta, 0.0);
    return v;
}

// The Theorem-3 style objective over magnitude profiles x (on A) and y
// (on B); rho enters only through its diagonal and |Re| of selected
// off-diagonal entries.
struct ClosedFormObjective {
    int da = 0, db = 0;
    std::vector<double> diag;  // diag[(i,j)] = rho_{ij,ij}
    // b_off[i][j][l], j<l : |Re rho_{ij,il}|
    // a_off[i][k][j][l], i<k : |Re rho_{ij,kl}|
    std::vector<double> b_off;
    std::vector<double> a_off;

    explicit ClosedFormObjective(const DensityMatrix& rho) {
        const BipartiteDims d = rho.dims();
        da = d.a;
        db = d.b;
        const ComplexMatrix& m = rho.mat();
        diag.resize(static_cast<size_t>(da) * db);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) diag[i * db + j] = m(i * db + j, i * db + j).real();
        b_off.assign(static_cast<size_t>(da) * db * db, 0.0);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j)
                for (int l = j + 1; l < db; ++l)
                    b_off[(static_cast<size_t>(i) * db + j) * db + l] =
                        std::abs(m(i * db + j, i * db + l).real());
        a_off.assign(static_cast<size_t>(da) * da * db * db, 0.0);
        for (int i = 0; i < da; ++i)
            for (int k = i + 1; k < da; ++k)
                for (int j = 0; j < db; ++j)
                    for (int l = 0; l < db; ++l)
                        a_off[((static_cast<size_t>(i) * da + k) * db + j) * db + l] =
                            std::abs(m(i * db + j, k * db + l).real());
    }

    double value(const std::vector<double>& x, const std::vector<double>& y) const {
        double s = 0.0;
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) s += x[i] * y[j] * diag[i * db + j];
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j)
                for (int l = j + 1; l < db; ++l)
                    s -= 2.0 * (x[i] * x[i] + y[j] * y[l]) *
                         b_off[(static_cast<size_t>(i) * db + j) * db + l];
        for (int i = 0; i < da; ++i)
            for (int k = i + 1; k < da; ++k)
                for (int j = 0; j < db; ++j)
                    for (int l = 0; l < db; ++l)
                        s -= 2.0 * (x[i] * x[k] + y[j] * y[l]) *
                             a_off[((static_cast<size_t>(i) * da + k) * db + j) * db + l];
        return s;
    }

    void gradient(const std::vector<double>& x, const std::vector<double>& y,
                  std::vector<double>& gx, std::vector<double>& gy) const {
        gx.assign(da, 0.0);
        gy.assign(db, 0.0);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) {
                gx[i] += y[j] * diag[i * db + j];
                gy[j] += x[i] * diag[i * db + j];
            }
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j)
                for (int l = j + 1; l < db; ++l) {
                    const double w = b_off[(static_cast<size_t>(i) * db + j) * db + l];
                    gx[i] -= 4.0 * x[i] * w;
                    gy[j] -= 2.0 * y[l] * w;
                    gy[l] -= 2.0 * y[j] * w;
                }
        for (int i = 0; i < da; ++i)
            for (int k = i + 1; k < da; ++k)
                for (int j = 0; j < db; ++j)
                    for (int l = 0; l < db; ++l) {
                        const double w =
                            a_off[((static_cast<size_t>(i) * da + k) * db + j) * db + l];
                        gx[i] -= 2.0 * x[k] * w;
                        gx[k] -= 2.0 * x[i] * w;
                        gy[j] -= 2.0 * y[l] * w;
                        gy[l] -= 2.0 * y[j] * w;
                    }
    }
};

// Barycentric grid over one simplex at the given resolution.
inline void simplex_grid(int dim, int resolution, std::vector<std::vector<double>>& out) {
    std::vector<int> counts(dim, 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == dim - 1) {
            counts[idx] = left;
            std::vector<double> p(dim);
            for (int i = 0; i < dim; ++i) p[i] = static_cast<double>(counts[i]) / resolution;
            out.push_back(std::move(p));
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[idx] = c;
            rec(idx + 1, left - c);
        }
    };
    rec(0, resolution);
}

}  // namespace detail

// Minimum over the two probability simplices of the closed-form bound;
// a sound lower bound on the product-state infimum.  May be negative, in
// which case the bound certifies no admissible c.
inline double c_bound_closed_form(const DensityMatrix& rho) {
    const detail::ClosedFormObjective obj(rho);
    const int da = obj.da, db = obj.db;

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bx, by;

    auto consider = [&](const std::vector<double>& x, const std::vector<double>& y) {
        const double v = obj.value(x, y);
        if (v < best) {
            best = v;
            bx = x;
            by = y;
        }
    };

    // Vertex pairs (point masses) cover the diagonal-dominant cases exactly.
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            std::vector<double> x(da, 0.0), y(db, 0.0);
            x[i] = 1.0;
            y[j] = 1.0;
            consider(x, y);
        }

    // Coarse barycentric grid seeds for the descent.
    std::vector<std::vector<double>> ga, gb;
    detail::simplex_grid(da, 8, ga);
    detail::simplex_grid(db, 8, gb);
    std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
    {
        double grid_best = std::numeric_limits<double>::infinity();
        std::vector<double> gx, gy;
        for (const auto& x : ga)
            for (const auto& y : gb) {
                const double v = obj.value(x, y);
                if (v < grid_best) {
                    grid_best = v;
                    gx = x;
                    gy = y;
                }
            }
        if (!gx.empty()) starts.emplace_back(gx, gy);
    }
    std::mt19937_64 rng = make_rng(0x5eedc0defeedULL);
    for (int r = 0; r < 20; ++r)
        starts.emplace_back(random_simplex_point(da, rng), random_simplex_point(db, rng));
    starts.emplace_back(std::vector<double>(da, 1.0 / da), std::vector<double>(db, 1.0 / db));

    std::vector<double> gx, gy;
    for (auto& [x0, y0] : starts) {
        std::vector<double> x = x0, y = y0;
        double prev = obj.value(x, y);
        consider(x, y);
        for (int it = 0; it < 200; ++it) {
            obj.gradient(x, y, gx, gy);
            for (int i = 0; i < da; ++i) x[i] -= 0.1 * gx[i];
            for (int j = 0; j < db; ++j) y[j] -= 0.1 * gy[j];
            x = detail::project_simplex(std::move(x));
            y = detail::project_simplex(std::move(y));
            const double v = obj.value(x, y);
            consider(x, y);
            if (std::abs(prev - v) < 1e-14) break;
            prev = v;
        }
    }
    return best;
}

namespace detail {

// A(nu)_ik = sum_jl conj(nu_j) rho_{ij,kl} nu_l (Hermitian, d_A x d_A).
inline ComplexMatrix condition_on_b(const ComplexMatrix& rho, const std::vector<Complex>& nu,
                                    const BipartiteDims& d) {
    ComplexMatrix a(d.a);
    for (int i = 0; i < d.a; ++i)
        for (int k = 0; k < d.a; ++k) {
            Complex s{0.0, 0.0};
            for (int j = 0; j < d.b; ++j)
                for (int l = 0; l < d.b; ++l)
                    s += std::conj(nu[j]) * rho(i * d.b + j, k * d.b + l) * nu[l];
            a(i, k) = s;
        }
    return a;
}

inline ComplexMatrix condition_on_a(const ComplexMatrix& rho, const std::vector<Complex>& mu,
                                    const BipartiteDims& d) {
    ComplexMatrix b(d.b);
    for (int j = 0; j < d.b; ++j)
        for (int l = 0; l < d.b; ++l) {
            Complex s{0.0, 0.0};
            for (int i = 0; i < d.a; ++i)
                for (int k = 0; k < d.a; ++k)
                    s += std::conj(mu[i]) * rho(i * d.b + j, k * d.b + l) * mu[k];
            b(j, l) = s;
        }
    return b;
}

inline double product_expectation(const ComplexMatrix& rho, const std::vector<Complex>& mu,
                                  const std::vector<Complex>& nu, const BipartiteDims& d) {
    std::vector<Complex> joint(static_cast<size_t>(d.a) * d.b);
    for (int i = 0; i < d.a; ++i)
        for (int j = 0; j < d.b; ++j) joint[i * d.b + j] = mu[i] * nu[j];
    return inner(joint, mat_vec(rho, joint)).real();
}

}  // namespace detail

// Alternating minimization of <mu nu| rho |mu nu>: each half-step replaces
// one factor by the minimum eigenvector of the conditioned operator, so the
// objective is non-increasing.  Restart 0 starts from the minimum-diagonal
// computational basis pair, which also guarantees value <= min diagonal.
inline CMaxResult c_max_exact(const DensityMatrix& rho, const SeeSawConfig& config = {}) {
    const BipartiteDims d = rho.dims();
    const ComplexMatrix& m = rho.mat();

    CMaxResult out;
    out.value = std::numeric_limits<double>::infinity();

    const int total_restarts = config.restarts + 1;
    for (int restart = 0; restart < total_restarts; ++restart) {
        std::vector<Complex> mu(d.a, Complex{0.0, 0.0}), nu(d.b, Complex{0.0, 0.0});
        if (restart == 0) {
            int bi = 0, bj = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (int i = 0; i < d.a; ++i)
                for (int j = 0; j < d.b; ++j)
                    if (m(i * d.b + j, i * d.b + j).real() < bd) {
                        bd = m(i * d.b + j, i * d.b + j).real();
                        bi = i;
                        bj = j;
                    }
            mu[bi] = 1.0;
            nu[bj] = 1.0;
        } else {
            std::mt19937_64 rng = make_rng(derive_seed(config.seed, restart));
            mu = random_unit_vector(d.a, rng);
            nu = random_unit_vector(d.b, rng);
        }

        std::vector<double> trace;
        double value = detail::product_expectation(m, mu, nu, d);
        trace.push_back(value);
        bool converged = false;
        for (int it = 0; it < config.max_iters; ++it) {
            const double before = value;
            SpectralDecomposition ea = eig_hermitian(detail::condition_on_b(m, nu, d), 1e-8);
            mu = ea.eigenvector(0);
            trace.push_back(ea.eigenvalues.front());
            SpectralDecomposition eb = eig_hermitian(detail::condition_on_a(m, mu, d), 1e-8);
            nu = eb.eigenvector(0);
            value = eb.eigenvalues.front();
            trace.push_back(value);
            if (before - value < config.tol) {
                converged = true;
                break;
            }
        }
        value = detail::product_expectation(m, mu, nu, d);
        out.history.push_back(value);
        if (value < out.value) {
            out.value = value;
            out.minimizer = ProductVector(mu, nu);
            out.converged = converged;
            out.best_objective_trace = std::move(trace);
        }
    }
    out.restarts_used = total_restarts;
    return out;
}

// Corollary-1 construction: defaults c to the exact infimum; a supplied c
// must land in (lambda_min, c_max].
inline Witness make_witness(const DensityMatrix& rho, std::optional<double> c = std::nullopt,
                            CMethod method = CMethod::Exact, const SeeSawConfig& config = {}) {
    const double lam_min = rho.min_eigenvalue();
    CMaxResult exact;
    double c_max;
    std::optional<ProductVector> minimizer;
    if (method == CMethod::Exact) {
        exact = c_max_exact(rho, config);
        c_max = exact.value;
        minimizer = exact.minimizer;
    } else {
        c_max = c_bound_closed_form(rho);
    }

    if (c_max - lam_min <= 1e-12)
        throw NoWitnessExistsError("no admissible c: c_max does not exceed lambda_min");
    const double chosen = c ? *c : c_max;
    if (chosen <= lam_min || chosen > c_max + 1e-9)
        throw InvalidCError("c outside (lambda_min, c_max]");
    Witness w{rho, chosen, c_max, method, std::move(minimizer)};
    return w;
}

// tr(W pi) = tr(rho pi) - c tr(pi); a negative value certifies pi entangled.
inline double evaluate(const Witness& w, const DensityMatrix& pi) {
    if (w.rho.dim() != pi.dim()) throw DimMismatchError("evaluate: dimension mismatch");
    return trace_inner(w.rho.mat(), pi.mat()) - w.c * pi.trace();
}

// lambda_min(W) = lambda_min(rho) - c; negative for every valid witness.
inline double min_eigenvalue_check(const Witness& w) { return w.rho.min_eigenvalue() - w.c; }

}  // namespace ewkit
