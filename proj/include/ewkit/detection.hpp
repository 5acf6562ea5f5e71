// Spectral-reversal detection loop, the PPT cross-check, and the Werner
// family threshold sweep.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "ewkit/witness.hpp"

namespace ewkit {

enum class CandidateSource { Mirrored, RandomSimplex, User };

struct SpectrumCandidate {
    std::vector<double> gammas;  // >= 0, ascending, normalized to unit sum
    CandidateSource source = CandidateSource::RandomSimplex;

    SpectrumCandidate(std::vector<double> g, CandidateSource src) : gammas(std::move(g)), source(src) {
        double sum = 0.0;
        for (double v : gammas) {
            if (v < 0.0) throw ConstraintViolationError("candidate spectrum must be non-negative");
            sum += v;
        }
        if (sum <= 0.0) throw ConstraintViolationError("candidate spectrum must be normalizable");
        for (double& v : gammas) v /= sum;
        std::sort(gammas.begin(), gammas.end());
    }
};

enum class Verdict {
    EntangledWitnessed,
    PptEntangledUnwitnessed,
    NoWitnessFound,
    PptSeparableLikely,
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::EntangledWitnessed: return "entangled_witnessed";
        case Verdict::PptEntangledUnwitnessed: return "ppt_entangled_unwitnessed";
        case Verdict::NoWitnessFound: return "no_witness_found";
        case Verdict::PptSeparableLikely: return "ppt_separable_likely";
    }
    return "unknown";
}

struct TraceLogEntry {
    std::vector<double> spectrum;
    std::string source;
    double c = 0.0;
    double trace = 0.0;
    bool witness_valid = false;
};

struct DetectionReport {
    Verdict verdict = Verdict::NoWitnessFound;
    std::optional<Witness> witness;
    std::optional<double> trace_value;
    double ppt_min_eigenvalue = 0.0;
    int iterations = 0;
    std::vector<TraceLogEntry> trace_log;
};

struct DetectConfig {
    int max_candidates = 200;
    int random_candidates = 199;
    uint64_t seed = 20120601;
    CMethod c_method = CMethod::Exact;
    std::optional<double> forced_c;      // absolute value of c
    std::optional<double> c_fraction;    // c = lambda_min + f * (c_max - lambda_min)
    std::optional<std::vector<std::vector<Complex>>> user_basis;
    std::optional<std::vector<double>> user_gammas;
    SeeSawConfig seesaw;
    double trace_threshold = -1e-10;
};

// Minimum eigenvalue of the partial transpose over B.  Negative certifies
// entanglement; non-negative certifies separability only on 2x2 and 2x3.
inline double ppt_test(const DensityMatrix& pi) {
    return eig_hermitian(partial_transpose(pi.mat(), Subsystem::B)).eigenvalues.front();
}

namespace detail {

// Re-span each degenerate eigenspace with a seeded, deterministic basis:
// random vectors projected into the eigenspace, then Gram-Schmidt.
inline ComplexMatrix complete_degenerate_bases(const SpectralDecomposition& sd, uint64_t seed) {
    const int n = sd.vectors.dim();
    ComplexMatrix vectors = sd.vectors;
    std::mt19937_64 rng = make_rng(seed);
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n &&
               std::abs(sd.eigenvalues[end] - sd.eigenvalues[start]) <= 1e-8) ++end;
        const int m = end - start;
        if (m > 1) {
            std::vector<std::vector<Complex>> basis;
            while (static_cast<int>(basis.size()) < m) {
                std::vector<Complex> r = random_unit_vector(n, rng);
                // project into the eigenspace
                std::vector<Complex> w(n, Complex{0.0, 0.0});
                for (int col = start; col < end; ++col) {
                    std::vector<Complex> psi(n);
                    for (int i = 0; i < n; ++i) psi[i] = sd.vectors(i, col);
                    const Complex coef = inner(psi, r);
                    for (int i = 0; i < n; ++i) w[i] += coef * psi[i];
                }
                for (const auto& b : basis) {
                    const Complex coef = inner(b, w);
                    for (int i = 0; i < n; ++i) w[i] -= coef * b[i];
                }
                const double nw = norm2(w);
                if (nw < 1e-6) continue;  // unlucky draw, retry
                for (Complex& z : w) z /= nw;
                basis.push_back(std::move(w));
            }
            for (int col = start; col < end; ++col)
                for (int i = 0; i < n; ++i) vectors(i, col) = basis[col - start][i];
        }
        start = end;
    }
    return vectors;
}

// Validate a user-supplied eigenbasis of pi and return it ordered by
// ascending Rayleigh quotient.
inline std::pair<ComplexMatrix, std::vector<double>> ordered_user_basis(
    const DensityMatrix& pi, const std::vector<std::vector<Complex>>& basis) {
    const int n = pi.dim();
    if (static_cast<int>(basis.size()) != n)
        throw CountMismatchError("user basis must contain dim vectors");
    std::vector<std::pair<double, int>> order;
    for (int r = 0; r < n; ++r) {
        const auto& v = basis[r];
        if (static_cast<int>(v.size()) != n)
            throw DimMismatchError("user basis vector length mismatch");
        if (std::abs(norm2(v) - 1.0) > 1e-9)
            throw ConstraintViolationError("user basis vectors must be unit norm");
        const std::vector<Complex> pv = mat_vec(pi.mat(), v);
        const double lam = inner(v, pv).real();
        double resid = 0.0;
        for (int i = 0; i < n; ++i) resid += std::norm(pv[i] - lam * v[i]);
        if (std::sqrt(resid) > 1e-8)
            throw ConstraintViolationError("user basis vector is not an eigenvector of pi");
        order.emplace_back(lam, r);
    }
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
            if (std::abs(inner(basis[r], basis[s])) > 1e-9)
                throw ConstraintViolationError("user basis vectors must be orthonormal");
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    ComplexMatrix vectors(n);
    std::vector<double> lams(n);
    for (int col = 0; col < n; ++col) {
        lams[col] = order[col].first;
        for (int i = 0; i < n; ++i) vectors(i, col) = basis[order[col].second][i];
    }
    return {vectors, lams};
}

}  // namespace detail

// rho = sum_i gamma_{d-1-i} |psi_i><psi_i|, pairing pi's ascending
// eigenvalues with the descending candidate spectrum so that tr(rho pi)
// saturates the lower trace bound.
inline DensityMatrix build_commuting_candidate(
    const DensityMatrix& pi, const SpectrumCandidate& gammas, uint64_t basis_completion_seed,
    const std::optional<std::vector<std::vector<Complex>>>& user_basis = std::nullopt) {
    const int n = pi.dim();
    if (static_cast<int>(gammas.gammas.size()) != n)
        throw CountMismatchError("candidate spectrum size must match dimension");

    ComplexMatrix vectors(n);
    if (user_basis) {
        vectors = detail::ordered_user_basis(pi, *user_basis).first;
    } else {
        vectors = detail::complete_degenerate_bases(pi.spectral(), basis_completion_seed);
    }

    ComplexMatrix m(n);
    for (int col = 0; col < n; ++col) {
        const double g = gammas.gammas[n - 1 - col];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                m(r, c) += g * vectors(r, col) * std::conj(vectors(c, col));
    }
    m.set_bipartite_dims(pi.dims());
    return DensityMatrix(std::move(m));
}

namespace detail {

// Spectrum reflected about the midpoint of its extremes, renormalized.
// For the Werner family this reproduces the rho_q construction with
// q = -p / (1 + 2p).
inline std::vector<double> mirrored_spectrum(const std::vector<double>& lambdas) {
    const double lo = lambdas.front(), hi = lambdas.back();
    std::vector<double> g;
    g.reserve(lambdas.size());
    for (double l : lambdas) g.push_back(std::max(lo + hi - l, 0.0));
    return g;
}

}  // namespace detail

inline DetectionReport detect(const DensityMatrix& pi, const DetectConfig& config = {}) {
    DetectionReport report;
    report.ppt_min_eigenvalue = ppt_test(pi);

    std::vector<SpectrumCandidate> candidates;
    if (config.user_gammas)
        candidates.emplace_back(*config.user_gammas, CandidateSource::User);
    {
        std::vector<double> mirror = detail::mirrored_spectrum(pi.spectral().eigenvalues);
        double sum = 0.0;
        for (double g : mirror) sum += g;
        if (sum > 0.0) candidates.emplace_back(std::move(mirror), CandidateSource::Mirrored);
    }
    for (int r = 0; r < config.random_candidates; ++r) {
        if (static_cast<int>(candidates.size()) >= config.max_candidates) break;
        std::mt19937_64 rng = make_rng(derive_seed(config.seed, 0x7000 + r));
        candidates.emplace_back(random_simplex_point(pi.dim(), rng), CandidateSource::RandomSimplex);
    }
    while (static_cast<int>(candidates.size()) > config.max_candidates) candidates.pop_back();

    bool any_valid_witness = false;
    for (size_t idx = 0; idx < candidates.size(); ++idx) {
        const SpectrumCandidate& cand = candidates[idx];
        ++report.iterations;
        TraceLogEntry entry;
        entry.spectrum = cand.gammas;
        entry.source = cand.source == CandidateSource::Mirrored ? "mirrored"
                       : cand.source == CandidateSource::User   ? "user"
                                                                : "random_simplex";
        try {
            const DensityMatrix rho = build_commuting_candidate(
                pi, cand, derive_seed(config.seed, 0x8000 + idx),
                cand.source == CandidateSource::User ? config.user_basis : std::nullopt);

            std::optional<double> chosen_c = config.forced_c;
            if (!chosen_c && config.c_fraction) {
                SeeSawConfig ss = config.seesaw;
                ss.seed = derive_seed(config.seed, 0x9000 + idx);
                const double c_max = config.c_method == CMethod::Exact
                                         ? c_max_exact(rho, ss).value
                                         : c_bound_closed_form(rho);
                const double lam = rho.min_eigenvalue();
                chosen_c = lam + *config.c_fraction * (c_max - lam);
            }
            SeeSawConfig ss = config.seesaw;
            ss.seed = derive_seed(config.seed, 0x9000 + idx);
            Witness w = make_witness(rho, chosen_c, config.c_method, ss);
            any_valid_witness = true;
            entry.c = w.c;
            entry.witness_valid = true;
            const double t = evaluate(w, pi);
            entry.trace = t;
            report.trace_log.push_back(entry);
            if (t < config.trace_threshold) {
                report.verdict = Verdict::EntangledWitnessed;
                report.witness = std::move(w);
                report.trace_value = t;
                return report;
            }
        } catch (const NoWitnessExistsError&) {
            report.trace_log.push_back(entry);
        } catch (const InvalidCError&) {
            report.trace_log.push_back(entry);
        }
    }

    if (!any_valid_witness)
        report.verdict = Verdict::NoWitnessFound;
    else if (report.ppt_min_eigenvalue < 0.0)
        report.verdict = Verdict::PptEntangledUnwitnessed;
    else
        report.verdict = Verdict::PptSeparableLikely;
    return report;
}

struct SweepPoint {
    double param = 0.0;
    DetectionReport report;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::optional<double> threshold;  // bisection-refined verdict boundary
};

// Detection curve over the Werner family; the verdict boundary is refined
// by bisection to 1e-3.
inline SweepResult sweep_family(const std::vector<double>& param_grid, const DetectConfig& config = {}) {
    if (param_grid.empty()) throw OutOfRangeError("sweep_family: empty parameter grid");
    SweepResult out;
    for (double p : param_grid)
        out.points.push_back({p, detect(werner_family(p), config)});

    auto witnessed = [&](double p) {
        return detect(werner_family(p), config).verdict == Verdict::EntangledWitnessed;
    };
    for (size_t i = 0; i + 1 < out.points.size(); ++i) {
        const bool lo_w = out.points[i].report.verdict == Verdict::EntangledWitnessed;
        const bool hi_w = out.points[i + 1].report.verdict == Verdict::EntangledWitnessed;
        if (!lo_w && hi_w) {
            double lo = out.points[i].param, hi = out.points[i + 1].param;
            while (hi - lo > 2e-4) {
                const double mid = 0.5 * (lo + hi);
                (witnessed(mid) ? hi : lo) = mid;
            }
            out.threshold = 0.5 * (lo + hi);
            break;
        }
    }
    return out;
}

}  // namespace ewkit
