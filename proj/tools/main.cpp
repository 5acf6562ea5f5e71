// ewkit command-line front end: witness construction, detection, family
// sweeps and the PPT check over JSON state files.
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ewkit/ewkit.hpp"

namespace {

using ewkit::io::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

json run_record(const std::string& command, const json& config, const std::string& input_path,
                json outputs, double wall_time) {
    return json{{"command", command},
                {"config", config},
                {"input_digest", input_path.empty() ? "" : ewkit::io::file_digest(input_path)},
                {"outputs", std::move(outputs)},
                {"wall_time_s", wall_time}};
}

void emit(const json& doc, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << doc.dump(1) << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) throw ewkit::ParseError("cannot open output file: " + output_path);
        out << doc.dump(1) << "\n";
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    // start:end:step
    double start, end, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> start >> c1 >> end >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
        throw ewkit::ParseError("grid must be start:end:step with positive step");
    std::vector<double> grid;
    for (double p = start; p <= end + 1e-12; p += step) grid.push_back(std::min(p, end));
    if (grid.empty()) throw ewkit::ParseError("empty parameter grid");
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement witness toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global options after the subcommand name

    uint64_t seed = 20120601;
    double herm_tol = ewkit::kHermitianTol;
    int restarts = 50;
    int max_iters = 500;
    double seesaw_tol = 1e-12;
    std::string output_path;
    app.add_option("--seed", seed, "seed for all randomized steps");
    app.add_option("--tol", herm_tol, "hermiticity tolerance for state validation");
    app.add_option("--restarts", restarts, "see-saw restarts");
    app.add_option("--max-iters", max_iters, "see-saw iteration cap");
    app.add_option("--seesaw-tol", seesaw_tol, "see-saw convergence tolerance");
    app.add_option("--output", output_path, "write the report to this path instead of stdout");

    std::string state_path;
    std::string c_method = "exact";
    double forced_c = 0.0;
    double c_fraction = 0.0;
    bool has_forced_c = false, has_c_fraction = false;
    int max_candidates = 200;
    int random_candidates = 199;
    std::string basis_path;
    std::string gammas_csv;

    auto* cmax = app.add_subcommand("cmax", "closed-form bound and exact product-state infimum");
    cmax->add_option("state", state_path, "state file")->required();

    auto* det = app.add_subcommand("detect", "run the spectral-reversal detection loop");
    det->add_option("state", state_path, "state file")->required();
    det->add_option("--max-candidates", max_candidates, "total candidate budget");
    det->add_option("--random-candidates", random_candidates, "random spectrum draws");
    det->add_option("--c-method", c_method, "exact | closed_form");
    det->add_option("--forced-c", forced_c, "use this c for every candidate")
        ->trigger_on_parse()
        ->each([&](const std::string&) { has_forced_c = true; });
    det->add_option("--c-frac", c_fraction,
                    "c = lambda_min + frac * (c_max - lambda_min) per candidate")
        ->trigger_on_parse()
        ->each([&](const std::string&) { has_c_fraction = true; });
    det->add_option("--basis-file", basis_path, "user eigenbasis for degenerate states");
    det->add_option("--gammas", gammas_csv, "comma-separated candidate spectrum");

    std::string family = "werner";
    std::string grid_spec = "0:1:0.05";
    auto* sweep = app.add_subcommand("sweep", "detection threshold curve over a state family");
    sweep->add_option("family", family, "family name (werner)")->required();
    sweep->add_option("--grid", grid_spec, "parameter grid start:end:step");
    sweep->add_option("--random-candidates", random_candidates, "random spectrum draws per point");
    sweep->add_option("--c-method", c_method, "exact | closed_form");
    sweep->add_option("--c-frac", c_fraction, "relative c between lambda_min and c_max")
        ->trigger_on_parse()
        ->each([&](const std::string&) { has_c_fraction = true; });

    auto* ppt = app.add_subcommand("ppt", "minimum eigenvalue of the partial transpose");
    ppt->add_option("state", state_path, "state file")->required();

    double witness_c = 0.0;
    bool has_witness_c = false;
    auto* wit = app.add_subcommand("witness", "construct W = rho - c I from a state file");
    wit->add_option("state", state_path, "state file")->required();
    wit->add_option("--c", witness_c, "explicit c (default: exact c_max)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { has_witness_c = true; });
    wit->add_option("--c-method", c_method, "exact | closed_form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ewkit::SeeSawConfig seesaw{restarts, max_iters, seesaw_tol, seed};
    const json config_echo{{"seed", seed},
                           {"tol", herm_tol},
                           {"restarts", restarts},
                           {"max_iters", max_iters},
                           {"seesaw_tol", seesaw_tol}};

    try {
        if (cmax->parsed()) {
            Timer timer;
            const ewkit::DensityMatrix rho = ewkit::io::load_state(state_path, herm_tol);
            if (!rho.normalized())
                std::cerr << "warning: state is flagged unnormalized; values are scale-dependent\n";
            const double bound = ewkit::c_bound_closed_form(rho);
            const ewkit::CMaxResult exact = ewkit::c_max_exact(rho, seesaw);
            json outputs{{"closed_form_bound", bound},
                         {"exact", exact.value},
                         {"converged", exact.converged},
                         {"restarts_used", exact.restarts_used}};
            if (exact.minimizer)
                outputs["minimizer"] = ewkit::io::product_vector_to_json(*exact.minimizer);
            emit(run_record("cmax", config_echo, state_path, std::move(outputs), timer.seconds()),
                 output_path);
            return kExitOk;
        }

        if (det->parsed()) {
            Timer timer;
            const ewkit::DensityMatrix pi = ewkit::io::load_state(state_path, herm_tol);
            ewkit::DetectConfig cfg;
            cfg.max_candidates = max_candidates;
            cfg.random_candidates = random_candidates;
            cfg.seed = seed;
            cfg.seesaw = seesaw;
            if (c_method == "closed_form")
                cfg.c_method = ewkit::CMethod::ClosedForm;
            else if (c_method != "exact")
                throw ewkit::ParseError("unknown c-method: " + c_method);
            if (has_forced_c) cfg.forced_c = forced_c;
            if (has_c_fraction) cfg.c_fraction = c_fraction;
            if (!basis_path.empty()) cfg.user_basis = ewkit::io::load_basis(basis_path);
            if (!gammas_csv.empty()) {
                std::vector<double> g;
                std::istringstream is(gammas_csv);
                std::string tok;
                while (std::getline(is, tok, ',')) g.push_back(std::stod(tok));
                cfg.user_gammas = std::move(g);
            }
            const ewkit::DetectionReport report = ewkit::detect(pi, cfg);
            emit(run_record("detect", config_echo, state_path,
                            ewkit::io::report_to_json(report), timer.seconds()),
                 output_path);
            return report.verdict == ewkit::Verdict::EntangledWitnessed ? kExitOk : kExitNegative;
        }

        if (sweep->parsed()) {
            Timer timer;
            if (family != "werner") throw ewkit::ParseError("unknown family: " + family);
            const std::vector<double> grid = parse_grid(grid_spec);
            ewkit::DetectConfig cfg;
            cfg.seed = seed;
            cfg.seesaw = seesaw;
            // Threshold curves track the mirrored candidate by default.
            cfg.random_candidates = random_candidates == 199 ? 0 : random_candidates;
            cfg.max_candidates = std::max(1, cfg.random_candidates + 1);
            if (c_method == "closed_form") cfg.c_method = ewkit::CMethod::ClosedForm;
            if (has_c_fraction) cfg.c_fraction = c_fraction;
            const ewkit::SweepResult result = ewkit::sweep_family(grid, cfg);

            std::ostringstream csv;
            csv << "param,verdict,trace_value,ppt_min_eig,c_used\n";
            for (const ewkit::SweepPoint& pt : result.points) {
                const ewkit::DetectionReport& r = pt.report;
                csv << ewkit::io::format_sig(pt.param) << "," << ewkit::to_string(r.verdict) << ","
                    << (r.trace_value ? ewkit::io::format_sig(*r.trace_value) : "") << ","
                    << ewkit::io::format_sig(r.ppt_min_eigenvalue) << ","
                    << (r.witness ? ewkit::io::format_sig(r.witness->c) : "") << "\n";
            }
            csv << "threshold," << (result.threshold ? ewkit::io::format_sig(*result.threshold) : "none")
                << "\n";
            if (output_path.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(output_path);
                if (!out) throw ewkit::ParseError("cannot open output file: " + output_path);
                out << csv.str();
            }
            std::cerr << "sweep finished in " << timer.seconds() << " s\n";
            return kExitOk;
        }

        if (ppt->parsed()) {
            const ewkit::DensityMatrix pi = ewkit::io::load_state(state_path, herm_tol);
            const double min_eig = ewkit::ppt_test(pi);
            std::cout << ewkit::io::format_sig(min_eig) << "\n";
            return min_eig >= 0.0 ? kExitOk : kExitNegative;
        }

        if (wit->parsed()) {
            Timer timer;
            const ewkit::DensityMatrix rho = ewkit::io::load_state(state_path, herm_tol);
            const ewkit::CMethod method =
                c_method == "closed_form" ? ewkit::CMethod::ClosedForm : ewkit::CMethod::Exact;
            try {
                const ewkit::Witness w = ewkit::make_witness(
                    rho, has_witness_c ? std::optional<double>(witness_c) : std::nullopt, method,
                    seesaw);
                emit(run_record("witness", config_echo, state_path, ewkit::io::witness_to_json(w),
                                timer.seconds()),
                     output_path);
                return kExitOk;
            } catch (const ewkit::NoWitnessExistsError& e) {
                std::cerr << e.what() << "\n";
                return kExitNegative;
            } catch (const ewkit::InvalidCError& e) {
                std::cerr << e.what() << "\n";
                return kExitNegative;
            }
        }
    } catch (const ewkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
