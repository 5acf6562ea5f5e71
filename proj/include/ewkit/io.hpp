// State-file and report serialization.  States are JSON documents with
// integer `d_a`, `d_b`, a `matrix` of [re, im] entry pairs, and an
// optional `normalized` flag (default true).
#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ewkit/detection.hpp"

namespace ewkit::io {

using nlohmann::json;

inline Complex parse_entry(const json& e, const std::string& where) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(where + ": entry must be a [re, im] number pair");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError(where + ": non-finite entry");
    return Complex{re, im};
}

inline DensityMatrix state_from_json(const json& doc, double tol = kHermitianTol) {
    if (!doc.is_object()) throw ParseError("state document must be a JSON object");
    if (!doc.contains("d_a") || !doc.contains("d_b") || !doc.contains("matrix"))
        throw ParseError("state document requires d_a, d_b and matrix fields");
    if (!doc["d_a"].is_number_integer() || !doc["d_b"].is_number_integer())
        throw ParseError("d_a and d_b must be integers");
    const int da = doc["d_a"].get<int>();
    const int db = doc["d_b"].get<int>();
    if (da < 1 || db < 1) throw ParseError("d_a and d_b must be positive");
    const int n = da * db;
    const json& rows = doc["matrix"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("matrix must have d_a*d_b rows");
    std::vector<Complex> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix row " + std::to_string(r) + ": expected " +
                             std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c)
            entries.push_back(parse_entry(row[c], "matrix row " + std::to_string(r) +
                                                      ", column " + std::to_string(c)));
    }
    const bool normalized = doc.value("normalized", true);
    ComplexMatrix m(n, std::move(entries));
    m.set_bipartite_dims({da, db});
    return DensityMatrix(std::move(m), normalized, tol);
}

inline DensityMatrix load_state(const std::string& path, double tol = kHermitianTol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return state_from_json(doc, tol);
}

inline json state_to_json(const DensityMatrix& rho) {
    const BipartiteDims d = rho.dims();
    json rows = json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < rho.dim(); ++c)
            row.push_back({rho.mat()(r, c).real(), rho.mat()(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"d_a", d.a}, {"d_b", d.b}, {"matrix", std::move(rows)},
                {"normalized", rho.normalized()}};
}

inline void save_state(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << state_to_json(rho).dump(1) << "\n";
}

// Basis file: d_a, d_b plus `vectors`, one row of [re, im] entries per
// basis vector.
inline std::vector<std::vector<Complex>> load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open basis file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!doc.contains("vectors") || !doc["vectors"].is_array())
        throw ParseError("basis file requires a vectors array");
    std::vector<std::vector<Complex>> out;
    for (size_t r = 0; r < doc["vectors"].size(); ++r) {
        const json& row = doc["vectors"][r];
        if (!row.is_array()) throw ParseError("basis vector " + std::to_string(r));
        std::vector<Complex> v;
        for (size_t c = 0; c < row.size(); ++c)
            v.push_back(parse_entry(row[c], "basis vector " + std::to_string(r)));
        out.push_back(std::move(v));
    }
    return out;
}

// FNV-1a over the raw file bytes; the run-record input digest.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file for digest: " + path);
    uint64_t h = 0xcbf29ce484222325ULL;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string format_sig(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline json product_vector_to_json(const ProductVector& pv) {
    auto vec = [](const std::vector<Complex>& v) {
        json out = json::array();
        for (const Complex& z : v) out.push_back({z.real(), z.imag()});
        return out;
    };
    return json{{"mu", vec(pv.mu)}, {"nu", vec(pv.nu)}};
}

inline json witness_to_json(const Witness& w) {
    json out{{"c", w.c},
             {"c_max", w.certified_c_max},
             {"method", w.method == CMethod::Exact ? "exact" : "closed_form"},
             {"lambda_min_rho", w.rho.min_eigenvalue()},
             {"rho", state_to_json(w.rho)}};
    if (w.minimizer) out["minimizer"] = product_vector_to_json(*w.minimizer);
    return out;
}

inline json report_to_json(const DetectionReport& r) {
    json log = json::array();
    for (const TraceLogEntry& e : r.trace_log)
        log.push_back({{"spectrum", e.spectrum},
                       {"source", e.source},
                       {"c", e.c},
                       {"trace", e.trace},
                       {"witness_valid", e.witness_valid}});
    json out{{"verdict", to_string(r.verdict)},
             {"ppt_min_eigenvalue", r.ppt_min_eigenvalue},
             {"iterations", r.iterations},
             {"trace_log", std::move(log)}};
    if (r.trace_value) out["trace_value"] = *r.trace_value;
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    return out;
}

}  // namespace ewkit::io
