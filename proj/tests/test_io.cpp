#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"

#include "ewkit/io.hpp"

using namespace ewkit;

namespace {

const std::string kData = EWKIT_DATA_DIR;

std::string temp_path(const std::string& name) {
    return std::string(::testing::TempDir()) + "/" + name;
}

}  // namespace

TEST(LoadState, Fixtures) {
    const DensityMatrix rq = io::load_state(kData + "/rho_q_m1_3.json");
    EXPECT_LT((rq.mat() - rho_q_family(-1.0 / 3.0).mat()).frobenius_norm(), 1e-12);

    const DensityMatrix w = io::load_state(kData + "/werner_05.json");
    EXPECT_LT((w.mat() - werner_family(0.5).mat()).frobenius_norm(), 1e-12);

    const DensityMatrix sep = io::load_state(kData + "/sep_2x3.json");
    EXPECT_EQ(sep.dims().a, 2);
    EXPECT_EQ(sep.dims().b, 3);
    EXPECT_NEAR(sep.trace(), 1.0, 1e-12);
}

TEST(LoadState, MalformedInputs) {
    EXPECT_THROW(io::load_state(kData + "/malformed.json"), ParseError);
    EXPECT_THROW(io::load_state(kData + "/does_not_exist.json"), ParseError);

    auto reject = [](const char* text) {
        const std::string p = temp_path("bad_state.json");
        std::ofstream(p) << text;
        EXPECT_THROW(io::load_state(p), ParseError) << text;
    };
    reject("[1, 2, 3]");
    reject("{\"d_a\": 2, \"d_b\": 2}");
    reject("{\"d_a\": 2.5, \"d_b\": 2, \"matrix\": []}");
    reject("{\"d_a\": 0, \"d_b\": 2, \"matrix\": []}");
    reject("{\"d_a\": 1, \"d_b\": 1, \"matrix\": [[[1, \"x\"]]]}");
    reject("not json at all");

    // Structurally valid JSON that fails the density-matrix constraints.
    const std::string p = temp_path("not_hermitian.json");
    std::ofstream(p) << R"({"d_a":1,"d_b":2,"matrix":[[[0.5,0],[1,0]],[[0,0],[0.5,0]]]})";
    EXPECT_THROW(io::load_state(p), NotHermitianError);
}

TEST(SaveState, RoundTrip) {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = oracles::random_density(2, 3, rng);
        const std::string p = temp_path("roundtrip_" + std::to_string(trial) + ".json");
        io::save_state(rho, p);
        const DensityMatrix back = io::load_state(p);
        EXPECT_LT((back.mat() - rho.mat()).frobenius_norm(), 1e-12);
        EXPECT_EQ(back.dims().a, rho.dims().a);
        EXPECT_EQ(back.dims().b, rho.dims().b);
    }
}

TEST(SaveState, NormalizedFlagPreserved) {
    ComplexMatrix m = ComplexMatrix::identity(4) * Complex{0.5, 0.0};
    m.set_bipartite_dims({2, 2});
    const DensityMatrix rho(m, /*normalized=*/false);
    const std::string p = temp_path("unnormalized.json");
    io::save_state(rho, p);
    const DensityMatrix back = io::load_state(p);
    EXPECT_FALSE(back.normalized());
    EXPECT_NEAR(back.trace(), 2.0, 1e-12);
}

TEST(LoadBasis, BellFixture) {
    const auto basis = io::load_basis(kData + "/bell_basis.json");
    ASSERT_EQ(basis.size(), 4u);
    for (const auto& v : basis) {
        ASSERT_EQ(v.size(), 4u);
        EXPECT_NEAR(norm2(v), 1.0, 1e-9);
    }
    EXPECT_THROW(io::load_basis(kData + "/werner_05.json"), ParseError);
    EXPECT_THROW(io::load_basis(kData + "/nope.json"), ParseError);
}

TEST(FileDigest, StableAndContentSensitive) {
    const std::string a = temp_path("digest_a.txt");
    const std::string b = temp_path("digest_b.txt");
    std::ofstream(a) << "hello";
    std::ofstream(b) << "hello!";
    EXPECT_EQ(io::file_digest(a), io::file_digest(a));
    EXPECT_NE(io::file_digest(a), io::file_digest(b));
    EXPECT_EQ(io::file_digest(a).size(), 16u);
}

TEST(Serialization, WitnessAndReport) {
    const Witness w = make_witness(rho_q_family(-0.25));
    const nlohmann::json wj = io::witness_to_json(w);
    EXPECT_NEAR(wj["c"].get<double>(), 0.1875, 1e-10);
    EXPECT_EQ(wj["method"], "exact");
    EXPECT_TRUE(wj.contains("minimizer"));
    const DensityMatrix back = io::state_from_json(wj["rho"]);
    EXPECT_LT((back.mat() - w.rho.mat()).frobenius_norm(), 1e-12);

    const DetectionReport rep = detect(werner_family(0.5));
    const nlohmann::json rj = io::report_to_json(rep);
    EXPECT_EQ(rj["verdict"], "entangled_witnessed");
    EXPECT_NEAR(rj["trace_value"].get<double>(), -1.0 / 32.0, 1e-10);
    ASSERT_FALSE(rj["trace_log"].empty());
    EXPECT_EQ(rj["trace_log"][0]["source"], "mirrored");
}

TEST(FormatSig, TwelveSignificantDigits) {
    EXPECT_EQ(io::format_sig(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(io::format_sig(-0.1), "-0.1");
}
