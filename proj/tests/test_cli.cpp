// Copyright 2026 The lhvlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <lhvlab/cli/commands.hpp>

using namespace lhvlab;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

// ---------------------------------------------------------------------------
// JSON and CSV forms
// ---------------------------------------------------------------------------

TEST(Io, DensityMatrixRoundTrip) {
    const DensityMatrix rho = toth_acin_class(0.9, 0.5, 0.8);
    const json j = io::to_json(rho);
    EXPECT_EQ(j.at("dims"), json({2, 2, 2}));
    const DensityMatrix back = io::density_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.dims(), rho.dims());
    EXPECT_EQ((back.mat() - rho.mat()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Io, KetRoundTripIsExact) {
    Rng rng = make_stream(5);
    const Ket k = haar_sample_ket(5, rng);
    const Ket back = io::ket_from_json(json::parse(io::to_json(k).dump()));
    EXPECT_EQ((back.vec() - k.vec()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Io, QubitMeasurementUsesBlochForm) {
    const Measurement m = Measurement::qubit({0, 0, 1});
    const json j = io::to_json(m);
    EXPECT_TRUE(j.at("projective").get<bool>());
    const auto up = j.at("effects")[0].at("bloch").get<std::vector<double>>();
    const auto down = j.at("effects")[1].at("bloch").get<std::vector<double>>();
    ASSERT_EQ(up.size(), 3u);
    ASSERT_EQ(down.size(), 3u);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(up[i], i == 2 ? 1.0 : 0.0, 1e-15);
        EXPECT_NEAR(down[i], i == 2 ? -1.0 : 0.0, 1e-15);
    }
}

TEST(Io, PovmRoundTripPreservesEffects) {
    Rng rng = make_stream(8);
    for (int d : {2, 3}) {
        const Measurement m = random_povm(d, d + 2, rng);
        const Measurement back = io::measurement_from_json(json::parse(io::to_json(m).dump()));
        ASSERT_EQ(back.size(), m.size());
        ASSERT_EQ(back.outcomes(), m.outcomes());
        for (std::size_t i = 0; i < m.size(); ++i) {
            // kets may differ by a phase; the effects may not
            const CMatrix a = m[i].eta * m[i].ket * m[i].ket.adjoint();
            const CMatrix b = back[i].eta * back[i].ket * back[i].ket.adjoint();
            EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12) << "d=" << d << " effect " << i;
            EXPECT_EQ(back[i].outcome, m[i].outcome);
        }
    }
}

TEST(Io, MalformedDocumentsAreInvalidArgument) {
    try {
        io::operator_from_json(json::parse(R"({"dims":[2],"re":[[1,0]]})"));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
    try {
        io::family_from_json(json::parse(R"({"d":2})"));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
    EXPECT_THROW(io::measurement_from_json(json::parse(
                     R"({"d":3,"effects":[{"bloch":[0,0,1]}]})")),
                 Error);
}

TEST(Io, FamilySpecBuildsTheSameState) {
    io::FamilySpec f;
    f.family = Family::isotropic;
    f.d = 3;
    f.p = 0.25;
    const io::FamilySpec back = io::family_from_json(json::parse(io::to_json(f).dump()));
    EXPECT_EQ(io::make_state(back).mat(), isotropic_state(3, 0.25).mat());

    io::FamilySpec ta;
    ta.family = Family::toth_acin_class;
    ta.a = {0.9, 0.5, 0.8};
    EXPECT_EQ(io::make_state(io::family_from_json(io::to_json(ta))).mat(),
              toth_acin_class(0.9, 0.5, 0.8).mat());
}

TEST(Io, CsvNumbersAreShortestRoundTrip) {
    EXPECT_EQ(io::csv_number(0.5), "0.5");
    EXPECT_EQ(io::csv_number(1.0 / 3.0), "0.3333333333333333");
    EXPECT_EQ(std::stod(io::csv_number(5.0 / 12.0)), 5.0 / 12.0);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

TEST(Thresholds, WernerTableMatchesClosedForms) {
    const auto r = cli::cmd_thresholds({"werner", 20});
    EXPECT_TRUE(r.pass);
    const auto rows = lines(r.output);
    ASSERT_EQ(rows.size(), 20u);
    EXPECT_EQ(rows[0], "family,d,p_sep,p_pm,p_povm");
    EXPECT_EQ(rows[1], "werner,2,0.3333333333333333,0.5,0.4166666666666667");
    // d = 3: 1/(d+1), (d-1)/d
    EXPECT_EQ(rows[2].substr(0, 21), "werner,3,0.25,0.66666");
}

TEST(Thresholds, IsotropicAndNoisy) {
    const auto iso = cli::cmd_thresholds({"isotropic", 4});
    EXPECT_TRUE(iso.pass);
    EXPECT_EQ(lines(iso.output)[1], "isotropic,2,0.3333333333333333,0.5,0.4166666666666667");
    const auto noisy = cli::cmd_thresholds({"noisy", 3});
    EXPECT_TRUE(noisy.pass);
    // separability is only bracketed for the noisy family
    EXPECT_NE(lines(noisy.output)[2].find("\"[0.125, 0.18181818181818182]\""), std::string::npos);
}

TEST(Thresholds, RejectsOutOfRangeDimension) {
    EXPECT_THROW(cli::cmd_thresholds({"werner", 65}), Error);
    EXPECT_THROW(cli::cmd_thresholds({"werner", 1}), Error);
    EXPECT_THROW(cli::cmd_thresholds({"raimat", 4}), Error);
}

TEST(Simulate, WernerQutritAtTwoThirdsPasses) {
    cli::SimulateConfig c;
    c.model = "werner";
    c.d = 3;
    c.p = 2.0 / 3.0;
    c.settings = 4;
    c.samples = 100000;
    c.seed = 21;
    const auto r = cli::cmd_simulate(c);
    EXPECT_TRUE(r.pass) << r.summary;
    const json j = json::parse(r.output);
    EXPECT_EQ(j.at("failures").get<int>(), 0);
    EXPECT_TRUE(j.at("no_signalling").at("pass").get<bool>());
    EXPECT_EQ(j.at("estimates").size(), 4u * 9u);
}

TEST(Simulate, WernerQubitOutsideItsRegionFails) {
    cli::SimulateConfig c;
    c.model = "werner";
    c.d = 2;
    c.p = 0.9;
    c.settings = 5;
    c.samples = 100000;
    c.seed = 22;
    const auto r = cli::cmd_simulate(c);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(json::parse(r.output).at("failures").get<int>(), 0);
}

TEST(Simulate, BarrettQubitPovmsPass) {
    cli::SimulateConfig c;
    c.model = "barrett";
    c.d = 2;
    c.settings = 4;
    c.samples = 100000;
    c.seed = 23;
    const auto r = cli::cmd_simulate(c);
    EXPECT_TRUE(r.pass) << r.summary;
    const json j = json::parse(r.output);
    EXPECT_DOUBLE_EQ(j.at("state").at("p").get<double>(), 5.0 / 12.0);
    EXPECT_DOUBLE_EQ(j.at("claimed_p").get<double>(), 5.0 / 12.0);
}

TEST(Simulate, AbstainingModelIsPostselected) {
    cli::SimulateConfig c;
    c.model = "gisin-gisin";
    c.settings = 3;
    c.samples = 100000;
    c.seed = 24;
    const auto r = cli::cmd_simulate(c);
    EXPECT_TRUE(r.pass) << r.summary;
    EXPECT_TRUE(json::parse(r.output).at("postselected").get<bool>());
}

TEST(Simulate, ReportIsByteIdenticalForTheSameSeed) {
    cli::SimulateConfig c;
    c.model = "toth-acin";
    c.a = {0.9, 0.5, 0.8};
    c.settings = 2;
    c.samples = 20000;
    c.seed = 99;
    const auto a = cli::cmd_simulate(c);
    const auto b = cli::cmd_simulate(c);
    EXPECT_EQ(a.output, b.output);
    c.seed = 100;
    EXPECT_NE(cli::cmd_simulate(c).output, a.output);
}

TEST(Simulate, EnforcesSampleMinimumAndCompatibility) {
    cli::SimulateConfig c;
    c.seed = 1;
    c.samples = 9999;
    EXPECT_THROW(cli::cmd_simulate(c), Error);
    c.samples = 10000;
    c.model = "toth-acin";
    c.p = 0.3;
    EXPECT_THROW(cli::cmd_simulate(c), Error); // no visibility parameter
    c.model = "no-such-model";
    c.p.reset();
    EXPECT_THROW(cli::cmd_simulate(c), Error);
}

TEST(Simulate, TighterToleranceIsReported) {
    cli::SimulateConfig c;
    c.model = "werner";
    c.settings = 3;
    c.samples = 20000;
    c.seed = 3;
    c.z_max = 1e-6;
    c.abs_floor = 0.0;
    const auto r = cli::cmd_simulate(c);
    // nothing sampled matches to 1e-6 standard errors
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(json::parse(r.output).at("tolerance").at("z_max").get<double>(), 1e-6);
}

TEST(Chsh, WernerValuesFollowTwoRootTwoP) {
    for (double p : {0.5, 1.0 / std::sqrt(2.0), 0.75, 1.0}) {
        cli::ChshConfig c;
        c.p = p;
        const auto r = cli::cmd_chsh(c);
        EXPECT_TRUE(r.pass) << r.summary;
        const json j = json::parse(r.output);
        EXPECT_NEAR(j.at("max_value").get<double>(), 2.0 * std::sqrt(2.0) * p, 1e-3);
        EXPECT_EQ(j.at("violates").get<bool>(), p > 0.71);
    }
}

TEST(Chsh, RejectsNonQubitStates) {
    cli::ChshConfig c;
    c.state = "toth-acin-class";
    EXPECT_THROW(cli::cmd_chsh(c), Error);
}

TEST(Integrals, SmallRunPasses) {
    cli::IntegralsConfig c;
    c.d = {2, 3};
    c.samples = 200000;
    c.seed = 7;
    c.random_triples = 1;
    const auto r = cli::cmd_integrals(c);
    EXPECT_TRUE(r.pass) << r.summary;
    const json j = json::parse(r.output);
    EXPECT_EQ(j.at("simplex").size(), 2u);
    EXPECT_EQ(j.at("sphere").size(), 3u);
    EXPECT_DOUBLE_EQ(j.at("simplex")[1].at("Jt_u1sq").at("exact").get<double>(),
                     simplex_closed_form(SimplexKind::Jt_u1sq, 3));
}

TEST(Toner, SmallRunPasses) {
    cli::TonerConfig c;
    c.pairs = 5;
    c.samples = 100000;
    c.seed = 7;
    const auto r = cli::cmd_toner(c);
    EXPECT_TRUE(r.pass) << r.summary;
    const json j = json::parse(r.output);
    EXPECT_EQ(j.at("dimension").get<int>(), 2 * 26 * 53);
    EXPECT_NEAR(j.at("slope").get<double>(), -0.6595, 1e-3);
    EXPECT_LT(j.at("max_identity_residual").get<double>(), 1e-8);
    // parallel and perpendicular settings come first
    EXPECT_EQ(j.at("pairs")[1].at("a_dot_b").get<double>(), 0.0);
}

TEST(Seeds, DerivedSeedsAreDistinct) {
    EXPECT_NE(cli::derive_seed(7, 1), cli::derive_seed(7, 2));
    EXPECT_NE(cli::derive_seed(7, 1), cli::derive_seed(8, 1));
    EXPECT_EQ(cli::derive_seed(7, 1), cli::derive_seed(7, 1));
}

// ---------------------------------------------------------------------------
// The executable
// ---------------------------------------------------------------------------

class Binary : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("lhvlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string &args) const {
        const std::string cmd = std::string(LHVLAB_CLI) + " " + args + " 2>" + (dir_ / "stderr").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    fs::path path(const std::string &name) const { return dir_ / name; }
    void write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
    }

    fs::path dir_;
};

TEST_F(Binary, ThresholdsToFile) {
    ASSERT_EQ(run("thresholds --family werner --dmax 20 --out " + path("w.csv").string()), 0);
    const auto rows = lines(slurp(path("w.csv")));
    ASSERT_EQ(rows.size(), 20u);
    EXPECT_EQ(rows[1], "werner,2,0.3333333333333333,0.5,0.4166666666666667");
}

TEST_F(Binary, ExitStatusReflectsChecks) {
    const std::string base = " --settings 3 --samples 50000 --seed 5 --out " + path("r.json").string();
    EXPECT_EQ(run("simulate --model werner --d 2 --p 0.5" + base), 0);
    EXPECT_EQ(run("simulate --model werner --d 2 --p 0.9" + base), 1);
    EXPECT_EQ(run("simulate --model werner --samples 10 --seed 5"), 2);
    EXPECT_EQ(run("simulate --model werner"), 2); // seed is mandatory
    EXPECT_EQ(run("thresholds --dmax 65"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Binary, ConfigFileWithFlagOverride) {
    const std::string flags = "--model barrett --d 2 --settings 3 --samples 20000 --seed 5";
    ASSERT_EQ(run("simulate " + flags + " --out " + path("a.json").string()), 0);

    write("c.json", R"({"model": "barrett", "d": 2, "settings": 7, "samples": 20000, "seed": 5})");
    ASSERT_EQ(run("simulate --config " + path("c.json").string() + " --settings 3 --out " +
                  path("b.json").string()),
              0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));

    // per-subcommand sections; the inactive one is ignored
    write("s.json", R"({"simulate": {"model": "barrett", "d": 2, "settings": 3, "samples": 20000,
                                      "seed": 5}, "toner": {"K": 9}})");
    ASSERT_EQ(run("--config " + path("s.json").string() + " simulate --out " +
                  path("c.json.out").string()),
              0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("c.json.out")));
}

TEST_F(Binary, ConfigRejectsUnknownKeys) {
    write("bad.json", R"({"modle": "werner", "seed": 1})");
    EXPECT_EQ(run("simulate --config " + path("bad.json").string()), 2);
    write("broken.json", "{ not json");
    EXPECT_EQ(run("simulate --config " + path("broken.json").string()), 2);
}

TEST_F(Binary, ThreadCountDoesNotChangeTheReport) {
    const std::string args = "simulate --model barrett --d 3 --settings 2 --samples 40000 --seed 42 --out ";
    const std::string one = "LHVLAB_THREADS=1 " + std::string(LHVLAB_CLI) + " " + args + path("1.json").string();
    const std::string four = "LHVLAB_THREADS=4 " + std::string(LHVLAB_CLI) + " " + args + path("4.json").string();
    ASSERT_EQ(std::system((one + " 2>/dev/null").c_str()), 0);
    ASSERT_EQ(std::system((four + " 2>/dev/null").c_str()), 0);
    EXPECT_EQ(slurp(path("1.json")), slurp(path("4.json")));
}
