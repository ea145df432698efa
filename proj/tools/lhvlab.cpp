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

// lhvlab: batch runner for the threshold tables, model simulations, CHSH
// scans and integral oracles.
//
// Exit status: 0 when every internal check passes, 1 when a check fails,
// 2 on usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <lhvlab/cli/commands.hpp>

namespace {

/// JSON objects as CLI11 config. Keys are the long flag names without the
/// dashes ({"samples": 100000, "d": [2, 3]}) and apply to the subcommand being
/// run. A file may also hold one object per subcommand
/// ({"simulate": {...}, "toner": {...}}); only the active one is read.
/// Values given on the command line take precedence.
class JsonConfig : public CLI::Config {
  public:
    explicit JsonConfig(std::string section) : section_(std::move(section)) {}

    std::string to_config(const CLI::App *, bool, bool, std::string) const override {
        throw CLI::ConfigError("writing JSON configs is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception &e) {
            throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConfigError("config must be a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        if (section_.empty()) {
            return items;
        }
        open(items, section_);
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it->is_object()) items.push_back(item(section_, it.key(), *it));
        }
        if (auto own = j.find(section_); own != j.end() && own->is_object()) {
            for (auto it = own->begin(); it != own->end(); ++it) {
                items.push_back(item(section_, it.key(), *it));
            }
        }
        close(items, section_);
        return items;
    }

  private:
    // Section markers, as the INI reader emits them: "++" activates the
    // subcommand, "--" runs its requirement checks.
    static void open(std::vector<CLI::ConfigItem> &items, const std::string &section) {
        items.push_back({{section}, "++", {}});
    }
    static void close(std::vector<CLI::ConfigItem> &items, const std::string &section) {
        items.push_back({{section}, "--", {}});
    }

    static CLI::ConfigItem item(const std::string &section, const std::string &key,
                                const nlohmann::json &v) {
        CLI::ConfigItem out;
        out.parents = {section};
        out.name = key;
        if (v.is_array()) {
            for (const auto &e : v) {
                out.inputs.push_back(scalar(key, e));
            }
        } else {
            out.inputs.push_back(scalar(key, v));
        }
        return out;
    }

    static std::string scalar(const std::string &key, const nlohmann::json &v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        // dump() keeps integers integral and doubles round-trippable
        if (v.is_number()) return v.dump();
        throw CLI::ConfigError("config value for '" + key + "' must be a scalar or an array");
    }

    std::string section_;
};

struct Common {
    std::string out;
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--out", c.out, "Write the report here instead of stdout");
}

/// The subcommand named on the command line, if any.
std::string find_section(int argc, char **argv, const CLI::App &app) {
    for (int i = 1; i < argc; ++i) {
        for (const CLI::App *sub : app.get_subcommands({})) {
            if (sub->get_name() == argv[i]) {
                return argv[i];
            }
        }
    }
    return {};
}

int emit(const lhvlab::cli::CommandResult &r, const Common &c) {
    if (c.out.empty()) {
        std::cout << r.output;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << c.out << "\n";
            return 2;
        }
        f << r.output;
    }
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.summary << "\n";
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Local hidden-variable models: thresholds, simulations and checks", "lhvlab"};
    app.require_subcommand(1);
    // subcommands inherit this, so --config is accepted after their name
    app.fallthrough();

    Common common;

    lhvlab::cli::ThresholdsConfig th;
    auto *thresholds = app.add_subcommand("thresholds", "CSV of separability and model thresholds");
    add_common(thresholds, common);
    thresholds->add_option("--family", th.family, "werner | isotropic | noisy")->capture_default_str();
    thresholds->add_option("--dmax", th.dmax, "Largest local dimension (<= 64)")->capture_default_str();

    lhvlab::cli::SimulateConfig sim;
    std::vector<double> sim_a;
    auto *simulate = app.add_subcommand("simulate", "Monte-Carlo run of a model against its target state");
    add_common(simulate, common);
    simulate->add_option("--model", sim.model,
                         "werner | barrett | almeida-iso | almeida-noisy-pm | almeida-noisy-povm | "
                         "gisin-gisin | raimat | bvqb | toner | toth-acin | hirsch")
        ->capture_default_str();
    simulate->add_option("--d", sim.d, "Local dimension")->capture_default_str();
    simulate->add_option("--p", sim.p, "Target visibility (default: the model's threshold)");
    simulate->add_option("--settings", sim.settings, "Random settings per party")->capture_default_str();
    simulate->add_option("--samples", sim.samples, "Rounds per setting tuple (>= 1e4)")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Experiment seed")->required();
    simulate->add_option("--K", sim.K, "Toner truncation")->capture_default_str();
    simulate->add_option("--a", sim_a, "Toth-Acin coefficients a1,a2,a3")->expected(3)->delimiter(',');
    simulate->add_option("--z-max", sim.z_max, "Cell fails above this z-score")->capture_default_str();
    simulate->add_option("--abs-floor", sim.abs_floor, "Deviations below this never fail")
        ->capture_default_str();

    lhvlab::cli::ChshConfig ch;
    auto *chsh = app.add_subcommand("chsh", "Maximal CHSH value of a two-qubit state");
    add_common(chsh, common);
    chsh->add_option("--state", ch.state, "werner | isotropic | raimat | bvqb")->capture_default_str();
    chsh->add_option("--p", ch.p, "Visibility")->capture_default_str();
    chsh->add_option("--restarts", ch.restarts, "Random restarts of the search")->capture_default_str();
    chsh->add_option("--seed", ch.seed, "Seed of the restarts")->capture_default_str();
    chsh->add_option("--tolerance", ch.tolerance, "Allowed deviation from 2 sqrt(2) p")
        ->capture_default_str();

    lhvlab::cli::IntegralsConfig in;
    auto *integrals = app.add_subcommand("integrals", "Simplex and Bloch-sphere integral oracles");
    add_common(integrals, common);
    integrals->add_option("--d", in.d, "Dimensions, comma separated")->delimiter(',')->capture_default_str();
    integrals->add_option("--samples", in.samples, "Samples per oracle (>= 1e4)")->capture_default_str();
    integrals->add_option("--seed", in.seed, "Experiment seed")->required();
    integrals->add_option("--triples", in.random_triples, "Random sphere triples")->capture_default_str();
    integrals->add_option("--tolerance", in.tolerance, "Relative tolerance of every oracle")
        ->capture_default_str();

    lhvlab::cli::TonerConfig to;
    auto *toner = app.add_subcommand("toner", "Toner embedding checks and sign correlators");
    add_common(toner, common);
    toner->add_option("--K", to.K, "Truncation")->capture_default_str();
    toner->add_option("--pairs", to.pairs, "Random setting pairs")->capture_default_str();
    toner->add_option("--samples", to.samples, "Gaussian samples per pair (>= 1e4)")->capture_default_str();
    toner->add_option("--seed", to.seed, "Experiment seed")->required();
    toner->add_option("--z-max", to.z_max, "Correlator fails above this z-score")->capture_default_str();

    app.config_formatter(std::make_shared<JsonConfig>(find_section(argc, argv, app)));
    app.set_config("--config", "", "JSON file with option values (flags override)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*thresholds) return emit(lhvlab::cli::cmd_thresholds(th), common);
        if (*simulate) {
            if (!sim_a.empty()) sim.a = {sim_a[0], sim_a[1], sim_a[2]};
            return emit(lhvlab::cli::cmd_simulate(sim), common);
        }
        if (*chsh) return emit(lhvlab::cli::cmd_chsh(ch), common);
        if (*integrals) return emit(lhvlab::cli::cmd_integrals(in), common);
        if (*toner) return emit(lhvlab::cli::cmd_toner(to), common);
    } catch (const lhvlab::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
