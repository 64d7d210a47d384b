// Copyright 2026 The qmeasure Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmeasure/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmeasure/errors.hpp"
#include "qmeasure/scenario.hpp"
#include "qmeasure/serialization.hpp"

namespace qmeasure::cli {

namespace {

using scenario::Scenario;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

// Loads and validates; reports and returns nullopt on any input problem.
std::optional<Scenario> load(const std::string &path, std::ostream &err) {
    try {
        std::ifstream in(path);
        if (!in) {
            throw io::SchemaError("cannot read scenario file " + path);
        }
        const auto j = nlohmann::json::parse(in);
        Scenario s = scenario::parse_scenario(j);
        scenario::resolve(s);
        return s;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << path << ": invalid JSON: " << e.what() << "\n";
    } catch (const Error &e) {
        err << "error: " << path << ": " << e.what() << "\n";
    }
    return std::nullopt;
}

// Maps failures after validation onto exit codes.
template <class F> int guarded(F &&body, std::ostream &err) {
    try {
        return body();
    } catch (const NonCommutingMetersError &e) {
        err << "error: " << e.what() << "\n";
        return kHypothesisError;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return kHypothesisError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace

int run(const std::string &scenario_path, const RunOptions &options,
        std::ostream &out, std::ostream &err) {
    std::optional<Scenario> s = load(scenario_path, err);
    if (!s) {
        return kValidationError;
    }
    if (options.tol) {
        if (!(*options.tol >= 0.0)) {
            err << "error: --tol must be non-negative\n";
            return kValidationError;
        }
        s->params.tolerances.reproducibility = *options.tol;
    }
    if (options.seed) {
        s->params.seed = *options.seed;
    }
    return guarded(
        [&] {
            const std::string report = scenario::run_experiment(*s).dump(2) + "\n";
            if (options.out_path) {
                std::ofstream file(*options.out_path);
                if (!file) {
                    err << "error: cannot write " << *options.out_path << "\n";
                    return static_cast<int>(kInternalError);
                }
                file << report;
            } else {
                out << report;
            }
            return static_cast<int>(kOk);
        },
        err);
}

int validate(const std::string &scenario_path, std::ostream &out,
             std::ostream &err) {
    if (!load(scenario_path, err)) {
        return kValidationError;
    }
    out << scenario_path << ": ok\n";
    return kOk;
}

int sweep(const std::string &scenario_path, const std::string &param,
          const std::vector<double> &values, std::ostream &out, std::ostream &err) {
    if (param != "eta") {
        err << "error: only --param eta is supported\n";
        return kValidationError;
    }
    if (values.empty()) {
        err << "error: --values is empty\n";
        return kValidationError;
    }
    std::optional<Scenario> s = load(scenario_path, err);
    if (!s) {
        return kValidationError;
    }
    if (!std::holds_alternative<scenario::UnsharpObservable>(s->observable)) {
        err << "error: " << scenario_path
            << ": sweep over eta needs an \"unsharp\" observable\n";
        return kValidationError;
    }
    for (const double eta : values) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            err << "error: eta = " << eta << " outside [0, 1]\n";
            return kValidationError;
        }
    }
    std::ostringstream table;
    table << "eta,agreement\n";
    for (const double eta : values) {
        try {
            table << format_double(eta) << ","
                  << format_double(scenario::agreement_at_eta(*s, eta)) << "\n";
        } catch (const NonCommutingMetersError &) {
            throw;
        } catch (const Error &e) {
            err << "error: eta = " << eta << ": " << e.what() << "\n";
            return kValidationError;
        }
    }
    out << table.str();
    return kOk;
}

int main(int argc, char **argv) {
    CLI::App app{"Indirect measurement models and intersubjectivity checks"};
    app.require_subcommand(1);

    std::string path;
    RunOptions run_opts;
    auto *run_cmd = app.add_subcommand("run", "Run the scenario's experiment");
    run_cmd->add_option("file", path, "Scenario JSON")->required();
    run_cmd->add_option("--out", run_opts.out_path, "Write the report here");
    run_cmd->add_option("--tol", run_opts.tol, "Reproducibility tolerance");
    run_cmd->add_option("--seed", run_opts.seed, "Sampler seed");

    auto *validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("file", path, "Scenario JSON")->required();

    std::string param = "eta";
    std::vector<double> values;
    auto *sweep_cmd =
        app.add_subcommand("sweep", "Agreement probability versus sharpness");
    sweep_cmd->add_option("file", path, "Scenario JSON")->required();
    sweep_cmd->add_option("--param", param, "Swept parameter")->default_val("eta");
    sweep_cmd->add_option("--values", values, "Comma-separated values")
        ->delimiter(',')
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }

    if (*run_cmd) {
        return run(path, run_opts, std::cout, std::cerr);
    }
    if (*validate_cmd) {
        return validate(path, std::cout, std::cerr);
    }
    return guarded([&] { return sweep(path, param, values, std::cout, std::cerr); },
                   std::cerr);
}

} // namespace qmeasure::cli
