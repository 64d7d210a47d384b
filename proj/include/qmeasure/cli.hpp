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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qmeasure::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kValidationError = 2,
    kHypothesisError = 3, ///< non-commuting meters or failed precondition
};

struct RunOptions {
    std::optional<std::string> out_path;
    /// Overrides the reproducibility tolerance (used by reproduce and oit).
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

int run(const std::string &scenario_path, const RunOptions &options,
        std::ostream &out, std::ostream &err);

int validate(const std::string &scenario_path, std::ostream &out,
             std::ostream &err);

/// Writes `eta,agreement` CSV rows to @p out.
int sweep(const std::string &scenario_path, const std::string &param,
          const std::vector<double> &values, std::ostream &out, std::ostream &err);

/// Full command-line entry point (subcommands run / validate / sweep).
int main(int argc, char **argv);

} // namespace qmeasure::cli
