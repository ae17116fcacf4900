// Copyright 2026 The gaussprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSPREP_HARNESS_IO_HPP
#define GAUSSPREP_HARNESS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussprep/resample.hpp"
#include "json.hpp"

namespace gaussprep::harness {

inline constexpr const char *kToolName = "gaussprep";
const char *tool_version();

/// Bad flag values that CLI11 cannot catch on its own (exit code 3).
class ValidationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, std::string>;

/// "gaussprep <version> <command> key=value ..." header lines for CSV files.
std::vector<std::string> csv_metadata(const std::string &command, const Params &params);
/// {"tool", "version", "command", "params"}.
nlohmann::json json_metadata(const std::string &command, const Params &params);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::filesystem::path &path, const std::string &content);
std::string read_text(const std::filesystem::path &path);

/// "uniform:n" or "gaussian:sigma[,mu]".
WindowSpec parse_window(const std::string &text);

struct PsiSpec {
    std::optional<GaussianParams> gaussian;
    std::filesystem::path file;
};
/// "gaussian:sigma,mu" or a path to a state CSV.
PsiSpec parse_psi(const std::string &text);

/// "8:16" (inclusive) or a single value.
std::vector<unsigned> parse_uint_range(const std::string &text);
std::vector<std::int64_t> parse_int_list(const std::string &text);
std::vector<double> parse_double_list(const std::string &text);

/// Default artifact directory: $GAUSSPREP_OUT_DIR, else the working directory.
std::filesystem::path default_output_dir();

}  // namespace gaussprep::harness

#endif  // GAUSSPREP_HARNESS_IO_HPP
