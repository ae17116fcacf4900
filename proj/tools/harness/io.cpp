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

#include "io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gaussprep::harness {

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ValidationError("cannot read " + what + " from '" + s + "'");
    }
}

std::int64_t to_int(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ValidationError("cannot read " + what + " from '" + s + "'");
    }
}

}  // namespace

const char *tool_version() { return GAUSSPREP_VERSION; }

std::vector<std::string> csv_metadata(const std::string &command, const Params &params) {
    std::string line = std::string(kToolName) + " " + tool_version() + " " + command;
    for (const auto &[k, v] : params) line += " " + k + "=" + v;
    return {line};
}

nlohmann::json json_metadata(const std::string &command, const Params &params) {
    nlohmann::json p = nlohmann::json::object();
    for (const auto &[k, v] : params) p[k] = v;
    return {{"tool", kToolName}, {"version", tool_version()}, {"command", command}, {"params", p}};
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WindowSpec parse_window(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("window must be uniform:n or gaussian:sigma[,mu]");
    const std::string kind = text.substr(0, colon);
    const auto args = split(text.substr(colon + 1), ',');
    if (kind == "uniform" && args.size() == 1) {
        const auto n = to_int(args[0], "window half-width");
        if (n < 1) throw ValidationError("window half-width must be at least 1");
        return UniformWindow{n};
    }
    if (kind == "gaussian" && (args.size() == 1 || args.size() == 2)) {
        GaussianWindow g{to_double(args[0], "window sigma"), 0.0};
        if (!(g.sigma > 0.0)) throw ValidationError("window sigma must be positive");
        if (args.size() == 2) g.mu = to_double(args[1], "window mu");
        return g;
    }
    throw ValidationError("window must be uniform:n or gaussian:sigma[,mu], got '" + text + "'");
}

PsiSpec parse_psi(const std::string &text) {
    PsiSpec out;
    if (text.rfind("gaussian:", 0) == 0) {
        const auto args = split(text.substr(9), ',');
        if (args.size() != 2) throw ValidationError("psi must be gaussian:sigma,mu");
        out.gaussian = GaussianParams{to_double(args[0], "psi sigma"), to_double(args[1], "psi mu")};
    } else {
        out.file = text;
    }
    return out;
}

std::vector<unsigned> parse_uint_range(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.empty() || parts.size() > 2) throw ValidationError("range must be a or a:b");
    const auto lo = to_int(parts[0], "range start");
    const auto hi = parts.size() == 2 ? to_int(parts[1], "range end") : lo;
    if (lo < 0 || hi < lo || hi > 64) throw ValidationError("range '" + text + "' is empty or out of bounds");
    std::vector<unsigned> out;
    for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<unsigned>(v));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string &text) {
    std::vector<std::int64_t> out;
    for (const auto &s : split(text, ',')) out.push_back(to_int(s, "integer list entry"));
    return out;
}

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> out;
    for (const auto &s : split(text, ',')) out.push_back(to_double(s, "number list entry"));
    return out;
}

std::filesystem::path default_output_dir() {
    if (const char *env = std::getenv("GAUSSPREP_OUT_DIR"); env && *env) return env;
    return std::filesystem::current_path();
}

}  // namespace gaussprep::harness
