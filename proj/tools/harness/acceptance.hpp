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

#ifndef GAUSSPREP_HARNESS_ACCEPTANCE_HPP
#define GAUSSPREP_HARNESS_ACCEPTANCE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaussprep::harness {

struct Artifact {
    std::string name;
    std::string content;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    std::vector<Artifact> artifacts;
    double seconds = 0.0;  // wall time; never written to artifacts
};

inline constexpr int kCriterionCount = 8;

/// Runs one acceptance criterion (1-based). Throws std::out_of_range for an
/// unknown id.
CriterionResult run_criterion(int id);

/// Runs the given criteria in order; all of them when `ids` is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int> &ids = {});

void write_artifacts(const std::vector<CriterionResult> &results, const std::filesystem::path &dir);

/// One "[PASS] ..." / "[FAIL] ..." line per criterion plus a summary line.
void print_table(std::ostream &out, const std::vector<CriterionResult> &results);

bool all_passed(const std::vector<CriterionResult> &results);

}  // namespace gaussprep::harness

#endif  // GAUSSPREP_HARNESS_ACCEPTANCE_HPP
