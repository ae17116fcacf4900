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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "io.hpp"

int main(int argc, char **argv) {
    using namespace gaussprep::harness;
    CLI::App app{"acceptance suite"};
    std::vector<int> only;
    std::string out;
    app.add_option("--only", only, "criterion numbers")->delimiter(',')->check(CLI::Range(1, kCriterionCount));
    app.add_option("--out", out, "artifact directory");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto results = run_acceptance(only);
        if (!out.empty()) write_artifacts(results, out);
        print_table(std::cout, results);
        return all_passed(results) ? 0 : 1;
    } catch (const std::exception &e) {
        std::cerr << "acceptance: " << e.what() << '\n';
        return 2;
    }
}
