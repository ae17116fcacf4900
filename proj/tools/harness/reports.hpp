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

#ifndef GAUSSPREP_HARNESS_REPORTS_HPP
#define GAUSSPREP_HARNESS_REPORTS_HPP

#include "gaussprep/prep1d.hpp"
#include "gaussprep/prepnd.hpp"
#include "gaussprep/resample.hpp"
#include "json.hpp"

namespace gaussprep::harness {

nlohmann::json to_json(const GateCountReport &report);
nlohmann::json to_json(const UdutDecomposition &dec);
nlohmann::json to_json(const QuadraticForm &form, const NdPreparation &prepared, const NdReport &report);
/// The A-marginal is summarized by its largest leaked entries.
nlohmann::json to_json(const ResampleReport &report);

}  // namespace gaussprep::harness

#endif  // GAUSSPREP_HARNESS_REPORTS_HPP
