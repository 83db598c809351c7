// Copyright 2026 The rspsim Authors
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

#ifndef RSPSIM_OUTPUT_H
#define RSPSIM_OUTPUT_H

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rspsim/stats.h"

namespace rspsim {

inline constexpr std::string_view kSchemaVersion = "1";

/// Fixed CSV columns, in order.
inline const std::vector<std::string> kCsvColumns{
    "theta", "phi", "family", "bell", "trials", "seed", "exact_delivery_rate", "mean_fidelity", "cbits_per_run",
    "verdict"};
/// Extra trailing columns for measure-sim rows.
inline const std::vector<std::string> kCsvMeasureColumns{
    "b_x", "b_y", "b_z", "p_plus_empirical", "p_plus_analytic", "p_plus_three_sigma"};

/// A double with 17 significant digits ("%.16e"); parses back to the same
/// value and therefore re-formats to the same bytes.
std::string format_double(double v);

/// Canonical JSON text: keys sorted, two-space indent, doubles via
/// format_double, integers in decimal. parse(canonical_dump(j)) re-dumps
/// to identical bytes.
std::string canonical_dump(const nlohmann::json &j);

nlohmann::json config_to_json(const TrialConfig &config, bool analytic);
/// Full OutputRecord for one aggregate, including schema_version.
nlohmann::json aggregate_to_json(const TrialAggregate &agg, std::string_view command);

std::string csv_header(bool measure_columns);
std::string csv_row(const TrialAggregate &agg, bool measure_columns);

}  // namespace rspsim

#endif
