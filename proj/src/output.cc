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

#include "rspsim/output.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rspsim {

namespace {

void dump_into(const nlohmann::json &j, std::string &out, int depth) {
    auto newline = [&](int d) {
        out += '\n';
        out.append(static_cast<std::size_t>(2 * d), ' ');
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump_into(it.value(), out, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            for (std::size_t k = 0; k < j.size(); k++) {
                if (k > 0) {
                    out += ',';
                }
                newline(depth + 1);
                dump_into(j[k], out, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

nlohmann::json optional_number(const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite value in output record");
    }
    if (v == 0.0) {
        v = 0.0;  // drop the sign of negative zero
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string canonical_dump(const nlohmann::json &j) {
    std::string out;
    dump_into(j, out, 0);
    out += '\n';
    return out;
}

nlohmann::json config_to_json(const TrialConfig &config, bool analytic) {
    nlohmann::json c;
    c["mode"] = std::string(mode_name(config.mode));
    c["theta"] = config.theta;
    c["phi"] = config.phi;
    c["family"] = std::string(family_name(config.family));
    c["bell"] = std::string(bell_name(config.bell));
    if (config.b) {
        c["b"] = nlohmann::json::array({config.b->x, config.b->y, config.b->z});
    } else {
        c["b"] = nullptr;
    }
    c["analytic"] = analytic;
    // Analytic runs never touch the random stream, so neither value matters.
    c["trials"] = analytic ? nlohmann::json(nullptr) : nlohmann::json(config.trials);
    c["seed"] = analytic ? nlohmann::json(nullptr) : nlohmann::json(config.seed);
    return c;
}

nlohmann::json aggregate_to_json(const TrialAggregate &agg, std::string_view command) {
    nlohmann::json r;
    r["schema_version"] = std::string(kSchemaVersion);
    r["command"] = std::string(command);
    r["config"] = config_to_json(agg.config, agg.analytic);

    nlohmann::json result;
    result["trials"] = agg.analytic ? nlohmann::json(nullptr) : nlohmann::json(agg.trials);
    nlohmann::json counts = nlohmann::json::object();
    nlohmann::json freqs = nlohmann::json::object();
    for (std::size_t k = 0; k < agg.branch_names.size(); k++) {
        if (!agg.analytic) {
            counts[agg.branch_names[k]] = agg.branch_counts[k];
        }
        freqs[agg.branch_names[k]] = agg.branch_frequencies[k];
    }
    result["branch_counts"] = agg.analytic ? nlohmann::json(nullptr) : counts;
    result["branch_frequencies"] = freqs;
    result["p_plus"] = optional_number(agg.p_plus);
    if (agg.config.mode == TrialMode::MeasureSim && !agg.analytic) {
        result["outcome_counts"] = {{"plus", agg.plus_count}, {"minus", agg.minus_count}};
    }
    result["mean_fidelity"] = agg.mean_fidelity;
    result["exact_delivery_rate"] = agg.exact_delivery_rate;
    result["cbits_total"] = agg.analytic ? nlohmann::json(nullptr) : nlohmann::json(agg.cbits_total);
    result["cbits_per_run"] = agg.cbits_per_run;
    result["verdict"] = agg.pass ? "pass" : "fail";
    r["result"] = result;

    nlohmann::json ref;
    nlohmann::json ref_branches = nlohmann::json::object();
    for (std::size_t k = 0; k < agg.references.branch_names.size(); k++) {
        ref_branches[agg.references.branch_names[k]] = agg.references.branch_probabilities[k];
    }
    ref["branch_probabilities"] = ref_branches;
    ref["exact_delivery_rate"] = agg.references.exact_delivery_rate;
    ref["p_plus"] = optional_number(agg.references.p_plus);
    ref["cbits_per_run"] = agg.references.cbits_per_run;
    r["analytic_references"] = ref;

    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : agg.checks) {
        checks.push_back({
            {"name", c.name},
            {"empirical", c.empirical},
            {"analytic", c.analytic},
            {"three_sigma", c.three_sigma},
            {"pass", c.pass},
        });
    }
    r["checks"] = checks;

    if (agg.analytic) {
        nlohmann::json branches = nlohmann::json::array();
        for (const auto &b : agg.branches) {
            branches.push_back({
                {"name", b.name},
                {"probability", b.probability},
                {"fidelity", b.fidelity},
                {"exact_delivery", b.exact_delivery},
                {"p_plus", optional_number(b.p_plus)},
            });
        }
        r["branches"] = branches;
    }
    return r;
}

std::string csv_header(bool measure_columns) {
    std::string h;
    for (std::size_t k = 0; k < kCsvColumns.size(); k++) {
        h += (k ? "," : "") + kCsvColumns[k];
    }
    if (measure_columns) {
        for (const auto &c : kCsvMeasureColumns) {
            h += "," + c;
        }
    }
    return h + "\n";
}

std::string csv_row(const TrialAggregate &agg, bool measure_columns) {
    const TrialConfig &c = agg.config;
    std::ostringstream row;
    row << format_double(c.theta) << ',' << format_double(c.phi) << ',' << family_name(c.family) << ','
        << bell_name(c.bell) << ',';
    if (agg.analytic) {
        row << ",,";
    } else {
        row << c.trials << ',' << c.seed << ',';
    }
    row << format_double(agg.exact_delivery_rate) << ',' << format_double(agg.mean_fidelity) << ','
        << agg.cbits_per_run << ',' << (agg.pass ? "pass" : "fail");
    if (measure_columns) {
        BlochVector b = c.b.value_or(BlochVector{});
        double sigma = 0.0;
        for (const auto &check : agg.checks) {
            if (check.name == "p_plus") {
                sigma = check.three_sigma;
            }
        }
        row << ',' << format_double(b.x) << ',' << format_double(b.y) << ',' << format_double(b.z) << ','
            << format_double(agg.p_plus.value_or(0.0)) << ','
            << format_double(agg.references.p_plus.value_or(0.0)) << ',' << format_double(sigma);
    }
    row << '\n';
    return row.str();
}

}  // namespace rspsim
