#pragma once

#include <string>

#include <json.hpp>

#include "yuoh/config.hpp"
#include "yuoh/experiment.hpp"

// Machine-readable outputs: report JSON (full precision, stable field
// order, byte-reproducible for a given run) and the three CSV tables
// (fixed 6-decimal formatting for diffability).

namespace yuoh {

std::string fmt6(double x);

nlohmann::ordered_json rays_to_json(const std::vector<Ray>& rays);

nlohmann::ordered_json report_to_json(const ExperimentReport& report, const RunConfig& cfg);

// Parses the fields cmd_report renders; throws std::invalid_argument on
// malformed input.
struct ParsedReport {
    std::vector<std::string> state_labels;
    std::vector<std::vector<std::pair<std::string, double>>> observables;  // per state
    std::vector<double> lhs;
    std::vector<double> h_sum;
    double mean_lhs = 0;
};

ParsedReport parse_report(const nlohmann::json& j);

std::string observables_csv(const ExperimentReport& report);
std::string correlations_csv(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);
std::string traces_csv(const ExperimentReport& report);

void write_file(const std::string& path, const std::string& contents);

}  // namespace yuoh
