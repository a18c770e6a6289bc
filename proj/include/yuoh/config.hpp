#pragma once

#include <string>

#include <json.hpp>

#include "yuoh/experiment.hpp"

// Run configuration: the single source of experiment parameters. The
// schema is strict — unknown keys anywhere are an error, so a typo in a
// noise knob cannot silently change the statistics.

namespace yuoh {

struct RunConfig {
    NoiseConfig noise;           // seed, shots, noiseless, depolarizing_p, pulse_amp_error
    FluorescenceModel model;
    CalibrationTable cal;
    RabiSettings rabi;
    std::vector<Ray> states;     // default: the 13 canonical rays
    CorrelationMethod method = CorrelationMethod::joint;
    bool cache_conditionals = true;
    int threads = 0;
    std::string output_dir = "out";

    ExperimentInputs inputs() const;
};

// Throws std::invalid_argument with a descriptive message on unknown
// keys, wrong types, or out-of-range values.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Resolved-config echo (the exact values the run used, defaults filled).
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

const char* method_name(CorrelationMethod m);

}  // namespace yuoh
