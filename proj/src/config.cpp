#include "yuoh/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace yuoh {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("config: unknown key \"" + it.key() + "\" in " + where);
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("config: ") + key + " must be a number");
    return j.at(key).get<double>();
}

Ray parse_state_entry(const json& entry, std::size_t index) {
    if (entry.is_string()) {
        const std::string label = entry.get<std::string>();
        return find_ray(label);  // throws on unknown label
    }
    if (entry.is_object()) {
        reject_unknown(entry, {"label", "vector"}, "states[" + std::to_string(index) + "]");
        if (!entry.contains("vector"))
            throw std::invalid_argument("config: state object needs a \"vector\"");
        const auto& vec = entry.at("vector");
        if (!vec.is_array() || vec.size() != 3)
            throw std::invalid_argument("config: state vector must have 3 components");
        Vec3 v;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& comp = vec.at(i);
            if (!comp.is_array() || comp.size() != 2)
                throw std::invalid_argument("config: state components are [re, im] pairs");
            v[i] = cplx(comp.at(0).get<double>(), comp.at(1).get<double>());
        }
        if (std::abs(norm(v) - 1.0) > 1e-6)
            throw std::invalid_argument("config: state vector is not unit norm");
        const std::string label = entry.contains("label")
                                      ? entry.at("label").get<std::string>()
                                      : "custom" + std::to_string(index);
        // Renormalize only when needed so an echoed config re-parses to
        // bit-identical components.
        const double n = norm(v);
        if (std::abs(n - 1.0) > 1e-12)
            for (auto& e : v.v) e /= n;
        return Ray{label, v};
    }
    throw std::invalid_argument("config: states entries are labels or {label, vector} objects");
}

}  // namespace

ExperimentInputs RunConfig::inputs() const {
    ExperimentInputs in;
    in.noise = noise;
    in.model = model;
    in.cal = cal;
    in.rabi = rabi;
    in.states = states;
    in.method = method;
    in.cache_conditionals = cache_conditionals;
    in.threads = threads;
    return in;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    reject_unknown(j,
                   {"seed", "shots", "noiseless", "states", "correlation_method",
                    "cache_conditionals", "threads", "output_dir", "noise", "calibration",
                    "fluorescence", "rabi"},
                   "top level");

    RunConfig cfg;
    if (j.contains("seed")) cfg.noise.seed = j.at("seed").get<uint64_t>();
    if (j.contains("shots")) {
        cfg.noise.shots = j.at("shots").get<long long>();
        if (cfg.noise.shots < 1) throw std::invalid_argument("config: shots must be >= 1");
    }
    if (j.contains("noiseless")) cfg.noise.noiseless = j.at("noiseless").get<bool>();
    if (j.contains("cache_conditionals")) cfg.cache_conditionals = j.at("cache_conditionals").get<bool>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();

    if (j.contains("correlation_method")) {
        const std::string m = j.at("correlation_method").get<std::string>();
        if (m == "joint")
            cfg.method = CorrelationMethod::joint;
        else if (m == "algebraic")
            cfg.method = CorrelationMethod::algebraic;
        else if (m == "both")
            cfg.method = CorrelationMethod::both;
        else
            throw std::invalid_argument("config: correlation_method must be joint|algebraic|both");
    }

    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        reject_unknown(n, {"depolarizing_p", "pulse_amp_error"}, "noise");
        cfg.noise.depolarizing_p = get_number(n, "depolarizing_p", 0.0);
        cfg.noise.pulse_amp_error = get_number(n, "pulse_amp_error", 0.0);
        if (cfg.noise.depolarizing_p < 0.0 || cfg.noise.depolarizing_p > 1.0)
            throw std::invalid_argument("config: depolarizing_p outside [0,1]");
        if (std::abs(cfg.noise.pulse_amp_error) > 0.1)
            throw std::invalid_argument("config: pulse_amp_error outside [-0.1, 0.1]");
    }

    if (j.contains("calibration")) {
        const auto& c = j.at("calibration");
        reject_unknown(c,
                       {"rabi_period_mw1", "rabi_period_mw2", "freq_mw1", "freq_mw2", "init_laser",
                        "wait", "readout_laser"},
                       "calibration");
        cfg.cal.rabi_period_mw1 = get_number(c, "rabi_period_mw1", cfg.cal.rabi_period_mw1);
        cfg.cal.rabi_period_mw2 = get_number(c, "rabi_period_mw2", cfg.cal.rabi_period_mw2);
        cfg.cal.freq_mw1 = get_number(c, "freq_mw1", cfg.cal.freq_mw1);
        cfg.cal.freq_mw2 = get_number(c, "freq_mw2", cfg.cal.freq_mw2);
        cfg.cal.init_laser = get_number(c, "init_laser", cfg.cal.init_laser);
        cfg.cal.wait = get_number(c, "wait", cfg.cal.wait);
        cfg.cal.readout_laser = get_number(c, "readout_laser", cfg.cal.readout_laser);
        if (cfg.cal.rabi_period_mw1 <= 0.0 || cfg.cal.rabi_period_mw2 <= 0.0 ||
            cfg.cal.init_laser <= 0.0 || cfg.cal.wait <= 0.0 || cfg.cal.readout_laser <= 0.0)
            throw std::invalid_argument("config: calibration durations must be positive");
    }

    if (j.contains("fluorescence")) {
        const auto& f = j.at("fluorescence");
        reject_unknown(f, {"dark_yield", "contrast", "readout_window"}, "fluorescence");
        cfg.model.dark_yield = get_number(f, "dark_yield", cfg.model.dark_yield);
        cfg.model.contrast = get_number(f, "contrast", cfg.model.contrast);
        cfg.model.readout_window = get_number(f, "readout_window", cfg.model.readout_window);
        if (cfg.model.dark_yield <= 0.0)
            throw std::invalid_argument("config: dark_yield must be positive");
        if (cfg.model.contrast <= 0.0 || cfg.model.contrast > 1.0)
            throw std::invalid_argument("config: contrast outside (0,1]");
    }

    if (j.contains("rabi")) {
        const auto& r = j.at("rabi");
        reject_unknown(r, {"span_periods"}, "rabi");
        cfg.rabi.span_periods = get_number(r, "span_periods", cfg.rabi.span_periods);
        if (cfg.rabi.span_periods <= 0.0)
            throw std::invalid_argument("config: span_periods must be positive");
    }

    if (j.contains("states")) {
        const auto& s = j.at("states");
        if (!s.is_array() || s.empty())
            throw std::invalid_argument("config: states must be a non-empty array");
        for (std::size_t i = 0; i < s.size(); ++i) cfg.states.push_back(parse_state_entry(s.at(i), i));
    } else {
        cfg.states = default_prepared_states();
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.noise.seed;
    j["shots"] = cfg.noise.shots;
    j["noiseless"] = cfg.noise.noiseless;
    j["correlation_method"] = method_name(cfg.method);
    j["cache_conditionals"] = cfg.cache_conditionals;
    j["threads"] = cfg.threads;
    j["output_dir"] = cfg.output_dir;
    j["noise"] = {{"depolarizing_p", cfg.noise.depolarizing_p},
                  {"pulse_amp_error", cfg.noise.pulse_amp_error}};
    j["calibration"] = {{"rabi_period_mw1", cfg.cal.rabi_period_mw1},
                        {"rabi_period_mw2", cfg.cal.rabi_period_mw2},
                        {"freq_mw1", cfg.cal.freq_mw1},
                        {"freq_mw2", cfg.cal.freq_mw2},
                        {"init_laser", cfg.cal.init_laser},
                        {"wait", cfg.cal.wait},
                        {"readout_laser", cfg.cal.readout_laser}};
    j["fluorescence"] = {{"dark_yield", cfg.model.dark_yield},
                         {"contrast", cfg.model.contrast},
                         {"readout_window", cfg.model.readout_window}};
    j["rabi"] = {{"span_periods", cfg.rabi.span_periods}};
    nlohmann::ordered_json states = nlohmann::ordered_json::array();
    for (const auto& s : cfg.states) {
        nlohmann::ordered_json vec = nlohmann::ordered_json::array();
        for (const auto& c : s.vector.v)
            vec.push_back({c.real(), c.imag()});
        states.push_back({{"label", s.label}, {"vector", vec}});
    }
    j["states"] = states;
    return j;
}

const char* method_name(CorrelationMethod m) {
    switch (m) {
        case CorrelationMethod::joint: return "joint";
        case CorrelationMethod::algebraic: return "algebraic";
        case CorrelationMethod::both: return "both";
    }
    return "joint";
}

}  // namespace yuoh
