#include "yuoh/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace yuoh {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

ordered_json rays_to_json(const std::vector<Ray>& rays) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rays) {
        ordered_json vec = ordered_json::array();
        for (const auto& c : r.vector.v) vec.push_back({c.real(), c.imag()});
        arr.push_back({{"label", r.label}, {"vector", vec}});
    }
    return arr;
}

ordered_json report_to_json(const ExperimentReport& report, const RunConfig& cfg) {
    ordered_json j;
    j["schema"] = "yuoh-report/1";
    j["config"] = config_to_json(cfg);
    j["reference"] = {{"mw1", {{"bright", report.ref_mw1.bright}, {"dark", report.ref_mw1.dark}}},
                      {"mw2", {{"bright", report.ref_mw2.bright}, {"dark", report.ref_mw2.dark}}}};

    ordered_json conds = ordered_json::array();
    for (const auto& c : report.conditionals)
        conds.push_back({{"measured", c.measured}, {"prepared", c.prepared}, {"value", c.value}});
    j["conditionals"] = conds;

    ordered_json states = ordered_json::array();
    for (const auto& s : report.states) {
        ordered_json st;
        st["label"] = s.label;
        ordered_json projections = ordered_json::array();
        for (const auto& [ray, est] : s.projections)
            projections.push_back({{"ray", ray},
                                   {"p", est.p},
                                   {"p1", est.p1},
                                   {"p2", est.p2},
                                   {"stderr", est.stderr_},
                                   {"clamps", est.clamp_events}});
        st["projections"] = projections;
        ordered_json observables = ordered_json::array();
        for (const auto& [ray, a] : s.observables)
            observables.push_back({{"ray", ray}, {"a", a}});
        st["observables"] = observables;
        ordered_json correlations = ordered_json::array();
        for (const auto& c : s.correlations) {
            ordered_json row{{"u", c.u}, {"v", c.v}, {"value", c.value}};
            if (c.has_joint) row["joint"] = c.joint;
            if (c.has_algebraic) row["algebraic"] = c.algebraic;
            correlations.push_back(row);
        }
        st["correlations"] = correlations;
        st["lhs"] = s.lhs;
        st["h_sum"] = s.h_sum;
        st["clamp_events"] = s.clamp_events;
        states.push_back(st);
    }
    j["states"] = states;

    j["summary"] = {{"mean_lhs", report.mean_lhs},
                    {"min_lhs", report.min_lhs},
                    {"max_lhs", report.max_lhs},
                    {"mean_h_sum", report.mean_h_sum},
                    {"clamp_events", report.clamp_events},
                    {"classical_bound", 8.0},
                    {"quantum_value", kQuantumValue}};
    return j;
}

ParsedReport parse_report(const json& j) {
    ParsedReport out;
    try {
        if (j.at("schema").get<std::string>() != "yuoh-report/1")
            throw std::invalid_argument("report: unknown schema");
        for (const auto& st : j.at("states")) {
            out.state_labels.push_back(st.at("label").get<std::string>());
            std::vector<std::pair<std::string, double>> obs;
            for (const auto& o : st.at("observables"))
                obs.emplace_back(o.at("ray").get<std::string>(), o.at("a").get<double>());
            out.observables.push_back(std::move(obs));
            out.lhs.push_back(st.at("lhs").get<double>());
            out.h_sum.push_back(st.at("h_sum").get<double>());
        }
        out.mean_lhs = j.at("summary").at("mean_lhs").get<double>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: malformed JSON: ") + e.what());
    }
    return out;
}

std::string observables_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "state,ray,p,a,stderr\n";
    for (const auto& s : report.states) {
        for (const auto& [ray, est] : s.projections) {
            const int idx = ray_index(ray);
            if (idx < 0) continue;  // observables are the 13 canonical rays
            os << s.label << ',' << ray << ',' << fmt6(est.p) << ',' << fmt6(1.0 - 2.0 * est.p)
               << ',' << fmt6(est.stderr_) << '\n';
        }
    }
    return os.str();
}

std::string correlations_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "state,u,v,value,method\n";
    for (const auto& s : report.states)
        for (const auto& c : s.correlations) {
            if (c.has_joint)
                os << s.label << ',' << c.u << ',' << c.v << ',' << fmt6(c.joint) << ",joint\n";
            if (c.has_algebraic)
                os << s.label << ',' << c.u << ',' << c.v << ',' << fmt6(c.algebraic)
                   << ",algebraic\n";
        }
    return os.str();
}

std::string summary_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "state,lhs,h_sum\n";
    for (const auto& s : report.states)
        os << s.label << ',' << fmt6(s.lhs) << ',' << fmt6(s.h_sum) << '\n';
    return os.str();
}

std::string traces_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "state,ray,channel,duration_us,counts\n";
    for (const auto& t : report.traces)
        for (std::size_t i = 0; i < t.trace.durations.size(); ++i)
            os << t.state << ',' << t.ray << ',' << channel_name(t.channel) << ','
               << fmt6(t.trace.durations[i]) << ',' << fmt6(t.trace.counts[i]) << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace yuoh
