#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "yuoh/config.hpp"
#include "yuoh/nchv.hpp"
#include "yuoh/report_io.hpp"
#include "yuoh/verify.hpp"

// Exit codes: 0 success, 1 claim/check failure, 2 usage/config error.

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace yuoh;

int cmd_verify() {
    const auto checks = run_verification();
    ordered_json out;
    ordered_json rows = ordered_json::array();
    for (const auto& c : checks)
        rows.push_back(
            {{"check", c.check}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    out["checks"] = rows;
    out["rays"] = rays_to_json(canonical_rays());
    out["classical_max"] = classical_max().value;
    out["quantum_value"] = kQuantumValue;
    out["gap"] = kQuantumValue - classical_max().value;
    out["ks_admissible_count"] = ks_admissible_assignments().size();
    out["h_classical_max"] = h_classical_max();
    out["all_pass"] = all_pass(checks);
    std::cout << out.dump(2) << '\n';
    return all_pass(checks) ? 0 : 1;
}

Ray parse_ray_argument(const std::string& arg) {
    if (!arg.empty() && arg.front() == '[') {
        json vec;
        try {
            vec = json::parse(arg);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("cannot parse vector: ") + e.what());
        }
        if (!vec.is_array() || vec.size() != 3)
            throw std::invalid_argument("vector must have three [re, im] components");
        Vec3 v;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& c = vec.at(i);
            if (c.is_number())
                v[i] = c.get<double>();
            else if (c.is_array() && c.size() == 2)
                v[i] = cplx(c.at(0).get<double>(), c.at(1).get<double>());
            else
                throw std::invalid_argument("components are numbers or [re, im] pairs");
        }
        if (std::abs(norm(v) - 1.0) > 1e-6) throw std::invalid_argument("vector is not unit norm");
        const double n = norm(v);
        for (auto& e : v.v) e /= n;
        return Ray{"custom", v};
    }
    return find_ray(arg);
}

void print_sequence(const char* title, const PulseSequence& seq, const CalibrationTable& cal) {
    std::cout << title << ":\n";
    if (seq.pulses.empty()) {
        std::cout << "  (no pulses required)\n";
        return;
    }
    std::cout << "  channel  theta_rad  phi_rad   duration_us\n";
    for (const auto& p : seq.pulses)
        std::cout << "  " << channel_name(p.channel) << "      " << fmt6(p.theta) << "   "
                  << fmt6(p.phi) << "  " << fmt6(duration_of(p, cal)) << '\n';
}

ordered_json sequence_json(const PulseSequence& seq, const CalibrationTable& cal) {
    ordered_json rows = ordered_json::array();
    for (const auto& p : seq.pulses)
        rows.push_back({{"channel", channel_name(p.channel)},
                        {"theta_rad", p.theta},
                        {"phi_rad", p.phi},
                        {"duration_us", duration_of(p, cal)}});
    return rows;
}

int cmd_compile(const std::string& ray_arg, const std::string& config_path) {
    CalibrationTable cal;
    if (!config_path.empty()) cal = load_config(config_path).cal;

    const Ray target = parse_ray_argument(ray_arg);
    const auto prep = compile_preparation(target);
    const auto meas = compile_measurement(target);

    std::cout << "ray " << target.label << " = [";
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& c = target.vector[i];
        std::cout << (i ? ", " : "") << fmt6(c.real());
        if (std::abs(c.imag()) > 1e-12) std::cout << (c.imag() >= 0 ? "+" : "") << fmt6(c.imag()) << "i";
    }
    std::cout << "]\n";
    print_sequence("preparation", prep, cal);
    print_sequence("measurement (readout)", meas, cal);

    ordered_json out;
    out["ray"] = rays_to_json({target})[0];
    out["preparation"] = sequence_json(prep, cal);
    out["measurement"] = sequence_json(meas, cal);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, bool dump_traces) {
    RunConfig cfg = load_config(config_path);
    ExperimentInputs in = cfg.inputs();
    in.keep_traces = dump_traces;

    const auto report = run_experiment(in);

    std::filesystem::create_directories(cfg.output_dir);
    const auto dir = std::filesystem::path(cfg.output_dir);
    write_file((dir / "report.json").string(), report_to_json(report, cfg).dump(2) + "\n");
    write_file((dir / "observables.csv").string(), observables_csv(report));
    write_file((dir / "correlations.csv").string(), correlations_csv(report));
    write_file((dir / "summary.csv").string(), summary_csv(report));
    if (dump_traces) write_file((dir / "traces.csv").string(), traces_csv(report));

    bool claim = true;
    for (const auto& s : report.states) {
        std::cout << "state " << s.label << "  lhs " << fmt6(s.lhs) << "  h_sum " << fmt6(s.h_sum)
                  << '\n';
        if (cfg.noise.noiseless)
            claim = claim && std::abs(s.lhs - kQuantumValue) < 1e-6;
        else
            claim = claim && s.lhs > 8.0;
    }
    std::cout << "mean lhs " << fmt6(report.mean_lhs) << "  (classical bound 8, quantum "
              << fmt6(kQuantumValue) << ")\n";
    std::cout << "report written to " << (dir / "report.json").string() << '\n';
    return claim ? 0 : 1;
}

int cmd_report(const std::string& report_path, bool csv) {
    std::ifstream in(report_path);
    if (!in) {
        std::cerr << "cannot open " << report_path << '\n';
        return 2;
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        std::cerr << "malformed report: " << e.what() << '\n';
        return 2;
    }
    const ParsedReport rep = parse_report(j);

    // Outcome matrix: prepared states down, the 13 observables across.
    std::cout << "observable outcomes a_u (rows: prepared state)\n";
    std::cout << "state    ";
    for (const auto& r : canonical_rays()) std::cout << ' ' << r.label << "       ";
    std::cout << '\n';
    for (std::size_t s = 0; s < rep.state_labels.size(); ++s) {
        std::cout << rep.state_labels[s];
        for (std::size_t pad = rep.state_labels[s].size(); pad < 9; ++pad) std::cout << ' ';
        for (const auto& [ray, a] : rep.observables[s]) {
            (void)ray;
            std::cout << (a >= 0 ? " " : "") << fmt6(a) << ' ';
        }
        std::cout << '\n';
    }
    std::cout << "\nper-state inequality values\n";
    for (std::size_t s = 0; s < rep.state_labels.size(); ++s)
        std::cout << rep.state_labels[s] << "  lhs " << fmt6(rep.lhs[s]) << "  h_sum "
                  << fmt6(rep.h_sum[s]) << '\n';
    std::cout << "mean lhs " << fmt6(rep.mean_lhs) << '\n';

    if (csv) {
        std::cout << "\nstate,";
        for (const auto& r : canonical_rays()) std::cout << r.label << ',';
        std::cout << "lhs,h_sum\n";
        for (std::size_t s = 0; s < rep.state_labels.size(); ++s) {
            std::cout << rep.state_labels[s] << ',';
            for (const auto& [ray, a] : rep.observables[s]) {
                (void)ray;
                std::cout << fmt6(a) << ',';
            }
            std::cout << fmt6(rep.lhs[s]) << ',' << fmt6(rep.h_sum[s]) << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"13-ray qutrit contextuality laboratory"};
    app.require_subcommand(1);

    app.add_subcommand("verify", "run the algebraic self-checks and classical bounds");

    auto* compile = app.add_subcommand("compile", "compile a ray into pulse sequences");
    std::string ray_arg;
    std::string compile_config;
    compile->add_option("ray", ray_arg, "ray label (e.g. h1, y3+, x1^0) or JSON vector")
        ->required();
    compile->add_option("--config", compile_config, "run-config JSON for the calibration table");

    auto* run = app.add_subcommand("run", "run the full simulated experiment");
    std::string run_config;
    bool dump_traces = false;
    run->add_option("--config", run_config, "run-config JSON path")->required();
    run->add_flag("--dump-traces", dump_traces, "also write raw Rabi traces CSV");

    auto* report = app.add_subcommand("report", "render a report JSON");
    std::string report_path;
    bool report_csv = false;
    report->add_option("report", report_path, "report.json path")->required();
    report->add_flag("--csv", report_csv, "also emit a plot-ready CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("verify")) return cmd_verify();
        if (app.got_subcommand("compile")) return cmd_compile(ray_arg, compile_config);
        if (app.got_subcommand("run")) return cmd_run(run_config, dump_traces);
        if (app.got_subcommand("report")) return cmd_report(report_path, report_csv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
