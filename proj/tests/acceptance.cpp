// Acceptance suite: every release-gating property, one pass/fail line each.
// Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "yuoh/config.hpp"
#include "yuoh/nchv.hpp"
#include "yuoh/random.hpp"
#include "yuoh/report_io.hpp"

using namespace yuoh;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void line(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  criterion %d — %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void criterion_1_operator_identity() {
    Timer t;
    const Mat3 m = inequality_operator();
    const double dev = max_abs(m - kQuantumValue * Mat3::identity());

    auto rng = std::mt19937_64(20240);
    double max_state_dev = 0.0;
    for (int i = 0; i < 100; ++i)
        max_state_dev =
            std::max(max_state_dev, std::abs(expectation(m, random_density(rng)) - kQuantumValue));

    const double elapsed = t.seconds();
    const bool pass = dev < 1e-12 && max_state_dev < 1e-6 && elapsed < 1.0;
    line(1, pass, "inequality operator = (25/3)·I, state-independent expectation",
         "entry dev " + fmt(dev) + ", state dev " + fmt(max_state_dev) + ", " + fmt(elapsed) + " s");
}

void criterion_2_classical_bounds() {
    Timer t;
    const auto best = classical_max();
    const auto ks = ks_admissible_assignments();
    const auto hb = h_classical_bounds();
    const double elapsed = t.seconds();
    const bool pass = best.quarters == 32 && !ks.empty() && hb.max == 1 && elapsed < 1.0;
    line(2, pass, "brute-force bounds: max 8, KS-colorable, h-bound 1",
         "max " + fmt(best.value) + ", admissible " + std::to_string(ks.size()) + ", h-max " +
             std::to_string(hb.max) + ", " + fmt(elapsed) + " s");
}

void criterion_3_graph_facts() {
    const auto& g = canonical_graph();
    const auto& mset = measurement_ray_set();
    double max_dev = 0.0;
    for (const auto& [i, j] : g.edges) {
        const auto& rays = canonical_rays();
        const Ray w = complete_basis(rays[i], rays[j]);
        const Mat3 sum = outer(rays[i].vector, rays[i].vector) +
                         outer(rays[j].vector, rays[j].vector) + outer(w.vector, w.vector);
        max_dev = std::max(max_dev, max_abs(sum - Mat3::identity()));
    }
    const bool pass = g.edges.size() == 24 && mset.size() == 25 && max_dev < 1e-12;
    line(3, pass, "24 edges, 25 measurement rays, completions resolve identity",
         "edges " + std::to_string(g.edges.size()) + ", rays " + std::to_string(mset.size()) +
             ", identity dev " + fmt(max_dev));
}

void criterion_4_noiseless_oracle() {
    Timer t;
    ExperimentInputs in;
    in.noise.noiseless = true;
    const auto report = run_experiment(in);

    double max_p_dev = 0.0, max_lhs_dev = 0.0, max_h_dev = 0.0;
    double anchor = -1.0;
    const auto states = default_prepared_states();
    for (std::size_t si = 0; si < states.size(); ++si) {
        const DensityOperator rho = prepare_state(states[si], in.noise);
        for (const auto& [label, est] : report.states[si].projections) {
            max_p_dev = std::max(max_p_dev, std::abs(est.p - ideal_population(rho, find_ray(label))));
            if (states[si].label == "y3-" && label == "h1") anchor = est.p;
        }
        max_lhs_dev = std::max(max_lhs_dev, std::abs(report.states[si].lhs - kQuantumValue));
        max_h_dev = std::max(max_h_dev, std::abs(report.states[si].h_sum - kQuantumHValue));
    }

    const double elapsed = t.seconds();
    const double anchor_dev = std::abs(anchor - 2.0 / 3.0);
    const bool pass = max_p_dev < 1e-6 && max_lhs_dev < 1e-6 && max_h_dev < 1e-6 &&
                      anchor_dev < 1e-6 && elapsed < 10.0;
    line(4, pass, "noiseless pipeline equals the exact quantum values",
         "P dev " + fmt(max_p_dev) + ", LHS dev " + fmt(max_lhs_dev) + ", h dev " + fmt(max_h_dev) +
             ", anchor P(y3-|h1) " + fmt(anchor) + ", " + fmt(elapsed) + " s");
}

void criterion_5_noisy_reproduction() {
    Timer t;
    double grand_sum = 0.0;
    double band_min = 1e9, band_max = -1e9;
    bool all_violate = true, all_in_window = true;
    int n = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        ExperimentInputs in;
        in.noise.shots = 100000;
        in.noise.seed = seed;
        const auto report = run_experiment(in);
        for (const auto& s : report.states) {
            ++n;
            grand_sum += s.lhs;
            band_min = std::min(band_min, s.lhs);
            band_max = std::max(band_max, s.lhs);
            all_violate = all_violate && s.lhs > 8.0;
            all_in_window = all_in_window && s.lhs >= 8.0 && s.lhs <= 8.6;
        }
    }
    const double grand_mean = grand_sum / n;
    const bool covers_observed_band = band_min <= 8.13 && band_max >= 8.47;
    const double elapsed = t.seconds();
    const bool pass = all_violate && all_in_window && std::abs(grand_mean - 25.0 / 3.0) < 0.1 &&
                      covers_observed_band && elapsed < 300.0;
    line(5, pass, "10 noisy runs at 1e5 shots: violation, window, mean, band coverage",
         "band [" + fmt(band_min) + ", " + fmt(band_max) + "], mean " + fmt(grand_mean) + ", " +
             fmt(elapsed) + " s");
}

void criterion_6_estimator_cross_check() {
    ExperimentInputs in;
    in.noise.noiseless = true;
    in.method = CorrelationMethod::both;
    const auto noiseless = run_experiment(in);
    double noiseless_dev = 0.0;
    for (const auto& s : noiseless.states)
        for (const auto& c : s.correlations)
            noiseless_dev = std::max(noiseless_dev, std::abs(c.joint - c.algebraic));

    ExperimentInputs noisy = in;
    noisy.noise.noiseless = false;
    noisy.noise.shots = 1000000;
    noisy.noise.seed = 42;
    const auto report = run_experiment(noisy);
    double noisy_dev = 0.0;
    for (const auto& s : report.states)
        for (const auto& c : s.correlations)
            noisy_dev = std::max(noisy_dev, std::abs(c.joint - c.algebraic));

    const bool pass = noiseless_dev < 1e-9 && noisy_dev < 0.05;
    line(6, pass, "joint vs algebraic correlations agree",
         "noiseless max dev " + fmt(noiseless_dev) + ", 1e6-shot max dev " + fmt(noisy_dev));
}

void criterion_7_compiler_round_trip() {
    double min_overlap = 1.0;
    for (const auto& r : measurement_ray_set()) {
        const auto u = sequence_unitary(compile_measurement(r));
        min_overlap =
            std::min(min_overlap, std::abs(inner(StateVector::basis(0), apply(u, r.state()))));
    }

    auto rng = std::mt19937_64(4242);
    double min_fidelity = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const StateVector target = random_state(rng);
        const auto u = sequence_unitary(compile_preparation(Ray{"rnd", target.amplitudes()}));
        min_fidelity =
            std::min(min_fidelity, std::norm(inner(target, apply(u, StateVector::basis(0)))));
    }

    const bool pass = min_overlap > 1.0 - 1e-10 && min_fidelity >= 1.0 - 1e-10;
    line(7, pass, "measurement maps every ray to |0>, preparation is faithful",
         "min |<0|U|r>| " + fmt(min_overlap) + ", min fidelity " + fmt(min_fidelity));
}

void criterion_8_readout_identity() {
    double max_dev = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20 - i; ++j) {
            const double p0 = i / 20.0;
            const double pp = j / 20.0;
            const double pm = 1.0 - p0 - pp;
            const double p1 = (p0 + pp) > 0.0 ? p0 / (p0 + pp) : 1.0;
            const double p2 = (p0 + pm) > 0.0 ? p0 / (p0 + pm) : 1.0;
            max_dev = std::max(max_dev, std::abs(combine(p1, p2) - p0));
        }
    const bool pass = max_dev < 1e-12;
    line(8, pass, "P1P2/(P1+P2−P1P2) recovers the |0> population on the simplex grid",
         "max dev " + fmt(max_dev));
}

void criterion_9_determinism() {
    ExperimentInputs in;
    in.noise.shots = 50000;
    in.noise.seed = 1234;
    in.method = CorrelationMethod::both;

    RunConfig cfg;
    cfg.noise = in.noise;
    cfg.states = default_prepared_states();
    cfg.method = in.method;

    const std::string a = report_to_json(run_experiment(in), cfg).dump();
    const std::string b = report_to_json(run_experiment(in), cfg).dump();

    auto serial = in;
    serial.threads = 1;
    auto parallel = in;
    parallel.threads = 4;
    const std::string s = report_to_json(run_experiment(serial), cfg).dump();
    const std::string p = report_to_json(run_experiment(parallel), cfg).dump();

    const bool pass = a == b && s == p;
    line(9, pass, "byte-identical reports: repeated runs and serial vs parallel",
         std::string("repeat ") + (a == b ? "ok" : "mismatch") + ", serial/parallel " +
             (s == p ? "ok" : "mismatch"));
}

}  // namespace

int main() {
    criterion_1_operator_identity();
    criterion_2_classical_bounds();
    criterion_3_graph_facts();
    criterion_4_noiseless_oracle();
    criterion_5_noisy_reproduction();
    criterion_6_estimator_cross_check();
    criterion_7_compiler_round_trip();
    criterion_8_readout_identity();
    criterion_9_determinism();
    std::printf("%d of 9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
