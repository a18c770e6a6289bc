#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "yuoh/pulse.hpp"

// Pulse-level measurement pipeline: Rabi traces with photon shot noise,
// harmonic fitting, P1/P2 normalization, correlation estimation, and the
// full per-state experiment report.

namespace yuoh {

struct FluorescenceModel {
    double dark_yield = 0.02;     // mean photons per shot for m_s = ±1
    double contrast = 0.30;       // |0⟩ is brighter by this fraction
    double readout_window = 0.3;  // µs
};

struct NoiseConfig {
    long long shots = 1000000;    // repetitions per Rabi point
    uint64_t seed = 42;
    double depolarizing_p = 0.0;  // applied to the prepared state
    double pulse_amp_error = 0.0; // fractional θ scaling on compiled pulses
    bool noiseless = false;       // exact expected counts, no sampling
};

struct RabiSettings {
    static constexpr int kPoints = 24;  // samples per trace
    double span_periods = 1.0;          // fraction of a Rabi period covered
};

// Extra integration on the calibration benchmark relative to a single
// measurement point (the benchmark is reused by every fit in a run, so
// its noise would otherwise enter all of them coherently).
inline constexpr long long kBenchmarkIntegration = 100;

struct RabiTrace {
    Channel channel;
    std::vector<double> durations;  // µs
    std::vector<double> counts;     // photon totals per point
    long long shots = 0;
};

// Counts-level harmonic fit c0 + a·cos(2πt/T) + b·sin(2πt/T).
struct CountsFit {
    double c0 = 0, a = 0, b = 0;
    // Covariance of (c0, a, b) from fit residuals.
    double var_c0 = 0, var_a = 0, cov_c0_a = 0;
    bool degenerate = false;  // normal equations were singular; mean-level fallback
};

struct ReferenceLevels {
    double bright = 0;  // counts at p0 = 1
    double dark = 0;    // counts at p0 = 0
};

struct TraceFit {
    double p0_at_zero = 0;      // population units, fit evaluated at t = 0
    double subspace_total = 0;  // 2·offset, population units
    double fraction = 0;        // p0_at_zero / subspace_total, clamped to [0,1]
    double fraction_stderr = 0;
    int clamp_events = 0;
};

struct PopulationEstimate {
    double p1 = 0;       // |0⟩ fraction within {|0⟩,|1⟩}   (MW2 trace)
    double p2 = 0;       // |0⟩ fraction within {|0⟩,|−1⟩}  (MW1 trace)
    double p = 0;        // combined projection result
    double stderr_ = 0;
    int clamp_events = 0;
};

// Deterministic substream addressing: every measurement cell owns an
// engine derived from (seed, key), so serial and parallel execution
// produce identical draws.
struct StreamKey {
    uint64_t purpose = 0;  // 0 benchmark, 1 conditional, 2 state grid, 3 ad hoc
    uint64_t a = 0;
    uint64_t b = 0;
};

uint64_t splitmix64(uint64_t x);
std::mt19937_64 stream_engine(uint64_t seed, const StreamKey& key);

enum class CorrelationMethod { joint, algebraic, both };

struct ExperimentContext {
    NoiseConfig noise;
    FluorescenceModel model;
    CalibrationTable cal;
    RabiSettings rabi;
    ReferenceLevels ref_mw1, ref_mw2;  // from the |0⟩ benchmark traces

    const ReferenceLevels& reference(Channel c) const {
        return c == Channel::MW1 ? ref_mw1 : ref_mw2;
    }
};

// Tr(ρ·r̂): the noiseless oracle every noisy path is tested against.
double ideal_population(const DensityOperator& state, const Ray& r);

// Drive `channel` for 24 durations spanning span_periods of a Rabi circle;
// expected counts per point are shots·dark_yield·(1 + contrast·p0(t)),
// sampled with counting statistics (exact means when noiseless).
RabiTrace simulate_rabi_trace(const DensityOperator& post_rotation_state, Channel channel,
                              const FluorescenceModel& model, const NoiseConfig& noise,
                              const CalibrationTable& cal, const RabiSettings& rabi,
                              std::mt19937_64& rng);

CountsFit fit_counts(const RabiTrace& trace, double period_us);

// Normalize the counts fit into population units via the benchmark
// reference; fraction = 1 when the subspace is empty (total < 1e-9).
TraceFit fit_trace(const RabiTrace& trace, const ReferenceLevels& reference, double period_us);

// P = P1·P2/(P1 + P2 − P1·P2); equals the total |0⟩ population when
// P1, P2 are the two subspace fractions of the same state. Both zero → 0.
double combine(double p1, double p2);

// Benchmark full-contrast Rabi trace on |0⟩; returns the fitted
// bright/dark count levels used to normalize every other fit.
ReferenceLevels measure_reference(Channel channel, const NoiseConfig& noise,
                                  const FluorescenceModel& model, const CalibrationTable& cal,
                                  const RabiSettings& rabi);

// Compile-and-apply preparation of a target ray from |0⟩, including the
// configured pulse amplitude error and depolarization.
DensityOperator prepare_state(const Ray& target, const NoiseConfig& noise);

// Full projective readout of one ray: measurement rotation, two Rabi
// traces, two fits, P1/P2 combination.
PopulationEstimate measure_projector(const ExperimentContext& ctx, const DensityOperator& prepared,
                                     const Ray& r, const StreamKey& key);

// P(r_u = 1 | r_v = 1): prepare |r_v⟩, measure r̂_u. Orthogonal pairs, so
// the true value is 0; the estimate carries shot noise.
double conditional_probability(const ExperimentContext& ctx, const Ray& measured,
                               const Ray& prepared, const StreamKey& key);

// ⟨Â_uÂ_v⟩ assembled from the joint-probability decomposition
//   P(1,1) = P(r_w=1),  P(−1,−1) = c_uv·P_v,
//   P(1,−1) = (1−c_uv)·P_v,  P(−1,1) = (1−c_vu)·P_u
// given already-measured projections and conditionals. Raw signed sum;
// callers clamp to the physical range.
double correlation_joint_from(double p_u, double p_v, double p_w, double c_uv, double c_vu);

// ⟨Â_uÂ_v⟩ = 1 − 2P_u − 2P_v (valid on edges, where r̂_u r̂_v = 0). Raw.
double correlation_algebraic_from(double p_u, double p_v);

// Correlations are expectations of ±1-outcome products; estimates that
// drift outside [−1, 1] are clamped like out-of-range populations.
double clamp_correlation(double raw, int& clamp_events);

// Standalone estimators which measure what they need (tests and ad hoc
// use; run_experiment reuses the per-state pool of 25 measurements
// instead). Throws std::invalid_argument when (u,v) is not an edge.
double correlation_joint(const ExperimentContext& ctx, const DensityOperator& prepared,
                         const std::string& u, const std::string& v, uint64_t state_tag);
double correlation_algebraic(const ExperimentContext& ctx, const DensityOperator& prepared,
                             const std::string& u, const std::string& v, uint64_t state_tag);

struct ExperimentInputs {
    NoiseConfig noise;
    FluorescenceModel model;
    CalibrationTable cal;
    RabiSettings rabi;
    std::vector<Ray> states;  // default: the 13 canonical rays
    CorrelationMethod method = CorrelationMethod::joint;
    bool cache_conditionals = true;
    int threads = 0;  // 0 → hardware concurrency
    bool keep_traces = false;
};

struct ProjectionRecord {
    std::string ray;
    PopulationEstimate estimate;
};

struct CorrelationRecord {
    std::string u, v;
    double joint = 0, algebraic = 0;  // whichever methods ran
    bool has_joint = false, has_algebraic = false;
    double value = 0;  // the one entering the inequality
};

struct ConditionalRecord {
    std::string measured, prepared;
    double value = 0;
};

struct TraceRecord {
    std::string state, ray;
    Channel channel;
    RabiTrace trace;
};

struct StateResult {
    std::string label;
    std::vector<ProjectionRecord> projections;          // 25
    std::vector<std::pair<std::string, double>> observables;  // 13 a_u
    std::vector<CorrelationRecord> correlations;        // 24
    double lhs = 0;
    double h_sum = 0;
    int clamp_events = 0;
};

struct ExperimentReport {
    ReferenceLevels ref_mw1, ref_mw2;
    std::vector<ConditionalRecord> conditionals;
    std::vector<StateResult> states;
    std::vector<TraceRecord> traces;  // only when keep_traces
    double mean_lhs = 0, min_lhs = 0, max_lhs = 0;
    double mean_h_sum = 0;
    int clamp_events = 0;
};

std::vector<Ray> default_prepared_states();

ExperimentReport run_experiment(const ExperimentInputs& inputs);

}  // namespace yuoh
