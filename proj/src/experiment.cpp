#include "yuoh/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace yuoh {

namespace {

constexpr double kEmptySubspace = 1e-9;

// Inverse of a symmetric 3×3 via cofactors; returns false when singular.
bool invert_sym3(const double m[3][3], double inv[3][3]) {
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    const double scale = std::abs(m[0][0]) + std::abs(m[1][1]) + std::abs(m[2][2]);
    if (std::abs(det) < 1e-12 * std::max(1.0, scale * scale * scale)) return false;
    inv[0][0] = c00 / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = c01 / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = c02 / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return true;
}

double sample_counts(double mean, std::mt19937_64& rng) {
    if (mean <= 0.0) return 0.0;
    if (mean < 1000.0) {
        std::poisson_distribution<long long> poisson(mean);
        return static_cast<double>(poisson(rng));
    }
    // Counting statistics in the large-mean regime.
    std::normal_distribution<double> normal(mean, std::sqrt(mean));
    return std::max(0.0, std::round(normal(rng)));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::mt19937_64 stream_engine(uint64_t seed, const StreamKey& key) {
    const uint64_t h =
        splitmix64(seed ^ splitmix64(key.purpose ^ splitmix64(key.a ^ splitmix64(key.b))));
    return std::mt19937_64(h);
}

double ideal_population(const DensityOperator& state, const Ray& r) {
    return expectation(outer(r.vector, r.vector), state);
}

RabiTrace simulate_rabi_trace(const DensityOperator& post_rotation_state, Channel channel,
                              const FluorescenceModel& model, const NoiseConfig& noise,
                              const CalibrationTable& cal, const RabiSettings& rabi,
                              std::mt19937_64& rng) {
    const double period = cal.period(channel);
    RabiTrace trace;
    trace.channel = channel;
    trace.shots = noise.shots;
    trace.durations.reserve(RabiSettings::kPoints);
    trace.counts.reserve(RabiSettings::kPoints);

    const double base = static_cast<double>(noise.shots) * model.dark_yield;
    for (int i = 0; i < RabiSettings::kPoints; ++i) {
        const double t = rabi.span_periods * period * i / RabiSettings::kPoints;
        const double theta = 2.0 * M_PI * t / period;
        const auto u = embedded_rotation(channel, theta, 0.0);
        const Mat3 evolved = u.matrix() * post_rotation_state.matrix() * adjoint(u.matrix());
        const double p0 = std::clamp(std::real(evolved(0, 0)), 0.0, 1.0);
        const double mean = base * (1.0 + model.contrast * p0);
        trace.durations.push_back(t);
        trace.counts.push_back(noise.noiseless ? mean : sample_counts(mean, rng));
    }
    return trace;
}

CountsFit fit_counts(const RabiTrace& trace, double period_us) {
    const std::size_t n = trace.counts.size();
    double xtx[3][3] = {};
    double xty[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * trace.durations[i] / period_us;
        const double row[3] = {1.0, std::cos(theta), std::sin(theta)};
        for (int r = 0; r < 3; ++r) {
            xty[r] += row[r] * trace.counts[i];
            for (int c = 0; c < 3; ++c) xtx[r][c] += row[r] * row[c];
        }
    }

    CountsFit fit;
    double inv[3][3];
    if (!invert_sym3(xtx, inv)) {
        fit.degenerate = true;
        fit.c0 = std::accumulate(trace.counts.begin(), trace.counts.end(), 0.0) /
                 std::max<std::size_t>(1, n);
        return fit;
    }
    for (int r = 0; r < 3; ++r) {
        double beta = 0.0;
        for (int c = 0; c < 3; ++c) beta += inv[r][c] * xty[c];
        (r == 0 ? fit.c0 : r == 1 ? fit.a : fit.b) = beta;
    }

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * trace.durations[i] / period_us;
        const double model = fit.c0 + fit.a * std::cos(theta) + fit.b * std::sin(theta);
        rss += (trace.counts[i] - model) * (trace.counts[i] - model);
    }
    const double s2 = n > 3 ? rss / static_cast<double>(n - 3) : 0.0;
    fit.var_c0 = s2 * inv[0][0];
    fit.var_a = s2 * inv[1][1];
    fit.cov_c0_a = s2 * inv[0][1];
    return fit;
}

TraceFit fit_trace(const RabiTrace& trace, const ReferenceLevels& reference, double period_us) {
    const CountsFit fit = fit_counts(trace, period_us);
    const double span = reference.bright - reference.dark;
    if (span <= 0.0) throw std::invalid_argument("fit_trace: invalid reference levels");

    TraceFit out;
    out.p0_at_zero = (fit.c0 + fit.a - reference.dark) / span;
    out.subspace_total = 2.0 * (fit.c0 - reference.dark) / span;

    if (fit.degenerate || out.subspace_total < kEmptySubspace) {
        out.fraction = 1.0;  // empty-subspace convention
        out.fraction_stderr = 0.0;
        return out;
    }

    const double raw = out.p0_at_zero / out.subspace_total;
    out.fraction = std::clamp(raw, 0.0, 1.0);
    if (raw < -kAlgebraTol || raw > 1.0 + kAlgebraTol) out.clamp_events = 1;

    // Delta method on f = (c0 + a) / (2 c0), in count units.
    const double num = fit.c0 + fit.a;
    const double den = 2.0 * fit.c0 - 2.0 * reference.dark;
    const double dnum = std::sqrt(std::max(0.0, fit.var_c0 + fit.var_a + 2.0 * fit.cov_c0_a));
    const double dden = 2.0 * std::sqrt(std::max(0.0, fit.var_c0));
    const double num_pop = num - reference.dark;
    if (std::abs(den) > 0.0) {
        const double rel2 = (dnum * dnum) / std::max(1e-30, num_pop * num_pop) +
                            (dden * dden) / (den * den);
        out.fraction_stderr = std::abs(raw) * std::sqrt(rel2);
    }
    return out;
}

double combine(double p1, double p2) {
    if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0)
        throw std::invalid_argument("combine: fractions outside [0,1]");
    const double denom = p1 + p2 - p1 * p2;
    if (denom < 1e-12) return 0.0;
    return p1 * p2 / denom;
}

ReferenceLevels measure_reference(Channel channel, const NoiseConfig& noise,
                                  const FluorescenceModel& model, const CalibrationTable& cal,
                                  const RabiSettings& rabi) {
    // The benchmark is a dedicated calibration sweep integrated far longer
    // than any single measurement point; its uncertainty must sit well
    // below per-point shot noise or it leaks into every fit in the run as
    // a correlated scale error.
    NoiseConfig bench_noise = noise;
    bench_noise.shots = noise.shots * kBenchmarkIntegration;
    auto rng = stream_engine(noise.seed, StreamKey{0, channel == Channel::MW1 ? 1u : 2u, 0});
    const auto bench = simulate_rabi_trace(DensityOperator::pure(StateVector::basis(0)), channel,
                                           model, bench_noise, cal, rabi, rng);
    const CountsFit fit = fit_counts(bench, cal.period(channel));
    // |0⟩ oscillates full contrast: p0(θ) = (1+cosθ)/2, so the fitted
    // extrema are the bright/dark landmarks. Rescale to the run's
    // per-point count units.
    const double amplitude = std::hypot(fit.a, fit.b);
    const double k = static_cast<double>(kBenchmarkIntegration);
    return ReferenceLevels{(fit.c0 + amplitude) / k, (fit.c0 - amplitude) / k};
}

DensityOperator prepare_state(const Ray& target, const NoiseConfig& noise) {
    const auto prep = compile_preparation(target);
    const auto u = sequence_unitary(prep, noise.pulse_amp_error);
    const auto pure = DensityOperator::pure(StateVector::basis(0)).evolved(u);
    return depolarize(pure, noise.depolarizing_p);
}

PopulationEstimate measure_projector(const ExperimentContext& ctx, const DensityOperator& prepared,
                                     const Ray& r, const StreamKey& key) {
    const auto meas = compile_measurement(r);
    const auto u = sequence_unitary(meas, ctx.noise.pulse_amp_error);
    const DensityOperator rotated = prepared.evolved(u);

    auto rng = stream_engine(ctx.noise.seed, key);
    const auto trace1 = simulate_rabi_trace(rotated, Channel::MW1, ctx.model, ctx.noise, ctx.cal,
                                            ctx.rabi, rng);
    const auto trace2 = simulate_rabi_trace(rotated, Channel::MW2, ctx.model, ctx.noise, ctx.cal,
                                            ctx.rabi, rng);
    const TraceFit f1 = fit_trace(trace1, ctx.ref_mw1, ctx.cal.rabi_period_mw1);
    const TraceFit f2 = fit_trace(trace2, ctx.ref_mw2, ctx.cal.rabi_period_mw2);

    PopulationEstimate est;
    est.p2 = f1.fraction;  // MW1 drives {|0⟩,|−1⟩}
    est.p1 = f2.fraction;  // MW2 drives {|0⟩,|+1⟩}
    est.p = combine(est.p1, est.p2);
    est.clamp_events = f1.clamp_events + f2.clamp_events;

    const double denom = est.p1 + est.p2 - est.p1 * est.p2;
    if (denom > 1e-12) {
        const double dp1 = (est.p2 * est.p2) / (denom * denom);
        const double dp2 = (est.p1 * est.p1) / (denom * denom);
        est.stderr_ = std::hypot(dp1 * f2.fraction_stderr, dp2 * f1.fraction_stderr);
    }
    return est;
}

double conditional_probability(const ExperimentContext& ctx, const Ray& measured,
                               const Ray& prepared, const StreamKey& key) {
    const DensityOperator rho = prepare_state(prepared, ctx.noise);
    return measure_projector(ctx, rho, measured, key).p;
}

double correlation_joint_from(double p_u, double p_v, double p_w, double c_uv, double c_vu) {
    const double p_pp = p_w;
    const double p_mm = c_uv * p_v;
    const double p_pm = (1.0 - c_uv) * p_v;
    const double p_mp = (1.0 - c_vu) * p_u;
    return p_pp + p_mm - p_pm - p_mp;
}

double correlation_algebraic_from(double p_u, double p_v) { return 1.0 - 2.0 * p_u - 2.0 * p_v; }

double clamp_correlation(double raw, int& clamp_events) {
    if (raw < -1.0 - kAlgebraTol || raw > 1.0 + kAlgebraTol) ++clamp_events;
    return std::clamp(raw, -1.0, 1.0);
}

namespace {

std::pair<int, int> require_edge(const std::string& u, const std::string& v) {
    const int iu = ray_index(u);
    const int iv = ray_index(v);
    for (const auto& [i, j] : canonical_graph().edges)
        if ((i == iu && j == iv) || (i == iv && j == iu)) return {iu, iv};
    throw std::invalid_argument("not a compatible pair: (" + u + ", " + v + ")");
}

}  // namespace

double correlation_joint(const ExperimentContext& ctx, const DensityOperator& prepared,
                         const std::string& u, const std::string& v, uint64_t state_tag) {
    const auto [iu, iv] = require_edge(u, v);
    const Ray& ru = canonical_rays()[iu];
    const Ray& rv = canonical_rays()[iv];
    const Ray rw = complete_basis(ru, rv);

    const double p_u = measure_projector(ctx, prepared, ru, {3, state_tag, uint64_t(iu)}).p;
    const double p_v = measure_projector(ctx, prepared, rv, {3, state_tag, uint64_t(iv)}).p;
    const double p_w = measure_projector(ctx, prepared, rw, {3, state_tag, 100 + uint64_t(iu) * 13 + iv}).p;
    const double c_uv = conditional_probability(ctx, ru, rv, {1, uint64_t(iu) * 13 + iv, state_tag + 1});
    const double c_vu = conditional_probability(ctx, rv, ru, {1, uint64_t(iv) * 13 + iu, state_tag + 1});
    int clamps = 0;
    return clamp_correlation(correlation_joint_from(p_u, p_v, p_w, c_uv, c_vu), clamps);
}

double correlation_algebraic(const ExperimentContext& ctx, const DensityOperator& prepared,
                             const std::string& u, const std::string& v, uint64_t state_tag) {
    const auto [iu, iv] = require_edge(u, v);
    const Ray& ru = canonical_rays()[iu];
    const Ray& rv = canonical_rays()[iv];
    const double p_u = measure_projector(ctx, prepared, ru, {3, state_tag, uint64_t(iu)}).p;
    const double p_v = measure_projector(ctx, prepared, rv, {3, state_tag, uint64_t(iv)}).p;
    int clamps = 0;
    return clamp_correlation(correlation_algebraic_from(p_u, p_v), clamps);
}

std::vector<Ray> default_prepared_states() { return canonical_rays(); }

ExperimentReport run_experiment(const ExperimentInputs& inputs) {
    ExperimentContext ctx;
    ctx.noise = inputs.noise;
    ctx.model = inputs.model;
    ctx.cal = inputs.cal;
    ctx.rabi = inputs.rabi;
    ctx.ref_mw1 = measure_reference(Channel::MW1, ctx.noise, ctx.model, ctx.cal, ctx.rabi);
    ctx.ref_mw2 = measure_reference(Channel::MW2, ctx.noise, ctx.model, ctx.cal, ctx.rabi);

    const std::vector<Ray> states = inputs.states.empty() ? default_prepared_states() : inputs.states;
    const auto& rays13 = canonical_rays();
    const auto& graph = canonical_graph();
    const auto& all_rays = measurement_ray_set();
    const bool want_joint = inputs.method != CorrelationMethod::algebraic;
    const bool want_algebraic = inputs.method != CorrelationMethod::joint;

    ExperimentReport report;
    report.ref_mw1 = ctx.ref_mw1;
    report.ref_mw2 = ctx.ref_mw2;

    // Completion ray per edge, resolved in the 25-ray set.
    std::vector<const Ray*> edge_completion(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const Ray w = complete_basis(rays13[graph.edges[e].first], rays13[graph.edges[e].second]);
        edge_completion[e] = nullptr;
        for (const auto& cand : all_rays)
            if (same_ray(cand, w)) {
                edge_completion[e] = &cand;
                break;
            }
        if (!edge_completion[e]) throw std::runtime_error("run_experiment: completion missing from 25-ray set");
    }

    // Shared conditionals, one pair per edge (the cached variant).
    std::vector<std::array<double, 2>> shared_cond(graph.edges.size(), {0.0, 0.0});
    if (want_joint && inputs.cache_conditionals) {
        parallel_for(graph.edges.size() * 2, inputs.threads, [&](std::size_t cell) {
            const std::size_t e = cell / 2;
            const int dir = static_cast<int>(cell % 2);
            const auto& [i, j] = graph.edges[e];
            const Ray& ru = rays13[dir == 0 ? i : j];  // measured
            const Ray& rv = rays13[dir == 0 ? j : i];  // prepared
            shared_cond[e][dir] = conditional_probability(
                ctx, ru, rv, StreamKey{1, uint64_t(e) * 2 + uint64_t(dir), 0});
        });
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            const auto& [i, j] = graph.edges[e];
            report.conditionals.push_back({rays13[i].label, rays13[j].label, shared_cond[e][0]});
            report.conditionals.push_back({rays13[j].label, rays13[i].label, shared_cond[e][1]});
        }
    }

    report.states.resize(states.size());
    std::vector<std::vector<TraceRecord>> trace_buckets(states.size());

    parallel_for(states.size(), inputs.threads, [&](std::size_t si) {
        StateResult& res = report.states[si];
        res.label = states[si].label;
        const DensityOperator rho = prepare_state(states[si], ctx.noise);

        // Pool of 25 projections; observables, correlations and h-sums all
        // draw from this pool.
        std::vector<double> pool(all_rays.size());
        for (std::size_t rj = 0; rj < all_rays.size(); ++rj) {
            StreamKey key{2, uint64_t(si), uint64_t(rj)};
            PopulationEstimate est;
            if (inputs.keep_traces) {
                // Re-run with trace capture, identical draws.
                const auto meas = compile_measurement(all_rays[rj]);
                const auto u = sequence_unitary(meas, ctx.noise.pulse_amp_error);
                const DensityOperator rotated = rho.evolved(u);
                auto rng = stream_engine(ctx.noise.seed, key);
                auto t1 = simulate_rabi_trace(rotated, Channel::MW1, ctx.model, ctx.noise, ctx.cal,
                                              ctx.rabi, rng);
                auto t2 = simulate_rabi_trace(rotated, Channel::MW2, ctx.model, ctx.noise, ctx.cal,
                                              ctx.rabi, rng);
                trace_buckets[si].push_back({res.label, all_rays[rj].label, Channel::MW1, t1});
                trace_buckets[si].push_back({res.label, all_rays[rj].label, Channel::MW2, t2});
            }
            est = measure_projector(ctx, rho, all_rays[rj], key);
            pool[rj] = est.p;
            res.projections.push_back({all_rays[rj].label, est});
            res.clamp_events += est.clamp_events;
        }

        double a_sum = 0.0;
        for (int k = 0; k < 13; ++k) {
            const double a = 1.0 - 2.0 * pool[k];
            res.observables.emplace_back(rays13[k].label, a);
            a_sum += a;
        }

        double corr_sum = 0.0;
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            const auto& [i, j] = graph.edges[e];
            CorrelationRecord rec;
            rec.u = rays13[i].label;
            rec.v = rays13[j].label;

            std::size_t wi = 0;
            for (; wi < all_rays.size(); ++wi)
                if (&all_rays[wi] == edge_completion[e]) break;

            if (want_joint) {
                double c_uv = shared_cond[e][0];
                double c_vu = shared_cond[e][1];
                if (!inputs.cache_conditionals) {
                    c_uv = conditional_probability(ctx, rays13[i], rays13[j],
                                                   StreamKey{1, uint64_t(e) * 2, uint64_t(si) + 1});
                    c_vu = conditional_probability(ctx, rays13[j], rays13[i],
                                                   StreamKey{1, uint64_t(e) * 2 + 1, uint64_t(si) + 1});
                }
                rec.joint = clamp_correlation(
                    correlation_joint_from(pool[i], pool[j], pool[wi], c_uv, c_vu),
                    res.clamp_events);
                rec.has_joint = true;
            }
            if (want_algebraic) {
                rec.algebraic = clamp_correlation(correlation_algebraic_from(pool[i], pool[j]),
                                                  res.clamp_events);
                rec.has_algebraic = true;
            }
            rec.value = want_joint ? rec.joint : rec.algebraic;
            corr_sum += rec.value;
            res.correlations.push_back(rec);
        }

        // Ordered-pair sum: each edge enters Eq. (1)'s ¼-weighted sum twice.
        res.lhs = a_sum - 0.5 * corr_sum;
        res.h_sum = pool[ray_index("h0")] + pool[ray_index("h1")] + pool[ray_index("h2")] +
                    pool[ray_index("h3")];
    });

    for (auto& bucket : trace_buckets)
        for (auto& t : bucket) report.traces.push_back(std::move(t));

    report.min_lhs = report.states.empty() ? 0.0 : report.states.front().lhs;
    report.max_lhs = report.min_lhs;
    double lhs_sum = 0.0, h_sum = 0.0;
    for (const auto& s : report.states) {
        lhs_sum += s.lhs;
        h_sum += s.h_sum;
        report.min_lhs = std::min(report.min_lhs, s.lhs);
        report.max_lhs = std::max(report.max_lhs, s.lhs);
        report.clamp_events += s.clamp_events;
    }
    if (!report.states.empty()) {
        report.mean_lhs = lhs_sum / static_cast<double>(report.states.size());
        report.mean_h_sum = h_sum / static_cast<double>(report.states.size());
    }
    return report;
}

}  // namespace yuoh
