#include "yuoh/verify.hpp"

#include <cmath>
#include <sstream>

#include "yuoh/nchv.hpp"
#include "yuoh/random.hpp"

namespace yuoh {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// Edge count without build_graph's throwing 24-edge guard, so a corrupted
// table shows up as a failed check rather than an exception.
int count_orthogonal_pairs(const std::vector<Ray>& rays) {
    int n = 0;
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (std::abs(dot(rays[i].vector, rays[j].vector)) < kOrthoTol) ++n;
    return n;
}

}  // namespace

std::vector<CheckResult> run_verification(const std::vector<Ray>& rays) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, std::string expected, std::string got, bool pass) {
        out.push_back({std::move(name), std::move(expected), std::move(got), pass});
    };

    add("ray_count", "13", std::to_string(rays.size()), rays.size() == 13);

    const int edges = count_orthogonal_pairs(rays);
    add("edge_count", "24", std::to_string(edges), edges == 24);

    const bool canonical = edges == 24 && rays.size() == 13;
    if (!canonical) {
        add("aborted", "consistent ray table", "corrupted ray table", false);
        return out;
    }

    const OrthogonalityGraph g = build_graph(rays);

    double max_commutator = 0.0;
    double max_completion_dev = 0.0;
    for (const auto& [i, j] : g.edges) {
        const Mat3 au = observable_of(rays[i]);
        const Mat3 av = observable_of(rays[j]);
        max_commutator = std::max(max_commutator, max_abs(au * av - av * au));
        const Ray w = complete_basis(rays[i], rays[j]);
        const Mat3 resolution = outer(rays[i].vector, rays[i].vector) +
                                outer(rays[j].vector, rays[j].vector) +
                                outer(w.vector, w.vector) - Mat3::identity();
        max_completion_dev = std::max(max_completion_dev, max_abs(resolution));
    }
    add("edge_commutators_max", "< 1e-12", fmt(max_commutator), max_commutator < kAlgebraTol);
    add("completion_identity_max_dev", "< 1e-12", fmt(max_completion_dev),
        max_completion_dev < kAlgebraTol);

    const Mat3 m = inequality_operator();
    const double m_dev = max_abs(m - kQuantumValue * Mat3::identity());
    add("inequality_operator_dev_from_25/3_I", "< 1e-12", fmt(m_dev), m_dev < kAlgebraTol);

    const Mat3 h = h_sum_operator();
    const double h_dev = max_abs(h - kQuantumHValue * Mat3::identity());
    add("h_sum_operator_dev_from_4/3_I", "< 1e-12", fmt(h_dev), h_dev < kAlgebraTol);

    auto rng = std::mt19937_64(12345);
    double max_state_dev = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double val = expectation(m, random_density(rng));
        max_state_dev = std::max(max_state_dev, std::abs(val - kQuantumValue));
    }
    add("random_state_expectation_dev", "< 1e-6", fmt(max_state_dev), max_state_dev < 1e-6);

    const auto cmax = classical_max(g);
    add("classical_max", "8", fmt(cmax.value), cmax.quarters == 4 * kClassicalBound);
    add("classical_max_witness_recheck", fmt(cmax.value),
        fmt(classical_value_quarters(cmax.witness, g) / 4.0),
        classical_value_quarters(cmax.witness, g) == cmax.quarters);

    const auto ks = ks_admissible_assignments();
    add("ks_admissible_count", ">= 1", std::to_string(ks.size()), !ks.empty());

    const auto hb = h_classical_bounds();
    add("h_classical_max", "1", std::to_string(hb.max), hb.max == kHClassicalBound);

    const auto& mset = measurement_ray_set();
    add("measurement_ray_set_size", "25", std::to_string(mset.size()), mset.size() == 25);

    bool completions_present = true;
    for (const auto& [i, j] : g.edges) {
        const Ray w = complete_basis(rays[i], rays[j]);
        bool found = false;
        for (const auto& r : mset)
            if (same_ray(r, w)) found = true;
        completions_present = completions_present && found;
    }
    add("edge_completions_in_set", "true", completions_present ? "true" : "false",
        completions_present);

    return out;
}

std::vector<CheckResult> run_verification() { return run_verification(canonical_rays()); }

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace yuoh
