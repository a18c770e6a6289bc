#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "yuoh/rays.hpp"

// Brute-force noncontextual hidden-variable baseline: exhaustive classical
// maxima of both inequalities and Kochen-Specker colorability of the
// 13-ray graph. All arithmetic is exact (values carried in quarter units).

namespace yuoh {

// ±1 outcome per ray, canonical ray order.
struct Assignment {
    std::array<int8_t, 13> values{};

    static Assignment from_bits(unsigned bits);  // bit k set → ray k = −1
};

// 0/1 ray coloring, canonical ray order.
struct KSAssignment {
    std::array<uint8_t, 13> values{};
};

// Σ_u a_u − ¼ Σ_(u,v) a_u a_v with the pair sum over ordered compatible
// pairs (each edge twice), in exact quarter units: the returned integer
// is 4× the inequality value.
int classical_value_quarters(const Assignment& a, const OrthogonalityGraph& g);

inline double classical_value(const Assignment& a) {
    return classical_value_quarters(a, canonical_graph()) / 4.0;
}

struct ClassicalMax {
    double value = 0.0;
    int quarters = 0;
    Assignment witness;
};

// Exhaustive maximum over all 2^13 assignments; lowest-index witness on
// ties. The graph argument lets tests run relabeled graphs.
ClassicalMax classical_max(const OrthogonalityGraph& g);
inline ClassicalMax classical_max() { return classical_max(canonical_graph()); }

inline constexpr int kClassicalBound = 8;

// The four complete orthogonal triads inside the 13 rays:
// {z1,z2,z3} and {z_k, y_k+, y_k−} for k = 1,2,3 (index triples).
const std::vector<std::array<int, 3>>& complete_triads();

// All 0/1 assignments with no edge both-1 (exclusivity) and exactly one 1
// per complete triad (completeness). Non-empty: the 13-ray graph is
// KS-colorable.
std::vector<KSAssignment> ks_admissible_assignments();

// Independent re-check of the two constraint families.
bool ks_admissible(const KSAssignment& a);

struct HBound {
    int max = 0;  // over admissible assignments, Σ over the four h rays
    int min = 0;
};

HBound h_classical_bounds();
inline int h_classical_max() { return h_classical_bounds().max; }

inline constexpr int kHClassicalBound = 1;

}  // namespace yuoh
