#pragma once

#include <string>
#include <utility>
#include <vector>

#include "yuoh/qutrit.hpp"

// The 13-ray qutrit measurement set, its 24-edge compatibility graph,
// the complementary basis-completion rays, and the operator identities
// behind the state-independent inequality.

namespace yuoh {

// Rays orthogonal within this tolerance form an edge (the canonical
// vectors are exact rationals over √2/√3/√6, so this is generous).
inline constexpr double kOrthoTol = 1e-10;

struct Ray {
    std::string label;
    Vec3 vector;  // unit; canonical table keeps the conventional printed forms

    StateVector state() const { return StateVector(vector); }
};

// Projectors equal ⟺ same ray up to global phase.
bool same_ray(const Ray& a, const Ray& b, double tol = 1e-9);

struct OrthogonalityGraph {
    std::vector<std::string> vertices;          // 13 ray labels, canonical order
    std::vector<std::pair<int, int>> edges;     // index pairs, i < j, lexicographic

    int degree(int vertex) const;
};

// The 13 rays in canonical order:
//   z1 z2 z3  y1+ y1- y2+ y2- y3+ y3-  h0 h1 h2 h3
// with the conventional component forms, e.g. h1 = (−1,1,1)/√3.
const std::vector<Ray>& canonical_rays();

int ray_index(const std::string& label);  // −1 when not one of the 13

// All orthogonal pairs among the given rays; throws std::runtime_error
// when the count differs from 24 for a 13-ray input (corrupt table).
OrthogonalityGraph build_graph(const std::vector<Ray>& rays);

const OrthogonalityGraph& canonical_graph();

// Third basis ray orthogonal to both via the conjugated cross product,
// phase-fixed so its last nonzero component is real positive.
// Throws std::invalid_argument when the inputs are not orthogonal.
Ray complete_basis(const Ray& u, const Ray& v);

// The 13 canonical rays plus the 12 distinct h-edge completions
// (labels x1^0 .. x3^3); exactly 25 rays.
const std::vector<Ray>& measurement_ray_set();

const Ray& find_ray(const std::string& label);  // searches the 25-ray set

// Â = I − 2|r⟩⟨r|; eigenvalues {−1, +1, +1}.
Mat3 observable_of(const Ray& r);

// M = Σ_u Â_u − ¼ Σ_(u,v) ½(Â_uÂ_v + Â_vÂ_u), the pair sum running over
// ordered compatible pairs (each edge twice). Equals (25/3)·I; asserts
// edge observables commute within kAlgebraTol.
Mat3 inequality_operator();

inline constexpr double kQuantumValue = 25.0 / 3.0;

// Σ_k ĥ_k over the four h rays; equals (4/3)·I.
Mat3 h_sum_operator();

inline constexpr double kQuantumHValue = 4.0 / 3.0;

}  // namespace yuoh
