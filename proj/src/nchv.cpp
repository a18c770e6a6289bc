#include "yuoh/nchv.hpp"

#include <stdexcept>

namespace yuoh {

Assignment Assignment::from_bits(unsigned bits) {
    Assignment a;
    for (int k = 0; k < 13; ++k) a.values[k] = (bits >> k) & 1u ? -1 : +1;
    return a;
}

int classical_value_quarters(const Assignment& a, const OrthogonalityGraph& g) {
    int linear = 0;
    for (int8_t v : a.values) linear += v;
    int corr = 0;
    for (const auto& [i, j] : g.edges) corr += a.values[i] * a.values[j];
    // 4·(Σa − ¼·2·Σ_edges a_i a_j)
    return 4 * linear - 2 * corr;
}

ClassicalMax classical_max(const OrthogonalityGraph& g) {
    ClassicalMax best;
    best.quarters = INT32_MIN;
    for (unsigned bits = 0; bits < (1u << 13); ++bits) {
        const Assignment a = Assignment::from_bits(bits);
        const int q = classical_value_quarters(a, g);
        if (q > best.quarters) {
            best.quarters = q;
            best.witness = a;
        }
    }
    best.value = best.quarters / 4.0;
    return best;
}

const std::vector<std::array<int, 3>>& complete_triads() {
    static const std::vector<std::array<int, 3>> triads = [] {
        std::vector<std::array<int, 3>> out;
        const auto& rays = canonical_rays();
        const Mat3 eye = Mat3::identity();
        for (int i = 0; i < 13; ++i)
            for (int j = i + 1; j < 13; ++j)
                for (int k = j + 1; k < 13; ++k) {
                    const Mat3 sum = outer(rays[i].vector, rays[i].vector) +
                                     outer(rays[j].vector, rays[j].vector) +
                                     outer(rays[k].vector, rays[k].vector);
                    if (max_abs(sum - eye) <= kAlgebraTol) out.push_back({i, j, k});
                }
        if (out.size() != 4) throw std::runtime_error("complete_triads: expected 4 triads");
        return out;
    }();
    return triads;
}

bool ks_admissible(const KSAssignment& a) {
    for (const auto& [i, j] : canonical_graph().edges)
        if (a.values[i] == 1 && a.values[j] == 1) return false;
    for (const auto& t : complete_triads()) {
        const int ones = a.values[t[0]] + a.values[t[1]] + a.values[t[2]];
        if (ones != 1) return false;
    }
    return true;
}

std::vector<KSAssignment> ks_admissible_assignments() {
    std::vector<KSAssignment> out;
    for (unsigned bits = 0; bits < (1u << 13); ++bits) {
        KSAssignment a;
        for (int k = 0; k < 13; ++k) a.values[k] = (bits >> k) & 1u;
        if (ks_admissible(a)) out.push_back(a);
    }
    if (out.empty()) throw std::runtime_error("ks_admissible_assignments: constraint bug, empty set");
    return out;
}

HBound h_classical_bounds() {
    HBound b{0, 4};
    const int h_first = ray_index("h0");
    for (const auto& a : ks_admissible_assignments()) {
        int s = 0;
        for (int k = 0; k < 4; ++k) s += a.values[h_first + k];
        b.max = std::max(b.max, s);
        b.min = std::min(b.min, s);
    }
    return b;
}

}  // namespace yuoh
