#include "yuoh/rays.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace yuoh {

namespace {

Ray make_ray(std::string label, double a, double b, double c) {
    Vec3 v{{cplx(a), cplx(b), cplx(c)}};
    const double n = norm(v);
    for (auto& e : v.v) e /= n;
    return Ray{std::move(label), v};
}

}  // namespace

bool same_ray(const Ray& a, const Ray& b, double tol) {
    return 1.0 - std::abs(dot(a.vector, b.vector)) <= tol;
}

int OrthogonalityGraph::degree(int vertex) const {
    int d = 0;
    for (const auto& [i, j] : edges)
        if (i == vertex || j == vertex) ++d;
    return d;
}

const std::vector<Ray>& canonical_rays() {
    static const std::vector<Ray> rays = {
        make_ray("z1", 1, 0, 0),
        make_ray("z2", 0, 1, 0),
        make_ray("z3", 0, 0, 1),
        make_ray("y1+", 0, 1, 1),
        make_ray("y1-", 0, 1, -1),
        make_ray("y2+", 1, 0, 1),
        make_ray("y2-", 1, 0, -1),
        make_ray("y3+", 1, 1, 0),
        make_ray("y3-", 1, -1, 0),
        make_ray("h0", 1, 1, 1),
        make_ray("h1", -1, 1, 1),
        make_ray("h2", 1, -1, 1),
        make_ray("h3", 1, 1, -1),
    };
    return rays;
}

int ray_index(const std::string& label) {
    const auto& rays = canonical_rays();
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i].label == label) return static_cast<int>(i);
    return -1;
}

OrthogonalityGraph build_graph(const std::vector<Ray>& rays) {
    OrthogonalityGraph g;
    for (const auto& r : rays) g.vertices.push_back(r.label);
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (std::abs(dot(rays[i].vector, rays[j].vector)) < kOrthoTol)
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    if (rays.size() == 13 && g.edges.size() != 24)
        throw std::runtime_error("build_graph: 13-ray table does not yield 24 edges");
    return g;
}

const OrthogonalityGraph& canonical_graph() {
    static const OrthogonalityGraph g = build_graph(canonical_rays());
    return g;
}

Ray complete_basis(const Ray& u, const Ray& v) {
    if (std::abs(dot(u.vector, v.vector)) > kOrthoTol)
        throw std::invalid_argument("complete_basis: rays not orthogonal");

    const Vec3& a = u.vector;
    const Vec3& b = v.vector;
    Vec3 w{{std::conj(a[1] * b[2] - a[2] * b[1]),
            std::conj(a[2] * b[0] - a[0] * b[2]),
            std::conj(a[0] * b[1] - a[1] * b[0])}};
    const double n = norm(w);
    for (auto& e : w.v) e /= n;

    // Phase gauge: last nonzero component real positive.
    for (int i = 2; i >= 0; --i) {
        const double mag = std::abs(w[i]);
        if (mag > 1e-12) {
            const cplx phase = std::conj(w[i]) / mag;
            for (auto& e : w.v) e *= phase;
            break;
        }
    }
    return Ray{"w(" + u.label + "," + v.label + ")", w};
}

const std::vector<Ray>& measurement_ray_set() {
    static const std::vector<Ray> set = [] {
        std::vector<Ray> out = canonical_rays();
        const auto& g = canonical_graph();
        for (const auto& [i, j] : g.edges) {
            Ray w = complete_basis(out[i], out[j]);
            const bool known = std::any_of(out.begin(), out.end(),
                                           [&](const Ray& r) { return same_ray(r, w); });
            if (known) continue;
            // Every new completion comes from an (h_j, y_k^σ) edge; name it
            // x<k>^<j> after the pair that generated it. Index order puts
            // the y-ray first on these edges.
            const std::string& yu = canonical_rays()[i].label;
            const std::string& hv = canonical_rays()[j].label;
            if (yu[0] != 'y' || hv[0] != 'h')
                throw std::runtime_error("measurement_ray_set: unexpected completion edge");
            w.label = std::string("x") + yu[1] + "^" + hv[1];
            out.push_back(std::move(w));
        }
        if (out.size() != 25)
            throw std::runtime_error("measurement_ray_set: expected 25 rays");
        return out;
    }();
    return set;
}

const Ray& find_ray(const std::string& label) {
    for (const auto& r : measurement_ray_set())
        if (r.label == label) return r;
    throw std::invalid_argument("unknown ray label: " + label);
}

Mat3 observable_of(const Ray& r) {
    return Mat3::identity() - 2.0 * outer(r.vector, r.vector);
}

Mat3 inequality_operator() {
    const auto& rays = canonical_rays();
    const auto& g = canonical_graph();

    Mat3 m = Mat3::zero();
    for (const auto& r : rays) m = m + observable_of(r);

    for (const auto& [i, j] : g.edges) {
        const Mat3 au = observable_of(rays[i]);
        const Mat3 av = observable_of(rays[j]);
        if (max_abs(au * av - av * au) > kAlgebraTol)
            throw std::runtime_error("inequality_operator: edge observables do not commute");
        // Ordered pair sum: (u,v) and (v,u) both contribute, so each edge
        // enters with weight 2·¼ = ½ of its symmetrized product.
        const Mat3 sym = 0.5 * (au * av + av * au);
        m = m - 0.5 * sym;
    }
    return m;
}

Mat3 h_sum_operator() {
    Mat3 m = Mat3::zero();
    for (const auto& r : canonical_rays())
        if (r.label[0] == 'h') m = m + outer(r.vector, r.vector);
    return m;
}

}  // namespace yuoh
