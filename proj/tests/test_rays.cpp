#include <doctest.h>

#include <algorithm>
#include <set>

#include "yuoh/random.hpp"
#include "yuoh/rays.hpp"

using namespace yuoh;

namespace {

const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);
const double kS6 = std::sqrt(6.0);

bool has_edge(const OrthogonalityGraph& g, const std::string& a, const std::string& b) {
    const int i = ray_index(a), j = ray_index(b);
    return std::any_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
        return (e.first == i && e.second == j) || (e.first == j && e.second == i);
    });
}

Vec3 v3(double a, double b, double c) { return Vec3{{cplx(a), cplx(b), cplx(c)}}; }

}  // namespace

TEST_CASE("canonical table keeps the conventional printed forms") {
    const auto& rays = canonical_rays();
    REQUIRE(rays.size() == 13);

    auto check_form = [&](const char* label, const Vec3& expect) {
        const Ray& r = rays[ray_index(label)];
        for (int i = 0; i < 3; ++i) CHECK(std::abs(r.vector[i] - expect[i]) < 1e-15);
    };
    check_form("z1", v3(1, 0, 0));
    check_form("z2", v3(0, 1, 0));
    check_form("z3", v3(0, 0, 1));
    check_form("y1-", v3(0, 1 / kS2, -1 / kS2));
    check_form("y3+", v3(1 / kS2, 1 / kS2, 0));
    check_form("y3-", v3(1 / kS2, -1 / kS2, 0));
    check_form("h0", v3(1 / kS3, 1 / kS3, 1 / kS3));
    check_form("h1", v3(-1 / kS3, 1 / kS3, 1 / kS3));
    check_form("h2", v3(1 / kS3, -1 / kS3, 1 / kS3));
    check_form("h3", v3(1 / kS3, 1 / kS3, -1 / kS3));

    for (const auto& r : rays) CHECK(std::abs(norm(r.vector) - 1.0) < 1e-15);

    // the Fig. 3 anchor: |⟨h1|y3-⟩|² = 2/3
    const cplx ov = dot(rays[ray_index("h1")].vector, rays[ray_index("y3-")].vector);
    CHECK(std::norm(ov) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("graph has exactly 24 edges with the expected membership") {
    const auto& g = canonical_graph();
    CHECK(g.edges.size() == 24);

    CHECK(has_edge(g, "z1", "z2"));
    CHECK(has_edge(g, "z3", "y3-"));
    CHECK(has_edge(g, "h0", "y1-"));
    CHECK(has_edge(g, "h1", "y2+"));
    CHECK_FALSE(has_edge(g, "h1", "h2"));  // ⟨h1|h2⟩ = −1/3
    CHECK_FALSE(has_edge(g, "z1", "h0"));
    CHECK(std::abs(dot(canonical_rays()[ray_index("h1")].vector,
                       canonical_rays()[ray_index("h2")].vector) -
                   cplx(-1.0 / 3.0)) < 1e-15);

    // every edge is a genuinely orthogonal pair
    for (const auto& [i, j] : g.edges)
        CHECK(std::abs(dot(canonical_rays()[i].vector, canonical_rays()[j].vector)) < 1e-10);

    // degrees: 4 for z- and y-rays, 3 for h-rays
    for (int v = 0; v < 13; ++v)
        CHECK(g.degree(v) == (canonical_rays()[v].label[0] == 'h' ? 3 : 4));
}

TEST_CASE("recomputing the graph reproduces the stored edge set") {
    const auto rebuilt = build_graph(canonical_rays());
    CHECK(rebuilt.edges == canonical_graph().edges);
}

TEST_CASE("tampered ray table fails the edge count") {
    auto rays = canonical_rays();
    rays[ray_index("y1-")].vector = v3(0.1, 0.7, -0.7);  // wrong direction
    CHECK_THROWS_AS(build_graph(rays), std::runtime_error);
}

TEST_CASE("complete_basis: standard completions and the x1^0 anchor") {
    const auto& rays = canonical_rays();
    const Ray z3c = complete_basis(rays[ray_index("z1")], rays[ray_index("z2")]);
    CHECK(same_ray(z3c, rays[ray_index("z3")], 1e-14));

    const Ray z1c = complete_basis(rays[ray_index("y1+")], rays[ray_index("y1-")]);
    CHECK(same_ray(z1c, rays[ray_index("z1")], 1e-14));

    const Ray x10 = complete_basis(rays[ray_index("h0")], rays[ray_index("y1-")]);
    const Ray expect{"x1^0", v3(-2 / kS6, 1 / kS6, 1 / kS6)};
    CHECK(same_ray(x10, expect, 1e-14));
    // phase gauge: last nonzero component real positive
    CHECK(std::real(x10.vector[2]) > 0.0);
    CHECK(std::abs(std::imag(x10.vector[2])) < 1e-15);

    CHECK_THROWS_AS(complete_basis(rays[ray_index("h0")], rays[ray_index("h1")]),
                    std::invalid_argument);
}

TEST_CASE("every edge completion resolves the identity") {
    const auto& rays = canonical_rays();
    for (const auto& [i, j] : canonical_graph().edges) {
        const Ray w = complete_basis(rays[i], rays[j]);
        const Mat3 sum = outer(rays[i].vector, rays[i].vector) +
                         outer(rays[j].vector, rays[j].vector) + outer(w.vector, w.vector);
        CHECK(max_abs(sum - Mat3::identity()) < 1e-12);
    }
}

TEST_CASE("measurement ray set has 25 members including x1^0") {
    const auto& set = measurement_ray_set();
    REQUIRE(set.size() == 25);

    const Ray x10{"", v3(-2 / kS6, 1 / kS6, 1 / kS6)};
    CHECK(std::any_of(set.begin(), set.end(), [&](const Ray& r) { return same_ray(r, x10); }));
    CHECK(find_ray("x1^0").label == "x1^0");

    // all pairwise distinct as rays
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) CHECK_FALSE(same_ray(set[i], set[j]));

    // every edge's completion is in the set
    const auto& rays = canonical_rays();
    for (const auto& [i, j] : canonical_graph().edges) {
        const Ray w = complete_basis(rays[i], rays[j]);
        CHECK(std::any_of(set.begin(), set.end(), [&](const Ray& r) { return same_ray(r, w); }));
    }
}

TEST_CASE("observable_of: reflection spectrum and trace") {
    for (const auto& r : canonical_rays()) {
        const Mat3 a = observable_of(r);
        const auto eig = hermitian_eigenvalues(a);
        CHECK(eig[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::real(trace(a)) == doctest::Approx(1.0).epsilon(1e-13));
    }
    const Mat3 az1 = observable_of(canonical_rays()[ray_index("z1")]);
    CHECK(std::real(az1(0, 0)) == doctest::Approx(-1.0));
    CHECK(std::real(az1(1, 1)) == doctest::Approx(1.0));
    CHECK(std::real(az1(2, 2)) == doctest::Approx(1.0));
}

TEST_CASE("edge observables commute") {
    const auto& rays = canonical_rays();
    for (const auto& [i, j] : canonical_graph().edges) {
        const Mat3 au = observable_of(rays[i]);
        const Mat3 av = observable_of(rays[j]);
        CHECK(max_abs(au * av - av * au) < 1e-12);
    }
}

TEST_CASE("inequality operator is (25/3)*I and state-independent") {
    const Mat3 m = inequality_operator();
    CHECK(max_abs(m - kQuantumValue * Mat3::identity()) < 1e-12);
    CHECK(std::real(trace(m)) == doctest::Approx(25.0).epsilon(1e-13));

    auto rng = std::mt19937_64(2024);
    for (int i = 0; i < 100; ++i)
        CHECK(expectation(m, random_density(rng)) == doctest::Approx(kQuantumValue).epsilon(1e-12));
}

TEST_CASE("h projector sum is (4/3)*I") {
    const Mat3 h = h_sum_operator();
    CHECK(max_abs(h - kQuantumHValue * Mat3::identity()) < 1e-12);

    auto rng = std::mt19937_64(11);
    const StateVector pure = random_state(rng);
    CHECK(expectation(h, DensityOperator::pure(pure)) ==
          doctest::Approx(kQuantumHValue).epsilon(1e-12));
    CHECK(expectation(h, DensityOperator::maximally_mixed()) ==
          doctest::Approx(kQuantumHValue).epsilon(1e-12));
}

TEST_CASE("the 13-ray set is invariant under cyclic coordinate permutation") {
    const auto& rays = canonical_rays();
    for (const auto& r : rays) {
        const Vec3 rotated{{r.vector[2], r.vector[0], r.vector[1]}};
        const Ray image{"perm", rotated};
        CHECK(std::any_of(rays.begin(), rays.end(),
                          [&](const Ray& s) { return same_ray(s, image, 1e-12); }));
    }
}
