#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

// Minimal dense complex linear algebra in dimension 3. Everything in this
// project lives in a single qutrit, so a fixed-size layer beats a general
// matrix library: no allocation, trivially inlined, easy to audit.

namespace yuoh {

using cplx = std::complex<double>;

struct Vec3 {
    std::array<cplx, 3> v{};

    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }
};

struct Mat3 {
    // Row-major storage.
    std::array<cplx, 9> m{};

    cplx& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }

    static Mat3 zero() { return Mat3{}; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    Vec3 out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vec3 operator*(cplx s, const Vec3& a) {
    Vec3 out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = s * a[i];
    return out;
}

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
    return out;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] - b.m[i];
    return out;
}

inline Mat3 operator*(cplx s, const Mat3& a) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = s * a.m[i];
    return out;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += a(r, k) * b(k, c);
            out(r, c) = acc;
        }
    return out;
}

inline Vec3 operator*(const Mat3& a, const Vec3& x) {
    Vec3 out;
    for (std::size_t r = 0; r < 3; ++r) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < 3; ++k) acc += a(r, k) * x[k];
        out[r] = acc;
    }
    return out;
}

inline Mat3 adjoint(const Mat3& a) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) out(r, c) = std::conj(a(c, r));
    return out;
}

inline cplx trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

// ⟨u|v⟩ with the physics convention (antilinear in the first slot).
inline cplx dot(const Vec3& u, const Vec3& v) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

inline double norm(const Vec3& u) { return std::sqrt(std::real(dot(u, u))); }

// |u⟩⟨v|
inline Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) out(r, c) = u[r] * std::conj(v[c]);
    return out;
}

inline double max_abs(const Mat3& a) {
    double mx = 0.0;
    for (const auto& e : a.m) mx = std::max(mx, std::abs(e));
    return mx;
}

inline bool is_hermitian(const Mat3& a, double tol) {
    return max_abs(a - adjoint(a)) <= tol;
}

// Eigenvalues of a Hermitian 3×3 matrix, ascending, via cyclic complex
// Jacobi rotations. The closed-form cubic is only sqrt(eps)-accurate at
// repeated roots, which is not enough for the 1e-12 gates used here.
inline std::array<double, 3> hermitian_eigenvalues(Mat3 a) {
    constexpr std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    const double scale = std::max({std::abs(a(0, 0)), std::abs(a(1, 1)), std::abs(a(2, 2)), 1e-30});

    for (int sweep = 0; sweep < 30; ++sweep) {
        const double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
        if (off <= 1e-17 * scale) break;
        for (const auto& [p, q] : pairs) {
            const cplx b = a(p, q);
            const double mag = std::abs(b);
            if (mag <= 1e-18 * scale) continue;
            const cplx phase = b / mag;
            const double tau = (std::real(a(q, q)) - std::real(a(p, p))) / (2.0 * mag);
            const double t = tau == 0.0 ? 1.0
                                        : (tau > 0 ? 1.0 : -1.0) /
                                              (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            Mat3 g = Mat3::identity();
            g(p, p) = c;
            g(q, q) = c;
            g(p, q) = s * phase;
            g(q, p) = -s * std::conj(phase);
            a = adjoint(g) * a * g;
        }
    }

    std::array<double, 3> eig{std::real(a(0, 0)), std::real(a(1, 1)), std::real(a(2, 2))};
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace yuoh
