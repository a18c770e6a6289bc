#include "yuoh/qutrit.hpp"

#include <cmath>
#include <stdexcept>

namespace yuoh {

StateVector::StateVector(const Vec3& amplitudes) : amps_(amplitudes) {
    const double n = norm(amps_);
    if (n < 1e-12) throw std::invalid_argument("StateVector: zero vector");
    for (auto& a : amps_.v) a /= n;
}

StateVector StateVector::basis(std::size_t index) {
    Vec3 v;
    v[index] = 1.0;
    return StateVector(v);
}

StateVector StateVector::canonical() const {
    for (const auto& a : amps_.v) {
        const double mag = std::abs(a);
        if (mag > 1e-12) {
            const cplx phase = std::conj(a) / mag;
            return StateVector(phase * amps_);
        }
    }
    return *this;  // unreachable for a valid state
}

bool StateVector::same_ray(const StateVector& other, double tol) const {
    return 1.0 - std::abs(inner(*this, other)) <= tol;
}

cplx inner(const StateVector& u, const StateVector& v) { return dot(u.amplitudes(), v.amplitudes()); }

UnitaryOperator::UnitaryOperator(const Mat3& matrix) : m_(matrix) {
    if (max_abs(adjoint(m_) * m_ - Mat3::identity()) > kAlgebraTol)
        throw std::invalid_argument("UnitaryOperator: U†U != I");
}

DensityOperator::DensityOperator(const Mat3& matrix) : m_(matrix) {
    if (!is_hermitian(m_, kAlgebraTol))
        throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(trace(m_) - 1.0) > kAlgebraTol)
        throw std::invalid_argument("DensityOperator: trace != 1");
    if (hermitian_eigenvalues(m_)[0] < -1e-10)
        throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

DensityOperator DensityOperator::pure(const StateVector& s) {
    return DensityOperator(outer(s.amplitudes(), s.amplitudes()));
}

DensityOperator DensityOperator::maximally_mixed() {
    return DensityOperator((1.0 / 3.0) * Mat3::identity());
}

DensityOperator DensityOperator::evolved(const UnitaryOperator& u) const {
    return DensityOperator(u.matrix() * m_ * adjoint(u.matrix()));
}

Projector::Projector(const StateVector& ray, std::optional<std::string> label)
    : m_(outer(ray.amplitudes(), ray.amplitudes())), label_(std::move(label)) {}

double expectation(const Mat3& op, const DensityOperator& state) {
    if (!is_hermitian(op, kAlgebraTol))
        throw std::invalid_argument("expectation: operator not Hermitian");
    const cplx t = trace(state.matrix() * op);
    // Hermiticity of both factors forces a real trace; anything else is
    // rounding and must stay below the algebraic tolerance (scaled).
    const double scale = std::max(1.0, max_abs(op));
    if (std::abs(std::imag(t)) > kAlgebraTol * scale * 10.0)
        throw std::invalid_argument("expectation: imaginary part out of tolerance");
    return std::real(t);
}

UnitaryOperator embedded_rotation(Channel channel, double theta, double phi) {
    const std::size_t target = channel == Channel::MW1 ? 2 : 1;
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx e_plus = std::polar(1.0, phi);

    Mat3 u = Mat3::identity();
    u(0, 0) = c;
    u(target, target) = c;
    u(target, 0) = e_plus * s;
    u(0, target) = -std::conj(e_plus) * s;
    return UnitaryOperator(u);
}

StateVector apply(const UnitaryOperator& u, const StateVector& s) {
    const Vec3 out = u.matrix() * s.amplitudes();
    if (std::abs(norm(out) - 1.0) > kDriftTol)
        throw std::runtime_error("apply: norm drift exceeds tolerance");
    return StateVector(out);
}

DensityOperator depolarize(const DensityOperator& state, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarize: p outside [0,1]");
    const Mat3 mixed = (p / 3.0) * Mat3::identity();
    return DensityOperator((cplx(1.0 - p)) * state.matrix() + mixed);
}

}  // namespace yuoh
