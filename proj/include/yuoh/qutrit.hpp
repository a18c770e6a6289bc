#pragma once

#include <optional>
#include <string>

#include "yuoh/algebra.hpp"

// Exact three-level quantum mechanics for an NV electron spin qutrit.
// Basis order is fixed as (|0⟩, |1⟩, |−1⟩): index 0 ↔ m_s = 0,
// index 1 ↔ m_s = +1, index 2 ↔ m_s = −1. All matrices use this order.
//
// Everything here is an immutable value; operations are pure functions.

namespace yuoh {

// Algebraic identities hold to this tolerance.
inline constexpr double kAlgebraTol = 1e-12;
// Accumulated numerical drift (e.g. norm loss over long pulse chains).
inline constexpr double kDriftTol = 1e-8;

// Microwave channels. MW1 drives |0⟩↔|−1⟩ (indices 0,2),
// MW2 drives |0⟩↔|+1⟩ (indices 0,1).
enum class Channel { MW1, MW2 };

inline const char* channel_name(Channel c) { return c == Channel::MW1 ? "MW1" : "MW2"; }

// Pure qutrit state a|0⟩ + b|1⟩ + c|−1⟩, unit norm.
class StateVector {
  public:
    // Normalizes; throws std::invalid_argument on a (near-)zero vector.
    explicit StateVector(const Vec3& amplitudes);
    StateVector(cplx a, cplx b, cplx c) : StateVector(Vec3{{a, b, c}}) {}

    static StateVector basis(std::size_t index);

    const Vec3& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    // Global-phase canonical representative: first amplitude with
    // |a_i| > 1e-12 made real and non-negative.
    StateVector canonical() const;

    // True when the two states agree up to a global phase.
    bool same_ray(const StateVector& other, double tol = 1e-10) const;

  private:
    Vec3 amps_;
};

cplx inner(const StateVector& u, const StateVector& v);

// 3×3 unitary, validated U†U = I within kAlgebraTol.
class UnitaryOperator {
  public:
    explicit UnitaryOperator(const Mat3& matrix);

    const Mat3& matrix() const { return m_; }

    static UnitaryOperator identity() { return UnitaryOperator(Mat3::identity()); }

    UnitaryOperator then(const UnitaryOperator& next) const {
        return UnitaryOperator(next.m_ * m_);
    }

    UnitaryOperator inverse() const { return UnitaryOperator(adjoint(m_)); }

  private:
    Mat3 m_;
};

// Density operator: Hermitian, unit trace, positive semidefinite
// (eigenvalues ≥ −1e-10 tolerated for rounding).
class DensityOperator {
  public:
    explicit DensityOperator(const Mat3& matrix);

    static DensityOperator pure(const StateVector& s);
    static DensityOperator maximally_mixed();

    const Mat3& matrix() const { return m_; }

    DensityOperator evolved(const UnitaryOperator& u) const;

  private:
    Mat3 m_;
};

// Rank-1 projector |r⟩⟨r|, optionally tagged with the ray label it came from.
class Projector {
  public:
    explicit Projector(const StateVector& ray, std::optional<std::string> label = std::nullopt);

    const Mat3& matrix() const { return m_; }
    const std::optional<std::string>& source_ray() const { return label_; }

  private:
    Mat3 m_;
    std::optional<std::string> label_;
};

// Tr(ρ·op) for Hermitian op; throws std::invalid_argument on a
// non-Hermitian operator. The imaginary part is checked < kAlgebraTol
// relative to scale, then discarded.
double expectation(const Mat3& op, const DensityOperator& state);

// Resonant rotation by angle theta about an axis in the X-Y plane at
// angle phi, acting on the driven two-level subspace, identity on the
// spectator level. On |0⟩ the action is cos(θ/2)|0⟩ + e^{iφ}sin(θ/2)|t⟩
// with |t⟩ the channel's target level; the complementary element carries
// −e^{−iφ}sin(θ/2).
UnitaryOperator embedded_rotation(Channel channel, double theta, double phi);

// U·s, renormalized; norm drift beyond kDriftTol throws (the unitary is
// numerically invalid).
StateVector apply(const UnitaryOperator& u, const StateVector& s);

// (1−p)·ρ + p·I/3. p outside [0,1] throws.
DensityOperator depolarize(const DensityOperator& state, double p);

}  // namespace yuoh
