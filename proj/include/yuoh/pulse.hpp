#pragma once

#include <vector>

#include "yuoh/rays.hpp"

// Compiles target qutrit rays into the two-pulse preparation scheme
// (an MW2 pulse followed by an MW1 pulse, zero-angle pulses dropped)
// and the reversed-and-inverted readout sequence, plus the angle→duration
// map through the Rabi calibration.

namespace yuoh {

struct Pulse {
    Channel channel;
    double theta;  // rotation angle, [0, 2π)
    double phi;    // rotation-axis phase, [0, 2π)
};

enum class SequencePurpose { preparation, measurement };

struct PulseSequence {
    std::vector<Pulse> pulses;  // applied in order
    SequencePurpose purpose = SequencePurpose::preparation;
};

struct CalibrationTable {
    double rabi_period_mw1 = 1.0;  // µs, one full Rabi circle
    double rabi_period_mw2 = 1.0;  // µs
    double freq_mw1 = 1480.6;      // MHz, |0⟩↔|−1⟩
    double freq_mw2 = 4259.3;      // MHz, |0⟩↔|+1⟩
    double init_laser = 3.5;       // µs polarizing pulse
    double wait = 5.0;             // µs after init
    double readout_laser = 0.3;    // µs

    double period(Channel c) const { return c == Channel::MW1 ? rabi_period_mw1 : rabi_period_mw2; }
};

// Pulses sending |0⟩ to the target ray: MW2(θ₂ = 2·asin|b|, φ₂ = arg b)
// then MW1(θ₁ = 2·acos(a/cos(θ₂/2)), φ₁ = arg c), in the gauge where the
// first nonzero amplitude is real positive. Zero-angle pulses dropped.
PulseSequence compile_preparation(const Ray& target);

// Inverse pulses in reverse order (φ → φ+π at the same θ); the resulting
// unitary maps |r⟩ to |0⟩ up to global phase.
PulseSequence compile_measurement(const Ray& r);

// Ordered product of the embedded rotations (first pulse acts first).
UnitaryOperator sequence_unitary(const PulseSequence& seq);

// Same, with every rotation angle scaled by (1 + amp_error); models a
// miscalibrated Rabi period.
UnitaryOperator sequence_unitary(const PulseSequence& seq, double amp_error);

// t = θ·T/(2π) for the pulse's channel.
double duration_of(const Pulse& p, const CalibrationTable& cal);

bool sequence_well_formed(const PulseSequence& seq);

}  // namespace yuoh
