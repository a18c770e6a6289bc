#include "yuoh/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace yuoh {

namespace {

constexpr double kZeroAngle = 1e-12;

double wrap_2pi(double x) {
    x = std::fmod(x, 2.0 * M_PI);
    if (x < 0.0) x += 2.0 * M_PI;
    return x;
}

}  // namespace

PulseSequence compile_preparation(const Ray& target) {
    const StateVector gauge = target.state().canonical();
    const cplx a = gauge[0];
    const cplx b = gauge[1];
    const cplx c = gauge[2];
    if (std::real(a) < -1e-12 || std::abs(std::imag(a)) > 1e-9)
        throw std::invalid_argument("compile_preparation: target not in the a-real gauge");

    PulseSequence seq;
    seq.purpose = SequencePurpose::preparation;

    const double theta2 = 2.0 * std::asin(std::min(1.0, std::abs(b)));
    if (theta2 > kZeroAngle)
        seq.pulses.push_back({Channel::MW2, theta2, wrap_2pi(std::arg(b))});

    const double c2 = std::cos(theta2 / 2.0);
    if (c2 > kZeroAngle) {
        double x = std::real(a) / c2;
        if (x > 1.0 + 1e-9 || x < -1e-9)
            throw std::invalid_argument("compile_preparation: target not normalized");
        x = std::clamp(x, 0.0, 1.0);
        const double theta1 = 2.0 * std::acos(x);
        if (theta1 > kZeroAngle)
            seq.pulses.push_back({Channel::MW1, theta1, wrap_2pi(std::arg(c))});
    }
    return seq;
}

PulseSequence compile_measurement(const Ray& r) {
    const PulseSequence prep = compile_preparation(r);
    PulseSequence seq;
    seq.purpose = SequencePurpose::measurement;
    for (auto it = prep.pulses.rbegin(); it != prep.pulses.rend(); ++it)
        seq.pulses.push_back({it->channel, it->theta, wrap_2pi(it->phi + M_PI)});
    return seq;
}

UnitaryOperator sequence_unitary(const PulseSequence& seq) { return sequence_unitary(seq, 0.0); }

UnitaryOperator sequence_unitary(const PulseSequence& seq, double amp_error) {
    UnitaryOperator u = UnitaryOperator::identity();
    for (const Pulse& p : seq.pulses)
        u = u.then(embedded_rotation(p.channel, p.theta * (1.0 + amp_error), p.phi));
    return u;
}

double duration_of(const Pulse& p, const CalibrationTable& cal) {
    const double period = cal.period(p.channel);
    if (period <= 0.0) throw std::invalid_argument("duration_of: missing calibration entry");
    return p.theta * period / (2.0 * M_PI);
}

bool sequence_well_formed(const PulseSequence& seq) {
    // Preparation: at most one MW2 followed by at most one MW1;
    // measurement is the exact reverse structure.
    if (seq.pulses.size() > 2) return false;
    if (seq.pulses.size() == 2) {
        const Channel first = seq.pulses[0].channel;
        const Channel second = seq.pulses[1].channel;
        if (seq.purpose == SequencePurpose::preparation)
            return first == Channel::MW2 && second == Channel::MW1;
        return first == Channel::MW1 && second == Channel::MW2;
    }
    return true;
}

}  // namespace yuoh
