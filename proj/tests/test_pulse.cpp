#include <doctest.h>

#include <random>

#include "yuoh/pulse.hpp"
#include "yuoh/random.hpp"

using namespace yuoh;

namespace {

StateVector prepared_from_zero(const PulseSequence& seq) {
    return apply(sequence_unitary(seq), StateVector::basis(0));
}

}  // namespace

TEST_CASE("compile_preparation: z1 needs no pulses") {
    const auto seq = compile_preparation(find_ray("z1"));
    CHECK(seq.pulses.empty());
    CHECK(sequence_well_formed(seq));
    CHECK(max_abs(sequence_unitary(seq).matrix() - Mat3::identity()) < 1e-15);
}

TEST_CASE("compile_preparation: y3+ is a single MW2 pi/2 pulse") {
    const auto seq = compile_preparation(find_ray("y3+"));
    REQUIRE(seq.pulses.size() == 1);
    CHECK(seq.pulses[0].channel == Channel::MW2);
    CHECK(seq.pulses[0].theta == doctest::Approx(M_PI / 2.0));
    CHECK(seq.pulses[0].phi == doctest::Approx(0.0));
    CHECK(prepared_from_zero(seq).same_ray(find_ray("y3+").state(), 1e-12));
}

TEST_CASE("compile_preparation: h0 takes MW2 then MW1") {
    const auto seq = compile_preparation(find_ray("h0"));
    REQUIRE(seq.pulses.size() == 2);
    CHECK(seq.pulses[0].channel == Channel::MW2);
    CHECK(seq.pulses[0].theta == doctest::Approx(2.0 * std::asin(1.0 / std::sqrt(3.0))));
    CHECK(seq.pulses[0].phi == doctest::Approx(0.0));
    CHECK(seq.pulses[1].channel == Channel::MW1);
    CHECK(seq.pulses[1].theta == doctest::Approx(M_PI / 2.0));
    CHECK(seq.pulses[1].phi == doctest::Approx(0.0));
    CHECK(prepared_from_zero(seq).same_ray(find_ray("h0").state(), 1e-12));
}

TEST_CASE("compile_preparation: |-1> compiles to a single MW1 pi pulse") {
    const auto seq = compile_preparation(find_ray("z3"));
    REQUIRE(seq.pulses.size() == 1);
    CHECK(seq.pulses[0].channel == Channel::MW1);
    CHECK(seq.pulses[0].theta == doctest::Approx(M_PI));
}

TEST_CASE("compile_preparation: degenerate all-|1> target stops after MW2") {
    const auto seq = compile_preparation(find_ray("z2"));
    REQUIRE(seq.pulses.size() == 1);
    CHECK(seq.pulses[0].channel == Channel::MW2);
    CHECK(seq.pulses[0].theta == doctest::Approx(M_PI));
    CHECK(prepared_from_zero(seq).same_ray(find_ray("z2").state(), 1e-12));
}

TEST_CASE("compile_measurement: reverse order, phi + pi") {
    const auto prep = compile_preparation(find_ray("h0"));
    const auto meas = compile_measurement(find_ray("h0"));
    REQUIRE(meas.pulses.size() == 2);
    CHECK(meas.purpose == SequencePurpose::measurement);
    CHECK(meas.pulses[0].channel == Channel::MW1);
    CHECK(meas.pulses[1].channel == Channel::MW2);
    CHECK(meas.pulses[0].theta == doctest::Approx(prep.pulses[1].theta));
    CHECK(meas.pulses[0].phi == doctest::Approx(std::fmod(prep.pulses[1].phi + M_PI, 2.0 * M_PI)));
    CHECK(sequence_well_formed(meas));

    const auto y3p_meas = compile_measurement(find_ray("y3+"));
    REQUIRE(y3p_meas.pulses.size() == 1);
    CHECK(y3p_meas.pulses[0].channel == Channel::MW2);
    CHECK(y3p_meas.pulses[0].theta == doctest::Approx(M_PI / 2.0));
    CHECK(y3p_meas.pulses[0].phi == doctest::Approx(M_PI));
}

TEST_CASE("measurement maps |r> to |0> for all 25 measurement rays") {
    for (const auto& r : measurement_ray_set()) {
        const auto u = sequence_unitary(compile_measurement(r));
        const StateVector mapped = apply(u, r.state());
        CHECK(std::abs(inner(StateVector::basis(0), mapped)) > 1.0 - 1e-10);

        // full round trip: meas ∘ prep = identity on |0⟩
        const auto round = sequence_unitary(compile_preparation(r)).then(u);
        const StateVector back = apply(round, StateVector::basis(0));
        CHECK(std::abs(inner(StateVector::basis(0), back)) > 1.0 - 1e-10);
    }
}

TEST_CASE("preparation fidelity on 1000 random rays") {
    auto rng = std::mt19937_64(77);
    for (int i = 0; i < 1000; ++i) {
        const StateVector target = random_state(rng);
        const Ray ray{"rnd", target.amplitudes()};
        const auto seq = compile_preparation(ray);
        CHECK(sequence_well_formed(seq));
        const double fidelity = std::norm(inner(target, prepared_from_zero(seq)));
        CHECK(fidelity >= 1.0 - 1e-10);
    }
}

TEST_CASE("preparation never places MW1 before MW2") {
    auto rng = std::mt19937_64(123);
    for (int i = 0; i < 200; ++i) {
        const auto seq = compile_preparation(Ray{"rnd", random_state(rng).amplitudes()});
        bool seen_mw1 = false;
        for (const auto& p : seq.pulses) {
            if (p.channel == Channel::MW1) seen_mw1 = true;
            if (seen_mw1) CHECK(p.channel == Channel::MW1);
        }
    }
}

TEST_CASE("duration_of: linear in theta, covariant in period") {
    CalibrationTable cal;
    cal.rabi_period_mw1 = 1.0;
    CHECK(duration_of({Channel::MW1, 2.0 * M_PI, 0.0}, cal) == doctest::Approx(1.0));
    CHECK(duration_of({Channel::MW1, 0.0, 0.0}, cal) == doctest::Approx(0.0));

    cal.rabi_period_mw1 = 0.8;
    CHECK(duration_of({Channel::MW1, M_PI, 0.0}, cal) == doctest::Approx(0.4));

    auto rng = std::mt19937_64(4);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> period(0.1, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double theta = angle(rng);
        const double scale = period(rng);
        CalibrationTable a, b;
        a.rabi_period_mw2 = 1.0;
        b.rabi_period_mw2 = scale;
        const Pulse p{Channel::MW2, theta, 0.0};
        CHECK(duration_of(p, b) == doctest::Approx(scale * duration_of(p, a)).epsilon(1e-12));
        CHECK(duration_of({Channel::MW2, 2.0 * theta, 0.0}, a) ==
              doctest::Approx(2.0 * duration_of(p, a)).epsilon(1e-12));
    }

    CalibrationTable broken;
    broken.rabi_period_mw1 = 0.0;
    CHECK_THROWS_AS(duration_of({Channel::MW1, 1.0, 0.0}, broken), std::invalid_argument);
}

TEST_CASE("default calibration carries the ODMR frequencies and laser timings") {
    const CalibrationTable cal;
    CHECK(cal.freq_mw1 == doctest::Approx(1480.6));
    CHECK(cal.freq_mw2 == doctest::Approx(4259.3));
    CHECK(cal.init_laser == doctest::Approx(3.5));
    CHECK(cal.wait == doctest::Approx(5.0));
    CHECK(cal.readout_laser == doctest::Approx(0.3));
}

TEST_CASE("amp-error-scaled unitary degrades the round trip as expected") {
    const Ray& h1 = find_ray("h1");
    const auto seq = compile_preparation(h1);
    const auto u_exact = sequence_unitary(seq);
    const auto u_scaled = sequence_unitary(seq, 0.05);
    const double exact = std::norm(inner(h1.state(), apply(u_exact, StateVector::basis(0))));
    const double scaled = std::norm(inner(h1.state(), apply(u_scaled, StateVector::basis(0))));
    CHECK(exact >= 1.0 - 1e-12);
    CHECK(scaled < exact);
    CHECK(scaled > 0.9);  // 5% miscalibration is a small perturbation
}
