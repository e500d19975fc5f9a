#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "oscsim/amplification.hpp"
#include "oscsim/dense.hpp"
#include "oscsim/incidence.hpp"

using namespace oscsim;

namespace {

constexpr double EPS = 0.01;

struct Chain {
    OscillatorSystem sys;
    HamiltonianEncoding hH;
    Matrix H;
};

Chain uniform_open_four() {
    const OscillatorSystem s = make_chain({1, 1, 1, 1}, {1, 1, 1}, Boundary::Open);
    return {s, be_hamiltonian(be_system_B(s)), hamiltonian_matrix(build_matrices(s).B)};
}

Vector to_vector(const std::vector<Complex>& v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace

TEST(Amplification, ReflectionSingleWire) {
    const Matrix r = oracle::circuit_matrix(reflection_zero(1));
    Matrix expect = Matrix::Identity(2, 2);
    expect(0, 0) = -1.0;
    EXPECT_LT((r - expect).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(reflection_zero(0), std::invalid_argument);
}

TEST(Amplification, ReflectionMarksOnlyZero) {
    const Matrix r = oracle::circuit_matrix(reflection_zero(3));
    Matrix expect = Matrix::Identity(8, 8);
    expect(0, 0) = -1.0;
    EXPECT_LT((r - expect).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((r * r - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Amplification, ScheduleForQuarterAmplitude) {
    const RoaaSchedule s = schedule(4.0, 1.0);
    EXPECT_DOUBLE_EQ(s.amplitude, 0.25);
    EXPECT_EQ(s.iterations, 3);
    EXPECT_EQ(s.queries(), 7);
    EXPECT_NEAR(s.predicted_success, 0.9613189697265625, 1e-12);
    EXPECT_NEAR(rotation_success(0.25, 1), 0.47265625, 1e-12);
    EXPECT_EQ(schedule(1.0, 1.0).iterations, 0);
    EXPECT_THROW(schedule(1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(fixed_schedule(0.0, 1), std::invalid_argument);
    EXPECT_THROW(fixed_schedule(0.5, -1), std::invalid_argument);
}

TEST(Amplification, HalfAmplitudeReachesCertainty) {
    Circuit c(2);
    c.ry(0, 2.0 * M_PI / 3.0);  // ancilla amplitude cos(pi/3) = 1/2
    const BlockEncoding U = make_encoding(c, 2.0, 1);
    const Circuit prep = prepare_state({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    const RoaaSchedule s = schedule(2.0, 1.0);
    EXPECT_EQ(s.iterations, 1);
    const AmplifiedOutcome out = amplify_and_measure(U, prep, s);
    EXPECT_NEAR(out.pre_probability, 0.25, 1e-12);
    EXPECT_NEAR(out.success_probability, 1.0, 1e-12);
}

TEST(Amplification, SingleIterationOnQuarter) {
    Circuit c(2);
    c.ry(0, 2.0 * std::acos(0.25));
    const BlockEncoding U = make_encoding(c, 4.0, 1);
    const Circuit prep = prepare_state({1.0, 0.0});
    const AmplifiedOutcome out = amplify_and_measure(U, prep, fixed_schedule(0.25, 1), 0.0);
    EXPECT_NEAR(out.pre_probability, 0.0625, 1e-12);
    EXPECT_NEAR(out.success_probability, 0.47265625, 1e-12);
}

TEST(Amplification, BelowFloorThrows) {
    Circuit c(2);
    c.ry(0, 2.0 * std::acos(0.25));
    const BlockEncoding U = make_encoding(c, 4.0, 1);
    const Circuit prep = prepare_state({1.0, 0.0});
    EXPECT_THROW(amplify_and_measure(U, prep, fixed_schedule(0.25, 0)), ZeroProbabilityError);
}

TEST(Amplification, EvolutionAtZeroMatchesPrediction) {
    const Chain st = uniform_open_four();
    const EncodedState psi0 = encode_initial(st.sys, {{0, 0.3, 0.7, 1.0}, {0, 0, 0, 0}, 0.0});
    const RoaaSchedule s = schedule(ALPHA_HS, 1.0);
    const AmplifiedOutcome out = amplify_and_measure(be_exp(st.hH, 0.0, EPS).be, prepare_state(psi0.amplitudes), s);
    EXPECT_NEAR(out.pre_probability, 1.0 / 16.0, 1e-9);
    EXPECT_NEAR(out.success_probability, s.predicted_success, 1e-6);
}

TEST(Amplification, EvolutionAtHalfKeepsFidelity) {
    const Chain st = uniform_open_four();
    const EncodedState psi0 = encode_initial(st.sys, {{0, 0.3, 0.7, 1.0}, {0.2, 0, 0, -0.1}, 0.0});
    const RoaaSchedule s = schedule(ALPHA_HS, 1.0);
    const EvolutionEncoding ev = be_exp(st.hH, 0.5, EPS);
    const AmplifiedOutcome out = amplify_and_measure(ev.be, prepare_state(psi0.amplitudes), s);
    EXPECT_GE(out.success_probability, 0.9);
    EXPECT_LE(std::abs(out.success_probability - s.predicted_success), 5 * EPS);
    const Vector exact = oracle::expm(st.H, 0.5) * to_vector(psi0.amplitudes);
    EXPECT_GE(fidelity(out.post_state.to_eigen(), exact), 1.0 - 5e-3);
}

// ---------------------------------------------------------------- properties

TEST(AmplificationProperty, ScheduleIsLocallyOptimal) {
    for (double a : {0.05, 0.1, 0.2, 0.25, 0.3, 0.5, 0.7, 0.9}) {
        const RoaaSchedule s = schedule(1.0, a);
        const double best = s.predicted_success;
        EXPECT_GE(best + 1e-15, rotation_success(a, s.iterations + 1)) << a;
        if (s.iterations > 0) EXPECT_GE(best + 1e-15, rotation_success(a, s.iterations - 1)) << a;
        EXPECT_GE(best + 1e-15, rotation_success(a, 0)) << a;
    }
}

TEST(AmplificationProperty, ObliviousToInputState) {
    // Success depends on the amplitude only, so distinct inputs agree closely.
    const Chain st = uniform_open_four();
    const RoaaSchedule s = schedule(ALPHA_HS, 1.0);
    const EvolutionEncoding ev = be_exp(st.hH, 0.5, EPS);
    const std::vector<ClassicalState> inputs{{{0, 0.3, 0.7, 1.0}, {0, 0, 0, 0}, 0.0},
                                             {{1, -1, 0, 0}, {0, 0.5, 0, 0}, 0.0},
                                             {{0, 0, 0, 0}, {1, 1, 1, 1}, 0.0},
                                             {{0.4, 0.1, -0.3, 0.2}, {-0.2, 0.1, 0.3, 0.0}, 0.0}};
    for (const ClassicalState& cs : inputs) {
        const EncodedState psi0 = encode_initial(st.sys, cs);
        const AmplifiedOutcome out = amplify_and_measure(ev.be, prepare_state(psi0.amplitudes), s);
        EXPECT_LE(std::abs(out.success_probability - s.predicted_success), 5 * EPS);
        EXPECT_NEAR(out.pre_probability, 1.0 / 16.0, EPS);
    }
}

TEST(AmplificationProperty, GroverIterateDoublesCalls) {
    const Chain st = uniform_open_four();
    const EncodedState psi0 = encode_initial(st.sys, {{0, 0.3, 0.7, 1.0}, {0, 0, 0, 0}, 0.0});
    const EvolutionEncoding ev = be_exp(st.hH, 0.25, EPS);
    const Circuit w = grover_w(ev, prepare_state(psi0.amplitudes));
    EXPECT_EQ(w.width(), ev.be.circuit.width());
    EXPECT_EQ(w.calls().at(HAMILTONIAN_CALL), 2 * ev.be.circuit.calls().at(HAMILTONIAN_CALL));
}
