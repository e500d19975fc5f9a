#pragma once

#include "oscsim/evolution.hpp"

namespace oscsim {

/// I - 2|0^m><0^m|: X on all wires around a multi-controlled Z.
Circuit reflection_zero(std::size_t m);

/// W = -U R_Psi0 U^dg R_Psig on the encoding's wires; `prep` acts on the
/// signal wires and maps |0> to psi0. The -1 is kept as global phase.
Circuit grover_w(const BlockEncoding& U, const Circuit& prep);
Circuit grover_w(const EvolutionEncoding& ev, const Circuit& prep);

struct RoaaSchedule {
    double amplitude = 0.0;
    int iterations = 0;  // Q_W
    double predicted_success = 0.0;

    int queries() const { return 2 * iterations + 1; }  // Q_AA
};

double rotation_success(double amplitude, int iterations);

RoaaSchedule schedule(double alpha_HS, double psi0_norm);
RoaaSchedule fixed_schedule(double amplitude, int iterations);

struct AmplifiedOutcome {
    double pre_probability = 0.0;
    double success_probability = 0.0;
    StateVector post_state;
};

inline constexpr double SUCCESS_FLOOR = 0.5;

/// prep, U, then Q_W Grover iterations; projects the ancillas on 0.
AmplifiedOutcome amplify_and_measure(const BlockEncoding& U, const Circuit& prep, const RoaaSchedule& sched,
                                     double floor = SUCCESS_FLOOR);

}  // namespace oscsim
