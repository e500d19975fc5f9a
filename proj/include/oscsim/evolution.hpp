#pragma once

#include "oscsim/hamiltonian.hpp"
#include "oscsim/oscillator.hpp"
#include "oscsim/qsvt.hpp"

namespace oscsim {

/// (4, a_H + 3, epsilon)-encoding of e^{-iHt}.
struct EvolutionEncoding {
    BlockEncoding be;
    double t = 0.0;
    double tau = 0.0;
    DegreePlan plan;
    PhaseSequence cos_phases;
    PhaseSequence sin_phases;
    double truncation_error = 0.0;  // worst of the two half-scaled series on the grid
};

inline constexpr double ALPHA_HS = 4.0;

/// Builds cos and sin QSVT encodings on the shifted operator, combines them
/// with an equal-weight LCU (sin branch dressed by X then Y for -i) and
/// removes e^{-i tau/2} with Rz(-tau) on the selector.
EvolutionEncoding be_exp(const ShiftedEncoding& hhat, double alpha_H, double t, double epsilon,
                         PhaseCache* cache = nullptr);
EvolutionEncoding be_exp(const HamiltonianEncoding& hH, double t, double epsilon, PhaseCache* cache = nullptr);

struct EvolvedState {
    double probability = 0.0;
    EncodedState state;
};

/// Applies the encoding to |0^a> (x) psi0 and projects the ancillas on 0.
EvolvedState evolve_state(const EvolutionEncoding& ev, const EncodedState& psi0);

}  // namespace oscsim
