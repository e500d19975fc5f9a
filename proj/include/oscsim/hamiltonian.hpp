#pragma once

#include "oscsim/block_encoding.hpp"
#include "oscsim/oscillator.hpp"

namespace oscsim {

/// Encoding of H = -(|0><1| (x) B + |1><0| (x) B^dg) with alpha_H = 2 alpha_B
/// and a_H = a_B + 2. Wire 0 selects between the two off-diagonal terms,
/// wire 1 is the |0><1| ancilla.
struct HamiltonianEncoding {
    BlockEncoding be;
    bool hermitian = true;
};

/// (1, a_H + 1, 0)-encoding of (H / alpha_H + I) / 2.
struct ShiftedEncoding {
    BlockEncoding be;
};

/// |0><1| on one signal wire with one ancilla: X on the signal, then a CNOT
/// onto the ancilla.
BlockEncoding be_raise();

HamiltonianEncoding be_hamiltonian(const BlockEncoding& beB);
ShiftedEncoding be_shifted(const HamiltonianEncoding& hH);

/// Dense -[[0, B], [B^T, 0]].
Matrix hamiltonian_matrix(const RealMatrix& B);

inline constexpr const char* HAMILTONIAN_CALL = "U_H";

}  // namespace oscsim
