#pragma once

#include <vector>

#include "oscsim/block_encoding.hpp"
#include "oscsim/oscillator.hpp"

namespace oscsim {

/// Cyclic increment L_{2^n} on n wires: for j = 0..n-1, a NOT on wire j
/// controlled by wires j+1..n-1.
Circuit l_shift_circuit(std::size_t n);

/// (2, 1, 0)-encoding of I - L_N for N = 2^n.
BlockEncoding be_uniform_closed(std::size_t N);

/// (1, 1, 0)-encoding of I'_N (identity with the last diagonal entry zeroed).
BlockEncoding be_identity_prime(std::size_t N);

/// (1, 1, 0)-encoding of L'_N (L_N with the last column zeroed): L_{2N} over
/// ancilla and index.
BlockEncoding be_shift_prime(std::size_t N);

/// (2, 2, 0)-encoding of I'_N - L'_N for N = 2^n.
BlockEncoding be_uniform_open(std::size_t N);

/// (1, 1, 0)-encoding of diag(d); d.size() must be a power of two.
BlockEncoding be_diagonal(const std::vector<double>& d);

struct PaddedShape {
    std::size_t N = 0;
    std::size_t n_tilde = 0;
    std::size_t N_tilde = 0;
    int g = 0;

    static PaddedShape of(std::size_t N, int g);
};

/// Xi_g on 1 + n_tilde wires (wire 0 is the ancilla): flips the ancilla for
/// every index >= N - g.
Circuit xi_gate(const PaddedShape& shape);

/// M_c: CNOTs from wire 0 onto index wires where N - g has a zero bit.
Circuit m_closed(const PaddedShape& shape);

/// M_o = I (x) L_{N_tilde} on the index wires.
Circuit m_open(const PaddedShape& shape);

enum class PaddedKind { Identity, IdentityPrime, Shift, ShiftPrime };

/// (1, 1, 0)-encoding of the zero-padded I, I', L or L' of size N.
BlockEncoding be_padded(PaddedKind kind, std::size_t N);

/// (2, 2, 0)-encoding of the zero-padded incidence matrix for any N >= 2.
BlockEncoding be_padded_incidence(std::size_t N, Boundary boundary);

/// Incidence encoding: uniform circuits when N is a power of two, padded
/// otherwise.
BlockEncoding be_incidence(std::size_t N, Boundary boundary);

/// sqrt(M)^{-1} * Phi * sqrt(W) as a product of encodings, alpha = 2.
BlockEncoding be_general_B(const OscillatorSystem& sys);

/// General B, or the bare incidence encoding when the system is uniform.
BlockEncoding be_system_B(const OscillatorSystem& sys);

}  // namespace oscsim
