#pragma once

#include <vector>

#include "oscsim/circuit.hpp"
#include "oscsim/statevector.hpp"

namespace oscsim {

/// U with (<0^a| (x) I) U (|0^a> (x) I) = A / alpha up to epsilon.
/// Ancillas are the top `a` wires, the signal the remaining `s`.
struct BlockEncoding {
    Circuit circuit;
    double alpha = 1.0;
    std::size_t a = 0;
    double epsilon = 0.0;
    std::size_t s = 0;

    /// alpha * extracted block.
    Matrix scaled_block() const;
};

BlockEncoding make_encoding(Circuit c, double alpha, std::size_t a, double epsilon = 0.0);

/// (1, 0, 0)-encoding of the identity on s qubits.
BlockEncoding identity_encoding(std::size_t s);

/// Same encoding with the block multiplied by -1 (an Ry(2pi) on wire 0).
BlockEncoding negate(const BlockEncoding& be);

/// ||target - alpha * block||_2.
double verify(const BlockEncoding& be, const Matrix& target);

/// P|0> = sum_j c_j|j>, Q|0> = sum_j d_j|j>, with beta * conj(c_j) * d_j ~ y_j.
struct StatePrepPair {
    Circuit prep_left;
    Circuit prep_right;
    double beta = 1.0;
    std::size_t b = 0;
    double epsilon = 0.0;
};

/// H on each of b qubits: equal weights over 2^b terms.
StatePrepPair hadamard_prep(std::size_t b, double beta);

/// Real nonnegative weights y_j prepared by a binary tree of Ry rotations.
StatePrepPair weighted_prep(const std::vector<double>& weights);

/// Circuit mapping |0...0> to `amps` (normalized), including the exact
/// global phase as metadata.
Circuit prepare_state(const std::vector<Complex>& amps);

BlockEncoding tensor(const BlockEncoding& A, const BlockEncoding& B);

/// Encoding of A*B; ancilla layout [a_A, a_B].
BlockEncoding product(const BlockEncoding& A, const BlockEncoding& B);

/// Encoding of sum_j coeffs[j] * A_j. Negative coefficients flip the sign of
/// the corresponding circuit. The default prep is chosen from the weights
/// |coeffs[j]| * alpha_j.
BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& encs);
BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& encs,
                  const StatePrepPair& prep);

}  // namespace oscsim
