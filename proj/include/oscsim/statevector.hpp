#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "oscsim/circuit.hpp"

namespace oscsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double UNITARITY_TOL = 1e-10;
inline constexpr double BLOCK_TOL = 1e-10;

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t width);
    StateVector(std::size_t width, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t width, std::uint64_t index);

    std::size_t width() const { return width_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::vector<Complex>& amplitudes() { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex& operator[](std::size_t i) { return amps_[i]; }

    double norm() const;
    Vector to_eigen() const;

private:
    std::size_t width_ = 0;
    std::vector<Complex> amps_;
};

/// 2x2 matrix of a single-target gate kind, row-major {u00, u01, u10, u11}.
std::array<Complex, 4> gate_unitary(GateKind kind, double angle);

void apply_inplace(const Circuit& c, StateVector& s);
StateVector apply(const Circuit& c, StateVector s);

class ZeroProbabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AncillaOutcome {
    double probability = 0.0;
    StateVector post_state;
};

/// Probability of reading `outcome` on the top `a` wires (outcome bit a-1 is
/// wire a-1).
double outcome_probability(const StateVector& s, std::size_t a, std::uint64_t outcome = 0);

/// Projects the top `a` wires onto `outcome`; throws ZeroProbabilityError
/// when the outcome has no weight.
AncillaOutcome project_ancillas(const StateVector& s, std::size_t a, std::uint64_t outcome = 0);

/// Top-left 2^(width-a) block of the circuit unitary, built column by column
/// from basis inputs.
Matrix extract_block(const Circuit& c, std::size_t a);

/// Full unitary, column by column. Only sensible at small width.
Matrix circuit_matrix(const Circuit& c);

/// CSV rows of `index,real,imag`.
void write_csv(const StateVector& s, std::ostream& os);

}  // namespace oscsim
