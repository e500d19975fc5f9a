#pragma once

#include <functional>

#include "oscsim/statevector.hpp"

namespace oscsim {

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// f(H) for Hermitian H through its eigendecomposition.
Matrix hermitian_function(const Matrix& h, const std::function<Complex(double)>& f);

/// e^{-iHt} for Hermitian H.
Matrix expm_hermitian(const Matrix& h, double t);

Matrix kron(const Matrix& a, const Matrix& b);

/// Dense cyclic increment |j> -> |j+1 mod n>.
Matrix shift_matrix(std::size_t n);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const Vector& a, const Vector& b);

}  // namespace oscsim
