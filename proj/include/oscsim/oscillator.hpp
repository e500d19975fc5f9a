#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oscsim/statevector.hpp"

namespace oscsim {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Boundary { Open = 0, Closed = 1 };

/// Chain of N masses. springs[e] for e < N-1 couples oscillators e and e+1;
/// springs[N-1] is the closing spring k_(1,N), zero for an open chain.
struct OscillatorSystem {
    std::vector<double> masses;
    std::vector<double> springs;
    Boundary boundary = Boundary::Open;

    std::size_t size() const { return masses.size(); }
    /// ceil(log2 N), at least 1.
    std::size_t index_qubits() const;
    std::size_t padded_size() const { return std::size_t{1} << index_qubits(); }
    bool is_rescaled() const;
    /// Unit masses and springs on a power-of-two chain.
    bool is_uniform() const;
    void validate() const;
};

OscillatorSystem make_chain(std::vector<double> masses, std::vector<double> chain_springs, Boundary boundary,
                            double closing_spring = 0.0);

/// All matrices zero-padded to the power-of-two size. Padded diagonal entries
/// of M are 1, of W are 0.
struct SystemMatrices {
    RealMatrix M, F, spring_weights, Phi, A, B;
};

SystemMatrices build_matrices(const OscillatorSystem& sys);

struct ScaleFactors {
    double mass_scale = 1.0;    // m_min
    double spring_scale = 1.0;  // k_max
    /// s = t * time_factor() is the time of the rescaled system.
    double time_factor() const;
};

std::pair<OscillatorSystem, ScaleFactors> rescale(const std::vector<double>& masses,
                                                   const std::vector<double>& springs, Boundary boundary);

struct ClassicalState {
    std::vector<double> x;
    std::vector<double> v;
    double t = 0.0;
};

/// (sqrt(M) v ; i B^T sqrt(M) x) normalized, on 1 + index_qubits() qubits.
struct EncodedState {
    std::vector<Complex> amplitudes;
    double norm = 0.0;
    std::size_t width = 0;

    Vector raw() const;  // norm * amplitudes
};

EncodedState encode_initial(const OscillatorSystem& sys, const ClassicalState& cs);

/// Classic RK4 on M x'' = -F x, sampled at `times` (ascending, >= cs0.t).
std::vector<ClassicalState> rk4_solve(const OscillatorSystem& sys, const ClassicalState& cs0,
                                      const std::vector<double>& times, double dt_internal = 1e-4);
ClassicalState rk4_solve(const OscillatorSystem& sys, const ClassicalState& cs0, double t_f,
                         double dt_internal = 1e-4);

double energy(const OscillatorSystem& sys, const ClassicalState& cs);

/// Trapezoidal integration of uniformly sampled velocities from x0.
std::vector<std::vector<double>> recover_displacement(const std::vector<std::vector<double>>& v_samples,
                                                      const std::vector<double>& x0, double dt);

inline constexpr double RELATIVE_ERROR_FLOOR = 1e-12;

/// log10(||a_t - b_t|| / max(||b_t||, floor)), with the ratio clamped at floor.
std::vector<double> relative_error(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> v_quantum, v_classical, x_quantum, x_classical;
    std::vector<double> rel_err_v, rel_err_x;
};

void write_trajectory_csv(const Trajectory& tr, std::ostream& os);

}  // namespace oscsim
