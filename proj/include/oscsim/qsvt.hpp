#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscsim/block_encoding.hpp"

namespace oscsim {

enum class Parity { Even, Odd };

/// tau = 2 alpha_H t, k = ceil(1.4 tau + ln(1/eps)); d_sin is the even and
/// d_cos the odd member of {k-1, k}.
struct DegreePlan {
    double tau = 0.0;
    int k = 0;
    int d_sin = 0;
    int d_cos = 0;

    /// Degree used for the even cosine series (= d_sin).
    int cos_degree() const { return d_sin; }
    /// Degree used for the odd sine series (= d_cos).
    int sin_degree() const { return d_cos; }
};

DegreePlan plan_degree(double t, double epsilon, double alpha_H);

/// J_0(x) .. J_max(x) by Miller's downward recurrence.
std::vector<double> bessel_j_all(int max_order, double x);
double bessel_j(int order, double x);

/// sum_k coeffs[k] T_k(x), evaluated by Clenshaw.
struct ChebyshevSeries {
    std::vector<double> coeffs;
    Parity parity = Parity::Even;

    double operator()(double x) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct TrigTargets {
    ChebyshevSeries cos_half;  // cos(tau x) / 2
    ChebyshevSeries sin_half;  // sin(tau x) / 2
};

/// Jacobi-Anger series truncated at the plan's even and odd degrees.
TrigTargets chebyshev_targets(const DegreePlan& plan);

/// max |f - g| over `points` equispaced points of [-1, 1].
double grid_error(const std::function<double(double)>& f, const std::function<double(double)>& g,
                  int points = 401);

struct PhaseSequence {
    std::vector<double> phis;     // symmetric QSP phases, d + 1 entries
    std::vector<double> varphis;  // circuit phases
    Parity parity = Parity::Even;
    int degree = 0;
    std::string target;
    double achieved_error = 0.0;
};

/// Ends shifted by pi/4, interior by pi/2 (no shift for d = 0).
std::vector<double> to_varphis(const std::vector<double>& phis);
std::vector<double> from_varphis(const std::vector<double>& varphis);

/// Re <0| e^{i phi_0 Z} prod_j W(x) e^{i phi_j Z} |0>, W(x) = e^{i arccos(x) X}.
double qsp_response(const std::vector<double>& phis, double x);

class PhaseSolveError : public std::runtime_error {
public:
    PhaseSolveError(const std::string& what, double best_error)
        : std::runtime_error(what), best_error_(best_error) {}
    double best_error() const { return best_error_; }

private:
    double best_error_;
};

/// Newton iteration on the residual at the d~ = ceil((d+1)/2) positive
/// Chebyshev nodes, over symmetric phase vectors, started from
/// (pi/4, 0, ..., 0, pi/4). Requires |target| <= 1/2 for a safe margin.
PhaseSequence solve_phases(const std::function<double(double)>& target, int degree, Parity parity, double tol,
                           const std::string& target_id = "custom");

/// e^{i phi (2 Pi - I)} with Pi = |0^a><0^a| on wires 1..a, realized with a
/// scratch wire 0: C_Pi NOT, Rz(2 phi), C_Pi NOT.
Circuit projector_phase(std::size_t a, double phi);

/// (1, a + 1, tol)-encoding of P(block) where Re P is the QSP polynomial of
/// `ps`; new scratch wire on top. Alternates U and U^dg starting with U.
BlockEncoding qsvt_sequence(const BlockEncoding& be, const PhaseSequence& ps);

/// Solved phases keyed by (target, tau to 1e-12, degree, tol). With a
/// directory, entries are also persisted as text files.
class PhaseCache {
public:
    explicit PhaseCache(std::filesystem::path dir = {});

    PhaseSequence get_or_solve(const std::string& target, double tau, int degree, double tol,
                               const std::function<PhaseSequence()>& solve);

    std::size_t solves() const { return solves_; }

private:
    std::string key(const std::string& target, double tau, int degree, double tol) const;
    bool load(const std::string& key, PhaseSequence& out) const;
    void store(const std::string& key, const PhaseSequence& ps) const;

    std::filesystem::path dir_;
    std::map<std::string, PhaseSequence> memo_;
    mutable std::mutex mu_;
    std::size_t solves_ = 0;
};

}  // namespace oscsim
