#include "oscsim/evolution.hpp"

#include <cmath>
#include <sstream>

namespace oscsim {

EvolutionEncoding be_exp(const ShiftedEncoding& hhat, double alpha_H, double t, double epsilon, PhaseCache* cache) {
    EvolutionEncoding ev;
    ev.t = t;
    ev.plan = plan_degree(t, epsilon, alpha_H);
    ev.tau = ev.plan.tau;
    const TrigTargets targets = chebyshev_targets(ev.plan);
    const double tau = ev.tau;

    // Half-scaled series must sit within eps/4 of cos/2, sin/2, so the
    // recombined 4*block stays within eps.
    const double budget = epsilon / 4.0;
    const double cos_trunc = grid_error(targets.cos_half, [tau](double x) { return 0.5 * std::cos(tau * x); });
    const double sin_trunc = grid_error(targets.sin_half, [tau](double x) { return 0.5 * std::sin(tau * x); });
    ev.truncation_error = std::max(cos_trunc, sin_trunc);
    if (cos_trunc > budget || sin_trunc > budget) {
        std::ostringstream os;
        os << "Jacobi-Anger truncation at k=" << ev.plan.k << " misses the error budget (" << ev.truncation_error
           << " > " << budget << ")";
        throw std::runtime_error(os.str());
    }

    const double solve_tol = 1e-10;
    auto solve = [&](const char* id, const ChebyshevSeries& series) {
        auto run = [&]() { return solve_phases(series, series.degree(), series.parity, solve_tol, id); };
        return cache ? cache->get_or_solve(id, tau, series.degree(), solve_tol, run) : run();
    };
    ev.cos_phases = solve("cos_half", targets.cos_half);
    ev.sin_phases = solve("sin_half", targets.sin_half);

    BlockEncoding cos_be = qsvt_sequence(hhat.be, ev.cos_phases);
    BlockEncoding sin_be = qsvt_sequence(hhat.be, ev.sin_phases);
    // Y X = -i Z, and the scratch wire reads |0> on the block.
    sin_be.circuit.x(0);
    sin_be.circuit.y(0);
    cos_be.alpha = sin_be.alpha = 2.0;
    cos_be.epsilon = 2.0 * (cos_trunc + ev.cos_phases.achieved_error);
    sin_be.epsilon = 2.0 * (sin_trunc + ev.sin_phases.achieved_error);

    BlockEncoding be = lcu({1.0, 1.0}, {cos_be, sin_be}, hadamard_prep(1, 4.0));
    be.circuit.rz(0, -tau);
    be.circuit.set_label("exp(-iHt)");
    ev.be = std::move(be);
    return ev;
}

EvolutionEncoding be_exp(const HamiltonianEncoding& hH, double t, double epsilon, PhaseCache* cache) {
    return be_exp(be_shifted(hH), hH.be.alpha, t, epsilon, cache);
}

EvolvedState evolve_state(const EvolutionEncoding& ev, const EncodedState& psi0) {
    const std::size_t a = ev.be.a;
    if (psi0.width != ev.be.s) throw std::invalid_argument("state width does not match encoding");
    StateVector s(ev.be.circuit.width());
    for (std::size_t j = 0; j < psi0.amplitudes.size(); ++j) s[j] = psi0.amplitudes[j];
    apply_inplace(ev.be.circuit, s);
    const AncillaOutcome out = project_ancillas(s, a, 0);
    EvolvedState r;
    r.probability = out.probability;
    r.state.width = psi0.width;
    r.state.norm = psi0.norm;
    r.state.amplitudes = out.post_state.amplitudes();
    return r;
}

}  // namespace oscsim
