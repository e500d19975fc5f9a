#include "oscsim/amplification.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace oscsim {

Circuit reflection_zero(std::size_t m) {
    if (m < 1) throw std::invalid_argument("reflection needs m >= 1");
    Circuit c(m, "R0");
    for (std::size_t q = 0; q < m; ++q) c.x(static_cast<Qubit>(q));
    std::vector<Control> ctrls;
    for (std::size_t q = 0; q + 1 < m; ++q) ctrls.push_back(closed(static_cast<Qubit>(q)));
    c.z(static_cast<Qubit>(m - 1), ctrls);
    for (std::size_t q = 0; q < m; ++q) c.x(static_cast<Qubit>(q));
    return c;
}

Circuit grover_w(const BlockEncoding& U, const Circuit& prep) {
    if (prep.width() != U.s) throw std::invalid_argument("state preparation must act on the signal wires");
    const std::size_t w = U.circuit.width();
    std::vector<Qubit> sig(U.s);
    std::iota(sig.begin(), sig.end(), static_cast<Qubit>(U.a));
    Circuit c(w, "grover_w");
    if (U.a > 0) c.append(reflection_zero(U.a));
    c.append(dagger(U.circuit));
    c.append(dagger(prep), sig);
    c.append(reflection_zero(w));
    c.append(prep, sig);
    c.append(U.circuit);
    c.add_global_phase(M_PI);
    return c;
}

Circuit grover_w(const EvolutionEncoding& ev, const Circuit& prep) { return grover_w(ev.be, prep); }

double rotation_success(double amplitude, int iterations) {
    const double s = std::sin((2.0 * iterations + 1.0) * std::asin(amplitude));
    return s * s;
}

RoaaSchedule fixed_schedule(double amplitude, int iterations) {
    if (!(amplitude > 0.0 && amplitude <= 1.0)) throw std::invalid_argument("amplitude must lie in (0, 1]");
    if (iterations < 0) throw std::invalid_argument("iterations must be nonnegative");
    return {amplitude, iterations, rotation_success(amplitude, iterations)};
}

RoaaSchedule schedule(double alpha_HS, double psi0_norm) {
    const double a = psi0_norm / alpha_HS;
    if (!(a > 0.0)) throw std::invalid_argument("amplitude must be positive");
    if (a > 1.0) throw std::invalid_argument("amplitude exceeds 1");
    const double x = M_PI / (4.0 * std::asin(a)) - 0.5;
    int best = 0;
    for (int q : {static_cast<int>(std::floor(x)), static_cast<int>(std::ceil(x)), 0}) {
        if (q < 0) continue;
        if (rotation_success(a, q) > rotation_success(a, best)) best = q;
    }
    return fixed_schedule(a, best);
}

AmplifiedOutcome amplify_and_measure(const BlockEncoding& U, const Circuit& prep, const RoaaSchedule& sched,
                                     double floor) {
    const std::size_t w = U.circuit.width();
    std::vector<Qubit> sig(U.s);
    std::iota(sig.begin(), sig.end(), static_cast<Qubit>(U.a));
    StateVector s(w);
    s[0] = 1.0;
    apply_inplace(embed(prep, w, sig), s);
    apply_inplace(U.circuit, s);
    AmplifiedOutcome out;
    out.pre_probability = outcome_probability(s, U.a, 0);
    if (sched.iterations > 0) {
        const Circuit W = grover_w(U, prep);
        for (int i = 0; i < sched.iterations; ++i) apply_inplace(W, s);
    }
    out.success_probability = outcome_probability(s, U.a, 0);
    if (out.success_probability < floor) {
        std::ostringstream os;
        os << "amplified success probability " << out.success_probability << " is below the floor " << floor
           << "; adjust the amplification schedule";
        throw ZeroProbabilityError(os.str());
    }
    out.post_state = project_ancillas(s, U.a, 0).post_state;
    return out;
}

}  // namespace oscsim
