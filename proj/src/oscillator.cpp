#include "oscsim/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace oscsim {

std::size_t OscillatorSystem::index_qubits() const {
    std::size_t n = 1;
    while ((std::size_t{1} << n) < size()) ++n;
    return n;
}

bool OscillatorSystem::is_rescaled() const {
    for (double m : masses)
        if (m < 1.0) return false;
    for (double k : springs)
        if (k < 0.0 || k > 1.0) return false;
    return true;
}

bool OscillatorSystem::is_uniform() const {
    if (size() != padded_size()) return false;
    for (double m : masses)
        if (m != 1.0) return false;
    for (std::size_t e = 0; e + 1 < size(); ++e)
        if (springs[e] != 1.0) return false;
    return springs.back() == (boundary == Boundary::Closed ? 1.0 : 0.0);
}

void OscillatorSystem::validate() const {
    if (size() < 2) throw std::invalid_argument("need at least two oscillators");
    if (springs.size() != size()) throw std::invalid_argument("need N spring constants (last is k_(1,N))");
    for (double m : masses)
        if (!(m > 0.0)) throw std::invalid_argument("masses must be positive");
    for (std::size_t e = 0; e + 1 < size(); ++e)
        if (!(springs[e] > 0.0)) throw std::invalid_argument("chain springs must be positive");
    if (boundary == Boundary::Open && springs.back() != 0.0)
        throw std::invalid_argument("open chain requires k_(1,N) = 0");
    if (boundary == Boundary::Closed && !(springs.back() > 0.0))
        throw std::invalid_argument("closed chain requires k_(1,N) > 0");
}

OscillatorSystem make_chain(std::vector<double> masses, std::vector<double> chain_springs, Boundary boundary,
                            double closing_spring) {
    OscillatorSystem s;
    s.masses = std::move(masses);
    s.springs = std::move(chain_springs);
    s.springs.push_back(boundary == Boundary::Closed ? closing_spring : 0.0);
    s.boundary = boundary;
    s.validate();
    return s;
}

SystemMatrices build_matrices(const OscillatorSystem& sys) {
    sys.validate();
    const auto N = static_cast<Eigen::Index>(sys.size());
    const auto P = static_cast<Eigen::Index>(sys.padded_size());
    SystemMatrices m;
    m.M = RealMatrix::Identity(P, P);
    m.F = RealMatrix::Zero(P, P);
    m.spring_weights = RealMatrix::Zero(P, P);
    m.Phi = RealMatrix::Zero(P, P);
    for (Eigen::Index j = 0; j < N; ++j) m.M(j, j) = sys.masses[j];
    for (Eigen::Index e = 0; e < N; ++e) {
        const double k = sys.springs[e];
        const Eigen::Index i = e, j = (e + 1) % N;
        m.spring_weights(e, e) = k;
        if (e == N - 1 && sys.boundary == Boundary::Open) continue;
        m.Phi(i, e) = 1.0;
        m.Phi(j, e) = -1.0;
        m.F(i, i) += k;
        m.F(j, j) += k;
        m.F(i, j) -= k;
        m.F(j, i) -= k;
    }
    RealMatrix minv_sqrt = RealMatrix::Zero(P, P), w_sqrt = RealMatrix::Zero(P, P);
    for (Eigen::Index j = 0; j < P; ++j) {
        minv_sqrt(j, j) = 1.0 / std::sqrt(m.M(j, j));
        w_sqrt(j, j) = std::sqrt(m.spring_weights(j, j));
    }
    m.A = minv_sqrt * m.F * minv_sqrt;
    m.B = minv_sqrt * m.Phi * w_sqrt;
    return m;
}

double ScaleFactors::time_factor() const { return std::sqrt(spring_scale / mass_scale); }

std::pair<OscillatorSystem, ScaleFactors> rescale(const std::vector<double>& masses,
                                                   const std::vector<double>& springs, Boundary boundary) {
    for (double m : masses)
        if (!(m > 0.0)) throw std::invalid_argument("masses must be positive");
    ScaleFactors f;
    f.mass_scale = *std::min_element(masses.begin(), masses.end());
    f.spring_scale = *std::max_element(springs.begin(), springs.end());
    if (!(f.spring_scale > 0.0)) throw std::invalid_argument("at least one spring must be positive");
    OscillatorSystem s;
    s.boundary = boundary;
    for (double m : masses) s.masses.push_back(m / f.mass_scale);
    for (double k : springs) s.springs.push_back(k / f.spring_scale);
    s.validate();
    return {s, f};
}

Vector EncodedState::raw() const {
    Vector v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = norm * amplitudes[i];
    return v;
}

EncodedState encode_initial(const OscillatorSystem& sys, const ClassicalState& cs) {
    const std::size_t N = sys.size(), P = sys.padded_size();
    if (cs.x.size() != N || cs.v.size() != N) throw std::invalid_argument("state size does not match system");
    const SystemMatrices m = build_matrices(sys);
    RealVector y = RealVector::Zero(static_cast<Eigen::Index>(P));
    RealVector ydot = RealVector::Zero(static_cast<Eigen::Index>(P));
    for (std::size_t j = 0; j < N; ++j) {
        y(j) = std::sqrt(sys.masses[j]) * cs.x[j];
        ydot(j) = std::sqrt(sys.masses[j]) * cs.v[j];
    }
    const RealVector bty = m.B.transpose() * y;
    EncodedState e;
    e.width = sys.index_qubits() + 1;
    e.amplitudes.assign(2 * P, 0.0);
    double nrm2 = 0.0;
    for (std::size_t j = 0; j < P; ++j) {
        e.amplitudes[j] = ydot(j);
        e.amplitudes[P + j] = Complex(0.0, bty(j));
        nrm2 += ydot(j) * ydot(j) + bty(j) * bty(j);
    }
    if (nrm2 == 0.0) throw std::invalid_argument("zero initial state cannot be encoded");
    e.norm = std::sqrt(nrm2);
    for (auto& z : e.amplitudes) z /= e.norm;
    return e;
}

namespace {

struct Rk4 {
    RealVector minv;
    RealMatrix F;

    void step(RealVector& x, RealVector& v, double h) const {
        auto acc = [&](const RealVector& q) -> RealVector { return -(minv.asDiagonal() * (F * q)); };
        const RealVector k1x = v, k1v = acc(x);
        const RealVector k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x);
        const RealVector k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x);
        const RealVector k4x = v + h * k3v, k4v = acc(x + h * k3x);
        x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
};

}  // namespace

std::vector<ClassicalState> rk4_solve(const OscillatorSystem& sys, const ClassicalState& cs0,
                                      const std::vector<double>& times, double dt_internal) {
    if (!(dt_internal > 0.0)) throw std::invalid_argument("dt_internal must be positive");
    sys.validate();
    const auto N = static_cast<Eigen::Index>(sys.size());
    Rk4 rk;
    rk.minv.resize(N);
    for (Eigen::Index j = 0; j < N; ++j) rk.minv(j) = 1.0 / sys.masses[j];
    rk.F = build_matrices(sys).F.topLeftCorner(N, N);
    RealVector x = Eigen::Map<const RealVector>(cs0.x.data(), N);
    RealVector v = Eigen::Map<const RealVector>(cs0.v.data(), N);
    double t = cs0.t;
    std::vector<ClassicalState> out;
    for (double target : times) {
        if (target < t - 1e-12) throw std::invalid_argument("sample times must be ascending");
        const double span = target - t;
        const auto steps = static_cast<long>(std::ceil(span / dt_internal - 1e-9));
        if (steps > 0) {
            const double h = span / static_cast<double>(steps);
            for (long i = 0; i < steps; ++i) rk.step(x, v, h);
        }
        t = target;
        out.push_back({{x.data(), x.data() + N}, {v.data(), v.data() + N}, t});
    }
    return out;
}

ClassicalState rk4_solve(const OscillatorSystem& sys, const ClassicalState& cs0, double t_f, double dt_internal) {
    return rk4_solve(sys, cs0, std::vector<double>{t_f}, dt_internal).front();
}

double energy(const OscillatorSystem& sys, const ClassicalState& cs) {
    const auto N = static_cast<Eigen::Index>(sys.size());
    const RealMatrix F = build_matrices(sys).F.topLeftCorner(N, N);
    const RealVector x = Eigen::Map<const RealVector>(cs.x.data(), N);
    double kin = 0.0;
    for (Eigen::Index j = 0; j < N; ++j) kin += sys.masses[j] * cs.v[j] * cs.v[j];
    return 0.5 * kin + 0.5 * x.dot(F * x);
}

std::vector<std::vector<double>> recover_displacement(const std::vector<std::vector<double>>& v_samples,
                                                      const std::vector<double>& x0, double dt) {
    if (v_samples.size() < 2) throw std::invalid_argument("need at least two velocity samples");
    std::vector<std::vector<double>> x(v_samples.size(), x0);
    for (std::size_t j = 0; j + 1 < v_samples.size(); ++j)
        for (std::size_t i = 0; i < x0.size(); ++i)
            x[j + 1][i] = x[j][i] + 0.5 * dt * (v_samples[j][i] + v_samples[j + 1][i]);
    return x;
}

std::vector<double> relative_error(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("series lengths differ");
    std::vector<double> out;
    out.reserve(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < b[t].size(); ++i) {
            diff += (a[t][i] - b[t][i]) * (a[t][i] - b[t][i]);
            ref += b[t][i] * b[t][i];
        }
        const double ratio = std::sqrt(diff) / std::max(std::sqrt(ref), RELATIVE_ERROR_FLOOR);
        out.push_back(std::log10(std::max(ratio, RELATIVE_ERROR_FLOOR)));
    }
    return out;
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
    const std::size_t N = tr.v_classical.empty() ? 0 : tr.v_classical.front().size();
    os << "t";
    for (const char* tag : {"x_q", "v_q", "x_c", "v_c"})
        for (std::size_t i = 0; i < N; ++i) os << ',' << tag << '[' << i << ']';
    os << ",rel_err_x,rel_err_v\n" << std::setprecision(17);
    for (std::size_t t = 0; t < tr.times.size(); ++t) {
        os << tr.times[t];
        for (const auto* series : {&tr.x_quantum, &tr.v_quantum, &tr.x_classical, &tr.v_classical})
            for (double val : (*series)[t]) os << ',' << val;
        os << ',' << tr.rel_err_x[t] << ',' << tr.rel_err_v[t] << '\n';
    }
}

}  // namespace oscsim
