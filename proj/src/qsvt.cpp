#include "oscsim/qsvt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace oscsim {

DegreePlan plan_degree(double t, double epsilon, double alpha_H) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
    if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
    DegreePlan p;
    p.tau = 2.0 * alpha_H * t;
    p.k = static_cast<int>(std::ceil(1.4 * p.tau + std::log(1.0 / epsilon)));
    const bool even = p.k % 2 == 0;
    p.d_sin = even ? p.k : p.k - 1;
    p.d_cos = even ? p.k - 1 : p.k;
    return p;
}

std::vector<double> bessel_j_all(int max_order, double x) {
    if (max_order < 0) throw std::invalid_argument("negative Bessel order");
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double ax = std::abs(x);
    const double top = std::max(static_cast<double>(max_order), ax);
    int start = static_cast<int>(top) + 30 + static_cast<int>(std::sqrt(40.0 * top));
    start += start % 2;
    std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
    v[start] = 1e-300;
    for (int k = start; k >= 1; --k) {
        v[k - 1] = (2.0 * k / ax) * v[k] - v[k + 1];
        if (std::abs(v[k - 1]) > 1e250) {
            for (int j = k - 1; j <= start; ++j) v[j] *= 1e-250;
        }
    }
    double norm = v[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * v[k];
    for (int k = 0; k <= max_order; ++k) {
        double val = v[k] / norm;
        if (x < 0.0 && k % 2 == 1) val = -val;
        out[k] = val;
    }
    return out;
}

double bessel_j(int order, double x) { return bessel_j_all(order, x)[order]; }

double ChebyshevSeries::operator()(double x) const {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return (coeffs.empty() ? 0.0 : coeffs[0]) + x * b1 - b2;
}

TrigTargets chebyshev_targets(const DegreePlan& plan) {
    const int dc = plan.cos_degree(), ds = plan.sin_degree();
    const std::vector<double> J = bessel_j_all(std::max(dc, ds), plan.tau);
    TrigTargets t;
    t.cos_half.parity = Parity::Even;
    t.sin_half.parity = Parity::Odd;
    t.cos_half.coeffs.assign(dc + 1, 0.0);
    t.sin_half.coeffs.assign(ds + 1, 0.0);
    t.cos_half.coeffs[0] = 0.5 * J[0];
    for (int k = 2; k <= dc; k += 2) t.cos_half.coeffs[k] = ((k / 2) % 2 ? -1.0 : 1.0) * J[k];
    for (int k = 1; k <= ds; k += 2) t.sin_half.coeffs[k] = (((k - 1) / 2) % 2 ? -1.0 : 1.0) * J[k];
    return t;
}

double grid_error(const std::function<double(double)>& f, const std::function<double(double)>& g, int points) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = -1.0 + 2.0 * i / (points - 1);
        worst = std::max(worst, std::abs(f(x) - g(x)));
    }
    return worst;
}

std::vector<double> to_varphis(const std::vector<double>& phis) {
    std::vector<double> v = phis;
    const std::size_t d = phis.size() - 1;
    if (d == 0) return v;
    for (std::size_t j = 0; j <= d; ++j) v[j] += (j == 0 || j == d) ? M_PI / 4 : M_PI / 2;
    return v;
}

std::vector<double> from_varphis(const std::vector<double>& varphis) {
    std::vector<double> v = varphis;
    const std::size_t d = varphis.size() - 1;
    if (d == 0) return v;
    for (std::size_t j = 0; j <= d; ++j) v[j] -= (j == 0 || j == d) ? M_PI / 4 : M_PI / 2;
    return v;
}

namespace {

using M2 = std::array<Complex, 4>;  // row-major

inline M2 mul(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

inline M2 zrot(double phi) { return {std::polar(1.0, phi), 0.0, 0.0, std::polar(1.0, -phi)}; }

inline M2 signal(double x) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    return {x, Complex(0.0, s), Complex(0.0, s), x};
}

std::vector<double> expand(const std::vector<double>& reduced, int d) {
    std::vector<double> full(d + 1);
    for (int j = 0; j <= d; ++j) full[j] = reduced[std::min(j, d - j)];
    return full;
}

// Residual values g(x_m) and the Jacobian with respect to the reduced phases.
void response_and_jacobian(const std::vector<double>& reduced, int d, const std::vector<double>& nodes,
                           Eigen::VectorXd& g, Eigen::MatrixXd& J) {
    const std::vector<double> phi = expand(reduced, d);
    const auto m = static_cast<Eigen::Index>(nodes.size());
    const auto r = static_cast<Eigen::Index>(reduced.size());
    g.resize(m);
    J.setZero(m, r);
    std::vector<M2> pre(d + 1), suf(d + 1);
    for (Eigen::Index row = 0; row < m; ++row) {
        const M2 w = signal(nodes[row]);
        pre[0] = {1.0, 0.0, 0.0, 1.0};
        for (int j = 0; j < d; ++j) pre[j + 1] = mul(mul(pre[j], zrot(phi[j])), w);
        suf[d] = {1.0, 0.0, 0.0, 1.0};
        for (int j = d; j > 0; --j) suf[j - 1] = mul(mul(w, zrot(phi[j])), suf[j]);
        const M2 full = mul(mul(pre[d], zrot(phi[d])), suf[d]);
        g(row) = full[0].real();
        for (int j = 0; j <= d; ++j) {
            const Complex e = std::polar(1.0, phi[j]);
            const Complex dj = Complex(0.0, 1.0) * (pre[j][0] * e * suf[j][0] - pre[j][1] * std::conj(e) * suf[j][2]);
            J(row, std::min(j, d - j)) += dj.real();
        }
    }
}

}  // namespace

double qsp_response(const std::vector<double>& phis, double x) {
    const M2 w = signal(x);
    M2 u = zrot(phis[0]);
    for (std::size_t j = 1; j < phis.size(); ++j) u = mul(mul(u, w), zrot(phis[j]));
    return u[0].real();
}

PhaseSequence solve_phases(const std::function<double(double)>& target, int degree, Parity parity, double tol,
                           const std::string& target_id) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    if ((degree % 2 == 0) != (parity == Parity::Even)) throw std::invalid_argument("degree parity mismatch");
    const int d = degree;
    const int dr = (d + 2) / 2;  // ceil((d+1)/2)
    std::vector<double> nodes(dr), f(dr);
    for (int m = 1; m <= dr; ++m) {
        nodes[m - 1] = std::cos((2.0 * m - 1.0) * M_PI / (4.0 * dr));
        f[m - 1] = target(nodes[m - 1]);
        if (std::abs(f[m - 1]) > 1.0) throw std::invalid_argument("target exceeds 1 in magnitude");
    }
    const Eigen::VectorXd fv = Eigen::Map<const Eigen::VectorXd>(f.data(), dr);

    std::vector<double> reduced(dr, 0.0);
    reduced[0] = M_PI / 4;
    Eigen::VectorXd g;
    Eigen::MatrixXd J;
    response_and_jacobian(reduced, d, nodes, g, J);
    Eigen::VectorXd res = g - fv;
    double rnorm = res.norm();
    constexpr int max_iter = 10000;
    constexpr double res_tol = 1e-13;
    for (int it = 0; it < max_iter && res.lpNorm<Eigen::Infinity>() > res_tol; ++it) {
        const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-res);
        double lam = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls, lam *= 0.5) {
            std::vector<double> trial = reduced;
            for (int l = 0; l < dr; ++l) trial[l] += lam * step(l);
            Eigen::VectorXd g2;
            Eigen::MatrixXd J2;
            response_and_jacobian(trial, d, nodes, g2, J2);
            const Eigen::VectorXd r2 = g2 - fv;
            if (r2.norm() < rnorm) {
                reduced = trial;
                g = g2;
                J = J2;
                res = r2;
                rnorm = r2.norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    PhaseSequence ps;
    ps.phis = expand(reduced, d);
    ps.varphis = to_varphis(ps.phis);
    ps.parity = parity;
    ps.degree = d;
    ps.target = target_id;
    ps.achieved_error = grid_error([&](double x) { return qsp_response(ps.phis, x); }, target);
    if (!(ps.achieved_error <= tol)) {
        throw PhaseSolveError("phase solve for " + target_id + " (degree " + std::to_string(d) +
                                  ") reached error " + std::to_string(ps.achieved_error),
                              ps.achieved_error);
    }
    return ps;
}

Circuit projector_phase(std::size_t a, double phi) {
    if (a < 1) throw std::invalid_argument("projector phase needs at least one ancilla");
    Circuit c(a + 1, "Pi");
    std::vector<Control> ctrls;
    for (std::size_t k = 1; k <= a; ++k) ctrls.push_back(open(static_cast<Qubit>(k)));
    c.x(0, ctrls);
    c.rz(0, 2.0 * phi);
    c.x(0, ctrls);
    return c;
}

BlockEncoding qsvt_sequence(const BlockEncoding& be, const PhaseSequence& ps) {
    const int d = ps.degree;
    if (static_cast<int>(ps.varphis.size()) != d + 1) throw std::invalid_argument("phase count must be degree + 1");
    if ((d % 2 == 0) != (ps.parity == Parity::Even)) throw std::invalid_argument("phase parity mismatch");
    if (be.a < 1) throw std::invalid_argument("qsvt needs an encoding with ancillas");
    if (be.circuit.width() <= 12) {
        const Matrix blk = extract_block(be.circuit, be.a);
        if ((blk - blk.adjoint()).norm() > 1e-8) throw std::invalid_argument("qsvt needs a Hermitian block");
    }
    const std::size_t w = be.circuit.width() + 1;
    std::vector<Qubit> inner(w - 1), proj(be.a + 1);
    std::iota(inner.begin(), inner.end(), Qubit{1});
    std::iota(proj.begin(), proj.end(), Qubit{0});
    const Circuit u = embed(be.circuit, w, inner);
    const Circuit udg = dagger(u);

    Circuit c(w, "qsvt-" + ps.target);
    c.h(0);
    c.append(projector_phase(be.a, ps.varphis[d]), proj);
    for (int step = 1; step <= d; ++step) {
        c.append(step % 2 == 1 ? u : udg);
        c.append(projector_phase(be.a, ps.varphis[d - step]), proj);
    }
    // Branch phases (-i)^d and i^d on the scratch, so the Hadamard average
    // returns Re P.
    if (d % 2 == 1) c.rz(0, M_PI);
    if (d % 4 == 2 || d % 4 == 3) c.rz(0, 2 * M_PI);
    c.h(0);
    return make_encoding(std::move(c), 1.0, be.a + 1, ps.achieved_error);
}

PhaseCache::PhaseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string PhaseCache::key(const std::string& target, double tau, int degree, double tol) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_tau%.12f_d%d_tol%.3e", target.c_str(), tau, degree, tol);
    return buf;
}

bool PhaseCache::load(const std::string& k, PhaseSequence& out) const {
    if (dir_.empty()) return false;
    std::ifstream in(dir_ / (k + ".phases"));
    if (!in) return false;
    PhaseSequence ps;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "target") ls >> ps.target;
        else if (tag == "degree") ls >> ps.degree;
        else if (tag == "parity") {
            std::string p;
            ls >> p;
            ps.parity = p == "odd" ? Parity::Odd : Parity::Even;
        } else if (tag == "achieved_error") ls >> ps.achieved_error;
        else if (tag == "phi") {
            double v;
            ls >> v;
            ps.phis.push_back(v);
        }
    }
    if (static_cast<int>(ps.phis.size()) != ps.degree + 1) return false;
    ps.varphis = to_varphis(ps.phis);
    out = std::move(ps);
    return true;
}

void PhaseCache::store(const std::string& k, const PhaseSequence& ps) const {
    if (dir_.empty()) return;
    const auto tmp = dir_ / (k + ".phases.tmp");
    {
        std::ofstream os(tmp);
        os << std::setprecision(17);
        os << "target " << ps.target << "\n";
        os << "degree " << ps.degree << "\n";
        os << "parity " << (ps.parity == Parity::Odd ? "odd" : "even") << "\n";
        os << "achieved_error " << ps.achieved_error << "\n";
        for (double p : ps.phis) os << "phi " << p << "\n";
    }
    std::filesystem::rename(tmp, dir_ / (k + ".phases"));
}

PhaseSequence PhaseCache::get_or_solve(const std::string& target, double tau, int degree, double tol,
                                       const std::function<PhaseSequence()>& solve) {
    const std::string k = key(target, tau, degree, tol);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        PhaseSequence ps;
        if (load(k, ps)) {
            memo_[k] = ps;
            return ps;
        }
    }
    PhaseSequence ps = solve();
    std::lock_guard<std::mutex> lock(mu_);
    ++solves_;
    store(k, ps);
    memo_[k] = ps;
    return ps;
}

}  // namespace oscsim
