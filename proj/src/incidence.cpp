#include "oscsim/incidence.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oscsim {

namespace {

std::size_t log2_exact(std::size_t N) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < N) ++n;
    if ((std::size_t{1} << n) != N || N < 2) throw std::invalid_argument("N must be a power of two >= 2");
    return n;
}

std::vector<Qubit> range(std::size_t first, std::size_t count) {
    std::vector<Qubit> r(count);
    std::iota(r.begin(), r.end(), static_cast<Qubit>(first));
    return r;
}

}  // namespace

Circuit l_shift_circuit(std::size_t n) {
    if (n < 1) throw std::invalid_argument("l_shift_circuit needs n >= 1");
    Circuit c(n, "L" + std::to_string(std::size_t{1} << n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Control> ctrls;
        for (std::size_t k = j + 1; k < n; ++k) ctrls.push_back(closed(static_cast<Qubit>(k)));
        c.x(static_cast<Qubit>(j), ctrls);
    }
    return c;
}

BlockEncoding be_uniform_closed(std::size_t N) {
    const std::size_t n = log2_exact(N);
    Circuit c(n + 1, "Bc" + std::to_string(N));
    c.h(0);
    c.append(add_control(embed(l_shift_circuit(n), n + 1, range(1, n)), 0, Polarity::Closed));
    c.h(0);
    c.x(0);
    return make_encoding(std::move(c), 2.0, 1);
}

BlockEncoding be_identity_prime(std::size_t N) {
    const std::size_t n = log2_exact(N);
    Circuit c(n + 1, "I'" + std::to_string(N));
    std::vector<Control> ctrls;
    for (std::size_t k = 1; k <= n; ++k) ctrls.push_back(closed(static_cast<Qubit>(k)));
    c.x(0, ctrls);
    return make_encoding(std::move(c), 1.0, 1);
}

BlockEncoding be_shift_prime(std::size_t N) {
    const std::size_t n = log2_exact(N);
    Circuit c = l_shift_circuit(n + 1);
    c.set_label("L'" + std::to_string(N));
    return make_encoding(std::move(c), 1.0, 1);
}

BlockEncoding be_uniform_open(std::size_t N) {
    const std::size_t n = log2_exact(N);
    const std::size_t w = n + 2;
    Circuit c(w, "Bo" + std::to_string(N));
    const auto sub = range(1, n + 1);
    c.h(0);
    c.append(add_control(embed(be_identity_prime(N).circuit, w, sub), 0, Polarity::Open));
    c.append(add_control(embed(be_shift_prime(N).circuit, w, sub), 0, Polarity::Closed));
    c.h(0);
    c.x(0);
    return make_encoding(std::move(c), 2.0, 2);
}

BlockEncoding be_diagonal(const std::vector<double>& d) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d.size()) ++n;
    if (d.empty() || (std::size_t{1} << n) != d.size())
        throw std::invalid_argument("diagonal length must be a power of two");
    Circuit c(n + 1, "diag");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(std::abs(d[i]) <= 1.0))
            throw std::invalid_argument("diagonal entries must lie in [-1, 1]; rescale the system first");
        const double theta = 2.0 * std::acos(d[i]);
        if (theta == 0.0) continue;
        std::vector<Control> ctrls;
        for (std::size_t k = 0; k < n; ++k) {
            const bool bit = (i >> (n - 1 - k)) & 1;
            ctrls.push_back({static_cast<Qubit>(k + 1), bit ? Polarity::Closed : Polarity::Open});
        }
        c.ry(0, theta, ctrls);
    }
    return make_encoding(std::move(c), 1.0, 1);
}

PaddedShape PaddedShape::of(std::size_t N, int g) {
    if (N < 2) throw std::invalid_argument("padded shape needs N >= 2");
    if (g != 0 && g != 1) throw std::invalid_argument("g must be 0 or 1");
    PaddedShape s;
    s.N = N;
    s.n_tilde = 1;
    while ((std::size_t{1} << s.n_tilde) < N) ++s.n_tilde;
    s.N_tilde = std::size_t{1} << s.n_tilde;
    s.g = g;
    return s;
}

Circuit xi_gate(const PaddedShape& shape) {
    const std::size_t nt = shape.n_tilde;
    Circuit c(nt + 1, "Xi" + std::to_string(shape.g));
    const long limit = static_cast<long>(shape.N) - shape.g;
    long h = static_cast<long>(shape.N_tilde);
    std::vector<Qubit> not_ctrl;
    for (std::size_t i = 1; i <= nt; ++i) {
        const long block = 1L << (nt - i);
        if (h - block >= limit) {
            for (Qubit q : not_ctrl) c.x(q);
            std::vector<Control> ctrls;
            for (std::size_t k = 1; k <= i; ++k) ctrls.push_back(closed(static_cast<Qubit>(k)));
            c.x(0, ctrls);
            for (Qubit q : not_ctrl) c.x(q);
            not_ctrl.push_back(static_cast<Qubit>(i));
            h -= block;
        }
    }
    return c;
}

Circuit m_closed(const PaddedShape& shape) {
    const std::size_t nt = shape.n_tilde;
    Circuit c(nt + 1, "Mc");
    const std::size_t v = shape.N - static_cast<std::size_t>(shape.g);
    for (std::size_t i = 1; i <= nt; ++i) {
        const bool bit = (v >> (nt - i)) & 1;
        if (!bit) c.x(static_cast<Qubit>(i), {closed(0)});
    }
    return c;
}

Circuit m_open(const PaddedShape& shape) {
    Circuit c(shape.n_tilde + 1, "Mo");
    c.append(l_shift_circuit(shape.n_tilde), range(1, shape.n_tilde));
    return c;
}

BlockEncoding be_padded(PaddedKind kind, std::size_t N) {
    const PaddedShape s = PaddedShape::of(N, kind == PaddedKind::Identity ? 0 : 1);
    Circuit c(s.n_tilde + 1);
    c.append(xi_gate(s));
    switch (kind) {
        case PaddedKind::Identity: c.set_label("I~"); break;
        case PaddedKind::IdentityPrime: c.set_label("I'~"); break;
        case PaddedKind::Shift:
            c.set_label("L~");
            c.append(m_closed(s));
            c.append(l_shift_circuit(s.n_tilde + 1));
            break;
        case PaddedKind::ShiftPrime:
            c.set_label("L'~");
            c.append(m_open(s));
            break;
    }
    return make_encoding(std::move(c), 1.0, 1);
}

BlockEncoding be_padded_incidence(std::size_t N, Boundary boundary) {
    const bool closed_chain = boundary == Boundary::Closed;
    const BlockEncoding id = be_padded(closed_chain ? PaddedKind::Identity : PaddedKind::IdentityPrime, N);
    const BlockEncoding sh = be_padded(closed_chain ? PaddedKind::Shift : PaddedKind::ShiftPrime, N);
    const std::size_t w = id.circuit.width() + 1;
    Circuit c(w, closed_chain ? "Phi~c" : "Phi~o");
    const auto sub = range(1, w - 1);
    c.h(0);
    c.append(add_control(embed(id.circuit, w, sub), 0, Polarity::Open));
    c.append(add_control(embed(sh.circuit, w, sub), 0, Polarity::Closed));
    c.h(0);
    c.x(0);
    return make_encoding(std::move(c), 2.0, 2);
}

BlockEncoding be_incidence(std::size_t N, Boundary boundary) {
    const bool pow2 = N >= 2 && (N & (N - 1)) == 0;
    if (!pow2) return be_padded_incidence(N, boundary);
    return boundary == Boundary::Closed ? be_uniform_closed(N) : be_uniform_open(N);
}

BlockEncoding be_general_B(const OscillatorSystem& sys) {
    sys.validate();
    if (!sys.is_rescaled())
        throw std::invalid_argument("system must be rescaled (masses >= 1, springs <= 1) before encoding");
    const std::size_t N = sys.size(), P = sys.padded_size();
    std::vector<double> minv(P, 0.0), wsq(P, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        minv[j] = 1.0 / std::sqrt(sys.masses[j]);
        wsq[j] = std::sqrt(sys.springs[j]);
    }
    BlockEncoding b = product(product(be_diagonal(minv), be_incidence(N, sys.boundary)), be_diagonal(wsq));
    b.circuit.set_label("B");
    return b;
}

BlockEncoding be_system_B(const OscillatorSystem& sys) {
    if (sys.is_uniform()) return be_incidence(sys.size(), sys.boundary);
    return be_general_B(sys);
}

}  // namespace oscsim
