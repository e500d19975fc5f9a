#include "oscsim/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace oscsim {

StateVector::StateVector(std::size_t width) : width_(width), amps_(std::size_t{1} << width) {}

StateVector::StateVector(std::size_t width, std::vector<Complex> amplitudes)
    : width_(width), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << width))
        throw std::invalid_argument("amplitude count must be 2^width");
}

StateVector StateVector::basis(std::size_t width, std::uint64_t index) {
    StateVector s(width);
    if (index >= s.dim()) throw std::out_of_range("basis index outside state");
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

Vector StateVector::to_eigen() const {
    return Eigen::Map<const Vector>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

std::array<Complex, 4> gate_unitary(GateKind kind, double angle) {
    const Complex i(0.0, 1.0);
    switch (kind) {
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -i, i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        case GateKind::V: return {Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5)};
        case GateKind::Vdg:
            return {Complex(0.5, -0.5), Complex(0.5, 0.5), Complex(0.5, 0.5), Complex(0.5, -0.5)};
        case GateKind::Ry: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -s, s, c};
        }
        case GateKind::Rz: return {std::exp(-i * (angle / 2)), 0.0, 0.0, std::exp(i * (angle / 2))};
        case GateKind::Swap: break;
    }
    throw std::invalid_argument("gate kind has no 2x2 unitary");
}

namespace {

struct Layout {
    std::vector<unsigned> fixed;  // ascending bit positions
    std::uint64_t cval = 0;
    std::uint64_t free_count = 0;
};

inline unsigned bitpos(std::size_t width, Qubit q) { return static_cast<unsigned>(width - 1 - q); }

Layout make_layout(std::size_t width, const Gate& g) {
    Layout l;
    for (Qubit t : g.targets) l.fixed.push_back(bitpos(width, t));
    for (const auto& c : g.controls) {
        unsigned p = bitpos(width, c.qubit);
        l.fixed.push_back(p);
        if (c.polarity == Polarity::Closed) l.cval |= std::uint64_t{1} << p;
    }
    std::sort(l.fixed.begin(), l.fixed.end());
    l.free_count = std::uint64_t{1} << (width - l.fixed.size());
    return l;
}

inline std::uint64_t deposit(std::uint64_t k, const std::vector<unsigned>& fixed) {
    for (unsigned p : fixed) {
        const std::uint64_t low = k & ((std::uint64_t{1} << p) - 1);
        k = ((k >> p) << (p + 1)) | low;
    }
    return k;
}

}  // namespace

void apply_inplace(const Circuit& c, StateVector& s) {
    if (c.width() != s.width()) throw std::invalid_argument("circuit and state widths differ");
    const std::size_t w = s.width();
    auto& a = s.amplitudes();
    for (const auto& g : c.gates()) {
        const Layout l = make_layout(w, g);
        if (g.kind == GateKind::Swap) {
            const std::uint64_t b0 = std::uint64_t{1} << bitpos(w, g.targets[0]);
            const std::uint64_t b1 = std::uint64_t{1} << bitpos(w, g.targets[1]);
            for (std::uint64_t k = 0; k < l.free_count; ++k) {
                const std::uint64_t base = deposit(k, l.fixed) | l.cval;
                std::swap(a[base | b0], a[base | b1]);
            }
            continue;
        }
        const std::uint64_t tb = std::uint64_t{1} << bitpos(w, g.targets[0]);
        if (g.kind == GateKind::X) {
            for (std::uint64_t k = 0; k < l.free_count; ++k) {
                const std::uint64_t i0 = deposit(k, l.fixed) | l.cval;
                std::swap(a[i0], a[i0 | tb]);
            }
            continue;
        }
        const auto u = gate_unitary(g.kind, g.angle);
        for (std::uint64_t k = 0; k < l.free_count; ++k) {
            const std::uint64_t i0 = deposit(k, l.fixed) | l.cval;
            const std::uint64_t i1 = i0 | tb;
            const Complex x0 = a[i0], x1 = a[i1];
            a[i0] = u[0] * x0 + u[1] * x1;
            a[i1] = u[2] * x0 + u[3] * x1;
        }
    }
    if (c.global_phase() != 0.0) {
        const Complex ph = std::polar(1.0, c.global_phase());
        for (auto& x : a) x *= ph;
    }
}

StateVector apply(const Circuit& c, StateVector s) {
    apply_inplace(c, s);
    return s;
}

double outcome_probability(const StateVector& s, std::size_t a, std::uint64_t outcome) {
    if (a > s.width()) throw std::invalid_argument("more ancillas than qubits");
    const std::size_t sdim = std::size_t{1} << (s.width() - a);
    const std::size_t off = outcome * sdim;
    double p = 0.0;
    for (std::size_t j = 0; j < sdim; ++j) p += std::norm(s[off + j]);
    return p;
}

AncillaOutcome project_ancillas(const StateVector& s, std::size_t a, std::uint64_t outcome) {
    if (a >= s.width()) throw std::invalid_argument("projection needs at least one signal qubit");
    if (outcome >= (std::uint64_t{1} << a)) throw std::out_of_range("outcome outside ancilla range");
    const std::size_t sw = s.width() - a;
    const std::size_t sdim = std::size_t{1} << sw;
    const double p = outcome_probability(s, a, outcome);
    if (p <= 0.0) throw ZeroProbabilityError("ancilla outcome has zero probability");
    std::vector<Complex> post(sdim);
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t j = 0; j < sdim; ++j) post[j] = s[outcome * sdim + j] * inv;
    return {p, StateVector(sw, std::move(post))};
}

Matrix extract_block(const Circuit& c, std::size_t a) {
    if (a > c.width()) throw std::invalid_argument("more ancillas than qubits");
    const std::size_t sdim = std::size_t{1} << (c.width() - a);
    Matrix m(sdim, sdim);
    for (std::size_t j = 0; j < sdim; ++j) {
        StateVector s = apply(c, StateVector::basis(c.width(), j));
        for (std::size_t i = 0; i < sdim; ++i) m(i, j) = s[i];
    }
    return m;
}

Matrix circuit_matrix(const Circuit& c) { return extract_block(c, 0); }

void write_csv(const StateVector& s, std::ostream& os) {
    os << "index,real,imag\n" << std::setprecision(17);
    for (std::size_t i = 0; i < s.dim(); ++i) os << i << ',' << s[i].real() << ',' << s[i].imag() << '\n';
}

}  // namespace oscsim
