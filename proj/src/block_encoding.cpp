#include "oscsim/block_encoding.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oscsim/dense.hpp"

namespace oscsim {

Matrix BlockEncoding::scaled_block() const { return alpha * extract_block(circuit, a); }

BlockEncoding make_encoding(Circuit c, double alpha, std::size_t a, double epsilon) {
    if (a > c.width()) throw std::invalid_argument("ancilla count exceeds circuit width");
    if (alpha < 0.0 || epsilon < 0.0) throw std::invalid_argument("alpha and epsilon must be nonnegative");
    const std::size_t s = c.width() - a;
    return {std::move(c), alpha, a, epsilon, s};
}

BlockEncoding identity_encoding(std::size_t s) { return make_encoding(Circuit(s, "I"), 1.0, 0); }

BlockEncoding negate(const BlockEncoding& be) {
    BlockEncoding r = be;
    if (r.circuit.width() == 0) throw std::invalid_argument("cannot negate an empty-width encoding");
    r.circuit.ry(0, 2 * M_PI);
    return r;
}

double verify(const BlockEncoding& be, const Matrix& target) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << be.s);
    if (target.rows() != dim || target.cols() != dim)
        throw std::invalid_argument("target dimension does not match signal width");
    return spectral_norm(target - be.scaled_block());
}

StatePrepPair hadamard_prep(std::size_t b, double beta) {
    Circuit p(b, "H-prep");
    for (std::size_t q = 0; q < b; ++q) p.h(static_cast<Qubit>(q));
    return {p, p, beta, b, 0.0};
}

namespace {

std::size_t ceil_log2(std::size_t m) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < m) ++b;
    return b;
}

}  // namespace

Circuit prepare_state(const std::vector<Complex>& amps) {
    const std::size_t dim = amps.size();
    const std::size_t w = ceil_log2(dim);
    if (dim == 0 || (std::size_t{1} << w) != dim) throw std::invalid_argument("amplitude count must be 2^w");
    double nrm = 0.0;
    for (const auto& z : amps) nrm += std::norm(z);
    if (std::abs(nrm - 1.0) > 1e-9) throw std::invalid_argument("state must be normalized");

    // mag[q][p], phase[q][p]: subtree of prefix p at depth q.
    std::vector<std::vector<double>> mag(w + 1), ph(w + 1);
    mag[w].resize(dim);
    ph[w].resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        mag[w][i] = std::abs(amps[i]);
        ph[w][i] = mag[w][i] > 0.0 ? std::arg(amps[i]) : 0.0;
    }
    for (std::size_t q = w; q-- > 0;) {
        const std::size_t n = std::size_t{1} << q;
        mag[q].resize(n);
        ph[q].resize(n);
        for (std::size_t p = 0; p < n; ++p) {
            double r0 = mag[q + 1][2 * p], r1 = mag[q + 1][2 * p + 1];
            double& f0 = ph[q + 1][2 * p];
            double& f1 = ph[q + 1][2 * p + 1];
            if (r0 == 0.0) f0 = f1;
            if (r1 == 0.0) f1 = f0;
            mag[q][p] = std::hypot(r0, r1);
            ph[q][p] = 0.5 * (f0 + f1);
        }
    }

    Circuit c(w, "S");
    for (std::size_t q = 0; q < w; ++q) {
        const std::size_t n = std::size_t{1} << q;
        for (std::size_t p = 0; p < n; ++p) {
            if (mag[q][p] == 0.0) continue;
            std::vector<Control> ctrls;
            for (std::size_t k = 0; k < q; ++k) {
                const bool bit = (p >> (q - 1 - k)) & 1;
                ctrls.push_back({static_cast<Qubit>(k), bit ? Polarity::Closed : Polarity::Open});
            }
            const double theta = 2.0 * std::atan2(mag[q + 1][2 * p + 1], mag[q + 1][2 * p]);
            const double lambda = ph[q + 1][2 * p + 1] - ph[q + 1][2 * p];
            if (theta != 0.0) c.ry(static_cast<Qubit>(q), theta, ctrls);
            if (lambda != 0.0) c.rz(static_cast<Qubit>(q), lambda, ctrls);
        }
    }
    c.add_global_phase(ph[0][0]);
    return c;
}

StatePrepPair weighted_prep(const std::vector<double>& weights) {
    if (weights.empty()) throw std::invalid_argument("no weights");
    double beta = 0.0;
    for (double y : weights) {
        if (y < 0.0) throw std::invalid_argument("weights must be nonnegative");
        beta += y;
    }
    if (beta == 0.0) throw std::invalid_argument("weights sum to zero");
    const std::size_t b = std::max<std::size_t>(ceil_log2(weights.size()), 1);
    const std::size_t dim = std::size_t{1} << b;
    bool uniform = weights.size() == dim;
    for (double y : weights) uniform = uniform && y == weights[0];
    if (uniform) return hadamard_prep(b, beta);
    std::vector<Complex> amps(dim, 0.0);
    for (std::size_t j = 0; j < weights.size(); ++j) amps[j] = std::sqrt(weights[j] / beta);
    Circuit p = prepare_state(amps);
    p.set_label("Ry-prep");
    return {p, p, beta, b, 0.0};
}

BlockEncoding tensor(const BlockEncoding& A, const BlockEncoding& B) {
    const std::size_t a = A.a, s = A.s, b = B.a, t = B.s;
    const std::size_t w = a + s + b + t;
    // layout [a, s, b, t] -> [a, b, s, t]
    std::vector<Qubit> perm(w);
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t d = i;
        if (i >= a && i < a + s) d = i + b;
        else if (i >= a + s && i < a + s + b) d = i - s;
        perm[i] = static_cast<Qubit>(d);
    }
    const Circuit S = permutation_network(perm);
    Circuit c(w, "(" + A.circuit.label() + ")x(" + B.circuit.label() + ")");
    c.append(dagger(S));
    std::vector<Qubit> mapA(a + s), mapB(b + t);
    std::iota(mapA.begin(), mapA.end(), Qubit{0});
    std::iota(mapB.begin(), mapB.end(), static_cast<Qubit>(a + s));
    c.append(A.circuit, mapA);
    c.append(B.circuit, mapB);
    c.append(S);
    const double eps = A.alpha * B.epsilon + B.alpha * A.epsilon + A.epsilon * B.epsilon;
    return make_encoding(std::move(c), A.alpha * B.alpha, a + b, eps);
}

BlockEncoding product(const BlockEncoding& A, const BlockEncoding& B) {
    if (A.s != B.s) throw std::invalid_argument("product needs equal signal widths");
    const std::size_t w = A.a + B.a + A.s;
    Circuit c(w, A.circuit.label() + "*" + B.circuit.label());
    std::vector<Qubit> mapA, mapB;
    for (std::size_t i = 0; i < A.a; ++i) mapA.push_back(static_cast<Qubit>(i));
    for (std::size_t i = 0; i < B.a; ++i) mapB.push_back(static_cast<Qubit>(A.a + i));
    for (std::size_t i = 0; i < A.s; ++i) {
        mapA.push_back(static_cast<Qubit>(A.a + B.a + i));
        mapB.push_back(static_cast<Qubit>(A.a + B.a + i));
    }
    c.append(B.circuit, mapB);
    c.append(A.circuit, mapA);
    const double eps = A.alpha * B.epsilon + B.alpha * A.epsilon;
    return make_encoding(std::move(c), A.alpha * B.alpha, A.a + B.a, eps);
}

namespace {

std::vector<double> lcu_weights(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& encs) {
    if (coeffs.size() != encs.size() || encs.empty()) throw std::invalid_argument("lcu needs matching non-empty lists");
    std::vector<double> y(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) y[j] = std::abs(coeffs[j]) * encs[j].alpha;
    return y;
}

}  // namespace

BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& encs) {
    return lcu(coeffs, encs, weighted_prep(lcu_weights(coeffs, encs)));
}

BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& encs,
                  const StatePrepPair& prep) {
    const std::vector<double> y = lcu_weights(coeffs, encs);
    const std::size_t m = encs.size();
    const std::size_t b = prep.b;
    if ((std::size_t{1} << b) < m) throw std::invalid_argument("state preparation register too small");
    const std::size_t s = encs[0].s;
    std::size_t amax = 0;
    for (const auto& e : encs) {
        if (e.s != s) throw std::invalid_argument("lcu terms must share signal width");
        amax = std::max(amax, e.a);
    }

    // Definition-5 mismatch of the supplied pair against the weights.
    const StateVector cl = apply(prep.prep_left, StateVector::basis(b, 0));
    const StateVector cr = apply(prep.prep_right, StateVector::basis(b, 0));
    double prep_err = 0.0;
    for (std::size_t j = 0; j < (std::size_t{1} << b); ++j) {
        const double want = j < m ? y[j] : 0.0;
        prep_err += std::abs(prep.beta * std::conj(cl[j]) * cr[j] - want);
    }

    const std::size_t w = b + amax + s;
    Circuit c(w, "lcu");
    std::vector<Qubit> selmap(b);
    std::iota(selmap.begin(), selmap.end(), Qubit{0});
    c.append(prep.prep_right, selmap);
    double eps = prep.epsilon + prep_err;
    for (std::size_t j = 0; j < m; ++j) {
        if (coeffs[j] == 0.0) continue;
        const BlockEncoding term = coeffs[j] < 0.0 ? negate(encs[j]) : encs[j];
        std::vector<Qubit> map;
        for (std::size_t i = 0; i < term.a; ++i) map.push_back(static_cast<Qubit>(b + i));
        for (std::size_t i = 0; i < s; ++i) map.push_back(static_cast<Qubit>(b + amax + i));
        Circuit placed = embed(term.circuit, w, map);
        std::vector<Control> ctrls;
        for (std::size_t k = 0; k < b; ++k) {
            const bool bit = (j >> (b - 1 - k)) & 1;
            ctrls.push_back({static_cast<Qubit>(k), bit ? Polarity::Closed : Polarity::Open});
        }
        c.append(add_controls(placed, ctrls));
        eps += std::abs(coeffs[j]) * encs[j].epsilon;
    }
    c.append(dagger(prep.prep_left), selmap);
    return make_encoding(std::move(c), prep.beta, b + amax, eps);
}

}  // namespace oscsim
