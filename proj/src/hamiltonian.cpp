#include "oscsim/hamiltonian.hpp"

#include <cmath>
#include <numeric>

namespace oscsim {

BlockEncoding be_raise() {
    Circuit c(2, "U01");
    c.x(1);
    c.x(0, {closed(1)});
    return make_encoding(std::move(c), 1.0, 1);
}

HamiltonianEncoding be_hamiltonian(const BlockEncoding& beB) {
    const BlockEncoding raised = tensor(be_raise(), beB);
    const std::size_t w = raised.circuit.width() + 1;
    std::vector<Qubit> sub(w - 1);
    std::iota(sub.begin(), sub.end(), Qubit{1});
    const Circuit u = embed(raised.circuit, w, sub);

    Circuit c(w, "U_H");
    c.h(0);
    c.append(add_control(dagger(u), 0, Polarity::Open));
    c.append(add_control(u, 0, Polarity::Closed));
    c.h(0);
    c.ry(0, 2 * M_PI);
    HamiltonianEncoding out;
    out.be = make_encoding(std::move(c), 2.0 * beB.alpha, beB.a + 2, beB.epsilon);
    return out;
}

ShiftedEncoding be_shifted(const HamiltonianEncoding& hH) {
    const std::size_t w = hH.be.circuit.width() + 1;
    std::vector<Qubit> sub(w - 1);
    std::iota(sub.begin(), sub.end(), Qubit{1});
    Circuit uh = embed(hH.be.circuit, w, sub);
    uh.record_call(HAMILTONIAN_CALL);

    Circuit c(w, "H^");
    c.h(0);
    c.append(add_control(uh, 0, Polarity::Closed));
    c.h(0);
    ShiftedEncoding out;
    out.be = make_encoding(std::move(c), 1.0, hH.be.a + 1, hH.be.epsilon / (2.0 * hH.be.alpha));
    return out;
}

Matrix hamiltonian_matrix(const RealMatrix& B) {
    const auto n = B.rows();
    Matrix h = Matrix::Zero(2 * n, 2 * n);
    h.topRightCorner(n, n) = -B.cast<Complex>();
    h.bottomLeftCorner(n, n) = -B.transpose().cast<Complex>();
    return h;
}

}  // namespace oscsim
