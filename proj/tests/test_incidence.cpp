#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "oscsim/dense.hpp"
#include "oscsim/incidence.hpp"

using namespace oscsim;

namespace {

/// Incidence matrix written out from the edge list: edge e joins e and e+1.
Matrix incidence(std::size_t N, std::size_t P, Boundary b) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
    const std::size_t edges = b == Boundary::Closed ? N : N - 1;
    for (std::size_t e = 0; e < edges; ++e) {
        m(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)) += 1.0;
        m(static_cast<Eigen::Index>((e + 1) % N), static_cast<Eigen::Index>(e)) -= 1.0;
    }
    return m;
}

std::size_t pad(std::size_t N) {
    std::size_t P = 2;
    while (P < N) P *= 2;
    return P;
}

Matrix padded(std::size_t N, bool shift, bool prime) {
    const std::size_t P = pad(N);
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
    for (std::size_t j = 0; j + (prime ? 1 : 0) < N; ++j)
        m(static_cast<Eigen::Index>(shift ? (j + 1) % N : j), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

}  // namespace

TEST(Incidence, ShiftSmallCases) {
    const Circuit l2 = l_shift_circuit(1);
    ASSERT_EQ(l2.size(), 1u);
    EXPECT_EQ(l2.gates()[0].kind, GateKind::X);
    const Circuit l4 = l_shift_circuit(2);
    ASSERT_EQ(l4.size(), 2u);
    EXPECT_EQ(l4.gates()[0].targets[0], 0u);
    EXPECT_EQ(l4.gates()[0].controls.size(), 1u);
    EXPECT_EQ(l4.gates()[0].controls[0].qubit, 1u);
    EXPECT_EQ(l4.gates()[1].targets[0], 1u);
    EXPECT_LT((oracle::circuit_matrix(l4) - shift_matrix(4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Incidence, ShiftSixteenExhaustive) {
    const Matrix u = oracle::circuit_matrix(l_shift_circuit(4));
    for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(u((j + 1) % 16, j)), 1.0, 1e-15);
}

TEST(Incidence, UniformClosedBlocks) {
    Matrix b4(4, 4);
    b4 << 1, 0, 0, -1, -1, 1, 0, 0, 0, -1, 1, 0, 0, 0, -1, 1;
    const BlockEncoding e4 = be_uniform_closed(4);
    EXPECT_LE(verify(e4, b4), 1e-12);
    EXPECT_EQ(e4.circuit.width(), 3u);
    Matrix b2(2, 2);
    b2 << 1, -1, -1, 1;
    EXPECT_LE(verify(be_uniform_closed(2), b2), 1e-12);
    EXPECT_THROW(be_uniform_closed(6), std::invalid_argument);
}

TEST(Incidence, UniformOpenBlocks) {
    const Matrix b = be_uniform_open(4).scaled_block();
    EXPECT_LT(b.col(3).cwiseAbs().maxCoeff(), 1e-15);
    Matrix b2(2, 2);
    b2 << 1, 0, -1, 0;
    EXPECT_LE(verify(be_uniform_open(2), b2), 1e-12);
    Matrix ip = Matrix::Identity(8, 8);
    ip(7, 7) = 0.0;
    EXPECT_LE(verify(be_identity_prime(8), ip), 1e-12);
}

TEST(Incidence, DiagonalBlocks) {
    EXPECT_TRUE(be_diagonal({1, 1, 1, 1}).circuit.empty());
    const std::vector<double> d{1, 1 / std::sqrt(2.0), 0.5, 0.9};
    Matrix D = Matrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) D(j, j) = d[j];
    EXPECT_LE(verify(be_diagonal(d), D), 1e-10);
    const std::vector<double> w{std::sqrt(0.5), std::sqrt(0.75), 0, 0};
    Matrix W = Matrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) W(j, j) = w[j];
    EXPECT_LE(verify(be_diagonal(w), W), 1e-10);
    EXPECT_THROW(be_diagonal({1.5, 0}), std::invalid_argument);
}

TEST(Incidence, GeneralBOnUniformMatchesIncidence) {
    const OscillatorSystem s = make_chain({1, 1, 1, 1}, {1, 1, 1}, Boundary::Closed, 1.0);
    EXPECT_LE(verify(be_general_B(s), incidence(4, 4, Boundary::Closed)), 1e-10);
    EXPECT_LE(verify(be_system_B(s), incidence(4, 4, Boundary::Closed)), 1e-10);
}

TEST(Incidence, GeneralBWalls) {
    const OscillatorSystem s = make_chain({99999, 1, 1, 99999}, {1, 1, 1}, Boundary::Open);
    EXPECT_LE(verify(be_general_B(s), build_matrices(s).B.cast<Complex>()), 1e-9);
}

TEST(Incidence, GeneralBHeavyMiddlePadded) {
    const OscillatorSystem s = rescale({1, 100, 2}, {0.5, 0.75, 0}, Boundary::Open).first;
    // Triple product written out independently of build_matrices.
    Matrix Minv = Matrix::Zero(4, 4), Wsq = Matrix::Zero(4, 4);
    for (int j = 0; j < 3; ++j) {
        Minv(j, j) = 1.0 / std::sqrt(s.masses[j]);
        Wsq(j, j) = std::sqrt(s.springs[j]);
    }
    const Matrix B = Minv * incidence(3, 4, Boundary::Open) * Wsq;
    EXPECT_LE(verify(be_general_B(s), B), 1e-9);
    EXPECT_THROW(be_general_B(make_chain({0.5, 1}, {1}, Boundary::Open)), std::invalid_argument);
}

TEST(Incidence, XiIsIdentityWithoutPadding) {
    const Circuit xi = xi_gate(PaddedShape::of(4, 0));
    EXPECT_LT((oracle::circuit_matrix(xi) - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Incidence, XiSwapsOutOfRangeRows) {
    // N = 3, g = 1: indices >= N - g = 2 trade places between the halves.
    const Matrix u = oracle::circuit_matrix(xi_gate(PaddedShape::of(3, 1)));
    for (int anc = 0; anc < 2; ++anc) {
        for (int j = 0; j < 4; ++j) {
            const int in = anc * 4 + j;
            const int out = j >= 2 ? (1 - anc) * 4 + j : in;
            EXPECT_NEAR(std::abs(u(out, in)), 1.0, 1e-15) << "in " << in;
        }
    }
}

TEST(Incidence, XiIsInvolution) {
    for (std::size_t N : {3, 5, 6, 7, 9, 12}) {
        for (int g : {0, 1}) {
            const Matrix u = oracle::circuit_matrix(xi_gate(PaddedShape::of(N, g)));
            EXPECT_LT((u * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(Incidence, PaddedBlocksForThree) {
    Matrix i3 = Matrix::Zero(4, 4);
    i3(0, 0) = i3(1, 1) = i3(2, 2) = 1.0;
    EXPECT_LE(verify(be_padded(PaddedKind::Identity, 3), i3), 1e-12);
    Matrix lp = Matrix::Zero(4, 4);
    lp(1, 0) = lp(2, 1) = 1.0;
    EXPECT_LE(verify(be_padded(PaddedKind::ShiftPrime, 3), lp), 1e-12);
}

TEST(Incidence, PaddedFamilyAssembles) {
    for (std::size_t N : {3, 5, 6, 7}) {
        for (Boundary b : {Boundary::Open, Boundary::Closed}) {
            EXPECT_LE(verify(be_padded_incidence(N, b), incidence(N, pad(N), b)), 1e-10) << "N=" << N;
        }
    }
}

// ---------------------------------------------------------------- properties

TEST(IncidenceProperty, EveryEncodingExact) {
    for (std::size_t N = 2; N <= 12; ++N) {
        const bool pow2 = (N & (N - 1)) == 0;
        for (Boundary b : {Boundary::Open, Boundary::Closed}) {
            const BlockEncoding e = be_incidence(N, b);
            EXPECT_DOUBLE_EQ(e.alpha, 2.0);
            EXPECT_LE(verify(e, incidence(N, pad(N), b)), 1e-10) << "N=" << N;
            const Matrix blk = e.scaled_block();
            for (Eigen::Index r = static_cast<Eigen::Index>(N); r < blk.rows(); ++r) {
                EXPECT_LT(blk.row(r).cwiseAbs().maxCoeff(), 1e-14);
                EXPECT_LT(blk.col(r).cwiseAbs().maxCoeff(), 1e-14);
            }
        }
        if (!pow2) {
            EXPECT_LE(verify(be_padded(PaddedKind::Identity, N), padded(N, false, false)), 1e-10);
            EXPECT_LE(verify(be_padded(PaddedKind::IdentityPrime, N), padded(N, false, true)), 1e-10);
            EXPECT_LE(verify(be_padded(PaddedKind::Shift, N), padded(N, true, false)), 1e-10);
            EXPECT_LE(verify(be_padded(PaddedKind::ShiftPrime, N), padded(N, true, true)), 1e-10);
        }
    }
}

TEST(IncidenceProperty, ClosedGateCountQuadraticInQubits) {
    // Least-squares fit c2 n^2 + c1 n + c0 of the elementary estimate.
    Eigen::MatrixXd X(7, 3);
    Eigen::VectorXd y(7);
    for (int n = 2; n <= 8; ++n) {
        X.row(n - 2) << n * n, n, 1;
        y(n - 2) = count_gates(be_uniform_closed(std::size_t{1} << n).circuit).elementary;
    }
    const Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
    const double ss_res = (X * c - y).squaredNorm();
    const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
    EXPECT_GE(1.0 - ss_res / ss_tot, 0.99);
    EXPECT_GT(c(0), 0.0);
}
