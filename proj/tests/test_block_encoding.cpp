#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "oscsim/block_encoding.hpp"
#include "oscsim/dense.hpp"
#include "oscsim/incidence.hpp"

using namespace oscsim;

namespace {

Matrix incidence_closed(std::size_t N) { return Matrix::Identity(N, N) - shift_matrix(N); }

BlockEncoding x_encoding() {
    Circuit c(1);
    c.x(0);
    return make_encoding(std::move(c), 1.0, 0);
}

/// Random (1, a, 0)-encoding: a random circuit on a + s wires.
BlockEncoding random_encoding(std::size_t a, std::size_t s, std::mt19937& rng) {
    return make_encoding(oracle::random_circuit(a + s, 12, rng), 1.0, a);
}

Matrix oracle_scaled_block(const BlockEncoding& be) {
    return be.alpha * oracle::top_left(oracle::circuit_matrix(be.circuit), be.s);
}

}  // namespace

TEST(BlockEncoding, WidthBookkeeping) {
    const BlockEncoding b = be_uniform_closed(4);
    EXPECT_EQ(b.circuit.width(), b.a + b.s);
    EXPECT_EQ(b.s, 2u);
    EXPECT_THROW(make_encoding(Circuit(2), 1.0, 3), std::invalid_argument);
}

TEST(BlockEncoding, VerifyTrivialX) {
    Matrix X(2, 2);
    X << 0, 1, 1, 0;
    EXPECT_EQ(verify(x_encoding(), X), 0.0);
}

TEST(BlockEncoding, VerifyUniformClosed) { EXPECT_LE(verify(be_uniform_closed(4), incidence_closed(4)), 1e-10); }

TEST(BlockEncoding, VerifyDetectsWrongAlpha) {
    BlockEncoding b = be_uniform_closed(4);
    b.alpha = 1.0;
    const double expect = oracle::norm2(incidence_closed(4) - incidence_closed(4) / 2.0);
    EXPECT_NEAR(verify(b, incidence_closed(4)), expect, 1e-12);
    EXPECT_NEAR(expect, 1.0, 1e-12);
}

TEST(BlockEncoding, VerifyRejectsDimensionMismatch) {
    EXPECT_THROW(verify(be_uniform_closed(4), Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST(BlockEncoding, NegateFlipsBlock) {
    const BlockEncoding b = negate(be_uniform_closed(4));
    EXPECT_LE(verify(b, -incidence_closed(4)), 1e-12);
}

TEST(BlockEncoding, TensorOfPaulisHasNoAncillas) {
    const BlockEncoding t = tensor(x_encoding(), x_encoding());
    EXPECT_EQ(t.a, 0u);
    Matrix X(2, 2);
    X << 0, 1, 1, 0;
    EXPECT_LE(verify(t, oracle::kron(X, X)), 1e-15);
}

TEST(BlockEncoding, TensorOfIncidences) {
    const BlockEncoding t = tensor(be_uniform_closed(2), be_uniform_closed(2));
    EXPECT_DOUBLE_EQ(t.alpha, 4.0);
    EXPECT_EQ(t.a, 2u);
    EXPECT_LE(verify(t, oracle::kron(incidence_closed(2), incidence_closed(2))), 1e-10);
}

TEST(BlockEncoding, TensorErrorArithmetic) {
    BlockEncoding a = identity_encoding(1), b = identity_encoding(1);
    a.alpha = 2.0;
    a.epsilon = 0.1;
    b.alpha = 3.0;
    b.epsilon = 0.2;
    const BlockEncoding t = tensor(a, b);
    EXPECT_NEAR(t.epsilon, 0.72, 1e-15);
    EXPECT_DOUBLE_EQ(t.alpha, 6.0);
}

TEST(BlockEncoding, ProductWithIdentity) {
    const BlockEncoding b = be_uniform_closed(4);
    const BlockEncoding p = product(identity_encoding(2), b);
    EXPECT_EQ(p.a, b.a);
    EXPECT_LE(verify(p, incidence_closed(4)), 1e-12);
}

TEST(BlockEncoding, ProductAlphaAndError) {
    BlockEncoding a = be_uniform_closed(2), b = identity_encoding(1);
    b.alpha = 3.0;
    a.epsilon = 0.1;
    b.epsilon = 0.2;
    const BlockEncoding p = product(a, b);
    EXPECT_DOUBLE_EQ(p.alpha, 6.0);
    EXPECT_NEAR(p.epsilon, 2.0 * 0.2 + 3.0 * 0.1, 1e-15);
    EXPECT_THROW(product(be_uniform_closed(4), identity_encoding(1)), std::invalid_argument);
}

TEST(BlockEncoding, LcuOfIdentities) {
    const BlockEncoding l = lcu({0.5, 0.5}, {identity_encoding(1), identity_encoding(1)}, hadamard_prep(1, 1.0));
    EXPECT_DOUBLE_EQ(l.alpha, 1.0);
    EXPECT_LE(verify(l, Matrix::Identity(2, 2)), 1e-14);
}

TEST(BlockEncoding, LcuBuildsClosedIncidence) {
    for (std::size_t n : {1, 2, 3}) {
        const std::size_t N = std::size_t{1} << n;
        const BlockEncoding shift = make_encoding(l_shift_circuit(n), 1.0, 0);
        const BlockEncoding l = lcu({1.0, -1.0}, {identity_encoding(n), shift});
        EXPECT_DOUBLE_EQ(l.alpha, 2.0);
        EXPECT_LE(verify(l, incidence_closed(N)), 1e-12) << "N=" << N;
    }
}

TEST(BlockEncoding, LcuWeightedThreeTerms) {
    std::mt19937 rng(31);
    std::vector<BlockEncoding> encs;
    for (int i = 0; i < 3; ++i) encs.push_back(random_encoding(1, 2, rng));
    const std::vector<double> coeffs{0.7, -0.2, 1.3};
    Matrix target = Matrix::Zero(4, 4);
    for (int i = 0; i < 3; ++i) target += coeffs[i] * oracle_scaled_block(encs[i]);
    const BlockEncoding l = lcu(coeffs, encs);
    EXPECT_NEAR(l.alpha, 2.2, 1e-12);
    EXPECT_LE(verify(l, target), 1e-10);
}

TEST(BlockEncoding, WeightedPrepAmplitudes) {
    const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
    const StatePrepPair p = weighted_prep(w);
    EXPECT_DOUBLE_EQ(p.beta, 10.0);
    const Matrix u = oracle::circuit_matrix(p.prep_left);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::norm(u(j, 0)), w[j] / 10.0, 1e-14);
}

TEST(BlockEncoding, PrepareStateIncludesPhase) {
    std::mt19937 rng(32);
    for (std::size_t w = 1; w <= 5; ++w) {
        const oracle::Vec v = oracle::random_state(std::size_t{1} << w, rng);
        std::vector<Complex> amps(v.data(), v.data() + v.size());
        const Matrix u = oracle::circuit_matrix(prepare_state(amps));
        EXPECT_LT((u.col(0) - v).cwiseAbs().maxCoeff(), 1e-12) << "width " << w;
    }
}

TEST(BlockEncoding, PrepareStateSparse) {
    std::vector<Complex> amps(8, 0.0);
    amps[5] = Complex(0.0, -1.0);
    const Matrix u = oracle::circuit_matrix(prepare_state(amps));
    EXPECT_NEAR(std::abs(u(5, 0) - Complex(0.0, -1.0)), 0.0, 1e-14);
}

// ---------------------------------------------------------------- properties

TEST(BlockEncodingProperty, CompositionsVerifyAgainstComposedTargets) {
    std::mt19937 rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        const BlockEncoding A = random_encoding(1 + rep % 2, 1 + rep % 2, rng);
        const BlockEncoding B = random_encoding(1, A.s, rng);
        const BlockEncoding C2 = random_encoding(2, 1, rng);
        const Matrix a = oracle_scaled_block(A), b = oracle_scaled_block(B), c = oracle_scaled_block(C2);
        const BlockEncoding p = product(A, B);
        EXPECT_EQ(p.a, A.a + B.a);
        EXPECT_LE(verify(p, a * b), p.epsilon + 1e-9);
        const BlockEncoding t = tensor(A, C2);
        EXPECT_EQ(t.a, A.a + C2.a);
        EXPECT_LE(verify(t, oracle::kron(a, c)), t.epsilon + 1e-9);
        const BlockEncoding l = lcu({0.4, 0.6}, {A, B});
        EXPECT_LE(verify(l, 0.4 * a + 0.6 * b), l.epsilon + 1e-9);
    }
}

TEST(BlockEncodingProperty, Associativity) {
    std::mt19937 rng(34);
    const BlockEncoding A = random_encoding(1, 1, rng), B = random_encoding(1, 1, rng), C2 = random_encoding(1, 1, rng);
    EXPECT_LT((product(product(A, B), C2).scaled_block() - product(A, product(B, C2)).scaled_block()).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LT((tensor(tensor(A, B), C2).scaled_block() - tensor(A, tensor(B, C2)).scaled_block()).cwiseAbs().maxCoeff(),
              1e-12);
}

TEST(BlockEncodingProperty, TargetNormBoundedByAlpha) {
    std::mt19937 rng(35);
    for (int rep = 0; rep < 10; ++rep) {
        const BlockEncoding A = random_encoding(2, 2, rng);
        EXPECT_LE(spectral_norm(A.scaled_block()), A.alpha + A.epsilon + 1e-12);
    }
}
