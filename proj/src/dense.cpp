#include "oscsim/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace oscsim {

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const double fro = m.norm();
    if (fro == 0.0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix hermitian_function(const Matrix& h, const std::function<Complex(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& vals = es.eigenvalues();
    Vector d(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) d(i) = f(vals(i));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix expm_hermitian(const Matrix& h, double t) {
    return hermitian_function(h, [t](double x) { return std::exp(Complex(0.0, -x * t)); });
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Matrix shift_matrix(std::size_t n) {
    Matrix l = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j) l((j + 1) % n, j) = 1.0;
    return l;
}

double fidelity(const Vector& a, const Vector& b) {
    const double na = a.squaredNorm(), nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace oscsim
