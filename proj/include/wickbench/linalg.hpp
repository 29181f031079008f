#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace wickbench {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Smallest eigenvalue of a real symmetric matrix (only the lower triangle is read).
inline double min_eigenvalue(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("min_eigenvalue: matrix is not square");
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigen solver failed");
    return es.eigenvalues().minCoeff();
}

inline double min_eigenvalue(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("min_eigenvalue: matrix is not square");
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigen solver failed");
    return es.eigenvalues().minCoeff();
}

/// Entrywise (Schur) product.
inline RealMatrix hadamard(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("hadamard: shape mismatch");
    return a.cwiseProduct(b);
}

}  // namespace wickbench
