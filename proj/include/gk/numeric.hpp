#pragma once

// Floating-point spot checks (Eigen) for the open conditions that exact
// arithmetic cannot decide: positivity of eigenvalues and numerical rank.
// Everything structural stays exact; these helpers only certify strict
// inequalities up to an explicit tolerance.

#include <Eigen/Dense>
#include <complex>

#include "gk/linalg.hpp"

namespace gk {

inline Eigen::MatrixXd to_real_eigen(const Mat<Scalar>& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).re_d();
    return m;
}

inline Eigen::MatrixXcd to_complex_eigen(const Mat<Scalar>& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m(i, j) = std::complex<double>(a(i, j).re_d(), a(i, j).im_d());
    return m;
}

// Smallest eigenvalue of a real symmetric matrix given as Scalar entries.
inline double min_symmetric_eigenvalue(const Mat<Scalar>& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_real_eigen(a));
    return es.eigenvalues().minCoeff();
}

// Numerical rank of a complex matrix by singular values above threshold.
inline int numeric_rank(const Eigen::MatrixXcd& m, double threshold) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > threshold) ++r;
    return r;
}

inline int numeric_rank(const Mat<Scalar>& a, double threshold) {
    return numeric_rank(to_complex_eigen(a), threshold);
}

}  // namespace gk
