#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "entsplit/matrix.hpp"

namespace entsplit {

// Tolerances used by the decomposition layer. All inputs in this library are
// analytically exact, so these only absorb floating-point rounding.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kReconstructTol = 1e-9;
inline constexpr double kPsdClampTol = 1e-10;

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
    return m;
}

}  // namespace detail

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, matching eigenvalue order
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come back real and
/// ascending; reconstruction V diag(w) V^dagger matches the input within
/// kReconstructTol.
inline HermitianEig eig_hermitian(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("eig_hermitian: matrix must be square");
    if (hermiticity_deviation(m) > kHermitianTol)
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(m));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

    HermitianEig result;
    result.eigenvalues.assign(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
    result.eigenvectors = detail::from_eigen(solver.eigenvectors());
    return result;
}

/// Eigenvalue multiset of a general square matrix.
inline std::vector<Complex> eig_general(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("eig_general: matrix must be square");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(m), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_general: eigensolver failed to converge");

    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

/// Hermitian PSD square root. Eigenvalues in [-kPsdClampTol, 0) are treated
/// as rounding noise and clamped to zero; anything lower is an error.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    HermitianEig eig = eig_hermitian(m);
    for (double& w : eig.eigenvalues) {
        if (w < -kPsdClampTol)
            throw std::invalid_argument("sqrt_psd: matrix has a negative eigenvalue beyond tolerance");
        w = w < 0.0 ? 0.0 : w;
    }

    const std::size_t n = m.rows();
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix scaled(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) = v(r, c) * std::sqrt(eig.eigenvalues[c]);
    return scaled * v.dagger();
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const ComplexMatrix& m) {
    return eig_hermitian(m).eigenvalues.front();
}

}  // namespace entsplit
