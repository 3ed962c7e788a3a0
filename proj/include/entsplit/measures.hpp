#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "entsplit/decomp.hpp"
#include "entsplit/layout.hpp"
#include "entsplit/matrix.hpp"
#include "entsplit/states.hpp"

namespace entsplit {

// Decision threshold for the partial-transpose test. Analytic boundary cases
// land exactly at zero up to rounding, so a thin band below zero is still
// reported separable, with a boundary flag.
inline constexpr double kPptDecisionTol = 1e-9;
inline constexpr double kXiImagTol = 1e-8;
inline constexpr double kXiNegTol = 1e-10;

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 4 || rho.layout().size() != 2)
        throw std::invalid_argument(std::string(who) + ": expected a two-qubit density matrix");
}

}  // namespace detail

/// Spectrum of the partial transpose plus the separability verdict.
/// For two qubits the positivity of the partial transpose is necessary and
/// sufficient for separability.
struct PptResult {
    std::array<double, 4> eigenvalues;  // ascending
    bool entangled;
    bool boundary;  // minimum eigenvalue in [-tol, 0): separable up to rounding

    double min_eigenvalue() const { return eigenvalues.front(); }
};

inline PptResult ppt_check(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "ppt_check");
    // Either subsystem gives the same spectrum; transpose the second.
    const ComplexMatrix pt =
        partial_transpose(rho.matrix(), rho.layout(), rho.layout().labels()[1]);
    const auto eig = eig_hermitian(pt);

    PptResult r{};
    std::copy(eig.eigenvalues.begin(), eig.eigenvalues.end(), r.eigenvalues.begin());
    double sum = 0.0;
    for (double w : r.eigenvalues) sum += w;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::runtime_error("ppt_check: partial transpose does not preserve the trace");
    r.entangled = r.eigenvalues.front() < -kPptDecisionTol;
    r.boundary = !r.entangled && r.eigenvalues.front() < 0.0;
    return r;
}

/// Entanglement of formation as a function of concurrence:
///   E = h((1 + sqrt(1 - C^2))/2),  h the binary entropy, 0 log 0 = 0.
inline double eof_from_concurrence(double c) {
    if (c < 0.0 || c > 1.0 + 1e-12)
        throw std::invalid_argument("eof_from_concurrence: concurrence must lie in [0, 1]");
    c = std::min(c, 1.0);
    const double x = 0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - c * c));
    auto plog2 = [](double p) { return p > 0.0 ? p * std::log2(p) : 0.0; };
    return -plog2(x) - plog2(1.0 - x);
}

/// Concurrence, its spin-flip spectrum, and the entanglement of formation.
struct EntanglementReport {
    double concurrence;
    double eof;
    std::array<double, 4> xi;  // descending, clamped to be real nonnegative
};

/// Wootters concurrence: xi_i are the eigenvalues of
/// rho (sigma_y x sigma_y) rho^* (sigma_y x sigma_y), sorted descending,
/// and C = max(0, sqrt(xi_1) - sqrt(xi_2) - sqrt(xi_3) - sqrt(xi_4)).
inline EntanglementReport concurrence(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "concurrence");
    const ComplexMatrix flip = tensor(sigma_y(), sigma_y());
    const ComplexMatrix product = rho.matrix() * (flip * rho.matrix().conjugate() * flip);

    auto raw = eig_general(product);
    EntanglementReport r{};
    for (std::size_t i = 0; i < 4; ++i) {
        // The product matrix is similar to a PSD matrix, so true spectra are
        // real nonnegative; anything else is rounding noise or an error.
        if (std::abs(raw[i].imag()) > kXiImagTol)
            throw std::runtime_error("concurrence: spin-flip spectrum has a complex eigenvalue");
        double x = raw[i].real();
        if (x < -kXiNegTol)
            throw std::runtime_error("concurrence: spin-flip spectrum has a negative eigenvalue");
        r.xi[i] = x < 0.0 ? 0.0 : x;
    }
    std::sort(r.xi.begin(), r.xi.end(), std::greater<>());

    const double s = std::sqrt(r.xi[0]) - std::sqrt(r.xi[1]) - std::sqrt(r.xi[2]) - std::sqrt(r.xi[3]);
    r.concurrence = std::max(0.0, s);
    r.eof = eof_from_concurrence(std::min(r.concurrence, 1.0));
    return r;
}

/// Pauli expansion of a two-qubit density matrix:
///   rho = (1/4)(1x1 + s1.sigma x 1 + 1 x s2.sigma + T_ij sigma_i x sigma_j).
struct TMatrix {
    std::array<std::array<double, 3>, 3> entries;  // basis {x, y, z}
    std::array<double, 3> bloch_a;
    std::array<double, 3> bloch_b;
};

inline TMatrix t_matrix(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "t_matrix");
    const ComplexMatrix paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
    const ComplexMatrix id = ComplexMatrix::identity(2);

    auto expect = [&rho](const ComplexMatrix& op) {
        const Complex v = (rho.matrix() * op).trace();
        if (std::abs(v.imag()) > 1e-10)
            throw std::runtime_error("t_matrix: Pauli expectation came out complex");
        return v.real();
    };

    TMatrix t{};
    for (std::size_t i = 0; i < 3; ++i) {
        t.bloch_a[i] = expect(tensor(paulis[i], id));
        t.bloch_b[i] = expect(tensor(id, paulis[i]));
        for (std::size_t j = 0; j < 3; ++j) {
            t.entries[i][j] = expect(tensor(paulis[i], paulis[j]));
            if (std::abs(t.entries[i][j]) > 1.0 + 1e-9)
                throw std::runtime_error("t_matrix: correlation entry out of range");
        }
    }
    return t;
}

namespace detail {

inline ComplexMatrix t_gram(const TMatrix& t) {
    // T^dagger T for the real 3x3 correlation matrix.
    ComplexMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += t.entries[k][i] * t.entries[k][j];
            m(i, j) = s;
        }
    return m;
}

}  // namespace detail

/// Highest teleportation fidelity reachable with the state as the channel:
///   F_max = (1 + Tr sqrt(T^dagger T) / 3) / 2.
/// The channel beats the classical limit when F_max > 2/3.
inline double teleport_fidelity(const TMatrix& t) {
    const double tr = sqrt_psd(detail::t_gram(t)).trace().real();
    return 0.5 * (1.0 + tr / 3.0);
}

inline bool teleport_useful(const TMatrix& t) { return teleport_fidelity(t) > 2.0 / 3.0; }

/// Sum of the two largest eigenvalues of T^dagger T; a value above one
/// signals a CHSH violation.
inline double chsh_statistic(const TMatrix& t) {
    const auto eig = eig_hermitian(detail::t_gram(t));
    return eig.eigenvalues[1] + eig.eigenvalues[2];
}

}  // namespace entsplit
