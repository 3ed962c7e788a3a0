#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entsplit/decomp.hpp"
#include "entsplit/layout.hpp"
#include "entsplit/matrix.hpp"

namespace entsplit {

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kDensityPsdTol = 1e-9;

/// Normalized state vector over a labeled register.
class PureState {
public:
    PureState(std::vector<Complex> amplitudes, SubsystemLayout layout)
        : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
        if (amplitudes_.size() != layout_.total_dim())
            throw std::invalid_argument("PureState: amplitude count does not match layout");
        double norm_sq = 0.0;
        for (const auto& a : amplitudes_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("PureState: non-finite amplitude");
            norm_sq += std::norm(a);
        }
        if (std::abs(norm_sq - 1.0) > kNormalizationTol)
            throw std::invalid_argument("PureState: amplitudes are not normalized");
    }

    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const SubsystemLayout& layout() const { return layout_; }
    std::size_t dim() const { return amplitudes_.size(); }

    /// Column-vector view, for composing with matrix operations.
    ComplexMatrix column() const { return {dim(), 1, amplitudes_}; }

    Complex inner(const PureState& other) const {
        if (other.dim() != dim()) throw std::invalid_argument("PureState::inner: dimension mismatch");
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        return s;
    }

private:
    std::vector<Complex> amplitudes_;
    SubsystemLayout layout_;
};

/// Trace-one positive-semidefinite Hermitian matrix over a labeled register.
/// All invariants are enforced at construction.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout)
        : matrix_(std::move(matrix)), layout_(std::move(layout)) {
        if (!matrix_.is_square() || matrix_.rows() != layout_.total_dim())
            throw std::invalid_argument("DensityMatrix: matrix dimension does not match layout");
        if (!matrix_.is_finite())
            throw std::invalid_argument("DensityMatrix: non-finite entries");
        if (hermiticity_deviation(matrix_) > kHermitianTol)
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian within tolerance");
        if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
        if (min_eigenvalue(matrix_) < -kDensityPsdTol)
            throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const SubsystemLayout& layout() const { return layout_; }
    std::size_t dim() const { return matrix_.rows(); }

    /// Reduced state on the kept subsystems.
    DensityMatrix reduce(const std::vector<std::string>& keep) const {
        return {partial_trace(matrix_, layout_, keep), layout_.reduced(keep)};
    }

    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    ComplexMatrix matrix_;
    SubsystemLayout layout_;
};

/// Schmidt coefficients (alpha, beta) of a pure two-qubit state
/// alpha|01> - beta|10>, with |alpha|^2 + |beta|^2 = 1.
struct SchmidtParams {
    Complex alpha;
    Complex beta;

    double alpha_sq() const { return std::norm(alpha); }
    bool normalized() const {
        return std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= kNormalizationTol;
    }

    /// Real coefficients from the sweep parametrization |alpha|^2 = u.
    static SchmidtParams from_alpha_sq(double u) {
        if (u < 0.0 || u > 1.0)
            throw std::invalid_argument("SchmidtParams: alpha_sq must lie in [0, 1]");
        return {Complex{std::sqrt(u), 0.0}, Complex{std::sqrt(1.0 - u), 0.0}};
    }
};

inline SubsystemLayout two_qubit_layout() {
    return {{"A", "B1"}, {2, 2}};
}

enum class Bell { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

/// The four Bell states on (A, B1):
///   |Psi+-> = (|01> +- |10>)/sqrt(2),  |Phi+-> = (|00> +- |11>)/sqrt(2).
inline PureState bell_state(Bell which) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amp(4, Complex{0.0, 0.0});
    switch (which) {
        case Bell::PsiMinus: amp[1] = r; amp[2] = -r; break;
        case Bell::PsiPlus:  amp[1] = r; amp[2] = r;  break;
        case Bell::PhiMinus: amp[0] = r; amp[3] = -r; break;
        case Bell::PhiPlus:  amp[0] = r; amp[3] = r;  break;
    }
    return {std::move(amp), two_qubit_layout()};
}

/// Schmidt-form pure state alpha|01> - beta|10> on (A, B1). Every pure
/// two-qubit state can be brought to this form by local basis choices.
inline PureState schmidt_state(const SchmidtParams& p) {
    if (!p.normalized())
        throw std::invalid_argument("schmidt_state: |alpha|^2 + |beta|^2 must be 1");
    return {{Complex{0.0, 0.0}, p.alpha, -p.beta, Complex{0.0, 0.0}}, two_qubit_layout()};
}

/// Outer product |s><s|.
inline DensityMatrix to_density(const PureState& s) {
    const std::size_t n = s.dim();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = s.amplitudes()[r] * std::conj(s.amplitudes()[c]);
    return {std::move(m), s.layout()};
}

/// Werner state: singlet with weight fw, the other three Bell projectors
/// with equal weights (1 - fw)/3. Built by explicit projector sums in the
/// computational basis.
inline DensityMatrix werner_state(double fw) {
    if (fw < 0.0 || fw > 1.0) throw std::invalid_argument("werner_state: fw must lie in [0, 1]");
    const double rest = (1.0 - fw) / 3.0;
    ComplexMatrix m(4, 4);
    const Bell others[] = {Bell::PsiPlus, Bell::PhiPlus, Bell::PhiMinus};
    m = Complex{fw, 0.0} * to_density(bell_state(Bell::PsiMinus)).matrix();
    for (Bell b : others) m = m + Complex{rest, 0.0} * to_density(bell_state(b)).matrix();
    return {std::move(m), two_qubit_layout()};
}

}  // namespace entsplit
