#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entsplit/cloner.hpp"
#include "entsplit/measures.hpp"
#include "entsplit/states.hpp"

namespace entsplit {

inline constexpr double kWernerFormTol = 1e-9;
inline constexpr double kClosedFormTol = 1e-9;

/// Overlap <Psi^-|rho|Psi^->.
inline double singlet_fraction(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "singlet_fraction");
    const auto psi = bell_state(Bell::PsiMinus).amplitudes();
    Complex f{0.0, 0.0};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) f += std::conj(psi[r]) * rho.matrix()(r, c) * psi[c];
    return f.real();
}

/// Asserts that rho is a Werner state (Bell-diagonal with three equal
/// non-singlet weights) within tol and returns its singlet weight F_W.
inline double werner_fraction(const DensityMatrix& rho, double tol = kWernerFormTol) {
    detail::require_two_qubits(rho, "werner_fraction");
    const Bell order[4] = {Bell::PsiMinus, Bell::PsiPlus, Bell::PhiPlus, Bell::PhiMinus};
    ComplexMatrix basis(4, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        const auto amp = bell_state(order[c]).amplitudes();
        for (std::size_t r = 0; r < 4; ++r) basis(r, c) = amp[r];
    }
    const ComplexMatrix in_bell = basis.dagger() * rho.matrix() * basis;

    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c && std::abs(in_bell(r, c)) > tol)
                throw std::runtime_error("werner_fraction: state is not Bell-diagonal");
    for (std::size_t i = 2; i < 4; ++i)
        if (std::abs(in_bell(i, i) - in_bell(1, 1)) > tol)
            throw std::runtime_error("werner_fraction: non-singlet weights are not equal");
    return in_bell(0, 0).real();
}

/// Singlet weight of the split output predicted from the transformation
/// coefficients alone: F_W = [3(|a|^2 - |c|^2) + 1] / 4.
inline double werner_fraction_formula(const CloneTransform& t) {
    return (3.0 * (std::norm(t.a()) - std::norm(t.c())) + 1.0) / 4.0;
}

/// F_W of a Werner channel expressed through the cloning fidelity:
/// F_W = (3 F_C - 1) / 2.
inline double werner_fraction_from_cloning(double f_c) { return (3.0 * f_c - 1.0) / 2.0; }

/// |alpha|^2 interval in which the split branches still beat classical
/// teleportation: (1 -+ sqrt(3(2N+1))/(N+2)) / 2.
struct WindowBounds {
    double alpha_sq_min;
    double alpha_sq_max;

    double half_width() const { return (alpha_sq_max - alpha_sq_min) / 2.0; }
};

inline WindowBounds teleport_window(std::size_t n) {
    if (n < 2) throw std::invalid_argument("teleport_window: need at least two branches");
    const double nn = static_cast<double>(n);
    const double x = std::sqrt(3.0 * (2.0 * nn + 1.0)) / (nn + 2.0);
    return {0.5 * (1.0 - x), 0.5 * (1.0 + x)};
}

/// Closed form of the reduced state of Alice and any one of the N branches
/// after splitting alpha|01> - beta|10> with the optimal 1->N cloner.
inline DensityMatrix n_branch_state(const SchmidtParams& p, std::size_t n) {
    if (n < 2) throw std::invalid_argument("n_branch_state: need at least two branches");
    if (!p.normalized())
        throw std::invalid_argument("n_branch_state: |alpha|^2 + |beta|^2 must be 1");
    const double nn = static_cast<double>(n);
    const double asq = std::norm(p.alpha), bsq = std::norm(p.beta);
    const Complex ab = p.alpha * std::conj(p.beta);
    const double scale = 1.0 / (3.0 * nn);

    ComplexMatrix m(4, 4);
    m(0, 0) = scale * (nn - 1.0) * asq;
    m(1, 1) = scale * (2.0 * nn + 1.0) * asq;
    m(2, 2) = scale * (2.0 * nn + 1.0) * bsq;
    m(3, 3) = scale * (nn - 1.0) * bsq;
    m(1, 2) = -scale * (nn + 2.0) * ab;
    m(2, 1) = -scale * (nn + 2.0) * std::conj(ab);
    return {std::move(m), two_qubit_layout()};
}

/// All diagnostics of one splitting run.
struct SplitReport {
    Complex alpha;
    Complex beta;
    std::size_t n_branches;
    double f_w;  // singlet fraction of the (A, B1) reduction
    PptResult ppt;
    EntanglementReport ent;
    double f_max;
    double chsh;
    bool teleport_ok;
    WindowBounds window;
};

namespace detail {

inline SplitReport make_report(const DensityMatrix& rho_ab, const SchmidtParams& p, std::size_t n) {
    SplitReport r{};
    r.alpha = p.alpha;
    r.beta = p.beta;
    r.n_branches = n;
    r.f_w = singlet_fraction(rho_ab);
    r.ppt = ppt_check(rho_ab);
    r.ent = concurrence(rho_ab);
    const TMatrix t = t_matrix(rho_ab);
    r.f_max = teleport_fidelity(t);
    r.chsh = chsh_statistic(t);
    r.teleport_ok = r.f_max > 2.0 / 3.0;
    r.window = teleport_window(n);
    return r;
}

}  // namespace detail

/// Splits the singlet with the given transformation. The (A, B1) reduction
/// must come out as a Werner state whose F_W agrees with the coefficient
/// formula; both are enforced.
inline SplitReport split_singlet(const CloneTransform& t) {
    const ConstraintReport constraints = check_constraints(t);
    if (!constraints.all_pass)
        throw std::invalid_argument("split_singlet: transformation violates the symmetry constraints");

    const DensityMatrix out = apply_split(to_density(bell_state(Bell::PsiMinus)), t);
    const DensityMatrix reduced = out.reduce({"A", "B1"});

    const double fw_sim = werner_fraction(reduced, kWernerFormTol);
    const double fw_formula = werner_fraction_formula(t);
    if (std::abs(fw_sim - fw_formula) > 1e-9)
        throw std::runtime_error("split_singlet: simulated F_W disagrees with the coefficient formula");

    const double r = 1.0 / std::sqrt(2.0);
    SplitReport report = detail::make_report(reduced, {Complex{r, 0.0}, Complex{r, 0.0}}, 2);
    report.f_w = fw_sim;
    return report;
}

/// Splits a Schmidt-form pure state with the optimal cloner and reports all
/// diagnostics of the (A, B1) reduction. The simulated reduction is checked
/// against its closed form entrywise.
inline SplitReport split_schmidt(const SchmidtParams& p) {
    const DensityMatrix out = apply_split(to_density(schmidt_state(p)), optimal_cloner());
    const DensityMatrix reduced = out.reduce({"A", "B1"});

    if (max_abs_diff(reduced.matrix(), n_branch_state(p, 2).matrix()) > kClosedFormTol)
        throw std::runtime_error("split_schmidt: reduction deviates from its closed form");
    return detail::make_report(reduced, p, 2);
}

/// N-branch splitting via the closed-form reduced state. For n = 2 the
/// closed form is cross-checked against the full simulation.
inline SplitReport split_n_branch(const SchmidtParams& p, std::size_t n) {
    if (n < 2) throw std::invalid_argument("split_n_branch: need at least two branches");
    const DensityMatrix rho = n_branch_state(p, n);
    if (n == 2) {
        const DensityMatrix sim =
            apply_split(to_density(schmidt_state(p)), optimal_cloner()).reduce({"A", "B1"});
        if (max_abs_diff(rho.matrix(), sim.matrix()) > kClosedFormTol)
            throw std::runtime_error("split_n_branch: closed form disagrees with simulation");
    }
    return detail::make_report(rho, p, n);
}

/// PPT verdict for one unordered pair of subsystems of the post-split state.
struct PairStatus {
    std::string first;
    std::string second;
    double ppt_min;
    bool entangled;
};

using PairwiseMap = std::vector<PairStatus>;

/// PPT check on all six two-qubit reductions of the four-qubit state
/// produced by splitting a Schmidt-form input with the optimal cloner.
inline PairwiseMap pairwise_entanglement(const SchmidtParams& p) {
    const DensityMatrix out = apply_split(to_density(schmidt_state(p)), optimal_cloner());
    const std::vector<std::string> labels = {"A", "B1", "B2", "anc"};

    PairwiseMap map;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            const PptResult r = ppt_check(out.reduce({labels[i], labels[j]}));
            map.push_back({labels[i], labels[j], r.min_eigenvalue(), r.entangled});
        }
    return map;
}

/// Applies the optimal cloner to a Werner input and reports whether the
/// (A, B1) output is separable. Mixed-state entanglement does not always
/// survive the splitting even when the input is entangled.
inline std::pair<DensityMatrix, bool> split_werner_input(double fw_in) {
    const DensityMatrix out = apply_split(werner_state(fw_in), optimal_cloner());
    DensityMatrix reduced = out.reduce({"A", "B1"});
    const bool separable = !ppt_check(reduced).entangled;
    return {std::move(reduced), separable};
}

// --- optimality probe ---------------------------------------------------

/// Member of the constraint manifold parametrized by (|a|, |c|): b follows
/// from normalization and the ancilla overlap g = (a^2 - c^2)/(2ab) is tuned
/// so that every symmetry constraint holds exactly. Requires |g| <= 1.
inline CloneTransform probe_family_transform(double a, double c) {
    if (a < 0.0 || c < 0.0 || a * a + c * c >= 1.0)
        throw std::invalid_argument("probe_family_transform: need a, c >= 0 with a^2 + c^2 < 1");
    const double b = std::sqrt((1.0 - a * a - c * c) / 2.0);

    double g = 0.0;
    const double denom = 2.0 * a * b;
    if (denom < 1e-12) {
        if (std::abs(a * a - c * c) > 1e-12)
            throw std::invalid_argument("probe_family_transform: point admits no valid overlap");
    } else {
        // |g| may poke past 1 by rounding; what matters is that clamping it
        // keeps the residual of the overlap constraint below tolerance.
        if (std::abs(a * a - c * c) - denom > 1e-10)
            throw std::invalid_argument("probe_family_transform: point admits no valid overlap");
        g = std::clamp((a * a - c * c) / denom, -1.0, 1.0);
    }
    const double h = std::sqrt(std::max(0.0, 1.0 - g * g));

    SubsystemLayout anc({"anc"}, {4});
    auto ket = [&anc](std::vector<Complex> v) { return PureState(std::move(v), anc); };
    PureState ket_a = ket({1.0, 0.0, 0.0, 0.0});
    PureState ket_b = ket({0.0, 1.0, 0.0, 0.0});
    PureState ket_c = ket({0.0, 0.0, 1.0, 0.0});
    PureState ket_bt = ket({g, 0.0, 0.0, h});
    PureState ket_at = ket({-h * h, g, 0.0, g * h});
    PureState ket_ct = ket({0.0, 0.0, 1.0, 0.0});

    return {Complex{a, 0.0}, Complex{b, 0.0}, Complex{c, 0.0},
            Complex{a, 0.0}, Complex{b, 0.0}, Complex{c, 0.0},
            ket_a, ket_b, ket_c, ket_at, ket_bt, ket_ct};
}

namespace detail {

inline bool probe_point_feasible(double a, double c) {
    const double bsq = (1.0 - a * a - c * c) / 2.0;
    if (bsq <= 0.0) return false;
    return std::abs(a * a - c * c) <= 2.0 * a * std::sqrt(bsq) + 1e-12;
}

/// Deterministic projection of (a, c) onto the feasible region: bisect
/// toward the diagonal a = c, which always satisfies the overlap bound.
inline std::pair<double, double> project_probe_point(double a, double c) {
    if (probe_point_feasible(a, c)) return {a, c};
    const double m = 0.45 * (a + c);  // interior diagonal point, away from b = 0
    double lo = 0.0, hi = 1.0;       // blend factor toward the diagonal
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double am = a + mid * (m - a), cm = c + mid * (m - c);
        if (probe_point_feasible(am, cm))
            hi = mid;
        else
            lo = mid;
    }
    return {a + hi * (m - a), c + hi * (m - c)};
}

}  // namespace detail

struct ProbeResult {
    double max_f_w;
    double min_f_w;
    double best_a;
    double best_c;
    std::size_t trials;
};

/// Random search over constraint-satisfying transformations. The sample set
/// always contains the optimal-cloner point and the singlet-erasing boundary
/// point; everything else is drawn from the seeded generator and projected
/// onto the feasible region. Every sample goes through the full simulation.
inline ProbeResult probe_scan(std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("probe_scan: need at least one trial");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    ProbeResult result{-1.0, 2.0, 0.0, 0.0, trials};
    auto evaluate = [&result](double a, double c) {
        const SplitReport report = split_singlet(probe_family_transform(a, c));
        if (report.f_w > result.max_f_w) {
            result.max_f_w = report.f_w;
            result.best_a = a;
            result.best_c = c;
        }
        result.min_f_w = std::min(result.min_f_w, report.f_w);
    };

    for (std::size_t trial = 0; trial < trials; ++trial) {
        if (trial == 0) {
            evaluate(std::sqrt(2.0 / 3.0), 0.0);  // the optimal cloner
        } else if (trial == 1) {
            // Boundary transform that erases the singlet: F_W = 0, F_C = 1/3.
            evaluate(1.0 / std::sqrt(6.0), 1.0 / std::sqrt(2.0));
        } else {
            const double asq = unit(rng);
            const double csq = unit(rng) * (1.0 - asq) * 0.999;
            const auto [a, c] = detail::project_probe_point(std::sqrt(asq), std::sqrt(csq));
            evaluate(a, c);
        }
    }
    return result;
}

/// Maximum F_W found by the random search; never exceeds 3/4.
inline double optimality_probe(std::size_t trials, std::uint64_t seed) {
    return probe_scan(trials, seed).max_f_w;
}

}  // namespace entsplit
