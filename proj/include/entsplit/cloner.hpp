#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entsplit/layout.hpp"
#include "entsplit/matrix.hpp"
#include "entsplit/states.hpp"

namespace entsplit {

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kConstraintTol = 1e-9;

/// Symmetric local transformation on (B1, B2, anc), given by its action on
/// the two basis states of B1 (B2 and the ancilla start in |0>):
///
///   U |0>|0>|0..0> = a|00>|A>  + b(|01>+|10>)|B>  + c|11>|C>
///   U |1>|0>|0..0> = a~|11>|A~> + b~(|10>+|01>)|B~> + c~|00>|C~>
///
/// The six ancilla kets share a common dimension anc_dim. Construction
/// enforces unitarity on the acted-on subspace: both image vectors are
/// normalized and mutually orthogonal.
class CloneTransform {
public:
    CloneTransform(Complex a, Complex b, Complex c, Complex a_t, Complex b_t, Complex c_t,
                   PureState anc_A, PureState anc_B, PureState anc_C, PureState anc_A_t,
                   PureState anc_B_t, PureState anc_C_t)
        : a_(a), b_(b), c_(c), a_t_(a_t), b_t_(b_t), c_t_(c_t),
          anc_A_(std::move(anc_A)), anc_B_(std::move(anc_B)), anc_C_(std::move(anc_C)),
          anc_A_t_(std::move(anc_A_t)), anc_B_t_(std::move(anc_B_t)), anc_C_t_(std::move(anc_C_t)) {
        anc_dim_ = anc_A_.dim();
        for (const PureState* k : {&anc_B_, &anc_C_, &anc_A_t_, &anc_B_t_, &anc_C_t_})
            if (k->dim() != anc_dim_)
                throw std::invalid_argument("CloneTransform: ancilla kets must share one dimension");

        const auto v0 = image_amplitudes(0);
        const auto v1 = image_amplitudes(1);
        double n0 = 0.0, n1 = 0.0;
        Complex overlap{0.0, 0.0};
        for (std::size_t i = 0; i < v0.size(); ++i) {
            n0 += std::norm(v0[i]);
            n1 += std::norm(v1[i]);
            overlap += std::conj(v0[i]) * v1[i];
        }
        if (std::abs(n0 - 1.0) > kUnitarityTol || std::abs(n1 - 1.0) > kUnitarityTol)
            throw std::invalid_argument("CloneTransform: image vectors are not normalized");
        if (std::abs(overlap) > kUnitarityTol)
            throw std::invalid_argument("CloneTransform: image vectors are not orthogonal");
    }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex a_tilde() const { return a_t_; }
    Complex b_tilde() const { return b_t_; }
    Complex c_tilde() const { return c_t_; }

    const PureState& anc_A() const { return anc_A_; }
    const PureState& anc_B() const { return anc_B_; }
    const PureState& anc_C() const { return anc_C_; }
    const PureState& anc_A_tilde() const { return anc_A_t_; }
    const PureState& anc_B_tilde() const { return anc_B_t_; }
    const PureState& anc_C_tilde() const { return anc_C_t_; }

    std::size_t anc_dim() const { return anc_dim_; }

    SubsystemLayout branch_layout() const {
        return {{"B1", "B2", "anc"}, {2, 2, anc_dim_}};
    }

    /// Raw amplitudes of U|branch>|0>|0..0> on (B1, B2, anc).
    std::vector<Complex> image_amplitudes(int branch) const {
        const std::size_t d = anc_dim_;
        std::vector<Complex> v(4 * d, Complex{0.0, 0.0});
        auto idx = [d](std::size_t b1, std::size_t b2, std::size_t k) {
            return b1 * 2 * d + b2 * d + k;
        };
        if (branch == 0) {
            for (std::size_t k = 0; k < d; ++k) {
                v[idx(0, 0, k)] += a_ * anc_A_.amplitudes()[k];
                v[idx(0, 1, k)] += b_ * anc_B_.amplitudes()[k];
                v[idx(1, 0, k)] += b_ * anc_B_.amplitudes()[k];
                v[idx(1, 1, k)] += c_ * anc_C_.amplitudes()[k];
            }
        } else {
            for (std::size_t k = 0; k < d; ++k) {
                v[idx(1, 1, k)] += a_t_ * anc_A_t_.amplitudes()[k];
                v[idx(1, 0, k)] += b_t_ * anc_B_t_.amplitudes()[k];
                v[idx(0, 1, k)] += b_t_ * anc_B_t_.amplitudes()[k];
                v[idx(0, 0, k)] += c_t_ * anc_C_t_.amplitudes()[k];
            }
        }
        return v;
    }

private:
    Complex a_, b_, c_, a_t_, b_t_, c_t_;
    PureState anc_A_, anc_B_, anc_C_, anc_A_t_, anc_B_t_, anc_C_t_;
    std::size_t anc_dim_;
};

/// The two explicit output vectors on (B1, B2, anc).
inline std::pair<PureState, PureState> image_vectors(const CloneTransform& t) {
    return {PureState(t.image_amplitudes(0), t.branch_layout()),
            PureState(t.image_amplitudes(1), t.branch_layout())};
}

/// Residuals of the seven isotropy/symmetry constraints. A transform whose
/// residuals all vanish maps the singlet onto a Werner state on (A, B1).
struct ConstraintReport {
    std::array<double, 7> residuals;
    std::array<bool, 7> pass;
    bool all_pass;

    static const char* name(std::size_t i) {
        static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
        return names[i];
    }
};

inline ConstraintReport check_constraints(const CloneTransform& t) {
    const Complex a = t.a(), b = t.b(), c = t.c();
    const Complex at = t.a_tilde(), bt = t.b_tilde(), ct = t.c_tilde();
    auto ip = [](const PureState& x, const PureState& y) { return x.inner(y); };

    const double lhs_ac = std::norm(a) - std::norm(c);
    const Complex mix = std::conj(bt) * a * ip(t.anc_B_tilde(), t.anc_A()) +
                        std::conj(at) * b * ip(t.anc_A_tilde(), t.anc_B());

    ConstraintReport r{};
    r.residuals[0] = std::abs(lhs_ac - (std::norm(at) - std::norm(ct)));
    r.residuals[1] = std::abs(lhs_ac - mix.real());
    r.residuals[2] = std::abs(mix.imag());
    r.residuals[3] = std::abs(std::conj(b) * ct * ip(t.anc_B(), t.anc_C_tilde()) +
                              std::conj(c) * bt * ip(t.anc_C(), t.anc_B_tilde()));
    r.residuals[4] = std::abs(std::conj(b) * a * ip(t.anc_B(), t.anc_A()) +
                              std::conj(c) * b * ip(t.anc_C(), t.anc_B()));
    r.residuals[5] = std::abs(std::conj(bt) * at * ip(t.anc_B_tilde(), t.anc_A_tilde()) +
                              std::conj(ct) * bt * ip(t.anc_C_tilde(), t.anc_B_tilde()));
    // (vii) differs from its quantum-cloning counterpart; keep both sides explicit.
    const Complex vii_lhs = std::conj(ct) * a * ip(t.anc_C_tilde(), t.anc_A()) -
                            at * std::conj(c) * ip(t.anc_C(), t.anc_A_tilde());
    const Complex vii_rhs = bt * std::conj(b) * ip(t.anc_B(), t.anc_B_tilde()) -
                            b * std::conj(bt) * ip(t.anc_B_tilde(), t.anc_B());
    r.residuals[6] = std::abs(vii_lhs - vii_rhs);

    r.all_pass = true;
    for (std::size_t i = 0; i < 7; ++i) {
        r.pass[i] = r.residuals[i] <= kConstraintTol;
        r.all_pass = r.all_pass && r.pass[i];
    }
    return r;
}

/// Full unitary on B1 x B2 x anc whose first acted-on columns reproduce the
/// two image vectors. Remaining columns are completed by deterministic
/// Gram-Schmidt over the standard basis in index order; the completion never
/// affects results because the initial state fixes the acted-on subspace.
inline ComplexMatrix as_unitary(const CloneTransform& t) {
    const std::size_t d = t.anc_dim();
    const std::size_t dim = 4 * d;
    const std::size_t col0 = 0;        // index of |0>|0>|0..0>
    const std::size_t col1 = 2 * d;    // index of |1>|0>|0..0>

    ComplexMatrix u(dim, dim);
    std::vector<std::vector<Complex>> cols;
    cols.reserve(dim);

    auto assign = [&u](std::size_t col, const std::vector<Complex>& v) {
        for (std::size_t r = 0; r < v.size(); ++r) u(r, col) = v[r];
    };

    const auto v0 = t.image_amplitudes(0);
    const auto v1 = t.image_amplitudes(1);
    assign(col0, v0);
    assign(col1, v1);
    cols.push_back(v0);
    cols.push_back(v1);

    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < dim; ++j)
        if (j != col0 && j != col1) free_cols.push_back(j);

    std::size_t next_free = 0;
    for (std::size_t cand = 0; cand < dim && next_free < free_cols.size(); ++cand) {
        std::vector<Complex> v(dim, Complex{0.0, 0.0});
        v[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) {
                Complex proj{0.0, 0.0};
                for (std::size_t r = 0; r < dim; ++r) proj += std::conj(q[r]) * v[r];
                for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * q[r];
            }
        }
        double norm_sq = 0.0;
        for (const auto& x : v) norm_sq += std::norm(x);
        if (norm_sq < 1e-12) continue;  // candidate lies in the span already
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& x : v) x *= inv;
        assign(free_cols[next_free++], v);
        cols.push_back(std::move(v));
    }
    if (next_free != free_cols.size())
        throw std::runtime_error("as_unitary: orthonormal completion failed");

    if (max_abs_diff(u.dagger() * u, ComplexMatrix::identity(dim)) > 1e-9)
        throw std::runtime_error("as_unitary: completion is not unitary");
    return u;
}

/// (1_A x U)(rho x |0><0|_B2 x |0..0><0..0|_anc)(1_A x U)^dagger
/// on the output register (A, B1, B2, anc).
inline DensityMatrix apply_split(const DensityMatrix& input, const CloneTransform& t) {
    if (input.dim() != 4 || input.layout().size() != 2)
        throw std::invalid_argument("apply_split: input must be a two-qubit state");

    const std::size_t d = t.anc_dim();
    ComplexMatrix blank(2, 2);
    blank(0, 0) = 1.0;
    ComplexMatrix anc0(d, d);
    anc0(0, 0) = 1.0;

    const ComplexMatrix rho_full = tensor(tensor(input.matrix(), blank), anc0);
    const ComplexMatrix u_full = tensor(ComplexMatrix::identity(2), as_unitary(t));
    ComplexMatrix out = u_full * rho_full * u_full.dagger();

    const auto& in_labels = input.layout().labels();
    SubsystemLayout out_layout({in_labels[0], in_labels[1], "B2", "anc"}, {2, 2, 2, d});
    return {std::move(out), std::move(out_layout)};
}

/// Fidelity <psi|rho_clone|psi> of the B1 clone, averaged over the six axis
/// states of the Bloch sphere.
inline double cloning_fidelity(const CloneTransform& t) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    const std::vector<std::vector<Complex>> axis_states = {
        {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}, {r, i * r}, {r, -i * r}};

    const ComplexMatrix u = as_unitary(t);
    const SubsystemLayout layout = t.branch_layout();
    double total = 0.0;
    for (const auto& psi : axis_states) {
        // |psi>_B1 |0>_B2 |0..0>_anc, then U.
        std::vector<Complex> in(4 * t.anc_dim(), Complex{0.0, 0.0});
        in[0] = psi[0];
        in[2 * t.anc_dim()] = psi[1];
        const ComplexMatrix out = u * ComplexMatrix(in.size(), 1, in);
        const ComplexMatrix rho = out * out.dagger();
        const ComplexMatrix clone = partial_trace(rho, layout, {"B1"});
        Complex f{0.0, 0.0};
        for (std::size_t r1 = 0; r1 < 2; ++r1)
            for (std::size_t c1 = 0; c1 < 2; ++c1)
                f += std::conj(psi[r1]) * clone(r1, c1) * psi[c1];
        total += f.real();
    }
    return total / static_cast<double>(axis_states.size());
}

/// Optimal symmetric cloner: a = sqrt(2/3), b = sqrt(1/6), c = 0 with a
/// single ancilla qubit. Splits the singlet into the F_W = 3/4 Werner state.
inline CloneTransform optimal_cloner() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 6.0);
    SubsystemLayout anc({"anc"}, {2});
    PureState k0({1.0, 0.0}, anc), k1({0.0, 1.0}, anc);
    return {Complex{a, 0.0}, Complex{b, 0.0}, Complex{0.0, 0.0},
            Complex{a, 0.0}, Complex{b, 0.0}, Complex{0.0, 0.0},
            k0, k1, k0, k1, k0, k1};
}

/// Isotropic but suboptimal cloner with F_C = 3/4. Needs a two-qubit
/// ancilla; the reduced ancilla overlaps make up for the changed
/// coefficients.
inline CloneTransform bad_cloner() {
    const double r = 1.0 / std::sqrt(2.0);
    SubsystemLayout anc({"anc"}, {4});
    auto ket = [&anc](std::vector<Complex> v) { return PureState(std::move(v), anc); };
    PureState k00 = ket({1.0, 0.0, 0.0, 0.0});
    PureState k10 = ket({0.0, 0.0, 1.0, 0.0});
    PureState k0plus = ket({r, r, 0.0, 0.0});   // |0>(|0>+|1>)/sqrt(2)
    PureState k1plus = ket({0.0, 0.0, r, r});   // |1>(|0>+|1>)/sqrt(2)
    PureState k01 = ket({0.0, 1.0, 0.0, 0.0});
    PureState k11 = ket({0.0, 0.0, 0.0, 1.0});
    return {Complex{r, 0.0},   Complex{0.5, 0.0}, Complex{0.0, 0.0},
            Complex{r, 0.0},   Complex{0.5, 0.0}, Complex{0.0, 0.0},
            k00, k10, k01, k1plus, k0plus, k11};
}

// --- JSON serialization ------------------------------------------------
//
// Complex numbers are [re, im] pairs, ancilla kets are arrays of such
// pairs. Schema:
// {
//   "anc_dim": 2,
//   "coefficients": {"a": [re,im], "b": ..., "c": ...,
//                    "a_tilde": ..., "b_tilde": ..., "c_tilde": ...},
//   "ancillas": {"A": [[re,im], ...], "B": ..., "C": ...,
//                "A_tilde": ..., "B_tilde": ..., "C_tilde": ...}
// }

inline nlohmann::json complex_to_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("transform JSON: complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json transform_to_json(const CloneTransform& t) {
    auto ket = [](const PureState& s) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& a : s.amplitudes()) arr.push_back(complex_to_json(a));
        return arr;
    };
    return {
        {"anc_dim", t.anc_dim()},
        {"coefficients",
         {{"a", complex_to_json(t.a())},
          {"b", complex_to_json(t.b())},
          {"c", complex_to_json(t.c())},
          {"a_tilde", complex_to_json(t.a_tilde())},
          {"b_tilde", complex_to_json(t.b_tilde())},
          {"c_tilde", complex_to_json(t.c_tilde())}}},
        {"ancillas",
         {{"A", ket(t.anc_A())},
          {"B", ket(t.anc_B())},
          {"C", ket(t.anc_C())},
          {"A_tilde", ket(t.anc_A_tilde())},
          {"B_tilde", ket(t.anc_B_tilde())},
          {"C_tilde", ket(t.anc_C_tilde())}}}};
}

inline CloneTransform transform_from_json(const nlohmann::json& j) {
    if (!j.contains("anc_dim") || !j.contains("coefficients") || !j.contains("ancillas"))
        throw std::invalid_argument("transform JSON: missing anc_dim, coefficients or ancillas");
    const std::size_t d = j.at("anc_dim").get<std::size_t>();
    if (d < 2) throw std::invalid_argument("transform JSON: anc_dim must be >= 2");

    const auto& co = j.at("coefficients");
    const auto& an = j.at("ancillas");
    SubsystemLayout anc({"anc"}, {d});
    auto ket = [&](const char* name) {
        const auto& arr = an.at(name);
        if (!arr.is_array() || arr.size() != d)
            throw std::invalid_argument(std::string("transform JSON: ancilla '") + name +
                                        "' must have anc_dim amplitudes");
        std::vector<Complex> v;
        v.reserve(d);
        for (const auto& x : arr) v.push_back(complex_from_json(x));
        return PureState(std::move(v), anc);
    };
    return {complex_from_json(co.at("a")),       complex_from_json(co.at("b")),
            complex_from_json(co.at("c")),       complex_from_json(co.at("a_tilde")),
            complex_from_json(co.at("b_tilde")), complex_from_json(co.at("c_tilde")),
            ket("A"),       ket("B"),       ket("C"),
            ket("A_tilde"), ket("B_tilde"), ket("C_tilde")};
}

}  // namespace entsplit
