#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entsplit/cloner.hpp"
#include "entsplit/measures.hpp"
#include "entsplit/splitting.hpp"
#include "entsplit/states.hpp"

namespace entsplit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitConstraint = 3;

/// 12 significant digits, '.' decimal separator. All CSV output goes through
/// here so files are bit-identical across runs.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Grid over |alpha|^2 (the canonical abscissa; |alpha| is emitted alongside)
/// plus the branch counts and output destination for figure regeneration.
struct SweepSpec {
    double alpha_sq_min = 0.0;
    double alpha_sq_max = 1.0;
    std::size_t points = 101;
    std::vector<std::size_t> n_branches = {2, 3, 4};
    std::string output_path;  // empty: stdout
    enum class Format { csv, json } format = Format::csv;

    std::string validate() const {
        if (points < 2) return "points must be >= 2";
        if (!(alpha_sq_min >= 0.0) || !(alpha_sq_max <= 1.0)) return "alpha_sq grid must lie in [0, 1]";
        if (alpha_sq_min > alpha_sq_max) return "alpha_sq_min must not exceed alpha_sq_max";
        if (n_branches.empty()) return "need at least one branch count";
        for (std::size_t n : n_branches)
            if (n < 2) return "branch counts must be >= 2";
        return {};
    }
};

namespace detail {

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = nullptr;
    bool ok = false;

    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream = &fallback;
            ok = true;
        } else {
            file.open(path, std::ios::binary);  // binary keeps LF line endings everywhere
            stream = &file;
            ok = file.is_open();
        }
    }

    std::ostream& out() { return *stream; }
    bool good() const { return stream->good(); }
};

}  // namespace detail

/// Entanglement of formation of one of N branches versus the input
/// parameter: one row per grid point, columns alpha_sq, abs_alpha, then one
/// EOF column per branch count. EOF comes from the closed-form branch
/// concurrence C = (2/N)|alpha beta|.
inline int cmd_figure1(const SweepSpec& spec, std::ostream& out_stream = std::cout,
                       std::ostream& err = std::cerr) {
    const std::string problem = spec.validate();
    if (!problem.empty()) {
        err << "figure1: " << problem << "\n";
        return kExitUsage;
    }

    detail::OutputTarget target(spec.output_path, out_stream);
    if (!target.ok) {
        err << "figure1: cannot open '" << spec.output_path << "' for writing\n";
        return kExitIo;
    }

    std::vector<std::string> columns = {"alpha_sq", "abs_alpha"};
    for (std::size_t n : spec.n_branches) columns.push_back("eof_n" + std::to_string(n));

    std::vector<std::vector<double>> rows;
    rows.reserve(spec.points);
    for (std::size_t i = 0; i < spec.points; ++i) {
        const double u = spec.alpha_sq_min + static_cast<double>(i) *
                                                 (spec.alpha_sq_max - spec.alpha_sq_min) /
                                                 static_cast<double>(spec.points - 1);
        const double ab = std::sqrt(std::max(0.0, u * (1.0 - u)));  // |alpha beta|
        std::vector<double> row = {u, std::sqrt(u)};
        for (std::size_t n : spec.n_branches)
            row.push_back(eof_from_concurrence(2.0 * ab / static_cast<double>(n)));
        rows.push_back(std::move(row));
    }

    if (spec.format == SweepSpec::Format::csv) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            target.out() << (i ? "," : "") << columns[i];
        target.out() << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                target.out() << (i ? "," : "") << format_real(row[i]);
            target.out() << "\n";
        }
    } else {
        nlohmann::ordered_json doc;
        doc["schema"] = 1;
        doc["columns"] = columns;
        doc["rows"] = rows;
        target.out() << doc.dump(2) << "\n";
    }

    if (!target.good()) {
        err << "figure1: write failed\n";
        return kExitIo;
    }
    return kExitOk;
}

/// Pairwise entanglement of the four post-split subsystems at one input
/// parameter, as a table of (pair, PPT minimum eigenvalue, verdict).
inline int cmd_figure2(double alpha_sq, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    if (!(alpha_sq > 0.0) || !(alpha_sq < 1.0)) {
        err << "figure2: alpha_sq must lie strictly between 0 and 1\n";
        return kExitUsage;
    }
    const PairwiseMap map = pairwise_entanglement(SchmidtParams::from_alpha_sq(alpha_sq));
    out << "pair ppt_min entangled\n";
    for (const auto& p : map)
        out << p.first << "-" << p.second << " " << format_real(p.ppt_min) << " "
            << (p.entangled ? "yes" : "no") << "\n";
    return kExitOk;
}

inline nlohmann::ordered_json report_to_json(const SplitReport& r) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["alpha"] = complex_to_json(r.alpha);
    doc["beta"] = complex_to_json(r.beta);
    doc["alpha_sq"] = std::norm(r.alpha);
    doc["n_branches"] = r.n_branches;
    doc["f_w"] = r.f_w;
    doc["ppt"] = {{"eigenvalues", r.ppt.eigenvalues},
                  {"entangled", r.ppt.entangled},
                  {"boundary", r.ppt.boundary}};
    doc["concurrence"] = r.ent.concurrence;
    doc["eof"] = r.ent.eof;
    doc["xi"] = r.ent.xi;
    doc["f_max"] = r.f_max;
    doc["chsh"] = r.chsh;
    doc["teleport_ok"] = r.teleport_ok;
    doc["window"] = {{"alpha_sq_min", r.window.alpha_sq_min},
                     {"alpha_sq_max", r.window.alpha_sq_max}};
    return doc;
}

/// Full diagnostics of one splitting run as JSON on stdout.
inline int cmd_report(double alpha_sq, std::size_t n, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    if (alpha_sq < 0.0 || alpha_sq > 1.0) {
        err << "report: alpha_sq must lie in [0, 1]\n";
        return kExitUsage;
    }
    if (n < 2) {
        err << "report: need at least two branches\n";
        return kExitUsage;
    }
    const SplitReport r = split_n_branch(SchmidtParams::from_alpha_sq(alpha_sq), n);
    out << report_to_json(r).dump(2) << "\n";
    return kExitOk;
}

/// Validates a transformation file: prints the residual of each symmetry
/// constraint and the singlet-split F_W.
inline int cmd_check(const std::string& transform_path, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    std::ifstream in(transform_path);
    if (!in.is_open()) {
        err << "check: cannot open '" << transform_path << "'\n";
        return kExitIo;
    }

    CloneTransform t = [&] {
        try {
            nlohmann::json doc = nlohmann::json::parse(in);
            return transform_from_json(doc);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("check: not valid JSON: ") + e.what());
        }
    }();

    const ConstraintReport report = check_constraints(t);
    out << "constraint residual pass\n";
    for (std::size_t i = 0; i < 7; ++i)
        out << ConstraintReport::name(i) << " " << format_real(report.residuals[i]) << " "
            << (report.pass[i] ? "yes" : "no") << "\n";
    out << "f_w_formula " << format_real(werner_fraction_formula(t)) << "\n";

    if (!report.all_pass) {
        out << "result FAIL\n";
        return kExitConstraint;
    }
    const SplitReport split = split_singlet(t);
    out << "f_w_singlet_split " << format_real(split.f_w) << "\n";
    out << "result PASS\n";
    return kExitOk;
}

/// Scan of Werner inputs through the optimal cloner: CSV of the PPT verdicts
/// plus a summary of the interval where entangled inputs yield separable
/// outputs.
inline int cmd_werner_scan(std::size_t points, const std::string& out_path,
                           std::ostream& out_stream = std::cout, std::ostream& err = std::cerr) {
    if (points < 2) {
        err << "werner-scan: points must be >= 2\n";
        return kExitUsage;
    }

    detail::OutputTarget target(out_path, out_stream);
    if (!target.ok) {
        err << "werner-scan: cannot open '" << out_path << "' for writing\n";
        return kExitIo;
    }
    // Summary goes wherever the CSV is not.
    std::ostream& summary = out_path.empty() ? err : out_stream;

    target.out() << "fw_in,output_ppt_min,output_separable,input_entangled\n";
    double lost_lo = 2.0, lost_hi = -1.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double fw = static_cast<double>(i) / static_cast<double>(points - 1);
        const auto [output, separable] = split_werner_input(fw);
        const double ppt_min = ppt_check(output).min_eigenvalue();
        const bool input_entangled = fw > 0.5;
        if (separable && input_entangled) {
            lost_lo = std::min(lost_lo, fw);
            lost_hi = std::max(lost_hi, fw);
        }
        target.out() << format_real(fw) << "," << format_real(ppt_min) << ","
                     << (separable ? 1 : 0) << "," << (input_entangled ? 1 : 0) << "\n";
    }
    if (!target.good()) {
        err << "werner-scan: write failed\n";
        return kExitIo;
    }

    if (lost_hi >= lost_lo)
        summary << "entanglement lost (separable output from entangled input) for fw_in in ["
                << format_real(lost_lo) << ", " << format_real(lost_hi) << "]\n";
    else
        summary << "no separable-output/entangled-input region detected\n";
    return kExitOk;
}

/// Random search over constraint-satisfying transformations for the largest
/// reachable F_W.
inline int cmd_probe(std::size_t trials, std::uint64_t seed, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    if (trials < 1) {
        err << "probe: trials must be >= 1\n";
        return kExitUsage;
    }
    const ProbeResult r = probe_scan(trials, seed);
    out << "trials " << trials << "\n";
    out << "seed " << seed << "\n";
    out << "max_f_w " << format_real(r.max_f_w) << "\n";
    out << "min_f_w " << format_real(r.min_f_w) << "\n";
    out << "best_a " << format_real(r.best_a) << "\n";
    out << "best_c " << format_real(r.best_c) << "\n";
    if (r.max_f_w > 0.75 + 1e-9) {
        err << "probe: found F_W above 3/4, which should be impossible\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace entsplit::cli
