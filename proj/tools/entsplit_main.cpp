// Command-line front end: named experiments, parameter sweeps and the data
// behind the two figures, emitted as CSV/JSON.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "entsplit/cli.hpp"

namespace cli = entsplit::cli;

int main(int argc, char** argv) {
    CLI::App app{"entanglement splitting simulator"};
    app.require_subcommand(1);

    // figure1: EOF of one branch vs the input parameter, for several N.
    cli::SweepSpec sweep;
    std::string format = "csv";
    auto* figure1 = app.add_subcommand("figure1", "branch EOF over an |alpha|^2 grid");
    figure1->add_option("--alpha-sq-min", sweep.alpha_sq_min, "grid start");
    figure1->add_option("--alpha-sq-max", sweep.alpha_sq_max, "grid end");
    figure1->add_option("--points", sweep.points, "grid points");
    figure1->add_option("--branches", sweep.n_branches, "branch counts, comma separated")
        ->delimiter(',');
    figure1->add_option("--out", sweep.output_path, "output file (default: stdout)");
    figure1->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // figure2: pairwise entanglement map of the post-split state.
    double alpha_sq = 0.5;
    auto* figure2 = app.add_subcommand("figure2", "pairwise entanglement of the split state");
    figure2->add_option("--alpha-sq", alpha_sq, "input |alpha|^2")->required();

    // report: all diagnostics of one run as JSON.
    double report_alpha_sq = 0.5;
    std::size_t report_branches = 2;
    auto* report = app.add_subcommand("report", "full diagnostics of one splitting run");
    report->add_option("--alpha-sq", report_alpha_sq, "input |alpha|^2")->required();
    report->add_option("--branches", report_branches, "number of output branches");

    // check: constraint residuals of a transformation file.
    std::string transform_path;
    auto* check = app.add_subcommand("check", "validate a transformation JSON file");
    check->add_option("file", transform_path, "CloneTransform JSON document")->required();

    // werner-scan: splitting of mixed Werner inputs.
    std::size_t scan_points = 201;
    std::string scan_out;
    auto* werner = app.add_subcommand("werner-scan", "split Werner inputs and track separability");
    werner->add_option("--points", scan_points, "scan points");
    werner->add_option("--out", scan_out, "CSV output file (default: stdout)");

    // probe: random search for the largest reachable F_W.
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    auto* probe = app.add_subcommand("probe", "random search over valid transformations");
    probe->add_option("--trials", trials, "number of sampled transformations");
    probe->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return cli::kExitUsage;
    }

    try {
        if (figure1->parsed()) {
            sweep.format = format == "json" ? cli::SweepSpec::Format::json
                                            : cli::SweepSpec::Format::csv;
            return cli::cmd_figure1(sweep);
        }
        if (figure2->parsed()) return cli::cmd_figure2(alpha_sq);
        if (report->parsed()) return cli::cmd_report(report_alpha_sq, report_branches);
        if (check->parsed()) return cli::cmd_check(transform_path);
        if (werner->parsed()) return cli::cmd_werner_scan(scan_points, scan_out);
        if (probe->parsed()) return cli::cmd_probe(trials, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
