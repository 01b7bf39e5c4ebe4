#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bandcov/bandwidth.hpp"
#include "bandcov/report_io.hpp"
#include "bandcov/simulation.hpp"
#include "bandcov/verify.hpp"

namespace {

std::vector<bandcov::Estimator> parse_estimator_list(const std::string& list) {
    std::vector<bandcov::Estimator> out;
    std::istringstream in(list);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) out.push_back(bandcov::parse_estimator(token));
    }
    return out;
}

int run_command(const bandcov::ScenarioSpec& spec, const std::string& format,
                const std::string& out_path) {
    const bandcov::SimulationReport report = bandcov::run_scenario(spec);
    for (const auto& cell : report.cells) {
        if (cell.failed()) {
            std::cerr << "cell failed: estimator=" << bandcov::estimator_name(cell.estimator)
                      << " replication=" << cell.replication << ": " << cell.error << "\n";
        }
    }
    const auto fmt = format == "json" ? bandcov::ReportFormat::json : bandcov::ReportFormat::csv;
    bandcov::emit_report(report, fmt, out_path);
    std::cout << "wrote " << out_path;
    if (fmt == bandcov::ReportFormat::csv) {
        std::cout << " and " << bandcov::summary_path_for(out_path).string();
    }
    std::cout << "\n";
    for (const auto& s : report.summaries) {
        std::cout << bandcov::estimator_name(s.estimator) << ": mean="
                  << bandcov::format_double(s.mean);
        if (s.sd) std::cout << " sd=" << bandcov::format_double(*s.sd);
        std::cout << " (" << s.count << " replications)\n";
    }
    return 0;
}

int select_command(const std::string& input, const std::string& method, int folds,
                   std::uint64_t seed) {
    const bandcov::DenseMatrix data = bandcov::read_numeric_csv(input);
    const bandcov::DataSample sample(data);
    bandcov::SelectionResult result{bandcov::SelectionMethod::sure_f, 0, {}};
    if (method == "sure_f" || method == "sure_op") {
        const bandcov::SymMatrix s = bandcov::sample_cov(sample);
        const auto m = method == "sure_f" ? bandcov::SelectionMethod::sure_f
                                          : bandcov::SelectionMethod::sure_op;
        result = bandcov::select_sure(s, sample.n(), m);
    } else if (method == "cv_op" || method == "cv_l11") {
        bandcov::Rng rng(seed, 0, 1);
        const auto m = method == "cv_op" ? bandcov::SelectionMethod::cv_op
                                         : bandcov::SelectionMethod::cv_l11;
        result = bandcov::cv_select(sample, m, folds, rng);
    } else {
        throw std::invalid_argument("select: unknown method " + method);
    }
    std::cout << "chosen_k=" << result.chosen_k << " method="
              << bandcov::selection_method_name(result.method) << "\n";
    std::cout << "k,criterion\n";
    for (const auto& [k, value] : result.curve) {
        std::cout << k << ',' << bandcov::format_double(value) << '\n';
    }
    return 0;
}

int verify_command(const std::string& suite, std::uint64_t seed) {
    const auto reports = bandcov::verify::run_suite(suite, seed);
    bandcov::verify::write_oracle_csv(std::cout, reports);
    return bandcov::verify::all_pass(reports) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"banded covariance estimation harness"};
    app.require_subcommand(1);

    bandcov::ScenarioSpec spec;
    std::string estimators = "band_sure_f,band_sure_op,taper_sure,cv_op,cv_l11";
    std::string out_path = "report.csv";
    std::string format = "csv";
    auto* run = app.add_subcommand("run", "run a simulation scenario");
    run->add_option("--p", spec.p, "dimension");
    run->add_option("--n", spec.n, "sample size");
    run->add_option("--alpha", spec.alpha, "power-law decay exponent");
    run->add_option("--rho", spec.rho, "power-law off-diagonal scale");
    run->add_option("--diag", spec.diagonal, "population diagonal value");
    run->add_option("--reps", spec.replications, "replication count");
    run->add_option("--seed", spec.seed, "master seed");
    run->add_option("--estimators", estimators, "comma-separated estimator list");
    run->add_option("--out", out_path, "output path");
    run->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--workers", spec.workers, "worker threads (0 = auto)");
    run->add_option("--folds", spec.cv_folds, "cross-validation folds");

    std::string sel_input;
    std::string sel_method;
    int sel_folds = 10;
    std::uint64_t sel_seed = 0;
    auto* select = app.add_subcommand("select", "choose a bandwidth for a data file");
    select->add_option("--input", sel_input, "n x p numeric CSV of observations")->required();
    select->add_option("--method", sel_method, "sure_f|sure_op|cv_op|cv_l11")->required();
    select->add_option("--folds", sel_folds, "cross-validation folds");
    select->add_option("--seed", sel_seed, "seed for fold assignment");

    std::string suite = "all";
    std::uint64_t verify_seed = 0;
    auto* verify = app.add_subcommand("verify", "run the oracle check suites");
    verify->add_option("--suite", suite, "moments|mgf|trace|tail|structure|scalars|all");
    verify->add_option("--seed", verify_seed, "suite seed");

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            spec.estimators = parse_estimator_list(estimators);
            return run_command(spec, format, out_path);
        }
        if (select->parsed()) return select_command(sel_input, sel_method, sel_folds, sel_seed);
        if (verify->parsed()) return verify_command(suite, verify_seed);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
