#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bandcov/report_io.hpp"
#include "bandcov/simulation.hpp"

using namespace bandcov;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("bandcov_test_" + name);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ScenarioSpec tiny_spec() {
    ScenarioSpec spec;
    spec.p = 12;
    spec.n = 24;
    spec.rho = 0.6;
    spec.alpha = 0.5;
    spec.replications = 3;
    spec.seed = 2026;
    spec.estimators = {Estimator::band_sure_f, Estimator::band_sure_op, Estimator::taper_sure,
                       Estimator::cv_op, Estimator::cv_l11};
    spec.cv_folds = 4;
    spec.workers = 2;
    return spec;
}

}  // namespace

TEST_CASE("estimator names round-trip") {
    for (auto e : {Estimator::cv_op, Estimator::cv_l11, Estimator::taper_sure,
                   Estimator::band_sure_f, Estimator::band_sure_op}) {
        CHECK(parse_estimator(estimator_name(e)) == e);
    }
    CHECK_THROWS_AS(parse_estimator("nonsense"), std::invalid_argument);
}

TEST_CASE("run_scenario fills every cell") {
    const ScenarioSpec spec = tiny_spec();
    const SimulationReport report = run_scenario(spec);
    REQUIRE(report.cells.size() == 15);
    for (const CellResult& c : report.cells) {
        CHECK_FALSE(c.failed());
        CHECK(c.sq_op_error >= 0.0);
        CHECK(c.replication >= 0);
        CHECK(c.replication < 3);
        if (c.estimator == Estimator::taper_sure) {
            CHECK(c.selected_k >= 2);
            CHECK(c.selected_k <= 2 * (spec.p - 1));
            CHECK(c.selected_k % 2 == 0);
        } else {
            CHECK(c.selected_k >= 1);
            CHECK(c.selected_k <= spec.p);
        }
    }
    REQUIRE(report.summaries.size() == 5);
    for (const EstimatorSummary& s : report.summaries) {
        CHECK(s.count == 3);
        CHECK(s.sd.has_value());
        double sum = 0.0;
        for (const CellResult& c : report.cells)
            if (c.estimator == s.estimator) sum += c.sq_op_error;
        CHECK(std::abs(s.mean - sum / 3.0) <= 1e-12 * std::max(1.0, std::abs(s.mean)));
    }
}

TEST_CASE("single replication reports no standard deviation") {
    ScenarioSpec spec = tiny_spec();
    spec.replications = 1;
    spec.estimators = {Estimator::band_sure_f};
    const SimulationReport report = run_scenario(spec);
    REQUIRE(report.summaries.size() == 1);
    CHECK(report.summaries[0].count == 1);
    CHECK(report.summaries[0].mean == report.cells[0].sq_op_error);
    CHECK_FALSE(report.summaries[0].sd.has_value());
}

TEST_CASE("identical seeds with different worker counts emit identical bytes") {
    ScenarioSpec spec = tiny_spec();
    spec.estimators = {Estimator::band_sure_f, Estimator::cv_op};
    spec.replications = 4;

    spec.workers = 1;
    const SimulationReport serial = run_scenario(spec);
    spec.workers = 4;
    const SimulationReport parallel = run_scenario(spec);

    const fs::path a = temp_file("serial.csv");
    const fs::path b = temp_file("parallel.csv");
    emit_report(serial, ReportFormat::csv, a);
    emit_report(parallel, ReportFormat::csv, b);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(summary_path_for(a)) == slurp(summary_path_for(b)));
    fs::remove(a);
    fs::remove(b);
    fs::remove(summary_path_for(a));
    fs::remove(summary_path_for(b));
}

TEST_CASE("csv round-trips the report") {
    const ScenarioSpec spec = tiny_spec();
    const SimulationReport report = run_scenario(spec);
    const fs::path path = temp_file("roundtrip.csv");
    emit_report(report, ReportFormat::csv, path);

    const auto cells = read_long_csv(path);
    REQUIRE(cells.size() == report.cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(cells[i].alpha == report.spec.alpha);
        CHECK(cells[i].p == report.spec.p);
        CHECK(cells[i].n == report.spec.n);
        CHECK(cells[i].estimator == estimator_name(report.cells[i].estimator));
        CHECK(cells[i].replication == report.cells[i].replication);
        CHECK(cells[i].selected_k == report.cells[i].selected_k);
        CHECK(cells[i].sq_op_error == report.cells[i].sq_op_error);
    }

    const auto summaries = read_summary_csv(summary_path_for(path));
    REQUIRE(summaries.size() == report.summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        CHECK(summaries[i].estimator == estimator_name(report.summaries[i].estimator));
        CHECK(summaries[i].mean == report.summaries[i].mean);
        REQUIRE(summaries[i].has_sd == report.summaries[i].sd.has_value());
        if (summaries[i].has_sd) CHECK(summaries[i].sd == *report.summaries[i].sd);
    }
    fs::remove(path);
    fs::remove(summary_path_for(path));
}

TEST_CASE("summary statistics recomputed from the long form match to 1e-12") {
    const ScenarioSpec spec = tiny_spec();
    const SimulationReport report = run_scenario(spec);
    const fs::path path = temp_file("summary_check.csv");
    emit_report(report, ReportFormat::csv, path);
    const auto cells = read_long_csv(path);
    const auto summaries = read_summary_csv(summary_path_for(path));
    for (const auto& s : summaries) {
        double sum = 0.0;
        int count = 0;
        for (const auto& c : cells) {
            if (c.estimator == s.estimator) {
                sum += c.sq_op_error;
                ++count;
            }
        }
        const double mean = sum / count;
        double ss = 0.0;
        for (const auto& c : cells)
            if (c.estimator == s.estimator) ss += (c.sq_op_error - mean) * (c.sq_op_error - mean);
        const double sd = std::sqrt(ss / (count - 1));
        CHECK(std::abs(mean - s.mean) <= 1e-12 * std::max(1.0, std::abs(mean)));
        REQUIRE(s.has_sd);
        CHECK(std::abs(sd - s.sd) <= 1e-12 * std::max(1.0, sd));
    }
    fs::remove(path);
    fs::remove(summary_path_for(path));
}

TEST_CASE("empty estimator list emits header-only files") {
    ScenarioSpec spec = tiny_spec();
    spec.estimators.clear();
    spec.replications = 2;
    const SimulationReport report = run_scenario(spec);
    const fs::path path = temp_file("empty.csv");
    emit_report(report, ReportFormat::csv, path);
    CHECK(slurp(path) == "alpha,p,n,estimator,replication,selected_k,sq_op_error\n");
    CHECK(slurp(summary_path_for(path)) == "alpha,p,n,estimator,mean,sd\n");
    fs::remove(path);
    fs::remove(summary_path_for(path));
}

TEST_CASE("a failing estimator is recorded and the run continues") {
    ScenarioSpec spec = tiny_spec();
    spec.n = 10;
    spec.cv_folds = 10;  // folds of a single row: cv_select must fail
    spec.replications = 2;
    spec.estimators = {Estimator::band_sure_f, Estimator::cv_op};
    const SimulationReport report = run_scenario(spec);

    int failed = 0;
    for (const CellResult& c : report.cells) {
        if (c.estimator == Estimator::cv_op) {
            CHECK(c.failed());
            CHECK(!c.error.empty());
            ++failed;
        } else {
            CHECK_FALSE(c.failed());
        }
    }
    CHECK(failed == 2);
    for (const EstimatorSummary& s : report.summaries) {
        if (s.estimator == Estimator::cv_op) {
            CHECK(s.count == 0);
            CHECK(std::isnan(s.mean));
        } else {
            CHECK(s.count == 2);
        }
    }

    // long CSV carries only the successful cells; JSON carries the failures
    const fs::path cpath = temp_file("failures.csv");
    emit_report(report, ReportFormat::csv, cpath);
    CHECK(read_long_csv(cpath).size() == 2);

    const fs::path jpath = temp_file("failures.json");
    emit_report(report, ReportFormat::json, jpath);
    const nlohmann::json j = nlohmann::json::parse(slurp(jpath));
    CHECK(j["failures"].size() == 2);
    CHECK(j["results"].size() == 2);
    fs::remove(cpath);
    fs::remove(summary_path_for(cpath));
    fs::remove(jpath);
}

TEST_CASE("json mirrors the csv schema") {
    ScenarioSpec spec = tiny_spec();
    spec.estimators = {Estimator::band_sure_f};
    spec.replications = 1;
    const SimulationReport report = run_scenario(spec);
    const fs::path path = temp_file("mirror.json");
    emit_report(report, ReportFormat::json, path);
    const nlohmann::json j = nlohmann::json::parse(slurp(path));
    CHECK(j["scenario"]["p"] == 12);
    CHECK(j["scenario"]["seed"] == 2026);
    CHECK(j["scenario"]["estimators"][0] == "band_sure_f");
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["replication"] == 0);
    CHECK(j["results"][0]["selected_k"] == report.cells[0].selected_k);
    CHECK(j["results"][0]["sq_op_error"].get<double>() == report.cells[0].sq_op_error);
    REQUIRE(j["summary"].size() == 1);
    CHECK(j["summary"][0]["sd"].is_null());
    fs::remove(path);
}

TEST_CASE("numeric csv reader") {
    const fs::path path = temp_file("numeric.csv");
    {
        std::ofstream out(path);
        out << "1.5,2\n3,4.25\n-1,0\n";
    }
    const DenseMatrix m = read_numeric_csv(path);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == 1.5);
    CHECK(m(1, 1) == 4.25);
    CHECK(m(2, 0) == -1.0);
    fs::remove(path);
    CHECK_THROWS_AS(read_numeric_csv(temp_file("missing_file.csv")), std::runtime_error);
}
