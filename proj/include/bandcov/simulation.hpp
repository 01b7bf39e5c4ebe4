#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandcov/bandwidth.hpp"
#include "bandcov/matrix.hpp"

namespace bandcov {

enum class Estimator { cv_op, cv_l11, taper_sure, band_sure_f, band_sure_op };

std::string estimator_name(Estimator e);
Estimator parse_estimator(const std::string& name);

/// One simulation cell: population model, sample size, replication count,
/// seeding, and the estimators to compare.
struct ScenarioSpec {
    int p = 250;
    int n = 250;
    double rho = 0.6;
    double alpha = 0.5;
    double diagonal = 1.0;
    int replications = 100;
    std::uint64_t seed = 0;
    std::vector<Estimator> estimators;
    int workers = 0;   // 0 = hardware concurrency
    int cv_folds = 10;
};

/// Result of one (estimator, replication) cell. On failure the error
/// message is set and the numeric fields are meaningless.
struct CellResult {
    Estimator estimator;
    int replication = 0;
    int selected_k = 0;
    double sq_op_error = 0.0;
    std::string error;

    bool failed() const { return !error.empty(); }
};

struct EstimatorSummary {
    Estimator estimator;
    int count = 0;                 // successful replications
    double mean = 0.0;             // mean squared operator-norm error
    std::optional<double> sd;      // sample sd (count-1 denominator); absent if count < 2
};

struct SimulationReport {
    ScenarioSpec spec;
    std::vector<CellResult> cells;          // estimator-major, replication ascending
    std::vector<EstimatorSummary> summaries;
};

/// Runs every replication of the scenario: per replication draw one MVN
/// sample from its own stream, form the sample covariance once, and apply
/// each requested estimator; errors in a cell are recorded and the run
/// continues. Replications execute in a worker pool; results are stored by
/// replication index, so output is identical for any worker count.
SimulationReport run_scenario(const ScenarioSpec& spec);

/// Recomputes the per-estimator summaries from the recorded cells.
std::vector<EstimatorSummary> summarize(const ScenarioSpec& spec,
                                        const std::vector<CellResult>& cells);

}  // namespace bandcov
