#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bandcov/matrix.hpp"
#include "bandcov/simulation.hpp"

namespace bandcov {

enum class ReportFormat { csv, json };

/// CSV: writes the long-form table (header
/// alpha,p,n,estimator,replication,selected_k,sq_op_error) at `path` and a
/// summary table (alpha,p,n,estimator,mean,sd) at the sibling path with
/// "_summary" appended to the stem. Only successful cells appear in the
/// long form; failures are reported in the JSON format and on stderr by
/// the CLI. Numbers are serialized round-trip exact.
/// JSON: one file at `path` mirroring the same schema, plus failures.
void emit_report(const SimulationReport& report, ReportFormat format,
                 const std::filesystem::path& path);

std::filesystem::path summary_path_for(const std::filesystem::path& long_path);

/// Long-form and summary rows as read back from CSV.
struct ParsedCell {
    double alpha;
    int p;
    int n;
    std::string estimator;
    int replication;
    int selected_k;
    double sq_op_error;
};

struct ParsedSummary {
    double alpha;
    int p;
    int n;
    std::string estimator;
    double mean;
    bool has_sd;
    double sd;
};

std::vector<ParsedCell> read_long_csv(const std::filesystem::path& path);
std::vector<ParsedSummary> read_summary_csv(const std::filesystem::path& path);

/// Headerless numeric CSV (one observation per row) into a matrix.
DenseMatrix read_numeric_csv(const std::filesystem::path& path);

std::string format_double(double value);

}  // namespace bandcov
