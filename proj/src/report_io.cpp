#include "bandcov/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bandcov {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::filesystem::path summary_path_for(const std::filesystem::path& long_path) {
    std::filesystem::path p = long_path;
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += "_summary";
    p += ext;
    return p;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path.string() + " for writing");
    return out;
}

void write_long_csv(const SimulationReport& r, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "alpha,p,n,estimator,replication,selected_k,sq_op_error\n";
    for (const CellResult& c : r.cells) {
        if (c.failed()) continue;
        out << format_double(r.spec.alpha) << ',' << r.spec.p << ',' << r.spec.n << ','
            << estimator_name(c.estimator) << ',' << c.replication << ',' << c.selected_k << ','
            << format_double(c.sq_op_error) << '\n';
    }
    if (!out.good()) throw std::runtime_error("emit_report: write failed for " + path.string());
}

void write_summary_csv(const SimulationReport& r, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "alpha,p,n,estimator,mean,sd\n";
    for (const EstimatorSummary& s : r.summaries) {
        out << format_double(r.spec.alpha) << ',' << r.spec.p << ',' << r.spec.n << ','
            << estimator_name(s.estimator) << ',' << format_double(s.mean) << ',';
        if (s.sd) out << format_double(*s.sd);
        out << '\n';
    }
    if (!out.good()) throw std::runtime_error("emit_report: write failed for " + path.string());
}

void write_json(const SimulationReport& r, const std::filesystem::path& path) {
    nlohmann::json j;
    j["scenario"] = {
        {"p", r.spec.p},           {"n", r.spec.n},
        {"rho", r.spec.rho},       {"alpha", r.spec.alpha},
        {"diagonal", r.spec.diagonal}, {"replications", r.spec.replications},
        {"seed", r.spec.seed},     {"cv_folds", r.spec.cv_folds},
    };
    auto& est = j["scenario"]["estimators"] = nlohmann::json::array();
    for (Estimator e : r.spec.estimators) est.push_back(estimator_name(e));

    auto& results = j["results"] = nlohmann::json::array();
    auto& failures = j["failures"] = nlohmann::json::array();
    for (const CellResult& c : r.cells) {
        if (c.failed()) {
            failures.push_back({{"estimator", estimator_name(c.estimator)},
                                {"replication", c.replication},
                                {"message", c.error}});
        } else {
            results.push_back({{"estimator", estimator_name(c.estimator)},
                               {"replication", c.replication},
                               {"selected_k", c.selected_k},
                               {"sq_op_error", c.sq_op_error}});
        }
    }
    auto& summary = j["summary"] = nlohmann::json::array();
    for (const EstimatorSummary& s : r.summaries) {
        nlohmann::json row = {{"estimator", estimator_name(s.estimator)},
                              {"count", s.count},
                              {"mean", s.mean}};
        if (s.sd) {
            row["sd"] = *s.sd;
        } else {
            row["sd"] = nullptr;
        }
        summary.push_back(std::move(row));
    }

    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out.good()) throw std::runtime_error("emit_report: write failed for " + path.string());
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    return in;
}

}  // namespace

void emit_report(const SimulationReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
    if (format == ReportFormat::csv) {
        write_long_csv(report, path);
        write_summary_csv(report, summary_path_for(path));
    } else {
        write_json(report, path);
    }
}

std::vector<ParsedCell> read_long_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "alpha,p,n,estimator,replication,selected_k,sq_op_error") {
        throw std::runtime_error("read_long_csv: unexpected header in " + path.string());
    }
    std::vector<ParsedCell> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7) throw std::runtime_error("read_long_csv: malformed row: " + line);
        rows.push_back(ParsedCell{std::stod(f[0]), std::stoi(f[1]), std::stoi(f[2]), f[3],
                                  std::stoi(f[4]), std::stoi(f[5]), std::stod(f[6])});
    }
    return rows;
}

std::vector<ParsedSummary> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "alpha,p,n,estimator,mean,sd") {
        throw std::runtime_error("read_summary_csv: unexpected header in " + path.string());
    }
    std::vector<ParsedSummary> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw std::runtime_error("read_summary_csv: malformed row: " + line);
        ParsedSummary s{std::stod(f[0]), std::stoi(f[1]), std::stoi(f[2]), f[3],
                        std::stod(f[4]), !f[5].empty(), 0.0};
        if (s.has_sd) s.sd = std::stod(f[5]);
        rows.push_back(std::move(s));
    }
    return rows;
}

DenseMatrix read_numeric_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        for (const std::string& field : split_csv_line(line)) {
            std::size_t pos = 0;
            const double v = std::stod(field, &pos);
            while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
            if (pos != field.size()) throw std::runtime_error("read_numeric_csv: bad field: " + field);
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error("read_numeric_csv: ragged rows in " + path.string());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("read_numeric_csv: no data in " + path.string());
    DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace bandcov
