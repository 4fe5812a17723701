#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace abcmab {

/// One (method, K, repetition) cell. A failed cell keeps its coordinates and
/// carries the error text with every measurement empty.
struct ReportRow {
  std::string method;
  std::size_t k = 0;
  std::size_t repetition = 0;
  std::string status = "ok";  // ok | failed
  std::optional<double> mae;
  std::optional<std::size_t> total_simulations;
  std::optional<std::size_t> accepted;
  std::optional<bool> completed;
  std::optional<double> wall_time_total;
  std::optional<double> wall_time_selection;
  std::string error;
};

struct MeanStd {
  std::size_t n = 0;
  std::optional<double> mean;
  std::optional<double> std;  // sample standard deviation, needs n >= 2
};

/// Mean and sample standard deviation of the present values.
MeanStd mean_std(std::span<const std::optional<double>> values);

struct Aggregate {
  std::string method;
  std::size_t k = 0;
  std::size_t repetitions = 0;
  std::size_t failed = 0;
  MeanStd mae;
  MeanStd total_simulations;
  MeanStd wall_time_total;
  MeanStd wall_time_selection;
  std::size_t completed = 0;
};

/// One aggregate per (method, K) in first-appearance order.
std::vector<Aggregate> aggregate(std::span<const ReportRow> rows);

void write_rows_csv(std::ostream& out, std::span<const ReportRow> rows);
std::vector<ReportRow> read_rows_csv(std::istream& in);

nlohmann::json to_json(const ReportRow& row);
nlohmann::json to_json(const Aggregate& agg);

/// Subset-selection baselines that have report columns but no implementation.
std::vector<std::string> reserved_methods();

/// Human-readable tables: MAE, total wall time, selection-only wall time.
/// Rows are methods (reserved baselines included), columns pool sizes.
std::string render_tables(std::span<const Aggregate> aggregates);

}  // namespace abcmab
