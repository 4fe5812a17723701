#include "abcmab/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "abcmab/errors.hpp"

namespace abcmab {

MeanStd mean_std(std::span<const std::optional<double>> values) {
  MeanStd out;
  double sum = 0.0;
  for (const auto& v : values)
    if (v) {
      sum += *v;
      ++out.n;
    }
  if (out.n == 0) return out;
  const double mu = sum / static_cast<double>(out.n);
  out.mean = mu;
  if (out.n >= 2) {
    double ss = 0.0;
    for (const auto& v : values)
      if (v) ss += (*v - mu) * (*v - mu);
    out.std = std::sqrt(ss / static_cast<double>(out.n - 1));
  }
  return out;
}

std::vector<Aggregate> aggregate(std::span<const ReportRow> rows) {
  std::vector<Aggregate> out;
  std::vector<std::vector<const ReportRow*>> members;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Aggregate& a) { return a.method == r.method && a.k == r.k; });
    if (it == out.end()) {
      Aggregate a;
      a.method = r.method;
      a.k = r.k;
      out.push_back(std::move(a));
      members.emplace_back();
      it = out.end() - 1;
    }
    members[static_cast<std::size_t>(it - out.begin())].push_back(&r);
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    std::vector<std::optional<double>> mae, sims, total, sel;
    for (const auto* r : members[a]) {
      ++out[a].repetitions;
      if (r->status != "ok") {
        ++out[a].failed;
        continue;
      }
      if (r->completed.value_or(false)) ++out[a].completed;
      mae.push_back(r->mae);
      sims.push_back(r->total_simulations ? std::optional(static_cast<double>(*r->total_simulations))
                                          : std::nullopt);
      total.push_back(r->wall_time_total);
      sel.push_back(r->wall_time_selection);
    }
    out[a].mae = mean_std(mae);
    out[a].total_simulations = mean_std(sims);
    out[a].wall_time_total = mean_std(total);
    out[a].wall_time_selection = mean_std(sel);
  }
  return out;
}

namespace {

template <typename T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "1" : "0";
  else return fmt::format("{}", *v);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
std::optional<T> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) return std::stod(s);
  else if constexpr (std::is_same_v<T, bool>) return s == "1";
  else return static_cast<T>(std::stoull(s));
}

constexpr std::string_view kRowHeader =
    "method,K,repetition,status,mae,total_simulations,accepted,completed,wall_time_total,"
    "wall_time_selection,error";

}  // namespace

void write_rows_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << kRowHeader << '\n';
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.method, r.k, r.repetition, r.status,
                       opt_str(r.mae), opt_str(r.total_simulations), opt_str(r.accepted),
                       opt_str(r.completed), opt_str(r.wall_time_total),
                       opt_str(r.wall_time_selection), err);
  }
}

std::vector<ReportRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRowHeader) throw InputError("unexpected report.csv header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 11) throw InputError("malformed report.csv row: " + line);
    try {
      ReportRow r;
      r.method = f[0];
      r.k = std::stoull(f[1]);
      r.repetition = std::stoull(f[2]);
      r.status = f[3];
      r.mae = parse_opt<double>(f[4]);
      r.total_simulations = parse_opt<std::size_t>(f[5]);
      r.accepted = parse_opt<std::size_t>(f[6]);
      r.completed = parse_opt<bool>(f[7]);
      r.wall_time_total = parse_opt<double>(f[8]);
      r.wall_time_selection = parse_opt<double>(f[9]);
      r.error = f[10];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError("malformed report.csv row: " + line);
    }
  }
  return rows;
}

namespace {

nlohmann::json opt_json(const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json to_json(const MeanStd& m) {
  return {{"n", m.n}, {"mean", opt_json(m.mean)}, {"std", opt_json(m.std)}};
}

}  // namespace

nlohmann::json to_json(const ReportRow& r) {
  return {{"method", r.method},
          {"K", r.k},
          {"repetition", r.repetition},
          {"status", r.status},
          {"mae", opt_json(r.mae)},
          {"total_simulations", opt_json(r.total_simulations)},
          {"accepted", opt_json(r.accepted)},
          {"completed", opt_json(r.completed)},
          {"wall_time_total", opt_json(r.wall_time_total)},
          {"wall_time_selection", opt_json(r.wall_time_selection)},
          {"error", r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error)}};
}

nlohmann::json to_json(const Aggregate& a) {
  return {{"method", a.method},
          {"K", a.k},
          {"repetitions", a.repetitions},
          {"failed", a.failed},
          {"completed", a.completed},
          {"mae", to_json(a.mae)},
          {"total_simulations", to_json(a.total_simulations)},
          {"wall_time_total", to_json(a.wall_time_total)},
          {"wall_time_selection", to_json(a.wall_time_selection)},
          {"std_kind", "sample"}};
}

std::vector<std::string> reserved_methods() { return {"AS", "ME"}; }

namespace {

std::string cell(const MeanStd& m, int precision) {
  if (!m.mean) return "-";
  if (!m.std) return fmt::format("{:.{}f}", *m.mean, precision);
  return fmt::format("{:.{}f} ± {:.{}f}", *m.mean, precision, *m.std, precision);
}

std::string table(std::span<const Aggregate> aggs, const std::string& title,
                  MeanStd Aggregate::*field, int precision) {
  std::vector<std::size_t> ks;
  std::vector<std::string> methods = reserved_methods();
  for (const auto& a : aggs) {
    if (std::find(ks.begin(), ks.end(), a.k) == ks.end()) ks.push_back(a.k);
    if (std::find(methods.begin(), methods.end(), a.method) == methods.end()) methods.push_back(a.method);
  }
  std::sort(ks.begin(), ks.end());
  std::ostringstream out;
  out << title << '\n';
  out << fmt::format("{:<18}", "method");
  for (auto k : ks) out << fmt::format(" {:>20}", fmt::format("K={}", k));
  out << '\n';
  const auto reserved = reserved_methods();
  for (const auto& m : methods) {
    out << fmt::format("{:<18}", m);
    for (auto k : ks) {
      std::string text;
      if (std::find(reserved.begin(), reserved.end(), m) != reserved.end()) {
        text = "n/i";
      } else {
        auto it = std::find_if(aggs.begin(), aggs.end(),
                               [&](const Aggregate& a) { return a.method == m && a.k == k; });
        text = it == aggs.end() ? "" : cell((*it).*field, precision);
      }
      out << fmt::format(" {:>20}", text);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_tables(std::span<const Aggregate> aggregates) {
  std::string out;
  out += table(aggregates, "Mean absolute error (mean ± sample std over repetitions)", &Aggregate::mae, 2);
  out += '\n';
  out += table(aggregates, "Total wall time [s]", &Aggregate::wall_time_total, 2);
  out += '\n';
  out += table(aggregates, "Selection-only wall time [s]", &Aggregate::wall_time_selection, 4);
  out += '\n';
  out += table(aggregates, "Simulations used", &Aggregate::total_simulations, 1);
  out += "\nn/i: subset-selection baseline not implemented in this toolkit; '-': no successful run.\n";
  return out;
}

}  // namespace abcmab
