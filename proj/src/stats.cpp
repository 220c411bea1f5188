// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/stats.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace voxelvist {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_real_field(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(context + ": malformed number \"" + s + "\"");
  }
  if (used != s.size()) throw ParseError(context + ": malformed number \"" + s + "\"");
  return v;
}

constexpr double kRhoExtremeEps = 1e-12;

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-15) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("incomplete_beta: a and b must be positive");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                       b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("spearman_rho: input lengths differ");
  if (xs.size() < 3) throw std::invalid_argument("spearman_rho: need at least 3 pairs");

  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  const auto n = static_cast<Eigen::Index>(rx.size());
  const Eigen::Map<const Eigen::ArrayXd> ax(rx.data(), n), ay(ry.data(), n);
  const Eigen::ArrayXd cx = ax - ax.mean();
  const Eigen::ArrayXd cy = ay - ay.mean();
  const double vx = cx.square().sum();
  const double vy = cy.square().sum();
  if (vx <= 0 || vy <= 0) return std::nullopt;
  return std::clamp((cx * cy).sum() / std::sqrt(vx * vy), -1.0, 1.0);
}

PValue spearman_pvalue(double rho, int n) {
  if (n < 4) throw std::invalid_argument("spearman_pvalue: need n >= 4");
  if (std::fabs(rho) > 1.0 + 1e-9)
    throw std::invalid_argument("spearman_pvalue: |rho| must be <= 1");
  rho = std::clamp(rho, -1.0, 1.0);
  if (std::fabs(rho) >= 1.0 - kRhoExtremeEps) return {0.0, true};
  if (rho == 0.0) return {1.0, false};
  const double dof = n - 2;
  const double t2 = rho * rho * dof / (1.0 - rho * rho);
  const double p = incomplete_beta(dof / 2.0, 0.5, dof / (dof + t2));
  return {std::clamp(p, 0.0, 1.0), false};
}

const std::vector<std::string>& RatingTable::categories() {
  static const std::vector<std::string> names = {"adaptability", "functionality", "narrative",
                                                 "aesthetic", "overall"};
  return names;
}

double RatingTable::category_value(const RatingRow& row, const std::string& category) {
  if (category == "adaptability") return row.adaptability;
  if (category == "functionality") return row.functionality;
  if (category == "narrative") return row.narrative;
  if (category == "aesthetic") return row.aesthetic;
  if (category == "overall") return row.overall;
  throw std::invalid_argument("unknown rating category: " + category);
}

RatingTable read_ratings_csv(std::istream& in, const std::string& origin_name) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(origin_name + ": empty ratings CSV");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool has_overall = line == "generator,adaptability,functionality,narrative,aesthetic,overall";
  if (!has_overall && line != "generator,adaptability,functionality,narrative,aesthetic")
    throw ParseError(origin_name + ":1: unexpected ratings header \"" + line + "\"");

  RatingTable table;
  std::unordered_map<std::string, bool> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::size_t expected = has_overall ? 6 : 5;
    const std::string context = origin_name + ":" + std::to_string(line_no);
    if (fields.size() != expected)
      throw ParseError(context + ": expected " + std::to_string(expected) + " fields, got " +
                       std::to_string(fields.size()));
    RatingRow row;
    row.generator = fields[0];
    if (row.generator.empty()) throw ParseError(context + ": empty generator id");
    if (!seen.emplace(row.generator, true).second)
      throw ParseError(context + ": duplicate generator \"" + row.generator + "\"");
    row.adaptability = parse_real_field(fields[1], context);
    row.functionality = parse_real_field(fields[2], context);
    row.narrative = parse_real_field(fields[3], context);
    row.aesthetic = parse_real_field(fields[4], context);
    row.overall = has_overall
                      ? parse_real_field(fields[5], context)
                      : (row.adaptability + row.functionality + row.narrative + row.aesthetic) / 4.0;
    table.rows.push_back(std::move(row));
  }
  return table;
}

MeansTable read_means_csv(std::istream& in, const std::string& origin_name) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(origin_name + ": empty means CSV");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "generator")
    throw ParseError(origin_name + ":1: means header must be \"generator,<metric...>\"");

  MeansTable table;
  table.metrics.assign(header.begin() + 1, header.end());
  std::unordered_map<std::string, bool> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string context = origin_name + ":" + std::to_string(line_no);
    if (fields.size() != header.size())
      throw ParseError(context + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(context + ": empty generator id");
    if (!seen.emplace(fields[0], true).second)
      throw ParseError(context + ": duplicate generator \"" + fields[0] + "\"");
    table.generators.push_back(fields[0]);
    std::vector<std::optional<double>> row;
    row.reserve(table.metrics.size());
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty())
        row.emplace_back(std::nullopt);
      else
        row.emplace_back(parse_real_field(fields[i], context));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CorrelationReport correlation_matrix(const MeansTable& means, const RatingTable& ratings) {
  std::unordered_map<std::string, const RatingRow*> by_generator;
  for (const auto& row : ratings.rows) by_generator.emplace(row.generator, &row);

  std::vector<std::size_t> aligned;  // indices into means.rows
  for (std::size_t i = 0; i < means.generators.size(); ++i)
    if (by_generator.count(means.generators[i])) aligned.push_back(i);

  CorrelationReport report;
  report.metrics = means.metrics;
  report.categories = RatingTable::categories();
  report.dropped_generators = static_cast<int>(means.generators.size() - aligned.size() +
                                               ratings.rows.size() - aligned.size());
  if (aligned.size() < 3)
    throw std::runtime_error("correlation_matrix: fewer than 3 generators align across inputs");

  report.cells.resize(report.metrics.size());
  for (std::size_t j = 0; j < report.metrics.size(); ++j) {
    report.cells[j].resize(report.categories.size());
    for (std::size_t c = 0; c < report.categories.size(); ++c) {
      std::vector<double> xs, ys;
      for (const std::size_t i : aligned) {
        const auto& mean = means.rows[i][j];
        if (!mean) continue;
        xs.push_back(*mean);
        ys.push_back(RatingTable::category_value(*by_generator.at(means.generators[i]),
                                                 report.categories[c]));
      }
      CorrelationCell cell;
      cell.n = static_cast<int>(xs.size());
      if (cell.n >= 3) {
        cell.rho = spearman_rho(xs, ys);
        if (cell.rho && cell.n >= 4) {
          const PValue pv = spearman_pvalue(*cell.rho, cell.n);
          cell.p = pv.p;
          cell.rho_extreme = pv.rho_extreme;
        }
      }
      report.cells[j][c] = cell;
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const CorrelationReport& report) {
  out << "metric,category,rho,p,n\n";
  for (std::size_t j = 0; j < report.metrics.size(); ++j)
    for (std::size_t c = 0; c < report.categories.size(); ++c) {
      const CorrelationCell& cell = report.cells[j][c];
      out << report.metrics[j] << ',' << report.categories[c] << ',';
      if (cell.rho) out << format_real(*cell.rho);
      out << ',';
      if (cell.p) out << format_real(*cell.p);
      out << ',' << cell.n << '\n';
    }
}

}  // namespace voxelvist
