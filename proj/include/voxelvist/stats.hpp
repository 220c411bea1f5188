// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/common.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voxelvist {

/// Per-generator human scores. `overall` is the mean of the four categories
/// and is recomputed when an input file omits the column.
struct RatingRow {
  std::string generator;
  double adaptability = 0;
  double functionality = 0;
  double narrative = 0;
  double aesthetic = 0;
  double overall = 0;
};

struct RatingTable {
  std::vector<RatingRow> rows;  // generator ids unique

  static const std::vector<std::string>& categories();
  static double category_value(const RatingRow& row, const std::string& category);
};

RatingTable read_ratings_csv(std::istream& in, const std::string& origin_name);

/// Fractional ranks with ties averaged, e.g. [10, 20, 20, 40] -> [1, 2.5, 2.5, 4].
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation: average ranks on both lists, then Pearson on
/// the rank vectors. Lists must have equal length >= 3. Returns nullopt when
/// either rank vector has zero variance.
std::optional<double> spearman_rho(std::span<const double> xs, std::span<const double> ys);

struct PValue {
  double p = 1.0;
  bool rho_extreme = false;  // |rho| == 1: p reported as 0 with this flag set
};

/// Two-tailed significance of a Spearman rho at sample size n, from the
/// t statistic rho * sqrt((n-2) / (1-rho^2)) against Student's t with n-2
/// degrees of freedom. Requires n >= 4.
PValue spearman_pvalue(double rho, int n);

/// Regularized incomplete beta I_x(a, b) by continued fraction; plumbing for
/// the t-distribution tail.
double incomplete_beta(double a, double b, double x);

/// Per-generator metric means, one row per generator.
struct MeansTable {
  std::vector<std::string> metrics;   // column names
  std::vector<std::string> generators;
  std::vector<std::vector<std::optional<double>>> rows;  // rows[i][j]: generator i, metric j
};

MeansTable read_means_csv(std::istream& in, const std::string& origin_name);

struct CorrelationCell {
  std::optional<double> rho;  // absent: zero rank variance or < 3 usable pairs
  std::optional<double> p;    // absent when rho is absent or n < 4
  int n = 0;
  bool rho_extreme = false;
};

struct CorrelationReport {
  std::vector<std::string> metrics;
  std::vector<std::string> categories;
  std::vector<std::vector<CorrelationCell>> cells;  // [metric][category]
  int dropped_generators = 0;  // present on only one side of the join
};

/// One (rho, p) per metric x category over the generators present in both
/// tables. Throws when fewer than 3 generators align.
CorrelationReport correlation_matrix(const MeansTable& means, const RatingTable& ratings);

void write_report_csv(std::ostream& out, const CorrelationReport& report);

}  // namespace voxelvist
