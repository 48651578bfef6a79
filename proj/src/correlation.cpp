#include "ddd/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "ddd/error.hpp"

namespace ddd {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "cosine needs two nonempty vectors of equal length");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw Error(ErrorKind::kZeroVector, "cosine is undefined for a zero vector");
  }
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

CorrelationReport correlate(const SimilarityMatrix& s, const ConfusionMatrix& p,
                            const CorrelateOptions& options) {
  PTilde tilde = extract_p_tilde(p, s.train_labels, s.test_labels, options.pairing,
                                 options.renormalize_rows);

  CorrelationReport report;
  report.alpha = s.alpha;
  report.pairing = options.pairing;
  report.excluded = std::move(tilde.excluded);
  if (s.train_labels.size() == 1) {
    report.warnings.push_back(
        "single train class: every similarity entry is 1 by normalisation");
  }

  std::unordered_map<std::string, std::size_t> row_of, col_of;
  for (std::size_t i = 0; i < s.train_labels.size(); ++i) row_of.emplace(s.train_labels[i], i);
  for (std::size_t j = 0; j < s.test_labels.size(); ++j) col_of.emplace(s.test_labels[j], j);

  const std::size_t n = tilde.labels.size();
  Matrix sub(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sub(i, j) = s.values(row_of.at(tilde.labels[i]), col_of.at(tilde.labels[j]));

  report.aggregate_r = cosine(sub.flat(), tilde.flattened);

  for (std::size_t c = 0; c < n; ++c) {
    const std::vector<double> s_vec =
        options.pairing == Pairing::kTranspose
            ? sub.column(c)
            : std::vector<double>(sub.row(c).begin(), sub.row(c).end());
    try {
      report.per_class.emplace(tilde.labels[c], cosine(s_vec, tilde.rows.row(c)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kZeroVector) throw;
      report.excluded.push_back({tilde.labels[c], "per-class correlation undefined (zero vector)"});
    }
  }
  return report;
}

SweepResult sweep_alpha(const DistanceMatrix& distances, const ConfusionMatrix& p,
                        std::span<const double> alphas, const CorrelateOptions& options) {
  if (alphas.empty()) throw Error(ErrorKind::kInvalidGrid, "alpha grid is empty");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    validate_alpha(alphas[k]);
    if (k > 0 && !(alphas[k] > alphas[k - 1])) {
      throw Error(ErrorKind::kInvalidGrid, "alpha grid must be strictly increasing");
    }
  }

  SweepResult result;
  result.points.reserve(alphas.size());
  for (double alpha : alphas) {
    result.points.push_back({alpha, correlate(compute_similarity(distances, alpha), p, options)});
  }
  for (std::size_t k = 1; k < result.points.size(); ++k) {
    if (result.points[k].report.aggregate_r > result.points[result.argmax].report.aggregate_r) {
      result.argmax = k;
    }
  }
  return result;
}

std::vector<double> log_grid(double min, double max, std::size_t steps) {
  if (steps == 0) throw Error(ErrorKind::kInvalidGrid, "alpha grid needs at least one step");
  validate_alpha(min);
  validate_alpha(max);
  if (min > max) throw Error(ErrorKind::kInvalidGrid, "alpha-min exceeds alpha-max");
  if (steps == 1) {
    if (min != max) {
      throw Error(ErrorKind::kInvalidGrid, "a single-step grid requires alpha-min == alpha-max");
    }
    return {min};
  }
  if (min == max) {
    throw Error(ErrorKind::kInvalidGrid, "alpha-min == alpha-max requires exactly one step");
  }
  std::vector<double> grid(steps);
  const double lo = std::log(min);
  const double step = (std::log(max) - lo) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = std::exp(lo + step * static_cast<double>(k));
  grid.front() = min;
  grid.back() = max;
  return grid;
}

std::vector<double> default_alpha_grid() {
  return log_grid(kDefaultGridMin, kDefaultGridMax, kDefaultGridSteps);
}

}  // namespace ddd
