#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ddd/confusion.hpp"
#include "ddd/core_metrics.hpp"

namespace ddd {

/// Cosine similarity (u . v) / (|u| |v|). Throws ZeroVector when either
/// norm is zero and DimensionMismatch on unequal or empty inputs.
double cosine(std::span<const double> u, std::span<const double> v);

struct CorrelateOptions {
  Pairing pairing = kDefaultPairing;
  bool renormalize_rows = false;
};

struct CorrelationReport {
  double aggregate_r = 0.0;
  std::map<std::string, double> per_class;
  double alpha = kDefaultAlpha;
  Pairing pairing = kDefaultPairing;
  std::vector<Exclusion> excluded;
  std::vector<std::string> warnings;

  bool operator==(const CorrelationReport&) const = default;
};

/// Aggregate R is the cosine between flatten(S) and P-tilde over the shared
/// classes. The per-class value for class c compares the S vector of test
/// class c (transpose: column S(., c); literal: row S(c, .)) with the
/// confusion row of true class c.
CorrelationReport correlate(const SimilarityMatrix& s, const ConfusionMatrix& p,
                            const CorrelateOptions& options = {});

struct SweepPoint {
  double alpha;
  CorrelationReport report;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t argmax = 0;  // highest aggregate R; ties go to the smallest alpha

  const SweepPoint& best() const { return points.at(argmax); }
};

/// `alphas` must be nonempty, strictly increasing and positive (InvalidGrid).
SweepResult sweep_alpha(const DistanceMatrix& distances, const ConfusionMatrix& p,
                        std::span<const double> alphas, const CorrelateOptions& options = {});

inline constexpr double kDefaultGridMin = 1e-2;
inline constexpr double kDefaultGridMax = 1e2;
inline constexpr std::size_t kDefaultGridSteps = 40;

/// `steps` points spaced uniformly in log(alpha) from min to max inclusive.
/// steps == 1 requires min == max.
std::vector<double> log_grid(double min, double max, std::size_t steps);

std::vector<double> default_alpha_grid();

}  // namespace ddd
