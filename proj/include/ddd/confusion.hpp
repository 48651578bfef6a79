#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddd/matrix.hpp"

namespace ddd {

/// How indices of the similarity matrix S are matched to indices of the
/// confusion matrix P. Literal pairs S(i, j) with P(i, j); transpose pairs
/// S(i, j) with P(j, i), i.e. train class i resembling test class j is
/// compared with true class j being predicted as i.
enum class Pairing { kLiteral, kTranspose };

inline constexpr Pairing kDefaultPairing = Pairing::kTranspose;

std::string_view pairing_name(Pairing pairing);
Pairing parse_pairing(std::string_view text);

enum class ConfusionMode { kHard, kSoft };

std::string_view mode_name(ConfusionMode mode);
ConfusionMode parse_mode(std::string_view text);

using ProbabilityMap = std::map<std::string, double>;

struct PredictionRecord {
  std::string sample_id;
  std::string true_label;
  std::variant<std::string, ProbabilityMap> prediction;

  bool is_soft() const noexcept { return std::holds_alternative<ProbabilityMap>(prediction); }
  bool operator==(const PredictionRecord&) const = default;
};

inline constexpr double kProbabilitySumTolerance = 1e-6;

/// Throws NegativeProbability or RowSumOutOfTolerance.
void validate_probabilities(const ProbabilityMap& probabilities, std::string_view sample_id);

struct ConfusionMatrix {
  std::vector<std::string> labels;
  Matrix values;  // rows: true class, columns: predicted class
  ConfusionMode mode = ConfusionMode::kHard;
  std::vector<std::size_t> support;

  /// Labels whose row has no samples; such rows are all zero.
  std::vector<std::string> unsupported_labels() const;
};

/// Builds the row-normalised confusion matrix over `labels` (in the given
/// order). Records are accumulated in sample_id order. The mode is soft iff
/// every record carries probabilities, unless `mode` forces one: forcing hard
/// on a soft record uses its argmax (first label in `labels` order on ties),
/// forcing soft on a hard record uses a one-hot distribution.
ConfusionMatrix build_confusion(std::vector<PredictionRecord> predictions,
                                const std::vector<std::string>& labels,
                                std::optional<ConfusionMode> mode = std::nullopt);

/// Sorted union of every true, predicted and probability-key label.
std::vector<std::string> collect_labels(const std::vector<PredictionRecord>& predictions);

struct Exclusion {
  std::string label;
  std::string reason;

  bool operator==(const Exclusion&) const = default;
};

/// P restricted to the classes shared by the similarity matrix and P, laid
/// out to line up entry-for-entry with the row-major flatten of S restricted
/// to the same classes.
struct PTilde {
  std::vector<std::string> labels;   // shared classes, in train-label order
  std::vector<double> flattened;     // size labels.size()^2
  Matrix rows;                       // row c: P(c, .) restricted, per true class
  std::vector<Exclusion> excluded;
};

/// Classes with zero support are excluded. Rows are not renormalised after
/// restriction unless `renormalize_rows` is set. Throws EmptyIntersection.
PTilde extract_p_tilde(const ConfusionMatrix& p, const std::vector<std::string>& train_labels,
                       const std::vector<std::string>& test_labels, Pairing pairing,
                       bool renormalize_rows = false);

}  // namespace ddd
