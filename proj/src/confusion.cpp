#include "ddd/confusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "ddd/error.hpp"

namespace ddd {

std::string_view pairing_name(Pairing pairing) {
  return pairing == Pairing::kLiteral ? "literal" : "transpose";
}

Pairing parse_pairing(std::string_view text) {
  if (text == "literal") return Pairing::kLiteral;
  if (text == "transpose") return Pairing::kTranspose;
  throw Error(ErrorKind::kUsage, "unknown pairing '" + std::string(text) +
                                     "' (expected literal or transpose)");
}

std::string_view mode_name(ConfusionMode mode) {
  return mode == ConfusionMode::kHard ? "hard" : "soft";
}

ConfusionMode parse_mode(std::string_view text) {
  if (text == "hard") return ConfusionMode::kHard;
  if (text == "soft") return ConfusionMode::kSoft;
  throw Error(ErrorKind::kUsage, "unknown mode '" + std::string(text) + "' (expected hard or soft)");
}

void validate_probabilities(const ProbabilityMap& probabilities, std::string_view sample_id) {
  double total = 0.0;
  for (const auto& [label, p] : probabilities) {
    if (!std::isfinite(p)) {
      throw Error(ErrorKind::kNonFiniteValue, "sample '" + std::string(sample_id) +
                                                  "' has a non-finite probability for '" +
                                                  label + "'");
    }
    if (p < 0.0) {
      throw Error(ErrorKind::kNegativeProbability, "sample '" + std::string(sample_id) +
                                                       "' has negative probability for '" +
                                                       label + "'");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw Error(ErrorKind::kRowSumOutOfTolerance,
                "probabilities of sample '" + std::string(sample_id) + "' sum to " +
                    std::to_string(total));
  }
}

std::vector<std::string> ConfusionMatrix::unsupported_labels() const {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (support[a] == 0) out.push_back(labels[a]);
  }
  return out;
}

namespace {

ConfusionMode resolve_mode(const std::vector<PredictionRecord>& predictions,
                           std::optional<ConfusionMode> forced) {
  if (forced) return *forced;
  const auto soft = std::count_if(predictions.begin(), predictions.end(),
                                  [](const PredictionRecord& r) { return r.is_soft(); });
  if (soft == 0) return ConfusionMode::kHard;
  if (static_cast<std::size_t>(soft) == predictions.size()) return ConfusionMode::kSoft;
  throw Error(ErrorKind::kMixedModes,
              "predictions mix hard labels and probability vectors; choose a mode explicitly");
}

}  // namespace

ConfusionMatrix build_confusion(std::vector<PredictionRecord> predictions,
                                const std::vector<std::string>& labels,
                                std::optional<ConfusionMode> mode) {
  if (predictions.empty()) throw Error(ErrorKind::kEmptyInput, "no prediction records");
  if (labels.empty()) throw Error(ErrorKind::kEmptyInput, "empty label list");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (!index.emplace(labels[a], a).second) {
      throw Error(ErrorKind::kUsage, "label '" + labels[a] + "' listed twice");
    }
  }
  auto lookup = [&](const std::string& label, const std::string& sample_id) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw Error(ErrorKind::kUnknownLabel,
                  "sample '" + sample_id + "' refers to unknown label '" + label + "'");
    }
    return it->second;
  };

  const ConfusionMode resolved = resolve_mode(predictions, mode);
  std::stable_sort(predictions.begin(), predictions.end(),
                   [](const PredictionRecord& a, const PredictionRecord& b) {
                     return a.sample_id < b.sample_id;
                   });

  const std::size_t n = labels.size();
  ConfusionMatrix out;
  out.labels = labels;
  out.values = Matrix(n, n);
  out.mode = resolved;
  out.support.assign(n, 0);

  std::vector<double> dist(n);
  for (const auto& rec : predictions) {
    const std::size_t a = lookup(rec.true_label, rec.sample_id);
    std::fill(dist.begin(), dist.end(), 0.0);
    if (const auto* hard = std::get_if<std::string>(&rec.prediction)) {
      dist[lookup(*hard, rec.sample_id)] = 1.0;
    } else {
      const auto& probs = std::get<ProbabilityMap>(rec.prediction);
      validate_probabilities(probs, rec.sample_id);
      for (const auto& [label, p] : probs) dist[lookup(label, rec.sample_id)] = p;
      if (resolved == ConfusionMode::kHard) {
        const auto best = static_cast<std::size_t>(
            std::max_element(dist.begin(), dist.end()) - dist.begin());
        std::fill(dist.begin(), dist.end(), 0.0);
        dist[best] = 1.0;
      }
    }
    auto row = out.values.row(a);
    for (std::size_t b = 0; b < n; ++b) row[b] += dist[b];
    ++out.support[a];
  }

  for (std::size_t a = 0; a < n; ++a) {
    if (out.support[a] == 0) continue;
    const double count = static_cast<double>(out.support[a]);
    for (double& v : out.values.row(a)) v /= count;
  }
  return out;
}

std::vector<std::string> collect_labels(const std::vector<PredictionRecord>& predictions) {
  std::set<std::string> labels;
  for (const auto& rec : predictions) {
    labels.insert(rec.true_label);
    if (const auto* hard = std::get_if<std::string>(&rec.prediction)) {
      labels.insert(*hard);
    } else {
      for (const auto& [label, p] : std::get<ProbabilityMap>(rec.prediction)) labels.insert(label);
    }
  }
  return {labels.begin(), labels.end()};
}

PTilde extract_p_tilde(const ConfusionMatrix& p, const std::vector<std::string>& train_labels,
                       const std::vector<std::string>& test_labels, Pairing pairing,
                       bool renormalize_rows) {
  const std::set<std::string> train_set(train_labels.begin(), train_labels.end());
  const std::set<std::string> test_set(test_labels.begin(), test_labels.end());
  std::unordered_map<std::string, std::size_t> p_index;
  for (std::size_t a = 0; a < p.labels.size(); ++a) p_index.emplace(p.labels[a], a);

  PTilde out;
  std::set<std::string> seen;
  auto exclude = [&](const std::string& label, std::string reason) {
    if (seen.insert(label).second) out.excluded.push_back({label, std::move(reason)});
  };

  for (const auto& label : train_labels) {
    if (!test_set.contains(label)) {
      exclude(label, "absent from test labels");
    } else if (!p_index.contains(label)) {
      exclude(label, "absent from confusion labels");
    } else if (p.support[p_index.at(label)] == 0) {
      exclude(label, "zero support in predictions");
    } else if (seen.insert(label).second) {
      out.labels.push_back(label);
    }
  }
  for (const auto& label : test_labels) {
    if (!train_set.contains(label)) exclude(label, "absent from train labels");
  }
  for (const auto& label : p.labels) {
    if (!train_set.contains(label) && !test_set.contains(label)) {
      exclude(label, "absent from similarity labels");
    }
  }

  if (out.labels.empty()) {
    throw Error(ErrorKind::kEmptyIntersection,
                "similarity and confusion matrices share no supported class");
  }

  const std::size_t n = out.labels.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t c = 0; c < n; ++c) idx[c] = p_index.at(out.labels[c]);

  out.rows = Matrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    double total = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      out.rows(a, b) = p.values(idx[a], idx[b]);
      total += out.rows(a, b);
    }
    if (renormalize_rows && total > 0.0) {
      for (double& v : out.rows.row(a)) v /= total;
    }
  }

  out.flattened.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.flattened[i * n + j] = pairing == Pairing::kLiteral ? out.rows(i, j) : out.rows(j, i);
    }
  }
  return out;
}

}  // namespace ddd
