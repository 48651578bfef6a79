#include "ddd/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "ddd/error.hpp"

namespace ddd {

std::string_view role_name(DatasetRole role) {
  return role == DatasetRole::kTrain ? "train" : "test";
}

EmbeddingDataset::EmbeddingDataset(DatasetRole role, std::size_t dimension,
                                   std::vector<EmbeddingRecord> records,
                                   std::optional<std::vector<std::string>> declared_labels)
    : role_(role), dimension_(dimension), records_(std::move(records)) {
  if (dimension_ == 0) {
    throw Error(ErrorKind::kEmptyDataset, "embedding dimension must be at least 1");
  }
  if (records_.empty()) {
    throw Error(ErrorKind::kEmptyDataset,
                std::string(role_name(role_)) + " dataset has no records");
  }
  for (const auto& rec : records_) {
    if (rec.vector.size() != dimension_) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "record '" + rec.sample_id + "' has " + std::to_string(rec.vector.size()) +
                      " components, expected " + std::to_string(dimension_));
    }
    for (double v : rec.vector) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kNonFiniteValue,
                    "record '" + rec.sample_id + "' contains a non-finite component");
      }
    }
  }

  std::stable_sort(records_.begin(), records_.end(),
                   [](const EmbeddingRecord& a, const EmbeddingRecord& b) {
                     return a.sample_id < b.sample_id;
                   });
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].sample_id == records_[i - 1].sample_id) {
      throw Error(ErrorKind::kDuplicateSampleId,
                  "sample id '" + records_[i].sample_id + "' appears more than once");
    }
  }

  if (declared_labels) {
    labels_ = std::move(*declared_labels);
  } else {
    for (const auto& rec : records_) labels_.push_back(rec.class_label);
  }
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());

  members_.resize(labels_.size());
  record_class_.reserve(records_.size());
  for (std::size_t r = 0; r < records_.size(); ++r) {
    auto idx = class_index(records_[r].class_label);
    if (!idx) {
      throw Error(ErrorKind::kUnknownLabel,
                  "record '" + records_[r].sample_id + "' has undeclared class '" +
                      records_[r].class_label + "'");
    }
    record_class_.push_back(*idx);
    members_[*idx].push_back(r);
  }
}

std::optional<std::size_t> EmbeddingDataset::class_index(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

}  // namespace ddd
