#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ddd {

enum class DatasetRole { kTrain, kTest };

std::string_view role_name(DatasetRole role);

struct EmbeddingRecord {
  std::string sample_id;
  std::string class_label;
  std::string domain_label;
  std::vector<double> vector;

  bool operator==(const EmbeddingRecord&) const = default;
};

/// A labelled set of embedding vectors.
///
/// Construction validates every record (dimension, finiteness, unique
/// sample ids), stably sorts records by sample_id, and assigns class
/// indices in lexicographic label order. When `declared_labels` is given the
/// label index is built from it instead; a declared class may then have no
/// records, which compute_centroids reports as EmptyClass.
class EmbeddingDataset {
 public:
  EmbeddingDataset(DatasetRole role, std::size_t dimension,
                   std::vector<EmbeddingRecord> records,
                   std::optional<std::vector<std::string>> declared_labels = std::nullopt);

  DatasetRole role() const noexcept { return role_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<EmbeddingRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t class_count() const noexcept { return labels_.size(); }
  std::optional<std::size_t> class_index(std::string_view label) const;

  /// Class index of each record, parallel to records().
  const std::vector<std::size_t>& record_classes() const noexcept { return record_class_; }
  /// Record indices of class `c` in ascending record order.
  const std::vector<std::size_t>& members(std::size_t c) const { return members_.at(c); }

  bool operator==(const EmbeddingDataset& other) const {
    return role_ == other.role_ && dimension_ == other.dimension_ &&
           records_ == other.records_ && labels_ == other.labels_;
  }

 private:
  DatasetRole role_;
  std::size_t dimension_;
  std::vector<EmbeddingRecord> records_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> record_class_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace ddd
