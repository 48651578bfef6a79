#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddd/confusion.hpp"
#include "ddd/core_metrics.hpp"
#include "ddd/correlation.hpp"
#include "ddd/embedding.hpp"

namespace ddd::io {

// Embedding files
// ---------------
// CSV:    header `id,class,domain,e0,...,e{d-1}`, one record per line, LF or
//         CRLF, decimal-point floats, RFC 4180 quoting for text fields.
// Binary: "DDD1", u32 dimension, u32 count, then per record three
//         (u16 length, bytes) strings for id, class, domain followed by d
//         float32 values. All integers and floats little-endian.

enum class EmbeddingFormat { kCsv, kBinary };
enum class TableFormat { kCsv, kJson };

EmbeddingFormat parse_embedding_format(std::string_view text);
TableFormat parse_table_format(std::string_view text);
std::string_view table_format_name(TableFormat format);

inline constexpr std::string_view kBinaryMagic = "DDD1";

EmbeddingDataset parse_embeddings_csv(std::string_view text, DatasetRole role);
EmbeddingDataset parse_embeddings_binary(std::string_view bytes, DatasetRole role);
std::string format_embeddings_csv(const EmbeddingDataset& dataset);
/// Components are narrowed to float32.
std::string format_embeddings_binary(const EmbeddingDataset& dataset);

/// Detects the format from the leading magic bytes.
EmbeddingDataset read_embeddings(const std::filesystem::path& path, DatasetRole role);
void write_embeddings(const EmbeddingDataset& dataset, const std::filesystem::path& path,
                      EmbeddingFormat format);

// Prediction files: `id,true,pred` (hard) or `id,true,p_<label>,...` (soft).

std::vector<PredictionRecord> parse_predictions_csv(std::string_view text);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
/// All records must share one mode; soft columns follow the sorted label union.
std::string format_predictions_csv(const std::vector<PredictionRecord>& records);
void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path);

/// File-level view of any labelled matrix (L, S or P).
struct LabeledMatrix {
  std::string kind;  // "distance", "similarity", "confusion" or "matrix"
  std::optional<double> alpha;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix values;

  bool operator==(const LabeledMatrix&) const = default;
};

LabeledMatrix to_labeled(const DistanceMatrix& m);
LabeledMatrix to_labeled(const SimilarityMatrix& m);
LabeledMatrix to_labeled(const ConfusionMatrix& m);
/// Uses the stored alpha, or kDefaultAlpha when the file carries none.
SimilarityMatrix to_similarity(const LabeledMatrix& m);
DistanceMatrix to_distance(const LabeledMatrix& m);

std::string format_matrix(const LabeledMatrix& m, TableFormat format);
/// JSON if the first non-blank character is '{', CSV otherwise.
LabeledMatrix parse_matrix(std::string_view text);
void write_matrix(const LabeledMatrix& m, const std::filesystem::path& path, TableFormat format);
LabeledMatrix read_matrix(const std::filesystem::path& path);

std::string format_report(const CorrelationReport& report, TableFormat format);
CorrelationReport parse_report(std::string_view text);
void write_report(const CorrelationReport& report, const std::filesystem::path& path,
                  TableFormat format);
CorrelationReport read_report(const std::filesystem::path& path);

std::string format_sweep(const SweepResult& sweep, TableFormat format);

// Shared helpers.

/// 17 significant digits (round-trips any double), locale independent.
std::string format_double(double value);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ddd::io
