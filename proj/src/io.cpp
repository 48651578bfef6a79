#include "ddd/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ddd/error.hpp"
#include "json_dump.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary embedding I/O assumes a little-endian host");

namespace ddd::io {

using nlohmann::json;

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

/// Splits the text into lines, accepting LF or CRLF and dropping a UTF-8 BOM.
std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (ch == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw Error(ErrorKind::kParseError, at_line(line_no) + "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of("\r\n") != std::string_view::npos) {
    throw Error(ErrorKind::kIoError, "CSV fields cannot contain line breaks");
  }
  if (text.find_first_of(",\"") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

template <typename Range>
std::string csv_join(const Range& fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out.push_back(',');
    out += csv_field(f);
    first = false;
  }
  return out;
}

double parse_double(std::string_view text, const std::string& where) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.starts_with('+')) text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParseError, where + "cannot parse '" + std::string(text) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kNonFiniteValue, where + "non-finite value '" + std::string(text) + "'");
  }
  return value;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

/// Non-blank lines paired with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (!is_blank(lines[k])) out.emplace_back(k + 1, lines[k]);
  }
  return out;
}

// Little-endian cursor over a byte buffer.
class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T read() {
    require(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }

  std::string read_string() {
    const auto length = read<std::uint16_t>();
    require(length);
    std::string out(bytes_.substr(offset_, length));
    offset_ += length;
    return out;
  }

  std::size_t offset() const { return offset_; }
  bool done() const { return offset_ == bytes_.size(); }

 private:
  void require(std::size_t n) const {
    if (bytes_.size() - offset_ < n) {
      throw Error(ErrorKind::kParseError, "offset " + std::to_string(offset_) +
                                              ": unexpected end of binary embedding file");
    }
  }

  std::string_view bytes_;
  std::size_t offset_ = 0;
};

template <typename T>
void append_bytes(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

void append_string(std::string& out, const std::string& text) {
  if (text.size() > 0xFFFF) {
    throw Error(ErrorKind::kIoError, "string field longer than 65535 bytes: '" +
                                         text.substr(0, 32) + "...'");
  }
  append_bytes(out, static_cast<std::uint16_t>(text.size()));
  out += text;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, std::size_t expect_rows, std::size_t expect_cols) {
  if (!rows.is_array() || rows.size() != expect_rows) {
    throw Error(ErrorKind::kParseError, "matrix 'values' must have one array per row label");
  }
  Matrix m(expect_rows, expect_cols);
  for (std::size_t r = 0; r < expect_rows; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != expect_cols) {
      throw Error(ErrorKind::kRaggedRow, "matrix row " + std::to_string(r) +
                                             " does not match the column label count");
    }
    for (std::size_t c = 0; c < expect_cols; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::kIoError, "failed writing '" + path.string() + "'");
}

EmbeddingFormat parse_embedding_format(std::string_view text) {
  if (text == "csv") return EmbeddingFormat::kCsv;
  if (text == "binary" || text == "bin") return EmbeddingFormat::kBinary;
  throw Error(ErrorKind::kUsage, "unknown embedding format '" + std::string(text) + "'");
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::kCsv;
  if (text == "json") return TableFormat::kJson;
  throw Error(ErrorKind::kUsage,
              "unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string_view table_format_name(TableFormat format) {
  return format == TableFormat::kCsv ? "csv" : "json";
}

// --- embeddings -------------------------------------------------------------

EmbeddingDataset parse_embeddings_csv(std::string_view text, DatasetRole role) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::kParseError, "embedding CSV is empty");

  const auto header = split_csv(lines[0].second, lines[0].first);
  if (header.size() < 4 || header[0] != "id" || header[1] != "class" || header[2] != "domain") {
    throw Error(ErrorKind::kParseError,
                at_line(lines[0].first) + "expected header id,class,domain,e0,...");
  }
  const std::size_t dim = header.size() - 3;
  for (std::size_t k = 0; k < dim; ++k) {
    if (header[3 + k] != "e" + std::to_string(k)) {
      throw Error(ErrorKind::kParseError, at_line(lines[0].first) + "column " +
                                              std::to_string(4 + k) + " should be e" +
                                              std::to_string(k) + ", got '" + header[3 + k] + "'");
    }
  }

  std::vector<EmbeddingRecord> records;
  records.reserve(lines.size() - 1);
  std::set<std::string_view> ids;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    auto fields = split_csv(line, line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kRaggedRow, at_line(line_no) + "expected " +
                                             std::to_string(header.size()) + " columns, got " +
                                             std::to_string(fields.size()));
    }
    EmbeddingRecord rec;
    rec.vector.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      rec.vector.push_back(parse_double(fields[3 + k], at_line(line_no)));
    }
    rec.sample_id = std::move(fields[0]);
    rec.class_label = std::move(fields[1]);
    rec.domain_label = std::move(fields[2]);
    records.push_back(std::move(rec));
    if (!ids.insert(records.back().sample_id).second) {
      throw Error(ErrorKind::kDuplicateSampleId,
                  at_line(line_no) + "sample id '" + records.back().sample_id + "' repeated");
    }
  }
  return EmbeddingDataset(role, dim, std::move(records));
}

EmbeddingDataset parse_embeddings_binary(std::string_view bytes, DatasetRole role) {
  if (!bytes.starts_with(kBinaryMagic)) {
    throw Error(ErrorKind::kParseError, "offset 0: missing DDD1 magic");
  }
  ByteReader in(bytes.substr(kBinaryMagic.size()));
  const auto dim = in.read<std::uint32_t>();
  const auto count = in.read<std::uint32_t>();

  std::vector<EmbeddingRecord> records;
  std::set<std::string> ids;
  for (std::uint32_t r = 0; r < count; ++r) {
    const std::size_t start = in.offset() + kBinaryMagic.size();
    EmbeddingRecord rec;
    rec.sample_id = in.read_string();
    rec.class_label = in.read_string();
    rec.domain_label = in.read_string();
    rec.vector.reserve(dim);
    for (std::uint32_t k = 0; k < dim; ++k) {
      const float v = in.read<float>();
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kNonFiniteValue, "offset " + std::to_string(start) + ": record '" +
                                                    rec.sample_id + "' has a non-finite value");
      }
      rec.vector.push_back(static_cast<double>(v));
    }
    if (!ids.insert(rec.sample_id).second) {
      throw Error(ErrorKind::kDuplicateSampleId, "offset " + std::to_string(start) +
                                                     ": sample id '" + rec.sample_id + "' repeated");
    }
    records.push_back(std::move(rec));
  }
  if (!in.done()) {
    throw Error(ErrorKind::kParseError, "offset " + std::to_string(in.offset() + kBinaryMagic.size()) +
                                            ": trailing bytes after declared record count");
  }
  return EmbeddingDataset(role, dim, std::move(records));
}

std::string format_embeddings_csv(const EmbeddingDataset& dataset) {
  std::vector<std::string> header = {"id", "class", "domain"};
  for (std::size_t k = 0; k < dataset.dimension(); ++k) header.push_back("e" + std::to_string(k));
  std::string out = csv_join(header) + "\n";
  for (const auto& rec : dataset.records()) {
    out += csv_field(rec.sample_id) + "," + csv_field(rec.class_label) + "," +
           csv_field(rec.domain_label);
    for (double v : rec.vector) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string format_embeddings_binary(const EmbeddingDataset& dataset) {
  std::string out(kBinaryMagic);
  append_bytes(out, static_cast<std::uint32_t>(dataset.dimension()));
  append_bytes(out, static_cast<std::uint32_t>(dataset.size()));
  for (const auto& rec : dataset.records()) {
    append_string(out, rec.sample_id);
    append_string(out, rec.class_label);
    append_string(out, rec.domain_label);
    for (double v : rec.vector) append_bytes(out, static_cast<float>(v));
  }
  return out;
}

EmbeddingDataset read_embeddings(const std::filesystem::path& path, DatasetRole role) {
  const std::string bytes = read_file(path);
  try {
    if (std::string_view(bytes).starts_with(kBinaryMagic)) {
      return parse_embeddings_binary(bytes, role);
    }
    return parse_embeddings_csv(bytes, role);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_embeddings(const EmbeddingDataset& dataset, const std::filesystem::path& path,
                      EmbeddingFormat format) {
  write_file(path, format == EmbeddingFormat::kCsv ? format_embeddings_csv(dataset)
                                                   : format_embeddings_binary(dataset));
}

// --- predictions ------------------------------------------------------------

std::vector<PredictionRecord> parse_predictions_csv(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::kParseError, "prediction CSV is empty");

  const auto header = split_csv(lines[0].second, lines[0].first);
  const bool hard = header.size() == 3 && header[2] == "pred";
  std::vector<std::string> prob_labels;
  if (header.size() < 3 || header[0] != "id" || header[1] != "true") {
    throw Error(ErrorKind::kParseError,
                at_line(lines[0].first) + "expected header id,true,pred or id,true,p_<label>,...");
  }
  if (!hard) {
    std::set<std::string> seen;
    for (std::size_t k = 2; k < header.size(); ++k) {
      if (!header[k].starts_with("p_") || header[k].size() == 2) {
        throw Error(ErrorKind::kParseError, at_line(lines[0].first) + "column '" + header[k] +
                                                "' is not of the form p_<label>");
      }
      prob_labels.push_back(header[k].substr(2));
      if (!seen.insert(prob_labels.back()).second) {
        throw Error(ErrorKind::kParseError,
                    at_line(lines[0].first) + "duplicate probability column " + header[k]);
      }
    }
  }

  std::vector<PredictionRecord> records;
  std::set<std::string> ids;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    auto fields = split_csv(line, line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kRaggedRow, at_line(line_no) + "expected " +
                                             std::to_string(header.size()) + " columns, got " +
                                             std::to_string(fields.size()));
    }
    PredictionRecord rec;
    rec.sample_id = std::move(fields[0]);
    rec.true_label = std::move(fields[1]);
    if (hard) {
      rec.prediction = std::move(fields[2]);
    } else {
      ProbabilityMap probs;
      for (std::size_t k = 0; k < prob_labels.size(); ++k) {
        probs[prob_labels[k]] = parse_double(fields[2 + k], at_line(line_no));
      }
      try {
        validate_probabilities(probs, rec.sample_id);
      } catch (const Error& e) {
        throw Error(e.kind(), at_line(line_no) + e.what());
      }
      rec.prediction = std::move(probs);
    }
    if (!ids.insert(rec.sample_id).second) {
      throw Error(ErrorKind::kDuplicateSampleId,
                  at_line(line_no) + "sample id '" + rec.sample_id + "' repeated");
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "prediction CSV has no records");
  return records;
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_predictions_csv(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_predictions_csv(const std::vector<PredictionRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no prediction records to write");
  const bool soft = records.front().is_soft();
  for (const auto& rec : records) {
    if (rec.is_soft() != soft) {
      throw Error(ErrorKind::kMixedModes, "cannot write hard and soft predictions to one file");
    }
  }
  std::string out;
  if (!soft) {
    out = "id,true,pred\n";
    for (const auto& rec : records) {
      out += csv_field(rec.sample_id) + "," + csv_field(rec.true_label) + "," +
             csv_field(std::get<std::string>(rec.prediction)) + "\n";
    }
    return out;
  }
  std::set<std::string> label_set;
  for (const auto& rec : records)
    for (const auto& [label, p] : std::get<ProbabilityMap>(rec.prediction)) label_set.insert(label);
  std::vector<std::string> header = {"id", "true"};
  for (const auto& label : label_set) header.push_back("p_" + label);
  out = csv_join(header) + "\n";
  for (const auto& rec : records) {
    const auto& probs = std::get<ProbabilityMap>(rec.prediction);
    out += csv_field(rec.sample_id) + "," + csv_field(rec.true_label);
    for (const auto& label : label_set) {
      auto it = probs.find(label);
      out += "," + format_double(it == probs.end() ? 0.0 : it->second);
    }
    out += "\n";
  }
  return out;
}

void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path) {
  write_file(path, format_predictions_csv(records));
}

// --- matrices ---------------------------------------------------------------

LabeledMatrix to_labeled(const DistanceMatrix& m) {
  return {"distance", std::nullopt, m.train_labels, m.test_labels, m.values};
}

LabeledMatrix to_labeled(const SimilarityMatrix& m) {
  return {"similarity", m.alpha, m.train_labels, m.test_labels, m.values};
}

LabeledMatrix to_labeled(const ConfusionMatrix& m) {
  return {"confusion", std::nullopt, m.labels, m.labels, m.values};
}

SimilarityMatrix to_similarity(const LabeledMatrix& m) {
  if (m.values.empty()) throw Error(ErrorKind::kEmptyInput, "similarity matrix is empty");
  return {m.alpha.value_or(kDefaultAlpha), m.row_labels, m.col_labels, m.values};
}

DistanceMatrix to_distance(const LabeledMatrix& m) {
  if (m.values.empty()) throw Error(ErrorKind::kEmptyInput, "distance matrix is empty");
  return {m.row_labels, m.col_labels, m.values};
}

// CSV layout: the first header cell holds the kind, optionally followed by
// " alpha=<value>"; remaining header cells are column labels and every row
// starts with its row label.
std::string format_matrix(const LabeledMatrix& m, TableFormat format) {
  if (format == TableFormat::kJson) {
    json doc;
    doc["kind"] = m.kind;
    if (m.alpha) doc["alpha"] = *m.alpha;
    doc["row_labels"] = m.row_labels;
    doc["col_labels"] = m.col_labels;
    doc["values"] = matrix_json(m.values);
    return detail::dump_json(doc);
  }
  std::string corner = m.kind;
  if (m.alpha) corner += " alpha=" + format_double(*m.alpha);
  std::vector<std::string> header = {corner};
  header.insert(header.end(), m.col_labels.begin(), m.col_labels.end());
  std::string out = csv_join(header) + "\n";
  for (std::size_t r = 0; r < m.values.rows(); ++r) {
    out += csv_field(m.row_labels[r]);
    for (double v : m.values.row(r)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

LabeledMatrix parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::kParseError, "matrix file is empty");

  LabeledMatrix m;
  if (text[first] == '{') {
    try {
      const json doc = json::parse(text);
      m.kind = doc.value("kind", std::string("matrix"));
      if (doc.contains("alpha") && !doc["alpha"].is_null()) m.alpha = doc["alpha"].get<double>();
      m.row_labels = doc.at("row_labels").get<std::vector<std::string>>();
      m.col_labels = doc.at("col_labels").get<std::vector<std::string>>();
      m.values = matrix_from_json(doc.at("values"), m.row_labels.size(), m.col_labels.size());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParseError, std::string("matrix JSON: ") + e.what());
    }
    return m;
  }

  const auto lines = content_lines(text);
  const auto header = split_csv(lines[0].second, lines[0].first);
  const std::string& corner = header[0];
  const auto space = corner.find(' ');
  m.kind = corner.substr(0, space);
  if (m.kind.empty()) m.kind = "matrix";
  if (space != std::string::npos) {
    const std::string_view rest = std::string_view(corner).substr(space + 1);
    if (!rest.starts_with("alpha=")) {
      throw Error(ErrorKind::kParseError, at_line(lines[0].first) + "unrecognised header cell '" +
                                              corner + "'");
    }
    m.alpha = parse_double(rest.substr(6), at_line(lines[0].first));
  }
  m.col_labels.assign(header.begin() + 1, header.end());
  m.values = Matrix(lines.size() - 1, m.col_labels.size());
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    const auto fields = split_csv(line, line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kRaggedRow, at_line(line_no) + "expected " +
                                             std::to_string(header.size()) + " columns, got " +
                                             std::to_string(fields.size()));
    }
    m.row_labels.push_back(fields[0]);
    for (std::size_t c = 0; c < m.col_labels.size(); ++c) {
      m.values(l - 1, c) = parse_double(fields[c + 1], at_line(line_no));
    }
  }
  return m;
}

void write_matrix(const LabeledMatrix& m, const std::filesystem::path& path, TableFormat format) {
  write_file(path, format_matrix(m, format));
}

LabeledMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_matrix(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

// --- reports ----------------------------------------------------------------

namespace {

json report_json(const CorrelationReport& report) {
  json doc;
  doc["aggregate_R"] = report.aggregate_r;
  doc["alpha"] = report.alpha;
  doc["pairing"] = std::string(pairing_name(report.pairing));
  doc["per_class"] = json::object();
  for (const auto& [label, r] : report.per_class) doc["per_class"][label] = r;
  doc["excluded_classes"] = json::array();
  for (const auto& ex : report.excluded) {
    doc["excluded_classes"].push_back({{"label", ex.label}, {"reason", ex.reason}});
  }
  doc["warnings"] = report.warnings;
  return doc;
}

CorrelationReport report_from_json(const json& doc) {
  CorrelationReport report;
  report.aggregate_r = doc.at("aggregate_R").get<double>();
  report.alpha = doc.at("alpha").get<double>();
  report.pairing = parse_pairing(doc.at("pairing").get<std::string>());
  for (const auto& [label, r] : doc.at("per_class").items()) report.per_class[label] = r.get<double>();
  for (const auto& ex : doc.at("excluded_classes")) {
    report.excluded.push_back({ex.at("label").get<std::string>(), ex.at("reason").get<std::string>()});
  }
  if (doc.contains("warnings")) report.warnings = doc["warnings"].get<std::vector<std::string>>();
  return report;
}

}  // namespace

// CSV layout is long-form `field,label,value`, one fact per line.
std::string format_report(const CorrelationReport& report, TableFormat format) {
  if (format == TableFormat::kJson) return detail::dump_json(report_json(report));
  std::string out = "field,label,value\n";
  out += "aggregate_R,," + format_double(report.aggregate_r) + "\n";
  out += "alpha,," + format_double(report.alpha) + "\n";
  out += "pairing,," + std::string(pairing_name(report.pairing)) + "\n";
  for (const auto& [label, r] : report.per_class) {
    out += "per_class," + csv_field(label) + "," + format_double(r) + "\n";
  }
  for (const auto& ex : report.excluded) {
    out += "excluded," + csv_field(ex.label) + "," + csv_field(ex.reason) + "\n";
  }
  for (const auto& w : report.warnings) out += "warning,," + csv_field(w) + "\n";
  return out;
}

CorrelationReport parse_report(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::kParseError, "report is empty");
  if (text[first] == '{') {
    try {
      return report_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParseError, std::string("report JSON: ") + e.what());
    }
  }

  const auto lines = content_lines(text);
  if (split_csv(lines[0].second, lines[0].first) !=
      std::vector<std::string>{"field", "label", "value"}) {
    throw Error(ErrorKind::kParseError, at_line(lines[0].first) + "expected header field,label,value");
  }
  CorrelationReport report;
  bool have_r = false, have_alpha = false, have_pairing = false;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    const auto f = split_csv(line, line_no);
    if (f.size() != 3) throw Error(ErrorKind::kRaggedRow, at_line(line_no) + "expected 3 columns");
    if (f[0] == "aggregate_R") {
      report.aggregate_r = parse_double(f[2], at_line(line_no));
      have_r = true;
    } else if (f[0] == "alpha") {
      report.alpha = parse_double(f[2], at_line(line_no));
      have_alpha = true;
    } else if (f[0] == "pairing") {
      report.pairing = parse_pairing(f[2]);
      have_pairing = true;
    } else if (f[0] == "per_class") {
      report.per_class[f[1]] = parse_double(f[2], at_line(line_no));
    } else if (f[0] == "excluded") {
      report.excluded.push_back({f[1], f[2]});
    } else if (f[0] == "warning") {
      report.warnings.push_back(f[2]);
    } else {
      throw Error(ErrorKind::kParseError, at_line(line_no) + "unknown field '" + f[0] + "'");
    }
  }
  if (!have_r || !have_alpha || !have_pairing) {
    throw Error(ErrorKind::kParseError, "report lacks aggregate_R, alpha or pairing");
  }
  return report;
}

void write_report(const CorrelationReport& report, const std::filesystem::path& path,
                  TableFormat format) {
  write_file(path, format_report(report, format));
}

CorrelationReport read_report(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_report(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_sweep(const SweepResult& sweep, TableFormat format) {
  if (format == TableFormat::kJson) {
    json doc;
    doc["pairing"] = std::string(pairing_name(sweep.best().report.pairing));
    doc["argmax"] = {{"alpha", sweep.best().alpha},
                     {"aggregate_R", sweep.best().report.aggregate_r}};
    doc["points"] = json::array();
    for (const auto& pt : sweep.points) {
      json per_class = json::object();
      for (const auto& [label, r] : pt.report.per_class) per_class[label] = r;
      doc["points"].push_back(
          {{"alpha", pt.alpha}, {"aggregate_R", pt.report.aggregate_r}, {"per_class", per_class}});
    }
    return detail::dump_json(doc);
  }
  std::string out = "alpha,aggregate_R\n";
  for (const auto& pt : sweep.points) {
    out += format_double(pt.alpha) + "," + format_double(pt.report.aggregate_r) + "\n";
  }
  return out;
}

}  // namespace ddd::io
