#include "ddd/synthbench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Dense>
#include <json.hpp>

#include "ddd/core_metrics.hpp"
#include "ddd/error.hpp"
#include "ddd/io.hpp"
#include "ddd/random.hpp"
#include "json_dump.hpp"

namespace ddd::synth {

using nlohmann::json;

namespace {

// Stream ids for derive_seed; changing any of them changes every dataset.
constexpr std::uint64_t kCenterStream = 1;
constexpr std::uint64_t kShiftStream = 2;
constexpr std::uint64_t kTrainSampleStream = 3;
constexpr std::uint64_t kTestSampleStream = 4;
constexpr std::uint64_t kMapStream = 5;
constexpr std::uint64_t kNoiseStream = 6;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidConfig, message);
}

/// n x m matrix with orthonormal columns, Haar-distributed, drawn row by row.
Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t m, Rng& rng) {
  Eigen::MatrixXd gauss(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index r = 0; r < gauss.rows(); ++r)
    for (Eigen::Index c = 0; c < gauss.cols(); ++c) gauss(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(gauss.rows(), gauss.cols());
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    if (packed(c, c) < 0.0) q.col(c) *= -1.0;
  }
  return q;
}

std::string padded(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::vector<double> gaussian_around(std::span<const double> center, double spread, Rng& rng) {
  std::vector<double> v(center.begin(), center.end());
  for (double& x : v) x += spread * rng.normal();
  return v;
}

EmbeddingDataset sample_dataset(const SynthConfig& config, DatasetRole role, const Matrix& centers,
                                std::size_t per_class, std::uint64_t stream) {
  Rng rng(derive_seed(config.seed, stream));
  const auto labels = config.labels();
  const std::string prefix(role_name(role));
  std::vector<EmbeddingRecord> records;
  records.reserve(labels.size() * per_class);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    for (std::size_t k = 0; k < per_class; ++k) {
      records.push_back({prefix + "-" + labels[c] + "-" + padded(k, 5), labels[c],
                         "synthetic-" + prefix,
                         gaussian_around(centers.row(c), config.spread, rng)});
    }
  }
  return EmbeddingDataset(role, config.dimension, std::move(records), labels);
}

}  // namespace

std::string Distortion::describe() const {
  switch (kind) {
    case DistortionKind::kIdentity: return "identity";
    case DistortionKind::kRandomRotation: return "random_rotation";
    case DistortionKind::kRandomProjection: return "random_projection(" + std::to_string(k) + ")";
    case DistortionKind::kNoise: return "noise(" + io::format_double(sigma) + ")";
  }
  return "unknown";
}

void SynthConfig::validate() const {
  if (class_count < 2) invalid("class_count must be at least 2");
  if (dimension < 2) invalid("dimension must be at least 2");
  if (dimension + 1 < class_count) {
    invalid("equidistant class centres need dimension >= class_count - 1");
  }
  if (train_per_class < 2 || test_per_class < 2) invalid("per-class sample counts must be at least 2");
  if (!std::isfinite(separation) || separation <= 0.0) invalid("separation must be positive");
  if (!std::isfinite(spread) || spread <= 0.0) invalid("spread must be positive");
  if (!std::isfinite(shift_magnitude) || shift_magnitude < 0.0) {
    invalid("domain shift magnitude must be nonnegative");
  }
  if (!shift_vector.empty()) {
    if (shift_vector.size() != dimension) invalid("domain shift vector length must equal dimension");
    for (double v : shift_vector)
      if (!std::isfinite(v)) invalid("domain shift vector must be finite");
  }
  if (!class_names.empty()) {
    if (class_names.size() != class_count) invalid("class_names must list class_count names");
    if (std::set<std::string>(class_names.begin(), class_names.end()).size() != class_count) {
      invalid("class_names must be unique");
    }
  }
}

std::vector<std::string> SynthConfig::labels() const {
  if (!class_names.empty()) {
    auto names = class_names;
    std::sort(names.begin(), names.end());
    return names;
  }
  const std::size_t width = std::max<std::size_t>(2, std::to_string(class_count - 1).size());
  std::vector<std::string> out;
  for (std::size_t c = 0; c < class_count; ++c) out.push_back("c" + padded(c, width));
  return out;
}

SynthData generate(const SynthConfig& config) {
  config.validate();
  const std::size_t classes = config.class_count;
  const std::size_t dim = config.dimension;

  // Helmert coordinates: row m is vertex e_m of the standard simplex
  // expressed in an orthonormal basis of the hyperplane orthogonal to
  // (1,...,1). Vertices are sqrt(2) apart.
  Eigen::MatrixXd simplex = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(classes),
                                                  static_cast<Eigen::Index>(classes - 1));
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(classes); ++k) {
    const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
    for (Eigen::Index m = 0; m < k; ++m) simplex(m, k - 1) = 1.0 / norm;
    simplex(k, k - 1) = -static_cast<double>(k) / norm;
  }
  Rng center_rng(derive_seed(config.seed, kCenterStream));
  const Eigen::MatrixXd basis = random_orthonormal(dim, classes - 1, center_rng);
  const Eigen::MatrixXd centers = (config.separation / std::sqrt(2.0)) * simplex * basis.transpose();

  Matrix train_centers(classes, dim);
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t k = 0; k < dim; ++k)
      train_centers(c, k) = centers(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k));

  Matrix test_centers = train_centers;
  if (!config.shift_vector.empty()) {
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t k = 0; k < dim; ++k) test_centers(c, k) += config.shift_vector[k];
  } else {
    // Directions are drawn even for zero magnitude so that varying the
    // magnitude alone leaves every other draw untouched.
    Rng shift_rng(derive_seed(config.seed, kShiftStream));
    for (std::size_t c = 0; c < classes; ++c) {
      std::vector<double> dir(dim);
      double norm = 0.0;
      for (double& x : dir) {
        x = shift_rng.normal();
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (std::size_t k = 0; k < dim; ++k) {
        test_centers(c, k) += config.shift_magnitude * dir[k] / norm;
      }
    }
  }

  EmbeddingDataset train = sample_dataset(config, DatasetRole::kTrain, train_centers,
                                         config.train_per_class, kTrainSampleStream);
  EmbeddingDataset test = sample_dataset(config, DatasetRole::kTest, test_centers,
                                        config.test_per_class, kTestSampleStream);
  return {std::move(train), std::move(test), std::move(train_centers), std::move(test_centers)};
}

std::vector<PredictionRecord> nearest_centroid_classify(const EmbeddingDataset& train,
                                                        const EmbeddingDataset& test,
                                                        std::optional<double> soft_temperature) {
  if (train.dimension() != test.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch, "train and test embeddings differ in dimension");
  }
  if (soft_temperature && (!std::isfinite(*soft_temperature) || *soft_temperature <= 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "soft temperature must be a finite positive number");
  }
  const ClassCentroids centroids = compute_centroids(train);
  const std::size_t classes = centroids.labels.size();

  std::vector<PredictionRecord> out;
  out.reserve(test.size());
  std::vector<double> dist(classes);
  for (const auto& rec : test.records()) {
    for (std::size_t c = 0; c < classes; ++c) {
      dist[c] = euclidean_distance(rec.vector, centroids.centroids.row(c));
    }
    PredictionRecord pred{rec.sample_id, rec.class_label, std::string()};
    if (!soft_temperature) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < classes; ++c)
        if (dist[c] < dist[best]) best = c;
      pred.prediction = centroids.labels[best];
    } else {
      const double t = *soft_temperature;
      const double nearest = *std::min_element(dist.begin(), dist.end());
      double total = 0.0;
      std::vector<double> weight(classes);
      for (std::size_t c = 0; c < classes; ++c) {
        weight[c] = std::exp(-t * (dist[c] - nearest));
        total += weight[c];
      }
      ProbabilityMap probs;
      for (std::size_t c = 0; c < classes; ++c) probs[centroids.labels[c]] = weight[c] / total;
      pred.prediction = std::move(probs);
    }
    out.push_back(std::move(pred));
  }
  return out;
}

EmbeddingDataset apply_encoder_distortion(const EmbeddingDataset& dataset,
                                          const Distortion& distortion, std::uint64_t seed) {
  const std::size_t dim = dataset.dimension();
  std::vector<EmbeddingRecord> records = dataset.records();

  // Applies z' = M^T z for a dim x out_dim matrix M.
  auto apply_map = [&](const Eigen::MatrixXd& map) {
    const auto out_dim = static_cast<std::size_t>(map.cols());
    for (auto& rec : records) {
      std::vector<double> mapped(out_dim, 0.0);
      for (std::size_t o = 0; o < out_dim; ++o) {
        double sum = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          sum += map(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(o)) * rec.vector[k];
        }
        mapped[o] = sum;
      }
      rec.vector = std::move(mapped);
    }
    return out_dim;
  };

  std::size_t out_dim = dim;
  switch (distortion.kind) {
    case DistortionKind::kIdentity:
      return dataset;
    case DistortionKind::kRandomRotation: {
      Rng rng(derive_seed(seed, kMapStream));
      out_dim = apply_map(random_orthonormal(dim, dim, rng));
      break;
    }
    case DistortionKind::kRandomProjection: {
      if (distortion.k == 0 || distortion.k > dim) {
        invalid("projection dimension k must satisfy 1 <= k <= " + std::to_string(dim));
      }
      Rng rng(derive_seed(seed, kMapStream));
      Eigen::MatrixXd map(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(distortion.k));
      const double scale = 1.0 / std::sqrt(static_cast<double>(distortion.k));
      for (Eigen::Index r = 0; r < map.rows(); ++r)
        for (Eigen::Index c = 0; c < map.cols(); ++c) map(r, c) = scale * rng.normal();
      out_dim = apply_map(map);
      break;
    }
    case DistortionKind::kNoise: {
      if (!std::isfinite(distortion.sigma) || distortion.sigma < 0.0) {
        invalid("noise sigma must be a finite nonnegative number");
      }
      const std::uint64_t role_stream = dataset.role() == DatasetRole::kTrain ? 0 : 1;
      Rng rng(derive_seed(derive_seed(seed, kNoiseStream), role_stream));
      for (auto& rec : records)
        for (double& x : rec.vector) x += distortion.sigma * rng.normal();
      break;
    }
  }
  return EmbeddingDataset(dataset.role(), out_dim, std::move(records), dataset.labels());
}

ExperimentReport run_experiment(const ExperimentConfig& config, const SynthData& data) {
  ExperimentReport report;
  report.config = config;

  const auto predictions =
      nearest_centroid_classify(data.train, data.test, config.classifier_temperature);
  std::vector<std::string> labels = data.train.labels();
  for (const auto& l : data.test.labels()) labels.push_back(l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  report.confusion = build_confusion(predictions, labels);

  double diag = 0.0;
  std::size_t supported = 0;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (report.confusion.support[a] == 0) continue;
    diag += report.confusion.values(a, a);
    ++supported;
  }
  report.classifier_accuracy = supported == 0 ? 0.0 : diag / static_cast<double>(supported);
  const double chance = 1.0 / static_cast<double>(data.train.class_count());
  report.low_signal =
      report.classifier_accuracy < std::min(1.0, kLowSignalChanceMultiple * chance);
  if (report.low_signal) {
    report.warnings.push_back(
        "low-signal regime: classifier accuracy is near chance, R carries little information");
  }

  std::vector<EncoderSpec> encoders = config.encoders;
  if (encoders.empty()) {
    encoders.push_back({config.synth.encoder_distortion.describe(), config.synth.encoder_distortion});
  }

  const CorrelateOptions options{config.pairing, false};
  const CorrelateOptions other{
      config.pairing == Pairing::kLiteral ? Pairing::kTranspose : Pairing::kLiteral, false};
  for (const auto& spec : encoders) {
    const std::uint64_t seed = derive_seed(config.synth.seed, stream_id(spec.name));
    const EmbeddingDataset train = apply_encoder_distortion(data.train, spec.distortion, seed);
    const EmbeddingDataset test = apply_encoder_distortion(data.test, spec.distortion, seed);
    const DistanceMatrix distances = compute_distance_matrix(train, compute_centroids(test));
    const SimilarityMatrix similarity = compute_similarity(distances, config.alpha);

    EncoderResult result;
    result.name = spec.name;
    result.distortion = spec.distortion;
    result.shared_space = spec.distortion.kind == DistortionKind::kIdentity;
    result.report = correlate(similarity, report.confusion, options);
    result.aggregate_r_other_pairing = correlate(similarity, report.confusion, other).aggregate_r;
    result.sweep = sweep_alpha(distances, report.confusion, config.alpha_grid, options);
    report.encoders.push_back(std::move(result));
  }

  std::vector<std::size_t> order(report.encoders.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.encoders[a].report.aggregate_r > report.encoders[b].report.aggregate_r;
  });
  for (std::size_t k : order) report.ranking.push_back(report.encoders[k].name);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, generate(config.synth));
}

// --- JSON -------------------------------------------------------------------

namespace {

template <typename T>
T get_field(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(where + ": field '" + key + "' is missing or has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      invalid(where + ": unknown field '" + key + "'");
    }
  }
}

std::size_t get_count(const json& obj, const char* key, const std::string& where) {
  if (!obj.at(key).is_number_integer() || obj.at(key).get<long long>() < 0) {
    invalid(where + ": field '" + key + "' must be a nonnegative integer");
  }
  return obj.at(key).get<std::size_t>();
}

Distortion distortion_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) invalid(where + " must be an object");
  const auto type = get_field<std::string>(obj, "type", where);
  Distortion d;
  if (type == "identity") {
    d.kind = DistortionKind::kIdentity;
  } else if (type == "random_rotation") {
    d.kind = DistortionKind::kRandomRotation;
  } else if (type == "random_projection") {
    d.kind = DistortionKind::kRandomProjection;
    if (!obj.contains("k")) invalid(where + ": random_projection needs k");
    d.k = get_count(obj, "k", where);
  } else if (type == "noise") {
    d.kind = DistortionKind::kNoise;
    d.sigma = get_field<double>(obj, "sigma", where);
    if (!std::isfinite(d.sigma) || d.sigma < 0.0) invalid(where + ": sigma must be nonnegative");
  } else {
    invalid(where + ": unknown distortion type '" + type + "'");
  }
  return d;
}

json distortion_to_json(const Distortion& d) {
  switch (d.kind) {
    case DistortionKind::kIdentity: return {{"type", "identity"}};
    case DistortionKind::kRandomRotation: return {{"type", "random_rotation"}};
    case DistortionKind::kRandomProjection: return {{"type", "random_projection"}, {"k", d.k}};
    case DistortionKind::kNoise: return {{"type", "noise"}, {"sigma", d.sigma}};
  }
  return {};
}

json report_to_json(const CorrelationReport& r) {
  json per_class = json::object();
  for (const auto& [label, value] : r.per_class) per_class[label] = value;
  json excluded = json::array();
  for (const auto& ex : r.excluded) excluded.push_back({{"label", ex.label}, {"reason", ex.reason}});
  return {{"aggregate_R", r.aggregate_r}, {"alpha", r.alpha},
          {"pairing", std::string(pairing_name(r.pairing))}, {"per_class", per_class},
          {"excluded_classes", excluded}, {"warnings", r.warnings}};
}

json config_to_json(const ExperimentConfig& config) {
  const SynthConfig& s = config.synth;
  json doc;
  doc["seed"] = s.seed;
  doc["class_count"] = s.class_count;
  doc["dimension"] = s.dimension;
  doc["train_per_class"] = s.train_per_class;
  doc["test_per_class"] = s.test_per_class;
  doc["separation"] = s.separation;
  doc["spread"] = s.spread;
  if (s.shift_vector.empty()) {
    doc["domain_shift"] = s.shift_magnitude;
  } else {
    doc["domain_shift"] = s.shift_vector;
  }
  if (!s.class_names.empty()) doc["class_names"] = s.class_names;
  doc["encoder"] = distortion_to_json(s.encoder_distortion);
  doc["encoders"] = json::array();
  for (const auto& e : config.encoders) {
    json entry = distortion_to_json(e.distortion);
    entry["name"] = e.name;
    doc["encoders"].push_back(entry);
  }
  doc["alpha"] = config.alpha;
  doc["pairing"] = std::string(pairing_name(config.pairing));
  doc["alpha_grid"] = config.alpha_grid;
  if (config.classifier_temperature) {
    doc["classifier_temperature"] = *config.classifier_temperature;
  } else {
    doc["classifier_temperature"] = nullptr;
  }
  return doc;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("experiment config: ") + e.what());
  }
  const std::string where = "experiment config";
  if (!doc.is_object()) invalid(where + " must be a JSON object");
  reject_unknown(doc,
                 {"seed", "class_count", "dimension", "train_per_class", "test_per_class",
                  "separation", "spread", "domain_shift", "class_names", "encoder", "encoders",
                  "alpha", "pairing", "alpha_grid", "classifier_temperature"},
                 where);

  ExperimentConfig config;
  SynthConfig& s = config.synth;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) invalid(where + ": seed must be a nonnegative integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("class_count")) s.class_count = get_count(doc, "class_count", where);
  if (doc.contains("dimension")) s.dimension = get_count(doc, "dimension", where);
  if (doc.contains("train_per_class")) s.train_per_class = get_count(doc, "train_per_class", where);
  if (doc.contains("test_per_class")) s.test_per_class = get_count(doc, "test_per_class", where);
  if (doc.contains("separation")) s.separation = get_field<double>(doc, "separation", where);
  if (doc.contains("spread")) s.spread = get_field<double>(doc, "spread", where);
  if (doc.contains("domain_shift")) {
    if (doc["domain_shift"].is_array()) {
      s.shift_vector = get_field<std::vector<double>>(doc, "domain_shift", where);
    } else {
      s.shift_magnitude = get_field<double>(doc, "domain_shift", where);
    }
  }
  if (doc.contains("class_names")) {
    s.class_names = get_field<std::vector<std::string>>(doc, "class_names", where);
  }
  if (doc.contains("encoder")) s.encoder_distortion = distortion_from_json(doc["encoder"], where + ".encoder");
  if (doc.contains("encoders")) {
    if (!doc["encoders"].is_array()) invalid(where + ": encoders must be an array");
    std::set<std::string> names;
    for (std::size_t k = 0; k < doc["encoders"].size(); ++k) {
      const json& entry = doc["encoders"][k];
      const std::string at = where + ".encoders[" + std::to_string(k) + "]";
      if (entry.is_object()) reject_unknown(entry, {"name", "type", "k", "sigma"}, at);
      EncoderSpec spec;
      spec.distortion = distortion_from_json(entry, at);
      spec.name = entry.contains("name") ? get_field<std::string>(entry, "name", at)
                                         : spec.distortion.describe();
      if (!names.insert(spec.name).second) invalid(at + ": duplicate encoder name '" + spec.name + "'");
      config.encoders.push_back(std::move(spec));
    }
  }
  if (doc.contains("alpha")) config.alpha = get_field<double>(doc, "alpha", where);
  if (doc.contains("pairing")) {
    try {
      config.pairing = parse_pairing(get_field<std::string>(doc, "pairing", where));
    } catch (const Error& e) {
      invalid(e.what());
    }
  }
  if (doc.contains("alpha_grid")) {
    const json& grid = doc["alpha_grid"];
    try {
      if (grid.is_array()) {
        config.alpha_grid = grid.get<std::vector<double>>();
      } else if (grid.is_object()) {
        reject_unknown(grid, {"min", "max", "steps"}, where + ".alpha_grid");
        config.alpha_grid = log_grid(get_field<double>(grid, "min", where + ".alpha_grid"),
                                     get_field<double>(grid, "max", where + ".alpha_grid"),
                                     get_count(grid, "steps", where + ".alpha_grid"));
      } else {
        invalid(where + ": alpha_grid must be an array or {min, max, steps}");
      }
    } catch (const json::exception&) {
      invalid(where + ": alpha_grid must contain numbers");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidConfig) throw;
      invalid(e.what());
    }
  }
  if (doc.contains("classifier_temperature") && !doc["classifier_temperature"].is_null()) {
    config.classifier_temperature = get_field<double>(doc, "classifier_temperature", where);
  }

  s.validate();
  try {
    validate_alpha(config.alpha);
    for (std::size_t k = 0; k < config.alpha_grid.size(); ++k) {
      validate_alpha(config.alpha_grid[k]);
      if (k > 0 && !(config.alpha_grid[k] > config.alpha_grid[k - 1])) {
        invalid(where + ": alpha_grid must be strictly increasing");
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidConfig) throw;
    invalid(e.what());
  }
  if (config.alpha_grid.empty()) invalid(where + ": alpha_grid is empty");
  if (config.classifier_temperature &&
      (!std::isfinite(*config.classifier_temperature) || *config.classifier_temperature <= 0.0)) {
    invalid(where + ": classifier_temperature must be positive");
  }
  for (const auto& e : config.encoders) {
    if (e.distortion.kind == DistortionKind::kRandomProjection &&
        (e.distortion.k == 0 || e.distortion.k > s.dimension)) {
      invalid(where + ": encoder '" + e.name + "' projects to k outside 1..dimension");
    }
  }
  return config;
}

std::string format_experiment_config(const ExperimentConfig& config) {
  return io::detail::dump_json(config_to_json(config));
}

std::string format_experiment_report(const ExperimentReport& report) {
  json doc;
  doc["config"] = config_to_json(report.config);
  json confusion;
  confusion["labels"] = report.confusion.labels;
  confusion["mode"] = std::string(mode_name(report.confusion.mode));
  confusion["support"] = report.confusion.support;
  json rows = json::array();
  for (std::size_t r = 0; r < report.confusion.values.rows(); ++r) {
    const auto row = report.confusion.values.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  confusion["values"] = rows;
  doc["classifier"] = {{"accuracy", report.classifier_accuracy}, {"confusion", confusion}};
  doc["low_signal"] = report.low_signal;

  doc["encoders"] = json::array();
  for (const auto& e : report.encoders) {
    json entry = report_to_json(e.report);
    entry["name"] = e.name;
    entry["distortion"] = distortion_to_json(e.distortion);
    entry["shared_space"] = e.shared_space;
    entry["aggregate_R_other_pairing"] = e.aggregate_r_other_pairing;
    json points = json::array();
    for (const auto& pt : e.sweep.points) points.push_back({pt.alpha, pt.report.aggregate_r});
    entry["sweep"] = {{"argmax_alpha", e.sweep.best().alpha},
                      {"argmax_R", e.sweep.best().report.aggregate_r},
                      {"points", points}};
    doc["encoders"].push_back(entry);
  }
  doc["ranking"] = report.ranking;
  doc["warnings"] = report.warnings;
  return io::detail::dump_json(doc);
}

}  // namespace ddd::synth
