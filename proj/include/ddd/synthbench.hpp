#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddd/confusion.hpp"
#include "ddd/correlation.hpp"
#include "ddd/embedding.hpp"
#include "ddd/matrix.hpp"

namespace ddd::synth {

enum class DistortionKind { kIdentity, kRandomRotation, kRandomProjection, kNoise };

/// A toy encoder: how the benchmark's embedding space differs from the
/// classifier's own feature space.
struct Distortion {
  DistortionKind kind = DistortionKind::kIdentity;
  std::size_t k = 0;     // target dimension for kRandomProjection
  double sigma = 0.0;    // per-coordinate noise for kNoise

  std::string describe() const;
  bool operator==(const Distortion&) const = default;
};

struct SynthConfig {
  std::size_t class_count = 5;
  std::size_t dimension = 16;
  std::size_t train_per_class = 30;
  std::size_t test_per_class = 30;
  double separation = 10.0;   // distance between any two class centres
  double spread = 0.5;        // isotropic Gaussian std-dev around a centre
  double shift_magnitude = 0.0;       // per-class random direction, if no vector
  std::vector<double> shift_vector;   // added to every test centre when nonempty
  Distortion encoder_distortion;
  std::vector<std::string> class_names;  // defaults to c00, c01, ...
  std::uint64_t seed = 7;

  /// Throws InvalidConfig.
  void validate() const;
  std::vector<std::string> labels() const;
};

struct SynthData {
  EmbeddingDataset train;
  EmbeddingDataset test;
  Matrix train_centers;  // class_count x dimension, rows in label order
  Matrix test_centers;
};

/// Class centres form a regular simplex with edge `separation`, centred at
/// the origin and randomly oriented from the seed; this needs
/// dimension >= class_count - 1.
SynthData generate(const SynthConfig& config);

/// Nearest-centroid classifier trained on `train`. Hard mode predicts the
/// closest train centroid (ties to the smallest label); soft mode emits
/// softmax(-temperature * distance) over train labels.
std::vector<PredictionRecord> nearest_centroid_classify(
    const EmbeddingDataset& train, const EmbeddingDataset& test,
    std::optional<double> soft_temperature = std::nullopt);

/// Rotation and projection matrices depend on `seed` only, so train and test
/// passed with the same seed share one map. Noise draws from a stream that
/// also depends on the dataset role.
EmbeddingDataset apply_encoder_distortion(const EmbeddingDataset& dataset,
                                          const Distortion& distortion, std::uint64_t seed);

struct EncoderSpec {
  std::string name;
  Distortion distortion;
};

struct ExperimentConfig {
  SynthConfig synth;
  std::vector<EncoderSpec> encoders;  // empty: synth.encoder_distortion only
  double alpha = kDefaultAlpha;
  Pairing pairing = kDefaultPairing;
  std::vector<double> alpha_grid = default_alpha_grid();
  std::optional<double> classifier_temperature;
};

struct EncoderResult {
  std::string name;
  Distortion distortion;
  bool shared_space = false;  // encoder space == classifier space
  CorrelationReport report;
  double aggregate_r_other_pairing = 0.0;
  SweepResult sweep;
};

struct ExperimentReport {
  ExperimentConfig config;
  ConfusionMatrix confusion;
  double classifier_accuracy = 0.0;  // mean diagonal of P over supported rows
  bool low_signal = false;
  std::vector<EncoderResult> encoders;
  std::vector<std::string> ranking;  // encoder names by aggregate R, descending
  std::vector<std::string> warnings;
};

/// Accuracy below this multiple of chance (1/C) marks the low-signal regime.
inline constexpr double kLowSignalChanceMultiple = 1.5;

ExperimentReport run_experiment(const ExperimentConfig& config, const SynthData& data);
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Parses the JSON experiment config; unknown keys are rejected.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string format_experiment_config(const ExperimentConfig& config);
std::string format_experiment_report(const ExperimentReport& report);

}  // namespace ddd::synth
