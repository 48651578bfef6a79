// ddd: command-line front end for the discriminative difficulty distance
// toolkit.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage or validation error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddd/confusion.hpp"
#include "ddd/core_metrics.hpp"
#include "ddd/correlation.hpp"
#include "ddd/error.hpp"
#include "ddd/heatmap.hpp"
#include "ddd/io.hpp"
#include "ddd/synthbench.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Raised for anything detected before computation starts.
struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
auto validated(F&& f) {
  try {
    return f();
  } catch (const ddd::Error& e) {
    throw UsageFailure(e.what());
  }
}

ddd::io::TableFormat resolve_format(const std::string& flag, const fs::path& out) {
  return validated([&] {
    if (!flag.empty()) return ddd::io::parse_table_format(flag);
    return out.extension() == ".json" ? ddd::io::TableFormat::kJson : ddd::io::TableFormat::kCsv;
  });
}

std::optional<ddd::ConfusionMode> resolve_mode(const std::string& flag) {
  if (flag.empty() || flag == "auto") return std::nullopt;
  return validated([&] { return ddd::parse_mode(flag); });
}

/// "sim.csv" -> "sim.distance.csv"
fs::path sibling_distance_path(const fs::path& out) {
  fs::path p = out;
  p.replace_filename(out.stem().string() + ".distance" + out.extension().string());
  return p;
}

ddd::ConfusionMatrix load_confusion(const fs::path& predictions,
                                    std::optional<ddd::ConfusionMode> mode) {
  auto records = ddd::io::read_predictions(predictions);
  const auto labels = ddd::collect_labels(records);
  return ddd::build_confusion(std::move(records), labels, mode);
}

void print_warnings(const ddd::CorrelationReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& ex : report.excluded) {
    std::cerr << "excluded: " << ex.label << " (" << ex.reason << ")\n";
  }
}

struct SimilarityArgs {
  std::string train, test, out, distance_out, format;
  double alpha = ddd::kDefaultAlpha;
};

int cmd_similarity(const SimilarityArgs& a) {
  validated([&] { ddd::validate_alpha(a.alpha); });
  const auto format = resolve_format(a.format, a.out);
  const fs::path distance_out =
      a.distance_out.empty() ? sibling_distance_path(a.out) : fs::path(a.distance_out);

  const auto train = ddd::io::read_embeddings(a.train, ddd::DatasetRole::kTrain);
  const auto test = ddd::io::read_embeddings(a.test, ddd::DatasetRole::kTest);
  const auto distances = ddd::compute_distance_matrix(train, ddd::compute_centroids(test));
  const auto similarity = ddd::compute_similarity(distances, a.alpha);
  if (similarity.train_labels.size() == 1) {
    std::cerr << "warning: single train class, every similarity entry is 1\n";
  }
  ddd::io::write_matrix(ddd::io::to_labeled(distances), distance_out, format);
  ddd::io::write_matrix(ddd::io::to_labeled(similarity), a.out, format);
  return 0;
}

struct CorrelateArgs {
  std::string similarity, predictions, pairing = "transpose", out, format, mode;
  bool renormalize = false;
};

int cmd_correlate(const CorrelateArgs& a) {
  const ddd::CorrelateOptions options{validated([&] { return ddd::parse_pairing(a.pairing); }),
                                      a.renormalize};
  const auto format = resolve_format(a.format, a.out);
  const auto mode = resolve_mode(a.mode);

  const auto s = ddd::io::to_similarity(ddd::io::read_matrix(a.similarity));
  const auto p = load_confusion(a.predictions, mode);
  const auto report = ddd::correlate(s, p, options);
  print_warnings(report);
  ddd::io::write_report(report, a.out, format);
  std::cout << "aggregate_R=" << ddd::io::format_double(report.aggregate_r)
            << " alpha=" << ddd::io::format_double(report.alpha)
            << " pairing=" << ddd::pairing_name(report.pairing) << "\n";
  return 0;
}

struct SweepArgs {
  std::string train, test, predictions, pairing = "transpose", out, format, mode;
  double alpha_min = ddd::kDefaultGridMin;
  double alpha_max = ddd::kDefaultGridMax;
  std::size_t alpha_steps = ddd::kDefaultGridSteps;
  bool renormalize = false;
};

int cmd_sweep(const SweepArgs& a) {
  const auto grid = validated([&] { return ddd::log_grid(a.alpha_min, a.alpha_max, a.alpha_steps); });
  const ddd::CorrelateOptions options{validated([&] { return ddd::parse_pairing(a.pairing); }),
                                      a.renormalize};
  const auto format = resolve_format(a.format, a.out);
  const auto mode = resolve_mode(a.mode);

  const auto train = ddd::io::read_embeddings(a.train, ddd::DatasetRole::kTrain);
  const auto test = ddd::io::read_embeddings(a.test, ddd::DatasetRole::kTest);
  const auto distances = ddd::compute_distance_matrix(train, ddd::compute_centroids(test));
  const auto p = load_confusion(a.predictions, mode);
  const auto sweep = ddd::sweep_alpha(distances, p, grid, options);
  print_warnings(sweep.best().report);
  ddd::io::write_file(a.out, ddd::io::format_sweep(sweep, format));
  std::cout << "argmax alpha=" << ddd::io::format_double(sweep.best().alpha)
            << " aggregate_R=" << ddd::io::format_double(sweep.best().report.aggregate_r) << "\n";
  return 0;
}

struct RenderArgs {
  std::string matrix, out, title;
};

int cmd_render(const RenderArgs& a) {
  const auto m = ddd::io::read_matrix(a.matrix);
  ddd::io::write_file(a.out, ddd::render_heatmap_svg(m, a.title));
  return 0;
}

struct SynthArgs {
  std::string config, out, embedding_format = "csv";
};

int cmd_synth(const SynthArgs& a) {
  const auto emb_format =
      validated([&] { return ddd::io::parse_embedding_format(a.embedding_format); });
  const auto config = validated([&] {
    return ddd::synth::parse_experiment_config(ddd::io::read_file(a.config));
  });

  const auto data = ddd::synth::generate(config.synth);
  const auto report = ddd::synth::run_experiment(config, data);

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ddd::Error(ddd::ErrorKind::kIoError, "cannot create '" + a.out + "': " + ec.message());
  const std::string ext = emb_format == ddd::io::EmbeddingFormat::kCsv ? ".csv" : ".bin";
  ddd::io::write_embeddings(data.train, dir / ("train" + ext), emb_format);
  ddd::io::write_embeddings(data.test, dir / ("test" + ext), emb_format);
  ddd::io::write_predictions(
      ddd::synth::nearest_centroid_classify(data.train, data.test, config.classifier_temperature),
      dir / "predictions.csv");
  ddd::io::write_file(dir / "config.json", ddd::synth::format_experiment_config(config));
  ddd::io::write_file(dir / "report.json", ddd::synth::format_experiment_report(report));

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& e : report.encoders) {
    std::cout << e.name << " aggregate_R=" << ddd::io::format_double(e.report.aggregate_r)
              << " argmax_alpha=" << ddd::io::format_double(e.sweep.best().alpha) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminative difficulty distance between labelled embedding datasets"};
  app.require_subcommand(1);

  SimilarityArgs sim;
  auto* similarity = app.add_subcommand("similarity", "Compute the distance matrix L and similarity S");
  similarity->add_option("--train", sim.train, "Train embeddings (CSV or binary)")->required()->envname("DDD_TRAIN");
  similarity->add_option("--test", sim.test, "Test embeddings (CSV or binary)")->required()->envname("DDD_TEST");
  similarity->add_option("--alpha", sim.alpha, "Softmax sharpness")->envname("DDD_ALPHA");
  similarity->add_option("--out", sim.out, "Output path for S")->required()->envname("DDD_OUT");
  similarity->add_option("--distance-out", sim.distance_out,
                         "Output path for L (default: <out stem>.distance<ext>)")
      ->envname("DDD_DISTANCE_OUT");
  similarity->add_option("--format", sim.format, "csv or json (default: from --out extension)")
      ->envname("DDD_FORMAT");

  CorrelateArgs cor;
  auto* correlate = app.add_subcommand("correlate", "Correlate a similarity matrix with classifier confusion");
  correlate->add_option("--similarity", cor.similarity, "Similarity matrix file")->required()->envname("DDD_SIMILARITY");
  correlate->add_option("--predictions", cor.predictions, "Prediction CSV")->required()->envname("DDD_PREDICTIONS");
  correlate->add_option("--pairing", cor.pairing, "literal or transpose")->envname("DDD_PAIRING");
  correlate->add_option("--mode", cor.mode, "auto, hard or soft")->envname("DDD_MODE");
  correlate->add_flag("--renormalize-rows", cor.renormalize,
                      "Renormalise confusion rows after restricting to shared classes")
      ->envname("DDD_RENORMALIZE_ROWS");
  correlate->add_option("--out", cor.out, "Report path")->required()->envname("DDD_OUT");
  correlate->add_option("--format", cor.format, "csv or json (default: from --out extension)")
      ->envname("DDD_FORMAT");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Correlation as a function of alpha");
  sweep->add_option("--train", sw.train, "Train embeddings")->required()->envname("DDD_TRAIN");
  sweep->add_option("--test", sw.test, "Test embeddings")->required()->envname("DDD_TEST");
  sweep->add_option("--predictions", sw.predictions, "Prediction CSV")->required()->envname("DDD_PREDICTIONS");
  sweep->add_option("--alpha-min", sw.alpha_min, "Smallest alpha")->envname("DDD_ALPHA_MIN");
  sweep->add_option("--alpha-max", sw.alpha_max, "Largest alpha")->envname("DDD_ALPHA_MAX");
  sweep->add_option("--alpha-steps", sw.alpha_steps, "Grid points, log-uniform")->envname("DDD_ALPHA_STEPS");
  sweep->add_option("--pairing", sw.pairing, "literal or transpose")->envname("DDD_PAIRING");
  sweep->add_option("--mode", sw.mode, "auto, hard or soft")->envname("DDD_MODE");
  sweep->add_flag("--renormalize-rows", sw.renormalize)->envname("DDD_RENORMALIZE_ROWS");
  sweep->add_option("--out", sw.out, "Curve output path")->required()->envname("DDD_OUT");
  sweep->add_option("--format", sw.format, "csv or json (default: from --out extension)")
      ->envname("DDD_FORMAT");

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "Render a matrix file as an SVG heatmap");
  render->add_option("--matrix", ren.matrix, "Matrix file (CSV or JSON)")->required()->envname("DDD_MATRIX");
  render->add_option("--out", ren.out, "SVG output path")->required()->envname("DDD_OUT");
  render->add_option("--title", ren.title, "Heading text")->envname("DDD_TITLE");

  SynthArgs syn;
  auto* synth = app.add_subcommand("synth", "Run a synthetic end-to-end experiment");
  synth->add_option("--config", syn.config, "Experiment config JSON")->required()->envname("DDD_CONFIG");
  synth->add_option("--out", syn.out, "Output directory")->required()->envname("DDD_OUT");
  synth->add_option("--embedding-format", syn.embedding_format, "csv or binary")
      ->envname("DDD_EMBEDDING_FORMAT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*similarity) return cmd_similarity(sim);
    if (*correlate) return cmd_correlate(cor);
    if (*sweep) return cmd_sweep(sw);
    if (*render) return cmd_render(ren);
    if (*synth) return cmd_synth(syn);
  } catch (const UsageFailure& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ddd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
