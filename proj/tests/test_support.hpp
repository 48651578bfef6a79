#pragma once

// Helpers shared by the unit, CLI and acceptance suites. The oracles here
// are deliberately naive re-derivations and must not call into the code
// paths they check.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>
#include <sstream>
#include <string>
#include <vector>

#include "ddd/embedding.hpp"
#include "ddd/matrix.hpp"

namespace ddd::testing {

struct Point {
  std::string cls;
  std::vector<double> v;
};

inline EmbeddingDataset make_dataset(DatasetRole role, const std::vector<Point>& points) {
  std::vector<EmbeddingRecord> records;
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::string id = "s";
    if (k < 100) id += "0";
    if (k < 10) id += "0";
    id += std::to_string(k);
    records.push_back({id, points[k].cls, "", points[k].v});
  }
  return EmbeddingDataset(role, points.front().v.size(), std::move(records));
}

/// Random dataset with `classes` classes named k0, k1, ..., 1-6 records each.
inline EmbeddingDataset random_dataset(std::mt19937_64& rng, DatasetRole role, std::size_t classes,
                                       std::size_t dim, double scale = 3.0) {
  std::uniform_real_distribution<double> coord(-scale, scale);
  std::uniform_int_distribution<int> count(1, 6);
  std::vector<Point> points;
  for (std::size_t c = 0; c < classes; ++c) {
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      Point p{"k" + std::to_string(c), std::vector<double>(dim)};
      for (double& x : p.v) x = coord(rng);
      points.push_back(std::move(p));
    }
  }
  return make_dataset(role, points);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo,
                            double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

// Oracle: textbook softmax over each column of -alpha * L, no stabilisation.
inline Matrix brute_softmax(const Matrix& l, double alpha) {
  Matrix s(l.rows(), l.cols());
  for (std::size_t j = 0; j < l.cols(); ++j) {
    long double denom = 0.0L;
    for (std::size_t m = 0; m < l.rows(); ++m) denom += std::exp(-static_cast<long double>(alpha) * l(m, j));
    for (std::size_t i = 0; i < l.rows(); ++i) {
      s(i, j) = static_cast<double>(std::exp(-static_cast<long double>(alpha) * l(i, j)) / denom);
    }
  }
  return s;
}

// Oracle: double loop over every (train sample, test class) pair, with the
// test centroid recomputed from scratch for each pair.
inline Matrix brute_distances(const EmbeddingDataset& train, const EmbeddingDataset& test) {
  const auto& tl = train.labels();
  const auto& sl = test.labels();
  Matrix out(tl.size(), sl.size());
  for (std::size_t i = 0; i < tl.size(); ++i) {
    for (std::size_t j = 0; j < sl.size(); ++j) {
      std::vector<long double> centroid(test.dimension(), 0.0L);
      std::size_t nj = 0;
      for (const auto& rec : test.records()) {
        if (rec.class_label != sl[j]) continue;
        for (std::size_t k = 0; k < centroid.size(); ++k) centroid[k] += rec.vector[k];
        ++nj;
      }
      for (auto& x : centroid) x /= static_cast<long double>(nj);
      long double total = 0.0L;
      std::size_t ni = 0;
      for (const auto& rec : train.records()) {
        if (rec.class_label != tl[i]) continue;
        long double sq = 0.0L;
        for (std::size_t k = 0; k < centroid.size(); ++k) {
          const long double d = rec.vector[k] - centroid[k];
          sq += d * d;
        }
        total += std::sqrt(sq);
        ++ni;
      }
      out(i, j) = static_cast<double>(total / static_cast<long double>(ni));
    }
  }
  return out;
}

// Oracle: cosine via long double.
inline double brute_cosine(const std::vector<double>& u, const std::vector<double>& v) {
  long double dot = 0, uu = 0, vv = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += static_cast<long double>(u[k]) * v[k];
    uu += static_cast<long double>(u[k]) * u[k];
    vv += static_cast<long double>(v[k]) * v[k];
  }
  return static_cast<double>(dot / std::sqrt(uu * vv));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.flat().size(); ++k) {
    worst = std::max(worst, std::abs(a.flat()[k] - b.flat()[k]));
  }
  return worst;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ddd_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Runs a shell command, returning its exit status; stdout/stderr go to
/// `log` when given.
inline int run_command(const std::string& command, const std::filesystem::path& log = {}) {
  std::string full = command;
  if (!log.empty()) full += " > '" + log.string() + "' 2>&1";
  const int status = std::system(full.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

}  // namespace ddd::testing
