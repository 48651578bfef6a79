#include "ddd/core_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddd/error.hpp"

namespace ddd {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

ClassCentroids compute_centroids(const EmbeddingDataset& dataset) {
  const std::size_t classes = dataset.class_count();
  const std::size_t dim = dataset.dimension();

  ClassCentroids out;
  out.dataset_role = dataset.role();
  out.labels = dataset.labels();
  out.centroids = Matrix(classes, dim);
  out.counts.resize(classes);

  for (std::size_t c = 0; c < classes; ++c) {
    const auto& members = dataset.members(c);
    if (members.empty()) {
      throw Error(ErrorKind::kEmptyClass, "class '" + out.labels[c] + "' has no records");
    }
    auto row = out.centroids.row(c);
    for (std::size_t r : members) {
      const auto& v = dataset.records()[r].vector;
      for (std::size_t k = 0; k < dim; ++k) row[k] += v[k];
    }
    const double n = static_cast<double>(members.size());
    for (double& x : row) x /= n;
    out.counts[c] = members.size();
  }
  return out;
}

DistanceMatrix compute_distance_matrix(const EmbeddingDataset& train,
                                       const ClassCentroids& test_centroids) {
  if (train.dimension() != test_centroids.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "train dimension " + std::to_string(train.dimension()) +
                    " differs from test centroid dimension " +
                    std::to_string(test_centroids.dimension()));
  }
  const std::size_t rows = train.class_count();
  const std::size_t cols = test_centroids.labels.size();

  DistanceMatrix out;
  out.train_labels = train.labels();
  out.test_labels = test_centroids.labels;
  out.values = Matrix(rows, cols);

  for (std::size_t i = 0; i < rows; ++i) {
    const auto& members = train.members(i);
    if (members.empty()) {
      throw Error(ErrorKind::kEmptyClass, "class '" + out.train_labels[i] + "' has no records");
    }
    const double n = static_cast<double>(members.size());
    for (std::size_t j = 0; j < cols; ++j) {
      const auto centroid = test_centroids.centroids.row(j);
      double sum = 0.0;
      for (std::size_t r : members) {
        sum += euclidean_distance(train.records()[r].vector, centroid);
      }
      out.values(i, j) = sum / n;
    }
  }
  return out;
}

void validate_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    std::ostringstream msg;
    msg << "alpha must be a finite positive number, got " << alpha;
    throw Error(ErrorKind::kInvalidAlpha, msg.str());
  }
}

SimilarityMatrix compute_similarity(const DistanceMatrix& distances, double alpha) {
  validate_alpha(alpha);
  const Matrix& L = distances.values;

  SimilarityMatrix out;
  out.alpha = alpha;
  out.train_labels = distances.train_labels;
  out.test_labels = distances.test_labels;
  out.values = Matrix(L.rows(), L.cols());

  for (std::size_t j = 0; j < L.cols(); ++j) {
    double min_l = L(0, j);
    for (std::size_t m = 1; m < L.rows(); ++m) min_l = std::min(min_l, L(m, j));
    double total = 0.0;
    for (std::size_t m = 0; m < L.rows(); ++m) {
      const double e = std::exp(-alpha * (L(m, j) - min_l));
      out.values(m, j) = e;
      total += e;
    }
    for (std::size_t m = 0; m < L.rows(); ++m) out.values(m, j) /= total;
  }
  return out;
}

}  // namespace ddd
