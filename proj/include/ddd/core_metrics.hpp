#pragma once

#include <string>
#include <vector>

#include "ddd/embedding.hpp"
#include "ddd/matrix.hpp"

namespace ddd {

inline constexpr double kDefaultAlpha = 1.0;

struct ClassCentroids {
  DatasetRole dataset_role = DatasetRole::kTest;
  std::vector<std::string> labels;
  Matrix centroids;                  // class_count x dimension
  std::vector<std::size_t> counts;   // N_j per class

  std::size_t dimension() const noexcept { return centroids.cols(); }
};

/// L(i, j): mean Euclidean distance from the train samples of class i to the
/// test centroid of class j. Rows follow train labels, columns test labels.
struct DistanceMatrix {
  std::vector<std::string> train_labels;
  std::vector<std::string> test_labels;
  Matrix values;
};

/// Column-wise softmax of -alpha * L. Each column sums to one.
struct SimilarityMatrix {
  double alpha = kDefaultAlpha;
  std::vector<std::string> train_labels;
  std::vector<std::string> test_labels;
  Matrix values;
};

ClassCentroids compute_centroids(const EmbeddingDataset& dataset);

DistanceMatrix compute_distance_matrix(const EmbeddingDataset& train,
                                       const ClassCentroids& test_centroids);

/// Throws InvalidAlpha unless alpha is finite and positive.
SimilarityMatrix compute_similarity(const DistanceMatrix& distances, double alpha);

void validate_alpha(double alpha);

/// Euclidean norm of a - b, accumulated left to right.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ddd
