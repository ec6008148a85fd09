#pragma once

// Vector-space analyses over eye vectors: cosine similarity, distance
// matrices, seeded k-means, and nearest-centroid label prediction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eye2vec/compressor.hpp"

namespace eye2vec {

// dot(u, v) / (|u| |v|) clamped to [-1, 1]. Throws DimMismatchError or
// ZeroVectorError.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// Cosine distances 1 - cos. Symmetric by construction with an exact zero
// diagonal.
struct DistanceMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major n x n

  std::size_t size() const noexcept { return ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values.at(i * ids.size() + j); }
};

// Needs at least two vectors of equal dimension.
DistanceMatrix distance_matrix(std::span<const EyeVector> vectors);

inline constexpr std::size_t kDefaultKMeansIters = 100;

struct KMeansResult {
  std::vector<std::size_t> assignments;
  std::vector<std::vector<double>> centroids;
  // Within-cluster SSE after every assignment step; non-increasing.
  std::vector<double> sse_history;
  std::size_t iterations = 0;
};

// k-means++ seeding from splitmix64(seed), then Lloyd iterations on squared
// Euclidean distance until assignments repeat or max_iters update steps
// ran. Inputs are expected to be L2-normalized. A cluster left empty is
// re-seeded with the point farthest from its centroid (lowest index among
// ties) unless every point already sits on its centroid. Ties between
// centroids go to the lower cluster index. Throws InvalidKError unless
// 1 <= k <= n.
KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iters = kDefaultKMeansIters);
std::vector<std::size_t> kmeans(std::span<const EyeVector> vectors, std::size_t k,
                                std::uint64_t seed, std::size_t max_iters = kDefaultKMeansIters);

// Fraction of points whose cluster maps to their true label under the best
// one-to-one cluster/label matching (brute force; at most 8 clusters).
double best_match_agreement(std::span<const std::size_t> assignments,
                            std::span<const std::string> labels);

struct LabeledVector {
  EyeVector vector;
  std::string label;
};
using LabeledSet = std::vector<LabeledVector>;

// Centroid per label (mean of L2-normalized members, renormalized); a test
// vector gets the label of the most cosine-similar centroid, ties to the
// smallest label. Throws EmptyClassError for an empty training set,
// InsufficientDataError for fewer than two labels, DimMismatchError.
std::vector<std::string> nearest_centroid_predict(const LabeledSet& train,
                                                  std::span<const EyeVector> test);

// Accuracy of predicting each item from all the others. Needs at least two
// items per label (InsufficientDataError otherwise).
double leave_one_out(const LabeledSet& train);

}  // namespace eye2vec
