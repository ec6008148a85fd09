#include "eye2vec/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "eye2vec/error.hpp"
#include "eye2vec/hash.hpp"
#include "eye2vec/kernels.hpp"

namespace eye2vec {

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimMismatchError(fmt::format("dimension mismatch: {} vs {}", u.size(), v.size()));
  }
  const double nu = kernels::norm(u);
  const double nv = kernels::norm(v);
  if (nu == 0.0 || nv == 0.0) throw ZeroVectorError("cosine similarity of a zero vector");
  return std::clamp(kernels::dot(u, v) / (nu * nv), -1.0, 1.0);
}

DistanceMatrix distance_matrix(std::span<const EyeVector> vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw InsufficientDataError("distance matrix needs at least two vectors");
  DistanceMatrix m;
  m.values.assign(n * n, 0.0);
  for (const auto& v : vectors) m.ids.push_back(v.recording_id);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = 1.0 - cosine_similarity(vectors[i].values, vectors[j].values);
      m.values[i * n + j] = d;
      m.values[j * n + i] = d;
    }
  }
  return m;
}

namespace {

std::size_t nearest(std::span<const double> p, const std::vector<std::vector<double>>& centers,
                    double& best_d) {
  std::size_t best = 0;
  best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = kernels::squared_distance(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Assigns every point; returns the SSE.
double assign(std::span<const std::vector<double>> points,
              const std::vector<std::vector<double>>& centers, std::vector<std::size_t>& out) {
  double sse = 0.0;
  out.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double d = 0.0;
    out[i] = nearest(points[i], centers, d);
    sse += d;
  }
  return sse;
}

std::vector<std::vector<double>> plus_plus_seed(std::span<const std::vector<double>> points,
                                                std::size_t k, SplitMix64& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centers;
  centers.push_back(points[rng.next_below(n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = kernels::squared_distance(points[i], centers[0]);
  while (centers.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    if (total == 0.0) {
      // Fewer distinct points than k; the surplus clusters stay empty.
      centers.push_back(centers.front());
      continue;
    }
    const double r = rng.next_unit() * total;
    double cum = 0.0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] == 0.0) continue;
      cum += d2[i];
      pick = i;
      if (cum > r) break;
    }
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], kernels::squared_distance(points[i], centers.back()));
    }
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iters) {
  const std::size_t n = points.size();
  if (k < 1 || k > n) throw InvalidKError(fmt::format("k = {} is outside [1, {}]", k, n));
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw DimMismatchError("k-means points differ in dimension");
  }

  SplitMix64 rng(seed);
  KMeansResult r;
  r.centroids = plus_plus_seed(points, k, rng);
  r.sse_history.push_back(assign(points, r.centroids, r.assignments));

  std::vector<std::size_t> counts(k);
  std::vector<std::size_t> next;
  while (r.iterations < max_iters) {
    ++r.iterations;
    std::fill(counts.begin(), counts.end(), 0);
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[r.assignments[i]];
      kernels::axpy(1.0, points[i], sums[r.assignments[i]]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      kernels::scale(1.0 / static_cast<double>(counts[c]), sums[c]);
      r.centroids[c] = std::move(sums[c]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      double far_d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = kernels::squared_distance(points[i], r.centroids[r.assignments[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d == 0.0) continue;
      --counts[r.assignments[far]];
      ++counts[c];
      r.assignments[far] = c;
      r.centroids[c] = points[far];
    }
    r.sse_history.push_back(assign(points, r.centroids, next));
    if (next == r.assignments) break;
    r.assignments.swap(next);
  }
  return r;
}

std::vector<std::size_t> kmeans(std::span<const EyeVector> vectors, std::size_t k,
                                std::uint64_t seed, std::size_t max_iters) {
  std::vector<std::vector<double>> points;
  points.reserve(vectors.size());
  for (const auto& v : vectors) points.push_back(v.values);
  if (points.empty()) throw InvalidKError("k-means over an empty set");
  return kmeans(points, k, seed, max_iters).assignments;
}

double best_match_agreement(std::span<const std::size_t> assignments,
                            std::span<const std::string> labels) {
  if (assignments.size() != labels.size() || assignments.empty()) {
    throw InsufficientDataError("assignments and labels must be non-empty and equally long");
  }
  std::vector<std::string> names(labels.begin(), labels.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const std::size_t k = *std::max_element(assignments.begin(), assignments.end()) + 1;
  const std::size_t slots = std::max(k, names.size());
  if (slots > 8) throw InvalidKError("best_match_agreement supports at most 8 clusters");

  // perm[c] = label slot matched to cluster c; slots past names.size() are
  // unmatched.
  std::vector<std::size_t> perm(slots);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::size_t slot = perm[assignments[i]];
      if (slot < names.size() && names[slot] == labels[i]) ++hits;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

namespace {

struct Centroids {
  std::vector<std::string> labels;  // ascending
  std::vector<std::vector<double>> vectors;
};

Centroids fit(const LabeledSet& train, std::span<const std::size_t> skip = {}) {
  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, std::size_t> counts;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    const auto& item = train[i];
    if (item.label.empty()) throw InsufficientDataError("training item with an empty label");
    if (dim == 0) dim = item.vector.dim();
    if (item.vector.dim() != dim) throw DimMismatchError("training vectors differ in dimension");
    const double n = kernels::norm(item.vector.values);
    if (n == 0.0) throw ZeroVectorError(fmt::format("training vector \"{}\" is zero", item.vector.recording_id));
    auto [it, fresh] = sums.try_emplace(item.label, dim, 0.0);
    kernels::axpy(1.0 / n, item.vector.values, it->second);
    ++counts[item.label];
  }
  if (sums.empty()) throw EmptyClassError("training set is empty");
  if (sums.size() < 2) throw InsufficientDataError("prediction needs at least two labels");
  Centroids c;
  for (auto& [label, sum] : sums) {
    kernels::scale(1.0 / static_cast<double>(counts[label]), sum);
    const double n = kernels::norm(sum);
    if (n == 0.0) throw ZeroVectorError(fmt::format("centroid of \"{}\" is zero", label));
    kernels::scale(1.0 / n, sum);
    c.labels.push_back(label);
    c.vectors.push_back(std::move(sum));
  }
  return c;
}

const std::string& predict_one(const Centroids& c, std::span<const double> v) {
  std::size_t best = 0;
  double best_sim = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.labels.size(); ++k) {
    const double s = cosine_similarity(c.vectors[k], v);
    if (s > best_sim) {
      best_sim = s;
      best = k;
    }
  }
  return c.labels[best];
}

}  // namespace

std::vector<std::string> nearest_centroid_predict(const LabeledSet& train,
                                                  std::span<const EyeVector> test) {
  const Centroids c = fit(train);
  std::vector<std::string> out;
  out.reserve(test.size());
  for (const auto& v : test) out.push_back(predict_one(c, v.values));
  return out;
}

double leave_one_out(const LabeledSet& train) {
  std::map<std::string, std::size_t> per_label;
  for (const auto& item : train) ++per_label[item.label];
  if (per_label.empty()) throw InsufficientDataError("leave-one-out over an empty set");
  for (const auto& [label, n] : per_label) {
    if (n < 2) {
      throw InsufficientDataError(
          fmt::format("label \"{}\" has {} item(s); leave-one-out needs at least 2", label, n));
    }
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    const std::size_t skip[] = {i};
    if (predict_one(fit(train, skip), train[i].vector.values) == train[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(train.size());
}

}  // namespace eye2vec
