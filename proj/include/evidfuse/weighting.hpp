#ifndef EVIDFUSE_WEIGHTING_HPP
#define EVIDFUSE_WEIGHTING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "evidfuse/core.hpp"
#include "evidfuse/distance.hpp"

namespace evidfuse {

/// Ordered, nonempty list of BPAs on one frame. Order defines the prefixes
/// used by convergence traces.
class EvidenceSet {
 public:
  static EvidenceSet make(std::vector<Bpa> bpas);

  const Frame& frame() const noexcept { return bpas_.front().frame(); }
  std::span<const Bpa> bpas() const noexcept { return bpas_; }
  std::size_t size() const noexcept { return bpas_.size(); }
  const Bpa& operator[](std::size_t i) const { return bpas_.at(i); }

  // The first k pieces of evidence, 1 <= k <= size().
  EvidenceSet prefix(std::size_t k) const;

 private:
  explicit EvidenceSet(std::vector<Bpa> bpas) : bpas_(std::move(bpas)) {}

  std::vector<Bpa> bpas_;
};

/// Dense n x n table (distance or similarity between pieces of evidence).
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Nonnegative credibility weights summing to one.
class WeightVector {
 public:
  // Validates nonnegativity and the unit sum (within kMassSumTolerance).
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(std::size_t n);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_.at(i); }
  const std::vector<double>& values() const noexcept { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
};

// Pairwise evidence distances under d; zero diagonal.
SquareMatrix pairwise_distances(const EvidenceSet& evidence, const SimilarityMatrix& d);

// 1 - distance, clamped into [0, 1]. Entries more than 1e-9 outside the
// range are reported on std::clog before clamping.
SquareMatrix similarity_from_distance(const SquareMatrix& distances);

// Row sums of the similarity table with the diagonal left out.
std::vector<double> support(const SquareMatrix& similarity);

// Supports scaled to sum to one; all-zero supports give uniform weights.
WeightVector normalize_weights(std::span<const double> supports);

Bpa weighted_average(const EvidenceSet& evidence, const WeightVector& weights);

/// Every intermediate of the weight pipeline, for reporting.
struct WeightingStages {
  SquareMatrix distances;
  SquareMatrix similarity;
  std::vector<double> supports;
  WeightVector weights;
};

WeightingStages compute_weights(const EvidenceSet& evidence, const SimilarityMatrix& d);

}  // namespace evidfuse

#endif  // EVIDFUSE_WEIGHTING_HPP
