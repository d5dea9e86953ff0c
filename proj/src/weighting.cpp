#include "evidfuse/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

namespace evidfuse {

namespace {

constexpr double kRangeSlack = 1e-9;

}  // namespace

EvidenceSet EvidenceSet::make(std::vector<Bpa> bpas) {
  if (bpas.empty()) throw ValidationError("evidence set needs at least one BPA");
  for (std::size_t i = 1; i < bpas.size(); ++i) {
    require_same_frame(bpas.front().frame(), bpas[i].frame(), "evidence set");
  }
  return EvidenceSet(std::move(bpas));
}

EvidenceSet EvidenceSet::prefix(std::size_t k) const {
  if (k == 0 || k > bpas_.size()) {
    throw ValidationError("prefix length " + std::to_string(k) + " out of range");
  }
  return EvidenceSet(std::vector<Bpa>(bpas_.begin(), bpas_.begin() + static_cast<std::ptrdiff_t>(k)));
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("weight vector is empty");
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kMassSumTolerance) {
    throw ValidationError("weights sum to " + std::to_string(total) + ", expected 1");
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("weight vector is empty");
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SquareMatrix pairwise_distances(const EvidenceSet& evidence, const SimilarityMatrix& d) {
  const auto n = evidence.size();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = quadratic_distance(evidence[i], evidence[j], d);
      out(i, j) = dist;
      out(j, i) = dist;
    }
  }
  return out;
}

SquareMatrix similarity_from_distance(const SquareMatrix& distances) {
  const auto n = distances.size();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = 1.0 - distances(i, j);
      if (s < -kRangeSlack || s > 1.0 + kRangeSlack) {
        std::clog << "evidfuse: warning: similarity " << s << " at (" << i << ", " << j
                  << ") clamped into [0, 1]\n";
      }
      out(i, j) = std::clamp(s, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<double> support(const SquareMatrix& similarity) {
  const auto n = similarity.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) out[i] += similarity(i, j);
    }
  }
  return out;
}

WeightVector normalize_weights(std::span<const double> supports) {
  if (supports.empty()) throw ValidationError("no supports to normalise");
  double total = 0.0;
  for (double s : supports) {
    if (!std::isfinite(s) || s < 0.0) {
      throw NumericalError("negative support degree " + std::to_string(s));
    }
    total += s;
  }
  if (total == 0.0) return WeightVector::uniform(supports.size());

  std::vector<double> w(supports.begin(), supports.end());
  for (auto& x : w) x /= total;
  return WeightVector(std::move(w));
}

Bpa weighted_average(const EvidenceSet& evidence, const WeightVector& weights) {
  if (weights.size() != evidence.size()) {
    throw ValidationError("weight vector has " + std::to_string(weights.size()) +
                          " entries for " + std::to_string(evidence.size()) + " BPAs");
  }
  std::vector<FocalMass> merged;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    for (const auto& [set, m] : evidence[i].focal()) {
      auto it = std::lower_bound(merged.begin(), merged.end(), set,
                                 [](const FocalMass& fm, FocalSet s) { return fm.set < s; });
      if (it != merged.end() && it->set == set) {
        it->mass += weights[i] * m;
      } else {
        merged.insert(it, {set, weights[i] * m});
      }
    }
  }
  for (auto& fm : merged) fm.mass = std::min(fm.mass, 1.0);
  return Bpa::make(evidence.frame(), std::move(merged), BpaOptions{.renormalize = true});
}

WeightingStages compute_weights(const EvidenceSet& evidence, const SimilarityMatrix& d) {
  auto distances = pairwise_distances(evidence, d);
  auto similarity = similarity_from_distance(distances);
  auto supports = support(similarity);
  auto weights = normalize_weights(supports);
  return {std::move(distances), std::move(similarity), std::move(supports), std::move(weights)};
}

}  // namespace evidfuse
