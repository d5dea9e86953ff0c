#include "evidfuse/distance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace evidfuse {

namespace {

struct OrdinalRange {
  double lo;
  double hi;
};

OrdinalRange ordinal_range(FocalSet s, const Frame& frame) {
  OrdinalRange r{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (auto i : s.members()) {
    r.lo = std::min(r.lo, frame.ordinal(i));
    r.hi = std::max(r.hi, frame.ordinal(i));
  }
  return r;
}

double jaccard(SubsetMask a, SubsetMask b) {
  return static_cast<double>(std::popcount(a & b)) / static_cast<double>(std::popcount(a | b));
}

double hausdorff_gap(const OrdinalRange& a, const OrdinalRange& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

void require_c_param(double c_param) {
  if (!(c_param > 0.0) || !std::isfinite(c_param)) {
    throw ValidationError("Hausdorff tuning constant C must be a positive finite number");
  }
}

}  // namespace

std::string_view to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::jousselme: return "jousselme";
    case MatrixKind::hausdorff: return "hausdorff";
    case MatrixKind::combined: return "combined";
  }
  return "unknown";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept {
  if (name == "jousselme") return MatrixKind::jousselme;
  if (name == "hausdorff") return MatrixKind::hausdorff;
  if (name == "combined") return MatrixKind::combined;
  return std::nullopt;
}

std::vector<std::vector<double>> SimilarityMatrix::singleton_block() const {
  const auto n = frame_.size();
  std::vector<std::vector<double>> block(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      block[i][j] = at(FocalSet::singleton(i), FocalSet::singleton(j));
    }
  }
  return block;
}

double hausdorff_set_distance(FocalSet a, FocalSet b, const Frame& frame) {
  if (!frame.owns(a) || !frame.owns(b)) {
    throw ValidationError("hausdorff_set_distance: focal set outside the frame");
  }
  return hausdorff_gap(ordinal_range(a, frame), ordinal_range(b, frame));
}

SimilarityMatrix build_similarity_matrix(const Frame& frame, MatrixKind kind, double c_param) {
  if (kind != MatrixKind::jousselme) require_c_param(c_param);
  if (frame.size() > kMaxMatrixLabels) {
    throw ValidationError("similarity matrices are limited to frames of " +
                          std::to_string(kMaxMatrixLabels) + " labels");
  }
  const auto dim = subset_index::dimension(frame);
  SimilarityMatrix m(frame, kind, c_param, dim);

  std::vector<OrdinalRange> ranges;
  if (kind != MatrixKind::jousselme) {
    ranges.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) ranges.push_back(ordinal_range(subset_index::at(i), frame));
  }

  for (std::size_t i = 0; i < dim; ++i) {
    m.entries_[i * dim + i] = 1.0;
    for (std::size_t j = i + 1; j < dim; ++j) {
      double value = 1.0;
      if (kind != MatrixKind::hausdorff) {
        value *= jaccard(subset_index::at(i).mask(), subset_index::at(j).mask());
      }
      if (kind != MatrixKind::jousselme) {
        value *= 1.0 / (1.0 + c_param * hausdorff_gap(ranges[i], ranges[j]));
      }
      m.entries_[i * dim + j] = value;
      m.entries_[j * dim + i] = value;
    }
  }
  return m;
}

SimilarityMatrix jousselme_matrix(const Frame& frame) {
  return build_similarity_matrix(frame, MatrixKind::jousselme, kDefaultHausdorffC);
}

SimilarityMatrix hausdorff_matrix(const Frame& frame, double c_param) {
  return build_similarity_matrix(frame, MatrixKind::hausdorff, c_param);
}

SimilarityMatrix combined_matrix(const Frame& frame, double c_param) {
  return build_similarity_matrix(frame, MatrixKind::combined, c_param);
}

std::shared_ptr<const SimilarityMatrix> cached_similarity_matrix(const Frame& frame,
                                                                 MatrixKind kind,
                                                                 double c_param) {
  using Key = std::tuple<std::vector<std::string>, std::vector<double>, MatrixKind, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SimilarityMatrix>> cache;

  // C does not enter the Jousselme matrix.
  if (kind == MatrixKind::jousselme) c_param = kDefaultHausdorffC;
  Key key{frame.labels(), frame.ordinals(), kind, c_param};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const SimilarityMatrix>(build_similarity_matrix(frame, kind, c_param));
  std::lock_guard lock(mutex);
  return cache.try_emplace(std::move(key), std::move(built)).first->second;
}

double quadratic_distance(const Bpa& m1, const Bpa& m2, const SimilarityMatrix& d) {
  require_same_frame(m1.frame(), m2.frame(), "quadratic_distance");
  require_same_frame(m1.frame(), d.frame(), "quadratic_distance");

  // Sparse difference over the union of both focal lists (both sorted).
  std::vector<std::pair<std::size_t, double>> diff;
  auto a = m1.focal().begin(), a_end = m1.focal().end();
  auto b = m2.focal().begin(), b_end = m2.focal().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->set < b->set)) {
      diff.emplace_back(subset_index::of(a->set), a->mass);
      ++a;
    } else if (a == a_end || b->set < a->set) {
      diff.emplace_back(subset_index::of(b->set), -b->mass);
      ++b;
    } else {
      diff.emplace_back(subset_index::of(a->set), a->mass - b->mass);
      ++a;
      ++b;
    }
  }

  double form = 0.0;
  for (const auto& [i, xi] : diff) {
    for (const auto& [j, xj] : diff) form += xi * d(i, j) * xj;
  }
  form *= 0.5;

  if (form < 0.0) {
    if (form < -kQuadraticFormSlack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "negative quadratic form " << form << " under the " << to_string(d.kind())
          << " matrix";
      throw NumericalError(msg.str());
    }
    form = 0.0;
  }
  return std::sqrt(form);
}

}  // namespace evidfuse
