#ifndef EVIDFUSE_DISTANCE_HPP
#define EVIDFUSE_DISTANCE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "evidfuse/core.hpp"

namespace evidfuse {

enum class MatrixKind { jousselme, hausdorff, combined };

std::string_view to_string(MatrixKind kind) noexcept;
std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept;

inline constexpr double kDefaultHausdorffC = 1.0;
// Dense matrices hold (2^N - 1)^2 doubles; 12 labels is already ~128 MiB.
inline constexpr std::size_t kMaxMatrixLabels = 12;
// Quadratic forms in [-kQuadraticFormSlack, 0) are rounding noise and read as 0.
inline constexpr double kQuadraticFormSlack = 1e-9;

/// Symmetric similarity between focal elements, indexed by subset_index.
///
/// Three kinds are supported:
///  - jousselme: |A ∩ B| / |A ∪ B|
///  - hausdorff: 1 / (1 + C * H(A, B)), H measured on the frame's ordinals
///  - combined:  elementwise product of the two above
class SimilarityMatrix {
 public:
  const Frame& frame() const noexcept { return frame_; }
  MatrixKind kind() const noexcept { return kind_; }
  double c_param() const noexcept { return c_param_; }
  std::size_t dimension() const noexcept { return dimension_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dimension_ + j];
  }
  double at(FocalSet a, FocalSet b) const {
    return entries_.at(subset_index::of(a) * dimension_ + subset_index::of(b));
  }

  // Rows/columns of the single-label subsets, in frame order.
  std::vector<std::vector<double>> singleton_block() const;

 private:
  friend SimilarityMatrix build_similarity_matrix(const Frame&, MatrixKind, double);

  SimilarityMatrix(Frame frame, MatrixKind kind, double c_param, std::size_t dimension)
      : frame_(std::move(frame)),
        kind_(kind),
        c_param_(c_param),
        dimension_(dimension),
        entries_(dimension * dimension, 0.0) {}

  Frame frame_;
  MatrixKind kind_;
  double c_param_;
  std::size_t dimension_;
  std::vector<double> entries_;
};

/// Real-line Hausdorff distance between two focal sets: the larger of the
/// gaps between their smallest and between their largest ordinals.
double hausdorff_set_distance(FocalSet a, FocalSet b, const Frame& frame);

SimilarityMatrix jousselme_matrix(const Frame& frame);
SimilarityMatrix hausdorff_matrix(const Frame& frame, double c_param = kDefaultHausdorffC);
SimilarityMatrix combined_matrix(const Frame& frame, double c_param = kDefaultHausdorffC);
SimilarityMatrix build_similarity_matrix(const Frame& frame, MatrixKind kind,
                                         double c_param = kDefaultHausdorffC);

/// Process-wide memo keyed on (frame, kind, C). Returned matrices are
/// immutable and may be shared between threads.
std::shared_ptr<const SimilarityMatrix> cached_similarity_matrix(
    const Frame& frame, MatrixKind kind, double c_param = kDefaultHausdorffC);

/// sqrt(0.5 * x^T D x) with x = m1 - m2.
///
/// Throws NumericalError if the quadratic form is below -kQuadraticFormSlack,
/// which means D is not positive semidefinite on this difference vector.
double quadratic_distance(const Bpa& m1, const Bpa& m2, const SimilarityMatrix& d);

}  // namespace evidfuse

#endif  // EVIDFUSE_DISTANCE_HPP
