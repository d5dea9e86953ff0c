#ifndef EVIDFUSE_CORE_HPP
#define EVIDFUSE_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evidfuse {

// Errors. Every failure the library reports derives from Error so callers
// can map them onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad labels, bad masses, mismatched frames.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Dempster normalisation impossible because k == 1.
class TotalConflictError : public Error {
 public:
  using Error::Error;
};

// Floating point went somewhere it must not (e.g. negative quadratic form).
class NumericalError : public Error {
 public:
  using Error::Error;
};

using SubsetMask = std::uint64_t;

// Bitmask over frame label indices; bit i set means label i is a member.
inline constexpr std::size_t kMaxFrameLabels = 63;

inline constexpr double kMassSumTolerance = 1e-9;
inline constexpr double kRenormalizeTolerance = 1e-6;

/// A nonempty subset of a frame's labels, stored as a membership bitmask.
class FocalSet {
 public:
  explicit FocalSet(SubsetMask mask);

  static FocalSet singleton(std::size_t label_index);

  SubsetMask mask() const noexcept { return mask_; }
  std::size_t cardinality() const noexcept;
  bool contains(std::size_t label_index) const noexcept {
    return ((mask_ >> label_index) & 1U) != 0;
  }
  bool is_singleton() const noexcept { return cardinality() == 1; }

  // Label indices in ascending order.
  std::vector<std::size_t> members() const;

  friend bool operator==(FocalSet, FocalSet) = default;
  friend auto operator<=>(FocalSet, FocalSet) = default;

 private:
  SubsetMask mask_;
};

/// Ordered hypothesis labels plus a real-valued position per label.
///
/// The positions ("ordinals") place each hypothesis on the real line so that
/// Hausdorff distances between focal sets are defined even when the labels
/// themselves are not numbers. Without explicit ordinals, label i (0-based)
/// sits at i + 1.
class Frame {
 public:
  static Frame make(std::vector<std::string> labels,
                    std::optional<std::vector<double>> ordinals = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& ordinals() const noexcept { return ordinals_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  double ordinal(std::size_t i) const { return ordinals_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const;

  FocalSet full_set() const;
  bool owns(FocalSet s) const noexcept;

  // Parses "A" or "A,B" (whitespace around labels ignored, order-insensitive).
  FocalSet parse_subset(std::string_view text) const;
  // Inverse of parse_subset, members in frame order.
  std::string format_subset(FocalSet s) const;

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  Frame(std::vector<std::string> labels, std::vector<double> ordinals)
      : labels_(std::move(labels)), ordinals_(std::move(ordinals)) {}

  std::vector<std::string> labels_;
  std::vector<double> ordinals_;
};

/// Canonical position of nonempty subsets: index = mask - 1. The empty set is
/// never stored, so an N-label frame has 2^N - 1 slots.
namespace subset_index {

std::size_t dimension(const Frame& frame);
inline std::size_t of(FocalSet s) noexcept {
  return static_cast<std::size_t>(s.mask() - 1);
}
inline FocalSet at(std::size_t index) {
  return FocalSet(static_cast<SubsetMask>(index) + 1);
}

}  // namespace subset_index

struct FocalMass {
  FocalSet set;
  double mass;

  friend bool operator==(const FocalMass&, const FocalMass&) = default;
};

struct BpaOptions {
  // Rescale sums within kRenormalizeTolerance of 1 instead of rejecting them.
  bool renormalize = false;
};

/// Basic probability assignment: masses on nonempty subsets summing to one.
/// Only focal sets (strictly positive mass) are stored, sorted by mask.
class Bpa {
 public:
  static Bpa make(const Frame& frame, std::vector<FocalMass> assignments,
                  BpaOptions options = {});
  static Bpa make(const Frame& frame,
                  const std::vector<std::pair<std::string, double>>& assignments,
                  BpaOptions options = {});
  // Reads a canonical vector as produced by to_vector().
  static Bpa from_vector(const Frame& frame, std::span<const double> masses,
                         BpaOptions options = {});

  const Frame& frame() const noexcept { return frame_; }
  std::span<const FocalMass> focal() const noexcept { return focal_; }

  double mass(FocalSet s) const noexcept;
  double mass(std::string_view subset_text) const;

  std::vector<double> to_vector() const;

  friend bool operator==(const Bpa&, const Bpa&) = default;

 private:
  Bpa(Frame frame, std::vector<FocalMass> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  Frame frame_;
  std::vector<FocalMass> focal_;
};

inline std::vector<double> to_vector(const Bpa& bpa) { return bpa.to_vector(); }

// Throws ValidationError when the two frames differ.
void require_same_frame(const Frame& a, const Frame& b, std::string_view context);

}  // namespace evidfuse

#endif  // EVIDFUSE_CORE_HPP
