#include "evidfuse/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace evidfuse {

namespace {

// Beyond this a canonical mass vector no longer fits comfortably in memory.
constexpr std::size_t kMaxVectorLabels = 24;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

FocalSet::FocalSet(SubsetMask mask) : mask_(mask) {
  if (mask == 0) throw ValidationError("focal set must be nonempty");
}

FocalSet FocalSet::singleton(std::size_t label_index) {
  if (label_index >= kMaxFrameLabels) {
    throw ValidationError("label index out of range");
  }
  return FocalSet(SubsetMask{1} << label_index);
}

std::size_t FocalSet::cardinality() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<std::size_t> FocalSet::members() const {
  std::vector<std::size_t> out;
  for (SubsetMask rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

Frame Frame::make(std::vector<std::string> labels,
                  std::optional<std::vector<double>> ordinals) {
  if (labels.empty()) throw ValidationError("frame needs at least one label");
  if (labels.size() > kMaxFrameLabels) {
    throw ValidationError("frame has " + std::to_string(labels.size()) +
                          " labels; at most " + std::to_string(kMaxFrameLabels) +
                          " are supported");
  }
  std::unordered_set<std::string> seen;
  for (auto& label : labels) {
    label = std::string(trim(label));
    if (label.empty()) throw ValidationError("frame labels must be nonempty");
    if (label.find(',') != std::string::npos) {
      throw ValidationError("frame label '" + label + "' contains a comma");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("duplicate frame label '" + label + "'");
    }
  }

  std::vector<double> positions;
  if (ordinals) {
    if (ordinals->size() != labels.size()) {
      throw ValidationError("frame has " + std::to_string(labels.size()) +
                            " labels but " + std::to_string(ordinals->size()) +
                            " ordinals");
    }
    for (double x : *ordinals) {
      if (!std::isfinite(x)) throw ValidationError("frame ordinals must be finite");
    }
    positions = std::move(*ordinals);
  } else {
    positions.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      positions[i] = static_cast<double>(i + 1);
    }
  }
  return Frame(std::move(labels), std::move(positions));
}

std::optional<std::size_t> Frame::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

FocalSet Frame::full_set() const {
  const auto n = labels_.size();
  return FocalSet((SubsetMask{1} << n) - 1);
}

bool Frame::owns(FocalSet s) const noexcept {
  return (s.mask() & ~full_set().mask()) == 0;
}

FocalSet Frame::parse_subset(std::string_view text) const {
  SubsetMask mask = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto token = trim(text.substr(start, end - start));
    if (token.empty()) {
      throw ValidationError("empty label in subset '" + std::string(text) + "'");
    }
    const auto index = index_of(token);
    if (!index) {
      throw ValidationError("unknown label '" + std::string(token) + "' in subset '" +
                            std::string(text) + "'");
    }
    const SubsetMask bit = SubsetMask{1} << *index;
    if ((mask & bit) != 0) {
      throw ValidationError("label '" + std::string(token) + "' repeated in subset '" +
                            std::string(text) + "'");
    }
    mask |= bit;
    start = end + 1;
  }
  return FocalSet(mask);
}

std::string Frame::format_subset(FocalSet s) const {
  std::string out;
  for (auto i : s.members()) {
    if (!out.empty()) out += ',';
    out += labels_.at(i);
  }
  return out;
}

std::size_t subset_index::dimension(const Frame& frame) {
  if (frame.size() > kMaxVectorLabels) {
    throw ValidationError("frame of " + std::to_string(frame.size()) +
                          " labels is too large for a dense subset vector");
  }
  return (std::size_t{1} << frame.size()) - 1;
}

Bpa Bpa::make(const Frame& frame, std::vector<FocalMass> assignments, BpaOptions options) {
  std::sort(assignments.begin(), assignments.end(),
            [](const FocalMass& a, const FocalMass& b) { return a.set < b.set; });

  double total = 0.0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const auto& [set, mass] = assignments[i];
    if (!frame.owns(set)) throw ValidationError("focal set outside the frame");
    if (i > 0 && assignments[i - 1].set == set) {
      throw ValidationError("subset '" + frame.format_subset(set) + "' assigned twice");
    }
    if (!std::isfinite(mass) || mass < 0.0 || mass > 1.0) {
      throw ValidationError("mass " + describe(mass) + " for '" + frame.format_subset(set) +
                            "' is outside [0, 1]");
    }
    total += mass;
  }

  const double drift = std::abs(total - 1.0);
  if (drift > kMassSumTolerance) {
    if (!options.renormalize || drift > kRenormalizeTolerance) {
      throw ValidationError("masses sum to " + describe(total) + ", expected 1");
    }
    for (auto& fm : assignments) fm.mass /= total;
  }

  std::erase_if(assignments, [](const FocalMass& fm) { return fm.mass == 0.0; });
  return Bpa(frame, std::move(assignments));
}

Bpa Bpa::make(const Frame& frame,
              const std::vector<std::pair<std::string, double>>& assignments,
              BpaOptions options) {
  std::vector<FocalMass> parsed;
  parsed.reserve(assignments.size());
  for (const auto& [key, mass] : assignments) {
    parsed.push_back({frame.parse_subset(key), mass});
  }
  return make(frame, std::move(parsed), options);
}

Bpa Bpa::from_vector(const Frame& frame, std::span<const double> masses, BpaOptions options) {
  if (masses.size() != subset_index::dimension(frame)) {
    throw ValidationError("mass vector has " + std::to_string(masses.size()) +
                          " entries, frame needs " +
                          std::to_string(subset_index::dimension(frame)));
  }
  std::vector<FocalMass> assignments;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] != 0.0) assignments.push_back({subset_index::at(i), masses[i]});
  }
  return make(frame, std::move(assignments), options);
}

double Bpa::mass(FocalSet s) const noexcept {
  const auto it = std::lower_bound(
      focal_.begin(), focal_.end(), s,
      [](const FocalMass& fm, FocalSet key) { return fm.set < key; });
  return (it != focal_.end() && it->set == s) ? it->mass : 0.0;
}

double Bpa::mass(std::string_view subset_text) const {
  return mass(frame_.parse_subset(subset_text));
}

std::vector<double> Bpa::to_vector() const {
  std::vector<double> out(subset_index::dimension(frame_), 0.0);
  for (const auto& [set, m] : focal_) out[subset_index::of(set)] = m;
  return out;
}

void require_same_frame(const Frame& a, const Frame& b, std::string_view context) {
  if (!(a == b)) {
    throw ValidationError(std::string(context) + ": BPAs are defined on different frames");
  }
}

}  // namespace evidfuse
