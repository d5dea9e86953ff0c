#ifndef EVIDFUSE_RULES_HPP
#define EVIDFUSE_RULES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evidfuse/core.hpp"
#include "evidfuse/distance.hpp"
#include "evidfuse/weighting.hpp"

namespace evidfuse {

enum class RuleName { dempster, murphy, deng, proposed };

inline constexpr std::array<RuleName, 4> kAllRules = {RuleName::dempster, RuleName::murphy,
                                                      RuleName::deng, RuleName::proposed};

std::string_view to_string(RuleName rule) noexcept;
std::optional<RuleName> parse_rule_name(std::string_view name) noexcept;

/// A combination strategy plus the similarity matrix its weights use.
///
/// dempster: plain left fold of Dempster's rule.
/// murphy:   equal weights, average, then n - 1 self-combinations.
/// deng:     weights from Jousselme distances (matrix fixed to jousselme).
/// proposed: weights from the Jousselme x Hausdorff product matrix; the
///           matrix kind and C can be overridden to explore variants.
struct RuleKind {
  RuleName name = RuleName::proposed;
  MatrixKind matrix = MatrixKind::combined;
  double c_param = kDefaultHausdorffC;

  static RuleKind dempster() { return {RuleName::dempster, MatrixKind::jousselme, kDefaultHausdorffC}; }
  static RuleKind murphy() { return {RuleName::murphy, MatrixKind::jousselme, kDefaultHausdorffC}; }
  static RuleKind deng() { return {RuleName::deng, MatrixKind::jousselme, kDefaultHausdorffC}; }
  static RuleKind proposed(MatrixKind matrix = MatrixKind::combined,
                           double c_param = kDefaultHausdorffC) {
    return {RuleName::proposed, matrix, c_param};
  }
  // Canonical configuration for a rule name; `matrix` and `c_param` only
  // affect the proposed rule.
  static RuleKind of(RuleName name, MatrixKind matrix = MatrixKind::combined,
                     double c_param = kDefaultHausdorffC);

  friend bool operator==(const RuleKind&, const RuleKind&) = default;
};

struct TraceEntry {
  std::size_t prefix;
  Bpa fused;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct FusionReport {
  RuleKind rule;
  std::optional<WeightVector> weights;  // absent for dempster (unless n == 1)
  std::optional<Bpa> averaged;          // absent for dempster
  Bpa fused;
  std::vector<TraceEntry> trace;        // prefixes 2..n

  friend bool operator==(const FusionReport&, const FusionReport&) = default;
};

/// Fuses the evidence under the rule and records the fused result for every
/// prefix of length 2..n, each prefix weighted from scratch.
FusionReport fuse(const EvidenceSet& evidence, const RuleKind& rule);

struct TraceRow {
  std::size_t prefix;
  RuleKind rule;
  double mass;
};

/// Mass of `target` after fusing each prefix (2..n) under each rule. Rows are
/// ordered by prefix, then by the canonical rule order.
std::vector<TraceRow> convergence_trace(const EvidenceSet& evidence,
                                        std::span<const RuleKind> rules, FocalSet target);

}  // namespace evidfuse

#endif  // EVIDFUSE_RULES_HPP
