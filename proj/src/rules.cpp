#include "evidfuse/rules.hpp"

#include <algorithm>

#include "evidfuse/combination.hpp"

namespace evidfuse {

namespace {

struct Fused {
  std::optional<WeightVector> weights;
  std::optional<Bpa> averaged;
  Bpa fused;
};

Fused fuse_once(const EvidenceSet& evidence, const RuleKind& rule) {
  const auto n = evidence.size();
  if (n == 1) return {WeightVector::uniform(1), evidence[0], evidence[0]};

  if (rule.name == RuleName::dempster) {
    Bpa acc = evidence[0];
    for (std::size_t i = 1; i < n; ++i) acc = combine(acc, evidence[i]);
    return {std::nullopt, std::nullopt, std::move(acc)};
  }

  WeightVector weights = WeightVector::uniform(n);
  if (rule.name != RuleName::murphy) {
    const auto d = cached_similarity_matrix(evidence.frame(), rule.matrix, rule.c_param);
    weights = compute_weights(evidence, *d).weights;
  }
  Bpa averaged = weighted_average(evidence, weights);
  Bpa fused = self_combine(averaged, n - 1);
  return {std::move(weights), std::move(averaged), std::move(fused)};
}

}  // namespace

std::string_view to_string(RuleName rule) noexcept {
  switch (rule) {
    case RuleName::dempster: return "dempster";
    case RuleName::murphy: return "murphy";
    case RuleName::deng: return "deng";
    case RuleName::proposed: return "proposed";
  }
  return "unknown";
}

std::optional<RuleName> parse_rule_name(std::string_view name) noexcept {
  for (auto rule : kAllRules) {
    if (to_string(rule) == name) return rule;
  }
  return std::nullopt;
}

RuleKind RuleKind::of(RuleName name, MatrixKind matrix, double c_param) {
  switch (name) {
    case RuleName::dempster: return dempster();
    case RuleName::murphy: return murphy();
    case RuleName::deng: return deng();
    case RuleName::proposed: return proposed(matrix, c_param);
  }
  throw ValidationError("unknown rule");
}

FusionReport fuse(const EvidenceSet& evidence, const RuleKind& rule) {
  if (rule.name == RuleName::deng && rule.matrix != MatrixKind::jousselme) {
    throw ValidationError("deng's rule always weights with the jousselme matrix");
  }

  std::vector<TraceEntry> trace;
  for (std::size_t k = 2; k < evidence.size(); ++k) {
    trace.push_back({k, fuse_once(evidence.prefix(k), rule).fused});
  }
  auto top = fuse_once(evidence, rule);
  if (evidence.size() >= 2) trace.push_back({evidence.size(), top.fused});

  return {rule, std::move(top.weights), std::move(top.averaged), std::move(top.fused),
          std::move(trace)};
}

std::vector<TraceRow> convergence_trace(const EvidenceSet& evidence,
                                        std::span<const RuleKind> rules, FocalSet target) {
  if (!evidence.frame().owns(target)) {
    throw ValidationError("trace target lies outside the frame");
  }
  std::vector<RuleKind> ordered(rules.begin(), rules.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const RuleKind& a, const RuleKind& b) {
    return static_cast<int>(a.name) < static_cast<int>(b.name);
  });

  std::vector<FusionReport> reports;
  reports.reserve(ordered.size());
  for (const auto& rule : ordered) reports.push_back(fuse(evidence, rule));

  std::vector<TraceRow> rows;
  for (std::size_t k = 2; k <= evidence.size(); ++k) {
    for (const auto& report : reports) {
      rows.push_back({k, report.rule, report.trace.at(k - 2).fused.mass(target)});
    }
  }
  return rows;
}

}  // namespace evidfuse
