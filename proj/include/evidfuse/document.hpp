#ifndef EVIDFUSE_DOCUMENT_HPP
#define EVIDFUSE_DOCUMENT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evidfuse/core.hpp"
#include "evidfuse/rules.hpp"
#include "evidfuse/weighting.hpp"

namespace evidfuse::io {

using MassMap = std::vector<std::pair<std::string, double>>;

/// On-disk evidence corpus:
///
///   {
///     "frame":    ["A", "B", "C"],
///     "ordinals": [1, 2, 3],            // optional
///     "bpas":     [{"A": 0.5, "B,C": 0.5}, ...]
///   }
///
/// Subset keys are comma-joined labels in any order.
struct EvidenceDocument {
  std::vector<std::string> frame;
  std::optional<std::vector<double>> ordinals;
  std::vector<MassMap> bpas;

  Frame make_frame() const;
  EvidenceSet to_evidence_set(BpaOptions options = {}) const;
};

EvidenceDocument parse_document(const nlohmann::json& doc);
EvidenceDocument load_document(const std::filesystem::path& path);
nlohmann::json to_json(const EvidenceDocument& doc);

nlohmann::json bpa_to_json(const Bpa& bpa);
Bpa bpa_from_json(const Frame& frame, const nlohmann::json& masses);

nlohmann::json rule_to_json(const RuleKind& rule);
RuleKind rule_from_json(const nlohmann::json& j);

/// FusionReport <-> JSON. Numbers are written at full precision so a report
/// read back compares equal to the one written.
nlohmann::json report_to_json(const FusionReport& report);
FusionReport report_from_json(const Frame& frame, const nlohmann::json& j);

}  // namespace evidfuse::io

#endif  // EVIDFUSE_DOCUMENT_HPP
