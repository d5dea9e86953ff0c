#include "evidfuse/document.hpp"

#include <fstream>

namespace evidfuse::io {

using nlohmann::json;

namespace {

// nlohmann reports type errors with its own exception hierarchy; surface them
// as validation failures with the offending field named.
template <typename T>
T field_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid ") + what + ": " + e.what());
  }
}

}  // namespace

Frame EvidenceDocument::make_frame() const { return Frame::make(frame, ordinals); }

EvidenceSet EvidenceDocument::to_evidence_set(BpaOptions options) const {
  const Frame f = make_frame();
  if (bpas.empty()) throw ValidationError("document contains no BPAs");
  std::vector<Bpa> out;
  out.reserve(bpas.size());
  for (std::size_t i = 0; i < bpas.size(); ++i) {
    try {
      out.push_back(Bpa::make(f, bpas[i], options));
    } catch (const ValidationError& e) {
      throw ValidationError("bpas[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return EvidenceSet::make(std::move(out));
}

EvidenceDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw ValidationError("evidence document must be a JSON object");
  if (!doc.contains("frame")) throw ValidationError("evidence document lacks \"frame\"");

  EvidenceDocument out;
  out.frame = field_as<std::vector<std::string>>(doc.at("frame"), "frame");
  if (doc.contains("ordinals") && !doc.at("ordinals").is_null()) {
    out.ordinals = field_as<std::vector<double>>(doc.at("ordinals"), "ordinals");
  }
  if (doc.contains("bpas")) {
    const auto& list = doc.at("bpas");
    if (!list.is_array()) throw ValidationError("\"bpas\" must be an array");
    for (const auto& masses : list) {
      if (!masses.is_object()) throw ValidationError("each BPA must be a JSON object");
      MassMap m;
      for (const auto& [key, value] : masses.items()) {
        if (!value.is_number()) {
          throw ValidationError("mass for '" + key + "' is not a number");
        }
        m.emplace_back(key, value.get<double>());
      }
      out.bpas.push_back(std::move(m));
    }
  }
  // Validate eagerly so malformed frames fail at load time.
  (void)out.make_frame();
  return out;
}

EvidenceDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_document(doc);
}

json to_json(const EvidenceDocument& doc) {
  json out;
  out["frame"] = doc.frame;
  if (doc.ordinals) out["ordinals"] = *doc.ordinals;
  out["bpas"] = json::array();
  for (const auto& m : doc.bpas) {
    json masses = json::object();
    for (const auto& [key, value] : m) masses[key] = value;
    out["bpas"].push_back(std::move(masses));
  }
  return out;
}

json bpa_to_json(const Bpa& bpa) {
  json out = json::object();
  for (const auto& [set, mass] : bpa.focal()) out[bpa.frame().format_subset(set)] = mass;
  return out;
}

Bpa bpa_from_json(const Frame& frame, const json& masses) {
  if (!masses.is_object()) throw ValidationError("BPA must be a JSON object");
  MassMap m;
  for (const auto& [key, value] : masses.items()) {
    m.emplace_back(key, field_as<double>(value, "mass"));
  }
  return Bpa::make(frame, m);
}

json rule_to_json(const RuleKind& rule) {
  return {{"name", to_string(rule.name)},
          {"matrix", to_string(rule.matrix)},
          {"c", rule.c_param}};
}

RuleKind rule_from_json(const json& j) {
  const auto name = parse_rule_name(field_as<std::string>(j.at("name"), "rule name"));
  const auto matrix = parse_matrix_kind(field_as<std::string>(j.at("matrix"), "matrix"));
  if (!name || !matrix) throw ValidationError("unknown rule or matrix in report");
  return {*name, *matrix, field_as<double>(j.at("c"), "c")};
}

json report_to_json(const FusionReport& report) {
  json out;
  out["rule"] = rule_to_json(report.rule);
  out["weights"] = report.weights ? json(report.weights->values()) : json(nullptr);
  out["averaged"] = report.averaged ? bpa_to_json(*report.averaged) : json(nullptr);
  out["fused"] = bpa_to_json(report.fused);
  out["trace"] = json::array();
  for (const auto& entry : report.trace) {
    out["trace"].push_back({{"prefix", entry.prefix}, {"fused", bpa_to_json(entry.fused)}});
  }
  return out;
}

FusionReport report_from_json(const Frame& frame, const json& j) {
  try {
    std::optional<WeightVector> weights;
    if (!j.at("weights").is_null()) {
      weights = WeightVector(j.at("weights").get<std::vector<double>>());
    }
    std::optional<Bpa> averaged;
    if (!j.at("averaged").is_null()) averaged = bpa_from_json(frame, j.at("averaged"));
    std::vector<TraceEntry> trace;
    for (const auto& entry : j.at("trace")) {
      trace.push_back({entry.at("prefix").get<std::size_t>(), bpa_from_json(frame, entry.at("fused"))});
    }
    return {rule_from_json(j.at("rule")), std::move(weights), std::move(averaged),
            bpa_from_json(frame, j.at("fused")), std::move(trace)};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed fusion report: ") + e.what());
  }
}

}  // namespace evidfuse::io
