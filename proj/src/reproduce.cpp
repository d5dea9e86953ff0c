#include "evidfuse/reproduce.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "evidfuse/combination.hpp"
#include "evidfuse/rules.hpp"

namespace evidfuse::reproduce {

namespace {

// Published figures, kept exactly as printed.

constexpr std::array<std::array<std::string_view, 5>, 5> kExample1Jousselme = {{
    {"1", "0", "0", "0", "0"},
    {"0", "1", "0", "0", "0"},
    {"0", "0", "1", "0", "0"},
    {"0", "0", "0", "1", "0"},
    {"0", "0", "0", "0", "1"},
}};

constexpr std::array<std::array<std::string_view, 5>, 5> kExample1Hausdorff = {{
    {"1", "1/2", "1/3", "1/4", "1/5"},
    {"1/2", "1", "1/2", "1/3", "1/4"},
    {"1/3", "1/2", "1", "1/2", "1/3"},
    {"1/4", "1/3", "1/2", "1", "1/2"},
    {"1/5", "1/4", "1/3", "1/2", "1"},
}};

constexpr std::array<std::string_view, 4> kExample2Weights = {"0.2688", "0.2276", "0.2752",
                                                              "0.2284"};
constexpr std::array<std::string_view, 3> kExample2Averaged = {"0.4513", "0.3033", "0.2454"};
constexpr std::array<std::string_view, 3> kExample2Fused = {"0.7744", "0.1579", "0.0677"};

// [rule][prefix 2..5][A, B, C]
using TableColumn = std::array<std::array<std::string_view, 3>, 4>;
constexpr std::array<TableColumn, 4> kTable1 = {{
    {{{"0", "0.8571", "0.1429"},
      {"0", "0.6316", "0.3684"},
      {"0", "0.3288", "0.6712"},
      {"0", "0.1228", "0.8772"}}},
    {{{"0.1543", "0.7469", "0.0988"},
      {"0.3500", "0.5224", "0.1276"},
      {"0.6027", "0.2627", "0.1346"},
      {"0.7958", "0.0932", "0.1110"}}},
    {{{"0.1543", "0.7469", "0.0988"},
      {"0.5816", "0.2439", "0.1745"},
      {"0.8060", "0.0482", "0.1458"},
      {"0.8909", "0.0086", "0.1005"}}},
    {{{"0.1543", "0.7469", "0.0988"},
      {"0.6355", "0.2229", "0.1415"},
      {"0.7605", "0.0897", "0.1468"},
      {"0.8761", "0.0189", "0.1050"}}},
}};

double parse_printed(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::stod(std::string(text));
  return std::stod(std::string(text.substr(0, slash))) /
         std::stod(std::string(text.substr(slash + 1)));
}

Check make_check(std::string stage, std::string quantity, std::string_view printed,
                 double computed, double tolerance, CheckClass kind) {
  return {std::move(stage), std::move(quantity), std::string(printed), parse_printed(printed),
          computed, tolerance, kind};
}

io::EvidenceDocument example1_document() {
  return {{"1", "2", "3", "4", "5"}, std::vector<double>{1, 2, 3, 4, 5}, {}};
}

io::EvidenceDocument example2_document() {
  return {{"R", "S", "T"},
          std::nullopt,
          {{{"R", 0.3}, {"S", 0.5}, {"T", 0.2}},
           {{"R", 0.0}, {"S", 0.5}, {"T", 0.5}},
           {{"R", 0.6}, {"S", 0.2}, {"T", 0.2}},
           {{"R", 0.9}, {"S", 0.0}, {"T", 0.1}}}};
}

io::EvidenceDocument example3_document() {
  return {{"A", "B", "C"},
          std::nullopt,
          {{{"A", 0.5}, {"B", 0.2}, {"C", 0.3}},
           {{"A", 0.0}, {"B", 0.9}, {"C", 0.1}},
           {{"A", 0.55}, {"B", 0.1}, {"C", 0.35}},
           {{"A", 0.55}, {"B", 0.1}, {"C", 0.35}},
           {{"A", 0.55}, {"B", 0.1}, {"C", 0.35}}}};
}

void check_matrix(Report& report, const SimilarityMatrix& m,
                  const std::array<std::array<std::string_view, 5>, 5>& printed,
                  const std::string& stage) {
  const auto block = m.singleton_block();
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      report.checks.push_back(make_check(stage,
                                         "(" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ")",
                                         printed[i][j], block[i][j], 0.0, CheckClass::required));
    }
  }
}

Report run_example1(const Options&) {
  Report report{"example1", {}};
  const Frame frame = example1_document().make_frame();
  check_matrix(report, jousselme_matrix(frame), kExample1Jousselme, "jousselme singletons");
  // The published matrix uses C = 1.
  check_matrix(report, hausdorff_matrix(frame, 1.0), kExample1Hausdorff, "hausdorff singletons");
  return report;
}

void check_masses(Report& report, const std::string& stage, const Bpa& bpa,
                  std::span<const std::string_view> printed, CheckClass kind) {
  const auto& frame = bpa.frame();
  for (std::size_t i = 0; i < printed.size(); ++i) {
    report.checks.push_back(make_check(stage, "m(" + frame.label(i) + ")", printed[i],
                                       bpa.mass(FocalSet::singleton(i)), kPrintedTolerance,
                                       kind));
  }
}

Report run_example2(const Options& options) {
  Report report{"example2", {}};
  const auto evidence = example2_document().to_evidence_set();

  // Published weights injected as given: checks the averaging and the
  // three-fold self-combination on their own.
  std::vector<double> given;
  for (auto w : kExample2Weights) given.push_back(parse_printed(w));
  const Bpa averaged = weighted_average(evidence, WeightVector(given));
  check_masses(report, "given weights: m_New", averaged, kExample2Averaged, CheckClass::required);
  check_masses(report, "given weights: fused", self_combine(averaged, evidence.size() - 1),
               kExample2Fused, CheckClass::required);

  // Weights recomputed from the evidence under the proposed matrix.
  const auto matrix = build_similarity_matrix(evidence.frame(), options.proposed_matrix,
                                              options.c_param);
  const auto stages = compute_weights(evidence, matrix);
  const std::string stage = "computed weights (" + std::string(to_string(options.proposed_matrix)) + ")";
  for (std::size_t i = 0; i < kExample2Weights.size(); ++i) {
    report.checks.push_back(make_check(stage, "W(m" + std::to_string(i + 1) + ")",
                                       kExample2Weights[i], stages.weights[i], kPrintedTolerance,
                                       CheckClass::documented_discrepancy));
  }
  const Bpa recomputed = weighted_average(evidence, stages.weights);
  check_masses(report, stage + ": m_New", recomputed, kExample2Averaged,
               CheckClass::documented_discrepancy);
  check_masses(report, stage + ": fused", self_combine(recomputed, evidence.size() - 1),
               kExample2Fused, CheckClass::documented_discrepancy);
  return report;
}

Report run_table1(const Options& options) {
  Report report{"example3-table1", {}};
  const auto evidence = example3_document().to_evidence_set();
  for (std::size_t r = 0; r < kAllRules.size(); ++r) {
    const auto name = kAllRules[r];
    const auto rule = RuleKind::of(name, options.proposed_matrix, options.c_param);
    const auto fused = fuse(evidence, rule);
    const auto kind = name == RuleName::proposed ? CheckClass::documented_discrepancy
                                                 : CheckClass::required;
    for (std::size_t p = 0; p < 4; ++p) {
      const auto& entry = fused.trace.at(p);
      check_masses(report, std::string(to_string(name)) + " prefix " + std::to_string(entry.prefix),
                   entry.fused, kTable1[r][p], kind);
    }
  }
  return report;
}

}  // namespace

bool Check::within_tolerance() const {
  return std::isfinite(computed) && std::abs(delta()) <= tolerance;
}

std::size_t Report::failures(CheckClass kind) const {
  std::size_t n = 0;
  for (const auto& c : checks) {
    if (c.kind == kind && !c.within_tolerance()) ++n;
  }
  return n;
}

int Report::exit_code() const {
  if (failures(CheckClass::required) > 0) return 1;
  if (failures(CheckClass::documented_discrepancy) > 0) return 4;
  return 0;
}

std::vector<std::string_view> case_names() { return {"example1", "example2", "example3-table1"}; }

io::EvidenceDocument case_document(std::string_view case_name) {
  if (case_name == "example1") return example1_document();
  if (case_name == "example2") return example2_document();
  if (case_name == "example3-table1") return example3_document();
  throw ValidationError("unknown reproduction case '" + std::string(case_name) + "'");
}

Report run_case(std::string_view case_name, const Options& options) {
  if (case_name == "example1") return run_example1(options);
  if (case_name == "example2") return run_example2(options);
  if (case_name == "example3-table1") return run_table1(options);
  throw ValidationError("unknown reproduction case '" + std::string(case_name) + "'");
}

void print_report(std::ostream& out, const Report& report, int precision) {
  out << "case " << report.case_name << "\n";
  std::size_t stage_width = 5;
  for (const auto& c : report.checks) stage_width = std::max(stage_width, c.stage.size());

  out << std::left << std::setw(static_cast<int>(stage_width) + 2) << "stage" << std::setw(10)
      << "quantity" << std::setw(10) << "printed" << std::setw(precision + 6) << "computed"
      << std::setw(12) << "delta"
      << "status\n";
  const auto flags = out.flags();
  for (const auto& c : report.checks) {
    std::string status = "ok";
    if (!c.within_tolerance()) {
      status = c.kind == CheckClass::required ? "FAIL" : "DISCREPANCY (documented)";
    }
    std::ostringstream delta;
    delta << std::showpos << std::scientific << std::setprecision(2) << c.delta();
    out << std::left << std::setw(static_cast<int>(stage_width) + 2) << c.stage << std::setw(10)
        << c.quantity << std::setw(10) << c.printed << std::fixed << std::setprecision(precision)
        << std::setw(precision + 6) << c.computed << std::setw(12) << delta.str()
        << status << "\n";
  }
  out.flags(flags);

  const auto required = report.failures(CheckClass::required);
  const auto documented = report.failures(CheckClass::documented_discrepancy);
  std::size_t n_required = 0;
  for (const auto& c : report.checks) n_required += c.kind == CheckClass::required ? 1 : 0;
  out << "required checks: " << (n_required - required) << "/" << n_required
      << " within tolerance\n";
  if (n_required != report.checks.size()) {
    out << "documented discrepancies: " << documented << "/"
        << (report.checks.size() - n_required)
        << " values differ from the published figures beyond tolerance\n";
  }
}

}  // namespace evidfuse::reproduce
