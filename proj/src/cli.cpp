#include "evidfuse/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "evidfuse/combination.hpp"
#include "evidfuse/document.hpp"
#include "evidfuse/reproduce.hpp"
#include "evidfuse/rules.hpp"

namespace evidfuse::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string input;
  std::string matrix = "combined";
  double c_param = kDefaultHausdorffC;
  std::string format;
  int precision = 4;
  bool renormalize = false;
};

std::string fixed(double x, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << x;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Left-aligned text table; first row is the header.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                 std::string_view indent = "") {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size()) out << std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out << "\n";
  }
}

MatrixKind require_matrix(const std::string& name) {
  const auto kind = parse_matrix_kind(name);
  if (!kind) {
    throw ValidationError("unknown matrix '" + name + "' (expected jousselme, hausdorff or combined)");
  }
  return *kind;
}

RuleKind require_rule(const std::string& name, const CommonOptions& opts) {
  const auto rule = parse_rule_name(name);
  if (!rule) {
    throw ValidationError("unknown rule '" + name +
                          "' (expected dempster, murphy, deng or proposed)");
  }
  return RuleKind::of(*rule, require_matrix(opts.matrix), opts.c_param);
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), format) == allowed.end()) {
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw ValidationError("unsupported --format '" + format + "' (expected " + list + ")");
  }
}

void require_precision(int precision) {
  if (precision < 0 || precision > 17) throw ValidationError("--precision must be in [0, 17]");
}

EvidenceSet load_evidence(const CommonOptions& opts) {
  return io::load_document(opts.input).to_evidence_set(BpaOptions{.renormalize = opts.renormalize});
}

std::vector<std::vector<std::string>> bpa_rows(const Bpa& bpa, int precision) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [set, mass] : bpa.focal()) {
    rows.push_back({"m(" + bpa.frame().format_subset(set) + ")", fixed(mass, precision)});
  }
  return rows;
}

std::string describe_rule(const RuleKind& rule) {
  std::ostringstream os;
  os << to_string(rule.name);
  if (rule.name == RuleName::deng || rule.name == RuleName::proposed) {
    os << " (matrix " << to_string(rule.matrix);
    if (rule.matrix != MatrixKind::jousselme) os << ", C = " << rule.c_param;
    os << ")";
  }
  return os.str();
}

void print_fusion_table(std::ostream& out, const FusionReport& report, std::size_t n,
                        int precision) {
  out << "rule: " << describe_rule(report.rule) << "\n";
  out << "evidence: " << n << " BPA" << (n == 1 ? "" : "s") << "\n";
  if (report.weights) {
    out << "\nweights\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < report.weights->size(); ++i) {
      rows.push_back({"W(m" + std::to_string(i + 1) + ")", fixed((*report.weights)[i], precision)});
    }
    print_table(out, rows, "  ");
  }
  if (report.averaged) {
    out << "\naveraged\n";
    print_table(out, bpa_rows(*report.averaged, precision), "  ");
  }
  out << "\nfused\n";
  print_table(out, bpa_rows(report.fused, precision), "  ");

  out << "\ntrace\n";
  if (report.trace.empty()) {
    out << "  (needs at least two BPAs)\n";
    return;
  }
  std::vector<FocalSet> columns;
  for (const auto& entry : report.trace) {
    for (const auto& fm : entry.fused.focal()) columns.push_back(fm.set);
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

  const auto& frame = report.fused.frame();
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"prefix"});
  for (auto s : columns) rows.front().push_back("m(" + frame.format_subset(s) + ")");
  for (const auto& entry : report.trace) {
    rows.push_back({std::to_string(entry.prefix)});
    for (auto s : columns) rows.back().push_back(fixed(entry.fused.mass(s), precision));
  }
  print_table(out, rows, "  ");
}

int cmd_fuse(const CommonOptions& opts, const std::string& rule_name, std::ostream& out) {
  require_format(opts.format, {"table", "json"});
  require_precision(opts.precision);
  const auto rule = require_rule(rule_name, opts);
  const auto evidence = load_evidence(opts);
  const auto report = fuse(evidence, rule);
  if (opts.format == "json") {
    out << io::report_to_json(report).dump(2) << "\n";
  } else {
    print_fusion_table(out, report, evidence.size(), opts.precision);
  }
  return kSuccess;
}

int cmd_matrix(const CommonOptions& opts, bool singletons, std::ostream& out) {
  require_format(opts.format, {"table", "csv", "json"});
  require_precision(opts.precision);
  const Frame frame = io::load_document(opts.input).make_frame();
  const auto matrix = build_similarity_matrix(frame, require_matrix(opts.matrix), opts.c_param);

  std::vector<std::size_t> index;
  if (singletons) {
    for (std::size_t i = 0; i < frame.size(); ++i) index.push_back(subset_index::of(FocalSet::singleton(i)));
  } else {
    for (std::size_t i = 0; i < matrix.dimension(); ++i) index.push_back(i);
  }
  std::vector<std::string> names;
  for (auto i : index) names.push_back(frame.format_subset(subset_index::at(i)));

  if (opts.format == "json") {
    json j;
    j["kind"] = to_string(matrix.kind());
    j["c"] = matrix.c_param();
    j["subsets"] = names;
    j["entries"] = json::array();
    for (auto i : index) {
      json row = json::array();
      for (auto k : index) row.push_back(matrix(i, k));
      j["entries"].push_back(std::move(row));
    }
    out << j.dump(2) << "\n";
    return kSuccess;
  }

  if (opts.format == "csv") {
    out << "subset";
    for (const auto& n : names) out << "," << csv_field(n);
    out << "\n";
    for (std::size_t r = 0; r < index.size(); ++r) {
      out << csv_field(names[r]);
      for (auto k : index) out << "," << fixed(matrix(index[r], k), opts.precision);
      out << "\n";
    }
    return kSuccess;
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({""});
  for (const auto& n : names) rows.front().push_back("{" + n + "}");
  for (std::size_t r = 0; r < index.size(); ++r) {
    rows.push_back({"{" + names[r] + "}"});
    for (auto k : index) rows.back().push_back(fixed(matrix(index[r], k), opts.precision));
  }
  out << to_string(matrix.kind()) << " similarity";
  if (matrix.kind() != MatrixKind::jousselme) out << " (C = " << matrix.c_param() << ")";
  out << "\n";
  print_table(out, rows);
  return kSuccess;
}

void print_square(std::ostream& out, const std::string& title, const SquareMatrix& m,
                  int precision) {
  out << title << "\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({""});
  for (std::size_t j = 0; j < m.size(); ++j) rows.front().push_back("m" + std::to_string(j + 1));
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows.push_back({"m" + std::to_string(i + 1)});
    for (std::size_t j = 0; j < m.size(); ++j) rows.back().push_back(fixed(m(i, j), precision));
  }
  print_table(out, rows, "  ");
}

json square_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_weights(const CommonOptions& opts, bool verbose, std::ostream& out) {
  require_format(opts.format, {"table", "json"});
  require_precision(opts.precision);
  const auto kind = require_matrix(opts.matrix);
  const auto evidence = load_evidence(opts);
  const auto matrix = cached_similarity_matrix(evidence.frame(), kind, opts.c_param);
  const auto stages = compute_weights(evidence, *matrix);

  if (opts.format == "json") {
    json j;
    j["matrix"] = to_string(kind);
    j["c"] = opts.c_param;
    j["weights"] = stages.weights.values();
    if (verbose) {
      j["distances"] = square_to_json(stages.distances);
      j["similarity"] = square_to_json(stages.similarity);
      j["supports"] = stages.supports;
    }
    out << j.dump(2) << "\n";
    return kSuccess;
  }

  if (verbose) {
    print_square(out, "distances (DIM)", stages.distances, opts.precision);
    out << "\n";
    print_square(out, "similarity (SIM)", stages.similarity, opts.precision);
    out << "\nsupport\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < stages.supports.size(); ++i) {
      rows.push_back({"Supp(m" + std::to_string(i + 1) + ")", fixed(stages.supports[i], opts.precision)});
    }
    print_table(out, rows, "  ");
    out << "\n";
  }
  out << "weights (matrix " << to_string(kind) << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < stages.weights.size(); ++i) {
    rows.push_back({"W(m" + std::to_string(i + 1) + ")", fixed(stages.weights[i], opts.precision)});
  }
  print_table(out, rows, "  ");
  return kSuccess;
}

std::vector<RuleKind> parse_rule_list(const std::string& list, const CommonOptions& opts) {
  std::vector<RuleKind> rules;
  if (list == "all") {
    for (auto name : kAllRules) rules.push_back(RuleKind::of(name, require_matrix(opts.matrix), opts.c_param));
    return rules;
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto rule = require_rule(item, opts);
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(rule);
  }
  if (rules.empty()) throw ValidationError("--rule lists no rules");
  return rules;
}

int cmd_trace(const CommonOptions& opts, const std::string& rule_list, const std::string& target,
              std::ostream& out) {
  require_format(opts.format, {"csv", "table"});
  require_precision(opts.precision);
  const auto rules = parse_rule_list(rule_list, opts);
  const auto evidence = load_evidence(opts);
  const auto target_set = evidence.frame().parse_subset(target);
  const auto rows = convergence_trace(evidence, rules, target_set);
  const auto target_name = evidence.frame().format_subset(target_set);

  if (opts.format == "csv") {
    out << "prefix,rule,target,mass\n";
    for (const auto& row : rows) {
      out << row.prefix << "," << to_string(row.rule.name) << "," << csv_field(target_name) << ","
          << fixed(row.mass, opts.precision) << "\n";
    }
    return kSuccess;
  }
  std::vector<std::vector<std::string>> table{{"prefix", "rule", "target", "mass"}};
  for (const auto& row : rows) {
    table.push_back({std::to_string(row.prefix), std::string(to_string(row.rule.name)), target_name,
                     fixed(row.mass, opts.precision)});
  }
  print_table(out, table);
  return kSuccess;
}

int cmd_reproduce(const CommonOptions& opts, const std::string& case_name, std::ostream& out) {
  require_precision(opts.precision);
  reproduce::Options options{require_matrix(opts.matrix), opts.c_param};
  const auto report = reproduce::run_case(case_name, options);
  reproduce::print_report(out, report, opts.precision);
  return report.exit_code();
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_input, const std::string& format) {
  auto* input = cmd->add_option("--input,-i", opts.input, "Evidence document (JSON)");
  if (needs_input) input->required();
  cmd->add_option("--matrix", opts.matrix, "jousselme|hausdorff|combined")->capture_default_str();
  cmd->add_option("--c", opts.c_param, "Hausdorff tuning constant C (> 0)")->capture_default_str();
  cmd->add_option("--precision", opts.precision, "Decimal places in text output")
      ->capture_default_str();
  if (!format.empty()) {
    opts.format = format;
    cmd->add_option("--format", opts.format, "Output format")->capture_default_str();
  }
  if (needs_input) {
    cmd->add_flag("--renormalize", opts.renormalize,
                  "Rescale BPAs whose masses sum to within 1e-6 of 1");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combine conflicting Dempster-Shafer evidence", "evidfuse"};
  app.require_subcommand(1);

  CommonOptions fuse_opts, matrix_opts, weights_opts, trace_opts, repro_opts;
  std::string rule = "proposed";
  std::string trace_rules = "all";
  std::string target;
  std::string case_name;
  bool singletons = false;
  bool verbose = false;

  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse the evidence under one rule");
  add_common(fuse_cmd, fuse_opts, true, "table");
  fuse_cmd->add_option("--rule", rule, "dempster|murphy|deng|proposed")->capture_default_str();

  auto* matrix_cmd = app.add_subcommand("matrix", "Print a focal-element similarity matrix");
  add_common(matrix_cmd, matrix_opts, true, "table");
  matrix_cmd->add_flag("--singletons", singletons, "Only singleton rows and columns");

  auto* weights_cmd = app.add_subcommand("weights", "Credibility weights of each BPA");
  add_common(weights_cmd, weights_opts, true, "table");
  weights_cmd->add_flag("--verbose", verbose, "Also print distances, similarities and supports");

  auto* trace_cmd = app.add_subcommand("trace", "Target mass after each evidence prefix");
  add_common(trace_cmd, trace_opts, true, "csv");
  trace_cmd->add_option("--rule", trace_rules, "Comma-separated rules, or 'all'")
      ->capture_default_str();
  trace_cmd->add_option("--target", target, "Focal set to follow, e.g. A or A,B")->required();

  auto* repro_cmd = app.add_subcommand("reproduce", "Check the published worked examples");
  add_common(repro_cmd, repro_opts, false, "");
  repro_cmd->add_option("case", case_name, "example1|example2|example3-table1")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (fuse_cmd->parsed()) return cmd_fuse(fuse_opts, rule, out);
    if (matrix_cmd->parsed()) return cmd_matrix(matrix_opts, singletons, out);
    if (weights_cmd->parsed()) return cmd_weights(weights_opts, verbose, out);
    if (trace_cmd->parsed()) return cmd_trace(trace_opts, trace_rules, target, out);
    if (repro_cmd->parsed()) return cmd_reproduce(repro_opts, case_name, out);
  } catch (const TotalConflictError& e) {
    err << "evidfuse: " << e.what() << "\n";
    return kTotalConflict;
  } catch (const NumericalError& e) {
    err << "evidfuse: numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const ValidationError& e) {
    err << "evidfuse: " << e.what() << "\n\n";
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace evidfuse::cli
