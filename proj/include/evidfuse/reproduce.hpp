#ifndef EVIDFUSE_REPRODUCE_HPP
#define EVIDFUSE_REPRODUCE_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "evidfuse/distance.hpp"
#include "evidfuse/document.hpp"

namespace evidfuse::reproduce {

// Values published to four decimals; covers last-digit rounding.
inline constexpr double kPrintedTolerance = 5e-4;

enum class CheckClass {
  required,                // must match; a miss is a hard failure
  documented_discrepancy,  // known not to follow from the literal weighting formula
};

struct Check {
  std::string stage;
  std::string quantity;
  std::string printed;  // the published figure, verbatim ("0.8571", "1/3")
  double expected;
  double computed;
  double tolerance;
  CheckClass kind;

  double delta() const { return computed - expected; }
  bool within_tolerance() const;
};

struct Report {
  std::string case_name;
  std::vector<Check> checks;

  std::size_t failures(CheckClass kind) const;
  // 0 all within tolerance, 1 a required check failed, 4 only documented
  // discrepancies are outside tolerance.
  int exit_code() const;
};

struct Options {
  // Matrix used for the proposed rule's weights.
  MatrixKind proposed_matrix = MatrixKind::combined;
  double c_param = kDefaultHausdorffC;
};

std::vector<std::string_view> case_names();

// Evidence corpus embedded for a case (example1 carries only its frame).
io::EvidenceDocument case_document(std::string_view case_name);

// Throws ValidationError for an unknown case.
Report run_case(std::string_view case_name, const Options& options = {});

void print_report(std::ostream& out, const Report& report, int precision);

}  // namespace evidfuse::reproduce

#endif  // EVIDFUSE_REPRODUCE_HPP
