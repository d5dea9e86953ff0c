#include "evidfuse/combination.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace evidfuse {

namespace {

struct Conjunction {
  std::vector<FocalMass> agreeing;  // unnormalised, one entry per intersection
  double conflict = 0.0;
};

// Only focal sets are visited, so cost is |focal(m1)| * |focal(m2)| rather
// than the square of the powerset.
Conjunction conjunctive(const Bpa& m1, const Bpa& m2) {
  Conjunction out;
  for (const auto& [b, mb] : m1.focal()) {
    for (const auto& [c, mc] : m2.focal()) {
      const SubsetMask meet = b.mask() & c.mask();
      const double product = mb * mc;
      if (meet == 0) {
        out.conflict += product;
        continue;
      }
      const FocalSet key(meet);
      auto it = std::lower_bound(out.agreeing.begin(), out.agreeing.end(), key,
                                 [](const FocalMass& fm, FocalSet s) { return fm.set < s; });
      if (it != out.agreeing.end() && it->set == key) {
        it->mass += product;
      } else {
        out.agreeing.insert(it, {key, product});
      }
    }
  }
  return out;
}

}  // namespace

double conflict(const Bpa& m1, const Bpa& m2) {
  require_same_frame(m1.frame(), m2.frame(), "conflict");
  return std::clamp(conjunctive(m1, m2).conflict, 0.0, 1.0);
}

Bpa combine(const Bpa& m1, const Bpa& m2) {
  require_same_frame(m1.frame(), m2.frame(), "combine");
  auto joint = conjunctive(m1, m2);

  double agreement = 0.0;
  for (const auto& fm : joint.agreeing) agreement += fm.mass;
  if (joint.conflict >= 1.0 - kTotalConflictTolerance || agreement <= kTotalConflictTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "total conflict: Dempster normalisation undefined (k = " << joint.conflict << ")";
    throw TotalConflictError(msg.str());
  }

  // agreement equals 1 - k; dividing by the accumulated sum keeps the output
  // on the simplex without a separate renormalisation pass.
  for (auto& fm : joint.agreeing) fm.mass = std::min(fm.mass / agreement, 1.0);
  return Bpa::make(m1.frame(), std::move(joint.agreeing), BpaOptions{.renormalize = true});
}

Bpa self_combine(const Bpa& m, std::size_t operations) {
  Bpa result = m;
  for (std::size_t i = 0; i < operations; ++i) result = combine(result, m);
  return result;
}

}  // namespace evidfuse
