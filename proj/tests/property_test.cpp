#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "evidfuse/combination.hpp"
#include "evidfuse/rules.hpp"
#include "oracle.hpp"

namespace evidfuse {
namespace {

constexpr int kTrials = 1000;

class Property : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240917};

  std::size_t labels(std::size_t max = 4) {
    return std::uniform_int_distribution<std::size_t>(1, max)(rng);
  }
  Bpa random_bpa(const Frame& f, std::size_t max_focal = 4) {
    return oracle::to_bpa(f, oracle::random_masses(rng, f.size(), max_focal));
  }
  EvidenceSet random_evidence(const Frame& f, std::size_t max_n = 5) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
    std::vector<Bpa> bpas;
    for (std::size_t i = 0; i < n; ++i) bpas.push_back(random_bpa(f));
    return EvidenceSet::make(std::move(bpas));
  }
};

void expect_valid(const Bpa& m) {
  double total = 0.0;
  for (const auto& fm : m.focal()) {
    EXPECT_GE(fm.mass, 0.0);
    EXPECT_LE(fm.mass, 1.0);
    total += fm.mass;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST_F(Property, DempsterCommutativeAssociativeAndMatchesOracle) {
  int checked = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto a = random_bpa(f), b = random_bpa(f), c = random_bpa(f);
    const auto dim = std::size_t{1} << f.size();

    if (conflict(a, b) >= 1.0 - kTotalConflictTolerance) {
      EXPECT_THROW(combine(a, b), TotalConflictError);
      continue;
    }
    const auto ab = combine(a, b);
    expect_valid(ab);
    const auto ba = combine(b, a);
    for (const auto& fm : ab.focal()) EXPECT_NEAR(ba.mass(fm.set), fm.mass, 1e-12);

    const auto expected = oracle::combine(oracle::from_bpa(a), oracle::from_bpa(b));
    const auto got = oracle::from_bpa(ab);
    for (std::size_t s = 1; s < dim; ++s) EXPECT_NEAR(got[s], expected[s], 1e-9);
    ++checked;

    // Associativity only where every intermediate step is defined.
    if (conflict(ab, c) >= 1.0 - kTotalConflictTolerance ||
        conflict(b, c) >= 1.0 - kTotalConflictTolerance) {
      continue;
    }
    const auto bc = combine(b, c);
    if (conflict(a, bc) >= 1.0 - kTotalConflictTolerance) continue;
    const auto left = combine(ab, c);
    const auto right = combine(a, bc);
    for (std::size_t s = 1; s < dim; ++s) {
      EXPECT_NEAR(left.mass(FocalSet(s)), right.mass(FocalSet(s)), 1e-9);
    }
  }
  EXPECT_GT(checked, kTrials / 2);
}

TEST_F(Property, VacuousIsTwoSidedIdentity) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto m = random_bpa(f);
    const auto vacuous = Bpa::make(f, std::vector<FocalMass>{{f.full_set(), 1.0}});
    for (const auto& out : {combine(m, vacuous), combine(vacuous, m)}) {
      ASSERT_EQ(out.focal().size(), m.focal().size());
      for (const auto& fm : m.focal()) EXPECT_NEAR(out.mass(fm.set), fm.mass, 1e-12);
    }
  }
}

TEST_F(Property, SimilarityMatricesWellFormed) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto f = oracle::frame_of(n);
    const auto j = jousselme_matrix(f);
    for (double c : {0.25, 1.0, 3.0}) {
      const auto h = hausdorff_matrix(f, c);
      const auto cm = combined_matrix(f, c);
      for (const auto* m : {&j, &h, &cm}) {
        for (std::size_t r = 0; r < m->dimension(); ++r) {
          EXPECT_EQ((*m)(r, r), 1.0);
          for (std::size_t k = 0; k < m->dimension(); ++k) {
            EXPECT_EQ((*m)(r, k), (*m)(k, r));
            EXPECT_GE((*m)(r, k), 0.0);
            EXPECT_LE((*m)(r, k), 1.0);
          }
        }
      }
      for (std::size_t r = 0; r < cm.dimension(); ++r) {
        for (std::size_t k = 0; k < cm.dimension(); ++k) {
          EXPECT_LE(cm(r, k), j(r, k));
          EXPECT_LE(cm(r, k), h(r, k));
        }
      }
    }
  }
}

TEST_F(Property, HausdorffClosedFormEqualsSupInfOfHullsOnRandomOrdinals) {
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  for (int t = 0; t < kTrials; ++t) {
    const auto n = labels(5);
    std::vector<double> ords(n);
    for (auto& x : ords) x = pos(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("h" + std::to_string(i));
    const auto f = Frame::make(names, ords);
    std::uniform_int_distribution<unsigned> pick(1, (1U << n) - 1);
    const unsigned a = pick(rng), b = pick(rng);
    const double h = hausdorff_set_distance(FocalSet(a), FocalSet(b), f);
    EXPECT_NEAR(h, oracle::hausdorff(oracle::hull(a, ords), oracle::hull(b, ords), ords), 1e-12);
    EXPECT_LE(h, oracle::hausdorff(a, b, ords) + 1e-12);
  }
}

TEST_F(Property, JousselmeDistanceIsBoundedSymmetricAndTriangular) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto d = cached_similarity_matrix(f, MatrixKind::jousselme);
    const auto a = random_bpa(f), b = random_bpa(f), c = random_bpa(f);
    const double ab = quadratic_distance(a, b, *d);
    const double bc = quadratic_distance(b, c, *d);
    const double ac = quadratic_distance(a, c, *d);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
    EXPECT_EQ(ab, quadratic_distance(b, a, *d));
    EXPECT_LE(ac, ab + bc + 1e-9);
    EXPECT_NEAR(ab, oracle::distance(oracle::from_bpa(a), oracle::from_bpa(b),
                                     oracle::Kind::jousselme, f.ordinals()),
                1e-12);
  }
}

TEST_F(Property, EveryKindSymmetricAndZeroOnSelf) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto a = random_bpa(f), b = random_bpa(f);
    for (auto kind : {MatrixKind::jousselme, MatrixKind::hausdorff, MatrixKind::combined}) {
      const auto d = cached_similarity_matrix(f, kind);
      EXPECT_EQ(quadratic_distance(a, a, *d), 0.0);
      EXPECT_NEAR(quadratic_distance(a, b, *d), quadratic_distance(b, a, *d), 1e-15);
    }
  }
}

TEST_F(Property, WeightsAreProbabilityVectorsWithBoundedSupport) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto es = random_evidence(f);
    const auto kind = static_cast<MatrixKind>(t % 3);
    const auto stages = compute_weights(es, *cached_similarity_matrix(f, kind));
    const auto& w = stages.weights.values();
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-9);
    for (double x : w) EXPECT_GE(x, 0.0);
    for (double s : stages.supports) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, static_cast<double>(es.size() - 1) + 1e-12);
    }
    expect_valid(weighted_average(es, stages.weights));
  }
}

TEST_F(Property, WeightsArePermutationEquivariant) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto es = random_evidence(f);
    std::vector<std::size_t> perm(es.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Bpa> shuffled;
    for (auto i : perm) shuffled.push_back(es[i]);

    const auto d = cached_similarity_matrix(f, static_cast<MatrixKind>(t % 3));
    const auto w = compute_weights(es, *d).weights;
    const auto ws = compute_weights(EvidenceSet::make(shuffled), *d).weights;
    for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_NEAR(ws[k], w[perm[k]], 1e-12);
  }
}

TEST_F(Property, IdenticalEvidenceGivesUniformWeights) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto m = random_bpa(f);
    const auto n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto es = EvidenceSet::make(std::vector<Bpa>(n, m));
    const auto w = compute_weights(es, *cached_similarity_matrix(f, MatrixKind::combined)).weights;
    for (double x : w.values()) EXPECT_NEAR(x, 1.0 / static_cast<double>(n), 1e-15);
    const auto avg = weighted_average(es, w);
    for (const auto& fm : m.focal()) EXPECT_NEAR(avg.mass(fm.set), fm.mass, 1e-12);
  }
}

TEST_F(Property, FusedBpasAlwaysValid) {
  int fused = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto es = random_evidence(f);
    const auto rule = RuleKind::of(kAllRules[static_cast<std::size_t>(t) % 4],
                                   static_cast<MatrixKind>((t / 4) % 3));
    try {
      const auto report = fuse(es, rule);
      expect_valid(report.fused);
      for (const auto& e : report.trace) expect_valid(e.fused);
      if (es.size() >= 2) {
        EXPECT_EQ(report.trace.back().fused, report.fused);
      }
      ++fused;
    } catch (const TotalConflictError&) {
      // Only the plain Dempster fold can hit k = 1; averaged rules never do.
      EXPECT_EQ(rule.name, RuleName::dempster);
    }
  }
  EXPECT_GT(fused, kTrials * 3 / 4);
}

TEST_F(Property, TwoPiecesMakeWeightedRulesAgree) {
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::frame_of(labels());
    const auto es = EvidenceSet::make({random_bpa(f), random_bpa(f)});
    const auto murphy = fuse(es, RuleKind::murphy()).fused;
    for (const auto& rule : {RuleKind::deng(), RuleKind::proposed()}) {
      const auto r = fuse(es, rule).fused;
      for (const auto& fm : murphy.focal()) EXPECT_NEAR(r.mass(fm.set), fm.mass, 1e-12);
    }
  }
}

}  // namespace
}  // namespace evidfuse
