#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "hre/hre_solver.hpp"
#include "oracles.hpp"

using hre::ErrorKind;
using hre::HreVariant;
using hre::PCMatrix;
using hre::ReferencePartition;

namespace {

const std::vector<std::string> kSeven{"a1", "a2", "a3", "a4", "a5", "a6", "a7"};

// Profitability judgments of the sports-facility example. Known-known cells
// hold the reference ratios.
PCMatrix profitability() {
  return PCMatrix{{1, 2.0 / 3, 2, 1.0 / 2, 1.0 / 2, 1, 3.0 / 2},
                  {3.0 / 2, 1, 2, 2.0 / 3, 1.0 / 2, 1, 2},
                  {1.0 / 2, 1.0 / 2, 1, 1.0 / 3, 1.0 / 4, 1, 2.0 / 3},
                  {2, 3.0 / 2, 3, 1, 2.0 / 3, 3.0 / 2, 1},
                  {2, 2, 4, 2.0 / 3, 1, 20.0 / 12, 20.0 / 9},
                  {1, 1, 1, 3.0 / 2, 12.0 / 20, 1, 12.0 / 9},
                  {2.0 / 3, 1.0 / 2, 3.0 / 2, 1, 9.0 / 20, 9.0 / 12, 1}};
}

PCMatrix durability() {
  return PCMatrix{{1, 3, 2, 1, 1.0 / 2, 2, 3.0 / 2},
                  {1.0 / 3, 1, 3.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 2, 1.0 / 2},
                  {1.0 / 2, 2.0 / 3, 1, 1.0 / 3, 1.0 / 4, 2.0 / 3, 1.0 / 2},
                  {1, 3, 3, 1, 4.0 / 5, 2, 2},
                  {2, 4, 4, 5.0 / 4, 1, 3, 2},
                  {1.0 / 2, 2, 3.0 / 2, 1.0 / 2, 1.0 / 3, 1, 2.0 / 3},
                  {2.0 / 3, 2, 2, 1.0 / 2, 1.0 / 2, 3.0 / 2, 1}};
}

PCMatrix period() {
  return PCMatrix{{1, 2, 8.0 / 10, 4, 8.0 / 5},
                  {1.0 / 2, 1, 1.0 / 3, 2, 1},
                  {10.0 / 8, 3, 1, 5, 10.0 / 5},
                  {1.0 / 4, 1.0 / 2, 1.0 / 5, 1, 1.0 / 2},
                  {5.0 / 8, 1, 5.0 / 10, 2, 1}};
}

struct PlantedInstance {
  std::vector<double> w;
  PCMatrix c;
  ReferencePartition part;
};

PlantedInstance planted(std::mt19937_64& rng, std::size_t n) {
  auto w = oracle::random_weights(rng, n);
  std::map<std::string, double> known;
  const auto labels = hre::default_labels(n);
  for (std::size_t i : oracle::random_known_subset(rng, n)) known[labels[i]] = w[i];
  return {w, PCMatrix::from_weights(w), ReferencePartition(labels, known)};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const hre::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InvalidModel;
}

}  // namespace

TEST(ReferencePartition, SplitsInLabelOrder) {
  const ReferencePartition p(kSeven, {{"a5", 20}, {"a6", 12}, {"a7", 9}});
  EXPECT_EQ(p.unknown(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(p.known(), (std::vector<std::size_t>{4, 5, 6}));
  EXPECT_TRUE(p.is_known(5));
  EXPECT_EQ(p.known_value(5), 12.0);
}

TEST(ReferencePartition, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { ReferencePartition({"a", "b"}, {{"z", 1.0}}); }), ErrorKind::UnknownLabel);
  EXPECT_EQ(kind_of([] { ReferencePartition({"a", "b"}, {{"a", 0.0}}); }), ErrorKind::NonPositiveEntry);
  EXPECT_EQ(kind_of([] { ReferencePartition({"a", "a"}, {}); }), ErrorKind::PartitionMismatch);
}

TEST(AdditiveSystem, ProfitabilityMatchesReferenceSystem) {
  const auto sys = hre::build_additive_system(profitability(), ReferencePartition(kSeven, {{"a5", 20}, {"a6", 12}, {"a7", 9}}));
  EXPECT_EQ(sys.variant, HreVariant::Additive);
  const double reference_m[4][4] = {{1, -0.111, -0.333, -0.083},
                                  {-0.25, 1, -0.333, -0.111},
                                  {-0.083, -0.083, 1, -0.056},
                                  {-0.333, -0.25, -0.5, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(sys.matrix(i, j), reference_m[i][j], 1e-3);
  const double reference_b[4] = {5.917, 6.667, 3.833, 6.722};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(sys.rhs[i], reference_b[i], 1e-3);
}

TEST(AdditiveSystem, PeriodRightHandSideIsExact) {
  const auto sys = hre::build_additive_system(period(), ReferencePartition(hre::default_labels(5), {{"a1", 8}, {"a3", 10}, {"a5", 5}}));
  EXPECT_EQ(sys.unknown, (std::vector<std::size_t>{1, 3}));
  EXPECT_NEAR(sys.rhs[0], 37.0 / 12, 1e-12);
  EXPECT_NEAR(sys.rhs[1], 13.0 / 8, 1e-12);
  EXPECT_NEAR(sys.matrix(0, 1), -0.5, 1e-15);
  EXPECT_NEAR(sys.matrix(1, 0), -0.125, 1e-15);
}

TEST(AdditiveSystem, TwoAlternativesCollapse) {
  const double c = 2.5, v = 4.0;
  const auto sys = hre::build_additive_system(PCMatrix{{1, c}, {1 / c, 1}}, ReferencePartition({"a1", "a2"}, {{"a2", v}}));
  ASSERT_EQ(sys.matrix.rows(), 1u);
  EXPECT_EQ(sys.matrix(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(sys.rhs[0], c * v);
}

TEST(AdditiveSystem, EmptySetsAreRejected) {
  EXPECT_EQ(kind_of([] { hre::build_additive_system(PCMatrix::identity(2), ReferencePartition({"a", "b"}, {{"a", 1}, {"b", 1}})); }),
            ErrorKind::EmptyUnknownSet);
  EXPECT_EQ(kind_of([] { hre::build_additive_system(PCMatrix::identity(2), ReferencePartition({"a", "b"}, {})); }),
            ErrorKind::EmptyReferenceSet);
  EXPECT_EQ(kind_of([] { hre::build_additive_system(PCMatrix::identity(3), ReferencePartition({"a", "b"}, {{"a", 1}})); }),
            ErrorKind::PartitionMismatch);
}

TEST(SolveAdditive, SportsFacilityCriteria) {
  const auto pr = hre::solve_additive(profitability(), ReferencePartition(kSeven, {{"a5", 20}, {"a6", 12}, {"a7", 9}}));
  const double expected_pr[] = {11.164, 13.667, 6.863, 17.292, 20, 12, 9};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(pr[i], expected_pr[i], 0.01);
  EXPECT_FALSE(pr.normalized());

  const auto du = hre::solve_additive(durability(), ReferencePartition(kSeven, {{"a5", 72}, {"a6", 24}, {"a7", 36}}));
  const double expected_du[] = {47.183, 18.119, 17.688, 55.367, 72, 24, 36};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(du[i], expected_du[i], 0.01);
}

TEST(SolveAdditive, InadmissibleSolutionIsReported) {
  // det(M) = 1 - c12 c21 / 4 < 0 with a positive right-hand side
  const PCMatrix c{{1, 6, 1}, {6, 1, 1}, {1, 1, 1}};
  try {
    hre::solve_additive(c, ReferencePartition({"a1", "a2", "a3"}, {{"a3", 1.0}}));
    FAIL();
  } catch (const hre::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InadmissibleSolution);
    EXPECT_TRUE(e.is_infeasibility());
  }
}

TEST(BuildGeometricSystem, Templates) {
  const double c = 2.5, v = 4.0;
  const auto one = hre::build_geometric_system(PCMatrix{{1, c}, {1 / c, 1}}, ReferencePartition({"a1", "a2"}, {{"a2", v}}));
  EXPECT_EQ(one.variant, HreVariant::Geometric);
  EXPECT_EQ(one.matrix(0, 0), 1.0);
  EXPECT_NEAR(one.rhs[0], std::log(c * v), 1e-15);

  const auto two = hre::build_geometric_system(period(), ReferencePartition(hre::default_labels(5), {{"a1", 8}, {"a3", 10}, {"a5", 5}}));
  EXPECT_EQ(two.matrix, (hre::DenseMatrix{{4, -1}, {-1, 4}}));
}

TEST(BuildGeometricSystem, PlantedRightHandSide) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto inst = planted(rng, n);
    const auto sys = hre::build_geometric_system(inst.c, inst.part);
    // Substituting c_ij = w_i / w_j: the known log-weights cancel, leaving
    // (n-1) ln w_i minus the other unknowns' log-weights.
    for (std::size_t r = 0; r < sys.unknown.size(); ++r) {
      const std::size_t i = sys.unknown[r];
      double expected = double(n - 1) * std::log(inst.w[i]);
      for (std::size_t j : inst.part.unknown())
        if (j != i) expected -= std::log(inst.w[j]);
      EXPECT_NEAR(sys.rhs[r], expected, 1e-10);
    }
  }
}

TEST(BuildGeometricSystem, SingleUnknownRightHandSide) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto w = oracle::random_weights(rng, n);
    const auto labels = hre::default_labels(n);
    std::map<std::string, double> known;
    for (std::size_t i = 1; i < n; ++i) known[labels[i]] = w[i];
    const auto sys = hre::build_geometric_system(PCMatrix::from_weights(w), ReferencePartition(labels, known));
    EXPECT_NEAR(sys.rhs[0], double(n - 1) * std::log(w[0]), 1e-10);
  }
}

TEST(SolveGeometric, TwoAlternatives) {
  const double c = 2.5, v = 4.0;
  const auto w = hre::solve_geometric(PCMatrix{{1, c}, {1 / c, 1}}, ReferencePartition({"a1", "a2"}, {{"a2", v}}));
  EXPECT_NEAR(w[0], c * v, 1e-12);
  EXPECT_EQ(w[1], v);
}

TEST(SolveGeometric, ScalingReferencesScalesUnknowns) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> judgment(0.2, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 5;
    oracle::Grid g(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        g[i][j] = judgment(rng);
        g[j][i] = 1.0 / g[i][j];
      }
    const auto labels = hre::default_labels(n);
    std::map<std::string, double> known, scaled;
    for (std::size_t i : oracle::random_known_subset(rng, n)) {
      known[labels[i]] = 1.0 + i;
      scaled[labels[i]] = 3.0 * (1.0 + i);
    }
    const auto base = hre::solve_geometric(PCMatrix(g), ReferencePartition(labels, known));
    const auto big = hre::solve_geometric(PCMatrix(g), ReferencePartition(labels, scaled));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(big[i], 3.0 * base[i], 1e-9 * big[i]);
  }
}

TEST(HreSolvers, ConsistentMatricesRecoverPlantedWeights) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto inst = planted(rng, n);
    const auto add = hre::solve_additive(inst.c, inst.part);
    const auto geo = hre::solve_geometric(inst.c, inst.part);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(add[i], inst.w[i], 1e-9 * std::max(1.0, inst.w[i]));
      EXPECT_NEAR(geo[i], inst.w[i], 1e-9 * std::max(1.0, inst.w[i]));
    }
  }
}

TEST(HreSolvers, LogBaseDoesNotMatter) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> judgment(0.2, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 5;
    oracle::Grid g(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) g[i][j] = judgment(rng);
    const auto labels = hre::default_labels(n);
    std::map<std::string, double> known;
    for (std::size_t i : oracle::random_known_subset(rng, n)) known[labels[i]] = judgment(rng) * 10;
    const ReferencePartition part(labels, known);
    const auto natural = hre::solve_geometric(PCMatrix(g), part);
    const auto decimal = hre::solve_geometric(PCMatrix(g), part, 10.0);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(decimal[i], natural[i], 1e-10 * std::max(1.0, natural[i]));
  }
}

TEST(Passthrough, ReturnsKnownValuesInLabelOrder) {
  const auto a = hre::passthrough_known(ReferencePartition({"a", "b"}, {{"a", 2}, {"b", 3}}));
  EXPECT_EQ(a.values(), (std::vector<double>{2, 3}));
  EXPECT_EQ(hre::passthrough_known(ReferencePartition({"a"}, {{"a", 1}})).values(), (std::vector<double>{1}));
  const auto du = hre::passthrough_known(ReferencePartition({"a5", "a6", "a7"}, {{"a5", 72}, {"a6", 24}, {"a7", 36}}));
  EXPECT_EQ(du.values(), (std::vector<double>{72, 24, 36}));
  EXPECT_THROW(hre::passthrough_known(ReferencePartition({"a", "b"}, {{"a", 2}})), hre::Error);
}
