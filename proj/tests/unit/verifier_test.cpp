#include "subgroup_lab/verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subgroup_lab/errors.hpp"

namespace sglab {
namespace {

const Modulus p7(7);

std::vector<std::string> all_checks() {
  return {bound_catalog().begin(), bound_catalog().end()};
}

BoundContext full_context(const Subgroup& A, const ContextOptions& opt = {}) {
  const auto checks = all_checks();
  return build_context(analyze(A), checks, opt);
}

// Five-fold enumeration of x1 + x2 + y1 + y2 = a*y3, x_i in 2A, y_i in A.
std::uint64_t brute_N(const Subgroup& A, std::uint32_t a) {
  const std::uint32_t p = A.p();
  const auto two = fold_sumset(to_zpset(A), 2).elements();
  std::uint64_t n = 0;
  for (auto x1 : two)
    for (auto x2 : two)
      for (auto y1 : A.elements())
        for (auto y2 : A.elements())
          for (auto y3 : A.elements())
            if ((std::uint64_t{x1} + x2 + y1 + y2) % p == std::uint64_t{a} * y3 % p) ++n;
  return n;
}

TEST(Catalog, FixedOrderAndMembership) {
  const auto cat = bound_catalog();
  ASSERT_EQ(cat.size(), 16u);
  EXPECT_EQ(cat.front(), "hk_energy");
  EXPECT_EQ(cat.back(), "li_decay");
  EXPECT_TRUE(in_catalog("e32"));
  EXPECT_FALSE(in_catalog("foo"));
}

TEST(CheckBound, EnergyExponentExampleAtSeven) {
  const Subgroup A = subgroup(p7, 3);
  const auto c = check_bound("hk_energy", A, full_context(A));
  EXPECT_EQ(c.lhs, 15.0);
  EXPECT_NEAR(c.rhs_expr, std::pow(3.0, 2.5), 1e-12);
  EXPECT_NEAR(c.ratio, 0.9622504486493763, 1e-12);
  EXPECT_EQ(c.p, 7u);
  EXPECT_EQ(c.d, 3u);
  EXPECT_EQ(c.A_size, 3u);
  EXPECT_EQ(c.twoA_size, 6u);
}

TEST(CheckBound, Errors) {
  const Subgroup A = subgroup(p7, 3);
  EXPECT_THROW(check_bound("foo", A, full_context(A)), CatalogError);
  EXPECT_THROW(check_bound("hk_energy", A, BoundContext{}), DependencyError);
  const Subgroup small = subgroup(p7, 2);
  EXPECT_THROW(check_bound("hk_energy", small, full_context(small)), InvalidArgument);
}

TEST(CheckBound, ConditionalHypothesisFailsButRatioReported) {
  const Subgroup A = subgroup(Modulus(101), 100);
  const auto c = check_bound("energy1_shkredov", A, full_context(A));
  EXPECT_FALSE(c.hypothesis_ok);
  EXPECT_GT(c.ratio, 0.0);
  EXPECT_TRUE(std::isfinite(c.ratio));
}

TEST(CheckBound, SumsetGrowthRatioIsInverted) {
  const Subgroup A = subgroup(Modulus(101), 10);
  const auto c = check_bound("sumset_growth", A, full_context(A));
  EXPECT_EQ(c.lhs, double(c.twoA_size));
  EXPECT_NEAR(c.ratio, c.rhs_expr / c.lhs, 1e-15);
}

TEST(CheckBound, L3MomentAtSeven) {
  // S1 = S2 = A, k = 9/6, M = coset 3A where the counts are 2.
  const Subgroup A = subgroup(p7, 3);
  const auto c = check_bound("l3_moment", A, full_context(A));
  EXPECT_DOUBLE_EQ(c.lhs, 12.0);
  EXPECT_DOUBLE_EQ(c.rhs_expr, 18.0);
}

TEST(CheckBound, AllRatiosFiniteAndNonnegative) {
  for (std::uint32_t p : primes_in_range(3, 400)) {
    for (std::uint64_t d : divisors(p - 1)) {
      if (d < 3) continue;
      const Subgroup A = subgroup(Modulus(p), d);
      for (double r : {2.0, 3.0, 4.0}) {
        ContextOptions opt;
        opt.l3_r = r;
        opt.l3_include_zero = r == 4.0;
        const auto ctx = full_context(A, opt);
        for (auto name : bound_catalog()) {
          const auto c = check_bound(name, A, ctx);
          ASSERT_TRUE(std::isfinite(c.ratio)) << name << " " << p << " " << d;
          ASSERT_GE(c.ratio, 0.0) << name;
          ASSERT_GT(c.rhs_expr, 0.0) << name;
          if (name != "sumset_growth") ASSERT_NEAR(c.ratio, c.lhs / c.rhs_expr, 1e-12 * c.ratio);
        }
      }
    }
  }
}

TEST(CheckBound, HypothesisConstantWidensRange) {
  const Subgroup A = subgroup(Modulus(101), 50);
  ContextOptions loose;
  loose.hypothesis_constant = 100;
  EXPECT_FALSE(check_bound("hk_energy", A, full_context(A)).hypothesis_ok);
  EXPECT_TRUE(check_bound("hk_energy", A, full_context(A, loose)).hypothesis_ok);
}

TEST(Covering, Examples) {
  EXPECT_EQ(covering_index(subgroup(p7, 3), 8), 2);
  EXPECT_EQ(covering_index(subgroup(Modulus(13), 12), 1), 1);
  EXPECT_EQ(covering_index(subgroup(p7, 1), 8), std::nullopt);
  EXPECT_TRUE(check_six_fold(subgroup(p7, 3)));
  EXPECT_FALSE(check_six_fold(subgroup(p7, 1)));
  EXPECT_TRUE(check_six_fold(subgroup(Modulus(101), 100)));
}

TEST(Covering, AgreesWithFoldsAndSixFold) {
  for (std::uint32_t p : primes_in_range(3, 400)) {
    for (std::uint64_t d : divisors(p - 1)) {
      const Subgroup A = subgroup(Modulus(p), d);
      const auto a = to_zpset(A);
      const auto units = ZpSet::units(Modulus(p));
      std::optional<int> ref;
      ZpSet acc = a;
      for (int k = 1; k <= 6 && !ref; ++k) {
        if (k > 1) acc = sumset(acc, a);
        if (units.is_subset_of(acc)) ref = k;
      }
      ASSERT_EQ(covering_index(A, 6), ref) << p << " " << d;
      ASSERT_EQ(check_six_fold(A), ref.has_value());
    }
  }
}

TEST(SixFoldExponent, Threshold) {
  EXPECT_NEAR(kSixFoldExponent, 0.478, 1e-3);
  EXPECT_TRUE(clears_six_fold_exponent(101, 100));
  EXPECT_FALSE(clears_six_fold_exponent(101, 4));
  EXPECT_TRUE(clears_six_fold_exponent(101, 10));  // 101^0.478 ≈ 9.1
}

TEST(SolutionCount, Examples) {
  EXPECT_EQ(count_solutions_N(subgroup(p7, 1), 6), 1u);
  EXPECT_EQ(count_solutions_N(subgroup(p7, 1), 1), 0u);
  EXPECT_EQ(count_solutions_N(subgroup(p7, 3), 1), 138u);
  EXPECT_THROW(count_solutions_N(subgroup(p7, 3), 0), InvalidArgument);
  EXPECT_THROW(count_solutions_N(subgroup(Modulus(4099), 2), 1), HeavyOperationDisabled);
}

TEST(SolutionCount, MatchesEnumerationAndTotalMass) {
  for (std::uint32_t p : primes_in_range(3, 31)) {
    for (std::uint64_t d : divisors(p - 1)) {
      const Subgroup A = subgroup(Modulus(p), d);
      const SolutionCounter counter(A);
      std::uint64_t total = 0, nonzero_mass = 0;
      for (std::uint32_t a = 1; a < p; ++a) {
        const auto n = counter.count(a);
        if (p <= 19) ASSERT_EQ(n, brute_N(A, a)) << p << " " << d << " " << a;
        total += n;
      }
      for (std::uint32_t z = 1; z < p; ++z) nonzero_mass += counter.profile()[z];
      ASSERT_EQ(total, A.size() * nonzero_mass);
      const auto two = fold_sumset(to_zpset(A), 2).size();
      ASSERT_EQ(nonzero_mass + counter.profile()[0], two * two * d * d);
    }
  }
}

TEST(Positivity, Examples) {
  EXPECT_TRUE(positivity_condition(subgroup(p7, 3)));
  EXPECT_FALSE(positivity_condition(subgroup(p7, 1)));
  EXPECT_TRUE(positivity_condition(7, 3, 6, std::sqrt(2.0)));
  EXPECT_FALSE(positivity_condition(7, 1, 1, 1.0));
}

TEST(Positivity, ImpliesSolutionsAndCoverage) {
  for (std::uint32_t p : primes_in_range(3, 300)) {
    for (std::uint64_t d : divisors(p - 1)) {
      const Subgroup A = subgroup(Modulus(p), d);
      if (!positivity_condition(A)) continue;
      ASSERT_TRUE(check_six_fold(A)) << p << " " << d;
      const SolutionCounter counter(A);
      for (std::uint32_t a = 1; a < p; ++a) ASSERT_GT(counter.count(a), 0u);
    }
  }
}

TEST(ExponentFit, SyntheticData) {
  std::vector<std::pair<double, double>> cube, flat;
  for (double x = 1; x <= 1000; x *= 1.7) {
    cube.emplace_back(x, x * x * x);
    flat.emplace_back(x, 5.0);
  }
  const auto f = exponent_fit(cube);
  EXPECT_NEAR(f.slope, 3.0, 1e-9);
  EXPECT_NEAR(f.intercept, 0.0, 1e-9);
  EXPECT_NEAR(f.residual, 0.0, 1e-9);
  EXPECT_EQ(f.n_points, cube.size());
  EXPECT_NEAR(exponent_fit(flat).slope, 0.0, 1e-12);
  EXPECT_NEAR(envelope_fit(cube).slope, 3.0, 1e-9);
}

TEST(ExponentFit, Errors) {
  const std::vector<std::pair<double, double>> one{{2.0, 3.0}};
  EXPECT_THROW(exponent_fit(one), InsufficientData);
  const std::vector<std::pair<double, double>> same_x{{2.0, 3.0}, {2.0, 4.0}};
  EXPECT_THROW(exponent_fit(same_x), InsufficientData);
  const std::vector<std::pair<double, double>> bad{{2.0, 3.0}, {4.0, 0.0}};
  EXPECT_THROW(exponent_fit(bad), InvalidArgument);
}

TEST(DyadicEnvelope, KeepsBucketMaxima) {
  const std::vector<std::pair<double, double>> pts{
      {3.0, 1.0}, {2.5, 7.0}, {4.0, 2.0}, {7.9, 3.0}, {8.0, 1.0}};
  const auto env = dyadic_envelope(pts);
  ASSERT_EQ(env.size(), 3u);
  EXPECT_EQ(env[0], (std::pair<double, double>{2.5, 7.0}));
  EXPECT_EQ(env[1], (std::pair<double, double>{7.9, 3.0}));
  EXPECT_EQ(env[2], (std::pair<double, double>{8.0, 1.0}));
}

}  // namespace
}  // namespace sglab
