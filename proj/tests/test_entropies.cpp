#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cohchan/entropies.hpp"
#include "cohchan/random.hpp"
#include "oracles.hpp"

using namespace cohchan;

namespace {

double urs(const ComplexMatrix& rho, const ComplexMatrix& sigma, double r, double s) {
  return unified_relative_entropy(rho, sigma, EntropyParams::unified(r, s)).value.to_double();
}

double sandwiched(const ComplexMatrix& rho, const ComplexMatrix& sigma, double r) {
  return sandwiched_relative_entropy(rho, sigma, EntropyParams::sandwiched(r)).value.to_double();
}

const ComplexMatrix kPure0 = ComplexMatrix::diagonal({1.0, 0.0});
const ComplexMatrix kMixed = ComplexMatrix::diagonal({0.5, 0.5});

}  // namespace

TEST(EntropyParams, RegimeDispatch) {
  EXPECT_EQ(EntropyParams::unified(1.0, 0.3).regime(), Regime::VonNeumann);
  EXPECT_EQ(EntropyParams::unified(0.5, 0.0).regime(), Regime::Renyi);
  EXPECT_EQ(EntropyParams::unified(0.5, 1.0).regime(), Regime::Tsallis);
  EXPECT_EQ(EntropyParams::unified(0.5, 2.0).regime(), Regime::TypeR);
  EXPECT_EQ(EntropyParams::unified(0.25, 4.0 + 5e-13).regime(), Regime::TypeR);
  EXPECT_EQ(EntropyParams::unified(0.5, 0.7).regime(), Regime::General);
  EXPECT_EQ(EntropyParams::unified(1.0, 1.0).regime(), Regime::VonNeumann);
  EXPECT_EQ(EntropyParams::sandwiched(2.0).regime(), Regime::Sandwiched);
  EXPECT_EQ(regime_name(Regime::General), "rs-general");
  EXPECT_EQ(regime_name(Regime::VonNeumann), "von-neumann");
}

TEST(EntropyParams, MonotoneValidity) {
  EXPECT_TRUE(EntropyParams::unified(0.5, 1.0).monotone_valid());
  EXPECT_TRUE(EntropyParams::unified(0.5, -3.0).monotone_valid());
  EXPECT_FALSE(EntropyParams::unified(0.5, 1.5).monotone_valid());
  EXPECT_FALSE(EntropyParams::unified(0.0, 0.5).monotone_valid());
  EXPECT_FALSE(EntropyParams::unified(1.0, 0.5).monotone_valid());
  EXPECT_TRUE(EntropyParams::sandwiched(0.75).monotone_valid());
}

TEST(EntropyParams, RejectsOutOfRange) {
  EXPECT_THROW((void)EntropyParams::unified(-0.1, 0.5), ParameterError);
  EXPECT_THROW((void)EntropyParams::unified(1.5, 0.5), ParameterError);
  EXPECT_THROW((void)EntropyParams::unified(0.5, std::nan("")), ParameterError);
  EXPECT_THROW((void)EntropyParams::sandwiched(0.5), ParameterError);
  EXPECT_THROW((void)EntropyParams::sandwiched(1.0), ParameterError);
  EXPECT_THROW((void)EntropyParams::sandwiched(0.3), ParameterError);
  EXPECT_THROW((void)EntropyParams::sandwiched(INFINITY), ParameterError);
}

TEST(UnifiedEntropy, EqualArgumentsGiveZero) {
  Rng rng = make_rng(71);
  const ComplexMatrix rho = random_density_matrix(rng, 3);
  for (auto [r, s] : {std::pair{0.5, 1.0}, {0.3, 0.0}, {0.7, -2.0}, {0.5, 2.0}, {1.0, 0.0}, {0.4, 0.6}})
    EXPECT_NEAR(urs(rho, rho, r, s), 0.0, 1e-12) << "r = " << r << ", s = " << s;
}

TEST(UnifiedEntropy, TsallisOnCommutingDiagonals) {
  EXPECT_NEAR(urs(kPure0, kMixed, 0.5, 1.0), 2.0 - std::sqrt(2.0), 1e-14);
}

TEST(UnifiedEntropy, VonNeumannOnCommutingDiagonals) {
  EXPECT_NEAR(urs(kPure0, kMixed, 1.0, 0.0), std::log(2.0), 1e-14);
}

TEST(UnifiedEntropy, MatchesClassicalFormulaOnDiagonals) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng = make_rng(73, k);
    const auto p = random_probability_vector(rng, 4);
    const auto q = random_probability_vector(rng, 4);
    const ComplexMatrix rho = ComplexMatrix::diagonal(p), sigma = ComplexMatrix::diagonal(q);
    for (auto [r, s] : {std::pair{0.5, 1.0}, {0.3, 0.0}, {0.7, -2.0}, {0.5, 2.0}, {0.2, 0.6}})
      EXPECT_NEAR(urs(rho, sigma, r, s), oracle::classical_urs(p, q, r, s), 1e-12);
  }
}

TEST(UnifiedEntropy, VonNeumannInfiniteOutsideSupport) {
  const auto v = unified_relative_entropy(kMixed, kPure0, EntropyParams::unified(1.0, 0.0));
  EXPECT_TRUE(v.value.is_infinite());
  EXPECT_THROW((void)v.value.value(), InvalidInputError);
}

TEST(UnifiedEntropy, ZeroTraceTermWithNonpositiveS) {
  const ComplexMatrix one = ComplexMatrix::diagonal({0.0, 1.0});
  EXPECT_TRUE(unified_relative_entropy(kPure0, one, EntropyParams::unified(0.5, 0.0)).value.is_infinite());
  EXPECT_TRUE(unified_relative_entropy(kPure0, one, EntropyParams::unified(0.5, -1.0)).value.is_infinite());
  const auto tsallis = unified_relative_entropy(kPure0, one, EntropyParams::unified(0.5, 1.0));
  EXPECT_TRUE(tsallis.value.is_finite());
  EXPECT_NEAR(tsallis.value.value(), 2.0, 1e-14);
  EXPECT_NEAR(*tsallis.trace_term, 0.0, 1e-15);
}

TEST(UnifiedEntropy, SmallSApproachesRenyiBranch) {
  Rng rng = make_rng(79);
  const ComplexMatrix rho = random_density_matrix(rng, 2), sigma = random_density_matrix(rng, 2);
  for (double r : {0.2, 0.5, 0.8}) {
    const double renyi = urs(rho, sigma, r, 0.0);
    EXPECT_NEAR(urs(rho, sigma, r, 1e-6), renyi, 1e-4);
    EXPECT_NEAR(urs(rho, sigma, r, -1e-6), renyi, 1e-4);
  }
}

TEST(UnifiedEntropy, GeneralBranchAgreesAtSEqualsOne) {
  Rng rng = make_rng(83);
  const ComplexMatrix rho = random_density_matrix(rng, 3), sigma = random_density_matrix(rng, 3);
  const double general = urs(rho, sigma, 0.4, 1.0 - 1e-15);
  EXPECT_NEAR(general, urs(rho, sigma, 0.4, 1.0), 1e-12);
}

TEST(UnifiedEntropy, TypeRBranchAgreesWithGeneralFormula) {
  Rng rng = make_rng(89);
  const ComplexMatrix rho = random_density_matrix(rng, 2), sigma = random_density_matrix(rng, 2);
  const double type_r = urs(rho, sigma, 0.5, 2.0);
  EXPECT_NEAR(type_r, urs(rho, sigma, 0.5, 2.0 + 1e-9), 1e-8);
}

TEST(UnifiedEntropy, RejectsInvalidInputs) {
  const auto p = EntropyParams::unified(0.5, 1.0);
  EXPECT_THROW((void)unified_relative_entropy(ComplexMatrix::diagonal({0.5, 0.2}), kMixed, p),
               InvalidInputError);
  EXPECT_THROW((void)unified_relative_entropy(kMixed, ComplexMatrix::diagonal({1.0, 0.0, 0.0}), p),
               InvalidInputError);
  EXPECT_THROW((void)unified_relative_entropy(ComplexMatrix::diagonal({1.1, -0.1}), kMixed, p),
               NotPsdError);
  EXPECT_THROW((void)unified_relative_entropy(kMixed, kMixed, EntropyParams::sandwiched(2.0)),
               ParameterError);
}

TEST(SandwichedEntropy, EqualArgumentsGiveZero) {
  Rng rng = make_rng(97);
  const ComplexMatrix rho = random_density_matrix(rng, 4);
  for (double r : {0.6, 0.75, 2.0, 10.0}) EXPECT_NEAR(sandwiched(rho, rho, r), 0.0, 1e-11);
}

TEST(SandwichedEntropy, CommutingDiagonalsOrderTwo) {
  EXPECT_NEAR(sandwiched(ComplexMatrix::diagonal({0.75, 0.25}), kMixed, 2.0), std::log2(1.25), 1e-14);
}

TEST(SandwichedEntropy, PureStateAgainstMaximallyMixedIsOne) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng = make_rng(101, k);
    const ComplexMatrix rho = ComplexMatrix::projector(random_pure_state(rng, 2));
    for (double r : {0.6, 0.75, 2.0, 10.0}) EXPECT_NEAR(sandwiched(rho, kMixed, r), 1.0, 1e-12);
  }
}

TEST(SandwichedEntropy, SupportViolationAboveOne) {
  EXPECT_TRUE(sandwiched_relative_entropy(kMixed, kPure0, EntropyParams::sandwiched(2.0)).value.is_infinite());
  EXPECT_TRUE(sandwiched_relative_entropy(kMixed, kPure0, EntropyParams::sandwiched(0.75)).value.is_finite());
}

TEST(SandwichedEntropy, OrthogonalSupportsBelowOne) {
  const ComplexMatrix one = ComplexMatrix::diagonal({0.0, 1.0});
  EXPECT_TRUE(sandwiched_relative_entropy(kPure0, one, EntropyParams::sandwiched(0.75)).value.is_infinite());
}

TEST(SandwichedEntropy, RejectsUnifiedParameters) {
  EXPECT_THROW((void)sandwiched_relative_entropy(kMixed, kMixed, EntropyParams::unified(0.5, 1.0)),
               ParameterError);
}

TEST(EntropyProperties, NonnegativeOnRandomPairs) {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rng = make_rng(103, k);
    const std::size_t dim = k % 2 == 0 ? 2 : 4;
    const ComplexMatrix rho = random_density_matrix(rng, dim, 1 + k % dim);
    const ComplexMatrix sigma = random_density_matrix(rng, dim);
    EXPECT_GE(urs(rho, sigma, 0.5, 0.5), -1e-10);
    EXPECT_GE(sandwiched(rho, sigma, k % 3 == 0 ? 0.75 : 2.0), -1e-10);
    if (k % 10 == 0) {
      EXPECT_GT(urs(rho, sigma, 0.5, 0.5), 1e-12);
    }
  }
}

TEST(EntropyProperties, JointConvexity) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = make_rng(107, k);
    const auto w = random_probability_vector(rng, 3);
    ComplexMatrix rho_mix(2), sigma_mix(2);
    double rhs_urs = 0.0, rhs_vn = 0.0;
    for (std::size_t n = 0; n < 3; ++n) {
      const ComplexMatrix rho = random_density_matrix(rng, 2), sigma = random_density_matrix(rng, 2);
      rho_mix = rho_mix + rho * w[n];
      sigma_mix = sigma_mix + sigma * w[n];
      // Tsallis leg of the unified family is jointly convex for r in (0, 1).
      rhs_urs += w[n] * urs(rho, sigma, 0.6, 1.0);
      rhs_vn += w[n] * urs(rho, sigma, 1.0, 0.0);
    }
    EXPECT_LE(urs(rho_mix, sigma_mix, 0.6, 1.0), rhs_urs + 1e-9);
    EXPECT_LE(urs(rho_mix, sigma_mix, 1.0, 0.0), rhs_vn + 1e-9);
  }
}

TEST(EntropyProperties, UnitaryInvariance) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng = make_rng(109, k);
    const ComplexMatrix rho = random_density_matrix(rng, 3), sigma = random_density_matrix(rng, 3);
    const ComplexMatrix u = random_unitary(rng, 3);
    const ComplexMatrix rho_u = hermitian_part(u * rho * u.adjoint());
    const ComplexMatrix sigma_u = hermitian_part(u * sigma * u.adjoint());
    EXPECT_NEAR(urs(rho_u, sigma_u, 0.4, -1.0), urs(rho, sigma, 0.4, -1.0), 1e-10);
    EXPECT_NEAR(urs(rho_u, sigma_u, 1.0, 0.0), urs(rho, sigma, 1.0, 0.0), 1e-10);
    EXPECT_NEAR(sandwiched(rho_u, sigma_u, 2.0), sandwiched(rho, sigma, 2.0), 1e-10);
  }
}

TEST(ExtendedRealValue, Basics) {
  EXPECT_TRUE(ExtendedReal::infinity().is_infinite());
  EXPECT_TRUE(std::isinf(ExtendedReal::infinity().to_double()));
  EXPECT_EQ(ExtendedReal(1.5).value(), 1.5);
}
