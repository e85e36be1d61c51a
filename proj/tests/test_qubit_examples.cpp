#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cohchan/cohchan.hpp"

using namespace cohchan;

namespace {

constexpr double kPi = std::numbers::pi;

UnitaryParams random_angles(Rng& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return {angle(rng), angle(rng), angle(rng), angle(rng)};
}

}  // namespace

TEST(QubitUnitary, ZeroAnglesGiveIdentity) {
  EXPECT_LE(max_abs_diff(build_qubit_unitary({}), ComplexMatrix::identity(2)), 1e-15);
}

TEST(QubitUnitary, HalfTurnIsYRotation) {
  const ComplexMatrix expected{{0.0, -1.0}, {1.0, 0.0}};
  EXPECT_LE(max_abs_diff(build_qubit_unitary({0.0, 0.0, kPi, 0.0}), expected), 1e-15);
}

TEST(QubitUnitary, UnitaryForRandomAngles) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = make_rng(181, k);
    const UnitaryParams p = random_angles(rng);
    const ComplexMatrix u = build_qubit_unitary(p);
    EXPECT_LE(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(2)), 1e-12);
    EXPECT_NEAR(std::norm(u(0, 0)) + std::norm(u(0, 1)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(u(0, 0)), std::abs(std::cos(p.gamma / 2.0)), 1e-14);
  }
}

TEST(QubitUnitary, HadamardIsAMemberUpToPhase) {
  const ComplexMatrix u = build_qubit_unitary({kPi / 2.0, 0.0, kPi / 2.0, kPi});
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix had{{h, h}, {h, -h}};
  const complex phase = (had.adjoint() * u).trace() / 2.0;
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE(max_abs_diff(u, had * phase), 1e-12);
}

TEST(HadamardChannel, CjStateAndValues) {
  const CJState m = cj_state(hadamard_channel());
  EXPECT_NEAR(m.matrix(0, 3).real(), -0.25, 1e-15);
  EXPECT_NEAR(std::abs(m.matrix.trace() - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(urs_channel_coherence(hadamard_channel(), EntropyParams::unified(0.5, -1.0)).value, 2.0, 1e-12);
}

TEST(UrsUnitaryClosedForm, ReferenceValues) {
  EXPECT_NEAR(urs_unitary_closed_form(kPi / 2.0, 0.5, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(urs_unitary_closed_form(0.0, 0.5, 1.0), 2.0 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(urs_unitary_closed_form(0.0, 0.3, 0.0), std::log(2.0), 1e-14);
}

TEST(UrsUnitaryClosedForm, MatchesPipelineOnGrid) {
  for (auto [r, s] : {std::pair{0.5, 1.0}, {0.3, -1.0}, {0.8, 0.5}, {0.6, 0.0}}) {
    for (int k = 0; k < 50; ++k) {
      const double gamma = kPi * k / 49.0;
      const double pipeline =
          urs_channel_coherence(qubit_unitary_channel({0.0, 0.0, gamma, 0.0}), EntropyParams::unified(r, s)).value;
      EXPECT_NEAR(urs_unitary_closed_form(gamma, r, s), pipeline, 1e-9) << "gamma = " << gamma;
    }
  }
}

TEST(UrsUnitaryClosedForm, SmallSLimitIsContinuous) {
  for (double gamma : {0.3, 1.0, 2.5})
    EXPECT_NEAR(urs_unitary_closed_form(gamma, 0.4, 1e-7), urs_unitary_closed_form(gamma, 0.4, 0.0), 1e-6);
}

TEST(UrsUnitaryClosedForm, RejectsOutsideRegime) {
  EXPECT_THROW((void)urs_unitary_closed_form(0.3, 1.0, 0.5), ParameterError);
  EXPECT_THROW((void)urs_unitary_closed_form(0.3, 0.5, 1.2), ParameterError);
}

TEST(SandwichedUnitaryClosedForm, ReferenceValues) {
  for (double r : {0.6, 0.75, 2.0, 10.0}) {
    EXPECT_NEAR(sandwiched_unitary_closed_form(kPi / 2.0, r), 2.0, 1e-12);
    EXPECT_NEAR(sandwiched_unitary_closed_form(0.0, r), 1.0, 1e-14);
  }
  EXPECT_THROW((void)sandwiched_unitary_closed_form(0.3, 1.0), ParameterError);
}

TEST(SandwichedUnitaryClosedForm, MatchesPipelineOnGrid) {
  for (double r : {0.75, 2.0, 5.0}) {
    for (int k = 0; k < 50; ++k) {
      const double gamma = kPi * k / 49.0;
      const double pipeline = sandwiched_channel_coherence_pure(qubit_unitary_channel({0.0, 0.0, gamma, 0.0}),
                                                                EntropyParams::sandwiched(r))
                                  .value;
      EXPECT_NEAR(sandwiched_unitary_closed_form(gamma, r), pipeline, 1e-9);
    }
  }
}

TEST(ClosedForms, Periodicity) {
  for (double gamma : {0.1, 0.9, 1.7, 2.8}) {
    for (double g2 : {2.0 * kPi - gamma, gamma + 2.0 * kPi}) {
      EXPECT_NEAR(urs_unitary_closed_form(g2, 0.5, 0.5), urs_unitary_closed_form(gamma, 0.5, 0.5), 1e-12);
      EXPECT_NEAR(sandwiched_unitary_closed_form(g2, 2.0), sandwiched_unitary_closed_form(gamma, 2.0), 1e-12);
    }
  }
}

TEST(ClosedForms, IndependentOfPhases) {
  for (double gamma : {0.4, 1.2, 2.0}) {
    const double urs_ref = urs_unitary_closed_form(gamma, 0.5, 0.5);
    const double sw_ref = sandwiched_unitary_closed_form(gamma, 0.75);
    for (std::uint64_t k = 0; k < 20; ++k) {
      Rng rng = make_rng(191, k);
      UnitaryParams p = random_angles(rng);
      p.gamma = gamma;
      const QuantumChannel ch = qubit_unitary_channel(p);
      EXPECT_NEAR(urs_channel_coherence(ch, EntropyParams::unified(0.5, 0.5)).value, urs_ref, 1e-9);
      EXPECT_NEAR(sandwiched_channel_coherence_pure(ch, EntropyParams::sandwiched(0.75)).value, sw_ref, 1e-9);
    }
  }
}

TEST(UpperBounds, ValuesAndTightness) {
  EXPECT_NEAR(urs_upper_bound(0.5, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(urs_upper_bound(0.5, 1.0), urs_channel_coherence(hadamard_channel(), EntropyParams::unified(0.5, 1.0)).value,
              1e-12);
  EXPECT_NEAR(urs_upper_bound(0.3, 0.0), std::log(4.0), 1e-15);
  EXPECT_EQ(sandwiched_upper_bound(), 2.0);
}

TEST(UpperBounds, GridValuesStayBelowBoundsAndPeakAtQuarterTurn) {
  for (auto [r, s] : {std::pair{0.5, 1.0}, {0.2, -2.0}, {0.9, 0.7}}) {
    double best = -1.0, best_gamma = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double gamma = kPi * k / 400.0;
      const double v = urs_unitary_closed_form(gamma, r, s);
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, urs_upper_bound(r, s) + 1e-9);
      if (v > best) best = v, best_gamma = gamma;
    }
    EXPECT_NEAR(best, urs_upper_bound(r, s), 1e-9);
    EXPECT_NEAR(best_gamma, kPi / 2.0, 1e-12);
  }
  for (double r : {0.6, 3.0}) {
    for (int k = 0; k <= 100; ++k) {
      const double v = sandwiched_unitary_closed_form(kPi * k / 100.0, r);
      EXPECT_GE(v, 1.0 - 1e-12);
      EXPECT_LE(v, 2.0 + 1e-9);
    }
  }
}
