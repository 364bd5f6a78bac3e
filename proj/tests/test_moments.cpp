#include "lmoment/moments.hpp"

#include "lmoment/analytic.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/predict.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lmoment;
using namespace lmoment::moments;
using characters::DirichletCharacter;

namespace {

DirichletCharacter quadratic_mod5() {
  // Generator 2 of (Z/5)^*, exponent 2 of 4 gives the Legendre symbol.
  return characters::parse_character("5:2");
}

MomentSpec spec_for(std::uint64_t q, double T, int order) {
  MomentSpec s;
  s.q = q;
  s.T = T;
  s.order = order;
  return s;
}

}  // namespace

TEST(Validate, RejectsOutOfRange) {
  MomentSpec s;
  EXPECT_NO_THROW(validate(s));
  auto bad = [&](auto mutate) {
    MomentSpec b;
    mutate(b);
    EXPECT_THROW(validate(b), std::invalid_argument);
  };
  bad([](MomentSpec& b) { b.order = 3; });
  bad([](MomentSpec& b) { b.panel_width = 0.0; });
  bad([](MomentSpec& b) { b.panel_width = 1.5; });
  bad([](MomentSpec& b) { b.points_per_panel = 3; });
  bad([](MomentSpec& b) { b.eps_series = 1e-12; });
  bad([](MomentSpec& b) { b.parity_filter = 2; });
  bad([](MomentSpec& b) { b.T = -1.0; });
}

TEST(SplitSpec, Examples) {
  const auto s = split_spec(5, 10.0);
  EXPECT_EQ(s.Z, 25.0);
  EXPECT_NEAR(s.Z0, 25.0 / 9.0, 1e-15);
  const auto s30 = split_spec(30, 2.0);
  EXPECT_EQ(s30.Z, 60.0 / 8.0);
  EXPECT_LE(s30.Z0, s30.Z);
}

TEST(IntegratePower, ZeroLengthAndRejection) {
  const auto chi = quadratic_mod5();
  MomentSpec s = spec_for(5, 0.0, 4);
  EXPECT_EQ(integrate_power(chi, 0.0, 4, s).value, 0.0);
  const auto group = characters::build_group(6);
  const auto principal = characters::enumerate_characters(group, false).front();
  EXPECT_THROW(integrate_power(principal, 1.0, 4, s), std::invalid_argument);
}

TEST(IntegratePower, Additivity) {
  const auto chi = quadratic_mod5();
  MomentSpec s = spec_for(5, 6.0, 4);
  const auto a = integrate_power(chi, 0.0, 2.5, 4, s);
  const auto b = integrate_power(chi, 2.5, 6.0, 4, s);
  const auto c = integrate_power(chi, 0.0, 6.0, 4, s);
  EXPECT_NEAR(a.value + b.value, c.value,
              2.0 * (a.quad_error + b.quad_error + c.quad_error) + 1e-12 * c.value);
}

TEST(IntegratePower, PanelHalvingOracle) {
  const auto chi = quadratic_mod5();
  MomentSpec coarse = spec_for(5, 5.0, 2);
  coarse.panel_width = 0.5;
  MomentSpec fine = coarse;
  fine.panel_width = 0.25;
  const double a = integrate_power(chi, 5.0, 2, coarse).value;
  const double b = integrate_power(chi, 5.0, 2, fine).value;
  EXPECT_GT(b, 0.0);
  EXPECT_LT(std::abs(a - b), 1e-6 * b);
}

TEST(IntegratePower, MatchesOracleOnShortInterval) {
  // Independent check: Simpson on |l_oracle|^2 with a fine step.
  const auto chi = quadratic_mod5();
  const int n = 400;
  const double h = 1.0 / n;
  double simpson = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double v = std::norm(analytic::l_oracle({0.5, t}, chi).value);
    simpson += (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * v;
  }
  simpson *= h / 3.0;
  MomentSpec s = spec_for(5, 1.0, 2);
  s.eps_series = 1e-9;
  EXPECT_NEAR(integrate_power(chi, 1.0, 2, s).value, simpson, 1e-7 * simpson);
}

TEST(Moment, NoPrimitiveCharacters) {
  for (std::uint64_t q : {2u, 6u, 10u}) {
    const auto r = moment(spec_for(q, 7.0, 4));
    EXPECT_EQ(r.empirical, 0.0);
    EXPECT_EQ(r.char_count, 0u);
    EXPECT_EQ(r.predicted, 0.0);
    EXPECT_TRUE(std::isnan(r.ratio));
  }
}

TEST(Moment, GoldenFifthModulus) {
  const auto r = moment(spec_for(5, 10.0, 4));
  EXPECT_EQ(r.char_count, 3u);
  // Frozen from a run checked against the Hurwitz oracle.
  EXPECT_NEAR(r.empirical, 361.474169719, 1e-6);
  EXPECT_LT(r.quadrature_error, 1e-6 * r.empirical);
  EXPECT_EQ(r.predicted, predict::theorem1_main(5, 10.0));
  EXPECT_EQ(r.ratio, r.empirical / r.predicted);
}

TEST(Moment, ConjugatePairing) {
  // |L(1/2 + it, conj chi)| = |L(1/2 - it, chi)|, so the conjugate's integral
  // over [0, T] is chi's integral over [-T, 0]; the two are not equal on [0, T].
  const auto spec = spec_for(7, 4.0, 4);
  const auto r = moment(spec);
  ASSERT_EQ(r.per_character.size(), 5u);
  auto find = [&](const std::string& id) {
    for (const auto& c : r.per_character)
      if (c.id == id) return c;
    ADD_FAILURE() << "missing " << id;
    return CharacterMoment{};
  };
  for (auto [x, y] : {std::pair{"7:1", "7:5"}, {"7:2", "7:4"}}) {
    const auto a = find(x), b = find(y);
    const auto mirrored = integrate_power(characters::parse_character(x), -4.0, 0.0, 4, spec);
    EXPECT_NEAR(b.value, mirrored.value, 2.0 * (b.quad_error + mirrored.quad_error) + 1e-12 * b.value);
    EXPECT_EQ(a.parity, b.parity);
  }
  // A real character is its own conjugate: symmetric in t.
  const auto real = characters::parse_character("7:3");
  const auto left = integrate_power(real, -4.0, 0.0, 4, spec);
  const auto c = find("7:3");
  EXPECT_NEAR(c.value, left.value, 2.0 * (c.quad_error + left.quad_error) + 1e-12 * c.value);
}

TEST(Moment, CharCountIsPhiStar) {
  for (std::uint64_t q = 1; q <= 40; ++q) {
    const auto r = moment(spec_for(q, 0.5, 2));
    EXPECT_EQ(r.char_count, arith::phi_star(arith::factorize(q))) << q;
    EXPECT_GE(r.empirical, 0.0);
  }
}

TEST(Moment, MonotoneInT) {
  double prev = 0.0;
  for (double T : {0.5, 1.0, 2.0, 3.5, 5.0}) {
    const auto r = moment(spec_for(4, T, 4));
    EXPECT_GE(r.empirical + r.quadrature_error, prev);
    prev = r.empirical;
  }
}

TEST(Moment, ParitySplit) {
  for (std::uint64_t q : {5u, 8u, 9u}) {
    auto s = spec_for(q, 3.0, 4);
    const auto all = moment(s);
    s.parity_filter = 0;
    const auto even = moment(s);
    s.parity_filter = 1;
    const auto odd = moment(s);
    EXPECT_EQ(even.char_count + odd.char_count, all.char_count);
    EXPECT_NEAR(even.empirical + odd.empirical, all.empirical,
                2.0 * all.quadrature_error + 1e-12 * all.empirical);
    EXPECT_NEAR(even.predicted + odd.predicted, all.predicted, 1e-12 * all.predicted);
  }
}

TEST(Moment, QuadratureConvergence) {
  for (std::uint64_t q : {3u, 4u, 5u}) {
    for (int order : {2, 4}) {
      auto s = spec_for(q, 10.0, order);
      const auto base = moment(s);
      s.panel_width = base.panel_width / 2.0;
      const auto half = moment(s);
      EXPECT_LE(std::abs(half.empirical - base.empirical), base.quadrature_error)
          << "q=" << q << " order=" << order;
    }
  }
}

TEST(Moment, WorkerCountInvariance) {
  const auto s = spec_for(8, 6.0, 4);
  const auto one = moment(s, 1);
  const auto many = moment(s, 5);
  EXPECT_EQ(one.empirical, many.empirical);
  EXPECT_EQ(one.quadrature_error, many.quadrature_error);
  ASSERT_EQ(one.per_character.size(), many.per_character.size());
  for (std::size_t i = 0; i < one.per_character.size(); ++i) {
    EXPECT_EQ(one.per_character[i].panels, many.per_character[i].panels);
  }
}

TEST(ABSplit, EmptyHead) {
  const auto chi = quadratic_mod5();
  const auto r = ab_split(3.0, chi, 0.5, 1e-9);
  EXPECT_EQ(r.A, Complex{});
  const double full = analytic::abs_L_sq_smoothed(3.0, chi, 1e-9);
  EXPECT_NEAR(r.B.real(), full / 2.0, 1e-12);
}

TEST(ABSplit, LargeSplitLeavesNoTail) {
  const auto chi = quadratic_mod5();
  const double eps = 1e-8;
  const auto series = analytic::smoothed_series(3.0, chi, eps);
  const auto r = ab_split(3.0, chi, static_cast<double>(series.terms), eps);
  EXPECT_LT(std::abs(r.B), eps);
}

TEST(ABSplit, Reconstruction) {
  const auto chi = quadratic_mod5();
  const double Z = split_spec(5, 10.0).Z;
  const auto r = ab_split(3.0, chi, Z, 1e-9);
  const double L2 = std::norm(analytic::l_oracle({0.5, 3.0}, chi).value);
  EXPECT_NEAR(2.0 * (r.A + r.B).real(), L2, 1e-6);
  EXPECT_NEAR((r.A + r.B).imag(), 0.0, 1e-12);
}

TEST(Decomposed, IdentityAndCauchy) {
  auto s = spec_for(7, 2.0, 4);
  const auto d = decomposed_fourth_moment(s);
  const auto m = moment(s);
  EXPECT_EQ(d.char_count, 5u);
  EXPECT_EQ(d.Z, 7.0);
  EXPECT_NEAR(d.total, 4.0 * (d.A2 + 2.0 * d.AB + d.B2), 1e-12 * d.total);
  EXPECT_NEAR(d.total, m.empirical, 1e-5 * m.empirical);
  EXPECT_LE(d.AB * d.AB, d.A2 * d.B2 * (1 + 1e-9));
  EXPECT_GE(d.A2, 0.0);
  EXPECT_GE(d.B2, 0.0);
}

TEST(Decomposed, WorkerCountInvariance) {
  auto s = spec_for(5, 1.5, 4);
  const auto a = decomposed_fourth_moment(s, 1);
  const auto b = decomposed_fourth_moment(s, 3);
  EXPECT_EQ(a.A2, b.A2);
  EXPECT_EQ(a.AB, b.AB);
  EXPECT_EQ(a.B2, b.B2);
}
