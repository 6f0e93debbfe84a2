#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"
#include "reglab/field.hpp"

using namespace reglab;

namespace {

std::vector<double> random_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = g(rng);
    s += x * x;
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

std::vector<double> scaled(std::vector<double> v, double r) {
  for (auto& x : v) x *= r;
  return v;
}

double exact_entry(const JetBundle& j, int k, int c, const std::vector<int>& idx) {
  if (k == 1) return j.grad(c, idx[0]);
  if (k == 2) return j.hess(c, idx[0], idx[1]);
  if (k == 3) return j.third[c].at(idx);
  return j.fourth[c].at(idx);
}

// Fourth-order central difference of the order-(k-1) closed form along the
// last index of each order-k entry.
double fd_entry(const std::array<JetBundle, 4>& shifted, int k, int c,
                const std::vector<int>& idx, double h) {
  std::vector<int> head(idx.begin(), idx.end() - 1);
  auto lower = [&](const JetBundle& j) {
    if (k == 1) return j.values[c];
    if (k == 2) return j.grad(c, head[0]);
    if (k == 3) return j.hess(c, head[0], head[1]);
    return j.third[c].at(head);
  };
  return (-lower(shifted[0]) + 8 * lower(shifted[1]) - 8 * lower(shifted[2]) +
          lower(shifted[3])) /
         (12 * h);
}

void check_jet_exactness(const FieldSpec& f, double r_lo, double r_hi,
                         int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(r_lo), std::log(r_hi));
  for (int p = 0; p < points; ++p) {
    const double r = std::exp(u(rng));
    const auto x = scaled(random_direction(f.n(), rng), r);
    const JetBundle jet = eval_jet(f, x, 4);
    const double h = 1e-5 * r;
    std::vector<std::array<JetBundle, 4>> shifted(f.n());
    for (int i = 0; i < f.n(); ++i) {
      const double steps[4] = {2 * h, h, -h, -2 * h};
      for (int s = 0; s < 4; ++s) {
        auto y = x;
        y[i] += steps[s];
        shifted[i][s] = eval_jet(f, y, 3);
      }
    }
    for (int k = 1; k <= 4; ++k) {
      const SymmetricTensor shape(f.n(), k);
      const auto all = shape.indices();
      double scale = 0.0;
      for (int c = 0; c < f.K(); ++c)
        for (const auto& idx : all)
          scale = std::max(scale, std::fabs(exact_entry(jet, k, c, idx)));
      for (int c = 0; c < f.K(); ++c) {
        for (const auto& idx : all) {
          const double fd = fd_entry(shifted[idx.back()], k, c, idx, h);
          ASSERT_LE(std::fabs(fd - exact_entry(jet, k, c, idx)), 1e-5 * scale + 1e-9)
              << to_string(f.family()) << " r=" << r << " order " << k;
        }
      }
    }
  }
}

}  // namespace

TEST(FieldKernel, LogLogGradientAtEMinus4) {
  const FieldSpec u = catalog::loglog4d();
  const std::vector<double> x = {std::exp(-4.0), 0, 0, 0};
  const JetBundle j = eval_jet(u, x, 1);
  const double g2 = std::pow(j.gradient_norm(), 2);
  EXPECT_NEAR(g2 / (std::exp(8.0) / 16.0), 1.0, 1e-13);
  EXPECT_NEAR(j.values[0], std::sin(std::log(4.0)), 1e-15);
}

TEST(FieldKernel, PowerLawLaplacianIs2n) {
  for (int n : {2, 3, 5, 8}) {
    const FieldSpec u = catalog::power_law(n, 2.0);
    std::vector<double> x(n, 0.3);
    x[0] = -1.7;
    EXPECT_NEAR(eval_jet(u, x, 2).laplacian(0), 2.0 * n, 1e-12);
    EXPECT_NEAR(eval_jet(u, x, 4).bilaplacian(0), 0.0, 1e-11);
  }
}

TEST(FieldKernel, SinLogSecondOrderPoint) {
  const FieldSpec u = catalog::sinlog_second_order(4);
  const std::vector<double> x = {std::exp(-3.0), 0, 0, 0};
  const JetBundle j = eval_jet(u, x, 1);
  EXPECT_NEAR(j.values[0], std::sin(6.0), 1e-14);
  EXPECT_NEAR(j.values[1], std::cos(6.0), 1e-14);
  EXPECT_NEAR(std::pow(j.gradient_norm(), 2) / (4 * std::exp(6.0)), 1.0, 1e-13);

  // independent oracle: central differences at step 1e-6 on the values
  const double h = 1e-6 * x[0];
  double g2 = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 4; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double d =
          (eval_jet(u, xp, 0).values[c] - eval_jet(u, xm, 0).values[c]) / (2 * h);
      g2 += d * d;
    }
  }
  EXPECT_NEAR(g2 / (4 * std::exp(6.0)), 1.0, 1e-6);
}

TEST(FieldKernel, DomainAndOrderErrors) {
  const FieldSpec u = catalog::loglog4d();
  EXPECT_THROW(eval_jet(u, std::vector<double>{0, 0, 0, 0}, 1), DomainError);
  EXPECT_THROW(eval_jet(u, std::vector<double>{0.2, 0, 0, 0}, 1), DomainError);
  EXPECT_THROW(eval_jet(u, std::vector<double>{0.01, 0, 0, 0}, 5), OrderError);
  EXPECT_THROW(eval_jet(u, std::vector<double>{0.01, 0, 0}, 1), DomainError);
  EXPECT_NO_THROW(eval_jet(u, std::vector<double>{std::exp(-2.0), 0, 0, 0}, 4));
  EXPECT_THROW(catalog::sinlog_second_order(2), UnsupportedDimension);
  EXPECT_THROW(catalog::sinlog_fourth_order(4), UnsupportedDimension);
}

TEST(FieldKernel, JetExactnessCatalog) {
  check_jet_exactness(catalog::loglog4d(), 1e-6, 0.99 * std::exp(-2.0), 100, 1);
  for (int n : {3, 4, 5})
    check_jet_exactness(catalog::sinlog_second_order(n), 1e-6, 0.13, 100, 2);
  for (int n : {5, 6, 7})
    check_jet_exactness(catalog::sinlog_fourth_order(n), 1e-6, 0.13, 100, 3);
  check_jet_exactness(catalog::power_law(4, 1.5), 1e-3, 10.0, 100, 4);
  check_jet_exactness(fundamental_solution(3, 2), 1e-3, 10.0, 100, 5);
  check_jet_exactness(fundamental_solution(6, 4), 1e-3, 10.0, 100, 6);
}

TEST(FieldKernel, JetExactnessPolynomials) {
  for (const auto& f : comparison_corpus(CorpusKind::Biharmonic, 3, 4)) {
    check_jet_exactness(f, 0.1, 1.0, 5, 7);
  }
}

TEST(FieldKernel, HessianSymmetricAndGradientRadial) {
  std::mt19937_64 rng(11);
  const FieldSpec u = catalog::sinlog_fourth_order(6);
  for (int p = 0; p < 50; ++p) {
    const auto x = scaled(random_direction(6, rng), 0.05);
    const JetBundle j = eval_jet(u, x, 2);
    for (int c = 0; c < 2; ++c) {
      double dot = 0.0, g2 = 0.0;
      for (int i = 0; i < 6; ++i) {
        dot += j.grad(c, i) * x[i] / 0.05;
        g2 += j.grad(c, i) * j.grad(c, i);
        for (int l = 0; l < 6; ++l) EXPECT_EQ(j.hess(c, i, l), j.hess(c, l, i));
      }
      double perp = 0.0;
      for (int i = 0; i < 6; ++i) {
        const double t = j.grad(c, i) - dot * x[i] / 0.05;
        perp += t * t;
      }
      EXPECT_LE(std::sqrt(perp), 1e-12 * std::sqrt(g2));
    }
  }
}

TEST(FieldKernel, RotationInvarianceAndSphereConstraint) {
  std::mt19937_64 rng(12);
  const std::vector<FieldSpec> fields = {catalog::loglog4d(),
                                         catalog::sinlog_second_order(4),
                                         catalog::sinlog_fourth_order(5)};
  for (const auto& f : fields) {
    for (int p = 0; p < 100; ++p) {
      const double r = std::exp(std::uniform_real_distribution<double>(-25, -2)(rng));
      const auto a = scaled(random_direction(f.n(), rng), r);
      const auto b = scaled(random_direction(f.n(), rng), r);
      const JetBundle ja = eval_jet(f, a, 0), jb = eval_jet(f, b, 0);
      for (int c = 0; c < 2; ++c) EXPECT_LE(std::fabs(ja.values[c] - jb.values[c]), 1e-12);
      EXPECT_NEAR(ja.values[0] * ja.values[0] + ja.values[1] * ja.values[1], 1.0, 1e-12);
    }
  }
}

TEST(FieldKernel, SymmetricTensorLayout) {
  const SymmetricTensor t(4, 3);
  EXPECT_EQ(t.size(), 20u);
  const auto idx = t.indices();
  ASSERT_EQ(idx.size(), 20u);
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(t.offset(idx[i]), i);
  const int a[3] = {2, 0, 1}, b[3] = {1, 2, 0};
  EXPECT_EQ(t.offset(a), t.offset(b));
}

TEST(FieldKernel, LaplaceFundamentalSolution) {
  const FieldSpec phi = fundamental_solution(3, 2);
  EXPECT_NEAR(phi.param("coefficient"), 1.0 / (4.0 * std::numbers::pi), 1e-15);
  const std::vector<double> x = {0.0, 0.5, 0.0};
  EXPECT_NEAR(eval_jet(phi, x, 0).values[0], 1.0 / (2.0 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(eval_jet(phi, x, 2).laplacian(0), 0.0, 1e-13);
  EXPECT_THROW(fundamental_solution(2, 2), UnsupportedDimension);
  EXPECT_THROW(fundamental_solution(4, 4), UnsupportedDimension);
  EXPECT_THROW(fundamental_solution(5, 3), ConfigError);
  const FieldSpec phi5 = fundamental_solution(5, 2);
  const double r1 = eval_jet(phi5, std::vector<double>{1, 0, 0, 0, 0}, 0).values[0];
  const double r2 = eval_jet(phi5, std::vector<double>{2, 0, 0, 0, 0}, 0).values[0];
  EXPECT_NEAR(r1 / r2, 8.0, 1e-12);
}

TEST(FieldKernel, BilaplacianCalibration) {
  // analytic oracle 1 / (2 (n-4)(n-2) n b_n)
  const std::map<int, double> analytic = {{5, 0.00633257397764611071524246645061},
                                          {6, 0.00201572090207496807402637829304},
                                          {7, 0.00100786045103748403701318914652}};
  for (const auto& [n, c] : analytic) {
    const BilapCalibration cal = bilaplacian_calibration(n);
    EXPECT_NEAR(cal.c_n / c, 1.0, 1e-6) << n;
    EXPECT_LE(cal.residual, 1e-6);
  }
  const FieldSpec psi = fundamental_solution(5, 4);
  EXPECT_NEAR(psi.param("c_n") * 16 * std::numbers::pi * std::numbers::pi, 1.0, 1e-6);
  const double held_out =
      bilaplacian_pairing(5, psi.param("c_n"), profiles::smooth_bump(0.8), 0.8);
  EXPECT_NEAR(held_out, std::exp(-1.0), 1e-3 * std::exp(-1.0));
}

TEST(FieldKernel, HarmonicCorpus) {
  const auto corpus = comparison_corpus(CorpusKind::Harmonic, 3, 2);
  Polynomial a(3), b(3);
  a.add_term({2, 0, 0}, 1.0);
  a.add_term({0, 2, 0}, -1.0);
  b.add_term({1, 1, 0}, 1.0);
  bool has_a = false, has_b = false;
  for (const auto& f : corpus) {
    if (f.polynomials()[0].terms() == a.terms()) has_a = true;
    if (f.polynomials()[0].terms() == b.terms()) has_b = true;
  }
  EXPECT_TRUE(has_a);
  EXPECT_TRUE(has_b);

  const auto zero = comparison_corpus(CorpusKind::Harmonic, 4, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(eval_jet(zero[0], std::vector<double>{0.1, 0.2, 0.3, 0.4}, 1).gradient_norm(), 0.0);
  EXPECT_THROW(comparison_corpus(CorpusKind::Harmonic, 3, 5), ConfigError);
}

TEST(FieldKernel, BiharmonicCorpusValidity) {
  const auto corpus = comparison_corpus(CorpusKind::Biharmonic, 5, 4);
  bool has_r2_quadratic = false;
  const Polynomial r2 = Polynomial::norm_squared(5);
  for (const auto& f : corpus) {
    EXPECT_TRUE(f.polynomials()[0].bilaplacian().is_zero(1e-12));
    if (f.polynomials()[0].degree() == 4 && !f.polynomials()[0].laplacian().is_zero(1e-12))
      has_r2_quadratic = true;
  }
  EXPECT_TRUE(has_r2_quadratic);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& f : corpus) {
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x(5);
      for (auto& v : x) v = u(rng);
      EXPECT_LE(std::fabs(eval_jet(f, x, 4).bilaplacian(0)), 1e-10);
    }
  }
  for (const auto& f : comparison_corpus(CorpusKind::Harmonic, 5, 4)) {
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x(5);
      for (auto& v : x) v = u(rng);
      EXPECT_LE(std::fabs(eval_jet(f, x, 2).laplacian(0)), 1e-10);
    }
  }
}

TEST(FieldKernel, FamilyStringsRoundTrip) {
  for (Family f : {Family::LogLog4D, Family::SinLogSecondOrder, Family::PowerLaw,
                   Family::HarmonicPoly, Family::Custom})
    EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_THROW(family_from_string("nope"), ConfigError);
}

TEST(FieldKernel, PerturbedIsCustom) {
  const FieldSpec u = catalog::sinlog_second_order(4).perturbed(0, 1.01);
  EXPECT_EQ(u.family(), Family::Custom);
  const std::vector<double> x = {0.05, 0, 0, 0};
  EXPECT_NEAR(eval_jet(u, x, 0).values[0],
              1.01 * eval_jet(catalog::sinlog_second_order(4), x, 0).values[0], 1e-15);
}
