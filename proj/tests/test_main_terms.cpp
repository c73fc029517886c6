#include <cmath>

#include "doctest.h"
#include "momentlab/main_terms.hpp"
#include "momentlab/report.hpp"
#include "momentlab/specfun.hpp"

using namespace momentlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("combinatorial constants: spot values") {
  CHECK(beta_const(0, 1, 1) == Rational(1));
  CHECK(beta_const(2, 1, 0) == Rational(-1, 2));
  CHECK(gamma4_const(0, 0, 0, 0) == Rational(-1, 24));
  CHECK(eta4_const(0, 0, 0, 0) == Rational(1, 4));
  CHECK(frakS_const(0, 0, 0, 0) == Rational(1, 12));
  CHECK(frakS_residue_const(0, 0, 0, 0) == Rational(1, 6));
  CHECK(frakS_residue_const(1, 0, 0, 0) == Rational(1, 15));
  CHECK(frakS_residue_const(0, 0, 1, 1) == Rational(1, 40));
  CHECK_THROWS_AS(beta_const(-1, 0, 0), std::domain_error);
}

TEST_CASE("frakS symmetry (j1<->j2, j3<->j4) exact") {
  for (int j1 = 0; j1 <= 2; ++j1)
    for (int j2 = 0; j2 <= 2; ++j2)
      for (int j3 = 0; j3 <= 2; ++j3)
        for (int j4 = 0; j4 <= 2; ++j4) {
          if (j1 + j2 + j3 + j4 > 4) continue;
          CHECK(frakS_const(j1, j2, j3, j4) == frakS_const(j2, j1, j4, j3));
          CHECK(frakS_residue_const(j1, j2, j3, j4) == frakS_residue_const(j2, j1, j4, j3));
        }
}

TEST_CASE("residue_oracle basics") {
  auto r1 = residue_oracle([](cplx s) { return 1.0 / s; }, 0.05, 64);
  CHECK(std::abs(r1.residue - cplx(1.0)) < 1e-13);
  auto r2 = residue_oracle([](cplx s) { return std::exp(s) / std::pow(s, 5); }, 0.05, 64);
  CHECK(std::abs(r2.residue - cplx(1.0 / 24.0)) < 1e-10);
  CHECK_THROWS_AS(residue_oracle([](cplx) { return cplx(NAN); }, 0.05, 16), std::domain_error);
}

TEST_CASE("diagonal main term: leading log^4 q coefficient is 1/(2 pi^2)") {
  for (Parity parity : {kEven, kOdd}) {
    auto poly = diagonal_main_term_poly(1, 1, 101, parity);
    CHECK(std::abs(poly[4] - 1.0 / (2.0 * kPi * kPi)) < 1e-12);
  }
}

TEST_CASE("diagonal main term matches the contour oracle") {
  QWeight qw{};
  double jet = diagonal_main_term(1, 1, 1009, kEven, qw);
  auto orc = residue_oracle([&](cplx s) { return diag_integrand_pt(1, 1, 1009, kEven, qw, s); },
                            0.05, 64);
  CHECK(std::abs(jet - orc.residue.real()) < 1e-8 * std::abs(jet));
  CHECK(std::abs(orc.residue.imag()) < 1e-9 * std::abs(jet));
}

TEST_CASE("diagonal polynomial in log q recovered by fitting across primes") {
  QWeight qw{};
  auto poly = diagonal_main_term_poly(2, 3, 101, kEven, qw);
  // Vandermonde fit through five primes
  std::vector<std::uint64_t> qs{101, 211, 499, 1009, 2003};
  double A[5][6];
  for (int r = 0; r < 5; ++r) {
    double lq = std::log(static_cast<double>(qs[r]));
    double v = 1.0;
    for (int c = 0; c < 5; ++c) {
      A[r][c] = v;
      v *= lq;
    }
    A[r][5] = diagonal_main_term(2, 3, qs[r], kEven, qw);
  }
  // Gaussian elimination
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    for (int k = 0; k < 6; ++k) std::swap(A[c][k], A[piv][k]);
    for (int r = 0; r < 5; ++r) {
      if (r == c) continue;
      double f = A[r][c] / A[c][c];
      for (int k = 0; k < 6; ++k) A[r][k] -= f * A[c][k];
    }
  }
  for (int c = 0; c < 5; ++c) {
    double fit = A[c][5] / A[c][c];
    CHECK(std::abs(fit - poly[c]) < 1e-8 * (1.0 + std::abs(poly[c])));
  }
}

TEST_CASE("diagonal scales like (l1 l2)^{-1/2} f(l1 l2; 1) to leading order") {
  QWeight qw{};
  auto p11 = diagonal_main_term_poly(1, 1, 101, kEven, qw);
  auto p23 = diagonal_main_term_poly(2, 3, 101, kEven, qw);
  double expect = f_value_pt(6, 1.0).real() / std::sqrt(6.0);
  CHECK(std::abs(p23[4] / p11[4] - expect) < 1e-12);
}

TEST_CASE("offdiag: (1,1) B-decomposition collapses to zero") {
  double v = offdiag_main_term(1, 1, 101, kEven, OffdiagRoute::B_decomposition);
  CHECK(std::abs(v) < 1e-14);
  // direct route is nonzero and matches the contour oracle
  QWeight qw{};
  double direct = offdiag_main_term(1, 1, 1009, kEven, OffdiagRoute::direct_F, qw);
  auto orc = residue_oracle([&](cplx s) { return offdiag_F_pt(1, 1, 1009, kEven, qw, s); },
                            0.06, 64);
  CHECK(std::abs(direct - orc.constant_term.real()) < 1e-8 * std::abs(direct));
}

TEST_CASE("offdiag routes differ only by the dropped scrA-derivative terms") {
  QWeight qw{};
  double a = offdiag_main_term(2, 3, 101, kEven, OffdiagRoute::direct_F, qw);
  double b = offdiag_main_term(2, 3, 101, kEven, OffdiagRoute::B_decomposition, qw);
  CHECK(std::isfinite(a));
  CHECK(std::isfinite(b));
  // the two routes intentionally differ by the dropped scrA-derivative terms
  CHECK(std::abs(a - b) > 1e-12);
}

TEST_CASE("theorem1 prediction shape") {
  auto b = theorem1_prediction(1, 1, 101);
  CHECK(b.total > 0.0);
  CHECK(b.total == 0.5 * (b.diag_even + b.offdiag_even + b.diag_odd + b.offdiag_odd));
  auto b23 = theorem1_prediction(2, 3, 101);
  CHECK(std::isfinite(b23.total));
  CHECK_THROWS_AS(theorem1_prediction(2, 4, 101), std::domain_error);
  CHECK_THROWS_AS(theorem1_prediction(1, 1, 100), std::domain_error);
}

TEST_CASE("md_quadrature matches the residue-corrected constants") {
  double zeta2 = kPi * kPi / 6.0;
  for (std::array<int, 4> j : {std::array<int, 4>{0, 0, 0, 0}, std::array<int, 4>{1, 0, 0, 0},
                               std::array<int, 4>{0, 0, 1, 1}, std::array<int, 4>{1, 1, 1, 1},
                               std::array<int, 4>{2, 2, 0, 0}}) {
    double got = md_quadrature(j, 1.0, zeta2);
    double want = 16.0 * zeta2 * frakS_residue_const(j[0], j[1], j[2], j[3]).to_double();
    CHECK(std::abs(got - want) < 1e-6 * std::abs(want));
  }
  // homogeneity in log L
  double a = md_quadrature({1, 0, 0, 0}, 10.0, zeta2);
  double b = 16.0 * zeta2 * frakS_residue_const(1, 0, 0, 0).to_double() * std::pow(10.0, -3.0);
  CHECK(std::abs(a - b) < 1e-6 * std::abs(b));
}

TEST_CASE("mollified coefficients") {
  auto diag = mollified_asymptotic(1e-3, MollifiedParts::diag);
  // diagonal a4..a0 are exact rationals: 2/9, 64/45, 137/45, 86/35, 191/315
  CHECK(std::abs(diag.a[4] - 2.0 / 9.0) < 1e-14);
  CHECK(std::abs(diag.a[3] - 64.0 / 45.0) < 1e-14);
  CHECK(std::abs(diag.a[2] - 137.0 / 45.0) < 1e-14);
  CHECK(std::abs(diag.a[1] - 86.0 / 35.0) < 1e-14);
  CHECK(std::abs(diag.a[0] - 191.0 / 315.0) < 1e-14);
  auto both = mollified_asymptotic(1e-3, MollifiedParts::both);
  // off-diagonal pieces land on lambda^0, ^-1, ^-2 only
  CHECK(std::abs(both.a[4] - diag.a[4]) < 1e-14);
  CHECK(std::abs(both.a[3] - diag.a[3]) < 1e-14);
  CHECK(both.a[0] > diag.a[0]);
  CHECK_FALSE(both.diagnostic_only);
  CHECK(mollified_asymptotic(0.01, MollifiedParts::diag).diagnostic_only);
  CHECK_THROWS_AS(mollified_asymptotic(-1.0, MollifiedParts::both), std::domain_error);
  CHECK_THROWS_AS(mollified_asymptotic(1e-3, MollifiedParts::both, "X^3"), std::domain_error);
  // determinism across repeated runs
  auto again = mollified_asymptotic(1e-3, MollifiedParts::both);
  for (int i = 0; i <= 4; ++i) CHECK(both.a[i] == again.a[i]);
}
