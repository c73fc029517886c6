#include <cmath>

#include "doctest.h"
#include "momentlab/arith.hpp"
#include "momentlab/report.hpp"
#include "momentlab/specfun.hpp"

using namespace momentlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

// independent K0 oracle: double-exponential quadrature of int_0^inf e^{-x cosh t} dt
// (the substitution t = (pi/2) sinh(u) doubles the range; halve at the end)
double k0_quadrature(double x) {
  double acc = 0.0, h = 0.004;
  for (int k = -2000; k <= 2000; ++k) {
    double t = k * h;
    double u = 0.5 * kPi * std::sinh(t);
    double du = 0.5 * kPi * std::cosh(t);
    double arg = x * std::cosh(u);
    if (arg > 700) continue;
    acc += std::exp(-arg) * du * h;
  }
  return 0.5 * acc;
}

// J0 oracle: (1/pi) int_0^pi cos(x sin h) dh, periodic trapezoid
double j0_quadrature(double x) {
  const int n = 512;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::cos(x * std::sin(kPi * (k + 0.5) / n));
  return acc / n;
}
}  // namespace

TEST_CASE("gamma pointwise") {
  CHECK(std::abs(gamma_fn(0.5) - cplx(std::sqrt(kPi))) < 1e-13);
  CHECK(std::abs(gamma_fn(0.25) - cplx(3.62560990822190831193068515586767)) < 1e-12);
  CHECK(std::abs(gamma_fn(5.0) - cplx(24.0)) < 1e-12);
  SplitMix64 rng(3);
  for (int i = 0; i < 40; ++i) {
    cplx z(rng.uniform(-3, 3), rng.uniform(-3, 3));
    if (std::abs(z - std::round(z.real())) < 0.15 && std::abs(z.imag()) < 0.15) continue;
    // recurrence
    CHECK(std::abs(gamma_fn(z + 1.0) - z * gamma_fn(z)) < 1e-11 * std::abs(gamma_fn(z + 1.0)));
    // reflection
    cplx refl = gamma_fn(z) * gamma_fn(1.0 - z) * std::sin(kPi * z) / kPi;
    CHECK(std::abs(refl - 1.0) < 1e-11);
  }
}

TEST_CASE("zeta pointwise values") {
  CHECK(std::abs(zeta_value(2.0) - cplx(kPi * kPi / 6.0)) < 1e-13);
  CHECK(std::abs(zeta_value(0.0) - cplx(-0.5)) < 1e-13);
  CHECK(std::abs(zeta_value(0.5) - cplx(-1.46035450880958681289)) < 1e-12);
  CHECK_THROWS_AS(zeta_value(1.0), std::domain_error);
}

TEST_CASE("zeta functional equation (paper form)") {
  // zeta(1+2s) = pi^{1/2+2s} zeta(-2s) Gamma(-s)/Gamma(1/2+s)
  SplitMix64 rng(5);
  int checked = 0;
  while (checked < 20) {
    cplx s(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (std::abs(s.real()) < 0.05 || std::abs(std::abs(s.real()) - 0.5) < 0.05) continue;
    if (std::abs(s) > 2.0) continue;
    cplx lhs = zeta_value(1.0 + 2.0 * s);
    cplx rhs = std::pow(cplx(kPi), 0.5 + 2.0 * s) * zeta_value(-2.0 * s) * gamma_fn(-s) /
               gamma_fn(0.5 + s);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
    ++checked;
  }
}

TEST_CASE("hurwitz zeta identities") {
  for (cplx z : {cplx(0.5), cplx(2.5), cplx(0.3, 1.2), cplx(-0.4, 0.7)}) {
    CHECK(std::abs(hurwitz_zeta(z, 1.0) - zeta_value(z)) < 1e-12 * (1.0 + std::abs(zeta_value(z))));
    cplx dup = (std::pow(cplx(2.0), z) - 1.0) * zeta_value(z);
    CHECK(std::abs(hurwitz_zeta(z, 0.5) - dup) < 1e-11 * (1.0 + std::abs(dup)));
  }
  // brute-sum oracle at (0.5, 0.25): 1e6 direct terms plus integral tail
  double brute = 0.0;
  for (int n = 0; n < 1'000'000; ++n) brute += 1.0 / std::sqrt(n + 0.25);
  // tail: int_{N}^{inf} x^{-1/2} dx continued at s=1/2: (N+x0)^{1/2}/(1/2-1) ...
  double N = 1'000'000.0 + 0.25;
  brute += -2.0 * std::sqrt(N) + 0.5 / std::sqrt(N);  // Euler-Maclaurin first terms
  CHECK(std::abs(hurwitz_zeta(0.5, 0.25).real() - brute) < 1e-8);
  CHECK(std::abs(hurwitz_zeta(0.5, 0.25).real() - 0.239963524495630955) < 1e-12);
}

TEST_CASE("stieltjes constants agree with an independent digamma route") {
  // gamma_0 equals the Euler constant
  CHECK(std::abs(stieltjes_constant(0) - Constants::euler_gamma()) < 1e-15);
  CHECK(std::abs(stieltjes_constant(1) - (-0.0728158454836767249)) < 1e-15);
}

TEST_CASE("zeta_one_jet Laurent structure") {
  Jet z = zeta_one_jet(1.0, 0.0, 0.0);  // zeta(1 + s)
  CHECK(std::abs(z.coefficient(-1, 0, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(z.coefficient(0, 0, 0) - cplx(Constants::euler_gamma())) < 1e-15);
  CHECK(std::abs(z.coefficient(1, 0, 0) - cplx(0.0728158454836767249)) < 1e-15);
}

TEST_CASE("gamma_jet structure and poles") {
  Jet g_half = gamma_jet(0.5, 1.0, 0.0, 0.0);
  CHECK(std::abs(g_half.coefficient(0, 0, 0) - cplx(std::sqrt(kPi))) < 1e-13);
  // Gamma(s): Laurent jet 1/s - g + O(s)
  Jet gs = gamma_jet(0.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(gs.coefficient(-1, 0, 0) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(gs.coefficient(0, 0, 0) + cplx(Constants::euler_gamma())) < 1e-12);
  // Gamma(1+s) has s-coefficient psi(1) = -gamma
  Jet g1 = gamma_jet(1.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(g1.coefficient(1, 0, 0) + cplx(Constants::euler_gamma())) < 1e-13);
  // pole at center -2: leading coefficient (-1)^2/2! on the linear form
  Jet gm2 = gamma_jet(-2.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(gm2.coefficient(-1, 0, 0) - cplx(0.5)) < 1e-11);
}

TEST_CASE("gamma recurrence as jets") {
  SplitMix64 rng(17);
  for (int i = 0; i < 8; ++i) {
    cplx z0(rng.uniform(0.3, 2.5), rng.uniform(-1, 1));
    Jet lhs = gamma_jet(z0 + 1.0, 1.0, 0.0, 0.0);
    Jet rhs = (Jet::variable_s() + Jet::constant(z0)) * gamma_jet(z0, 1.0, 0.0, 0.0);
    for (int k = 0; k <= 6; ++k)
      CHECK(std::abs(lhs.coefficient(k, 0, 0) - rhs.coefficient(k, 0, 0)) <
            1e-11 * (1.0 + std::abs(lhs.coefficient(k, 0, 0))));
  }
}

TEST_CASE("jet coefficients match Richardson finite differences") {
  // first and second derivatives of Gamma and zeta at generic centers
  auto fd_check = [](const std::function<cplx(cplx)>& f, const Jet& jet, cplx z0) {
    double h = 1e-3;
    auto d1 = [&](double hh) { return (f(z0 + hh) - f(z0 - hh)) / (2.0 * hh); };
    cplx der1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;  // Richardson
    CHECK(std::abs(jet.coefficient(1, 0, 0) - der1) < 1e-6 * (1.0 + std::abs(der1)));
    auto d2 = [&](double hh) { return (f(z0 + hh) - 2.0 * f(z0) + f(z0 - hh)) / (hh * hh); };
    cplx der2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
    CHECK(std::abs(jet.coefficient(2, 0, 0) * 2.0 - der2) < 1e-6 * (1.0 + std::abs(der2)));
  };
  cplx z0(1.3, 0.2);
  fd_check([](cplx z) { return gamma_fn(z); }, gamma_jet(z0, 1.0, 0.0, 0.0), z0);
  cplx z1(0.3, -0.4);
  fd_check([](cplx z) { return zeta_value(z); }, zeta_taylor_jet(z1, 1.0, 0.0, 0.0), z1);
}

TEST_CASE("bessel values") {
  CHECK(std::abs(bessel(BesselKind::K0, 1.0) - 0.421024438240708333) < 1e-12);
  for (double x : {0.3, 1.0, 3.7, 8.5, 15.0, 42.0})
    CHECK(std::abs(bessel(BesselKind::K0, x) - k0_quadrature(x)) < 1e-10);
  for (double x : {0.2, 1.0, 4.0, 8.9, 9.3, 20.0, 77.0})
    CHECK(std::abs(bessel(BesselKind::J0, x) - j0_quadrature(x)) < 1e-10);
  CHECK(std::abs(bessel(BesselKind::J0, 1e-8) - 1.0) < 1e-12);
  // |Y0(x)| sqrt(x) stays bounded in the oscillatory regime
  for (double x = 1.0; x < 300.0; x *= 1.37)
    CHECK(std::abs(bessel(BesselKind::Y0, x)) * std::sqrt(x) < 1.0);
  CHECK_THROWS_AS(bessel(BesselKind::J0, -1.0), std::domain_error);
  // continuity across the series/asymptotic switch at x = 9
  for (BesselKind k : {BesselKind::J0, BesselKind::Y0, BesselKind::K0})
    CHECK(std::abs(bessel(k, 9.0 - 1e-9) - bessel(k, 9.0 + 1e-9)) < 1e-9);
}

TEST_CASE("polygamma table matches the series route") {
  for (double x : {0.25, 0.5, 0.75, 1.0})
    for (int m = 0; m <= 6; ++m) {
      // series route: (-1)^{m+1} m! zeta(m+1, x) for m >= 1
      if (m == 0) continue;
      double fact = 1;
      for (int i = 2; i <= m; ++i) fact *= i;
      double sgn = (m % 2 == 1) ? 1.0 : -1.0;
      cplx series = sgn * fact * hurwitz_zeta(cplx(m + 1.0), x);
      CHECK(std::abs(polygamma(m, x) - series) < 1e-11 * std::abs(series));
    }
  CHECK(std::abs(digamma(1.0) + Constants::euler_gamma()) < 1e-14);
}
