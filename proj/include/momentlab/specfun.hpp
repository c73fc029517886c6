#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "momentlab/jet.hpp"

namespace momentlab {

// ---- pointwise special functions ----

// complex Gamma, Lanczos g=7 with reflection for Re z < 0.5
cplx gamma_fn(cplx z);
cplx log_gamma(cplx z);  // principal-branch-consistent along our usage
cplx digamma(cplx z);

// psi^(m)(z); m <= 6 at z in {1/4, 1/2, 3/4, 1} served from the frozen table,
// everything else through the Hurwitz-zeta series.
cplx polygamma(int m, cplx z);

// Riemann zeta: Euler-Maclaurin for Re z > 0.5, functional equation otherwise.
cplx zeta_value(cplx z);

// Hurwitz zeta(z, x) = sum (n+x)^-z for real x in (0,1], Bernoulli tail through B_20.
cplx hurwitz_zeta(cplx z, double x);

enum class BesselKind { J0, Y0, K0 };
double bessel(BesselKind kind, double x);

// Stieltjes constants gamma_0..gamma_10 (gamma_k = (-1)^k k! coeff of w^k in
// zeta(1+w) - 1/w), frozen from the Euler-Maclaurin limit definition.
double stieltjes_constant(int k);

// ---- jet expanders ----

// Jet of Gamma(center + a*s + b*u1 + c*u2). At a nonpositive-integer center the
// simple pole is produced through the recurrence shift.
Jet gamma_jet(cplx center, cplx a, cplx b, cplx c);

// Jet of zeta(1 + w) for a linear form w = a*s + b*u1 + c*u2 (simple pole 1/w).
Jet zeta_one_jet(cplx a, cplx b, cplx c);

// Jet of zeta(center + w) around a regular center (center != 1); Taylor
// coefficients taken from a Cauchy circle around the center.
Jet zeta_taylor_jet(cplx center, cplx a, cplx b, cplx c);

// Jet of w * zeta(1 + w): entire, equals 1 + sum_k (-1)^k g_k w^{k+1} / k!.
Jet zeta_one_jet_regularized(cplx a, cplx b, cplx c);

// Taylor coefficients f^(k)(center)/k! for k = 0..max_k of a pointwise function,
// by trapezoid quadrature on |z - center| = radius.
std::vector<cplx> cauchy_taylor(const std::function<cplx(cplx)>& f, cplx center,
                                double radius, int max_k, int nodes = 128);

}  // namespace momentlab
