#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "momentlab/arith.hpp"
#include "momentlab/paper_functions.hpp"

namespace momentlab {

struct MainTermBreakdown {
  std::uint64_t ell1 = 1, ell2 = 1, q = 0;
  double diag_even = 0, diag_odd = 0;
  double offdiag_even = 0, offdiag_odd = 0;
  double total = 0;  // (even + odd)/2, matching the all-primitive average
  std::string q_weight_id;
};

struct MollifiedCoefficients {
  std::array<double, 5> a{};  // coefficients of lambda^{-i}
  double lambda = 0;
  bool diagnostic_only = false;  // lambda outside (0, 11/8064)
};

// ---- combinatorial constants (exact rationals) ----

// beta(a,b,c) = (-1)^{b+c} / a!
Rational beta_const(int a, int b, int c);
// gamma(j1..j4) = (-1)^{1+j4} sum_{k+l+n=j3} beta(k,l,n)/(4+j1+j2+j4+l+n)!
Rational gamma4_const(int j1, int j2, int j3, int j4);
// eta(j1..j4) = sum_{k+l+n=j4} sum_{a+b+c=j3} beta beta /((2+j2+n+c)!(2+j1+l+b)!)
Rational eta4_const(int j1, int j2, int j3, int j4);
// frakS = 2 gamma(j1,j2,j3,j4) + 2 gamma(j1,j2,j4,j3) + eta
Rational frakS_const(int j1, int j2, int j3, int j4);
// residue-corrected variant: gamma + gamma + eta. Under a consistent contour
// ordering only one chain of each symmetric pair survives; the contour-integral
// oracle (md_quadrature) pins this value, not the doubled one.
Rational frakS_residue_const(int j1, int j2, int j3, int j4);
// scrB(i1,j1,...,i4,j4) = (-1)^{j1+..+j4} / (i1! j1! ... i4! j4!)
Rational scrB_const(const std::array<int, 8>& ij);

// ---- main terms ----

// 2 Res_{s=0} { G(s) q^{2s} f(l1 l2; 1+2s) zeta^4(1+2s) / (s zeta(2+4s) (l1 l2)^{1/2+s}) }
double diagonal_main_term(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                          const QWeight& qw = {});
// same residue as a polynomial in log q (degree 4, index = power of log q)
std::array<double, 5> diagonal_main_term_poly(std::uint64_t ell1, std::uint64_t ell2,
                                              std::uint64_t q, Parity parity,
                                              const QWeight& qw = {});

enum class OffdiagRoute { direct_F, B_decomposition };

// direct_F: sum of the constant terms of the even jets F_i = D_gamma^i {A B};
// B_decomposition: the explicit four-term formula with scrA(0,0,0) = -1/zeta(2)
// (drops scrA-derivative terms; kept as a documented approximation).
double offdiag_main_term(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                         OffdiagRoute route, const QWeight& qw = {});

// the three F_i jets (u-extracted, s-jets), for parity checks
std::array<Jet, 3> offdiag_F_jets(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q,
                                  Parity parity, const QWeight& qw = {});

MainTermBreakdown theorem1_prediction(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q,
                                      const QWeight& qw = {});

enum class MollifiedParts { diag, offdiag, both };

// coefficients a_i of lambda^{-i} for the mollifier x(l) = mu(l) P(log(L/l)/log L),
// P pinned to X^2 (any other request throws).
MollifiedCoefficients mollified_asymptotic(double lambda, MollifiedParts parts,
                                           const std::string& polynomial = "X^2",
                                           std::uint64_t p_max = 1'000'000);

// ---- oracles ----

struct ResidueOracleResult {
  cplx residue;
  cplx constant_term;
};

// trapezoid contour quadrature on |s| = radius of (1/2pi i) oint f ds and
// (1/2pi i) oint f/s ds
ResidueOracleResult residue_oracle(const std::function<cplx(cplx)>& f, double radius, int nodes);

// pointwise diagonal integrand (everything evaluated through the pointwise
// special-function path; independent of the jet pipeline)
cplx diag_integrand_pt(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                       const QWeight& qw, cplx s);

// pointwise F(s) = D_gamma{A B}(s) with the u-derivatives taken by small-circle
// Cauchy quadrature on pointwise evaluations
cplx offdiag_F_pt(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                  const QWeight& qw, cplx s, int u_nodes = 24);

// nested-contour quadrature of the mollified z-integral with frozen scrF:
// returns the value of M_D(j1..j4; F) given log L (exactly homogeneous in log L,
// evaluated at unit scale). The closure direction per chain follows the
// L-exponent bookkeeping for the ordering eps_1 > eps_2 > eps_3 > eps_4.
double md_quadrature(const std::array<int, 4>& j, double log_L, double scrF_frozen,
                     int nodes = 48);

}  // namespace momentlab
