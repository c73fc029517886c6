#pragma once
#include <array>
#include <cstdint>
#include <string>

#include "momentlab/jet.hpp"

namespace momentlab {

// chi(-1) = (-1)^kappa; kappa = 0 for even characters
struct Parity {
  int kappa = 0;
};
inline constexpr Parity kEven{0};
inline constexpr Parity kOdd{1};

// Even archimedean test weight Q(s) = exp(c s^2); Q(0) = 1, fast vertical decay.
// The same instance must feed both the main-term jets and the brute-force V.
struct QWeight {
  double c = 1.0;
  std::string id = "exp(s^2)";
  cplx eval(cplx s) const { return std::exp(c * s * s); }
  Jet jet() const;
};

struct EulerProductResult {
  double value = 0.0;
  std::uint64_t p_max = 0;
  double tail_estimate = 0.0;
};

// f(ell; s): multiplicative on cubefree ell, f(p; s) = 2/(1+p^-s),
// f(p^2; s) = (3 - p^-s)/(1 + p^-s); argument is a jet.
Jet f_value(std::uint64_t ell, const Jet& s);
cplx f_value_pt(std::uint64_t ell, cplx s);

// mu_{2,nu}: Dirichlet inverse of sigma_nu; mu(p) = -1-p^nu, mu(p^2) = p^nu, 0 beyond.
cplx mu2(std::uint64_t n, cplx nu);

// delta(ell; s, u1, u2): multiplicative on cubefree ell (prime-power closed forms).
Jet delta_value(std::uint64_t ell, const Jet& s, const Jet& u1, const Jet& u2);
cplx delta_value_pt(std::uint64_t ell, cplx s, cplx u1, cplx u2);

enum class HRoute { gamma_identity, definition_sum };

// H(s, u1, u2) with the parity-dependent closed forms; simple pole in s at u = 0.
Jet H_jet(Parity parity, HRoute route);
cplx H_pt(Parity parity, HRoute route, cplx s, cplx u1, cplx u2);

// G(s) = pi^{-2s} Gamma(((1/2 or 3/2)+s)/2)^4 / Gamma(1/4 or 3/4)^4 * Q(s)
Jet G_jet(Parity parity, const QWeight& q_weight);
cplx G_pt(Parity parity, const QWeight& q_weight, cplx s);

enum class ARoute { direct, polar };

// A(s,u1,u2;q) = G H zeta(2s-u1-u2) zeta(1+2s+u1+u2) / zeta(2+2u1+2u2) * q^{u1+u2};
// the polar route assembles q^{u1+u2} scrA / ((2s+u1+u2)(2s-u1-u2)) with scrA
// analytic. Both must agree coefficientwise.
Jet A_jet(std::uint64_t q, Parity parity, const QWeight& q_weight, ARoute route);
// the analytic numerator scrA itself (scrA(0,0,0) = -1/zeta(2))
Jet scrA_jet(Parity parity, const QWeight& q_weight);
cplx A_pt(std::uint64_t q, Parity parity, const QWeight& q_weight, cplx s, cplx u1, cplx u2);

// B(s,u1,u2; l1,l2) = delta(l1; s,u1,u2) delta(l2; s,u2,u1) / sqrt(l1 l2)
Jet B_jet(std::uint64_t ell1, std::uint64_t ell2);
cplx B_pt(std::uint64_t ell1, std::uint64_t ell2, cplx s, cplx u1, cplx u2);

struct BDerivatives {
  Jet B0;  // B(s,0,0)
  Jet B1;  // (d_u1 + d_u2) B |_{u=0}
  Jet B2;  // d^2_{u1 u2} B |_{u=0}
};
BDerivatives B_derivatives(std::uint64_t ell1, std::uint64_t ell2);

// closed form of the normalized Dirichlet series:
// zeta(1+2s+u1+u2)/zeta(2+2u1+2u2) * delta(l1;s,u1,u2) delta(l2;s,u2,u1)
Jet L_closed(std::uint64_t ell1, std::uint64_t ell2);
cplx L_closed_pt(std::uint64_t ell1, std::uint64_t ell2, cplx s, cplx u1, cplx u2);

// brute double sum, b-sums completed exactly through Hurwitz-zeta progressions,
// a-sum truncated at the cutoff; includes the l1^{s-u1} l2^{s-u2} normalization
cplx L_brute(cplx s, cplx u1, cplx u2, std::uint64_t ell1, std::uint64_t ell2,
             std::uint64_t cutoff);

enum class EulerProductKind { diag_F, offdiag_F };

// diag_F: prod_p L_p(0,..,0)(1-1/p)^-4 over the brute local sums (limit zeta(2));
// offdiag_F: zeta(2) prod_p (1 + 2(1+1/p)/(p^2 (1-1/p)^3)).
EulerProductResult euler_product(EulerProductKind kind, std::uint64_t p_max);

// local factor of the mollified Dirichlet series at s=0 divided by its
// zeta-factor skeleton, evaluated at small supplied z = (z1,z2,z3,z4)
EulerProductResult mollified_L_check(const std::array<cplx, 4>& z, std::uint64_t p_max);

// brute local factors (shared by the Euler-product tests)
double diag_local_factor(std::uint64_t p);     // L_p(0,...,0) of the diagonal series
double offdiag_local_factor(std::uint64_t p);  // L_p(0,...,0) of the delta-series

}  // namespace momentlab
