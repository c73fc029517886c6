#include "momentlab/main_terms.hpp"

#include <cmath>
#include <vector>

#include "momentlab/specfun.hpp"

namespace momentlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

void check_hypotheses(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q) {
  if (gcd_u64(ell1, ell2) != 1) throw std::domain_error("main terms: ell1, ell2 must be coprime");
  if (!is_cubefree(ell1) || !is_cubefree(ell2))
    throw std::domain_error("main terms: ell1, ell2 must be cubefree");
  if (q < 3 || !is_prime(q)) throw std::domain_error("main terms: q must be an odd prime");
  if (gcd_u64(ell1 * ell2, q) != 1) throw std::domain_error("main terms: (ell1 ell2, q) != 1");
}
}  // namespace

Rational beta_const(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw std::domain_error("beta: indices must be >= 0");
  Rational r = Rational(1) / rational_factorial(a);
  return ((b + c) % 2 == 0) ? r : -r;
}

Rational gamma4_const(int j1, int j2, int j3, int j4) {
  Rational acc(0);
  for (int k = 0; k <= j3; ++k)
    for (int l = 0; k + l <= j3; ++l) {
      int n = j3 - k - l;
      acc = acc + beta_const(k, l, n) / rational_factorial(4 + j1 + j2 + j4 + l + n);
    }
  return (j4 % 2 == 0) ? -acc : acc;  // (-1)^{1+j4}
}

Rational eta4_const(int j1, int j2, int j3, int j4) {
  Rational acc(0);
  for (int k = 0; k <= j4; ++k)
    for (int l = 0; k + l <= j4; ++l) {
      int n = j4 - k - l;
      for (int a = 0; a <= j3; ++a)
        for (int b = 0; a + b <= j3; ++b) {
          int c = j3 - a - b;
          acc = acc + beta_const(k, l, n) * beta_const(a, b, c) /
                          (rational_factorial(2 + j2 + n + c) * rational_factorial(2 + j1 + l + b));
        }
    }
  return acc;
}

Rational frakS_const(int j1, int j2, int j3, int j4) {
  return Rational(2) * gamma4_const(j1, j2, j3, j4) + Rational(2) * gamma4_const(j1, j2, j4, j3) +
         eta4_const(j1, j2, j3, j4);
}

Rational frakS_residue_const(int j1, int j2, int j3, int j4) {
  return gamma4_const(j1, j2, j3, j4) + gamma4_const(j1, j2, j4, j3) + eta4_const(j1, j2, j3, j4);
}

Rational scrB_const(const std::array<int, 8>& ij) {
  Rational den(1);
  int jsum = 0;
  for (int k = 0; k < 8; ++k) {
    if (ij[k] < 0) throw std::domain_error("scrB: indices must be >= 0");
    den = den * rational_factorial(ij[k]);
    if (k % 2 == 1) jsum += ij[k];
  }
  Rational r = Rational(1) / den;
  return (jsum % 2 == 0) ? r : -r;
}

// ---- diagonal ----

namespace {

// R(s) = G(s) f(l1 l2; 1+2s) zeta^4(1+2s) / (s zeta(2+4s) (l1 l2)^{1/2+s})
Jet diag_R_jet(std::uint64_t ell1, std::uint64_t ell2, Parity parity, const QWeight& qw) {
  Jet s = Jet::variable_s();
  Jet G = G_jet(parity, qw);
  Jet f = f_value(ell1 * ell2, Jet::constant(1.0) + s * cplx(2.0));
  Jet z1 = zeta_one_jet(2.0, 0.0, 0.0);
  Jet z4 = jet_pow(z1, 4);
  Jet zden = zeta_taylor_jet(2.0, 4.0, 0.0, 0.0);
  double ll = static_cast<double>(ell1) * static_cast<double>(ell2);
  Jet llpow = jet_pow_real(ll, s + Jet::constant(0.5));
  Jet num = G * f * z4;
  Jet den = Jet::variable_s() * zden * llpow;
  return jet_div(num, den);
}

}  // namespace

std::array<double, 5> diagonal_main_term_poly(std::uint64_t ell1, std::uint64_t ell2,
                                              std::uint64_t q, Parity parity, const QWeight& qw) {
  check_hypotheses(ell1, ell2, q);
  Jet R = diag_R_jet(ell1, ell2, parity, qw);
  // q^{2s} = sum_k (2 log q)^k s^k / k!; the residue collects, for the log^k q
  // coefficient, 2 * 2^k/k! * [s^{-1-k}] R
  std::array<double, 5> out{};
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) fact *= k;
    out[k] = 2.0 * std::pow(2.0, k) / fact * R.coefficient(-1 - k, 0, 0).real();
  }
  return out;
}

double diagonal_main_term(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                          const QWeight& qw) {
  auto poly = diagonal_main_term_poly(ell1, ell2, q, parity, qw);
  double lq = std::log(static_cast<double>(q));
  double v = 0.0;
  for (int k = 4; k >= 0; --k) v = v * lq + poly[k];
  return v;
}

// ---- off-diagonal ----

std::array<Jet, 3> offdiag_F_jets(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q,
                                  Parity parity, const QWeight& qw) {
  check_hypotheses(ell1, ell2, q);
  Jet AB = A_jet(q, parity, qw, ARoute::direct) * B_jet(ell1, ell2);
  double g = Constants::euler_gamma();
  std::array<Jet, 3> F;
  F[0] = AB.u_slice(0, 0) * cplx(4.0 * g * g);
  F[1] = (AB.u_slice(1, 0) + AB.u_slice(0, 1)) * cplx(2.0 * g);
  F[2] = AB.u_slice(1, 1);
  return F;
}

double offdiag_main_term(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                         OffdiagRoute route, const QWeight& qw) {
  check_hypotheses(ell1, ell2, q);
  if (route == OffdiagRoute::direct_F) {
    auto F = offdiag_F_jets(ell1, ell2, q, parity, qw);
    double acc = 0.0;
    for (auto& f : F) acc += f.constant_in_s().real();
    return acc;
  }
  // B-decomposition: scrA(0,0,0)/8 [ (1/4!) d^4 B0 + log^2 q d^2 B0
  //                                  + log q d^2 B1 + d^2 B2 ]  at s = 0
  auto B = B_derivatives(ell1, ell2);
  double lq = std::log(static_cast<double>(q));
  double scrA0 = -1.0 / zeta_value(2.0).real();
  auto d2 = [](const Jet& j) { return j.coefficient(2, 0, 0).real() * 2.0; };
  auto d4over24 = [](const Jet& j) { return j.coefficient(4, 0, 0).real(); };
  return scrA0 / 8.0 *
         (d4over24(B.B0) + lq * lq * d2(B.B0) + lq * d2(B.B1) + d2(B.B2));
}

MainTermBreakdown theorem1_prediction(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q,
                                      const QWeight& qw) {
  check_hypotheses(ell1, ell2, q);
  MainTermBreakdown b;
  b.ell1 = ell1;
  b.ell2 = ell2;
  b.q = q;
  b.q_weight_id = qw.id + "; total=(even+odd)/2";
  b.diag_even = diagonal_main_term(ell1, ell2, q, kEven, qw);
  b.diag_odd = diagonal_main_term(ell1, ell2, q, kOdd, qw);
  b.offdiag_even = offdiag_main_term(ell1, ell2, q, kEven, OffdiagRoute::direct_F, qw);
  b.offdiag_odd = offdiag_main_term(ell1, ell2, q, kOdd, OffdiagRoute::direct_F, qw);
  b.total = 0.5 * (b.diag_even + b.offdiag_even + b.diag_odd + b.offdiag_odd);
  return b;
}

// ---- mollified moment ----

namespace {

int alpha_weight(int j) { return j == 0 ? 1 : 2; }

// diagonal: M_D^4 = 2 sum_{js + j1..j4 = 4, jk <= 2} (2/lambda)^{js}
//                   alpha(j) C_{js,j} S(j)   ->  a_{js}
void mollified_diag_coeffs(std::array<double, 5>& a) {
  for (int js = 0; js <= 4; ++js) {
    Rational acc(0);
    for (int j1 = 0; j1 <= 2; ++j1)
      for (int j2 = 0; j2 <= 2; ++j2)
        for (int j3 = 0; j3 <= 2; ++j3)
          for (int j4 = 0; j4 <= 2; ++j4) {
            if (j1 + j2 + j3 + j4 + js != 4) continue;
            Rational C = Rational(1) / (rational_factorial(js) * rational_factorial(j1) *
                                        rational_factorial(j2) * rational_factorial(j3) *
                                        rational_factorial(j4));
            long long al = alpha_weight(j1) * alpha_weight(j2) * alpha_weight(j3) *
                           alpha_weight(j4);
            acc = acc + Rational(2) * Rational(1LL << js) * Rational(al) * C *
                            frakS_residue_const(j1, j2, j3, j4);
          }
    a[js] += acc.to_double();
  }
}

// off-diagonal: the four operator pieces land on powers lambda^0, ^-1, ^-2
void mollified_offdiag_coeffs(std::array<double, 5>& a, double f_od, double zeta2) {
  auto S = [](int t1, int t2, int t3, int t4) {
    return frakS_residue_const(t1, t2, t3, t4).to_double();
  };
  // enumerate (i_k, j_k) in {0,1}^8
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (int mask = 0; mask < 256; ++mask) {
    int iv[4], jv[4], tot = 0, jsum = 0;
    for (int k = 0; k < 4; ++k) {
      iv[k] = (mask >> (2 * k)) & 1;
      jv[k] = (mask >> (2 * k + 1)) & 1;
      tot += iv[k] + jv[k];
      jsum += jv[k];
    }
    double sgn = (jsum % 2 == 0) ? 1.0 : -1.0;
    if (tot == 4) m1 += sgn * S(iv[0] + jv[0], iv[1] + jv[1], iv[2] + jv[2], iv[3] + jv[3]);
    if (tot == 2) {
      m2 += sgn * S(iv[0] + jv[0], iv[1] + jv[1], iv[2] + jv[2], iv[3] + jv[3]);
      for (int l = 0; l < 4; ++l) {
        if (iv[l] * jv[l] != 0) continue;
        int t[4] = {iv[0] + jv[0], iv[1] + jv[1], iv[2] + jv[2], iv[3] + jv[3]};
        ++t[l];
        m3 += sgn * S(t[0], t[1], t[2], t[3]);
      }
      for (int n = 0; n < 4; ++n)
        for (int l = 0; l < 4; ++l) {
          if (iv[n] != 0 || jv[l] != 0) continue;
          int t[4] = {iv[0] + jv[0], iv[1] + jv[1], iv[2] + jv[2], iv[3] + jv[3]};
          ++t[n];
          ++t[l];
          m4 += sgn * S(t[0], t[1], t[2], t[3]);
        }
    }
  }
  a[0] += -2.0 / zeta2 * f_od * m1;
  a[2] += -4.0 / zeta2 * f_od * m2;
  a[1] += -4.0 / zeta2 * f_od * m3;
  a[0] += -4.0 / zeta2 * f_od * m4;
}

}  // namespace

MollifiedCoefficients mollified_asymptotic(double lambda, MollifiedParts parts,
                                           const std::string& polynomial, std::uint64_t p_max) {
  if (lambda <= 0) throw std::domain_error("mollified_asymptotic: lambda must be positive");
  if (polynomial != "X^2")
    throw std::domain_error("mollified_asymptotic: only P(X) = X^2 is supported");
  MollifiedCoefficients out;
  out.lambda = lambda;
  out.diagnostic_only = !(lambda < Constants::lambda_max().to_double());
  if (parts == MollifiedParts::diag || parts == MollifiedParts::both)
    mollified_diag_coeffs(out.a);
  if (parts == MollifiedParts::offdiag || parts == MollifiedParts::both) {
    double zeta2 = kPi * kPi / 6.0;
    double f_od = euler_product(EulerProductKind::offdiag_F, p_max).value;
    mollified_offdiag_coeffs(out.a, f_od, zeta2);
  }
  return out;
}

// ---- oracles ----

ResidueOracleResult residue_oracle(const std::function<cplx(cplx)>& f, double radius, int nodes) {
  ResidueOracleResult r{0.0, 0.0};
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / nodes;
    cplx z = radius * cplx(std::cos(th), std::sin(th));
    cplx v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error("residue_oracle: non-finite sample on the contour");
    r.residue += v * z;
    r.constant_term += v;
  }
  r.residue /= static_cast<double>(nodes);
  r.constant_term /= static_cast<double>(nodes);
  return r;
}

cplx diag_integrand_pt(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                       const QWeight& qw, cplx s) {
  double ll = static_cast<double>(ell1) * static_cast<double>(ell2);
  cplx z1 = zeta_value(1.0 + 2.0 * s);
  return 2.0 * G_pt(parity, qw, s) * std::pow(cplx(static_cast<double>(q)), 2.0 * s) *
         f_value_pt(ell1 * ell2, 1.0 + 2.0 * s) * z1 * z1 * z1 * z1 /
         (s * zeta_value(2.0 + 4.0 * s) * std::pow(cplx(ll), 0.5 + s));
}

cplx offdiag_F_pt(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                  const QWeight& qw, cplx s, int u_nodes) {
  double g = Constants::euler_gamma();
  auto AB = [&](cplx u1, cplx u2) {
    return A_pt(q, parity, qw, s, u1, u2) * B_pt(ell1, ell2, s, u1, u2);
  };
  const double r1 = 0.017, r2 = 0.023;  // distinct radii keep u1+u2 clear of 2s
  cplx f00 = AB(0.0, 0.0);
  cplx du1 = 0.0, du2 = 0.0, d11 = 0.0;
  for (int j = 0; j < u_nodes; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / u_nodes;
    cplx w1 = r1 * cplx(std::cos(th), std::sin(th));
    du1 += AB(w1, 0.0) / w1;
    du2 += AB(0.0, w1) / w1;
  }
  du1 /= static_cast<double>(u_nodes);
  du2 /= static_cast<double>(u_nodes);
  for (int j = 0; j < u_nodes; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / u_nodes;
    cplx w1 = r1 * cplx(std::cos(th), std::sin(th));
    cplx inner = 0.0;
    for (int k = 0; k < u_nodes; ++k) {
      double ph = 2.0 * kPi * (k + 0.5) / u_nodes;
      cplx w2 = r2 * cplx(std::cos(ph), std::sin(ph));
      inner += AB(w1, w2) / w2;
    }
    d11 += inner / (static_cast<double>(u_nodes) * w1);
  }
  d11 /= static_cast<double>(u_nodes);
  return 4.0 * g * g * f00 + 2.0 * g * (du1 + du2) + d11;
}

// ---- nested-contour quadrature of the mollified z-integral ----

namespace {

struct ChainNode {
  int center;  // 0 = origin, 1 = -z1, 2 = -z2, 3 = +z1 (z2 only)
  int sign;    // +1 counterclockwise (left closure), -1 clockwise (right)
};

}  // namespace

double md_quadrature(const std::array<int, 4>& j, double log_L, double scrF_frozen, int nodes) {
  // Exactly homogeneous in log L when scrF is frozen: substituting z -> z/log L
  // rescales the integral by (log L)^{j1+..+j4-4}; quadrature runs at unit scale.
  const double rho[4] = {1.0, 1.0 / 5, 1.0 / 25, 1.0 / 125};
  std::vector<cplx> unit(nodes);
  for (int k = 0; k < nodes; ++k) {
    double th = 2.0 * kPi * (k + 0.5) / nodes;
    unit[k] = cplx(std::cos(th), std::sin(th));
  }
  cplx total = 0.0;
  // branch over z4 and z3 centers in {0, -z1, -z2}; z2/z1 decided by exponents
  for (int c4 = 0; c4 <= 2; ++c4)
    for (int c3 = 0; c3 <= 2; ++c3) {
      int e1 = 1 - (c4 == 1) - (c3 == 1);  // L-exponent bookkeeping
      int e2 = 1 - (c4 == 2) - (c3 == 2);
      int c2, sig2;
      if (e2 >= 0) {
        c2 = 0;
        sig2 = +1;
      } else {
        c2 = 3;  // pole cluster at +z1, closed on the right
        sig2 = -1;
      }
      int e1f = e1 + (c2 == 3 ? e2 : 0);
      if (e1f < 0) continue;  // right closure in z1, no poles there
      cplx branch = 0.0;
      for (int a = 0; a < nodes; ++a) {
        cplx z1 = rho[0] * unit[a];
        cplx w1 = rho[0] * unit[a] / static_cast<double>(nodes);
        cplx acc1 = 0.0;
        for (int b = 0; b < nodes; ++b) {
          cplx z2 = (c2 == 3 ? z1 : cplx(0.0)) + rho[1] * unit[b];
          cplx w2 = rho[1] * unit[b] / static_cast<double>(nodes);
          cplx acc2 = 0.0;
          for (int c = 0; c < nodes; ++c) {
            cplx ctr3 = (c3 == 0) ? cplx(0.0) : (c3 == 1 ? -z1 : -z2);
            cplx z3 = ctr3 + rho[2] * unit[c];
            cplx w3 = rho[2] * unit[c] / static_cast<double>(nodes);
            cplx acc3 = 0.0;
            for (int d = 0; d < nodes; ++d) {
              cplx ctr4 = (c4 == 0) ? cplx(0.0) : (c4 == 1 ? -z1 : -z2);
              cplx z4 = ctr4 + rho[3] * unit[d];
              cplx w4 = rho[3] * unit[d] / static_cast<double>(nodes);
              cplx ig = std::exp(z1 + z2 + z3 + z4) /
                        ((z1 + z3) * (z1 + z4) * (z2 + z3) * (z2 + z4)) /
                        (std::pow(z1, cplx(1.0 + j[0])) * std::pow(z2, cplx(1.0 + j[1])) *
                         std::pow(z3, cplx(1.0 + j[2])) * std::pow(z4, cplx(1.0 + j[3])));
              acc3 += ig * w4;
            }
            acc2 += acc3 * w3;
          }
          acc1 += acc2 * w2;
        }
        branch += acc1 * w1;
      }
      total += static_cast<double>(sig2) * branch;
    }
  int jsum = j[0] + j[1] + j[2] + j[3];
  return 16.0 * scrF_frozen * total.real() * std::pow(log_L, jsum - 4);
}

}  // namespace momentlab
