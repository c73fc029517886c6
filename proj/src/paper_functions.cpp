#include "momentlab/paper_functions.hpp"

#include <array>
#include <cmath>

#include "momentlab/arith.hpp"
#include "momentlab/specfun.hpp"

namespace momentlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<std::pair<std::uint64_t, int>> cubefree_factors(std::uint64_t ell, const char* who) {
  Factorization f = factorize(ell);
  if (!f.cubefree()) throw std::domain_error(std::string(who) + ": argument must be cubefree");
  return f.factors;
}
}  // namespace

Jet QWeight::jet() const {
  Jet s = Jet::variable_s();
  return jet_exp(jet_mul(s, s) * cplx(c));
}

Jet f_value(std::uint64_t ell, const Jet& s) {
  Jet out = Jet::constant(1.0);
  for (auto& [p, e] : cubefree_factors(ell, "f_value")) {
    Jet x = jet_pow_real(static_cast<double>(p), -s);
    if (e == 1)
      out = out * jet_div(Jet::constant(2.0), Jet::constant(1.0) + x);
    else
      out = out * jet_div(Jet::constant(3.0) - x, Jet::constant(1.0) + x);
  }
  return out;
}

cplx f_value_pt(std::uint64_t ell, cplx s) {
  cplx out = 1.0;
  for (auto& [p, e] : cubefree_factors(ell, "f_value")) {
    cplx x = std::pow(cplx(static_cast<double>(p)), -s);
    out *= (e == 1) ? 2.0 / (1.0 + x) : (3.0 - x) / (1.0 + x);
  }
  return out;
}

cplx mu2(std::uint64_t n, cplx nu) {
  cplx out = 1.0;
  for (auto& [p, e] : factorize(n).factors) {
    cplx pv = std::pow(cplx(static_cast<double>(p)), nu);
    if (e == 1)
      out *= -1.0 - pv;
    else if (e == 2)
      out *= pv;
    else
      return 0.0;
  }
  return out;
}

namespace {

// prime-power local values of delta; x^t stands for p^t
template <typename V, typename PowFn>
V delta_prime(PowFn pw, const V& one, int e) {
  // pw(cs, cu1, cu2, c0) = p^{cs*s + cu1*u1 + cu2*u2 + c0}
  if (e == 1) {
    V a = pw(-1, 0, -1, 0) * (one - pw(0, -2, 0, -1));
    V b = pw(1, -1, 0, 0) * (one - pw(0, 0, -2, -1));
    V den = one - pw(0, -2, -2, -2);
    return (a + b) / den;
  }
  V a = pw(-2, 0, -2, 0) * (one - pw(0, -2, 0, -1));
  V b = pw(2, -2, 0, 0) * (one - pw(0, 0, -2, -1));
  V c = pw(0, -1, -1, 0) * (one + pw(0, -2, -2, 0) - pw(0, -2, 0, -1) - pw(0, 0, -2, -1));
  V den = one - pw(0, -2, -2, -2);
  return (a + b + c) / den;
}

}  // namespace

Jet delta_value(std::uint64_t ell, const Jet& s, const Jet& u1, const Jet& u2) {
  Jet out = Jet::constant(1.0);
  for (auto& [p, e] : cubefree_factors(ell, "delta_value")) {
    double lp = std::log(static_cast<double>(p));
    auto pw = [&](int cs, int cu1, int cu2, int c0) {
      Jet expo = s * cplx(static_cast<double>(cs)) + u1 * cplx(static_cast<double>(cu1)) +
                 u2 * cplx(static_cast<double>(cu2)) + Jet::constant(static_cast<double>(c0));
      return jet_exp(expo * cplx(lp));
    };
    out = out * delta_prime<Jet>(pw, Jet::constant(1.0), e);
  }
  return out;
}

cplx delta_value_pt(std::uint64_t ell, cplx s, cplx u1, cplx u2) {
  cplx out = 1.0;
  for (auto& [p, e] : cubefree_factors(ell, "delta_value")) {
    double lp = std::log(static_cast<double>(p));
    auto pw = [&](int cs, int cu1, int cu2, int c0) {
      return std::exp((s * static_cast<double>(cs) + u1 * static_cast<double>(cu1) +
                       u2 * static_cast<double>(cu2) + static_cast<double>(c0)) *
                      lp);
    };
    out *= delta_prime<cplx>(pw, cplx(1.0), e);
  }
  return out;
}

Jet H_jet(Parity parity, HRoute route) {
  const cplx h = 0.5;
  if (route == HRoute::gamma_identity) {
    if (parity.kappa == 0) {
      // sqrt(pi) G((2s-u1-u2)/2)/G((1+u1+u2-2s)/2)
      //   * G((1/2+u1-s)/2) G((1/2+u2-s)/2) / (G((1/2-u1+s)/2) G((1/2-u2+s)/2))
      Jet num = gamma_jet(0.0, 1.0, -h, -h);
      num = num * gamma_jet(0.25, -h, h, 0.0);
      num = num * gamma_jet(0.25, -h, 0.0, h);
      Jet den = gamma_jet(0.5, -1.0, h, h);
      den = den * gamma_jet(0.25, h, -h, 0.0);
      den = den * gamma_jet(0.25, h, 0.0, -h);
      return jet_div(num, den) * cplx(std::sqrt(kPi));
    }
    Jet num = gamma_jet(0.0, 1.0, -h, -h);
    num = num * gamma_jet(0.75, -h, h, 0.0);
    num = num * gamma_jet(0.75, -h, 0.0, h);
    Jet den = gamma_jet(0.5, -1.0, h, h);
    den = den * gamma_jet(0.75, h, -h, 0.0);
    den = den * gamma_jet(0.75, h, 0.0, -h);
    return jet_div(num, den) * cplx(std::sqrt(kPi));
  }
  // definition route: H1(s,0,0,u1,u2) + H2(s,0,0,u1,u2)
  // = G(2s-u1-u2)[G(1/2-s+u2)/G(1/2+s-u1) + G(1/2-s+u1)/G(1/2+s-u2)]
  //   +- G(1/2-s+u1)G(1/2-s+u2)/G(1-2s+u1+u2)   (+ even, - odd)
  Jet g_pole = gamma_jet(0.0, 2.0, -1.0, -1.0);
  Jet t1 = jet_div(gamma_jet(0.5, -1.0, 0.0, 1.0), gamma_jet(0.5, 1.0, -1.0, 0.0));
  Jet t2 = jet_div(gamma_jet(0.5, -1.0, 1.0, 0.0), gamma_jet(0.5, 1.0, 0.0, -1.0));
  Jet first = g_pole * (t1 + t2);
  Jet dual = jet_div(gamma_jet(0.5, -1.0, 1.0, 0.0) * gamma_jet(0.5, -1.0, 0.0, 1.0),
                     gamma_jet(1.0, -2.0, 1.0, 1.0));
  return (parity.kappa == 0) ? first + dual : first - dual;
}

cplx H_pt(Parity parity, HRoute route, cplx s, cplx u1, cplx u2) {
  auto G = [](cplx z) { return gamma_fn(z); };
  if (route == HRoute::gamma_identity) {
    if (parity.kappa == 0) {
      return std::sqrt(kPi) * G((2.0 * s - u1 - u2) / 2.0) / G((1.0 + u1 + u2 - 2.0 * s) / 2.0) *
             G((0.5 + u1 - s) / 2.0) * G((0.5 + u2 - s) / 2.0) /
             (G((0.5 - u1 + s) / 2.0) * G((0.5 - u2 + s) / 2.0));
    }
    return std::sqrt(kPi) * G((2.0 * s - u1 - u2) / 2.0) / G((1.0 - 2.0 * s + u1 + u2) / 2.0) *
           G((1.5 - s + u1) / 2.0) * G((1.5 - s + u2) / 2.0) /
           (G((1.5 + s - u1) / 2.0) * G((1.5 + s - u2) / 2.0));
  }
  cplx first = G(2.0 * s - u1 - u2) *
               (G(0.5 - s + u2) / G(0.5 + s - u1) + G(0.5 - s + u1) / G(0.5 + s - u2));
  cplx dual = G(0.5 - s + u1) * G(0.5 - s + u2) / G(1.0 - 2.0 * s + u1 + u2);
  return (parity.kappa == 0) ? first + dual : first - dual;
}

Jet G_jet(Parity parity, const QWeight& q_weight) {
  cplx a = (parity.kappa == 0) ? 0.25 : 0.75;
  Jet g = gamma_jet(a, 0.5, 0.0, 0.0);
  Jet ratio = jet_div(g, Jet::constant(gamma_fn(a)));
  Jet out = jet_pow(ratio, 4);
  Jet s = Jet::variable_s();
  out = out * jet_pow_real(kPi, -(s + s));
  return out * q_weight.jet();
}

cplx G_pt(Parity parity, const QWeight& q_weight, cplx s) {
  cplx a = (parity.kappa == 0) ? 0.25 : 0.75;
  cplx r = gamma_fn((a * 2.0 + s) / 2.0) / gamma_fn(a);
  return std::pow(cplx(kPi), -2.0 * s) * r * r * r * r * q_weight.eval(s);
}

Jet scrA_jet(Parity parity, const QWeight& q_weight) {
  // scrA = G * [H*(2s-u1-u2)] * zeta(2s-u1-u2) * [(2s+u1+u2) zeta(1+2s+u1+u2)]
  //        / zeta(2+2u1+2u2), entire near 0
  Jet G = G_jet(parity, q_weight);
  Jet w_minus = Jet::linear(0.0, 2.0, -1.0, -1.0);
  Jet Hw = H_jet(parity, HRoute::gamma_identity) * w_minus;
  Jet z_minus = zeta_taylor_jet(0.0, 2.0, -1.0, -1.0);
  Jet z_plus_reg = zeta_one_jet_regularized(2.0, 1.0, 1.0);
  Jet z_two = zeta_taylor_jet(2.0, 0.0, 2.0, 2.0);
  return jet_div(G * Hw * z_minus * z_plus_reg, z_two);
}

Jet A_jet(std::uint64_t q, Parity parity, const QWeight& q_weight, ARoute route) {
  Jet qf = jet_pow_real(static_cast<double>(q), Jet::variable_u1() + Jet::variable_u2());
  if (route == ARoute::direct) {
    Jet G = G_jet(parity, q_weight);
    Jet H = H_jet(parity, HRoute::gamma_identity);
    Jet z_minus = zeta_taylor_jet(0.0, 2.0, -1.0, -1.0);
    Jet z_plus = zeta_one_jet(2.0, 1.0, 1.0);
    Jet z_two = zeta_taylor_jet(2.0, 0.0, 2.0, 2.0);
    return jet_div(G * H * z_minus * z_plus, z_two) * qf;
  }
  Jet scrA = scrA_jet(parity, q_weight);
  Jet den = jet_mul(Jet::linear(0.0, 2.0, 1.0, 1.0), Jet::linear(0.0, 2.0, -1.0, -1.0));
  return jet_div(scrA, den) * qf;
}

cplx A_pt(std::uint64_t q, Parity parity, const QWeight& q_weight, cplx s, cplx u1, cplx u2) {
  return G_pt(parity, q_weight, s) * H_pt(parity, HRoute::gamma_identity, s, u1, u2) *
         zeta_value(2.0 * s - u1 - u2) * zeta_value(1.0 + 2.0 * s + u1 + u2) /
         zeta_value(2.0 + 2.0 * u1 + 2.0 * u2) *
         std::pow(cplx(static_cast<double>(q)), u1 + u2);
}

Jet B_jet(std::uint64_t ell1, std::uint64_t ell2) {
  if (gcd_u64(ell1, ell2) != 1) throw std::domain_error("B_jet: ell1, ell2 must be coprime");
  Jet s = Jet::variable_s(), u1 = Jet::variable_u1(), u2 = Jet::variable_u2();
  Jet d1 = delta_value(ell1, s, u1, u2);
  Jet d2 = delta_value(ell2, s, u2, u1);  // u-swap for ell2
  return d1 * d2 * cplx(1.0 / std::sqrt(static_cast<double>(ell1) * static_cast<double>(ell2)));
}

cplx B_pt(std::uint64_t ell1, std::uint64_t ell2, cplx s, cplx u1, cplx u2) {
  return delta_value_pt(ell1, s, u1, u2) * delta_value_pt(ell2, s, u2, u1) /
         std::sqrt(static_cast<double>(ell1) * static_cast<double>(ell2));
}

BDerivatives B_derivatives(std::uint64_t ell1, std::uint64_t ell2) {
  Jet B = B_jet(ell1, ell2);
  BDerivatives out;
  out.B0 = B.u_slice(0, 0);
  out.B1 = B.u_slice(1, 0) + B.u_slice(0, 1);
  out.B2 = B.u_slice(1, 1);
  return out;
}

Jet L_closed(std::uint64_t ell1, std::uint64_t ell2) {
  if (gcd_u64(ell1, ell2) != 1) throw std::domain_error("L_closed: ell1, ell2 must be coprime");
  Jet s = Jet::variable_s(), u1 = Jet::variable_u1(), u2 = Jet::variable_u2();
  Jet num = zeta_one_jet(2.0, 1.0, 1.0);
  Jet den = zeta_taylor_jet(2.0, 0.0, 2.0, 2.0);
  return jet_div(num, den) * delta_value(ell1, s, u1, u2) * delta_value(ell2, s, u2, u1);
}

cplx L_closed_pt(std::uint64_t ell1, std::uint64_t ell2, cplx s, cplx u1, cplx u2) {
  return zeta_value(1.0 + 2.0 * s + u1 + u2) / zeta_value(2.0 + 2.0 * u1 + 2.0 * u2) *
         delta_value_pt(ell1, s, u1, u2) * delta_value_pt(ell2, s, u2, u1);
}

cplx L_brute(cplx s, cplx u1, cplx u2, std::uint64_t ell1, std::uint64_t ell2,
             std::uint64_t cutoff) {
  cplx t = 1.0 + 2.0 * s + u1 + u2;
  if (t.real() <= 1.0) throw std::domain_error("L_brute: outside the convergence region");
  if (cutoff > 10'000'000) throw std::domain_error("L_brute: cutoff above 1e7");
  std::uint64_t P = ell1 * ell2;  // gcd weights are a-b periodic with period P
  // complete b-sums: for each residue r mod P,
  //   sum_{b == r (P)} b^-t = P^-t zeta(t, r/P)   (r = P stands for the 0 class)
  std::vector<cplx> bclass(P + 1);
  for (std::uint64_t r = 1; r <= P; ++r)
    bclass[r] = std::pow(cplx(static_cast<double>(P)), -t) *
                hurwitz_zeta(t, static_cast<double>(r) / static_cast<double>(P));
  // gcd powers tabulated per residue of ab mod P
  std::vector<cplx> wgt(P);
  for (std::uint64_t r = 0; r < P; ++r) {
    double g1 = static_cast<double>(gcd_u64(ell1, r == 0 ? P : r));
    double g2 = static_cast<double>(gcd_u64(ell2, r == 0 ? P : r));
    // gcd(l, x) depends on x mod l only; r == 0 stands for multiples of P
    wgt[r] = std::pow(cplx(g1), 1.0 + 2.0 * u1) * std::pow(cplx(g2), 1.0 + 2.0 * u2);
  }
  cplx acc = 0.0;
  cplx ex_a = -(2.0 + 2.0 * u1 + 2.0 * u2);
  auto mu_tab = mobius_sieve(static_cast<std::uint32_t>(cutoff));
  for (std::uint64_t a = 1; a <= cutoff; ++a) {
    int mu = mu_tab[a];
    if (mu == 0) continue;
    cplx ta = 0.0;
    for (std::uint64_t r = 1; r <= P; ++r) {
      std::uint64_t ab = (a * (r % P)) % P;
      ta += wgt[ab] * bclass[r];
    }
    acc += static_cast<double>(mu) * std::pow(cplx(static_cast<double>(a)), ex_a) * ta;
  }
  cplx norm = std::pow(cplx(static_cast<double>(ell1)), s - u1) *
              std::pow(cplx(static_cast<double>(ell2)), s - u2);
  return acc * norm;
}

// ---- Euler products ----

double diag_local_factor(std::uint64_t p) {
  // L_p(0,...,0) = 2 sum_{0<=d+l<=2} mu2(p^{l+d}) mu2(p^d) f(p^l;1) / p^{d+l}
  //                - sum_{0<=d<=2} mu2(p^d)^2 / p^d
  auto m2 = [&](int e) { return mu2(e == 0 ? 1 : (e == 1 ? p : p * p), 0.0).real(); };
  auto fp = [&](int e) {
    return e == 0 ? 1.0 : f_value_pt(e == 1 ? p : p * p, 1.0).real();
  };
  double pd = static_cast<double>(p);
  double acc = 0.0;
  for (int d = 0; d <= 2; ++d)
    for (int l = 0; d + l <= 2; ++l) acc += 2.0 * m2(l + d) * m2(d) * fp(l) / std::pow(pd, d + l);
  for (int d = 0; d <= 2; ++d) acc -= m2(d) * m2(d) / std::pow(pd, d);
  return acc;
}

double offdiag_local_factor(std::uint64_t p) {
  // same shape with delta(p^l; 0,0,0) in place of f(p^l; 1)
  auto m2 = [&](int e) { return mu2(e == 0 ? 1 : (e == 1 ? p : p * p), 0.0).real(); };
  auto dl = [&](int e) {
    return e == 0 ? 1.0 : delta_value_pt(e == 1 ? p : p * p, 0.0, 0.0, 0.0).real();
  };
  double pd = static_cast<double>(p);
  double acc = 0.0;
  for (int d = 0; d <= 2; ++d)
    for (int l = 0; d + l <= 2; ++l) acc += 2.0 * m2(l + d) * m2(d) * dl(l) / std::pow(pd, d + l);
  for (int d = 0; d <= 2; ++d) acc -= m2(d) * m2(d) / std::pow(pd, d);
  return acc;
}

EulerProductResult euler_product(EulerProductKind kind, std::uint64_t p_max) {
  if (p_max < 100) throw std::domain_error("euler_product: p_max must be >= 100");
  EulerProductResult out;
  out.p_max = p_max;
  double zeta2 = kPi * kPi / 6.0;
  double log_acc = 0.0;
  double last_log_factor = 0.0;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(p_max))) {
    double f;
    if (kind == EulerProductKind::diag_F) {
      double inv4 = std::pow(1.0 - 1.0 / static_cast<double>(p), -4.0);
      f = diag_local_factor(p) * inv4;
    } else {
      double pd = p;
      f = 1.0 + 2.0 * (1.0 + 1.0 / pd) / (pd * pd * std::pow(1.0 - 1.0 / pd, 3.0));
    }
    log_acc += std::log(f);
    last_log_factor = std::abs(std::log(f));
  }
  out.value = std::exp(log_acc);
  if (kind == EulerProductKind::offdiag_F) out.value *= zeta2;
  // |log tail| <= C sum_{p > p_max} p^-2 <= C / (p_max - 1), C from the last factor
  double C = last_log_factor * static_cast<double>(p_max) * static_cast<double>(p_max) * 2.0;
  out.tail_estimate = C / static_cast<double>(p_max - 1);
  return out;
}

EulerProductResult mollified_L_check(const std::array<cplx, 4>& z, std::uint64_t p_max) {
  if (p_max < 100) throw std::domain_error("mollified_L_check: p_max must be >= 100");
  EulerProductResult out;
  out.p_max = p_max;
  cplx log_acc = 0.0;
  double last = 0.0;
  for (std::uint32_t pu : primes_up_to(static_cast<std::uint32_t>(p_max))) {
    cplx p(static_cast<double>(pu), 0.0);
    auto pz = [&](cplx e) { return std::pow(p, e); };
    auto m2a = [&](int e) { return mu2(e == 0 ? 1 : (e == 1 ? pu : static_cast<std::uint64_t>(pu) * pu), z[0] - z[1]); };
    auto m2b = [&](int e) { return mu2(e == 0 ? 1 : (e == 1 ? pu : static_cast<std::uint64_t>(pu) * pu), z[2] - z[3]); };
    auto fp = [&](int e) { return e == 0 ? cplx(1.0) : f_value_pt(e == 1 ? pu : static_cast<std::uint64_t>(pu) * pu, 1.0); };
    // local sum over d, (l1, l2) with l1 l2 = 0 and d + li <= 2
    cplx loc = 0.0;
    for (int d = 0; d <= 2; ++d)
      for (int l1 = 0; d + l1 <= 2; ++l1)
        for (int l2 = 0; d + l2 <= 2; ++l2) {
          if (l1 != 0 && l2 != 0) continue;
          cplx ex = -static_cast<double>(d) * (1.0 + z[0] + z[2]) -
                    static_cast<double>(l1) * (1.0 + z[0]) - static_cast<double>(l2) * (1.0 + z[2]);
          loc += m2a(d + l1) * m2b(d + l2) * fp(l1) * fp(l2) * pz(ex);
        }
    // divide by the zeta-factor skeleton of Eq22 at s=0
    cplx skel = 1.0;
    skel *= (1.0 - pz(-(1.0 + z[0] + z[2]))) * (1.0 - pz(-(1.0 + z[0] + z[3])));
    skel *= (1.0 - pz(-(1.0 + z[1] + z[2]))) * (1.0 - pz(-(1.0 + z[1] + z[3])));
    cplx den = 1.0;
    for (int i = 0; i < 4; ++i) den *= (1.0 - pz(-(1.0 + z[i])));
    cplx factor = loc * skel / (den * den);
    log_acc += std::log(factor);
    last = std::abs(std::log(factor));
  }
  out.value = std::exp(log_acc).real();
  double C = last * static_cast<double>(p_max) * static_cast<double>(p_max) * 2.0;
  out.tail_estimate = C / static_cast<double>(p_max - 1);
  return out;
}

}  // namespace momentlab
