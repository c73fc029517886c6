#include "momentlab/jet.hpp"

#include "momentlab/arith.hpp"

namespace momentlab {

int Jet::s_valuation() const {
  for (int se = kSMin; se <= kSMax; ++se)
    for (int a = 0; a <= kUDeg; ++a)
      for (int b = 0; b <= kUDeg; ++b)
        if (at(se, a, b) != cplx(0.0)) return se;
  return kSMax + 1;
}

bool Jet::is_zero() const { return s_valuation() > kSMax; }

Jet Jet::operator+(const Jet& o) const {
  Jet r;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  Jet r;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Jet Jet::operator-() const {
  Jet r;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

Jet Jet::operator*(cplx v) const {
  Jet r;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet Jet::operator*(const Jet& o) const { return jet_mul(*this, o); }
Jet Jet::operator/(const Jet& o) const { return jet_div(*this, o); }

Jet Jet::d_s() const {
  if (at(kSMin, 0, 0) != cplx(0.0))
    throw std::domain_error("Jet::d_s: derivative would leave the window");
  Jet r;
  for (int se = kSMin + 1; se <= kSMax; ++se)
    for (int a = 0; a <= kUDeg; ++a)
      for (int b = 0; b <= kUDeg; ++b) r.at(se - 1, a, b) = at(se, a, b) * static_cast<double>(se);
  return r;
}

Jet Jet::u_slice(int a, int b) const {
  Jet r;
  for (int se = kSMin; se <= kSMax; ++se) r.at(se, 0, 0) = at(se, a, b);
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  int va = a.s_valuation(), vb = b.s_valuation();
  if (va > Jet::kSMax || vb > Jet::kSMax) return Jet();
  Jet r;
  for (int s1 = va; s1 <= Jet::kSMax; ++s1)
    for (int a1 = 0; a1 <= Jet::kUDeg; ++a1)
      for (int b1 = 0; b1 <= Jet::kUDeg; ++b1) {
        cplx ca = a.at(s1, a1, b1);
        if (ca == cplx(0.0)) continue;
        for (int s2 = vb; s2 <= Jet::kSMax; ++s2) {
          int se = s1 + s2;
          if (se > Jet::kSMax) break;
          for (int a2 = 0; a2 + a1 <= Jet::kUDeg; ++a2)
            for (int b2 = 0; b2 + b1 <= Jet::kUDeg; ++b2) {
              cplx cb = b.at(s2, a2, b2);
              if (cb == cplx(0.0)) continue;
              // u-admissible contribution below the window: genuine underflow
              if (se < Jet::kSMin) throw std::domain_error("jet_mul: window underflow");
              r.at(se, a1 + a2, b1 + b2) += ca * cb;
            }
        }
      }
  return r;
}

namespace {

// inverse of an s-only Laurent series: b = c s^v (1 + t), |t| nilpotent on window
Jet invert_s_series(const Jet& b0) {
  int v = b0.s_valuation();
  if (v > Jet::kSMax) throw std::domain_error("jet_div: division by zero jet");
  cplx lead = b0.at(v, 0, 0);
  if (lead == cplx(0.0))
    throw std::domain_error("jet_div: leading u-constant coefficient vanishes");
  // normalized tail t(s): b0 = lead * s^v * (1 + t), deg(t) >= 1
  Jet t;
  for (int se = v + 1; se <= Jet::kSMax; ++se) t.at(se - v, 0, 0) = b0.at(se, 0, 0) / lead;
  // geometric series sum_{k} (-t)^k, terminates since t has valuation >= 1
  Jet inv = Jet::constant(1.0);
  Jet pw = Jet::constant(1.0);
  for (int k = 1; k <= Jet::kSMax; ++k) {
    pw = jet_mul(pw, t);
    if (pw.is_zero()) break;
    if (k % 2 == 1)
      inv = inv - pw;
    else
      inv = inv + pw;
  }
  // multiply by lead^-1 s^-v
  if (-v < Jet::kSMin) throw std::domain_error("jet_div: window underflow");
  return jet_mul(inv, Jet::s_power(-v, 1.0 / lead));
}

}  // namespace

Jet jet_div(const Jet& a, const Jet& b) {
  // split b = b0(s) + b_plus with b_plus carrying all u-degree >= 1 terms;
  // 1/b = (1/b0) sum_k (-r)^k with r = b_plus/b0. Every monomial of r has
  // total u-degree >= 1 and the window keeps total degree <= 4, so r^5 = 0.
  Jet b0 = b.u_slice(0, 0);
  Jet inv0 = invert_s_series(b0);
  Jet b_plus = b - b0;
  Jet r = jet_mul(b_plus, inv0);
  Jet inv = Jet::constant(1.0);
  Jet pw = Jet::constant(1.0);
  for (int k = 1; k <= 4; ++k) {
    pw = jet_mul(pw, r);
    if (pw.is_zero()) break;
    if (k % 2 == 1)
      inv = inv - pw;
    else
      inv = inv + pw;
  }
  return jet_mul(jet_mul(a, inv), inv0);
}

Jet jet_exp(const Jet& a) {
  if (a.s_valuation() < 0) throw std::domain_error("jet_exp: pole under exp");
  cplx c0 = a.at(0, 0, 0);
  Jet n = a - Jet::constant(c0);
  Jet sum = Jet::constant(1.0);
  Jet pw = Jet::constant(1.0);
  double fact = 1.0;
  for (int k = 1; k <= Jet::kSMax + 2 * Jet::kUDeg; ++k) {
    pw = jet_mul(pw, n);
    if (pw.is_zero()) break;
    fact *= k;
    sum += pw * cplx(1.0 / fact);
  }
  return sum * std::exp(c0);
}

Jet jet_pow_real(double base, const Jet& expo) {
  if (base <= 0) throw std::domain_error("jet_pow_real: base must be positive");
  return jet_exp(expo * cplx(std::log(base)));
}

Jet jet_pow(const Jet& a, int n) {
  if (n < 0) throw std::domain_error("jet_pow: negative power");
  Jet r = Jet::constant(1.0);
  for (int i = 0; i < n; ++i) r = jet_mul(r, a);
  return r;
}

cplx extract(const Jet& a, ExtractKind kind, int se, int e1, int e2) {
  switch (kind) {
    case ExtractKind::residue_in_s:
      return a.coefficient(-1, 0, 0);
    case ExtractKind::constant_in_s:
      return a.coefficient(0, 0, 0);
    case ExtractKind::coefficient:
      return a.coefficient(se, e1, e2);
  }
  throw std::logic_error("extract: bad kind");
}

Jet apply_d_gamma(const Jet& a) {
  double g = Constants::euler_gamma();
  Jet f0 = a.u_slice(0, 0);
  Jet f1 = a.u_slice(1, 0) + a.u_slice(0, 1);
  Jet f2 = a.u_slice(1, 1);
  return f0 * cplx(4.0 * g * g) + f1 * cplx(2.0 * g) + f2;
}

Jet apply_d_q4(const Jet& a, double log_q) {
  auto ds2 = [](const Jet& j) { return j.coefficient(2, 0, 0) * 2.0; };
  cplx v = a.coefficient(4, 0, 0);  // (1/4!) d_s^4 = 4! coeff / 4!
  v += log_q * log_q * ds2(a.u_slice(0, 0));
  v += log_q * (ds2(a.u_slice(1, 0)) + ds2(a.u_slice(0, 1)));
  v += ds2(a.u_slice(1, 1));
  return Jet::constant(v);
}

}  // namespace momentlab
