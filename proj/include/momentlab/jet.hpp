#pragma once
#include <array>
#include <complex>
#include <stdexcept>

namespace momentlab {

using cplx = std::complex<double>;

// Truncated Laurent/Taylor series in (s, u1, u2): s-exponents in [-8, 8],
// u-degree <= 2 per u-variable, dense complex coefficients. Arithmetic is
// exact on the retained window; exponents above the caps are discarded,
// products falling below s^-8 raise window_underflow.
class Jet {
 public:
  static constexpr int kSMin = -8;
  static constexpr int kSMax = 8;
  static constexpr int kSSize = kSMax - kSMin + 1;  // 17
  static constexpr int kUDeg = 2;

  Jet() : c_{} {}

  static Jet constant(cplx v) {
    Jet j;
    j.at(0, 0, 0) = v;
    return j;
  }
  static Jet variable_s() {
    Jet j;
    j.at(1, 0, 0) = 1.0;
    return j;
  }
  static Jet variable_u1() {
    Jet j;
    j.at(0, 1, 0) = 1.0;
    return j;
  }
  static Jet variable_u2() {
    Jet j;
    j.at(0, 0, 1) = 1.0;
    return j;
  }
  // c0 + cs*s + cu1*u1 + cu2*u2
  static Jet linear(cplx c0, cplx cs, cplx cu1, cplx cu2) {
    Jet j;
    j.at(0, 0, 0) = c0;
    j.at(1, 0, 0) = cs;
    j.at(0, 1, 0) = cu1;
    j.at(0, 0, 1) = cu2;
    return j;
  }
  // s^k monomial (k may be negative)
  static Jet s_power(int k, cplx v = 1.0) {
    Jet j;
    j.at(k, 0, 0) = v;
    return j;
  }

  cplx& at(int se, int e1, int e2) { return c_[idx(se, e1, e2)]; }
  const cplx& at(int se, int e1, int e2) const { return c_[idx(se, e1, e2)]; }

  // coefficient access with window check
  cplx coefficient(int se, int e1, int e2) const {
    if (se < kSMin || se > kSMax || e1 < 0 || e1 > kUDeg || e2 < 0 || e2 > kUDeg)
      throw std::out_of_range("Jet::coefficient: exponent outside window");
    return at(se, e1, e2);
  }
  cplx residue_in_s() const { return at(-1, 0, 0); }
  cplx constant_in_s() const { return at(0, 0, 0); }

  // smallest s-exponent carrying any nonzero coefficient (kSMax+1 when zero)
  int s_valuation() const;
  bool is_zero() const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator-() const;
  Jet operator*(const Jet& o) const;
  Jet operator/(const Jet& o) const;
  Jet operator*(cplx v) const;
  Jet& operator+=(const Jet& o);

  // derivative in s (exact on the window; the s^kSMin coefficient must be 0)
  Jet d_s() const;
  // coefficient slice in the u-variables, returned as an s-only jet:
  // u_slice(a, b) = jet of the coefficient of u1^a u2^b
  Jet u_slice(int a, int b) const;
  // restriction u1 = u2 = 0
  Jet at_u_zero() const { return u_slice(0, 0); }

  // exp(a); requires s_valuation() >= 0
  friend Jet jet_exp(const Jet& a);

 private:
  static int idx(int se, int e1, int e2) { return ((se - kSMin) * 3 + e1) * 3 + e2; }
  std::array<cplx, kSSize * 3 * 3> c_;
};

inline Jet operator*(cplx v, const Jet& j) { return j * v; }

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_div(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
// base^expo for real base > 0, jet exponent: exp(expo * log(base))
Jet jet_pow_real(double base, const Jet& expo);
// integer power by repeated multiplication (n >= 0)
Jet jet_pow(const Jet& a, int n);

enum class ExtractKind { residue_in_s, constant_in_s, coefficient };
cplx extract(const Jet& a, ExtractKind kind, int se = 0, int e1 = 0, int e2 = 0);

// D_gamma = (d_u1 + 2g)(d_u2 + 2g)|_{u=0} with g the Euler constant:
// returns 4g^2 a|0 + 2g (a_u1 + a_u2)|0 + a_u1u2|0 as an s-jet.
Jet apply_d_gamma(const Jet& a);

// D_q^4 = (1/4!) d_s^4 + log^2(q) d_s^2 + log(q) d_s^2 (d_u1 + d_u2)
//         + d_s^2 d_u1 d_u2, all at s = u = 0; returned as a degree-0 jet.
Jet apply_d_q4(const Jet& a, double log_q);

}  // namespace momentlab
