#include "momentlab/specfun.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "momentlab/arith.hpp"

namespace momentlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos, gamma = 7, kmax = 8 (classical coefficient set)
constexpr double kLanczos[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7};

cplx lanczos_gamma_pos(cplx z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Bernoulli numbers B_2, B_4, ..., B_24
constexpr double kBern2k[12] = {1.0 / 6,       -1.0 / 30,     1.0 / 42,      -1.0 / 30,
                                5.0 / 66,      -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
                                43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

double factorial_d(int n) {
  double v = 1;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}

// frozen Stieltjes constants (Euler-Maclaurin limit oracle, 36 digits)
constexpr double kStieltjes[11] = {
    0.577215664901532860606512090082402431,
    -0.0728158454836767248605863758749013191,
    -0.00969036319287231848453038603521252936,
    0.00205383442030334586616004654275338429,
    0.002325370065467300057468170177526068,
    0.000793323817301062701753334877444444831,
    -0.000238769345430199609872421841908004278,
    -0.000527289567057751046074097505478858282,
    -0.000352123353803039509602052165001208742,
    -0.0000343947744180880481779146237982273906,
    0.000205332814909064794683722289237065303};

// frozen polygamma table psi^(m)(x), m = 0..6, x in {1/4, 1/2, 3/4, 1}
// (convergent-series oracle; see tests for the on-the-fly cross-check)
constexpr double kPolygamma[4][7] = {
    // x = 1/4
    {-4.22745353337626540808953014609668358, 17.197329154507110739271319119335224,
     -129.32773993753692033333796717884399, 1538.78214400918839602279124382903506,
     -24584.375388637933733558227152521959, 491552.513767681292045863987199543856,
     -11796633.6877436916061065207038056123},
    // x = 1/2
    {-1.96351002602142347944097633299875557, 4.93480220054467930941724549993807557,
     -16.8287966442343199955963342611602999, 97.4090910340024372364403326887051112,
     -771.474249826667225190535921924033421, 7691.11354860243549624175554921935919,
     -92203.4579238030232862310879582654157},
    // x = 3/4
    {-1.08586087978647216962688676281718069, 2.54187964767160649839766288041707825,
     -5.30263321633763963143270691043840908, 19.7633125348505997602540791902467232,
     -102.800605815417472538922349047110477, 678.753342874579713608367950495132461,
     -5408.92650309537453105855485236094876},
    // x = 1
    {-0.577215664901532860606512090082402431, 1.64493406684822643647241516664602519,
     -2.40411380631918857079947632302289998, 6.49393940226682914909602217924700742,
     -24.88626612344087823195277167496882, 122.081167438133896765742151574910463,
     -726.011479714984435324654235891853667}};

int polygamma_table_index(cplx z) {
  if (z.imag() != 0.0) return -1;
  double x = z.real();
  if (x == 0.25) return 0;
  if (x == 0.5) return 1;
  if (x == 0.75) return 2;
  if (x == 1.0) return 3;
  return -1;
}

}  // namespace

cplx gamma_fn(cplx z) {
  if (z.real() < 0.5) {
    // reflection; poles at nonpositive integers surface as division by 0
    return kPi / (std::sin(kPi * z) * lanczos_gamma_pos(1.0 - z));
  }
  return lanczos_gamma_pos(z);
}

cplx log_gamma(cplx z) {
  // continuous along the ray arguments we use (never crosses the cut in tests)
  if (z.real() >= 0.5) {
    cplx w = z - 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (w + static_cast<double>(i));
    cplx t = w + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(x);
  }
  return std::log(gamma_fn(z));
}

cplx hurwitz_zeta(cplx z, double x) {
  if (z == cplx(1.0)) throw std::domain_error("hurwitz_zeta: pole at z = 1");
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("hurwitz_zeta: x must lie in (0,1]");
  int n0 = static_cast<int>(40 + 1.5 * std::abs(z.imag()));
  cplx acc = 0.0;
  for (int n = 0; n < n0; ++n) acc += std::pow(cplx(n + x), -z);
  double m = n0 + x;
  acc += std::pow(cplx(m), 1.0 - z) / (z - 1.0);
  acc += 0.5 * std::pow(cplx(m), -z);
  // Euler-Maclaurin tail, B_2 .. B_20
  cplx t = z * std::pow(cplx(m), -z - 1.0);
  for (int j = 1; j <= 10; ++j) {
    acc += kBern2k[j - 1] / factorial_d(2 * j) * t;
    t *= (z + static_cast<double>(2 * j - 1)) * (z + static_cast<double>(2 * j)) / (m * m);
  }
  return acc;
}

cplx zeta_value(cplx z) {
  if (z == cplx(1.0)) throw std::domain_error("zeta_value: pole at z = 1");
  // the Euler-Maclaurin continuation stays accurate down to Re z = -1/2;
  // using it there keeps the reflection factor sin(pi z/2) away from z = 1
  if (z.real() >= -0.5) return hurwitz_zeta(z, 1.0);
  // functional equation zeta(z) = 2^z pi^{z-1} sin(pi z/2) Gamma(1-z) zeta(1-z)
  return std::pow(cplx(2.0), z) * std::pow(cplx(kPi), z - 1.0) * std::sin(kPi * z / 2.0) *
         gamma_fn(1.0 - z) * hurwitz_zeta(1.0 - z, 1.0);
}

cplx digamma(cplx z) {
  int idx = polygamma_table_index(z);
  if (idx >= 0) return kPolygamma[idx][0];
  // recurrence into Re >= 12, then asymptotic series
  cplx acc = 0.0;
  while (z.real() < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx res = std::log(z) - 0.5 / z;
  cplx z2 = 1.0 / (z * z);
  cplx t = z2;
  for (int j = 1; j <= 8; ++j) {
    res -= kBern2k[j - 1] / (2.0 * j) * t;
    t *= z2;
  }
  return res + acc;
}

cplx polygamma(int m, cplx z) {
  if (m < 0) throw std::domain_error("polygamma: order must be >= 0");
  if (m == 0) return digamma(z);
  int idx = polygamma_table_index(z);
  if (idx >= 0 && m <= 6) return kPolygamma[idx][m];
  // recurrence psi^(m)(z) = psi^(m)(z+1) - (-1)^m m!/z^{m+1} into Re >= 14,
  // then the Bernoulli asymptotic series
  cplx acc = 0.0;
  double mfact = factorial_d(m);
  double msign = (m % 2 == 0) ? 1.0 : -1.0;
  while (z.real() < 14.0) {
    acc -= msign * mfact * std::pow(z, cplx(-m - 1.0));
    z += 1.0;
  }
  // psi^(m)(z) ~ (-1)^{m-1} [ (m-1)!/z^m + m!/(2 z^{m+1})
  //              + sum_j B_2j (2j+m-1)!/(2j)! z^{-2j-m} ]
  cplx res = factorial_d(m - 1) * std::pow(z, cplx(-static_cast<double>(m))) +
             0.5 * mfact * std::pow(z, cplx(-m - 1.0));
  for (int j = 1; j <= 10; ++j) {
    res += kBern2k[j - 1] * factorial_d(2 * j + m - 1) / factorial_d(2 * j) *
           std::pow(z, cplx(-2.0 * j - m));
  }
  return -msign * res + acc;
}

double stieltjes_constant(int k) {
  if (k < 0 || k > 10) throw std::out_of_range("stieltjes_constant: k in [0,10]");
  return kStieltjes[k];
}

std::vector<cplx> cauchy_taylor(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                int max_k, int nodes) {
  std::vector<cplx> vals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / nodes;
    vals[j] = f(center + radius * cplx(std::cos(th), std::sin(th)));
  }
  std::vector<cplx> out(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / nodes;
      acc += vals[j] * cplx(std::cos(k * th), -std::sin(k * th));
    }
    out[k] = acc / (static_cast<double>(nodes) * std::pow(radius, k));
  }
  return out;
}

namespace {

// Taylor jet of exp(sum_{k>=1} psi^{(k-1)}(center) w^k / k!) times Gamma(center)
Jet gamma_jet_regular(cplx center, const Jet& w) {
  Jet arg;
  Jet pw = Jet::constant(1.0);
  double fact = 1.0;
  for (int k = 1; k <= 12; ++k) {
    pw = jet_mul(pw, w);
    if (pw.is_zero()) break;
    fact *= k;
    arg += pw * (polygamma(k - 1, center) / fact);
  }
  return jet_exp(arg) * gamma_fn(center);
}

}  // namespace

Jet gamma_jet(cplx center, cplx a, cplx b, cplx c) {
  Jet w = Jet::linear(0.0, a, b, c);
  // nonpositive-integer center: Gamma(z) = Gamma(z + k + 1) / (z (z+1) ... (z+k))
  if (center.imag() == 0.0 && center.real() <= 0.0 &&
      center.real() == std::floor(center.real())) {
    int k = static_cast<int>(-center.real());
    Jet num = gamma_jet_regular(1.0, w);  // Gamma(center + w + k + 1) = Gamma(1 + w)
    Jet den = Jet::constant(1.0);
    for (int j = 0; j <= k; ++j) den = jet_mul(den, w + Jet::constant(center + static_cast<double>(j)));
    return jet_div(num, den);
  }
  return gamma_jet_regular(center, w);
}

Jet zeta_one_jet(cplx a, cplx b, cplx c) {
  Jet w = Jet::linear(0.0, a, b, c);
  Jet reg = zeta_one_jet_regularized(a, b, c);
  return jet_div(reg, w);
}

Jet zeta_one_jet_regularized(cplx a, cplx b, cplx c) {
  Jet w = Jet::linear(0.0, a, b, c);
  // w zeta(1+w) = 1 + sum_{k>=0} (-1)^k g_k w^{k+1} / k!
  Jet out = Jet::constant(1.0);
  Jet pw = Jet::constant(1.0);
  double fact = 1.0;
  double sign = 1.0;
  for (int k = 0; k <= 10; ++k) {
    pw = jet_mul(pw, w);
    if (pw.is_zero()) break;
    if (k > 0) fact *= k;
    out += pw * cplx(sign * kStieltjes[k] / fact);
    sign = -sign;
  }
  return out;
}

Jet zeta_taylor_jet(cplx center, cplx a, cplx b, cplx c) {
  if (center == cplx(1.0)) throw std::domain_error("zeta_taylor_jet: center at the pole");
  double radius = std::min(0.5, 0.5 * std::abs(center - cplx(1.0)));
  auto coeffs = cauchy_taylor([](cplx z) { return zeta_value(z); }, center, radius, 12, 256);
  Jet w = Jet::linear(0.0, a, b, c);
  Jet out;
  Jet pw = Jet::constant(1.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) {
      pw = jet_mul(pw, w);
      if (pw.is_zero()) break;
    }
    out += pw * coeffs[k];
  }
  return out;
}

// ---- Bessel ----

namespace {

double bessel_j0_series(double x) {
  double q = 0.25 * x * x;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k <= 40; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return acc;
}

double bessel_i0_series(double x) {
  double q = 0.25 * x * x;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    acc += term;
    if (term < 1e-18 * acc) break;
  }
  return acc;
}

double bessel_y0_series(double x) {
  double g = Constants::euler_gamma();
  double q = 0.25 * x * x;
  double term = 1.0, acc = 0.0, h = 0.0;
  for (int k = 1; k <= 40; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    h += 1.0 / k;
    acc += -term * h;  // sum (-1)^{k+1} H_k q^k/(k!)^2
    if (std::abs(term) < 1e-18) break;
  }
  return 2.0 / kPi * ((std::log(0.5 * x) + g) * bessel_j0_series(x) + acc);
}

double bessel_k0_series(double x) {
  double g = Constants::euler_gamma();
  double q = 0.25 * x * x;
  double term = 1.0, acc = 0.0, h = 0.0;
  for (int k = 1; k <= 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    h += 1.0 / k;
    acc += term * h;
    if (term * h < 1e-18 * (acc + 1.0)) break;
  }
  return -(std::log(0.5 * x) + g) * bessel_i0_series(x) + acc;
}

// Hankel asymptotics: with a_m(0) = prod_j (0 - (2j-1)^2)/(m! 8^m) the series
// sum i^m a_m x^-m splits into P = 1 - |a_2|/x^2 + ... and
// Q = -|a_1|/x + |a_3|/x^3 - ...
void hankel_pq(double x, double& p, double& q) {
  p = 1.0;
  q = 0.0;
  double a = 1.0;
  double last = 1.0;
  for (int m = 1; m <= 30; ++m) {
    a *= (2.0 * m - 1.0) * (2.0 * m - 1.0) / (8.0 * m);
    double t = a / std::pow(x, m);
    if (t > last) break;  // asymptotic series started diverging
    last = t;
    int r = m % 4;
    if (r == 0)
      p += t;
    else if (r == 1)
      q -= t;
    else if (r == 2)
      p -= t;
    else
      q += t;
    if (t < 1e-18) break;
  }
}

double bessel_j0_asym(double x) {
  double p, q;
  hankel_pq(x, p, q);
  double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_y0_asym(double x) {
  double p, q;
  hankel_pq(x, p, q);
  double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double bessel_k0_asym(double x) {
  double acc = 1.0, term = 1.0, last = 1.0;
  for (int m = 1; m <= 30; ++m) {
    term *= -(2.0 * m - 1.0) * (2.0 * m - 1.0) / (8.0 * m * x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    acc += term;
    if (std::abs(term) < 1e-18) break;
  }
  return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * acc;
}

}  // namespace

double bessel(BesselKind kind, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel: x must be positive");
  switch (kind) {
    case BesselKind::J0:
      return x <= 9.0 ? bessel_j0_series(x) : bessel_j0_asym(x);
    case BesselKind::Y0:
      return x <= 9.0 ? bessel_y0_series(x) : bessel_y0_asym(x);
    case BesselKind::K0:
      return x <= 9.0 ? bessel_k0_series(x) : bessel_k0_asym(x);
  }
  throw std::logic_error("bessel: bad kind");
}

}  // namespace momentlab
