#include "momentlab/char_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "momentlab/arith.hpp"
#include "momentlab/fft.hpp"
#include "momentlab/specfun.hpp"

namespace momentlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

cplx unit_root(double frac) { return cplx(std::cos(2.0 * kPi * frac), std::sin(2.0 * kPi * frac)); }
}  // namespace

CharacterTable character_table(std::uint64_t q) {
  if (q < 3 || q > 100'000 || !is_prime(q))
    throw std::domain_error("character_table: q must be a prime in [3, 1e5]");
  CharacterTable t;
  t.q = q;
  t.order = q - 1;
  // primitive root by trial
  auto fac = factorize(q - 1).factors;
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (auto& [p, e] : fac)
      if (mod_pow(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      t.g = g;
      break;
    }
  }
  t.dlog.assign(q - 1, 0);
  std::uint64_t x = 1;
  for (std::uint64_t m = 0; m < q - 1; ++m) {
    t.dlog[x - 1] = static_cast<std::uint32_t>(m);
    x = (x * t.g) % q;
  }
  t.roots.resize(q - 1);
  for (std::uint64_t j = 0; j < q - 1; ++j)
    t.roots[j] = unit_root(static_cast<double>(j) / static_cast<double>(q - 1));
  return t;
}

// ---- V weight ----

VWeight::VWeight(Parity parity, const QWeight& qw, double step, double height)
    : parity_(parity), qw_(qw), step_(step), height_(height) {
  int n = static_cast<int>(std::round(height / step));
  nodes_.reserve(2 * n + 1);
  weights_.reserve(2 * n + 1);
  // quadrature weights on Re s = 2 (x >= 1) and on Re s = -1/4 (x < 1, after
  // extracting the residue 1 at s = 0; the shift dodges the x^{-2} blowup)
  for (int j = -n; j <= n; ++j) {
    double w = (j == -n || j == n) ? 0.5 : 1.0;
    cplx s2(2.0, j * step);
    nodes_.push_back(s2);
    weights_.push_back(G_pt(parity_, qw_, s2) / s2 * (w * step / (2.0 * kPi)));
  }
  nodes_shift_.reserve(2 * n + 1);
  weights_shift_.reserve(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    double w = (j == -n || j == n) ? 0.5 : 1.0;
    cplx sm(-0.25, j * step);
    nodes_shift_.push_back(sm);
    weights_shift_.push_back(G_pt(parity_, qw_, sm) / sm * (w * step / (2.0 * kPi)));
  }
  // Chebyshev fit of V over t = log x in [lo, hi]
  lo_ = -34.0;
  hi_ = std::log(75.0);
  const int m = 192;
  std::vector<double> vals(m);
  for (int k = 0; k < m; ++k) {
    double th = kPi * (k + 0.5) / m;
    double t = 0.5 * (lo_ + hi_) + 0.5 * (hi_ - lo_) * std::cos(th);
    vals[k] = direct(std::exp(t));
  }
  cheb_.assign(m, 0.0);
  for (int c = 0; c < m; ++c) {
    double acc = 0;
    for (int k = 0; k < m; ++k) acc += vals[k] * std::cos(kPi * c * (k + 0.5) / m);
    cheb_[c] = 2.0 / m * acc;
  }
  cheb_[0] *= 0.5;
}

double VWeight::direct(double x) const {
  cplx acc = 0.0;
  double lx = std::log(x);
  if (x >= 1.0) {
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      acc += weights_[j] * std::exp(-nodes_[j] * lx);
    return acc.real();
  }
  for (std::size_t j = 0; j < nodes_shift_.size(); ++j)
    acc += weights_shift_[j] * std::exp(-nodes_shift_[j] * lx);
  return 1.0 + acc.real();
}

double VWeight::operator()(double x) const {
  double t = std::log(x);
  if (t <= lo_) t = lo_;
  if (t > hi_) return direct(x);
  // Clenshaw
  double u = (2.0 * t - lo_ - hi_) / (hi_ - lo_);
  double b1 = 0.0, b2 = 0.0;
  for (int c = static_cast<int>(cheb_.size()) - 1; c >= 1; --c) {
    double b0 = 2.0 * u * b1 - b2 + cheb_[c];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + cheb_[0];
}

double VWeight::self_check() const {
  VWeight fine(parity_, qw_, step_ / 2.0, height_ * 2.0);
  double worst = 0.0;
  for (double x : {1e-8, 1e-3, 0.1, 1.0, 3.0, 10.0, 30.0, 60.0})
    worst = std::max(worst, std::abs(fine.direct(x) - direct(x)));
  return worst;
}

// ---- central values ----

std::vector<cplx> central_values_all(const CharacterTable& table, DftPath path, int threads) {
  const std::uint64_t q = table.q;
  const std::size_t n = q - 1;
  // Hurwitz vector in DFT order: x[m] = zeta(1/2, (g^m mod q)/q)
  std::vector<cplx> x(n);
  std::vector<std::uint64_t> pw(n);
  std::uint64_t a = 1;
  for (std::size_t m = 0; m < n; ++m) {
    pw[m] = a;
    a = (a * table.g) % q;
  }
  auto hw = [&](std::size_t m0, std::size_t m1) {
    for (std::size_t m = m0; m < m1; ++m)
      x[m] = hurwitz_zeta(cplx(0.5), static_cast<double>(pw[m]) / static_cast<double>(q));
  };
  if (threads <= 1) {
    hw(0, n);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t m0 = t * chunk, m1 = std::min(n, m0 + chunk);
      if (m0 >= m1) break;
      pool.emplace_back(hw, m0, m1);
    }
    for (auto& th : pool) th.join();
  }
  std::vector<cplx> X = (path == DftPath::naive) ? dft_naive(x, +1, threads)
                                                 : dft_bluestein(x, +1);
  double norm = 1.0 / std::sqrt(static_cast<double>(q));
  for (auto& v : X) v *= norm;
  return X;
}

cplx gauss_sum(const CharacterTable& table, std::uint64_t k) {
  if (k == 0 || k >= table.order) throw std::domain_error("gauss_sum: k must be a nontrivial index");
  cplx acc = 0.0;
  for (std::uint64_t a = 1; a < table.q; ++a)
    acc += table.chi(k, a) * unit_root(static_cast<double>(a) / static_cast<double>(table.q));
  return acc / std::sqrt(static_cast<double>(table.q));
}

double twisted_fourth_moment_brute(std::uint64_t ell1, std::uint64_t ell2,
                                   const CharacterTable& table, const std::vector<cplx>& central,
                                   ParityMode mode) {
  const std::uint64_t q = table.q;
  if (gcd_u64(ell1 * ell2, q) != 1)
    throw std::domain_error("twisted_fourth_moment_brute: (ell1 ell2, q) != 1");
  cplx acc = 0.0;
  for (std::uint64_t k = 1; k < q - 1; ++k) {
    if (mode == ParityMode::even_only && k % 2 != 0) continue;
    if (mode == ParityMode::odd_only && k % 2 != 1) continue;
    double l2 = std::norm(central[k]);
    acc += l2 * l2 * table.chi(k, ell1 % q) * std::conj(table.chi(k, ell2 % q));
  }
  double scale = (mode == ParityMode::all_primitive) ? 1.0 : 2.0;
  acc *= scale / static_cast<double>(q - 2);
  if (std::abs(acc.imag()) > 1e-9 * (std::abs(acc.real()) + 1.0))
    throw std::runtime_error("twisted_fourth_moment_brute: imaginary part failed to cancel");
  return acc.real();
}

// ---- AFE ----

std::vector<AfeResult> afe_check_all(const CharacterTable& table, const QWeight& qw,
                                     const std::vector<cplx>& central) {
  const std::uint64_t q = table.q;
  double lq = std::log(static_cast<double>(q));
  // the truncation threshold keeps the smooth tail below the double-precision
  // floor: V decays like exp(-(log x pi^2)^2/4) only, so the nm/q^2 range must
  // reach a few hundred
  std::uint64_t cutoff = static_cast<std::uint64_t>(
      static_cast<double>(q) * static_cast<double>(q) * std::max(lq * lq, 400.0));
  auto tau = tau_sieve(static_cast<std::uint32_t>(cutoff));
  // inverse table mod q
  std::vector<std::uint64_t> inv(q);
  inv[1] = 1;
  for (std::uint64_t i = 2; i < q; ++i) inv[i] = (q - (q / i) * inv[q % i] % q) % q;

  std::vector<AfeResult> out(q - 1);
  for (Parity parity : {kEven, kOdd}) {
    VWeight V(parity, qw);
    double qq = static_cast<double>(q) * static_cast<double>(q);
    // per-product weight V(k/q^2)/sqrt(k), evaluated once
    std::vector<double> wk(cutoff + 1, 0.0);
    for (std::uint64_t k = 1; k <= cutoff; ++k)
      wk[k] = V(static_cast<double>(k) / qq) / std::sqrt(static_cast<double>(k));
    // W[c] = sum over pairs with n mbar = c (mod q), Kahan-compensated
    std::vector<double> W(q, 0.0), comp(q, 0.0);
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
      if (n % q == 0) continue;
      double tn = static_cast<double>(tau[n]);
      std::uint64_t nmodq = n % q;
      for (std::uint64_t m = 1, nm = n; nm <= cutoff; ++m, nm += n) {
        if (m % q == 0) continue;
        std::uint64_t c = (nmodq * inv[m % q]) % q;
        double term = tn * static_cast<double>(tau[m]) * wk[nm];
        double y = term - comp[c];
        double t = W[c] + y;
        comp[c] = (t - W[c]) - y;
        W[c] = t;
      }
    }
    for (std::uint64_t k = 1; k < q - 1; ++k) {
      if ((parity.kappa == 0) != table.is_even(k)) continue;
      cplx acc = 0.0;
      for (std::uint64_t c = 1; c < q; ++c) acc += table.chi(k, c) * W[c];
      out[k].afe_value = 2.0 * acc.real();
      double l2 = std::norm(central[k]);
      out[k].exact_value = l2 * l2;
    }
  }
  return out;
}

AfeResult afe_check(const CharacterTable& table, std::uint64_t k, const QWeight& qw) {
  if (k == 0) throw std::domain_error("afe_check: trivial character");
  auto central = central_values_all(table);
  return afe_check_all(table, qw, central)[k];
}

// ---- exponential sums ----

cplx kloosterman_sum(std::int64_t n, std::int64_t m, std::uint64_t c) {
  if (c == 0) throw std::domain_error("kloosterman_sum: modulus must be positive");
  if (c == 1) return 1.0;
  cplx acc = 0.0;
  std::int64_t cc = static_cast<std::int64_t>(c);
  auto red = [&](std::int64_t v) {
    v %= cc;
    if (v < 0) v += cc;
    return static_cast<std::uint64_t>(v);
  };
  for (std::uint64_t x = 1; x < c; ++x) {
    if (gcd_u64(x, c) != 1) continue;
    std::uint64_t xb = mod_inverse(static_cast<std::int64_t>(x), c);
    std::uint64_t num = (red(n) * x + red(m) * xb) % c;
    acc += unit_root(static_cast<double>(num) / static_cast<double>(c));
  }
  return acc;
}

std::vector<cplx> kloosterman_row(std::uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("kloosterman_row: p must be prime");
  std::vector<std::uint64_t> inv(p);
  inv[1] = 1;
  for (std::uint64_t i = 2; i < p; ++i) inv[i] = (p - (p / i) * inv[p % i] % p) % p;
  std::vector<cplx> roots(p);
  for (std::uint64_t j = 0; j < p; ++j)
    roots[j] = unit_root(static_cast<double>(j) / static_cast<double>(p));
  std::vector<cplx> row(p, 0.0);
  for (std::uint64_t a = 0; a < p; ++a) {
    cplx acc = 0.0;
    for (std::uint64_t x = 1; x < p; ++x) acc += roots[(x + a * inv[x]) % p];
    row[a] = acc;
  }
  return row;
}

std::int64_t ramanujan_sum(std::int64_t n, std::uint64_t ell) {
  std::int64_t acc = 0;
  for (std::uint64_t b = 1; b * b <= ell || b <= ell; ++b) {
    if (b > ell) break;
    if (ell % b) continue;
    std::uint64_t aa = ell / b;
    std::int64_t nn = n % static_cast<std::int64_t>(b);
    if (nn != 0) continue;
    acc += mobius(aa) * static_cast<std::int64_t>(b);
  }
  return acc;
}

bool twisted_mult_check(std::int64_t a, std::int64_t b, std::uint64_t r, std::uint64_t s,
                        double tol) {
  if (gcd_u64(r, s) != 1) throw std::domain_error("twisted_mult_check: moduli must be coprime");
  cplx lhs = kloosterman_sum(a, b, r * s);
  std::int64_t br = b % static_cast<std::int64_t>(r);
  std::int64_t bs = b % static_cast<std::int64_t>(s);
  std::uint64_t sbar = mod_inverse(static_cast<std::int64_t>(s % r == 0 ? 0 : s), r);
  std::uint64_t rbar = mod_inverse(static_cast<std::int64_t>(r % s == 0 ? 0 : r), s);
  std::int64_t m1 = static_cast<std::int64_t>(mod_mul(mod_mul(sbar, sbar, r),
                                                      static_cast<std::uint64_t>((br % static_cast<std::int64_t>(r) + static_cast<std::int64_t>(r)) % static_cast<std::int64_t>(r)), r));
  std::int64_t m2 = static_cast<std::int64_t>(mod_mul(mod_mul(rbar, rbar, s),
                                                      static_cast<std::uint64_t>((bs % static_cast<std::int64_t>(s) + static_cast<std::int64_t>(s)) % static_cast<std::int64_t>(s)), s));
  cplx rhs = kloosterman_sum(a, m1, r) * kloosterman_sum(a, m2, s);
  return std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs));
}

// ---- characters mod arbitrary small v ----

namespace {

// cyclic-component description of (Z/p^e)^*
struct UnitComponent {
  std::uint64_t mod;      // p^e
  std::uint64_t gen;      // generator of the cyclic piece
  std::uint64_t ord;      // its order
  bool has_minus = false; // extra Z/2 factor generated by -1 (p = 2, e >= 3)
};

std::uint64_t dlog_brute(std::uint64_t g, std::uint64_t x, std::uint64_t mod, std::uint64_t ord) {
  std::uint64_t v = 1;
  for (std::uint64_t k = 0; k < ord; ++k) {
    if (v == x) return k;
    v = (v * g) % mod;
  }
  throw std::runtime_error("dlog_brute: element outside the cyclic piece");
}

}  // namespace

UnitGroupCharacters::UnitGroupCharacters(std::uint64_t v_in) : v(v_in) {
  if (v == 0) throw std::domain_error("UnitGroupCharacters: modulus must be positive");
  std::vector<UnitComponent> comps;
  count = 1;
  for (auto& [p, e] : factorize(v).factors) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    UnitComponent c;
    c.mod = pe;
    if (p == 2) {
      if (e == 1) {
        c.gen = 1;
        c.ord = 1;
      } else if (e == 2) {
        c.gen = 3;
        c.ord = 2;
      } else {
        c.gen = 5;
        c.ord = pe / 4;
        c.has_minus = true;
      }
    } else {
      // primitive root mod p^e by trial
      std::uint64_t phi = pe / p * (p - 1);
      auto fac = factorize(phi).factors;
      for (std::uint64_t g = 2; g < pe; ++g) {
        if (gcd_u64(g, pe) != 1) continue;
        bool ok = true;
        for (auto& [pp, ee] : fac)
          if (mod_pow(g, phi / pp, pe) == 1) {
            ok = false;
            break;
          }
        if (ok) {
          c.gen = g;
          break;
        }
      }
      c.ord = phi;
    }
    count *= c.ord * (c.has_minus ? 2 : 1);
    comps.push_back(c);
  }
  // enumerate characters as exponent tuples; build value tables
  std::vector<std::uint64_t> dims;
  for (auto& c : comps) {
    dims.push_back(c.ord);
    if (c.has_minus) dims.push_back(2);
  }
  tables.assign(count, std::vector<cplx>(v, cplx(0.0)));
  for (std::uint64_t a = 0; a < v; ++a) {
    if (v > 1 && gcd_u64(a, v) != 1) continue;
    if (v == 1) {
      for (auto& t : tables) t[0] = 1.0;
      break;
    }
    // discrete logs of a in every component
    std::vector<std::pair<std::uint64_t, std::uint64_t>> logs;  // (exp, dim)
    for (auto& c : comps) {
      std::uint64_t am = a % c.mod;
      if (c.has_minus) {
        // write am = (-1)^eps 5^k mod 2^e
        std::uint64_t best_eps = 0, best_k = 0;
        bool found = false;
        for (std::uint64_t eps = 0; eps < 2 && !found; ++eps) {
          std::uint64_t target = eps ? (c.mod - am) % c.mod : am;
          std::uint64_t val = 1;
          for (std::uint64_t k = 0; k < c.ord; ++k) {
            if (val == target) {
              best_eps = eps;
              best_k = k;
              found = true;
              break;
            }
            val = (val * c.gen) % c.mod;
          }
        }
        if (!found) throw std::runtime_error("UnitGroupCharacters: 2-adic dlog failed");
        logs.emplace_back(best_k, c.ord);
        logs.emplace_back(best_eps, 2);
      } else {
        logs.emplace_back(c.ord == 1 ? 0 : dlog_brute(c.gen, am, c.mod, c.ord), c.ord);
      }
    }
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t rem = k;
      double frac = 0.0;
      for (std::size_t i = 0; i < logs.size(); ++i) {
        std::uint64_t ki = rem % dims[i];
        rem /= dims[i];
        frac += static_cast<double>(ki) * static_cast<double>(logs[i].first) /
                static_cast<double>(dims[i]);
      }
      tables[k][a] = unit_root(frac);
    }
  }
}

std::array<std::uint64_t, 5> s_hat_split(const SHatInput& in) {
  auto split = [](std::uint64_t d, std::uint64_t ellp) {
    // d = d* d' with (d*, ell') = 1, d' | ell'^inf
    std::uint64_t dprime = 1, dstar = d;
    while (true) {
      std::uint64_t g = gcd_u64(dstar, ellp);
      if (g == 1) break;
      // move every factor of g out of d*
      std::uint64_t gg = g;
      while (gg != 1) {
        dstar /= gg;
        dprime *= gg;
        gg = gcd_u64(dstar, gg);
      }
    }
    return std::make_pair(dstar, dprime);
  };
  auto [d1s, d1p] = split(in.d1, in.ell1p);
  auto [d2s, d2p] = split(in.d2, in.ell2p);
  return {d1s, d1p, d2s, d2p, d1p * d2p};
}

cplx s_hat_sum(const std::vector<cplx>& chi_table, const SHatInput& in) {
  auto parts = s_hat_split(in);
  std::uint64_t v = parts[4];
  if (chi_table.size() != v) throw std::domain_error("s_hat_sum: character table size != v");
  if (v == 1) return 1.0;
  std::uint64_t d1p = parts[1], d2p = parts[3];
  if (gcd_u64(d1p, d2p) != 1)
    throw std::domain_error("s_hat_sum: d1' and d2' must be coprime");
  // X = d1 inv(ell1' mod d2') n - d2 inv(ell2' mod d1') m, well defined mod v
  std::uint64_t i1 = (d2p == 1) ? 0 : mod_inverse(static_cast<std::int64_t>(in.ell1p % d2p), d2p);
  std::uint64_t i2 = (d1p == 1) ? 0 : mod_inverse(static_cast<std::int64_t>(in.ell2p % d1p), d1p);
  std::int64_t X = static_cast<std::int64_t>((in.d1 % v) * (i1 % v) % v * (in.n % v) % v) -
                   static_cast<std::int64_t>((in.d2 % v) * (i2 % v) % v * (in.m % v) % v);
  std::int64_t hd = in.h * static_cast<std::int64_t>(in.d);
  cplx acc = 0.0;
  for (std::uint64_t y = 1; y < v; ++y) {
    if (gcd_u64(y, v) != 1) continue;
    std::uint64_t yb = mod_inverse(static_cast<std::int64_t>(y), v);
    acc += std::conj(chi_table[y]) *
           kloosterman_sum(hd * static_cast<std::int64_t>(yb), X * static_cast<std::int64_t>(yb),
                           v);
  }
  if (v == 1) acc = 1.0;
  return acc;
}

// ---- Voronoi ----

VoronoiResult voronoi_check(double X, std::uint64_t d, std::uint64_t ell, int y0_terms) {
  if (ell == 0 || gcd_u64(d, ell) != 1)
    throw std::domain_error("voronoi_check: (d, ell) must be coprime");
  if (!(X >= 1.0 && X <= 100.0) || ell > 10)
    throw std::domain_error("voronoi_check: X in [1,100], ell <= 10");
  const double g0 = Constants::euler_gamma();
  auto bump = [&](double x) {
    double t = (2.0 * x - 3.0 * X) / X;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  VoronoiResult out;
  // lhs: finite sum over the support
  std::uint32_t hi = static_cast<std::uint32_t>(2.0 * X) + 1;
  auto tau = tau_sieve(hi);
  cplx lhs = 0.0;
  for (std::uint64_t n = static_cast<std::uint64_t>(X) + 1; n < 2.0 * X; ++n) {
    double gn = bump(static_cast<double>(n));
    if (gn == 0.0) continue;
    lhs += static_cast<double>(tau[n]) * gn *
           unit_root(static_cast<double>((d * n) % ell) / static_cast<double>(ell));
  }
  // x-grid: composite trapezoid; the bump is C^inf with flat endpoints
  const int M = 8192;
  std::vector<double> xs(M + 1), gx(M + 1), w(M + 1);
  for (int i = 0; i <= M; ++i) {
    xs[i] = X + (X * i) / M;
    gx[i] = bump(xs[i]);
    w[i] = (i == 0 || i == M) ? 0.5 * X / M : X / M;
  }
  double main = 0.0;
  for (int i = 0; i <= M; ++i)
    main += (std::log(xs[i]) + 2.0 * g0 - 2.0 * std::log(static_cast<double>(ell))) * gx[i] * w[i];
  main /= static_cast<double>(ell);
  out.main_term = main;

  std::uint64_t dbar = (ell == 1) ? 0 : mod_inverse(static_cast<std::int64_t>(d), ell);
  double le = static_cast<double>(ell);

  // K0 branch, truncated once the smallest Bessel argument exceeds 40
  cplx dualK = 0.0;
  for (std::uint64_t n = 1;; ++n) {
    double arg_min = 4.0 * kPi * std::sqrt(X * static_cast<double>(n)) / le;
    if (arg_min > 40.0) break;
    double gp = 0.0;
    for (int i = 0; i <= M; ++i) {
      if (gx[i] == 0.0) continue;
      gp += gx[i] * w[i] * bessel(BesselKind::K0, 4.0 * kPi * std::sqrt(xs[i] * n) / le);
    }
    gp *= 4.0 / le;
    std::uint64_t nn = n;
    dualK += static_cast<double>(divisor_count(nn)) * gp *
             unit_root(static_cast<double>((dbar * nn) % ell) / le);
  }
  out.dual_k0 = dualK.real();

  // Y0 branch with Cesaro smoothing of the partial-sum tail
  auto tauy = tau_sieve(static_cast<std::uint32_t>(y0_terms));
  std::vector<cplx> partial(y0_terms);
  cplx accY = 0.0;
  for (int n = 1; n <= y0_terms; ++n) {
    double gm = 0.0;
    for (int i = 0; i <= M; ++i) {
      if (gx[i] == 0.0) continue;
      gm += gx[i] * w[i] * bessel(BesselKind::Y0, 4.0 * kPi * std::sqrt(xs[i] * n) / le);
    }
    gm *= -2.0 * kPi / le;
    std::uint64_t r = (ell - (dbar * static_cast<std::uint64_t>(n)) % ell) % ell;
    accY += static_cast<double>(tauy[n]) * gm * unit_root(static_cast<double>(r) / le);
    partial[n - 1] = accY;
  }
  int win = std::max(1, y0_terms / 4);
  cplx ces = 0.0;
  for (int i = y0_terms - win; i < y0_terms; ++i) ces += partial[i];
  ces /= static_cast<double>(win);
  out.dual_y0 = ces.real();

  cplx rhs = main + dualK + ces;
  out.lhs = lhs.real();
  out.rhs = rhs.real();
  out.abs_err = std::abs(lhs - rhs);
  return out;
}

// ---- diagonal brute sum ----

double diagonal_sum_brute(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                          std::uint64_t cutoff, const QWeight& qw) {
  if (gcd_u64(ell1, ell2) != 1) throw std::domain_error("diagonal_sum_brute: coprimality");
  if (cutoff > 100'000'000) throw std::domain_error("diagonal_sum_brute: cutoff above 1e8");
  VWeight V(parity, qw);
  double ll = static_cast<double>(ell1) * static_cast<double>(ell2);
  std::uint64_t jmax = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cutoff) / ll));
  auto tau = tau_sieve(static_cast<std::uint32_t>(jmax * std::max(ell1, ell2) + 1));
  double qq = static_cast<double>(q) * static_cast<double>(q);
  double acc = 0.0;
  for (std::uint64_t j = 1; j <= jmax; ++j) {
    if (j % q == 0) continue;
    double nm = ll * static_cast<double>(j) * static_cast<double>(j);
    if (nm > static_cast<double>(cutoff)) break;
    acc += static_cast<double>(tau[ell2 * j]) * static_cast<double>(tau[ell1 * j]) /
           std::sqrt(nm) * V(nm / qq);
  }
  return 2.0 * acc;
}

// ---- Lemma 1 truncated sum + exact elementary tail ----

namespace {

// sum_{k > Y} k^-w by Euler-Maclaurin (real w > 1)
double zeta_tail_real(double Y, double w) {
  int N = static_cast<int>(std::floor(Y));
  int M = std::max(N, 30);
  double acc = 0.0;
  for (int k = N + 1; k <= M; ++k) acc += std::pow(k, -w);
  double Md = M;
  acc += std::pow(Md, 1.0 - w) / (w - 1.0) - 0.5 * std::pow(Md, -w);
  static const double bern[8] = {1.0 / 6,  -1.0 / 30,    1.0 / 42, -1.0 / 30,
                                 5.0 / 66, -691.0 / 2730, 7.0 / 6,  -3617.0 / 510};
  double t = w * std::pow(Md, -w - 1.0);
  double fact = 2.0;
  for (int j = 1; j <= 8; ++j) {
    acc -= bern[j - 1] / fact * t;
    t *= (w + 2.0 * j - 1.0) * (w + 2.0 * j) / (Md * Md);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return acc;
}

double zeta_real(double w) { return 1.0 + zeta_tail_real(1.0, w); }

struct TailHelper {
  double w;
  double z1, z2w;                // zeta(w), zeta(2w)
  std::vector<std::uint32_t> tau;
  std::vector<double> stau_pref;  // prefix sums of tau(k) k^-w

  explicit TailHelper(double w_, std::uint32_t ymax) : w(w_) {
    z1 = zeta_real(w);
    z2w = zeta_real(2.0 * w);
    tau = tau_sieve(ymax + 2);
    stau_pref.assign(tau.size(), 0.0);
    for (std::size_t k = 1; k < tau.size(); ++k)
      stau_pref[k] = stau_pref[k - 1] + tau[k] * std::pow(static_cast<double>(k), -w);
  }
  double s1(double Z) const {  // sum_{k<=Z} k^-w
    double acc = 0.0;
    for (int k = 1; k <= static_cast<int>(Z); ++k) acc += std::pow(k, -w);
    return acc;
  }
  double stau(double Z) const {
    long n = static_cast<long>(Z);
    if (n <= 0) return 0.0;
    return stau_pref[std::min<std::size_t>(n, stau_pref.size() - 1)];
  }
  // sum_{k>Y} tau4(k) k^-w via the tau * tau hyperbola
  double tau4_tail(double Y) const {
    if (Y < 1.0) return z1 * z1 * z1 * z1;
    long R = static_cast<long>(std::sqrt(Y));
    double fin = 0.0;
    for (long u = 1; u <= R; ++u)
      fin += tau[u] * std::pow(static_cast<double>(u), -w) * stau(Y / u);
    fin = 2.0 * fin - stau(static_cast<double>(R)) * stau(static_cast<double>(R));
    return z1 * z1 * z1 * z1 - fin;
  }
  // sum_{j>Y} tau(j)^2 j^-w via tau^2 = sum_{d^2 | j} mu(d) tau4(j/d^2)
  double tau2sq_tail(double Y) const {
    double acc = 0.0;
    long D = static_cast<long>(std::sqrt(std::max(Y, 0.0)));
    auto mu = mobius_sieve(static_cast<std::uint32_t>(D + 2));
    double mu_partial = 0.0;
    for (long dd = 1; dd <= D; ++dd) {
      if (mu[dd] == 0) continue;
      acc += mu[dd] * std::pow(static_cast<double>(dd), -2.0 * w) * tau4_tail(Y / (static_cast<double>(dd) * dd));
      mu_partial += mu[dd] * std::pow(static_cast<double>(dd), -2.0 * w);
    }
    acc += (1.0 / z2w - mu_partial) * z1 * z1 * z1 * z1;
    return acc;
  }
};

std::vector<std::uint64_t> smooth_numbers(const std::vector<std::uint64_t>& primes,
                                          std::uint64_t bound) {
  std::vector<std::uint64_t> out{1};
  for (std::uint64_t p : primes) {
    std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) {
      __uint128_t v = static_cast<__uint128_t>(out[i]) * p;
      while (v <= bound) {
        out.push_back(static_cast<std::uint64_t>(v));
        v *= p;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double lemma1_truncated(std::uint64_t ell1, std::uint64_t ell2, double s, std::uint64_t X) {
  if (gcd_u64(ell1, ell2) != 1) throw std::domain_error("lemma1: coprimality");
  double w = 1.0 + 2.0 * s;
  double ll = static_cast<double>(ell1) * static_cast<double>(ell2);
  std::uint64_t J = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X) / ll));
  auto tau = tau_sieve(static_cast<std::uint32_t>(J * std::max(ell1, ell2) + 1));
  double acc = 0.0;
  for (std::uint64_t j = 1; j <= J; ++j)
    acc += static_cast<double>(tau[ell1 * j]) * static_cast<double>(tau[ell2 * j]) *
           std::pow(static_cast<double>(j), -w);
  return acc;
}

double lemma1_tail(std::uint64_t ell1, std::uint64_t ell2, double s, std::uint64_t X) {
  double w = 1.0 + 2.0 * s;
  double ll = static_cast<double>(ell1) * static_cast<double>(ell2);
  std::uint64_t J = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X) / ll));
  // radical of ell1 ell2
  std::vector<std::uint64_t> rad;
  for (auto& [p, e] : factorize(ell1 * ell2).factors) rad.push_back(p);
  TailHelper T(w, static_cast<std::uint32_t>(std::max<std::uint64_t>(J, 16)));
  // T2cop(Y) = sum_{j>Y, (j, rad)=1} tau(j)^2 j^-w through the triangular
  // smooth/coprime inversion of T2(Y) = sum_m tau(m)^2 m^-w T2cop(Y/m)
  std::uint64_t sm_bound = std::max<std::uint64_t>(J * 16, 1'000'000);
  auto sm = smooth_numbers(rad, sm_bound);
  std::map<long, double> memo;
  double t2cop_full = 0.0;
  {
    double denom = 0.0;
    for (std::uint64_t m : sm)
      denom += static_cast<double>(divisor_count(m)) * static_cast<double>(divisor_count(m)) *
               std::pow(static_cast<double>(m), -w);
    t2cop_full = T.tau2sq_tail(0.0) / denom;
  }
  std::function<double(double)> t2cop = [&](double Y) -> double {
    if (Y < 1.0) return t2cop_full;
    long key = static_cast<long>(Y * 4096.0);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    double acc = T.tau2sq_tail(Y);
    for (std::size_t i = 1; i < sm.size(); ++i) {
      double m = static_cast<double>(sm[i]);
      double tm = static_cast<double>(divisor_count(sm[i]));
      acc -= tm * tm * std::pow(m, -w) * t2cop(Y / m);
    }
    memo[key] = acc;
    return acc;
  };
  double tail = 0.0;
  for (std::uint64_t m : sm) {
    double c = static_cast<double>(divisor_count(ell1 * m)) *
               static_cast<double>(divisor_count(ell2 * m)) *
               std::pow(static_cast<double>(m), -w);
    tail += c * t2cop(static_cast<double>(J) / static_cast<double>(m));
  }
  return tail;
}

// ---- orthogonality ----

double orthogonality_max_error(std::uint64_t q) {
  CharacterTable t = character_table(q);
  double worst = 0.0;
  for (std::uint64_t m = 1; m < q; ++m) {
    cplx lhs = 0.0;
    for (std::uint64_t k = 2; k < q - 1; k += 2) lhs += t.chi(k, m);
    // RHS = (1/2) sum_pm sum_{d | q, m = +-1 (d)} phi(d) mu(q/d); d in {1, q}
    long rhs = 0;
    for (int sgn : {+1, -1}) {
      rhs += -1;  // d = 1: phi(1) mu(q) = -1, condition empty
      std::uint64_t target = (sgn > 0) ? 1 : q - 1;
      if (m % q == target) rhs += static_cast<long>(q - 1);  // d = q: phi(q) mu(1)
    }
    double rhs_half = 0.5 * static_cast<double>(rhs);
    worst = std::max(worst, std::abs(lhs - cplx(rhs_half)));
  }
  return worst;
}

}  // namespace momentlab
