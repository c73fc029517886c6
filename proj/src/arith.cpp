#include "momentlab/arith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

namespace momentlab {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mod_mul(r, base, m);
    base = mod_mul(base, base, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit with the standard witness set
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> ps = primes_up_to(1'000'000);
  return ps;
}

Factorization factorize_uncached(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  Factorization f;
  f.n = n;
  std::uint64_t m = n;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) break;
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) m /= p, ++e;
      f.factors.emplace_back(p, e);
    }
  }
  if (m > 1) {
    if (!is_prime(m))
      throw std::domain_error("factorize: cofactor " + std::to_string(m) +
                              " exceeds the trial-division range and is composite");
    f.factors.emplace_back(m, 1);
  }
  return f;
}

std::shared_mutex g_memo_mutex;
std::unordered_map<std::uint64_t, Factorization> g_memo;

}  // namespace

Factorization factorize(std::uint64_t n) {
  {
    std::shared_lock lock(g_memo_mutex);
    auto it = g_memo.find(n);
    if (it != g_memo.end()) return it->second;
  }
  Factorization f = factorize_uncached(n);
  {
    std::unique_lock lock(g_memo_mutex);
    if (g_memo.size() < 2'000'000) g_memo.emplace(n, f);
  }
  return f;
}

MultiplicativeBasics multiplicative_basics(std::uint64_t n) {
  Factorization f = factorize(n);
  MultiplicativeBasics b;
  b.mobius = 1;
  for (auto& [p, e] : f.factors) {
    b.tau *= static_cast<std::uint64_t>(e + 1);
    b.phi *= (p - 1);
    for (int i = 1; i < e; ++i) b.phi *= p;
    b.mobius = (e > 1) ? 0 : -b.mobius;
    if (e > 2) b.cubefree = false;
  }
  return b;
}

std::uint64_t euler_phi(std::uint64_t n) { return multiplicative_basics(n).phi; }
std::uint64_t divisor_count(std::uint64_t n) { return multiplicative_basics(n).tau; }
int mobius(std::uint64_t n) { return multiplicative_basics(n).mobius; }
bool is_cubefree(std::uint64_t n) { return multiplicative_basics(n).cubefree; }

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m) {
  if (m < 2) throw std::domain_error("mod_inverse: modulus must be >= 2");
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  std::int64_t t = 0, newt = 1, rr = mm, newr = r;
  while (newr != 0) {
    std::int64_t q = rr / newr;
    t = std::exchange(newt, t - q * newt);
    rr = std::exchange(newr, rr - q * newr);
  }
  if (rr != 1) throw std::domain_error("mod_inverse: argument not invertible");
  if (t < 0) t += mm;
  return static_cast<std::uint64_t>(t);
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  if (n < 2) throw std::domain_error("primes_up_to: n must be >= 2");
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!comp[i]) {
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return out;
}

std::vector<std::int8_t> mobius_sieve(std::uint32_t n) {
  std::vector<std::int8_t> mu(static_cast<std::size_t>(n) + 1, 1);
  std::vector<std::uint32_t> primes;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  mu[0] = 0;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
      if (ip > n) break;
      comp[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = -mu[i];
    }
  }
  return mu;
}

std::vector<std::uint32_t> tau_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> t(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t d = 1; d <= n; ++d)
    for (std::uint64_t m = d; m <= n; m += d) ++t[m];
  return t;
}

namespace {
__int128 gcd_i128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}
}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) num = -num, den = -den;
  __int128 g = gcd_i128(num, den);
  if (g > 1) num /= g, den /= g;
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::domain_error("Rational: division by zero");
  return Rational(num * o.den, den * o.num);
}

double Rational::to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rational::to_string() const {
  auto i128_to_string = [](__int128 v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v) {
      s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
  };
  if (den == 1) return i128_to_string(num);
  return i128_to_string(num) + "/" + i128_to_string(den);
}

Rational rational_factorial(int n) {
  if (n < 0) throw std::domain_error("rational_factorial: negative argument");
  __int128 v = 1;
  for (int i = 2; i <= n; ++i) v *= i;
  return Rational(v, 1);
}

}  // namespace momentlab
