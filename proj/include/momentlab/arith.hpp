#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace momentlab {

// Prime-power decomposition. Primes strictly increasing, exponents >= 1,
// product of p^e equals n.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;

  bool cubefree() const {
    for (auto& [p, e] : factors)
      if (e > 2) return false;
    return true;
  }
};

struct MultiplicativeBasics {
  std::uint64_t tau = 1;
  int mobius = 1;
  std::uint64_t phi = 1;
  bool cubefree = true;
};

// Trial division against the shared sieve prime list; cofactors > 1e12 that
// survive must be prime (checked with deterministic 64-bit Miller-Rabin).
// Results are memoized behind a shared_mutex.
Factorization factorize(std::uint64_t n);

MultiplicativeBasics multiplicative_basics(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);
int mobius(std::uint64_t n);
bool is_cubefree(std::uint64_t n);
bool is_prime(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// a * result == 1 (mod m); throws std::domain_error when gcd(a, m) > 1.
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t m);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// All primes <= n, simple sieve of Eratosthenes (n up to 1e8).
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

// mu(0..n) by linear sieve
std::vector<std::int8_t> mobius_sieve(std::uint32_t n);

// tau(0..n) by divisor-marking sieve
std::vector<std::uint32_t> tau_sieve(std::uint32_t n);

// Exact rational on __int128, always kept normalized (den > 0, gcd = 1).
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(__int128 n, __int128 d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  double to_double() const;
  std::string to_string() const;
};

Rational rational_factorial(int n);

// Values pinned by the error analysis: theta = 7/64, eta = 1/14 - 3*theta/7,
// lambda_max = eta/18. euler_gamma carries the 36-digit value derived from the
// Euler-Maclaurin limit of sum 1/n - log N.
struct Constants {
  static Rational theta() { return Rational(7, 64); }
  static Rational eta() { return Rational(11, 448); }
  static Rational lambda_max() { return Rational(11, 8064); }
  static double euler_gamma() { return 0.577215664901532860606512090082402431; }
};

}  // namespace momentlab
