#include "doctest.h"
#include "momentlab/arith.hpp"
#include "momentlab/report.hpp"

using namespace momentlab;

TEST_CASE("factorize basics") {
  auto f = factorize(12);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<std::uint64_t, int>{2, 2});
  CHECK(f.factors[1] == std::pair<std::uint64_t, int>{3, 1});
  CHECK(factorize(1).factors.empty());
  auto p = factorize(97);
  REQUIRE(p.factors.size() == 1);
  CHECK(p.factors[0].first == 97);
  CHECK_THROWS_AS(factorize(0), std::domain_error);
  // large semiprime beyond the sieve range still factors through Miller-Rabin
  auto big = factorize(999999999989ull);  // prime just below 1e12
  CHECK(big.factors.size() == 1);
}

TEST_CASE("multiplicative basics examples") {
  auto b6 = multiplicative_basics(6);
  CHECK(b6.tau == 4);
  CHECK(b6.mobius == 1);
  CHECK(b6.phi == 2);
  CHECK(b6.cubefree);
  auto b8 = multiplicative_basics(8);
  CHECK(b8.tau == 4);
  CHECK(b8.mobius == 0);
  CHECK(b8.phi == 4);
  CHECK_FALSE(b8.cubefree);
  auto b30 = multiplicative_basics(30);
  CHECK(b30.tau == 8);
  CHECK(b30.mobius == -1);
  CHECK(b30.phi == 8);
}

TEST_CASE("tau, mu, phi multiplicative on coprime arguments") {
  SplitMix64 rng(42);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t a = 1 + rng.range(1000), b = 1 + rng.range(1000);
    if (gcd_u64(a, b) != 1) continue;
    CHECK(divisor_count(a * b) == divisor_count(a) * divisor_count(b));
    CHECK(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    CHECK(mobius(a * b) == mobius(a) * mobius(b));
  }
}

TEST_CASE("mobius divisor sums detect n = 1") {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    long s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      s += mobius(d);
      if (d != n / d) s += mobius(n / d);
    }
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(1, 2) == 1);
  CHECK_THROWS_AS(mod_inverse(4, 6), std::domain_error);
  SplitMix64 rng(7);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t m = 2 + rng.range(10'000);
    std::uint64_t a = 1 + rng.range(m - 1);
    if (gcd_u64(a, m) != 1) continue;
    std::uint64_t inv = mod_inverse(static_cast<std::int64_t>(a), m);
    CHECK((a * inv) % m == 1);
    CHECK(mod_inverse(static_cast<std::int64_t>(inv), m) == a % m);
  }
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<std::uint32_t>{2});
  CHECK(primes_up_to(100).size() == 25);
}

TEST_CASE("sieves match the direct implementations") {
  auto mu = mobius_sieve(3000);
  auto tau = tau_sieve(3000);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(static_cast<int>(mu[n]) == mobius(n));
    CHECK(tau[n] == divisor_count(n));
  }
}

TEST_CASE("rational arithmetic and pinned constants") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(-4, 8) == Rational(-1, 2));
  CHECK((Rational(3, 4) * Rational(2, 3)).to_string() == "1/2");
  // eta = 1/14 - 3 theta / 7 and lambda_max = eta / 18, exactly
  CHECK(Constants::eta() == Rational(1, 14) - Rational(3) * Constants::theta() / Rational(7));
  CHECK(Constants::lambda_max() == Constants::eta() / Rational(18));
  CHECK(Constants::eta() == Rational(11, 448));
  CHECK(Constants::lambda_max() == Rational(11, 8064));
}
