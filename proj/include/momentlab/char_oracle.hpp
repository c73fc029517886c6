#pragma once
#include <cstdint>
#include <vector>

#include "momentlab/paper_functions.hpp"

namespace momentlab {

// All Dirichlet characters mod a prime q, indexed through a primitive root g:
// chi_k(g^m) = e(km/(q-1)). chi_k is even iff k is even; k = 0 is trivial.
struct CharacterTable {
  std::uint64_t q = 0;
  std::uint64_t g = 0;       // primitive root
  std::uint64_t order = 0;   // q - 1
  std::vector<std::uint32_t> dlog;  // dlog[a] for a in [1, q-1], index a-1
  std::vector<cplx> roots;          // e(j/(q-1)), j in [0, q-1)

  cplx chi(std::uint64_t k, std::uint64_t a) const {
    a %= q;
    if (a == 0) return 0.0;
    return roots[(k * dlog[a - 1]) % order];
  }
  bool is_even(std::uint64_t k) const { return k % 2 == 0; }
};

CharacterTable character_table(std::uint64_t q);

// Interpolated archimedean weight V(x) = (1/2pi i) int_(2) G(s) x^-s ds/s,
// trapezoid on Re s = 2 (step 0.05, |Im s| <= 60), Chebyshev-fitted in log x.
class VWeight {
 public:
  VWeight(Parity parity, const QWeight& qw, double step = 0.05, double height = 60.0);
  double operator()(double x) const;
  double direct(double x) const;  // quadrature without the interpolant
  // self-validation: worst |V_fine - V| over probes when step and height double
  double self_check() const;

 private:
  Parity parity_;
  QWeight qw_;
  double step_, height_;
  std::vector<cplx> nodes_, weights_;              // line Re s = 2 (x >= 1)
  std::vector<cplx> nodes_shift_, weights_shift_;  // line Re s = -1/4 (x < 1)
  std::vector<double> cheb_;  // Chebyshev coefficients over t = log x in [lo, hi]
  double lo_, hi_;
};

enum class DftPath { naive, bluestein };

// central values L(chi_k, 1/2) = q^{-1/2} sum_a chi_k(a) zeta(1/2, a/q) for
// k = 0..q-2 (k = 0 is the trivial-character DFT entry, kept for Parseval)
std::vector<cplx> central_values_all(const CharacterTable& table, DftPath path = DftPath::naive,
                                     int threads = 1);

// normalized Gauss sum q^{-1/2} sum_x chi(x) e(x/q); k must be nonzero
cplx gauss_sum(const CharacterTable& table, std::uint64_t k);

enum class ParityMode { even_only, odd_only, all_primitive };

double twisted_fourth_moment_brute(std::uint64_t ell1, std::uint64_t ell2,
                                   const CharacterTable& table, const std::vector<cplx>& central,
                                   ParityMode mode);

struct AfeResult {
  double afe_value = 0;
  double exact_value = 0;
};

// AFE-aggregated |L|^4 for every nontrivial character at once (V shared per parity)
std::vector<AfeResult> afe_check_all(const CharacterTable& table, const QWeight& qw,
                                     const std::vector<cplx>& central);
AfeResult afe_check(const CharacterTable& table, std::uint64_t k, const QWeight& qw);

// S(n, m; c) = sum_{x mod c, (x,c)=1} e((nx + m xbar)/c), direct O(c log c)
cplx kloosterman_sum(std::int64_t n, std::int64_t m, std::uint64_t c);
// row S(1, a; p) for a = 0..p-1 at prime p (one inverse table, O(p) per entry)
std::vector<cplx> kloosterman_row(std::uint64_t p);

// c_ell(n) = sum_{ab = ell, b | n} mu(a) b
std::int64_t ramanujan_sum(std::int64_t n, std::uint64_t ell);

// S(a, b; r s) = S(a, sbar^2 b; r) S(a, rbar^2 b; s) for coprime r, s (exact)
bool twisted_mult_check(std::int64_t a, std::int64_t b, std::uint64_t r, std::uint64_t s,
                        double tol = 1e-9);

// characters mod an arbitrary small modulus (unit-group generator decomposition);
// used by the S-hat reconstruction
struct UnitGroupCharacters {
  std::uint64_t v = 1;
  std::uint64_t count = 1;                  // phi(v)
  std::vector<std::vector<cplx>> tables;    // tables[k][a] = chi_k(a), 0 on non-units
  explicit UnitGroupCharacters(std::uint64_t v);
};

struct SHatInput {
  std::uint64_t n, m, d1, d2, ell1p, ell2p;
  std::int64_t h;
  std::uint64_t d;
};

// v and the d_i = d_i^* d_i' factorization are derived from the input;
// returns S-hat_v(chi, ...) for the character given by its value table mod v
cplx s_hat_sum(const std::vector<cplx>& chi_table, const SHatInput& in);
// the v-part factorization data (checked): returns {d1*, d1', d2*, d2', v}
std::array<std::uint64_t, 5> s_hat_split(const SHatInput& in);

struct VoronoiResult {
  double lhs = 0, rhs = 0, abs_err = 0;
  double main_term = 0, dual_k0 = 0, dual_y0 = 0;
};

// test-function: exp(-1/(1-t^2)) bump supported on (X, 2X)
VoronoiResult voronoi_check(double X, std::uint64_t d, std::uint64_t ell,
                            int y0_terms = 10000);

// 2 sum_{l1 n = l2 m, (nm,q)=1, nm <= cutoff} tau(n)tau(m)(nm)^{-1/2} V(nm/q^2)
double diagonal_sum_brute(std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, Parity parity,
                          std::uint64_t cutoff, const QWeight& qw = {});

// truncated Lemma-1 sum (l1 l2)^{1/2+s} sum_{l1 n = l2 m, nm <= X} tau tau (nm)^{-1/2-s},
// reparametrized over j, plus the exact elementary tail beyond the truncation
double lemma1_truncated(std::uint64_t ell1, std::uint64_t ell2, double s, std::uint64_t X);
double lemma1_tail(std::uint64_t ell1, std::uint64_t ell2, double s, std::uint64_t X);

// even-character orthogonality at prime q: returns max |LHS - RHS| over all m
// coprime to q, both sides exact small integers
double orthogonality_max_error(std::uint64_t q);

}  // namespace momentlab
