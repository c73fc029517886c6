#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "momentlab/char_oracle.hpp"
#include "momentlab/main_terms.hpp"
#include "momentlab/specfun.hpp"

namespace py = pybind11;
using namespace momentlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "fourth-moment verification lab (C++ core)";

  m.def("factorize", [](std::uint64_t n) {
    auto f = factorize(n);
    return f.factors;
  });
  m.def("multiplicative_basics", [](std::uint64_t n) {
    auto b = multiplicative_basics(n);
    return py::dict(py::arg("tau") = b.tau, py::arg("mobius") = b.mobius, py::arg("phi") = b.phi,
                    py::arg("cubefree") = b.cubefree);
  });
  m.def("mod_inverse", &mod_inverse);
  m.def("primes_up_to", &primes_up_to);

  m.def("gamma", [](cplx z) { return gamma_fn(z); });
  m.def("zeta", [](cplx z) { return zeta_value(z); });
  m.def("hurwitz_zeta", [](cplx z, double x) { return hurwitz_zeta(z, x); });
  m.def("bessel", [](const std::string& kind, double x) {
    BesselKind k = kind == "J0" ? BesselKind::J0 : (kind == "Y0" ? BesselKind::Y0 : BesselKind::K0);
    return bessel(k, x);
  });
  m.def("stieltjes_constant", &stieltjes_constant);

  m.def("kloosterman_sum", &kloosterman_sum);
  m.def("ramanujan_sum", &ramanujan_sum);

  m.def("central_values", [](std::uint64_t q, int threads) {
    auto t = character_table(q);
    return central_values_all(t, DftPath::naive, threads);
  }, py::arg("q"), py::arg("threads") = 1);

  m.def("twisted_fourth_moment_brute",
        [](std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q, const std::string& mode) {
          auto t = character_table(q);
          auto L = central_values_all(t);
          ParityMode pm = mode == "even_only"
                              ? ParityMode::even_only
                              : (mode == "odd_only" ? ParityMode::odd_only
                                                    : ParityMode::all_primitive);
          return twisted_fourth_moment_brute(ell1, ell2, t, L, pm);
        },
        py::arg("ell1"), py::arg("ell2"), py::arg("q"), py::arg("mode") = "all_primitive");

  m.def("theorem1_prediction", [](std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q) {
    auto b = theorem1_prediction(ell1, ell2, q);
    return py::dict(py::arg("diag_even") = b.diag_even, py::arg("diag_odd") = b.diag_odd,
                    py::arg("offdiag_even") = b.offdiag_even,
                    py::arg("offdiag_odd") = b.offdiag_odd, py::arg("total") = b.total,
                    py::arg("q_weight_id") = b.q_weight_id);
  });

  m.def("diagonal_main_term_poly", [](std::uint64_t ell1, std::uint64_t ell2, std::uint64_t q) {
    auto p = diagonal_main_term_poly(ell1, ell2, q, kEven);
    return std::vector<double>(p.begin(), p.end());
  });

  m.def("mollified_asymptotic", [](double lam) {
    auto c = mollified_asymptotic(lam, MollifiedParts::both);
    return py::dict(py::arg("a") = std::vector<double>(c.a.begin(), c.a.end()),
                    py::arg("lambda_") = c.lambda, py::arg("diagnostic_only") = c.diagnostic_only);
  });

  m.def("frak_s", [](int j1, int j2, int j3, int j4) {
    auto r = frakS_const(j1, j2, j3, j4);
    return py::make_tuple(static_cast<long long>(r.num), static_cast<long long>(r.den));
  });
  m.def("frak_s_residue", [](int j1, int j2, int j3, int j4) {
    auto r = frakS_residue_const(j1, j2, j3, j4);
    return py::make_tuple(static_cast<long long>(r.num), static_cast<long long>(r.den));
  });

  m.def("voronoi_check", [](double X, std::uint64_t d, std::uint64_t ell, int terms) {
    auto v = voronoi_check(X, d, ell, terms);
    return py::dict(py::arg("lhs") = v.lhs, py::arg("rhs") = v.rhs,
                    py::arg("abs_err") = v.abs_err);
  }, py::arg("X"), py::arg("d"), py::arg("ell"), py::arg("terms") = 10000);

  m.def("afe_check", [](std::uint64_t q, std::uint64_t k) {
    auto t = character_table(q);
    auto r = afe_check(t, k, QWeight{});
    return py::make_tuple(r.afe_value, r.exact_value);
  });
}
