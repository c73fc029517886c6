"""Verification laboratory for twisted and mollified fourth moments of
Dirichlet L-functions: exact arithmetic, special functions, main-term
assemblies and brute-force character-sum oracles, backed by the C++ core."""

from ._core import (  # noqa: F401
    afe_check,
    bessel,
    central_values,
    diagonal_main_term_poly,
    factorize,
    frak_s,
    frak_s_residue,
    gamma,
    hurwitz_zeta,
    kloosterman_sum,
    mod_inverse,
    mollified_asymptotic,
    multiplicative_basics,
    primes_up_to,
    ramanujan_sum,
    stieltjes_constant,
    theorem1_prediction,
    twisted_fourth_moment_brute,
    voronoi_check,
    zeta,
)

__version__ = "0.1.0"
