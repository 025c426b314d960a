"""Recompute the three worked fixtures and print their local data and numerators."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from lffc.dirfn import DirichletChar, dirichlet_stratification
from lffc.ellfn import EllCurveOverFqT, conductor, ell_stratification
from lffc.ffpoly import GF, places_up_to
from lffc.series import series_str
from lffc.strat import alg_epsilon, alg_funceq, alg_rationality, verify_riemann_hypothesis
from lffc.zetafn import HyperellipticModel, places_by_degree, zeta_stratification


@dataclass
class FixtureConfig:
    show_places: bool = True


def zeta_fixture(cfg: FixtureConfig) -> None:
    C = HyperellipticModel.parse(GF(3), "t^7 - t + 1")
    L, feq = zeta_stratification(C)
    print(f"== u^2 = {C.f} over F_3, genus {C.genus}")
    print("places by degree:", places_by_degree(C, 3))
    print("P  =", series_str(alg_rationality(L, feq.D, 1, 3, 3).coeffs))
    N = alg_funceq(L, feq)
    print("N  =", series_str(N), f"  eps = {feq.epsilon}")
    print("RH :", verify_riemann_hypothesis(N, 3, 0).passed)


def ell_fixture(cfg: FixtureConfig) -> None:
    E = EllCurveOverFqT.parse(GF(7), a1="t", a6="t^2 + 2")
    L, feq = ell_stratification(E)
    print(f"\n== {E} over F_7(t)")
    bad, n = conductor(E)
    for d, e in bad:
        print(f"  bad {d.place}: {d.type.value}, exponent {e}")
    if cfg.show_places:
        for d in L.table(2):
            print(f"  {str(d.place):18} a_v = {d.a_v:4}   L_v = {series_str(d.euler_factor())}")
    N = alg_funceq(L, feq)
    print(f"n = {n}, eps (local signs) = {feq.epsilon}, eps (search) = {alg_epsilon(L, feq.with_epsilon(None))}")
    print("N  =", series_str(N))


def dirichlet_fixture(cfg: FixtureConfig) -> None:
    F = GF(3)
    chi = DirichletChar.parse(F, ["t^2 - t - 1:t:zeta8", "t^2 + 1:t + 1:i", "t^2 + t - 1:t:-1"])
    L, feq = dirichlet_stratification(chi)
    print(f"\n== Dirichlet character mod {chi.modulus} over F_3")
    if cfg.show_places:
        for v in places_up_to(F, 3):
            vals = ", ".join(str(x) for x in chi.component_values(v))
            print(f"  {str(v):22} [{vals}]   L_v = {series_str(L.euler_factor(v))}")
    eps = alg_epsilon(L, feq)
    N = alg_funceq(L, feq.with_epsilon(eps))
    print(f"n = {feq.n}, eps = {eps}")
    print("N  =", series_str(N))
    print("RH :", verify_riemann_hypothesis(N, 3, 0).passed)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quiet", action="store_true", help="skip the per-place tables")
    args = ap.parse_args()
    cfg = FixtureConfig(show_places=not args.quiet)
    zeta_fixture(cfg)
    ell_fixture(cfg)
    dirichlet_fixture(cfg)


if __name__ == "__main__":
    main()
