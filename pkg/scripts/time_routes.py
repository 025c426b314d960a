"""Time the functional-equation route against the full Euler product.

The functional-equation route only needs places of degree <= ceil(n/2), the
full product needs every place of degree <= n.  Rows are printed as CSV.
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from lffc.ellfn import EllCurveOverFqT, conductor, ell_stratification
from lffc.ffpoly import GF, FqPoly
from lffc.strat import alg_epsilon, alg_funceq, alg_rationality
from lffc.zetafn import HyperellipticModel, zeta_stratification


@dataclass
class TimingConfig:
    q_zeta: int = 3
    genera: tuple[int, ...] = (1, 2, 3, 4)
    q_ell: int = 5
    max_conductor_degree: int = 8
    curves_per_degree: int = 1
    seed: int = 0
    workers: int = 1


def _clock(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def zeta_rows(cfg: TimingConfig, rng: random.Random):
    F = GF(cfg.q_zeta)
    for g in cfg.genera:
        while True:
            coeffs = [F.coerce(rng.randrange(F.order)) for _ in range(2 * g + 1)] + [1]
            try:
                C = HyperellipticModel(F, FqPoly(F, coeffs))
                break
            except ValueError:
                continue
        n = 2 * g
        # fresh stratifications so that neither route reuses the other's counts
        L, feq = zeta_stratification(C)
        N1, t1 = _clock(lambda: alg_funceq(L, feq))
        L, feq = zeta_stratification(C)
        N2, t2 = _clock(lambda: list(alg_rationality(L, feq.D, 1, n, n).coeffs))
        assert N1 == N2
        yield ("zeta", F.order, n, f"{t1:.4f}", "", f"{t2:.4f}")


def ell_rows(cfg: TimingConfig, rng: random.Random):
    F = GF(cfg.q_ell)
    found: dict[int, int] = {}
    tries = 0
    while tries < 2000 and any(found.get(d, 0) < cfg.curves_per_degree for d in range(5, cfg.max_conductor_degree + 1)):
        tries += 1
        A = " + ".join(f"{rng.randrange(F.order)}*t^{i}" for i in range(rng.randint(1, 4)))
        B = " + ".join(f"{rng.randrange(F.order)}*t^{i}" for i in range(rng.randint(1, 4)))
        try:
            E = EllCurveOverFqT.parse(F, a4=A, a6=B)
        except ValueError:
            continue
        bad, n = conductor(E)
        deg_f = n + 4
        if not bad or deg_f < 5 or deg_f > cfg.max_conductor_degree or found.get(deg_f, 0) >= cfg.curves_per_degree:
            continue
        found[deg_f] = found.get(deg_f, 0) + 1
        L, feq = ell_stratification(E, with_epsilon=False, workers=cfg.workers)
        eps, t_eps = _clock(lambda: alg_epsilon(L, feq))
        N1, t1 = _clock(lambda: alg_funceq(L, feq.with_epsilon(eps)))
        L, feq = ell_stratification(E, with_epsilon=False, workers=cfg.workers)
        N2, t2 = _clock(lambda: list(alg_rationality(L, feq.D, 1, n, n).coeffs))
        assert N1 == N2
        yield ("ell", F.order, n, f"{t1:.4f}", f"{t_eps:.4f}", f"{t2:.4f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-conductor-degree", type=int, default=TimingConfig.max_conductor_degree)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = TimingConfig(max_conductor_degree=args.max_conductor_degree, workers=args.workers, seed=args.seed)
    rng = random.Random(cfg.seed)
    print("family,q,n,funceq_s,epsilon_search_s,full_product_s")
    for row in zeta_rows(cfg, rng):
        print(",".join(map(str, row)), flush=True)
    for row in ell_rows(cfg, rng):
        print(",".join(map(str, row)), flush=True)


if __name__ == "__main__":
    main()
