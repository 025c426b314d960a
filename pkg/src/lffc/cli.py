"""Command-line driver: build a stratification, find epsilon and N, run the checks.

Exit codes: 0 when every requested check passes, 2 when a check fails, 1 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .coeffield import CycloElem, FieldEndo
from .ffpoly import GF, ParseError, parse_prime_power
from .series import poly_degree
from .strat import (
    FuncEqData,
    LResult,
    Stratification,
    TableStratification,
    alg_epsilon,
    alg_funceq,
    alg_rationality,
    verify_degree_formula,
    verify_epsilon_modulus,
    verify_functional_equation,
    verify_riemann_hypothesis,
)

__all__ = ["RunConfig", "RunReport", "exact_from_json", "exact_to_json", "main", "run"]

ALL_CHECKS = ("funceq", "rh", "modulus", "degree")
EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    hyperelliptic: str | None = None
    rational: bool = False
    a_invariants: dict = field(default_factory=dict)
    components: list = field(default_factory=list)
    input_path: str | None = None
    epsilon_mode: str = "auto"  # auto | table | compute | known
    epsilon_value: str | None = None
    checks: tuple = ALL_CHECKS
    output: str = "json"
    full_product: bool = False
    workers: int = 1
    rh_tol: float = 1e-8
    modulus_tol: float = 1e-9
    show_places: int = 0

    def __post_init__(self):
        if self.command not in ("zeta", "ell", "dirichlet", "generic"):
            raise InputError(f"unknown command {self.command!r}")
        if self.epsilon_mode == "table" and self.command != "ell":
            raise InputError("--epsilon table is only available for elliptic curves")
        if self.epsilon_mode == "known" and self.epsilon_value is None:
            raise InputError("a known epsilon needs a value")
        bad = [c for c in self.checks if c not in ALL_CHECKS]
        if bad:
            raise InputError(f"unknown checks: {', '.join(bad)}")
        if self.workers < 1:
            raise InputError("--workers must be at least 1")


# -- exact values in JSON -------------------------------------------------------


def exact_to_json(c: CycloElem):
    """Rationals as "p" or "p/q" strings, everything else as {"m", "coords"}."""
    c = CycloElem.coerce(c)
    if c.is_rational():
        return str(c.as_fraction())
    return c.to_json()


def exact_from_json(obj) -> CycloElem:
    if isinstance(obj, str):
        text = obj.strip()
        if text.startswith("{"):
            try:
                return exact_from_json(json.loads(text))
            except json.JSONDecodeError as exc:
                raise InputError(f"cannot read the exact value {obj!r}: {exc}") from exc
        try:
            return CycloElem.rational(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot read the exact value {obj!r}") from exc
    if isinstance(obj, bool):
        raise InputError(f"cannot read the exact value {obj!r}")
    if isinstance(obj, int):
        return CycloElem.rational(obj)
    if isinstance(obj, dict):
        try:
            return CycloElem.from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"cannot read the exact value {obj!r}") from exc
    raise InputError(f"cannot read the exact value {obj!r}")


# -- backends -------------------------------------------------------------------


@dataclass
class Backend:
    L: Stratification
    feq: FuncEqData
    epsilon_route: str | None  # how feq.epsilon was obtained, if present
    info: dict
    rows: object = None  # callable(r) -> list of per-place dicts


def _field(q):
    if q is None:
        raise InputError("--q is required")
    try:
        parse_prime_power(q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return GF(q)


def _zeta_backend(cfg: RunConfig) -> Backend:
    from .zetafn import HyperellipticModel, zeta_stratification

    F = _field(cfg.q)
    if cfg.rational == (cfg.hyperelliptic is not None):
        raise InputError("give exactly one of --rational or --hyperelliptic")
    if cfg.rational:
        C = F
        info = {"curve": "P^1"}
    else:
        try:
            C = HyperellipticModel.parse(F, cfg.hyperelliptic)
        except (ParseError, ValueError) as exc:
            raise InputError(f"--hyperelliptic {cfg.hyperelliptic!r}: {exc}") from exc
        info = {"curve": f"u^2 = {C.f}"}
    L, feq = zeta_stratification(C)
    info["genus"] = feq.genus
    b = [L.count(i) for i in range(1, max(1, (feq.n + 1) // 2) + 1)]
    info["places_by_degree"] = b
    return Backend(L, feq, "closed-form", info)


def _ell_backend(cfg: RunConfig) -> Backend:
    from .ellfn import ConstantCurveError, EllCurveOverFqT, ell_stratification

    F = _field(cfg.q)
    coeffs = {k: cfg.a_invariants.get(k) or "0" for k in ("a1", "a2", "a3", "a4", "a6")}
    try:
        E = EllCurveOverFqT.parse(F, **coeffs)
        L, feq = ell_stratification(E, with_epsilon=cfg.epsilon_mode in ("auto", "table"), workers=cfg.workers)
    except ConstantCurveError as exc:
        raise InputError(str(exc)) from exc
    except (ParseError, ValueError) as exc:
        raise InputError(f"curve {coeffs}: {exc}") from exc
    from .ellfn import conductor

    bad, _ = conductor(E)
    info = {
        "curve": str(E),
        "conductor": [
            {"place": str(d.place), "type": d.type.value, "exponent": e, "disc_val": d.disc_val}
            for d, e in bad
        ],
    }

    def rows(r):
        return [
            {"place": str(d.place), "type": d.type.value, "a_v": d.a_v, "euler": [str(c) for c in d.euler_factor()]}
            for d in L.table(r)
        ]

    return Backend(L, feq, "table" if feq.epsilon is not None else None, info, rows)


def _dirichlet_backend(cfg: RunConfig) -> Backend:
    from .dirfn import DirichletChar, dirichlet_stratification
    from .ffpoly import places_up_to

    F = _field(cfg.q)
    if not cfg.components:
        raise InputError("give at least one --component")
    try:
        chi = DirichletChar.parse(F, cfg.components)
    except (ParseError, ValueError) as exc:
        raise InputError(f"--component: {exc}") from exc
    L, feq = dirichlet_stratification(chi, workers=cfg.workers)
    info = {
        "modulus": str(chi.modulus),
        "value_field": f"Q(zeta{chi.conductor})" if chi.conductor > 2 else "Q",
        "alpha_infinity": L.alpha_infinity,
    }

    def rows(r):
        return [
            {
                "place": str(v),
                "values": [exact_to_json(x) for x in chi.component_values(v)],
                "euler": [exact_to_json(x) for x in L.euler_factor(v)],
            }
            for v in places_up_to(F, r)
        ]

    return Backend(L, feq, None, info, rows)


def _generic_backend(cfg: RunConfig) -> Backend:
    if not cfg.input_path:
        raise InputError("generic needs --input <file>")
    try:
        data = json.loads(Path(cfg.input_path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{cfg.input_path}: {exc}") from exc
    return generic_backend_from_dict(data)


def generic_backend_from_dict(data: dict) -> Backend:
    try:
        c = FieldEndo(data.get("c", "id"))
        factors = {}
        for j, place in enumerate(data["places"]):
            euler = [exact_from_json(x) for x in place["euler"]]
            deg = int(place.get("degree", 1))
            label = place.get("label", f"v{j}")
            if any(euler[k] for k in range(1, min(deg, len(euler)))):
                raise InputError(f"place {label}: Euler factor has terms below its degree {deg}")
            factors[label] = euler
        eps = data.get("epsilon")
        feq = FuncEqData(
            D=[exact_from_json(x) for x in data.get("D", ["1"])],
            n=int(data["n"]),
            q=int(data["q"]),
            w=int(data.get("w", 0)),
            c=c,
            epsilon=None if eps is None else exact_from_json(eps),
            genus=int(data.get("genus", 0)),
            dim=int(data.get("dim", 1)),
            conductor_degree=int(data.get("conductor_degree", 0)),
        )
        L = TableStratification(factors)
    except KeyError as exc:
        raise InputError(f"generic input is missing the field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"generic input: {exc}") from exc
    return Backend(L, feq, "input" if feq.epsilon is not None else None, {"places": len(factors)})


_BACKENDS = {
    "zeta": _zeta_backend,
    "ell": _ell_backend,
    "dirichlet": _dirichlet_backend,
    "generic": _generic_backend,
}


# -- driver ---------------------------------------------------------------------


@dataclass
class RunReport:
    config: RunConfig
    result: LResult
    feq: FuncEqData
    epsilon_route: str
    info: dict
    rows: list | None
    exit_code: int

    def to_json(self) -> dict:
        r, feq = self.result, self.feq
        out = {
            "command": self.config.command,
            "q": feq.q,
            "w": feq.w,
            "c": feq.c.value,
            "n": feq.n,
            "d": feq.d,
            "genus": feq.genus,
            "dim": feq.dim,
            "conductor_degree": feq.conductor_degree,
            "D": [exact_to_json(x) for x in r.D],
            "N": [exact_to_json(x) for x in r.N],
            "epsilon": exact_to_json(r.epsilon),
            "epsilon_route": self.epsilon_route,
            "N_route": "full-product" if self.config.full_product else "functional-equation",
            "backend": self.info,
            "checks": r.checks,
        }
        if self.rows is not None:
            out["places"] = self.rows
        return out


def _check_dict(check, **extra) -> dict:
    out = {"passed": bool(check.passed)}
    for k, v in check.details.items():
        if k == "moduli":
            continue
        out[k] = v
    out.update(extra)
    return out


def run(cfg: RunConfig) -> RunReport:
    """Compute N and epsilon for the configured input and run the requested checks."""
    backend = _BACKENDS[cfg.command](cfg)
    L, feq = backend.L, backend.feq
    route = backend.epsilon_route
    if cfg.epsilon_mode == "known":
        feq = feq.with_epsilon(exact_from_json(cfg.epsilon_value))
        route = "known"
    elif cfg.epsilon_mode == "compute" or feq.epsilon is None:
        feq = feq.with_epsilon(alg_epsilon(L, feq.with_epsilon(None)))
        route = "compute"

    if cfg.full_product:
        N = list(alg_rationality(L, feq.D, 1, feq.n, feq.n).coeffs) if feq.n else [CycloElem.rational(1)]
    else:
        N = alg_funceq(L, feq)

    checks: dict = {}
    if "funceq" in cfg.checks:
        c = verify_functional_equation(N, feq)
        checks["funceq"] = _check_dict(c)
    if "rh" in cfg.checks:
        if poly_degree(N) >= 1:
            checks["rh"] = _check_dict(verify_riemann_hypothesis(N, feq.q, feq.w, cfg.rh_tol))
        else:
            checks["rh"] = {"passed": True, "tol": cfg.rh_tol, "note": "N is constant"}
    if "modulus" in cfg.checks:
        checks["modulus"] = _check_dict(verify_epsilon_modulus(feq.epsilon, feq, cfg.modulus_tol))
    if "degree" in cfg.checks:
        checks["degree"] = _check_dict(verify_degree_formula(N, feq))

    result = LResult(N=N, D=feq.D, epsilon=feq.epsilon, checks=checks)
    code = EXIT_OK if all(c["passed"] for c in checks.values()) else EXIT_CHECK
    rows = backend.rows(cfg.show_places) if cfg.show_places and backend.rows else None
    return RunReport(cfg, result, feq, route, backend.info, rows, code)


# -- output ---------------------------------------------------------------------


def render_json(report: RunReport) -> str:
    return json.dumps(report.to_json(), indent=2)


def _poly_text(coeffs) -> str:
    from .series import series_str

    return series_str(coeffs)


def render_table(report: RunReport) -> str:
    r, feq = report.result, report.feq
    head = [("command", report.config.command)]
    head += [(k, v) for k, v in report.info.items() if k != "conductor"]
    if "conductor" in report.info:
        head.append(("conductor", " ".join(f"{c['place']}^{c['exponent']}" for c in report.info["conductor"])))
    head += [
        ("q, w, c", f"{feq.q}, {feq.w}, {feq.c.value}"),
        ("n, d", f"{feq.n}, {feq.d}"),
        ("D(T)", _poly_text(r.D)),
        ("N(T)", _poly_text(r.N)),
        ("epsilon", f"{r.epsilon}   [{report.epsilon_route}]"),
    ]
    width = max(len(k) for k, _ in head) + 2
    lines = [f"{k:<{width}}{v}" for k, v in head]
    if report.rows:
        lines.append("")
        keys = [k for k in report.rows[0] if k != "place"]
        for row in report.rows:
            parts = [f"{row['place']:<24}"]
            for k in keys:
                val = row[k]
                if isinstance(val, list):
                    val = _poly_text([exact_from_json(x) for x in val]) if k == "euler" else ", ".join(
                        str(exact_from_json(x)) for x in val
                    )
                parts.append(f"{val!s:<24}")
            lines.append(" ".join(parts).rstrip())
    lines.append("")
    for name, c in r.checks.items():
        extra = ""
        if "max_residual" in c:
            extra = f"  max residual {c['max_residual']:.3e} (tol {c['tol']:g})"
        elif "residual" in c:
            extra = f"  residual {c['residual']:.3e} (tol {c['tol']:g})"
        elif "error" in c:
            extra = f"  {c['error']}"
        lines.append(f"check {name:<8} {'pass' if c['passed'] else 'FAIL'}{extra}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("json", "table"), default="json")
    shared.add_argument("--checks", default=",".join(ALL_CHECKS), help="comma list from funceq,rh,modulus,degree (or 'none')")
    shared.add_argument("--full-product", action="store_true", help="multiply all Euler factors up to degree n instead of using the functional equation")
    shared.add_argument("--workers", type=int, default=1)
    shared.add_argument("--rh-tol", type=float, default=1e-8)
    shared.add_argument("--epsilon", default="auto", help="auto, table (elliptic only), compute, or an exact value")
    shared.add_argument("--show-places", type=int, default=0, metavar="R", help="list Euler factors of places of degree <= R")

    p = argparse.ArgumentParser(prog="lffc", description="Exact L-functions over F_q(t) and hyperelliptic function fields.")
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeta", parents=[shared], help="zeta function of F_q(t) or of u^2 = f(t)")
    z.add_argument("--q", type=int, required=True)
    g = z.add_mutually_exclusive_group(required=True)
    g.add_argument("--hyperelliptic", metavar="F")
    g.add_argument("--rational", action="store_true")

    e = sub.add_parser("ell", parents=[shared], help="elliptic curve over F_q(t)")
    e.add_argument("--q", type=int, required=True)
    for a in ("a1", "a2", "a3", "a4", "a6"):
        e.add_argument(f"--{a}", default="0", metavar="RAT")

    d = sub.add_parser("dirichlet", parents=[shared], help="primitive Dirichlet character of F_q(t)")
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--component", action="append", default=[], metavar="P:BASE:zeta<m>^<e>")

    gen = sub.add_parser("generic", parents=[shared], help="explicit Euler factors from a JSON file")
    gen.add_argument("--input", required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    checks = () if ns.checks.strip() in ("", "none") else tuple(c.strip() for c in ns.checks.split(","))
    mode, value = ns.epsilon, None
    if mode not in ("auto", "table", "compute"):
        mode, value = "known", ns.epsilon
    return RunConfig(
        command=ns.command,
        q=getattr(ns, "q", None),
        hyperelliptic=getattr(ns, "hyperelliptic", None),
        rational=getattr(ns, "rational", False),
        a_invariants={a: getattr(ns, a) for a in ("a1", "a2", "a3", "a4", "a6") if hasattr(ns, a)},
        components=getattr(ns, "component", []),
        input_path=getattr(ns, "input", None),
        epsilon_mode=mode,
        epsilon_value=value,
        checks=checks,
        output=ns.format,
        full_product=ns.full_product,
        workers=ns.workers,
        rh_tol=ns.rh_tol,
        show_places=ns.show_places,
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = run(cfg)
    except InputError as exc:
        print(f"lffc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render_json(report) if cfg.output == "json" else render_table(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
