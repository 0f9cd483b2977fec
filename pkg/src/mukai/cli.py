"""Command-line front end.

Exit codes: 0 success, 1 an embedded verification failed, 2 bad input.
Reports go to stdout as canonical JSON (``--format json``) or as
``key: value`` lines (``--format text``).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .cohomology import DimensionError, SurfaceModel, dual, mukai_pair
from .correspondence import HypothesisError, PolarizedVector, classify, kummer_k3_vector, nonrigid_locus
from .fourier_mukai import adjoint_check, fm_forward, fm_inverse
from .kummer import EllipticThetaData, NotInComplement, theta_elliptic, theta_elliptic_q
from .lattice import LatticeError, orthogonal_complement
from .oracle import DEFAULT_N_MAX, H2Symbolic, closed_form_integral, fujiki_check, kummer_integral
from .selftest import run_selftest
from .serialize import InputError, builtin_surface, class_from_json, dumps, encode, parse_h2, surface_from_json

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class VerificationFailure(Exception):
    def __init__(self, report: Dict[str, Any]):
        super().__init__("verification failed")
        self.report = report


@dataclass
class Config:
    command: str
    surface: Optional[str] = None
    fmt: str = "json"
    seed: int = 0
    n_max: int = DEFAULT_N_MAX
    params: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# input helpers


def load_json(text: str, where: str) -> Any:
    """Inline JSON, or a path to a JSON file."""
    src = text
    if not text.lstrip().startswith(("{", "[", '"')):
        p = Path(text)
        if not p.exists():
            raise InputError(where, f"no such file {text!r}")
        src = p.read_text()
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(where, f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def resolve_surface(cfg: Config, doc: Any = None) -> SurfaceModel:
    if isinstance(doc, dict) and "surface" in doc:
        return surface_from_json(doc["surface"], "surface")
    if cfg.surface is None:
        return builtin_surface("abelian")
    if cfg.surface.lstrip().startswith("{") or Path(cfg.surface).exists():
        return surface_from_json(load_json(cfg.surface, "--surface"), "--surface")
    return builtin_surface(cfg.surface)


def load_class(text: str, where: str, cfg: Config):
    """A class document, bare or wrapped as {"surface": ..., "v": ...}."""
    doc = load_json(text, where)
    s = resolve_surface(cfg, doc)
    body = doc
    if isinstance(doc, dict) and "surface" in doc:
        keys = [k for k in doc if k != "surface"]
        if len(keys) != 1:
            raise InputError(where, "wrapped document needs exactly one class next to 'surface'")
        body = doc[keys[0]]
        where = f"{where}.{keys[0]}"
    return class_from_json(body, where, s), s


# ---------------------------------------------------------------------------
# subcommands


def cmd_pair(cfg: Config) -> Dict[str, Any]:
    x, s = load_class(cfg.params["x"], "--x", cfg)
    y, s2 = load_class(cfg.params["y"], "--y", cfg)
    if s != s2:
        raise InputError("--y", "classes live on different surfaces")
    return {"pair": mukai_pair(x, y, s), "x_square": mukai_pair(x, x, s), "y_square": mukai_pair(y, y, s)}


def cmd_perp(cfg: Config) -> Dict[str, Any]:
    v, s = load_class(cfg.params["v"], "--v", cfg)
    L = orthogonal_complement(v, s)
    return {"v": v, "perp": L, "rank": L.rank}


def cmd_classify(cfg: Config) -> Dict[str, Any]:
    v, s = load_class(cfg.params["v"], "--v", cfg)
    c = classify(v, s)
    out: Dict[str, Any] = {
        "v": v,
        "square": c.square,
        "dim": c.dim_moduli,
        "dim_fiber": c.dim_fiber,
        "regime": c.regime,
        "statement": c.statement,
    }
    if c.perp_gram is not None:
        out["perp"] = {"gram": c.perp_gram, "basis": c.perp_basis}
    if c.indecomposable is not None:
        out["indecomposable"] = c.indecomposable
    if c.kummer_vector is not None:
        out["kummer_vector"] = _kummer_report(c.kummer_vector)
    return out


def _kummer_report(w) -> Dict[str, Any]:
    return {
        "case": w.case_tag,
        "r": w.r,
        "xi_square": w.xi_square,
        "b": w.b,
        "w_square": w.square,
        "xi_tilde": {"N_coefficient_doubled": w.xi.dN2, "E_coefficients_doubled": list(w.xi.m)},
        "k_profile": list(w.k_profile()),
        "nonrigid_locus": [nonrigid_locus(w, i) for i in range(1, 17)],
        "checks": w.checks,
    }


def cmd_kummer_vector(cfg: Config) -> Dict[str, Any]:
    p = cfg.params
    v = PolarizedVector(p["r"], p["d"], p["n"], p["a"])
    rep = _kummer_report(kummer_k3_vector(v))
    rep["input"] = {"r": v.r, "d": v.d, "n": v.n, "a": v.a, "v_square": v.square}
    return rep


def cmd_theta(cfg: Config) -> Dict[str, Any]:
    doc = load_json(cfg.params["input"], "--input")
    if not isinstance(doc, dict) or "theta" not in doc:
        raise InputError("--input", "expected {\"theta\": {\"t\": ..., \"x\": ...}}")
    body = doc["theta"]
    try:
        t = EllipticThetaData(**{k: int(body["t"][k]) for k in ("r", "r1", "d", "d1", "n")})
    except KeyError as exc:
        raise InputError("--input.theta.t", f"missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError("--input.theta.t", str(exc)) from None
    s = builtin_surface("abelian")
    x = class_from_json(body.get("x"), "--input.theta.x", s)
    y, D = theta_elliptic(x, t, s)
    out: Dict[str, Any] = {"y": list(y), "D": list(D), "x_square": mukai_pair(x, x, s), "in_perp": y[3] == 0}
    if y[3] == 0:
        out["q"] = theta_elliptic_q(x, t, s)
        out["isometry"] = out["q"] == out["x_square"]
        if not out["isometry"]:
            raise VerificationFailure(out)
    return out


def cmd_fm(cfg: Config) -> Dict[str, Any]:
    x, s = load_class(cfg.params["x"], "--x", cfg)
    direction = cfg.params["dir"]
    f = fm_forward if direction == "forward" else fm_inverse
    g = fm_inverse if direction == "forward" else fm_forward
    y = f(x, s)
    out = {
        "direction": direction,
        "x": x,
        "image": y,
        "roundtrip": g(y, s) == x,
        "isometry": mukai_pair(y, y, s) == mukai_pair(x, x, s),
        "adjoint": adjoint_check(x, dual(x), s),
    }
    if not (out["roundtrip"] and out["isometry"] and out["adjoint"]):
        raise VerificationFailure(out)
    return out


_PATTERN = re.compile(r"([lxe])\^?(\d*)")


def parse_pattern(text: str):
    """'l^4', 'l^2 x^2', 'l^2*e^2', 'l2x1e1' -> (a, b, e)."""
    powers = {"l": 0, "x": 0, "e": 0}
    compact = re.sub(r"[\s*]", "", text)
    pos = 0
    for m in _PATTERN.finditer(compact):
        if m.start() != pos:
            break
        powers[m.group(1)] += int(m.group(2) or 1)
        pos = m.end()
    if pos != len(compact) or not compact:
        raise InputError("--pattern", f"cannot parse pattern {text!r}")
    return powers["l"], powers["x"], powers["e"]


def cmd_oracle(cfg: Config) -> Dict[str, Any]:
    p = cfg.params
    s = builtin_surface("abelian")
    n = p["n"]
    a, b, e = parse_pattern(p["pattern"])
    l = parse_h2(p["l"], s, "--l")
    x = parse_h2(p["x"], s, "--x") if p.get("x") else s.vector(f1=0)
    if a + b + e != 2 * n - 2:
        raise InputError("--pattern", f"total degree {a + b + e} != 2n-2 = {2 * n - 2}")
    if n > cfg.n_max:
        raise InputError("--n", f"n={n} exceeds oracle limit {cfg.n_max}")
    o = kummer_integral(n, a, b, H2Symbolic.from_model(l), H2Symbolic.from_model(x), e, n_max=cfg.n_max)
    c = closed_form_integral(n, a, b, e, s.dot(l, l), s.dot(l, x), s.dot(x, x))
    out = {"n": n, "pattern": [a, b, e], "oracle": o, "closed_form": c, "match": o == c}
    if not out["match"]:
        raise VerificationFailure(out)
    return out


def cmd_fujiki(cfg: Config) -> Dict[str, Any]:
    p = cfg.params
    s = builtin_surface("abelian")
    l = parse_h2(p["l"], s, "--l")
    x = parse_h2(p["x"], s, "--x") if p.get("x") else s.vector(f1=0)
    if p["n"] > cfg.n_max:
        raise InputError("--n", f"n={p['n']} exceeds oracle limit {cfg.n_max}")
    rep = fujiki_check(p["n"], l, x, k=p["k"], n_max=cfg.n_max)
    out = {
        "n": rep.n,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "q_lambda": rep.q_lambda,
        "q_y": rep.q_x,
        "recovered_ratio": rep.recovered_ratio,
        "equal": rep.equal,
    }
    if not rep.equal:
        raise VerificationFailure(out)
    return out


def cmd_selftest(cfg: Config) -> Dict[str, Any]:
    rep = run_selftest(cfg.seed, min(cfg.params.get("oracle_n", 4), cfg.n_max), cfg.params.get("samples", 100))
    out = {"seed": rep.seed, "oracle_n_max": rep.n_max, "checks": rep.checks, "counts": rep.counts, "passed": rep.passed}
    if not rep.passed:
        raise VerificationFailure(out)
    return out


COMMANDS = {
    "pair": cmd_pair,
    "perp": cmd_perp,
    "classify": cmd_classify,
    "kummer-vector": cmd_kummer_vector,
    "theta": cmd_theta,
    "fm": cmd_fm,
    "oracle-integrals": cmd_oracle,
    "fujiki-check": cmd_fujiki,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("arguments", message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="surface JSON file or document, 'abelian', 'ns:N' or 'k3ns:N'")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="oracle limit (env MUKAI_ORACLE_NMAX)")

    parser = _Parser(prog="mukai", description="Mukai lattices, Kummer varieties and Fourier-Mukai checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pair", parents=[common], help="Mukai pairing of two classes")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("perp", parents=[common], help="orthogonal complement of v")
    p.add_argument("--v", required=True)

    p = sub.add_parser("classify", parents=[common], help="regime of <v^2> and what it implies")
    p.add_argument("--v", required=True)

    p = sub.add_parser("kummer-vector", parents=[common], help="isotropic vector on Km(X) for <v^2> = 4")
    for k in ("r", "d", "n", "a"):
        p.add_argument(f"--{k}", type=int, required=True)

    p = sub.add_parser("theta", parents=[common], help="theta_v coordinates for the elliptic model")
    p.add_argument("--input", required=True)

    p = sub.add_parser("fm", parents=[common], help="cohomological Fourier-Mukai transform")
    p.add_argument("--dir", choices=("forward", "inverse"), default="forward")
    p.add_argument("--x", required=True)

    p = sub.add_parser("oracle-integrals", parents=[common], help="oracle integral versus closed form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--x")

    p = sub.add_parser("fujiki-check", parents=[common], help="Fujiki relation on oracle integrals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--x")
    p.add_argument("--k", type=int, default=0)

    p = sub.add_parser("selftest", parents=[common], help="seeded invariant suite")
    p.add_argument("--oracle-n", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    return parser


def parse_config(argv: List[str]) -> Config:
    ns = vars(build_parser().parse_args(argv))
    cfg = Config(ns.pop("command"), ns.pop("surface"), ns.pop("fmt"), ns.pop("seed"), ns.pop("n_max"))
    cfg.params = ns
    return cfg


def _text(obj: Any, prefix: str = "") -> List[str]:
    if isinstance(obj, dict):
        return [line for k in sorted(obj) for line in _text(obj[k], f"{prefix}{k}.")]
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        return [line for i, v in enumerate(obj) for line in _text(v, f"{prefix}{i}.")]
    return [f"{prefix[:-1]}: {_flat(obj)}"]


def _flat(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(u) for u in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "null" if v is None else str(v)


def render(report: Dict[str, Any], fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(encode(report)))
    return dumps(report)


def run(argv: List[str]):
    """Return (exit code, rendered report)."""
    fmt = "json"
    try:
        cfg = parse_config(argv)
        fmt = cfg.fmt
        report = COMMANDS[cfg.command](cfg)
        return EXIT_OK, render(report, fmt)
    except VerificationFailure as exc:
        return EXIT_VERIFY, render(exc.report, fmt)
    except InputError as exc:
        return EXIT_INPUT, render({"error": str(exc), "location": exc.where}, fmt)
    except (DimensionError, LatticeError, HypothesisError, NotInComplement, ValueError, KeyError, TypeError) as exc:
        return EXIT_INPUT, render({"error": f"{type(exc).__name__}: {exc}"}, fmt)
    except ArithmeticError as exc:
        return EXIT_VERIFY, render({"error": f"{type(exc).__name__}: {exc}"}, fmt)


def main(argv: Optional[List[str]] = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
