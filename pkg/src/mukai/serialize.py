"""JSON documents for surfaces, classes and lattices.

Integers are written as decimal strings and rationals as "p/q", so that
consumers without big integers can read them.  Key order is canonical.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

from .cohomology import EvenClass, SurfaceModel, elliptic_product_model, polarized_model
from .lattice import IntegralLattice


class InputError(ValueError):
    """Malformed input document; ``where`` names the offending field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def parse_int(v: Any, where: str = "value") -> int:
    if isinstance(v, bool):
        raise InputError(where, "expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise InputError(where, f"expected an integer or decimal string, got {v!r}")


def encode(obj: Any) -> Any:
    """Recursively convert to JSON-ready values with string integers."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, EvenClass):
        return class_to_json(obj)
    if isinstance(obj, SurfaceModel):
        return surface_to_json(obj)
    if isinstance(obj, IntegralLattice):
        return lattice_to_json(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2)


def surface_to_json(s: SurfaceModel) -> dict:
    return {"kind": s.kind, "gram": [[str(v) for v in row] for row in s.h2_gram], "labels": list(s.basis_labels)}


def surface_from_json(d: Any, where: str = "surface") -> SurfaceModel:
    if isinstance(d, str):
        return builtin_surface(d)
    if not isinstance(d, dict):
        raise InputError(where, "expected an object")
    try:
        gram = [[parse_int(v, f"{where}.gram[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(d["gram"])]
        labels = d.get("labels") or [f"e{i + 1}" for i in range(len(gram))]
        return SurfaceModel(d.get("kind", "abelian"), gram, labels)
    except KeyError as exc:
        raise InputError(where, f"missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(where, str(exc)) from None


def builtin_surface(name: str) -> SurfaceModel:
    """'abelian' (full rank-6 H^2), 'ns:N' or 'k3ns:N' (Z H with (H^2) = 2N)."""
    if name in ("abelian", "elliptic"):
        return elliptic_product_model()
    kind, _, n = name.partition(":")
    if kind in ("ns", "k3ns") and n:
        return polarized_model(parse_int(n, "surface"), "abelian" if kind == "ns" else "k3")
    raise InputError("surface", f"unknown built-in surface {name!r}")


def class_to_json(x: EvenClass) -> dict:
    return {"r": str(x.r), "c1": [str(v) for v in x.c1], "a": str(x.a)}


def class_from_json(d: Any, where: str = "class", s: SurfaceModel | None = None) -> EvenClass:
    if not isinstance(d, dict):
        raise InputError(where, "expected an object with keys r, c1, a")
    try:
        r = parse_int(d["r"], f"{where}.r")
        a = parse_int(d["a"], f"{where}.a")
        raw = d.get("c1", [])
    except KeyError as exc:
        raise InputError(where, f"missing key {exc}") from None
    if isinstance(raw, dict):
        if s is None:
            raise InputError(f"{where}.c1", "labelled c1 needs a surface model")
        c1 = [0] * s.h2_rank
        for lab, v in raw.items():
            if lab not in s.basis_labels:
                raise InputError(f"{where}.c1", f"unknown label {lab!r}")
            c1[s.basis_labels.index(lab)] += parse_int(v, f"{where}.c1.{lab}")
    elif isinstance(raw, list):
        c1 = [parse_int(v, f"{where}.c1[{i}]") for i, v in enumerate(raw)]
    else:
        raise InputError(f"{where}.c1", "expected a list or a label map")
    if s is not None and len(c1) != s.h2_rank:
        raise InputError(f"{where}.c1", f"length {len(c1)} does not match H^2 rank {s.h2_rank}")
    return EvenClass(r, tuple(c1), a)


def lattice_to_json(L: IntegralLattice) -> dict:
    out = {"gram": [[str(v) for v in row] for row in L.gram]}
    if L.basis is not None:
        out["basis"] = [[str(v) for v in row] for row in L.basis]
    return out


def lattice_from_json(d: Any, where: str = "lattice") -> IntegralLattice:
    if not isinstance(d, dict) or "gram" not in d:
        raise InputError(where, "expected an object with a gram matrix")
    gram = [[parse_int(v, f"{where}.gram") for v in row] for row in d["gram"]]
    return IntegralLattice(gram)


def parse_h2(text: str, s: SurfaceModel, where: str = "h2") -> tuple:
    """Parse a label combination such as 'f1+f2', '2f1-3d13' or '-H'."""
    import re

    compact = text.replace(" ", "")
    if not compact:
        raise InputError(where, "empty expression")
    vec = [0] * s.h2_rank
    pos = 0
    for m in re.finditer(r"([+-]?)(\d*)\*?([A-Za-z_][A-Za-z0-9_]*)", compact):
        if m.start() != pos:
            raise InputError(where, f"cannot parse {compact[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        label = m.group(3)
        if label not in s.basis_labels:
            raise InputError(where, f"unknown label {label!r}; have {list(s.basis_labels)}")
        vec[s.basis_labels.index(label)] += sign * coeff
        pos = m.end()
    if pos != len(compact):
        raise InputError(where, f"cannot parse {compact[pos:]!r}")
    return tuple(vec)
