"""Catalog of the four shipped algebras and the (a,b,c,d) <-> (a,b,c,p)
basis change of the braided algebra."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .ncalg import AlphabetError, NCPoly, Presentation, Relation, nc_mul, poly_sum
from .textformat import parse_ncpoly

# name -> (generators with weights, relations, parameters, central generators)
_DEFINITIONS = {
    # quantum SL_q(2) function algebra
    "AR": (
        {"a": 1, "b": 1, "c": 1, "d": 2},
        [
            "a*b = q^-1*b*a",
            "a*c = q^-1*c*a",
            "b*d = q^-1*d*b",
            "c*d = q^-1*d*c",
            "b*c = c*b",
            "a*d - d*a = (q^-1 - q)*b*c",
            "a*d - q^-1*b*c = 1",
        ],
        ("q",),
        (),
    ),
    # braided algebra, matrix generators
    "BR_abcd": (
        {"a": 1, "b": 1, "c": 1, "d": 2},
        [
            "b*a = q^2*a*b",
            "c*a = q^-2*a*c",
            "a*d = d*a",
            "b*c = c*b + (1 - q^-2)*a*(d - a)",
            "d*b = b*d + (1 - q^-2)*a*b",
            "c*d = d*c + (1 - q^-2)*c*a",
            "a*d - q^2*c*b = 1",
        ],
        ("q",),
        (),
    ),
    # braided algebra with the central bosonic element p = q^-2 a + d
    "BR_abcp": (
        {"a": 1, "b": 1, "c": 1, "p": 2},
        [
            "b*a = q^2*a*b",
            "a*c = q^2*c*a",
            "b*c = c*b - (1 - q^-4)*a^2 + (1 - q^-2)*p*a",
            "-q^-2*a*a + a*p - q^2*c*b = 1",
        ],
        ("q",),
        ("p",),
    ),
    # two-parameter deformation
    "TQR": (
        {"a": 1, "b": 1, "c": 1, "d": 2},
        [
            "a*b = r*b*a",
            "a*c = r*c*a",
            "b*c = c*b",
            "b*d = r*d*b + (q^-2 - 1)*(r^2 - 1)*b*a",
            "c*d = r*d*c + (q^-2 - 1)*(r^2 - 1)*c*a",
            "a*d - d*a = (r - r^-1)*q^2*b*c",
            "q^2*d*a + (1 - q^2)*a*a - r^-1*q^4*c*b = 1",
        ],
        ("q", "r"),
        (),
    ),
}

BUILTIN_NAMES = tuple(_DEFINITIONS)

# lower-case aliases accepted by the CLI
ALIASES = {"ar": "AR", "br_abcd": "BR_abcd", "br": "BR_abcd", "br_abcp": "BR_abcp", "tqr": "TQR"}


def parse_relation(text: str, generators) -> Relation:
    if text.count("=") != 1:
        raise ValueError(f"relation must contain exactly one '=': {text!r}")
    lhs, rhs = text.split("=")
    return Relation(parse_ncpoly(lhs, generators), parse_ncpoly(rhs, generators))


def make_presentation(name, weights, relations, parameters=("q",), central=()) -> Presentation:
    gens = list(weights)
    rels = [parse_relation(t, gens) if isinstance(t, str) else t for t in relations]
    return Presentation(name, gens, rels, weights=weights, parameters=parameters, central=central)


def builtin(name: str) -> Presentation:
    name = ALIASES.get(name, name)
    if name not in _DEFINITIONS:
        raise KeyError(f"unknown presentation {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return _build(name)


@lru_cache(maxsize=None)
def _build(name: str) -> Presentation:
    weights, rels, params, central = _DEFINITIONS[name]
    return make_presentation(name, weights, rels, params, central)


@lru_cache(maxsize=None)
def specialized(name: str, bindings: tuple) -> Presentation:
    """Cached specialization, e.g. ``specialized("TQR", (("r", "q"),))``."""
    from .scalar import S

    P = builtin(name)
    return P.specialize({k: S(v) for k, v in bindings})


def definition_text(name: str) -> dict:
    weights, rels, params, central = _DEFINITIONS[ALIASES.get(name, name)]
    return {"weights": dict(weights), "relations": list(rels), "parameters": list(params), "central": list(central)}


@dataclass(frozen=True)
class BasisMap:
    """Generator images in both directions between two presentations."""

    source: str
    target: str
    forward: Mapping[str, NCPoly]
    backward: Mapping[str, NCPoly]

    def inverse(self) -> "BasisMap":
        return BasisMap(self.target, self.source, self.backward, self.forward)


def substitute_generators(x: NCPoly, images: Mapping[str, NCPoly]) -> NCPoly:
    parts = []
    for w, c in x.items():
        acc = NCPoly.scalar(c)
        for g in w:
            if g not in images:
                raise AlphabetError(f"basis map has no image for generator {g!r}")
            acc = nc_mul(acc, images[g])
        parts.append(acc)
    return poly_sum(parts)


def change_basis(x: NCPoly, images: "Mapping[str, NCPoly] | BasisMap", target: Presentation) -> NCPoly:
    """Substitute generator images and normalize in ``target``."""
    if isinstance(images, BasisMap):
        images = images.forward
    for img in images.values():
        target.check_alphabet(img)
    return target.normal_form(substitute_generators(x, images))


@lru_cache(maxsize=None)
def p_basis_map() -> BasisMap:
    """(a,b,c,p) in terms of (a,b,c,d) and back, via p = q^-2 a + d."""
    abcd = ("a", "b", "c", "d")
    abcp = ("a", "b", "c", "p")
    to_abcd = {g: NCPoly.gen(g) for g in "abc"}
    to_abcd["p"] = parse_ncpoly("q^-2*a + d", abcd)
    to_abcp = {g: NCPoly.gen(g) for g in "abc"}
    to_abcp["d"] = parse_ncpoly("p - q^-2*a", abcp)
    return BasisMap("BR_abcp", "BR_abcd", to_abcd, to_abcp)
