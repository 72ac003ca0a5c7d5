"""JSON import/export for every value the package trades in.

Formats (all plain JSON, deterministic on export: sorted keys, two-space
indent, trailing newline):

  algebra    {"size": k, "oplus": [[...]], "neg": [...]}   zero is index 0
  morphism   {"dom": <algebra or name>, "cod": ..., "map": [...]}
  ideal      {"members": [indices]}
  spectrum   {"primes": [[indices], ...]} in canonical order
  element    {"coords": [{"m": int, "a": int}, ...]}
  group      {"fibers": [chain sizes], "u": <element>}
  snf report {"free_factors": [...], "star_factors": [...], "isomorphic": bool, ...}

`import_json` detects the kind from the key set and rebuilds the most
structured standalone value: algebras, morphisms, elements, and groups come
back as package objects; ideals and spectra come back as member sets (they
need an algebra for full reconstruction — see `ideal_from_json`); reports
come back as dicts.  Schema violations raise SchemaError carrying a JSON
pointer to the offending spot.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .equivalence import SNFReport
from .lgroup import ChangChainGroup, ChangPair, GroupElement, ProductLuGroup, make_product_group
from .mv_core import FiniteMVAlgebra, MVMorphism, make_chain
from .spectrum import Ideal, Spectrum

__all__ = [
    "SchemaError",
    "to_jsonable",
    "dumps",
    "export_json",
    "import_json",
    "loads",
    "algebra_from_json",
    "morphism_from_json",
    "element_from_json",
    "group_from_json",
    "ideal_from_json",
    "spectrum_members_from_json",
]


class SchemaError(ValueError):
    """A JSON value that does not fit any expected shape.

    `location` is a JSON pointer ("/u/coords/1/m") into the offending
    document.
    """

    def __init__(self, message: str, location: str = ""):
        self.location = location or "/"
        super().__init__(f"{message} (at {self.location})")


def _expect(cond: bool, message: str, where: str):
    if not cond:
        raise SchemaError(message, where)


def _int(value: Any, where: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), "expected an integer", where)
    return value


def _int_list(value: Any, where: str) -> list[int]:
    _expect(isinstance(value, list), "expected a list of integers", where)
    return [_int(v, f"{where}/{i}") for i, v in enumerate(value)]


# -- export ---------------------------------------------------------------------


def to_jsonable(value: Any) -> Any:
    """Lower a package value to plain JSON-ready data."""
    if isinstance(value, FiniteMVAlgebra):
        return {
            "size": value.size,
            "oplus": [list(row) for row in value.oplus_rows],
            "neg": list(value.neg_list),
        }
    if isinstance(value, MVMorphism):
        return {
            "dom": to_jsonable(value.dom),
            "cod": to_jsonable(value.cod),
            "map": list(value.map),
        }
    if isinstance(value, Ideal):
        return {"members": sorted(value.members)}
    if isinstance(value, Spectrum):
        return {"primes": [sorted(p.members) for p in value.primes]}
    if isinstance(value, ChangPair):
        return {"m": value.m, "a": value.a}
    if isinstance(value, tuple) and value and all(isinstance(p, ChangPair) for p in value):
        return {"coords": [{"m": p.m, "a": p.a} for p in value]}
    if isinstance(value, ProductLuGroup):
        return {
            "fibers": [f.chain.size for f in value.fibers],
            "u": to_jsonable(value.u),
        }
    if isinstance(value, SNFReport):
        return {
            "size": value.size,
            "identify_zero": value.identify_zero,
            "relation_rows": value.relation_rows,
            "spectrum_size": value.spectrum_size,
            "free_factors": list(value.free_factors),
            "star_factors": list(value.star_factors),
            "isomorphic": value.isomorphic,
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    raise TypeError(f"no JSON form for {type(value).__name__}")


def dumps(value: Any) -> str:
    """Deterministic JSON text: sorted keys, indent 2, one trailing newline."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2) + "\n"


def export_json(value: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(value))


# -- import ---------------------------------------------------------------------


def algebra_from_json(obj: Any, where: str = "") -> FiniteMVAlgebra:
    _expect(isinstance(obj, dict), "expected an algebra object", where)
    for key in ("size", "oplus", "neg"):
        _expect(key in obj, f"missing key {key!r}", where)
    size = _int(obj["size"], f"{where}/size")
    _expect(size >= 2, "size must be at least 2", f"{where}/size")
    oplus = obj["oplus"]
    _expect(
        isinstance(oplus, list) and len(oplus) == size,
        f"oplus must be a {size}x{size} table",
        f"{where}/oplus",
    )
    rows = [_int_list(row, f"{where}/oplus/{i}") for i, row in enumerate(oplus)]
    for i, row in enumerate(rows):
        _expect(len(row) == size, f"row must have {size} entries", f"{where}/oplus/{i}")
    neg = _int_list(obj["neg"], f"{where}/neg")
    _expect(len(neg) == size, f"neg must have {size} entries", f"{where}/neg")
    flat = [v for row in rows for v in row] + neg
    _expect(all(0 <= v < size for v in flat), "table entry out of range", where)
    return FiniteMVAlgebra(size, rows, neg)


def morphism_from_json(
    obj: Any, names: Mapping[str, FiniteMVAlgebra] | None = None, where: str = ""
) -> MVMorphism:
    _expect(isinstance(obj, dict), "expected a morphism object", where)
    for key in ("dom", "cod", "map"):
        _expect(key in obj, f"missing key {key!r}", where)

    def endpoint(side: str) -> FiniteMVAlgebra:
        spot = obj[side]
        if isinstance(spot, str):
            _expect(
                names is not None and spot in names,
                f"unknown algebra name {spot!r}",
                f"{where}/{side}",
            )
            return names[spot]
        return algebra_from_json(spot, f"{where}/{side}")

    dom = endpoint("dom")
    cod = endpoint("cod")
    mp = _int_list(obj["map"], f"{where}/map")
    _expect(len(mp) == dom.size, f"map must have {dom.size} entries", f"{where}/map")
    _expect(all(0 <= v < cod.size for v in mp), "map entry out of range", f"{where}/map")
    return MVMorphism(dom, cod, tuple(mp))


def element_from_json(obj: Any, where: str = "") -> GroupElement:
    _expect(isinstance(obj, dict) and "coords" in obj, "expected an element object", where)
    coords = obj["coords"]
    _expect(isinstance(coords, list) and coords, "coords must be a nonempty list", f"{where}/coords")
    out = []
    for i, c in enumerate(coords):
        spot = f"{where}/coords/{i}"
        _expect(isinstance(c, dict) and set(c) >= {"m", "a"}, "expected {m, a}", spot)
        out.append(ChangPair(_int(c["m"], f"{spot}/m"), _int(c["a"], f"{spot}/a")))
    return tuple(out)


def group_from_json(obj: Any, where: str = "") -> ProductLuGroup:
    _expect(isinstance(obj, dict), "expected a group object", where)
    for key in ("fibers", "u"):
        _expect(key in obj, f"missing key {key!r}", where)
    sizes = _int_list(obj["fibers"], f"{where}/fibers")
    _expect(bool(sizes), "a group needs at least one fiber", f"{where}/fibers")
    _expect(all(s >= 2 for s in sizes), "fiber chain size must be at least 2", f"{where}/fibers")
    fibers = [ChangChainGroup(make_chain(s - 1)) for s in sizes]
    raw_u = element_from_json(obj["u"], f"{where}/u")
    _expect(len(raw_u) == len(fibers), "unit arity must match the fiber count", f"{where}/u")
    try:
        u = [f.pair(p.m, p.a) for f, p in zip(fibers, raw_u)]
        return make_product_group(fibers, [(p.m, p.a) for p in u])
    except ValueError as exc:
        raise SchemaError(str(exc), f"{where}/u") from exc


def ideal_from_json(obj: Any, algebra: FiniteMVAlgebra, where: str = "") -> Ideal:
    _expect(isinstance(obj, dict) and "members" in obj, "expected an ideal object", where)
    idx = _int_list(obj["members"], f"{where}/members")
    _expect(all(0 <= v < algebra.size for v in idx), "member out of range", f"{where}/members")
    return Ideal(algebra, frozenset(idx))


def spectrum_members_from_json(obj: Any, where: str = "") -> tuple[frozenset[int], ...]:
    _expect(isinstance(obj, dict) and "primes" in obj, "expected a spectrum object", where)
    primes = obj["primes"]
    _expect(isinstance(primes, list), "primes must be a list", f"{where}/primes")
    return tuple(
        frozenset(_int_list(p, f"{where}/primes/{i}")) for i, p in enumerate(primes)
    )


_KIND_KEYS = (
    ({"size", "oplus", "neg"}, lambda o, w: algebra_from_json(o, w)),
    ({"dom", "cod", "map"}, lambda o, w: morphism_from_json(o, None, w)),
    ({"coords"}, lambda o, w: element_from_json(o, w)),
    ({"fibers", "u"}, lambda o, w: group_from_json(o, w)),
    ({"members"}, lambda o, w: frozenset(_int_list(o["members"], f"{w}/members"))),
    ({"primes"}, lambda o, w: spectrum_members_from_json(o, w)),
    ({"free_factors", "star_factors"}, lambda o, w: dict(o)),
)


def loads(text: str):
    """Parse JSON text and rebuild the value whose key set it matches."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}", "/") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object", "/")
    for keys, build in _KIND_KEYS:
        if keys <= set(obj):
            return build(obj, "")
    raise SchemaError(f"unrecognized key set {sorted(obj)}", "/")


def import_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
