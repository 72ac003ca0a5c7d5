"""Execution of parsed scripts: bind names, dispatch commands, build a report.

Failure taxonomy (process exit codes in parentheses):

  * parse errors never reach this module — the parser raises first (2);
  * semantic errors (3): a definition or command whose inputs are the wrong
    kind or break a law at binding time — a morphism that fails the morphism
    laws, a table that fails the axioms, a negative element where a
    nonnegative one is required, a fiber-count mismatch, an unwritable
    export path;
  * command failures (1): well-posed checks whose verdict is negative — a
    non-member, a failed round trip, a non-isomorphic free quotient;
  * internal invariant breaches (4) propagate as InternalInvariantError.

A failing command does not stop the run; every command reports an outcome
and the overall verdict is "pass" exactly when all of them passed.  Reports
contain no timing or environment data: the same script and config produce
byte-identical JSON.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .equivalence import (
    coordinate_ideal_checks,
    canonical_good_sequence,
    free_quotient_experiment,
    generated_membership,
    good_sequence_sum,
    iota_naturality,
    iota_roundtrip,
    segment_generation_check,
    star_algebra,
    star_membership,
    upsilon,
)
from .errors import InternalInvariantError
from .lgroup import ChangChainGroup, ProductLuGroup, gamma_segment
from .mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    check_morphism,
    check_mv_axioms,
    make_chain,
    make_product,
)
from .script import (
    AlgebraDef,
    ChainExpr,
    Command,
    GroupDef,
    HomDef,
    NameExpr,
    ProductExpr,
    Script,
    TableExpr,
)
from .serialize import (
    SchemaError,
    algebra_from_json,
    dumps,
    element_from_json,
    export_json,
    to_jsonable,
)
from .spectrum import canonical_embedding, enumerate_ideals, ideals_by_subset_filter, spectrum
from .sweeps import run_all_checks

__all__ = ["RunConfig", "SemanticError", "CommandOutcome", "RunReport", "execute"]


@dataclass(frozen=True)
class RunConfig:
    max_size: int = 12
    window: int = 4
    json_out: str | None = None


class SemanticError(ValueError):
    """A statement whose meaning is ill-formed; carries the line and a
    JSON-ready counterexample payload."""

    def __init__(self, message: str, line: int, counterexample: Any = None):
        self.line = line
        self.counterexample = counterexample
        super().__init__(f"{message} (line {line})")

    def as_json(self) -> dict:
        return {
            "code": "semantic",
            "message": str(self),
            "line": self.line,
            "counterexample": self.counterexample,
        }


@dataclass
class CommandOutcome:
    command: str
    line: int
    target: str | None
    status: str  # "pass" | "fail"
    detail: dict

    def as_json(self) -> dict:
        return {
            "command": self.command,
            "line": self.line,
            "target": self.target,
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class RunReport:
    config: RunConfig
    outcomes: list[CommandOutcome] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if all(o.status == "pass" for o in self.outcomes) else "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.overall == "pass" else 1

    def as_json(self) -> dict:
        return {
            "config": {"max_size": self.config.max_size, "window": self.config.window},
            "commands": [o.as_json() for o in self.outcomes],
            "overall": self.overall,
        }

    def to_text(self) -> str:
        return dumps(self.as_json())


def _element_json(x) -> dict:
    return to_jsonable(x)


class _Runner:
    def __init__(self, config: RunConfig):
        self.config = config
        self.env: dict[str, tuple[str, Any]] = {}
        self.report = RunReport(config)
        self._stars: dict[FiniteMVAlgebra, Any] = {}

    # -- helpers --

    def star_of(self, algebra: FiniteMVAlgebra):
        s = self._stars.get(algebra)
        if s is None:
            s = star_algebra(algebra)
            self._stars[algebra] = s
        return s

    def value(self, name: str, kinds: tuple[str, ...], line: int):
        kind, value = self.env[name]
        if kind not in kinds:
            raise SemanticError(
                f"{name!r} has kind {kind!r}; this command needs "
                + " or ".join(repr(k) for k in kinds),
                line,
                {"name": name, "kind": kind},
            )
        return kind, value

    def element_in(self, group: ProductLuGroup, raw: Any, line: int):
        try:
            coords = element_from_json(raw)
        except SchemaError as exc:
            raise SemanticError(f"bad element literal: {exc}", line, raw) from exc
        if len(coords) != group.k:
            raise SemanticError(
                f"element has {len(coords)} coordinates, the group has {group.k}",
                line,
                raw,
            )
        try:
            return tuple(f.pair(p.m, p.a) for f, p in zip(group.fibers, coords))
        except ValueError as exc:
            raise SemanticError(f"bad element: {exc}", line, raw) from exc

    # -- definitions --

    def eval_algebra_expr(self, expr, line: int) -> FiniteMVAlgebra:
        if isinstance(expr, ChainExpr):
            if expr.height < 1:
                raise SemanticError(
                    "chain height must be at least 1", line, {"height": expr.height}
                )
            return make_chain(expr.height)
        if isinstance(expr, NameExpr):
            kind, value = self.env[expr.name]
            if kind != "algebra":
                raise SemanticError(
                    f"{expr.name!r} is a {kind}, not an algebra", line, {"name": expr.name}
                )
            return value
        if isinstance(expr, ProductExpr):
            return make_product(
                self.eval_algebra_expr(expr.left, line),
                self.eval_algebra_expr(expr.right, line),
            )
        if isinstance(expr, TableExpr):
            try:
                a = algebra_from_json(expr.obj)
            except SchemaError as exc:
                raise SemanticError(f"bad table: {exc}", line, expr.obj) from exc
            report = check_mv_axioms(a)
            if not report.ok:
                raise SemanticError(
                    f"table violates the {report.violations[0][0]} axiom",
                    line,
                    {"violations": [[n, list(w)] for n, w in report.violations[:5]]},
                )
            return a
        raise InternalInvariantError(f"unknown algebra expression {expr!r}")

    def define_algebra(self, stmt: AlgebraDef):
        self.env[stmt.name] = ("algebra", self.eval_algebra_expr(stmt.expr, stmt.line))

    def define_hom(self, stmt: HomDef):
        _, dom = self.value(stmt.dom, ("algebra",), stmt.line)
        _, cod = self.value(stmt.cod, ("algebra",), stmt.line)
        mapping = [-1] * dom.size
        for a, b in stmt.pairs:
            if not 0 <= a < dom.size:
                raise SemanticError(f"index {a} outside the domain carrier", stmt.line, [a, b])
            if not 0 <= b < cod.size:
                raise SemanticError(f"value {b} outside the codomain carrier", stmt.line, [a, b])
            if mapping[a] != -1:
                raise SemanticError(f"index {a} mapped twice", stmt.line, [a, b])
            mapping[a] = b
        missing = [a for a, v in enumerate(mapping) if v == -1]
        if missing:
            raise SemanticError(
                f"map leaves domain index {missing[0]} unassigned", stmt.line, missing
            )
        h = MVMorphism(dom, cod, tuple(mapping))
        report = check_morphism(h)
        if not report.ok:
            raise SemanticError(
                f"map breaks the {report.violations[0][0]} law",
                stmt.line,
                {
                    "map": list(h.map),
                    "violations": [[n, list(w)] for n, w in report.violations[:5]],
                },
            )
        self.env[stmt.name] = ("hom", h)

    def define_group(self, stmt: GroupDef):
        if len(stmt.unit) != len(stmt.sizes):
            raise SemanticError(
                f"{len(stmt.sizes)} fibers but {len(stmt.unit)} unit coordinates",
                stmt.line,
                {"fibers": list(stmt.sizes), "unit": [list(p) for p in stmt.unit]},
            )
        for s in stmt.sizes:
            if s < 2:
                raise SemanticError(f"fiber chain size {s} is too small", stmt.line, s)
        fibers = [ChangChainGroup(make_chain(s - 1)) for s in stmt.sizes]
        try:
            u = tuple(f.pair(m, a) for f, (m, a) in zip(fibers, stmt.unit))
            g = ProductLuGroup(fibers, u)
        except ValueError as exc:
            raise SemanticError(
                f"bad unit: {exc}", stmt.line, [list(p) for p in stmt.unit]
            ) from exc
        self.env[stmt.name] = ("group", g)

    # -- commands --

    def run_command(self, cmd: Command):
        handler = getattr(self, f"cmd_{cmd.kind}")
        passed, detail = handler(cmd)
        self.report.outcomes.append(
            CommandOutcome(
                command=cmd.kind,
                line=cmd.line,
                target=cmd.name if not cmd.check_all else "all",
                status="pass" if passed else "fail",
                detail=detail,
            )
        )

    def cmd_spec(self, cmd: Command):
        _, a = self.value(cmd.name, ("algebra",), cmd.line)
        sp = spectrum(a)
        emb = canonical_embedding(a)
        injective = emb.is_injective()
        detail = {
            "primes": [sorted(p.members) for p in sp.primes],
            "count": len(sp.primes),
            "embedding_injective": injective,
        }
        return injective, detail

    def cmd_star(self, cmd: Command):
        _, a = self.value(cmd.name, ("algebra",), cmd.line)
        star = self.star_of(a)
        detail = {
            "fibers": star.ambient.k,
            "heights": [f.height for f in star.ambient.fibers],
            "unit": _element_json(star.u),
            "injective": star.injective,
        }
        return star.injective, detail

    def cmd_gamma(self, cmd: Command):
        _, g = self.value(cmd.name, ("group",), cmd.line)
        seg = gamma_segment(g)
        detail = {
            "size": seg.algebra.size,
            "zero_index": seg.index[g.zero],
            "unit_index": seg.index[g.u],
        }
        return True, detail

    def cmd_roundtrip(self, cmd: Command):
        kind, value = self.value(cmd.name, ("algebra", "group"), cmd.line)
        if kind == "algebra":
            star = self.star_of(value)
            report = iota_roundtrip(star)
            gen = segment_generation_check(star, bound=min(2, self.config.window))
            detail = {
                "injective": report.injective,
                "onto_segment": report.onto_segment,
                "is_morphism": report.is_morphism,
                "members_match": report.members_match,
                "window_generated": gen.ok,
                "checked": report.checked,
            }
            return report.holds and gen.ok, detail
        result = upsilon(value, window=self.config.window)
        detail = {
            "additive": result.additive,
            "order_embedding": result.order_embedding,
            "preserves_unit": result.preserves_unit,
            "segment_identity": result.segment_identity,
            "surjective": result.surjective,
            "box_is_circle": result.box_is_circle,
            "window_elements": result.window_elements,
        }
        return result.holds, detail

    def _segment_context(self, cmd: Command):
        kind, value = self.value(cmd.name, ("algebra", "group"), cmd.line)
        if kind == "group":
            return value, gamma_segment(value)
        star = self.star_of(value)
        return star.ambient, gamma_segment(star.ambient, star.u)

    def cmd_goodseq(self, cmd: Command):
        group, seg = self._segment_context(cmd)
        x = self.element_in(group, cmd.element, cmd.line)
        if not group.leq(group.zero, x):
            raise SemanticError(
                "only nonnegative elements have good sequences",
                cmd.line,
                _element_json(x),
            )
        gs = canonical_good_sequence(seg, x)
        back = good_sequence_sum(seg, gs.entries)
        if back != x:
            raise InternalInvariantError("canonical sequence lost its sum")
        detail = {
            "entries": list(gs.entries),
            "elements": [_element_json(seg.elements[e]) for e in gs.entries],
            "length": len(gs.entries),
        }
        return True, detail

    def cmd_member(self, cmd: Command):
        kind, value = self.value(cmd.name, ("algebra", "group", "hom"), cmd.line)
        if kind == "algebra":
            star = self.star_of(value)
            x = self.element_in(star.ambient, cmd.element, cmd.line)
            witness = star_membership(star, x)
        elif kind == "group":
            seg = gamma_segment(value)
            x = self.element_in(value, cmd.element, cmd.line)
            witness = generated_membership(value, value.u, set(seg.elements), x)
        else:  # the subgroup generated by the image of a morphism
            star = self.star_of(value.cod)
            allowed = {star.a_circle[value.map[a]]: a for a in range(value.dom.size)}
            x = self.element_in(star.ambient, cmd.element, cmd.line)
            witness = generated_membership(star.ambient, star.u, allowed, x)
        detail = {
            "member": witness.member,
            "positive": [_element_json(e) for e in witness.positive],
            "negative": [_element_json(e) for e in witness.negative],
        }
        if witness.missing is not None:
            detail["missing"] = _element_json(witness.missing)
        return witness.member, detail

    def cmd_freequotient(self, cmd: Command):
        _, a = self.value(cmd.name, ("algebra",), cmd.line)
        report = free_quotient_experiment(
            a, identify_zero=not cmd.keep_zero, star=self.star_of(a)
        )
        return report.isomorphic, to_jsonable(report)

    def cmd_check(self, cmd: Command):
        max_size = cmd.max_size if cmd.max_size is not None else self.config.max_size
        window = cmd.window if cmd.window is not None else self.config.window
        if cmd.check_all:
            suites = run_all_checks(max_size=max_size, window=window)
            detail = {"suites": [s.as_json() for s in suites]}
            return all(s.ok for s in suites), detail
        kind, value = self.value(cmd.name, ("algebra", "group", "hom"), cmd.line)
        if kind == "algebra":
            axioms = check_mv_axioms(value).ok
            round_trip = iota_roundtrip(self.star_of(value)).holds
            detail = {"axioms": axioms, "iota_roundtrip": round_trip}
            if value.size <= 12:
                fast = {i.members for i in enumerate_ideals(value)}
                slow = {i.members for i in ideals_by_subset_filter(value)}
                detail["ideal_oracle"] = fast == slow
            return all(detail.values()), detail
        if kind == "hom":
            law = check_morphism(value).ok
            square = iota_naturality(value).ok
            detail = {"morphism_law": law, "iota_square": square}
            return law and square, detail
        seg = gamma_segment(value)
        result = upsilon(value, window=window, segment=seg)
        ideals_ok = all(
            coordinate_ideal_checks(value, zf, segment=seg).holds
            for r in range(1, value.k + 1)
            for zf in itertools.combinations(range(value.k), r)
        )
        sums_ok = True
        for x in value.window(min(2, window)):
            if not value.leq(value.zero, x):
                continue
            gs = canonical_good_sequence(seg, x)
            if good_sequence_sum(seg, gs.entries) != x:
                sums_ok = False
        detail = {
            "upsilon": result.holds,
            "coordinate_ideals": ideals_ok,
            "good_sequence_sums": sums_ok,
        }
        return result.holds and ideals_ok and sums_ok, detail

    def cmd_export(self, cmd: Command):
        _, value = self.value(cmd.name, ("algebra", "group", "hom"), cmd.line)
        try:
            export_json(value, cmd.path)
        except OSError as exc:
            raise SemanticError(
                f"cannot write {cmd.path!r}: {exc}", cmd.line, {"path": cmd.path}
            ) from exc
        return True, {"path": cmd.path}


def execute(script: Script, config: RunConfig | None = None) -> RunReport:
    """Run a parsed script.  Returns the report; raises SemanticError for
    ill-formed statements and lets InternalInvariantError propagate."""
    runner = _Runner(config or RunConfig())
    for stmt in script.statements:
        if isinstance(stmt, AlgebraDef):
            runner.define_algebra(stmt)
        elif isinstance(stmt, HomDef):
            runner.define_hom(stmt)
        elif isinstance(stmt, GroupDef):
            runner.define_group(stmt)
        elif isinstance(stmt, Command):
            runner.run_command(stmt)
        else:
            raise InternalInvariantError(f"unknown statement {stmt!r}")
    return runner.report
