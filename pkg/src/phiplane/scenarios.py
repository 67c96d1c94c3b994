"""Symbolic replay of the transition case analyses for torus translations.

A scenario fixes which pieces of a rectangle exchange map into which,
with one piece split into two sub-pieces.  Measure preservation turns
each scenario into linear equalities between piece measures; exact
elimination then forces an integer combination of the translation
components r and s, contradicting ergodicity.  Shifts are kept as free
integer symbols so every conclusion holds for all shift assignments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

Source = str            # "1a", "1b" or a piece number as text


class ScenarioError(ValueError):
    """Ill-formed or inconsistent transition scenario."""


@dataclass(frozen=True, eq=False)
class Scenario:
    """One transition hypothesis on an exchange of `piece_count` pieces."""

    name: str
    piece_count: int
    refining_piece: int | None
    transitions: dict[Source, int]

    def __post_init__(self) -> None:
        # transitions are either absent (no inclusion information, as for
        # the two-piece case) or specified for every source
        sources = self._expected_sources()
        if self.transitions and set(self.transitions) != sources:
            raise ScenarioError(f"{self.name}: transitions must cover {sorted(sources)}")
        for src, tgt in self.transitions.items():
            if not 1 <= tgt <= self.piece_count:
                raise ScenarioError(f"{self.name}: target {tgt} out of range")
            if src.isdigit() and int(src) == tgt:
                raise ScenarioError(
                    f"{self.name}: piece {src} cannot map into itself")

    def _expected_sources(self) -> set[Source]:
        out: set[Source] = set()
        for i in range(1, self.piece_count + 1):
            if i == self.refining_piece:
                out |= {f"{i}a", f"{i}b"}
            else:
                out.add(str(i))
        return out

    def source_piece(self, src: Source) -> int:
        return int(src.rstrip("ab"))


@dataclass(frozen=True)
class MeasureSystem:
    """Measure variables with their linear equalities and r, s expressions."""

    variables: tuple[sp.Symbol, ...]
    equalities: tuple[sp.Expr, ...]       # each expression == 0
    r_expr: sp.Expr
    s_expr: sp.Expr
    shift_symbols: tuple[sp.Symbol, ...]


@dataclass(frozen=True)
class IntegerRelation:
    """coeff_r * r + coeff_s * s = constant, an identity in the shifts."""

    coeff_r: sp.Expr
    coeff_s: sp.Expr
    constant: sp.Expr

    def is_nonzero(self) -> bool:
        return sp.expand(self.coeff_r) != 0 or sp.expand(self.coeff_s) != 0

    def evaluate(self, shifts: dict[sp.Symbol, int],
                 r: float, s: float) -> float:
        cr = float(self.coeff_r.subs(shifts))
        cs = float(self.coeff_s.subs(shifts))
        c0 = float(self.constant.subs(shifts))
        return cr * r + cs * s - c0


def _measure_symbol(scenario: Scenario, src: Source) -> sp.Symbol:
    return sp.Symbol(f"a{src}", positive=True)


def shift_symbols(piece_count: int) -> tuple[list[sp.Symbol], list[sp.Symbol]]:
    ns = [sp.Symbol(f"n{i}", integer=True) for i in range(1, piece_count + 1)]
    ms = [sp.Symbol(f"m{i}", integer=True) for i in range(1, piece_count + 1)]
    return ns, ms


def derive_constraints(scenario: Scenario) -> MeasureSystem:
    """Measure equalities forced by the transitions.

    The transition targets cover every source, so for each target piece
    the source measures sum exactly to the target measure.
    """
    sources = sorted(scenario._expected_sources())
    sym = {src: _measure_symbol(scenario, src) for src in sources}

    def piece_measure(i: int) -> sp.Expr:
        if i == scenario.refining_piece:
            return sym[f"{i}a"] + sym[f"{i}b"]
        return sym[str(i)]

    eqs: list[sp.Expr] = []
    if scenario.transitions:
        for j in range(1, scenario.piece_count + 1):
            inflow = sum((sym[src] for src, tgt in scenario.transitions.items()
                          if tgt == j), sp.Integer(0))
            eqs.append(sp.expand(inflow - piece_measure(j)))
    eqs.append(sp.expand(sum(sym.values()) - 1))

    ns, ms = shift_symbols(scenario.piece_count)
    r_expr = sum(sym[src] * ns[scenario.source_piece(src) - 1] for src in sources)
    s_expr = sum(sym[src] * ms[scenario.source_piece(src) - 1] for src in sources)

    variables = tuple(sym[src] for src in sources)
    system = MeasureSystem(variables, tuple(e for e in eqs if e != 0),
                           sp.expand(r_expr), sp.expand(s_expr),
                           tuple(ns + ms))
    if not sp.linsolve(list(system.equalities), list(variables)):
        raise ScenarioError(f"{scenario.name}: inconsistent measure equations")
    return system


def detect_dependence(system: MeasureSystem) -> IntegerRelation:
    """Eliminate the measures and return the forced relation on r and s.

    The equalities must cut the solution set down to at most one free
    measure parameter; the relation then has integer coefficients in the
    shift symbols after clearing denominators.
    """
    vs = list(system.variables)
    sol = sp.linsolve(list(system.equalities), vs)
    if not sol:
        raise ScenarioError("inconsistent system")
    expr = list(sol)[0]
    subs = dict(zip(vs, expr))
    free = sorted({v for e in expr for v in e.free_symbols if v in vs},
                  key=lambda v: v.name)
    if len(free) > 1:
        raise ScenarioError(f"no forced relation: {len(free)} free measures")
    r = sp.expand(system.r_expr.subs(subs))
    s = sp.expand(system.s_expr.subs(subs))
    if not free:
        # fully determined: r itself is an integer combination of shifts
        return _clear(sp.Integer(1), sp.Integer(0), r)
    tau = free[0]
    dr = sp.expand(sp.diff(r, tau))
    ds = sp.expand(sp.diff(s, tau))
    cr = sp.expand(r - dr * tau)
    cs = sp.expand(s - ds * tau)
    if dr == 0:
        return _clear(sp.Integer(1), sp.Integer(0), cr)
    if ds == 0:
        return _clear(sp.Integer(0), sp.Integer(1), cs)
    # ds*r - dr*s no longer depends on the free measure
    return _clear(ds, -dr, sp.expand(ds * cr - dr * cs))


def _clear(cr: sp.Expr, cs: sp.Expr, c0: sp.Expr) -> IntegerRelation:
    denom = sp.Integer(1)
    for e in (cr, cs, c0):
        _, d = sp.fraction(sp.together(e))
        denom = sp.lcm(denom, d)
    return IntegerRelation(sp.expand(cr * denom), sp.expand(cs * denom),
                           sp.expand(c0 * denom))


def _chain(pairs: list[tuple[Source, int]]) -> dict[Source, int]:
    return dict(pairs)


def enumerate_scenarios(n: int) -> list[Scenario]:
    """The transition scenarios at induction step n, up to relabeling.

    Step 1 is the plain two-piece swap, step 2 the three-case table for
    a refining three-piece exchange.  From step 3 on the exchange has
    2(n-1)+1 pieces: one single-cycle case and two merging-chain
    families parameterized by the merge position k.
    """
    if n < 1:
        raise ScenarioError("step must be >= 1")
    if n == 1:
        return [Scenario("two pieces", 2, None, {})]
    if n == 2:
        return [
            Scenario("case 1", 3, 1,
                     {"1b": 3, "1a": 2, "2": 1, "3": 1}),
            Scenario("case 2", 3, 1,
                     {"1b": 3, "1a": 1, "2": 1, "3": 2}),
            Scenario("case 3", 3, 1,
                     {"1b": 3, "1a": 2, "2": 1, "3": 2}),
        ]
    nu = n - 1
    m = 2 * nu + 1
    out: list[Scenario] = []
    cycle = [("1a", 1), ("1b", 2)]
    cycle += [(str(i), i + 1) for i in range(2, m)]
    cycle.append((str(m), 1))
    out.append(Scenario("single cycle", m, 1, _chain(cycle)))
    for k in range(1, nu):
        tr: list[tuple[Source, int]] = [("1a", 2), ("1b", 3)]
        tr += [(str(2 * i), 2 * i + 2) for i in range(1, k)]
        tr += [(str(2 * i + 1), 2 * i + 3) for i in range(1, k)]
        tr += [(str(2 * k), 2 * k + 2), (str(2 * k + 1), 2 * k + 2)]
        tr += [(str(i), i + 1) for i in range(2 * k + 2, m)]
        tr.append((str(m), 1))
        out.append(Scenario(f"merge before the tail, k={k}", m, 1, _chain(tr)))
    for k in range(1, nu + 1):
        tr = [("1a", 2), ("1b", 3)]
        tr += [(str(2 * i), 2 * i + 2) for i in range(1, k)]
        tr += [(str(2 * i + 1), 2 * i + 3) for i in range(1, k)]
        tr.append((str(2 * k), 1))
        if 2 * k + 1 < m:
            tr.append((str(2 * k + 1), 2 * k + 2))
            tr += [(str(i), i + 1) for i in range(2 * k + 2, m)]
            tr.append((str(m), 1))
        else:
            tr.append((str(m), 1))
        out.append(Scenario(f"short cycle back, k={k}", m, 1, _chain(tr)))
    return out


def scenario_relation(scenario: Scenario) -> IntegerRelation:
    return detect_dependence(derive_constraints(scenario))


def scenario_report(scenario: Scenario) -> str:
    """Human-readable walkthrough: equalities, elimination, relation."""
    system = derive_constraints(scenario)
    rel = detect_dependence(system)
    lines = [f"scenario: {scenario.name} ({scenario.piece_count} pieces)"]
    for src in sorted(scenario.transitions):
        lines.append(f"  {src} -> {scenario.transitions[src]}")
    lines.append("measure equalities (== 0):")
    for e in system.equalities:
        lines.append(f"  {e}")
    lines.append(f"r = {system.r_expr}")
    lines.append(f"s = {system.s_expr}")
    lines.append(f"forced relation: ({rel.coeff_r})*r + ({rel.coeff_s})*s"
                 f" = {rel.constant}  (an integer)")
    return "\n".join(lines)


def all_relations_nonzero(max_n: int) -> bool:
    for n in range(1, max_n + 1):
        for sc in enumerate_scenarios(n):
            if not scenario_relation(sc).is_nonzero():
                return False
    return True
