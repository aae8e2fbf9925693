"""Test curves: one-parameter families in a moduli space used as linear
functionals on divisor classes.

A test curve is stored purely as its integer pairing numbers against the
generator basis; no geometry is computed here.  The built-in catalog
covers the standard families on a two-pointed space that pin down the
pullback of ``d0`` along the two-point gluing map, together with the
recorded degree of ``d0`` against the glued image family (the push-pull
target of each equation).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import UNKNOWN, DivisorClass
from .basis import (DELTA_IRR, Gen, LAMBDA, Space, canonicalize,
                    enumerate_basis, generator_from_name, omega,
                    validate_generator)
from .errors import (InconsistentSystem, SpaceMismatch, UnsupportedGenus)
from .linsolve import CONFLICT, ExactEliminator, NEW


@dataclass(frozen=True)
class TestCurve:
    """An integer-valued linear functional on divisor classes.

    ``pairings`` maps canonical generators to intersection numbers (absent
    means zero).  ``pushforward_d0`` records, when known, the degree of
    ``d0`` against the image of the family under the two-point gluing map.
    ``ambiguous`` names the pairing keys whose recorded values rest on an
    ambiguous reading of the source family; :meth:`without_ambiguous`
    drops them.
    """

    name: str
    space: Space
    pairings: dict
    pushforward_d0: int | None = None
    ambiguous: tuple = ()

    def __post_init__(self):
        cleaned = {}
        for gen, value in self.pairings.items():
            validate_generator(self.space, gen)
            if value:
                cleaned[gen] = int(value)
        object.__setattr__(self, "pairings", cleaned)
        object.__setattr__(self, "ambiguous", tuple(self.ambiguous))

    def pairing(self, gen: Gen) -> int:
        return self.pairings.get(gen, 0)

    def with_pairings(self, overrides) -> "TestCurve":
        """A copy with some pairing values replaced (the override hook;
        keys may be generators or generator names)."""
        updated = dict(self.pairings)
        for key, value in overrides.items():
            gen = key if isinstance(key, Gen) else generator_from_name(self.space, key)
            updated[gen] = value
        return TestCurve(self.name, self.space, updated, self.pushforward_d0,
                         self.ambiguous)

    def without_ambiguous(self) -> "TestCurve":
        """A copy with every ambiguity-flagged pairing removed."""
        flagged = set(self.ambiguous)
        kept = {g: v for g, v in self.pairings.items() if g.name not in flagged}
        return TestCurve(self.name, self.space, kept, self.pushforward_d0, ())


def pair(curve: TestCurve, c: DivisorClass):
    """The value of the functional: sum of pairing numbers times
    coefficients.  Unknown when any generator with a nonzero pairing has
    an unknown coefficient."""
    if curve.space != c.space:
        raise SpaceMismatch(f"curve on {curve.space}, class on {c.space}")
    total = Fraction(0)
    for gen, weight in curve.pairings.items():
        value = c.coeffs.get(gen)
        if value is None:
            continue
        if value is UNKNOWN:
            return UNKNOWN
        total += weight * value
    return total


def curve_to_json_dict(curve: TestCurve) -> dict:
    pairings = {gen.name: curve.pairings[gen]
                for gen in sorted(curve.pairings, key=Gen.sort_key)}
    return {"name": curve.name, "g": curve.space.g, "pairings": pairings,
            "pushforward_d0": curve.pushforward_d0,
            "ambiguous": sorted(curve.ambiguous)}


def curve_from_json_dict(data: dict) -> TestCurve:
    space = Space(data["g"], data.get("n", 2))
    pairings = {generator_from_name(space, name): int(value)
                for name, value in data.get("pairings", {}).items()}
    push = data.get("pushforward_d0")
    return TestCurve(data["name"], space, pairings,
                     int(push) if push is not None else None,
                     tuple(data.get("ambiguous", ())))


def builtin_catalog(g: int) -> list:
    """The standard test curves on the two-pointed genus-g space.

    All families keep a fixed curve of some genus and move a point or an
    attachment point; the integer pairings below are their degrees against
    the working basis, and ``pushforward_d0`` is the degree of ``d0``
    against the glued image of the family.

    ======  ==================================================================
    TC1     fixed (g-1)-curve carrying both points, attached to a pencil of
            plane cubics: 12 against d0, -1 against d{1;{}}.
    TC2     fixed (g-2)-curve carrying both points, attached to a genus-2
            pencil (double covers of a line branched at a moving sextic
            section): 30 against d0, -1 against d{2;{}}.
    TC3     point 1 moving on a smooth genus-g curve, point 2 fixed:
            2g-2 against w1, 1 against d{0;{1,2}}; glued degree -2g.
    TC4(i)  point 2 moving on a genus-i piece that also carries point 1,
            attached to a fixed (g-i)-curve: 2i-1 against w2, 1 against
            d{0;{1,2}}, 1 against d{i;{1}}; glued degree -2i.
    TC5a(i) two-pointed genus-i piece attached at a fixed point to a moving
            point of a (g-i)-curve: 1 against d{i;{1,2}}; glued degree 0.
    TC5b(i) the same configuration with the attachment point moving on the
            two-pointed piece: 1 against each of w1, w2, d{i;{1}},
            d{i;{2}}, d{i;{1,2}}; glued degree 0.
    ======  ==================================================================

    ``TC3s`` and ``TC4s(i)`` are the relabelings of TC3 and TC4(i) under
    the swap of the two points; they carry the same glued degree and make
    the swap-invariance of the glued image available to the solver as
    equations.  The two d{i;{1}}, d{i;{2}} entries of TC5b come from an
    ambiguous description of that family and are flagged accordingly.
    All generators are stored canonically, so for i past g/2 the entries
    appear under the complementary label and coinciding keys accumulate.
    """
    if not isinstance(g, int) or g < 3:
        raise UnsupportedGenus(f"catalog needs genus >= 3, got {g!r}")
    sp = Space(g, 2)
    d_01 = canonicalize(sp, 0, (1, 2))
    out = [
        TestCurve("TC1", sp, {DELTA_IRR: 12, canonicalize(sp, 1, ()): -1},
                  pushforward_d0=12),
        TestCurve("TC2", sp, {DELTA_IRR: 30, canonicalize(sp, 2, ()): -1},
                  pushforward_d0=30),
        TestCurve("TC3", sp, {omega(1): 2 * g - 2, d_01: 1}, pushforward_d0=-2 * g),
        TestCurve("TC3s", sp, {omega(2): 2 * g - 2, d_01: 1}, pushforward_d0=-2 * g),
    ]
    for i in range(1, g):
        out.append(TestCurve(f"TC4({i})", sp,
                             {omega(2): 2 * i - 1, d_01: 1,
                              canonicalize(sp, i, (1,)): 1},
                             pushforward_d0=-2 * i))
        out.append(TestCurve(f"TC4s({i})", sp,
                             {omega(1): 2 * i - 1, d_01: 1,
                              canonicalize(sp, i, (2,)): 1},
                             pushforward_d0=-2 * i))
    for i in range(1, g - 1):
        out.append(TestCurve(f"TC5a({i})", sp,
                             {canonicalize(sp, i, (1, 2)): 1}, pushforward_d0=0))
        flagged = [canonicalize(sp, i, (1,)), canonicalize(sp, i, (2,))]
        pairings = {omega(1): 1, omega(2): 1,
                    canonicalize(sp, i, (1, 2)): 1}
        for gen in flagged:  # the two keys coincide at i = g/2 and accumulate
            pairings[gen] = pairings.get(gen, 0) + 1
        out.append(TestCurve(f"TC5b({i})", sp, pairings, pushforward_d0=0,
                             ambiguous=tuple(sorted({gen.name for gen in flagged}))))
    return out


def pushforward_equations(curves) -> list:
    """(curve, pushforward_d0) pairs for every curve with a recorded value."""
    out = []
    for curve in curves:
        if curve.pushforward_d0 is None:
            raise ValueError(f"{curve.name} has no recorded pushforward value")
        out.append((curve, curve.pushforward_d0))
    return out


@dataclass(frozen=True)
class Ansatz:
    """The set of generators allowed to be nonzero in a solve."""

    support: frozenset

    @classmethod
    def of(cls, gens) -> "Ansatz":
        return cls(frozenset(gens))

    @classmethod
    def excluding(cls, space: Space, *gens) -> "Ansatz":
        banned = set(gens)
        return cls(frozenset(g for g in enumerate_basis(space) if g not in banned))


@dataclass(frozen=True)
class UnderdeterminedSolution:
    """Description of a solution set with free directions.

    ``particular`` satisfies every equation with all free generators set
    to zero; adding any combination of the ``free_generators`` directions
    (each extended by the stored nullspace rows) stays a solution.
    """

    particular: DivisorClass
    free_generators: tuple


def solve_for_class(equations, ansatz: Ansatz):
    """Determine a divisor class from pairings against test curves.

    Each equation is a ``(curve, target)`` pair demanding
    ``pair(curve, X) == target``; the class ``X`` is constrained to the
    ansatz support.  Elimination is exact over the rationals with the
    generators taken in basis order, so the output is deterministic.

    Returns the unique solution as a :class:`DivisorClass`, or an
    :class:`UnderdeterminedSolution` naming the free generators.  Raises
    :class:`InconsistentSystem` carrying a combination witness when the
    equations contradict each other.
    """
    equations = list(equations)
    if not equations:
        raise ValueError("need at least one equation")
    space = equations[0][0].space
    for curve, _ in equations:
        if curve.space != space:
            raise SpaceMismatch(f"{curve.name} lives on {curve.space}, not {space}")
    columns = [gen for gen in enumerate_basis(space) if gen in ansatz.support]
    if not columns:
        raise ValueError("empty ansatz")

    eliminator = ExactEliminator(len(columns))
    labels = []
    for curve, target in equations:
        labels.append(curve.name)
        row = [curve.pairing(gen) for gen in columns]
        status, info = eliminator.add(row, Fraction(target))
        if status == CONFLICT:
            mults, residue = info
            witness = [(labels[k], m) for k, m in enumerate(mults) if m]
            raise InconsistentSystem(witness, residue)

    particular = eliminator.particular_solution()
    coeffs = {gen: value for gen, value in zip(columns, particular) if value}
    solution = DivisorClass(space, coeffs, "solved from pairings", _validate=False)
    free = eliminator.free_columns()
    if free:
        return UnderdeterminedSolution(solution, tuple(columns[j] for j in free))
    return solution
