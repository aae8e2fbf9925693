"""Sparse exact-rational divisor classes with per-coordinate Unknown markers.

A divisor class is a finite map from basis generators to coefficients.  A
missing key means the coefficient is exactly zero; the sentinel
:data:`UNKNOWN` marks a coordinate the source of the class never pinned
down.  Unknown is absorbing under addition and under scaling by a nonzero
rational, while scaling by zero kills it (a class multiplied by zero
contributes nothing no matter what its unstated coefficients are).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .basis import (DELTA_IRR, LAMBDA, Gen, Space, _check_permutation,
                    _permute_gen, generator_from_name, omega,
                    validate_generator)
from .errors import SpaceMismatch


class _UnknownType:
    """Singleton marker for a coefficient that is not tracked."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unknown"


UNKNOWN = _UnknownType()


def _coeff(value):
    if value is UNKNOWN:
        return UNKNOWN
    return Fraction(value)


class DivisorClass:
    """An element of the rational Picard group of ``space``.

    ``coeffs`` maps canonical generators to ``Fraction`` values or
    :data:`UNKNOWN`; zero values are pruned on construction.  Instances
    are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("space", "coeffs", "provenance")

    def __init__(self, space: Space, coeffs=None, provenance: str = "",
                 _validate: bool = True):
        cleaned = {}
        for gen, value in (coeffs or {}).items():
            if _validate:
                validate_generator(space, gen)
                value = _coeff(value)
            if value is UNKNOWN or value != 0:
                cleaned[gen] = value
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "provenance", provenance)

    def __setattr__(self, name, value):
        raise AttributeError("DivisorClass is immutable")

    def coeff(self, gen: Gen):
        """The coefficient of ``gen`` (``Fraction(0)`` when absent)."""
        return self.coeffs.get(gen, Fraction(0))

    def is_fully_known(self) -> bool:
        return not any(v is UNKNOWN for v in self.coeffs.values())

    def unknown_support(self) -> list:
        return sorted((g for g, v in self.coeffs.items() if v is UNKNOWN),
                      key=Gen.sort_key)

    def known_items(self):
        return [(g, v) for g, v in sorted(self.coeffs.items(),
                                          key=lambda kv: kv[0].sort_key())
                if v is not UNKNOWN]

    def with_provenance(self, label: str) -> "DivisorClass":
        return DivisorClass(self.space, self.coeffs, label, _validate=False)

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items())))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, c):
        return scale(c, self)

    def __repr__(self):
        parts = []
        for gen in sorted(self.coeffs, key=Gen.sort_key):
            parts.append(f"{self.coeffs[gen]}*{gen.name}")
        body = " + ".join(parts) if parts else "0"
        return f"<{body} on {self.space}>"


def zero_class(space: Space) -> DivisorClass:
    return DivisorClass(space, {}, _validate=False)


def unit_class(space: Space, gen: Gen) -> DivisorClass:
    validate_generator(space, gen)
    return DivisorClass(space, {gen: Fraction(1)}, _validate=False)


def _require_same_space(a: DivisorClass, b: DivisorClass):
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")


def add(a: DivisorClass, b: DivisorClass) -> DivisorClass:
    """Coefficientwise sum; Unknown plus anything is Unknown."""
    _require_same_space(a, b)
    out = dict(a.coeffs)
    for gen, value in b.coeffs.items():
        if gen not in out:
            out[gen] = value
        elif out[gen] is UNKNOWN or value is UNKNOWN:
            out[gen] = UNKNOWN
        else:
            total = out[gen] + value
            if total == 0:
                del out[gen]
            else:
                out[gen] = total
    return DivisorClass(a.space, out, _validate=False)


def scale(c, a: DivisorClass) -> DivisorClass:
    """Scalar multiple; ``0 * Unknown = 0`` while ``c * Unknown = Unknown``
    for nonzero ``c``.
    """
    c = Fraction(c)
    if c == 0:
        return zero_class(a.space)
    out = {}
    for gen, value in a.coeffs.items():
        out[gen] = UNKNOWN if value is UNKNOWN else c * value
    return DivisorClass(a.space, out, _validate=False)


def combination(pairs) -> DivisorClass:
    """The linear combination ``sum(c * cls)`` over (c, cls) pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty combination")
    total = zero_class(pairs[0][1].space)
    for c, cls in pairs:
        total = add(total, scale(c, cls))
    return total


def permute_class(perm, a: DivisorClass) -> DivisorClass:
    """The class with marked points relabeled by ``perm``."""
    perm = _check_permutation(a.space, perm)
    out = {}
    for gen, value in a.coeffs.items():
        target = _permute_gen(a.space, perm, gen)
        if target in out:
            # can only happen for i = g/2 collisions of unknown markers
            if out[target] is UNKNOWN or value is UNKNOWN:
                out[target] = UNKNOWN
            else:
                out[target] = out[target] + value
        else:
            out[target] = value
    return DivisorClass(a.space, out, _validate=False)


def average_over(perms, a: DivisorClass) -> DivisorClass:
    """Uniform average of the relabelings of ``a`` by the given permutations."""
    perms = [_check_permutation(a.space, p) for p in perms]
    if not perms:
        raise ValueError("need at least one permutation")
    total = zero_class(a.space)
    for perm in perms:
        total = add(total, permute_class(perm, a))
    return scale(Fraction(1, len(perms)), total).with_provenance(
        f"average of {a.provenance or 'class'} over {len(perms)} permutations")


# ---------------------------------------------------------------------------
# comparison

EQUAL = "equal"
DIFFER = "differ"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ComparisonReport:
    """Per-generator comparison of two classes on one space.

    ``entries`` holds (generator, status, value_a, value_b) over the union
    of the two supports, in basis order; coordinates absent on both sides
    are equal (zero) and not listed.  The overall verdict
    ``equal_on_tracked`` is true when no coordinate differs; coordinates
    that are Unknown on either side are incomparable, not unequal.
    """

    space: Space
    entries: tuple

    @property
    def equal_on_tracked(self) -> bool:
        return all(status != DIFFER for _, status, _, _ in self.entries)

    def differing(self):
        return [e for e in self.entries if e[1] == DIFFER]

    def incomparable(self):
        return [e[0] for e in self.entries if e[1] == INCOMPARABLE]


def compare(a: DivisorClass, b: DivisorClass) -> ComparisonReport:
    _require_same_space(a, b)
    gens = sorted(set(a.coeffs) | set(b.coeffs), key=Gen.sort_key)
    entries = []
    for gen in gens:
        va, vb = a.coeff(gen), b.coeff(gen)
        if va is UNKNOWN or vb is UNKNOWN:
            status = INCOMPARABLE
        elif va == vb:
            status = EQUAL
        else:
            status = DIFFER
        entries.append((gen, status, va, vb))
    return ComparisonReport(a.space, tuple(entries))


# ---------------------------------------------------------------------------
# change of basis between the point classes and the cotangent-line classes

def _zero_boundary_sets_through(space: Space, i: int):
    others = [p for p in space.labels() if p != i]
    for size in range(1, len(others) + 1):
        for extra in combinations(others, size):
            yield frozenset((i,) + extra)


def psi_in_omega_basis(space: Space, i: int) -> DivisorClass:
    """The cotangent-line class ``psi_i`` in the working basis:
    ``w_i`` plus every genus-0 separating class whose point set contains i.
    """
    gen = validate_generator(space, omega(i))
    coeffs = {gen: Fraction(1)}
    for S in _zero_boundary_sets_through(space, i):
        coeffs[Gen("d", 0, S)] = Fraction(1)
    return DivisorClass(space, coeffs, f"psi{i}", _validate=False)


def omega_in_psi_basis(space: Space, i: int) -> DivisorClass:
    """``w_i`` written in psi coordinates.

    The returned object reuses the ``w`` slots to hold psi coefficients
    (see :func:`to_psi_coordinates`); it equals psi_i minus the genus-0
    separating classes through i.
    """
    return to_psi_coordinates(unit_class(space, omega(i)))


def to_psi_coordinates(a: DivisorClass) -> DivisorClass:
    """Rewrite a class over the basis that uses psi instead of w.

    In the result the ``w`` slots carry psi coefficients; all other slots
    keep their meaning.  Inverse of :func:`from_psi_coordinates`.
    """
    return _psi_shift(a, -1)


def from_psi_coordinates(a: DivisorClass) -> DivisorClass:
    """Interpret the ``w`` slots of ``a`` as psi coefficients and rewrite
    the class over the working basis."""
    return _psi_shift(a, +1)


def _psi_shift(a: DivisorClass, sign: int) -> DivisorClass:
    out = dict(a.coeffs)

    def bump(gen, value):
        if gen in out:
            if out[gen] is UNKNOWN or value is UNKNOWN:
                out[gen] = UNKNOWN
            else:
                total = out[gen] + value
                if total == 0:
                    del out[gen]
                else:
                    out[gen] = total
        elif value is UNKNOWN or value != 0:
            out[gen] = value

    for gen, value in a.coeffs.items():
        if gen.kind != "w":
            continue
        shift = UNKNOWN if value is UNKNOWN else sign * value
        for S in _zero_boundary_sets_through(a.space, gen.i):
            bump(Gen("d", 0, S), shift)
    return DivisorClass(a.space, out, a.provenance, _validate=False)


# ---------------------------------------------------------------------------
# JSON serialization

def class_to_json_dict(a: DivisorClass) -> dict:
    """The wire form: rationals as lowest-term strings, unknown slots listed
    separately, generators in basis order."""
    coeffs = {}
    unknown = []
    for gen in sorted(a.coeffs, key=Gen.sort_key):
        value = a.coeffs[gen]
        if value is UNKNOWN:
            unknown.append(gen.name)
        else:
            coeffs[gen.name] = str(value)
    return {"g": a.space.g, "n": a.space.n, "coeffs": coeffs, "unknown": unknown}


def class_from_json_dict(data: dict) -> DivisorClass:
    space = Space(data["g"], data["n"])
    coeffs = {}
    for name, value in data.get("coeffs", {}).items():
        coeffs[generator_from_name(space, name)] = Fraction(value)
    for name in data.get("unknown", []):
        coeffs[generator_from_name(space, name)] = UNKNOWN
    return DivisorClass(space, coeffs, data.get("provenance", ""), _validate=False)
