"""Constructors for the named divisor classes used by the certificate
computations: Brill-Noether classes on unpointed spaces, the pointed
pencil classes, and the canonical class on its tracked coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import UNKNOWN, DivisorClass
from .basis import (DELTA_IRR, Gen, LAMBDA, Space, canonicalize,
                    enumerate_basis, generator_from_name, omega)
from .errors import InvalidSpec, NoBNClass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def brill_noether(h: int) -> DivisorClass:
    """The Brill-Noether divisor class on the unpointed genus-h space:

        (h+3) l - (h+1)/6 d0 - sum over i of i(h-i) d{i;{}}

    An effective divisor in this class exists only when ``h+1`` is
    composite; :class:`NoBNClass` is raised when ``h+1`` is prime (there
    is no Brill-Noether divisor at such genus) or when ``h < 3``.
    """
    if not isinstance(h, int) or h < 3:
        raise NoBNClass(f"Brill-Noether classes need genus >= 3, got {h!r}")
    if _is_prime(h + 1):
        raise NoBNClass(
            f"no Brill-Noether divisor on genus {h}: {h + 1} is prime")
    space = Space(h, 0)
    coeffs = {LAMBDA: Fraction(h + 3), DELTA_IRR: Fraction(-(h + 1), 6)}
    for i in range(1, h // 2 + 1):
        coeffs[canonicalize(space, i, ())] = Fraction(-i * (h - i))
    return DivisorClass(space, coeffs, f"BN({h})", _validate=False)


@dataclass(frozen=True)
class PointedBNSpec:
    """Weights for a pointed pencil class: nonnegative integers summing to
    the genus, one per marked point."""

    g: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not all(isinstance(x, int) and x >= 0 for x in self.a):
            raise InvalidSpec(f"weights must be nonnegative integers, got {self.a}")
        if sum(self.a) != self.g:
            raise InvalidSpec(f"weights {self.a} sum to {sum(self.a)}, not g={self.g}")
        if not self.a:
            raise InvalidSpec("need at least one marked point")


def pointed_bn_partial(g: int, a) -> DivisorClass:
    """The pointed pencil divisor class, on its stated coordinates only.

    For weights ``a1..an`` summing to g, the locus where the weighted sum
    of the marked points moves in a pencil has

        l coefficient -1, d0 coefficient 0,
        w_i coefficient a_i (a_i + 1) / 2,
        d{0;{i,j}} coefficient -a_i a_j,

    and every remaining boundary coefficient is stored as Unknown.
    """
    spec = PointedBNSpec(g, tuple(a))
    n = len(spec.a)
    space = Space(g, n)
    coeffs = {LAMBDA: Fraction(-1)}
    for i, ai in enumerate(spec.a, start=1):
        coeffs[omega(i)] = Fraction(ai * (ai + 1), 2)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            coeffs[canonicalize(space, 0, (i, j))] = \
                Fraction(-spec.a[i - 1] * spec.a[j - 1])
    for gen in enumerate_basis(space):
        if gen.kind != "d":
            continue
        if gen.i == 0 and len(gen.points) == 2:
            continue
        coeffs[gen] = UNKNOWN
    label = "DGA(" + str(g) + ";" + ",".join(str(x) for x in spec.a) + ")"
    return DivisorClass(space, coeffs, label, _validate=False)


def canonical_tracked(space: Space, boundary=None) -> DivisorClass:
    """The canonical class of the space on its tracked coordinates:

        13 l - 2 d0 + w1 + ... + wn

    with every separating boundary coefficient Unknown.  A full coefficient
    table may be supplied through ``boundary`` (mapping generators or their
    names to values); supplied coordinates replace the Unknown markers.
    """
    if space.n < 1:
        raise InvalidSpec(f"tracked canonical class needs n >= 1, got {space}")
    coeffs = {LAMBDA: Fraction(13), DELTA_IRR: Fraction(-2)}
    for i in space.labels():
        coeffs[omega(i)] = Fraction(1)
    for gen in enumerate_basis(space):
        if gen.kind == "d":
            coeffs[gen] = UNKNOWN
    for key, value in (boundary or {}).items():
        gen = key if isinstance(key, Gen) else generator_from_name(space, key)
        if gen.kind != "d":
            raise InvalidSpec(f"{gen.name} is not a boundary coordinate")
        coeffs[gen] = Fraction(value)
    return DivisorClass(space, coeffs, f"K({space.g},{space.n})", _validate=False)
