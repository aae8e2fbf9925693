"""Generator basis of the rational Picard group of a moduli space of
pointed stable curves.

On the space of stable genus-g curves with n ordered marked points the
working basis consists of

* ``l``        the Hodge class,
* ``d0``       the boundary class of curves with a nondisconnecting node,
* ``w1..wn``   the point classes (pullbacks of the relative dualizing
               class from the one-pointed space via the map that forgets
               all other points),
* ``d{i;S}``   the boundary classes of curves with a disconnecting node
               splitting off a genus-i piece that carries exactly the
               marked points in S.

A separating class has two labels, ``d{i;S} = d{g-i;S^c}``; the stored
representative is chosen by :func:`canonicalize`, so equal classes always
compare equal.  The cotangent-line classes ``psi_i`` are not part of the
working basis; the change of basis lives in :mod:`mgn.algebra`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidGenerator

_KIND_ORDER = {"l": 0, "d0": 1, "w": 2, "d": 3}


@dataclass(frozen=True)
class Space:
    """A moduli space of stable curves: genus ``g >= 2``, ``n >= 0`` points."""

    g: int
    n: int

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 2:
            raise ValueError(f"genus must be an integer >= 2, got {self.g!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"point count must be an integer >= 0, got {self.n!r}")

    def labels(self) -> range:
        """The marked-point labels 1..n."""
        return range(1, self.n + 1)

    def __repr__(self):
        return f"Space(g={self.g}, n={self.n})"


@dataclass(frozen=True)
class Gen:
    """One basis generator.

    ``kind`` is one of ``"l"``, ``"d0"``, ``"w"`` (point class, label
    ``i``) and ``"d"`` (separating boundary class with genus part ``i``
    and marked-point set ``points``).  Instances for separating classes
    should be produced through :func:`canonicalize`.
    """

    kind: str
    i: int = 0
    points: frozenset = field(default_factory=frozenset)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.i, len(self.points),
                tuple(sorted(self.points)))

    @property
    def name(self) -> str:
        if self.kind == "l":
            return "l"
        if self.kind == "d0":
            return "d0"
        if self.kind == "w":
            return f"w{self.i}"
        inner = ",".join(str(p) for p in sorted(self.points))
        return f"d{self.i};{{{inner}}}"

    def __repr__(self):
        return f"Gen({self.name!r})"


LAMBDA = Gen("l")
DELTA_IRR = Gen("d0")


def omega(i: int) -> Gen:
    """The point class at marked point ``i``."""
    if not isinstance(i, int) or i < 1:
        raise InvalidGenerator(f"point label must be a positive integer, got {i!r}")
    return Gen("w", i)


def canonicalize(space: Space, i: int, points) -> Gen:
    """Canonical separating-boundary generator for the pair ``(i, S)``.

    ``(i, S)`` and ``(g-i, S^c)`` label the same divisor class.  The stored
    representative has ``i <= g-i``; for ``i = g-i`` (g even) the tie is
    broken by requiring ``1 in S`` whenever there are marked points, and
    the empty set is accepted when ``n = 0``.

    Raises :class:`InvalidGenerator` when a genus-0 side would carry fewer
    than two marked points (no stable curve of that shape exists) or when
    ``i``/``S`` are out of range.
    """
    g, n = space.g, space.n
    S = frozenset(points)
    if not 0 <= i <= g:
        raise InvalidGenerator(f"genus part {i} out of range 0..{g}")
    if not all(isinstance(p, int) and 1 <= p <= n for p in S):
        raise InvalidGenerator(f"marked points {sorted(S)} not within 1..{n}")
    j, T = i, S
    if 2 * i > g:
        j, T = g - i, _complement(S, n)
    elif 2 * i == g and n >= 1 and 1 not in S:
        T = _complement(S, n)
    if j == 0 and len(T) < 2:
        raise InvalidGenerator(
            f"d{i};{sorted(S)} has a genus-0 side with fewer than 2 marked points")
    return Gen("d", j, T)


def _complement(S, n):
    return frozenset(p for p in range(1, n + 1) if p not in S)


def validate_generator(space: Space, gen: Gen) -> Gen:
    """Check that ``gen`` is a canonical generator of ``space``; return it."""
    if gen.kind == "l" or gen.kind == "d0":
        return gen
    if gen.kind == "w":
        if not 1 <= gen.i <= space.n:
            raise InvalidGenerator(f"{gen.name} not defined with {space.n} points")
        return gen
    if gen.kind == "d":
        if canonicalize(space, gen.i, gen.points) != gen:
            raise InvalidGenerator(f"{gen.name} is not in canonical form on {space}")
        return gen
    raise InvalidGenerator(f"unknown generator kind {gen.kind!r}")


def enumerate_basis(space: Space) -> list:
    """All generators of the space in the fixed order used everywhere:
    ``l``, ``d0``, ``w1..wn``, then the separating classes sorted by
    (genus part, size of S, S lexicographically).
    """
    out = [LAMBDA, DELTA_IRR]
    out.extend(Gen("w", i) for i in space.labels())
    g, n = space.g, space.n
    labels = list(space.labels())
    for i in range(0, g // 2 + 1):
        for size in range(0, n + 1):
            if i == 0 and size < 2:
                continue
            for S in combinations(labels, size):
                if 2 * i == g and n >= 1 and 1 not in S:
                    continue
                out.append(Gen("d", i, frozenset(S)))
    return out


def _check_permutation(space: Space, perm) -> tuple:
    perm = tuple(perm)
    if sorted(perm) != list(space.labels()):
        raise ValueError(f"{perm} is not a permutation of 1..{space.n}")
    return perm


def _permute_gen(space: Space, perm: tuple, gen: Gen) -> Gen:
    # perm is assumed validated; perm[k-1] is the image of label k.
    if gen.kind == "w":
        return Gen("w", perm[gen.i - 1])
    if gen.kind == "d":
        mapped = frozenset(perm[p - 1] for p in gen.points)
        return canonicalize(space, gen.i, mapped)
    return gen


def apply_permutation(space: Space, perm, gen: Gen) -> Gen:
    """Relabel marked points by ``perm`` (``perm[k-1]`` is the image of
    label ``k``).  ``l`` and ``d0`` are fixed; ``w`` labels map through
    ``perm``; separating classes are re-canonicalized after relabeling.
    """
    return _permute_gen(space, _check_permutation(space, perm), gen)


def identity_permutation(n: int) -> tuple:
    return tuple(range(1, n + 1))


def cycle_permutation(n: int, length: int) -> tuple:
    """The cycle (1 2 ... length) on labels 1..n, fixing the rest."""
    if not 1 <= length <= n:
        raise ValueError(f"cycle length {length} out of range 1..{n}")
    images = list(range(1, n + 1))
    for k in range(1, length):
        images[k - 1] = k + 1
    images[length - 1] = 1
    return tuple(images)


def compose_permutations(sigma, tau) -> tuple:
    """The permutation applying ``tau`` first, then ``sigma``."""
    sigma, tau = tuple(sigma), tuple(tau)
    return tuple(sigma[t - 1] for t in tau)


def permutation_powers(perm) -> list:
    """All distinct powers of ``perm``, the identity first."""
    perm = tuple(perm)
    n = len(perm)
    out = [identity_permutation(n)]
    current = perm
    while current != out[0]:
        out.append(current)
        current = compose_permutations(perm, current)
    return out


def generator_from_name(space: Space, name: str) -> Gen:
    """Inverse of ``Gen.name`` for generators of ``space``."""
    if name == "l":
        return LAMBDA
    if name == "d0":
        return DELTA_IRR
    if name.startswith("w"):
        try:
            i = int(name[1:])
        except ValueError:
            raise InvalidGenerator(f"bad generator name {name!r}") from None
        return validate_generator(space, omega(i))
    if name.startswith("d") and ";" in name:
        head, _, tail = name.partition(";")
        if not (tail.startswith("{") and tail.endswith("}")):
            raise InvalidGenerator(f"bad generator name {name!r}")
        try:
            i = int(head[1:])
            inner = tail[1:-1]
            pts = [int(p) for p in inner.split(",")] if inner else []
        except ValueError:
            raise InvalidGenerator(f"bad generator name {name!r}") from None
        gen = canonicalize(space, i, pts)
        if gen != Gen("d", i, frozenset(pts)):
            raise InvalidGenerator(f"{name!r} is not in canonical form on {space}")
        return gen
    raise InvalidGenerator(f"bad generator name {name!r}")
