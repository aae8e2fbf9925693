"""Pullback operators between divisor-class groups.

Two families of maps are implemented:

* the gluing map from the two-pointed genus-g space to the unpointed
  genus-(g+1) space that identifies the two marked points (creating a
  nondisconnecting node), pulled back by :func:`clutch_pullback`;
* the forgetful maps that drop marked points, pulled back by
  :func:`forget_pullback`, together with :func:`lift_and_average`, the
  uniform average of the pullbacks over every way of embedding the two
  labels of a two-pointed class among n labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import UNKNOWN, DivisorClass, add, scale, zero_class, permute_class
from .basis import DELTA_IRR, LAMBDA, Gen, Space, canonicalize, omega
from .errors import InvalidEmbedding, SpaceMismatch, UnknownCoefficient


def _accumulate(acc: dict, gen: Gen, value: Fraction):
    total = acc.get(gen, 0) + value
    if total == 0:
        acc.pop(gen, None)
    else:
        acc[gen] = total


def clutch_image_of_d0(g: int) -> DivisorClass:
    """The pullback of ``d0`` on the genus-(g+1) space to the two-pointed
    genus-g space:

        d0 - w1 - w2 - 2*d{0;{1,2}} + sum over i = 1..g-1 of d{i;{1}}

    stored canonically, so the terms with ``i > g/2`` appear as
    ``d{g-i;{2}}`` and for even g the middle term ``d{g/2;{1}}`` occurs
    exactly once.
    """
    tgt = Space(g, 2)
    acc = {DELTA_IRR: Fraction(1), omega(1): Fraction(-1), omega(2): Fraction(-1),
           canonicalize(tgt, 0, (1, 2)): Fraction(-2)}
    for i in range(1, g):
        _accumulate(acc, canonicalize(tgt, i, (1,)), Fraction(1))
    return DivisorClass(tgt, acc, "clutch pullback of d0", _validate=False)


@dataclass(frozen=True)
class ClutchPullback:
    """The pullback operator of the two-point gluing map; ``g`` is the genus
    of the two-pointed source space, the glued curves have genus ``g+1``."""

    g: int

    @property
    def domain(self) -> Space:
        return Space(self.g + 1, 0)

    @property
    def codomain(self) -> Space:
        return Space(self.g, 2)

    def apply(self, c: DivisorClass) -> DivisorClass:
        return clutch_pullback(c)


def clutch_pullback(c: DivisorClass) -> DivisorClass:
    """Pull a class on the unpointed genus-(g+1) space back to the
    two-pointed genus-g space along the gluing map.

    Linear extension of: ``l -> l``; ``d0 ->`` :func:`clutch_image_of_d0`;
    ``d{i;{}} -> d{i;{}} + d{i-1;{1,2}}`` with every output canonicalized
    (at ``i = 1`` the second term is ``d{0;{1,2}}``, and for odd g the two
    images of the middle class coincide and add up).  Every coefficient of
    the input must be known.
    """
    src = c.space
    if src.n != 0:
        raise SpaceMismatch(f"clutch pullback needs an unpointed source, got {src}")
    if src.g < 3:
        raise SpaceMismatch(f"no two-pointed target space below source genus 3")
    g = src.g - 1
    tgt = Space(g, 2)
    acc = {}
    for gen, value in c.coeffs.items():
        if value is UNKNOWN:
            raise UnknownCoefficient(
                f"clutch pullback needs known coefficients; {gen.name} is unknown")
        if gen == LAMBDA:
            _accumulate(acc, LAMBDA, value)
        elif gen == DELTA_IRR:
            for tgen, tval in clutch_image_of_d0(g).coeffs.items():
                _accumulate(acc, tgen, value * tval)
        else:
            _accumulate(acc, canonicalize(tgt, gen.i, ()), value)
            _accumulate(acc, canonicalize(tgt, gen.i - 1, (1, 2)), value)
    return DivisorClass(tgt, acc, f"clutch pullback of {c.provenance or 'class'}",
                        _validate=False)


@dataclass(frozen=True)
class ForgetPullback:
    """Pullback operator of a forgetful map.

    The source space has ``m`` points, the target ``n >= m``; ``phi[j-1]``
    is the target label at which source point ``j`` sits.  The underlying
    map of spaces forgets the points outside the image of ``phi``.
    """

    g: int
    m: int
    n: int
    phi: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        if len(self.phi) != self.m or self.m > self.n:
            raise InvalidEmbedding(f"embedding {self.phi} does not map {self.m} "
                                   f"labels into {self.n}")
        if len(set(self.phi)) != self.m or not all(
                isinstance(p, int) and 1 <= p <= self.n for p in self.phi):
            raise InvalidEmbedding(f"{self.phi} is not an injection into 1..{self.n}")

    @property
    def domain(self) -> Space:
        return Space(self.g, self.m)

    @property
    def codomain(self) -> Space:
        return Space(self.g, self.n)

    def apply(self, c: DivisorClass) -> DivisorClass:
        return forget_pullback(self, c)


def _subsets(items):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def _forget_targets(op: ForgetPullback, tgt: Space, gen: Gen) -> set:
    """Canonical target generators hit by one separating source generator.

    Both labels of the source class are enumerated: a target ``d{i;T}``
    qualifies when ``T`` meets the embedded labels exactly in the image of
    the source point set, and likewise for the complementary label; the
    union is deduplicated through canonicalization.
    """
    g = op.g
    free = [p for p in range(1, op.n + 1) if p not in set(op.phi)]
    out = set()
    for i, S in ((gen.i, gen.points),
                 (g - gen.i, frozenset(range(1, op.m + 1)) - gen.points)):
        base = frozenset(op.phi[p - 1] for p in S)
        for extra in _subsets(free):
            out.add(canonicalize(tgt, i, base | frozenset(extra)))
    return out


def forget_pullback(op: ForgetPullback, c: DivisorClass) -> DivisorClass:
    """Pull a class back along a forgetful map.

    Linear extension of ``l -> l``, ``d0 -> d0``, ``w_j -> w_{phi(j)}``,
    and ``d{i;S} ->`` the sum of every canonical ``d{i;T}`` with
    ``T`` intersecting the embedded labels in exactly ``phi(S)``.  Unknown
    coefficients propagate to every target they could feed.
    """
    if c.space != op.domain:
        raise SpaceMismatch(f"{c.space} is not the domain {op.domain} of {op}")
    tgt = op.codomain
    acc = {}
    unknown_targets = set()
    for gen, value in c.coeffs.items():
        if gen.kind == "l" or gen.kind == "d0":
            targets = (gen,)
        elif gen.kind == "w":
            targets = (omega(op.phi[gen.i - 1]),)
        else:
            targets = _forget_targets(op, tgt, gen)
        if value is UNKNOWN:
            unknown_targets.update(targets)
        else:
            for t in targets:
                _accumulate(acc, t, value)
    for t in unknown_targets:
        acc[t] = UNKNOWN
    return DivisorClass(tgt, acc, f"pullback of {c.provenance or 'class'} "
                                  f"along {embedding_to_text(op.phi)}",
                        _validate=False)


def embedding_to_text(phi) -> str:
    return ",".join(f"{j + 1}:{p}" for j, p in enumerate(phi))


def embedding_from_text(text: str) -> tuple:
    """Parse ``"1:3,2:7"`` into the tuple (3, 7)."""
    pairs = {}
    for chunk in text.split(","):
        head, _, tail = chunk.partition(":")
        try:
            pairs[int(head)] = int(tail)
        except ValueError:
            raise InvalidEmbedding(f"bad embedding text {text!r}") from None
    if sorted(pairs) != list(range(1, len(pairs) + 1)):
        raise InvalidEmbedding(f"embedding {text!r} must cover labels 1..m")
    return tuple(pairs[j] for j in sorted(pairs))


def lift_and_average(c: DivisorClass, n: int) -> DivisorClass:
    """Uniform average of the forgetful pullbacks of a two-pointed class
    over all injections of its two labels into 1..n.

    The result is invariant under every relabeling of the n points when
    the input is invariant under swapping its two points.
    """
    src = c.space
    if src.n != 2:
        raise SpaceMismatch(f"lift_and_average needs a two-pointed class, got {src}")
    if n < 2:
        raise ValueError(f"target point count must be >= 2, got {n}")
    if c.is_fully_known() and n <= 16:
        return _lift_and_average_fast(c, n)
    injections = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    total = zero_class(Space(src.g, n))
    for phi in injections:
        total = add(total, forget_pullback(ForgetPullback(src.g, 2, n, phi), c))
    return scale(Fraction(1, len(injections)), total).with_provenance(
        f"average of pullbacks of {c.provenance or 'class'} to n={n}")


def _lift_and_average_fast(c: DivisorClass, n: int) -> DivisorClass:
    """Mask-based version of :func:`lift_and_average` for known classes.

    Only one label of each separating class is enumerated: the target set
    produced by the complementary label is the same after canonicalization
    (complements map to complements, which canonicalization identifies),
    so a single sweep with set semantics is exact.  Integer counters keep
    Fraction arithmetic out of the inner loop.
    """
    g = c.space.g
    tgt = Space(g, n)
    swap = permute_class((2, 1), c)
    pairs = ([(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
             if swap == c else
             [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b])
    weight = Fraction(1, len(pairs))
    full = (1 << n) - 1

    acc = {}
    for gen, value in c.coeffs.items():
        if gen == LAMBDA or gen == DELTA_IRR:
            _accumulate(acc, gen, value)
    w1, w2 = c.coeff(omega(1)), c.coeff(omega(2))
    if w1 != 0 or w2 != 0:
        wtotals = [Fraction(0)] * (n + 1)
        for a, b in pairs:
            wtotals[a] += w1
            wtotals[b] += w2
        for k in range(1, n + 1):
            if wtotals[k] != 0:
                _accumulate(acc, omega(k), wtotals[k] * weight)

    deltas = [(gen, value) for gen, value in c.coeffs.items() if gen.kind == "d"]
    if deltas:
        submask_cache = {}
        counters = {gen: [0] * (full + 1) for gen, _ in deltas}
        for a, b in pairs:
            img = (1 << (a - 1)) | (1 << (b - 1))
            free = full & ~img
            subs = submask_cache.get(free)
            if subs is None:
                subs = []
                sub = free
                while True:
                    subs.append(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & free
                submask_cache[free] = subs
            for gen, _ in deltas:
                base = 0
                if 1 in gen.points:
                    base |= 1 << (a - 1)
                if 2 in gen.points:
                    base |= 1 << (b - 1)
                counter = counters[gen]
                for sub in subs:
                    counter[base | sub] += 1
        for gen, value in deltas:
            counter = counters[gen]
            i = gen.i
            flip = (2 * i == g)
            for mask, count in enumerate(counter):
                if not count:
                    continue
                use = mask
                if flip and not (use & 1):
                    use = full & ~use
                key = Gen("d", i, _mask_to_points(use))
                _accumulate(acc, key, value * count * weight)
    return DivisorClass(tgt, acc, f"average of pullbacks of "
                                  f"{c.provenance or 'class'} to n={n}",
                        _validate=False)


def _mask_to_points(mask: int) -> frozenset:
    out = []
    label = 1
    while mask:
        if mask & 1:
            out.append(label)
        mask >>= 1
        label += 1
    return frozenset(out)
