"""Exact rational linear algebra with provenance tracking.

Two small engines live here: an incremental Gauss eliminator that keeps,
for every stored row, the multipliers over the original equations (so an
inconsistency comes out as a checkable combination witness), and a
Fourier-Motzkin feasibility routine for systems of rational inequalities
that likewise tracks the nonnegative multipliers behind a contradiction.
Dimensions in this package are tiny, so clarity and determinism win over
asymptotics: pivots are always the first usable column, in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

NEW = "new"
REDUNDANT = "redundant"
CONFLICT = "conflict"


class ExactEliminator:
    """Reduced row echelon basis of exact linear equations.

    Rows are added one at a time; each is reduced against the current
    basis.  The return value of :meth:`add` reports whether the equation
    carried new information, was implied, or contradicts the rows added
    before it (with multipliers expressing the contradiction).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = []        # reduced rows, one pivot each
        self.rhs = []
        self.mults = []       # row = sum of mults[k] * original equations
        self.pivots = []      # pivot column of each row
        self.count = 0        # original equations seen so far

    def add(self, coeffs, rhs):
        """Reduce one equation against the basis and store it if independent.

        Returns ``(NEW, None)``, ``(REDUNDANT, None)`` or
        ``(CONFLICT, (multipliers, residue))`` where the multipliers (over
        all equations added so far, this one included) combine to the row
        ``0 = residue`` with ``residue != 0``.
        """
        row = [Fraction(x) for x in coeffs]
        if len(row) != self.ncols:
            raise ValueError(f"expected {self.ncols} coefficients, got {len(row)}")
        rhs = Fraction(rhs)
        mult = [Fraction(0)] * self.count + [Fraction(1)]
        for stored in self.mults:
            stored.append(Fraction(0))
        self.count += 1

        for k, pivot_col in enumerate(self.pivots):
            factor = row[pivot_col]
            if factor:
                row = [a - factor * b for a, b in zip(row, self.rows[k])]
                rhs = rhs - factor * self.rhs[k]
                mult = [a - factor * b for a, b in zip(mult, self.mults[k])]
        pivot_col = next((j for j, a in enumerate(row) if a), None)
        if pivot_col is None:
            if rhs == 0:
                return REDUNDANT, None
            return CONFLICT, (mult, rhs)
        lead = row[pivot_col]
        row = [a / lead for a in row]
        rhs = rhs / lead
        mult = [a / lead for a in mult]
        # keep the basis fully reduced
        for k in range(len(self.rows)):
            factor = self.rows[k][pivot_col]
            if factor:
                self.rows[k] = [a - factor * b for a, b in zip(self.rows[k], row)]
                self.rhs[k] = self.rhs[k] - factor * rhs
                self.mults[k] = [a - factor * b for a, b in zip(self.mults[k], mult)]
        self.rows.append(row)
        self.rhs.append(rhs)
        self.mults.append(mult)
        self.pivots.append(pivot_col)
        return NEW, None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def free_columns(self) -> list:
        taken = set(self.pivots)
        return [j for j in range(self.ncols) if j not in taken]

    def particular_solution(self) -> list:
        """The solution with every free variable set to zero."""
        x = [Fraction(0)] * self.ncols
        for col, value in zip(self.pivots, self.rhs):
            x[col] = value
        return x

    def nullspace_basis(self) -> list:
        """One vector per free column, that column set to 1."""
        out = []
        for free in self.free_columns():
            v = [Fraction(0)] * self.ncols
            v[free] = Fraction(1)
            for col, row in zip(self.pivots, self.rows):
                v[col] = -row[free]
            out.append(v)
        return out


@dataclass(frozen=True)
class FMInfeasible:
    """Certificate that a system ``A t <= b`` has no solution: nonnegative
    multipliers over the original inequalities combining to ``0 <= value``
    with ``value < 0``."""

    multipliers: tuple
    value: Fraction


def fm_feasible_point(ineqs):
    """Find a rational point satisfying ``sum coeffs * t <= const`` for every
    (coeffs, const) pair, or return an :class:`FMInfeasible` witness.

    Variables are eliminated in index order; the returned point is
    deterministic (greatest lower bound where one exists, otherwise the
    least upper bound capped at zero).
    """
    ineqs = [([Fraction(a) for a in coeffs], Fraction(const)) for coeffs, const in ineqs]
    nvars = len(ineqs[0][0]) if ineqs else 0
    rows = [(coeffs, const, {k: Fraction(1)}) for k, (coeffs, const) in enumerate(ineqs)]
    levels = []

    for v in range(nvars):
        levels.append((v, rows))
        zero, pos, neg = [], [], []
        for row in rows:
            a = row[0][v]
            if a == 0:
                zero.append(row)
            elif a > 0:
                pos.append(row)
            else:
                neg.append(row)
        new_rows = list(zero)
        for pc, pconst, pmult in pos:
            ap = pc[v]
            for nc, nconst, nmult in neg:
                an = -nc[v]
                coeffs = [x / ap + y / an for x, y in zip(pc, nc)]
                const = pconst / ap + nconst / an
                mult = {k: m / ap for k, m in pmult.items()}
                for k, m in nmult.items():
                    mult[k] = mult.get(k, Fraction(0)) + m / an
                new_rows.append((coeffs, const, mult))
        rows = new_rows

    for coeffs, const, mult in rows:
        if const < 0:
            return FMInfeasible(tuple(sorted(mult.items())), const)

    point = [Fraction(0)] * nvars
    for v, level_rows in reversed(levels):
        lower = None
        upper = None
        for coeffs, const, _ in level_rows:
            a = coeffs[v]
            if a == 0:
                continue
            rest = const - sum(coeffs[u] * point[u]
                               for u in range(v + 1, nvars) if coeffs[u])
            bound = rest / a
            if a > 0:
                upper = bound if upper is None else min(upper, bound)
            else:
                lower = bound if lower is None else max(lower, bound)
        if lower is not None:
            point[v] = lower
        elif upper is not None:
            point[v] = min(upper, Fraction(0))
        else:
            point[v] = Fraction(0)
    return point
