"""Exact feasibility engine for effectivity certificates.

The question answered here: can the target class be written as a
nonnegative rational combination of the given effective classes plus a
nonnegative residual supported on the residual cone (by default ``d0``
and every separating boundary class)?  Coordinates outside the cone must
match exactly, because nothing in the cone can absorb them.  Coordinates
that are Unknown on either side are excluded from the constraints and
reported as caveats; a certificate is only as strong as its caveat list.

Everything is exact: a feasible answer comes with the combination and the
residual, an infeasible answer with a checkable witness (a forced partial
solution and the exact amount by which a constraint fails, or multipliers
deriving a contradiction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (UNKNOWN, DivisorClass, add, compare, scale, zero_class)
from .basis import Gen, Space
from .errors import DimensionMismatch, SpaceMismatch
from .linsolve import (CONFLICT, ExactEliminator, FMInfeasible,
                       fm_feasible_point)

ZERO_OK = "zero_ok"
ZERO_FAIL = "zero_fail"
RESIDUAL_OK = "residual_ok"
RESIDUAL_FAIL = "residual_fail"
CAVEAT = "caveat"


@dataclass(frozen=True)
class CertificateProblem:
    """Target class, candidate effective classes and the residual cone.

    ``residual_cone`` is a set of generators; ``None`` selects the default
    cone of all boundary generators (``d0`` and every ``d{i;S}``).
    """

    target: DivisorClass
    effectives: tuple
    residual_cone: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "effectives", tuple(self.effectives))
        for e in self.effectives:
            if e.space != self.target.space:
                raise SpaceMismatch(f"effective on {e.space}, target on "
                                    f"{self.target.space}")

    @property
    def space(self) -> Space:
        return self.target.space

    def in_cone(self, gen: Gen) -> bool:
        if self.residual_cone is not None:
            return gen in self.residual_cone
        return gen.kind in ("d0", "d")


@dataclass(frozen=True)
class CoordinateCheck:
    gen: Gen
    status: str
    value: Fraction | None


@dataclass(frozen=True)
class CheckReport:
    """Outcome of checking one explicit combination, coordinate by
    coordinate in basis order.  ``passed`` means no violated coordinate;
    caveats are reported, not counted as failures."""

    space: Space
    checks: tuple
    passed: bool

    def caveats(self):
        return [c.gen for c in self.checks if c.status == CAVEAT]

    def failures(self):
        return [c for c in self.checks if c.status in (ZERO_FAIL, RESIDUAL_FAIL)]


@dataclass(frozen=True)
class Certificate:
    """A verified decomposition: nonnegative coefficients ``x`` over the
    effectives, a nonnegative residual on the cone, and the caveat list of
    coordinates nobody could check."""

    x: tuple
    residual: dict
    caveats: tuple


@dataclass(frozen=True)
class Infeasible:
    """Witness that no admissible combination exists.

    ``kind`` says which constraint family fails: ``"equality"`` (a
    coordinate outside the cone cannot be matched; ``combination`` holds
    equation multipliers deriving ``0 = deficit``), ``"residual"`` (the
    equalities force ``forced_x`` and the named cone coordinate then has
    the negative residual ``deficit``), ``"nonnegativity"`` (a forced
    coefficient is negative) or ``"cone"`` (a Fourier-Motzkin contradiction
    with the recorded nonnegative multipliers).
    """

    kind: str
    generator: Gen | None
    deficit: Fraction | None
    forced_x: tuple | None = None
    combination: tuple = ()
    caveats: tuple = ()


def _coordinate_rows(problem: CertificateProblem):
    """Classify every coordinate in the union of supports, in basis order.

    Yields (gen, kind, coeff-vector, target-value) with kind ``"eq"`` or
    ``"ineq"``, and collects the Unknown coordinates as caveats.
    """
    support = set(problem.target.coeffs)
    for e in problem.effectives:
        support.update(e.coeffs)
    rows, caveats = [], []
    for gen in sorted(support, key=Gen.sort_key):
        tvalue = problem.target.coeff(gen)
        evalues = [e.coeff(gen) for e in problem.effectives]
        if tvalue is UNKNOWN or any(v is UNKNOWN for v in evalues):
            caveats.append(gen)
            continue
        kind = "ineq" if problem.in_cone(gen) else "eq"
        rows.append((gen, kind, evalues, tvalue))
    return rows, caveats


def check_combination(problem: CertificateProblem, x) -> CheckReport:
    """Evaluate the residual ``target - sum x_j E_j`` coordinate by
    coordinate: coordinates outside the cone must vanish, cone coordinates
    must be nonnegative, Unknown coordinates become caveats."""
    x = [Fraction(v) for v in x]
    if len(x) != len(problem.effectives):
        raise DimensionMismatch(f"{len(x)} coefficients for "
                                f"{len(problem.effectives)} effectives")
    residual = problem.target
    for xj, e in zip(x, problem.effectives):
        residual = add(residual, scale(-xj, e))

    support = set(problem.target.coeffs)
    for e in problem.effectives:
        support.update(e.coeffs)
    checks = []
    passed = True
    for gen in sorted(support, key=Gen.sort_key):
        value = residual.coeff(gen)
        if value is UNKNOWN:
            checks.append(CoordinateCheck(gen, CAVEAT, None))
        elif problem.in_cone(gen):
            ok = value >= 0
            checks.append(CoordinateCheck(gen, RESIDUAL_OK if ok else RESIDUAL_FAIL,
                                          value))
            passed = passed and ok
        else:
            ok = value == 0
            checks.append(CoordinateCheck(gen, ZERO_OK if ok else ZERO_FAIL, value))
            passed = passed and ok
    return CheckReport(problem.space, tuple(checks), passed)


def find_certificate(problem: CertificateProblem):
    """Decide feasibility exactly and return a :class:`Certificate` or an
    :class:`Infeasible` witness.

    Equality constraints (coordinates outside the cone) are eliminated
    first, in basis order, so a contradiction is reported at the first
    coordinate that exposes it.  When the equalities pin the combination
    completely, the inequalities are checked directly; otherwise the
    remaining freedom goes through Fourier-Motzkin elimination.  The
    output is deterministic.
    """
    k = len(problem.effectives)
    rows, caveats = _coordinate_rows(problem)
    caveats = tuple(caveats)

    eliminator = ExactEliminator(k)
    eq_rows = [(gen, evalues, tvalue) for gen, kind, evalues, tvalue in rows
               if kind == "eq"]
    ineq_rows = [(gen, evalues, tvalue) for gen, kind, evalues, tvalue in rows
                 if kind == "ineq"]
    labels = []
    for gen, evalues, tvalue in eq_rows:
        labels.append(gen.name)
        status, info = eliminator.add(evalues, tvalue)
        if status == CONFLICT:
            mults, residue = info
            forced = None
            if eliminator.rank == k:
                forced = tuple(eliminator.particular_solution())
            witness = tuple((labels[idx], m) for idx, m in enumerate(mults) if m)
            return Infeasible("equality", gen, residue, forced, witness, caveats)

    if eliminator.rank == k:
        x = eliminator.particular_solution()
        for j, value in enumerate(x):
            if value < 0:
                return Infeasible("nonnegativity", None, value, tuple(x), (),
                                  caveats)
        for gen, evalues, tvalue in ineq_rows:
            residual = tvalue - sum(e * v for e, v in zip(evalues, x))
            if residual < 0:
                return Infeasible("residual", gen, residual, tuple(x), (), caveats)
        return _certificate(problem, x, ineq_rows, caveats)

    # leftover freedom: substitute x = x0 + N t and run Fourier-Motzkin
    x0 = eliminator.particular_solution()
    null = eliminator.nullspace_basis()
    ineqs = []
    ineq_labels = []
    for gen, evalues, tvalue in ineq_rows:
        # sum_j e_j x_j <= t  becomes  sum_f (e . N_f) t_f <= t - e . x0
        coeffs = [sum(e * nf[j] for j, e in enumerate(evalues)) for nf in null]
        const = tvalue - sum(e * v for e, v in zip(evalues, x0))
        ineqs.append((coeffs, const))
        ineq_labels.append(gen.name)
    for j in range(k):
        coeffs = [-nf[j] for nf in null]
        ineqs.append((coeffs, x0[j]))
        ineq_labels.append(f"x{j + 1}>=0")
    outcome = fm_feasible_point(ineqs)
    if isinstance(outcome, FMInfeasible):
        witness = tuple((ineq_labels[idx], m) for idx, m in outcome.multipliers)
        return Infeasible("cone", None, outcome.value, None, witness, caveats)
    x = list(x0)
    for f, t_value in enumerate(outcome):
        for j in range(k):
            x[j] += null[f][j] * t_value
    return _certificate(problem, x, ineq_rows, caveats)


def _certificate(problem: CertificateProblem, x, ineq_rows, caveats) -> Certificate:
    residual = {}
    for gen, evalues, tvalue in ineq_rows:
        residual[gen] = tvalue - sum(e * v for e, v in zip(evalues, x))
    return Certificate(tuple(Fraction(v) for v in x), residual, caveats)


# ---------------------------------------------------------------------------
# JSON forms

def certificate_to_json_dict(cert: Certificate) -> dict:
    return {
        "feasible": True,
        "x": [str(v) for v in cert.x],
        "residual": {gen.name: str(v)
                     for gen, v in sorted(cert.residual.items(),
                                          key=lambda kv: kv[0].sort_key())},
        "caveats": [gen.name for gen in cert.caveats],
    }


def infeasible_to_json_dict(witness: Infeasible) -> dict:
    return {
        "feasible": False,
        "kind": witness.kind,
        "generator": witness.generator.name if witness.generator else None,
        "deficit": str(witness.deficit) if witness.deficit is not None else None,
        "forced_x": [str(v) for v in witness.forced_x]
                    if witness.forced_x is not None else None,
        "combination": [[name, str(m)] for name, m in witness.combination],
        "caveats": [gen.name for gen in witness.caveats],
    }


def check_report_to_json_dict(report: CheckReport) -> dict:
    return {
        "passed": report.passed,
        "coordinates": [
            {"generator": c.gen.name, "status": c.status,
             "value": None if c.value is None else str(c.value)}
            for c in report.checks
        ],
    }
