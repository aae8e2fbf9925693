"""End-to-end audit cases for the recorded certificate computations.

Each case recomputes, from scratch, the effective divisors entering one
recorded Kodaira-dimension certificate, compares their tracked
coefficients (the ``l``, ``d0`` and common point-class values) against the
claimed forms shipped with the case, checks the claimed combination, and
runs the exact feasibility engine.  Discrepancies are reported with both
readings side by side; nothing is silently adopted.

Cases
-----

``m16n11``  genus 16 with 11 points: pullback average of the genus-17
            Brill-Noether class and the 11-cycle average of the pointed
            pencil class with weights 2,2,2,2,2,1,1,1,1,1,1; claimed
            combination 2/3, 1/3.
``m18n9``   genus 18 with 9 points: pullback average of the genus-19
            Brill-Noether class and the pointed pencil class with nine
            weight-2 points; claimed combination 3/5, 1.
``m22n3``   genus 22 with 3 points: pullback average of the genus-23
            Brill-Noether class, claimed to be twice the tracked
            canonical class.
``m22n4``   the same pullback averaged over 4 points instead, where the
            claimed coefficients do come out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import UNKNOWN, DivisorClass, average_over, combination
from .basis import DELTA_IRR, LAMBDA, Space, cycle_permutation, omega, \
    permutation_powers
from .certificates import (Certificate, CertificateProblem, CheckReport,
                           Infeasible, certificate_to_json_dict,
                           check_combination, check_report_to_json_dict,
                           find_certificate, infeasible_to_json_dict)
from .classes import brill_noether, canonical_tracked, pointed_bn_partial
from .pullbacks import clutch_pullback, lift_and_average


@dataclass(frozen=True)
class TrackedForm:
    """Tracked coordinates of a class: the ``l`` and ``d0`` coefficients and
    the common value of every point-class coefficient.  ``None`` marks a
    coordinate the claim does not mention (or, on the recomputed side, a
    nonuniform point-class pattern)."""

    lam: Fraction | None
    d0: Fraction | None
    w: Fraction | None

    def text(self) -> str:
        parts = []
        for value, name in ((self.lam, "l"), (self.d0, "d0"), (self.w, "sum_w")):
            if value is None:
                continue
            sign = "-" if value < 0 else "+"
            mag = abs(value)
            body = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        return {key: (None if value is None else str(value))
                for key, value in (("l", self.lam), ("d0", self.d0),
                                   ("w", self.w))}


def tracked_form(c: DivisorClass) -> TrackedForm:
    """Read the tracked coordinates off a class; the point-class slot is
    ``None`` when the coefficients are not all equal."""
    lam = c.coeff(LAMBDA)
    d0 = c.coeff(DELTA_IRR)
    ws = [c.coeff(omega(i)) for i in c.space.labels()]
    if any(w is UNKNOWN for w in ws) or lam is UNKNOWN or d0 is UNKNOWN:
        raise ValueError("tracked coordinates must be known")
    w = ws[0] if ws and all(x == ws[0] for x in ws) else None
    return TrackedForm(lam, d0, w)


@dataclass(frozen=True)
class Finding:
    """One claimed-versus-recomputed comparison.  Only the coordinates the
    claim mentions are compared."""

    quantity: str
    claimed: TrackedForm
    recomputed: TrackedForm

    @property
    def match(self) -> bool:
        for c, r in ((self.claimed.lam, self.recomputed.lam),
                     (self.claimed.d0, self.recomputed.d0),
                     (self.claimed.w, self.recomputed.w)):
            if c is not None and c != r:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {"quantity": self.quantity,
                "claimed": self.claimed.to_json_dict(),
                "claimed_form": self.claimed.text(),
                "recomputed": self.recomputed.to_json_dict(),
                "recomputed_form": self.recomputed.text(),
                "match": self.match}


@dataclass(frozen=True)
class AuditReport:
    case: str
    space: Space
    findings: tuple
    claimed_x: tuple
    check: CheckReport
    result: Certificate | Infeasible
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return (all(f.match for f in self.findings) and self.check.passed
                and isinstance(self.result, Certificate))

    def to_json_dict(self) -> dict:
        result = (certificate_to_json_dict(self.result)
                  if isinstance(self.result, Certificate)
                  else infeasible_to_json_dict(self.result))
        return {"case": self.case, "g": self.space.g, "n": self.space.n,
                "passed": self.passed,
                "findings": [f.to_json_dict() for f in self.findings],
                "claimed_x": [str(v) for v in self.claimed_x],
                "claimed_combination_check":
                    check_report_to_json_dict(self.check),
                "certificate": result,
                "notes": list(self.notes)}

    def text(self) -> str:
        lines = [f"audit {self.case} on genus {self.space.g} with "
                 f"{self.space.n} points: {'PASS' if self.passed else 'FAIL'}"]
        for f in self.findings:
            mark = "ok      " if f.match else "MISMATCH"
            lines.append(f"  [{mark}] {f.quantity}")
            lines.append(f"             claimed    {f.claimed.text()}")
            lines.append(f"             recomputed {f.recomputed.text()}")
        xs = ", ".join(str(v) for v in self.claimed_x)
        lines.append(f"  claimed combination x = ({xs}): "
                     f"{'passes' if self.check.passed else 'fails'}")
        for c in self.check.failures():
            lines.append(f"             violated at {c.gen.name}: {c.value}")
        if isinstance(self.result, Certificate):
            xs = ", ".join(str(v) for v in self.result.x)
            lines.append(f"  certificate found: x = ({xs}), "
                         f"{len(self.result.caveats)} unchecked coordinates")
            for gen, value in sorted(self.result.residual.items(),
                                     key=lambda kv: kv[0].sort_key()):
                lines.append(f"             residual {gen.name} = {value}")
        else:
            w = self.result
            lines.append(f"  no certificate exists ({w.kind})")
            if w.forced_x is not None:
                xs = ", ".join(str(v) for v in w.forced_x)
                lines.append(f"             forced x = ({xs})")
            if w.generator is not None:
                lines.append(f"             violated at {w.generator.name}: "
                             f"deficit {w.deficit}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _frac(a, b=1) -> Fraction:
    return Fraction(a, b)


def _case_m16n11() -> AuditReport:
    space = Space(16, 11)
    d1 = lift_and_average(clutch_pullback(brill_noether(17)), 11)
    pencil = pointed_bn_partial(16, (2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1))
    d2 = average_over(permutation_powers(cycle_permutation(11, 11)), pencil)
    claimed_x = (_frac(2, 3), _frac(1, 3))
    findings = (
        Finding("averaged pullback divisor D1",
                TrackedForm(_frac(20), _frac(-3), _frac(6, 11)),
                tracked_form(d1)),
        Finding("cycle-averaged pencil divisor D2",
                TrackedForm(_frac(-1), None, _frac(21, 11)),
                tracked_form(d2)),
        Finding("combination 2/3*D1 + 1/3*D2",
                TrackedForm(_frac(13), _frac(-2), _frac(1)),
                tracked_form(combination(zip(claimed_x, (d1, d2))))),
    )
    problem = CertificateProblem(canonical_tracked(space), (d1, d2))
    return AuditReport("m16n11", space, findings, claimed_x,
                       check_combination(problem, claimed_x),
                       find_certificate(problem))


def _case_m18n9() -> AuditReport:
    space = Space(18, 9)
    two_point = clutch_pullback(brill_noether(19))
    d1 = lift_and_average(two_point, 9)
    d2 = pointed_bn_partial(18, (2,) * 9)
    claimed_x = (_frac(3, 5), _frac(1))
    findings = (
        Finding("two-point pullback of the genus-19 class",
                TrackedForm(_frac(22), _frac(-10, 3), _frac(3)),
                tracked_form(two_point)),
        Finding("averaged pullback divisor D1",
                TrackedForm(_frac(22), _frac(-10, 3), _frac(2, 3)),
                tracked_form(d1)),
        Finding("pointed pencil divisor D2",
                TrackedForm(_frac(-1), None, _frac(3)),
                tracked_form(d2)),
        Finding("combination 3/5*D1 + D2",
                TrackedForm(_frac(13), _frac(-2), _frac(1)),
                tracked_form(combination(zip(claimed_x, (d1, d2))))),
    )
    problem = CertificateProblem(canonical_tracked(space), (d1, d2))
    return AuditReport("m18n9", space, findings, claimed_x,
                       check_combination(problem, claimed_x),
                       find_certificate(problem))


def _case_m22n3() -> AuditReport:
    space = Space(22, 3)
    d1 = lift_and_average(clutch_pullback(brill_noether(23)), 3)
    claimed_x = (_frac(1, 2),)
    findings = (
        Finding("averaged pullback divisor D1",
                TrackedForm(_frac(26), _frac(-4), _frac(2)),
                tracked_form(d1)),
        Finding("combination 1/2*D1",
                TrackedForm(_frac(13), _frac(-2), _frac(1)),
                tracked_form(combination(zip(claimed_x, (d1,))))),
    )
    problem = CertificateProblem(canonical_tracked(space), (d1,))
    return AuditReport("m22n3", space, findings, claimed_x,
                       check_combination(problem, claimed_x),
                       find_certificate(problem),
                       notes=("the claimed point-class coefficient matches the "
                              "4-point average, not the 3-point one; see case "
                              "m22n4",))


def _case_m22n4() -> AuditReport:
    space = Space(22, 4)
    d1 = lift_and_average(clutch_pullback(brill_noether(23)), 4)
    claimed_x = (_frac(1, 2),)
    findings = (
        Finding("averaged pullback divisor D1",
                TrackedForm(_frac(26), _frac(-4), _frac(2)),
                tracked_form(d1)),
        Finding("combination 1/2*D1",
                TrackedForm(_frac(13), _frac(-2), _frac(1)),
                tracked_form(combination(zip(claimed_x, (d1,))))),
    )
    problem = CertificateProblem(canonical_tracked(space), (d1,))
    return AuditReport("m22n4", space, findings, claimed_x,
                       check_combination(problem, claimed_x),
                       find_certificate(problem))


AUDIT_CASES = {
    "m16n11": _case_m16n11,
    "m18n9": _case_m18n9,
    "m22n3": _case_m22n3,
    "m22n4": _case_m22n4,
}


def run_audit(case: str) -> AuditReport:
    """Run one named audit case end to end."""
    try:
        runner = AUDIT_CASES[case]
    except KeyError:
        raise ValueError(f"unknown audit case {case!r}; choose from "
                         f"{sorted(AUDIT_CASES)}") from None
    return runner()
