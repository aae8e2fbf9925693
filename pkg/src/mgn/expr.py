"""Textual class expressions.

Grammar (whitespace insignificant)::

    expr     := '0' | term (('+'|'-') term)*
    term     := ['-'] [coef '*'] gen
    coef     := rational | '?'
    rational := ['-'] INT ['/' INT]
    gen      := 'l' | 'd0' | 'w' INT | 'psi' INT
              | 'd' INT ';' '{' [INT (',' INT)*] '}'
              | 'BN(' INT ')' | 'DGA(' INT ';' INT (',' INT)* ')'
              | 'K(' INT ',' INT ')'

``psi`` terms are rewritten into the working basis on parse; printing
always uses the working basis.  The coefficient ``?`` marks an Unknown
coordinate and is only allowed on plain generators.  Named classes must
live on the ambient space of the expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import (UNKNOWN, DivisorClass, add, psi_in_omega_basis, scale,
                      unit_class, zero_class)
from .basis import DELTA_IRR, Gen, LAMBDA, Space, canonicalize, omega
from .classes import brill_noether, canonical_tracked, pointed_bn_partial
from .errors import ParseError, SpaceMismatch

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+)|"
                    r"(?P<sym>[-+*/;{},()?]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, space: Space, text: str):
        self.space = space
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.k += 1
        return tok

    def parse(self) -> DivisorClass:
        # a lone "0" denotes the zero class
        if (self.peek()[0] == "int" and self.peek()[1] == 0
                and self.tokens[self.k + 1][0] == "end"):
            return zero_class(self.space)
        total = self.parse_term(first=True)
        while True:
            tok = self.peek()
            if tok[0] == "end":
                return total
            if tok[0] == "sym" and tok[1] in "+-":
                self.take()
                term = self.parse_term(first=False)
                if tok[1] == "-":
                    term = scale(-1, term)
                total = add(total, term)
            else:
                raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])

    def parse_term(self, first: bool) -> DivisorClass:
        sign = 1
        if self.peek()[0] == "sym" and self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "?":
            self.take()
            self.take("sym", "*")
            gen = self.parse_plain_generator()
            if sign < 0:
                # an unknown has no sign; reject to keep printing canonical
                raise ParseError("'?' coefficient cannot be negated", tok[2])
            return DivisorClass(self.space, {gen: UNKNOWN}, _validate=False)
        if tok[0] == "int":
            coef = sign * self.parse_rational()
            self.take("sym", "*")
            return scale(coef, self.parse_generator_or_named())
        return scale(sign, self.parse_generator_or_named())

    def parse_rational(self) -> Fraction:
        num = self.take("int")[1]
        if self.peek()[0] == "sym" and self.peek()[1] == "/":
            self.take()
            den_tok = self.take("int")
            if den_tok[1] == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, den_tok[1])
        return Fraction(num)

    def parse_generator_or_named(self) -> DivisorClass:
        tok = self.peek()
        if tok[0] == "name" and tok[1] in ("BN", "DGA", "K"):
            return self.parse_named(tok[1])
        if tok[0] == "name" and tok[1] == "psi":
            self.take()
            label = self.take("int")[1]
            self._check_label(label, tok[2])
            return psi_in_omega_basis(self.space, label)
        gen = self.parse_plain_generator()
        return unit_class(self.space, gen)

    def parse_plain_generator(self) -> Gen:
        tok = self.take("name")
        name, at = tok[1], tok[2]
        if name == "l":
            return LAMBDA
        if name == "w":
            label = self.take("int")[1]
            self._check_label(label, at)
            return omega(label)
        if name == "d":
            i = self.take("int")[1]
            if self.peek()[0] == "sym" and self.peek()[1] == ";":
                self.take()
                self.take("sym", "{")
                points = []
                if not (self.peek()[0] == "sym" and self.peek()[1] == "}"):
                    points.append(self.take("int")[1])
                    while self.peek()[0] == "sym" and self.peek()[1] == ",":
                        self.take()
                        points.append(self.take("int")[1])
                self.take("sym", "}")
                try:
                    return canonicalize(self.space, i, points)
                except Exception as exc:
                    raise ParseError(str(exc), at) from None
            if i == 0:
                return DELTA_IRR
            raise ParseError(f"'d{i}' needs a point set, as in 'd{i};{{1}}'", at)
        raise ParseError(f"unknown generator {name!r}", at)

    def parse_named(self, which: str) -> DivisorClass:
        tok = self.take("name")
        at = tok[2]
        self.take("sym", "(")
        first = self.take("int")[1]
        if which == "BN":
            self.take("sym", ")")
            built = brill_noether(first)
        elif which == "K":
            self.take("sym", ",")
            second = self.take("int")[1]
            self.take("sym", ")")
            built = canonical_tracked(Space(first, second))
        else:
            self.take("sym", ";")
            weights = [self.take("int")[1]]
            while self.peek()[0] == "sym" and self.peek()[1] == ",":
                self.take()
                weights.append(self.take("int")[1])
            self.take("sym", ")")
            built = pointed_bn_partial(first, weights)
        if built.space != self.space:
            raise SpaceMismatch(
                f"{built.provenance} lives on {built.space}, expression is on "
                f"{self.space}")
        return built

    def _check_label(self, label: int, at: int):
        if not 1 <= label <= self.space.n:
            raise ParseError(f"point label {label} out of range 1..{self.space.n}",
                             at)


def parse_class(space: Space, text: str) -> DivisorClass:
    """Parse a class expression on the given space."""
    return _Parser(space, text).parse()


def _format_coeff(value: Fraction) -> str:
    return str(value)


def format_class(c: DivisorClass) -> str:
    """Canonical text of a class: terms in basis order, unit coefficients
    omitted, Unknown coordinates rendered as ``?*gen``.  The output parses
    back to an equal class, and reprinting is byte-identical."""
    parts = []
    for gen in sorted(c.coeffs, key=Gen.sort_key):
        value = c.coeffs[gen]
        if value is UNKNOWN:
            parts.append(("+", f"?*{gen.name}"))
            continue
        sign = "-" if value < 0 else "+"
        mag = abs(value)
        body = gen.name if mag == 1 else f"{_format_coeff(mag)}*{gen.name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = [first_body if first_sign == "+" else f"-{first_body}"]
    for sign, body in parts[1:]:
        out.append(f" {sign} {body}")
    return "".join(out)
