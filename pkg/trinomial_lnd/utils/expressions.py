"""Polynomial expressions in the variables T(i,j).

Grammar (whitespace is insignificant)::

    poly     := term (('+' | '-') term)*
    term     := sign* factor ('*' factor)*
    sign     := '+' | '-'
    factor   := rational | 'T(' int ',' int ')' ['^' positive-int]
    rational := int ['/' positive-int]

A term may be a bare constant (``3/2``) and may carry any run of signs
(``- -T(0,1)`` is ``T(0,1)``); terms are joined by binary ``+`` or ``-``.

Exact rationals throughout. ``format_poly`` writes the same grammar, so printing
and re-parsing gives back an equal polynomial.
"""

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from trinomial_lnd.algebra.ring import Polynomial, TrinomialRing, Variable
from trinomial_lnd.errors import SpecSyntaxError

_TOKEN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<variable>T\(\s*(?P<i>-?\d+)\s*,\s*(?P<j>-?\d+)\s*\))
  | (?P<number>\d+)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    column: int
    value: object = None


def tokenize(text: str, line: int = 1, column: int = 1) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, column + pos)
        kind = match.lastgroup
        if kind == "variable":
            variable = (int(match.group("i")), int(match.group("j")))
            tokens.append(Token("variable", match.group(), column + pos, variable))
        elif kind == "number":
            tokens.append(Token("number", match.group(), column + pos, int(match.group())))
        elif kind == "op":
            tokens.append(Token(match.group(), match.group(), column + pos))
        pos = match.end()
    tokens.append(Token("end", "", column + len(text)))
    return tokens


class _Parser:
    def __init__(self, R: TrinomialRing, tokens: Sequence[Token], line: int):
        self.R = R
        self.tokens = tokens
        self.line = line
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> SpecSyntaxError:
        token = token or self.current
        return SpecSyntaxError(message, self.line, token.column)

    def take(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.pos += 1
        return token

    def poly(self) -> Polynomial:
        total = self.term()
        while self.current.kind in ("+", "-"):
            sign = 1 if self.take(self.current.kind).kind == "+" else -1
            total = total + self.term() * sign
        if self.current.kind != "end":
            raise self.error(f"unexpected {self.current.text!r}")
        return total

    def term(self) -> Polynomial:
        sign = 1
        while self.current.kind in ("+", "-"):
            if self.take(self.current.kind).kind == "-":
                sign = -sign
        coefficient = [Fraction(sign)]
        exponents = [0] * self.R.trinomial.n
        self.factor(exponents, coefficient)
        while self.current.kind == "*":
            self.take("*")
            self.factor(exponents, coefficient)
        return self.R.monomial(exponents, coefficient[0])

    def factor(self, exponents: List[int], coefficient: List[Fraction]) -> None:
        token = self.current
        if token.kind == "number":
            self.take("number")
            value = Fraction(token.value)
            if self.current.kind == "/":
                self.take("/")
                denominator = self.take("number")
                if denominator.value == 0:
                    raise self.error("division by zero", denominator)
                value /= denominator.value
            coefficient[0] *= value
        elif token.kind == "variable":
            self.take("variable")
            index = self.R.trinomial.index(token.value)
            power = 1
            if self.current.kind == "^":
                self.take("^")
                exponent = self.take("number")
                if exponent.value < 1:
                    raise self.error("exponents must be positive integers", exponent)
                power = exponent.value
            exponents[index] += power
        else:
            found = token.text or "end of input"
            raise self.error(f"expected a number or a variable T(i,j), found {found!r}")


def parse_poly(text: str, R: TrinomialRing, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` into an exact polynomial of R; unknown variables raise IndexOutOfRange."""
    tokens = tokenize(text, line, column)
    if tokens[0].kind == "end":
        raise SpecSyntaxError("empty expression", line, column)
    return _Parser(R, tokens, line).poly()


def format_variable(variable: Variable) -> str:
    i, j = variable
    return f"T({i},{j})"


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(u: Sequence[int], variables: Sequence[Variable]) -> str:
    factors = []
    for k, variable in zip(u, variables):
        if k:
            factors.append(format_variable(variable) + (f"^{k}" if k > 1 else ""))
    return "*".join(factors)


def format_poly(p: Polynomial, R: TrinomialRing) -> str:
    """Terms in descending lex order, e.g. ``T(0,1)^2*T(2,1) - 1/2*T(1,1) + 3``."""
    terms: List[Tuple[str, str]] = []
    for u, c in R.terms(p):
        sign = "-" if c < 0 else "+"
        monomial = format_monomial(u, R.trinomial.variables)
        magnitude = abs(c)
        if not monomial:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_coefficient(magnitude)}*{monomial}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
