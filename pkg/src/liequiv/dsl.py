"""Generator DSL: parsing and canonical printing.

A generator is written as a signed sum of terms, each term a product of
coefficient factors ending in a direction:

    t*d/dx1 + d/du1
    x1*d/dx1 + u1*d/du1 + 2*p*d/dp + 2*Pi11*d/dPi11 + 2*G*d/dG

Coefficient factors are rational literals (``2``, ``3/4``), coordinate
names from the frozen grammar, opaque constants ``?name``, parenthesized
sums, and ``**`` powers.  Directions name the base coordinates only (t, x_i,
u_k, p, rho, Pi_ij, G, H); jet and stress-derivative directions are produced
by prolongation and are rejected here.  ``Pi21`` resolves to the symmetric
representative ``Pi12``.  The grammar is frozen in docs/dsl_grammar.ebnf.

``parse_generator(print_generator(g))`` returns a structurally identical
generator; the same holds for the expression sublanguage through
``parse_expr`` and ``str()``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import Expr, ONE, ZERO, is_zero, unknown
from .generators import GeneratorSpec, make_generator
from .jets import JetRegistry


class DslSyntaxError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownCoordinateError(Exception):
    def __init__(self, name: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: unknown coordinate: {name}")
        self.coordinate = name


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<direction>d/d[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<unknown>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*()])
""", re.VERBOSE)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(src: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, reg: JetRegistry, src: str):
        self.reg = reg
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.next()
        if tok.kind != "op" or tok.text != op:
            raise DslSyntaxError(f"expected {op!r}, found {tok.text or 'end of input'!r}",
                                 tok.line, tok.column)

    def fail(self, message: str):
        tok = self.peek()
        raise DslSyntaxError(message, tok.line, tok.column)

    # -- expression sublanguage ------------------------------------------

    def parse_sum(self) -> Expr:
        sign = self.parse_sign()
        total = sign * self.parse_product()
        while self.peek().kind == "op" and self.peek().text in "+-":
            sign = Fraction(1) if self.next().text == "+" else Fraction(-1)
            total = total + sign * self.parse_product()
        return total

    def parse_sign(self) -> Fraction:
        sign = Fraction(1)
        while self.peek().kind == "op" and self.peek().text in "+-":
            if self.next().text == "-":
                sign = -sign
        return sign

    def parse_product(self) -> Expr:
        total = self.parse_power()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.next()
            total = total * self.parse_power()
        return total

    def parse_power(self) -> Expr:
        base = self.parse_primary()
        if self.peek().kind == "op" and self.peek().text == "**":
            self.next()
            tok = self.next()
            if tok.kind != "number" or "/" in tok.text:
                raise DslSyntaxError("expected a non-negative integer exponent",
                                     tok.line, tok.column)
            return base ** int(tok.text)
        return base

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.next()
            return Expr.const(Fraction(tok.text))
        if tok.kind == "unknown":
            self.next()
            return Expr.of(unknown(tok.text[1:]))
        if tok.kind == "name":
            self.next()
            return Expr.of(self.resolve_name(tok))
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        self.fail(f"expected a coefficient factor, found {tok.text or 'end of input'!r}")

    def resolve_name(self, tok: _Token):
        name = _resolve_symmetric(tok.text)
        if not self.reg.has_name(name):
            raise UnknownCoordinateError(tok.text, tok.line, tok.column)
        return self.reg.coordinate(name)

    # -- generator level ---------------------------------------------------

    def parse_generator(self) -> dict:
        slots = {}
        tok = self.peek()
        if tok.kind == "number" and tok.text == "0":
            self.next()
            if self.peek().kind != "end":
                self.fail("trailing input after zero generator")
            return slots
        first = True
        while True:
            sign = self.parse_sign()
            if first and sign == 1 and self.peek().kind == "end":
                self.fail("empty generator")
            first = False
            coeff, direction = self.parse_term()
            slot = self.direction_slot(direction)
            slots[slot] = slots.get(slot, ZERO) + sign * coeff
            tok = self.peek()
            if tok.kind == "end":
                return slots
            if not (tok.kind == "op" and tok.text in "+-"):
                self.fail(f"expected '+', '-' or end of input, found {tok.text!r}")

    def parse_term(self):
        coeff = ONE
        while True:
            tok = self.peek()
            if tok.kind == "direction":
                self.next()
                return coeff, tok
            part = self.parse_power()
            coeff = coeff * part
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.next()
                continue
            self.fail("a term must end in a direction d/d<coordinate>")

    def direction_slot(self, tok: _Token):
        name = tok.text[len("d/d"):]
        resolved = _resolve_symmetric(name)
        reg = self.reg
        if resolved == "t":
            return ("xi_t",)
        m = re.fullmatch(r"x(\d)", resolved)
        if m and 1 <= int(m.group(1)) <= reg.dim:
            return ("xi_x", int(m.group(1)) - 1)
        m = re.fullmatch(r"u(\d)", resolved)
        if m and 1 <= int(m.group(1)) <= reg.dim:
            return ("eta_u", int(m.group(1)) - 1)
        if resolved == "p":
            return ("eta_p",)
        if resolved == "rho":
            return ("eta_rho",)
        m = re.fullmatch(r"Pi(\d)(\d)", resolved)
        if m:
            pair = (int(m.group(1)), int(m.group(2)))
            if pair in reg.pi:
                return ("mu_pi", reg.pi_pairs().index(pair))
        if resolved == "G":
            return ("mu_g",)
        if resolved == "H":
            return ("mu_h",)
        if reg.has_name(resolved):
            raise DslSyntaxError(
                f"d/d{name} is not a base direction; jet and stress-derivative "
                "coordinates are prolonged automatically", tok.line, tok.column)
        raise UnknownCoordinateError(name, tok.line, tok.column)


def _resolve_symmetric(name: str) -> str:
    m = re.fullmatch(r"Pi(\d)(\d)", name)
    if m and int(m.group(1)) > int(m.group(2)):
        return f"Pi{m.group(2)}{m.group(1)}"
    return name


def parse_expr(reg: JetRegistry, src: str) -> Expr:
    """Parse the coefficient sublanguage into a canonical expression."""
    parser = _Parser(reg, src)
    out = parser.parse_sum()
    tok = parser.peek()
    if tok.kind != "end":
        raise DslSyntaxError(f"trailing input: {tok.text!r}", tok.line, tok.column)
    return out


def parse_generator(reg: JetRegistry, src: str) -> GeneratorSpec:
    parser = _Parser(reg, src)
    slots = parser.parse_generator()
    kwargs = {
        "xi_t": slots.get(("xi_t",), ZERO),
        "xi_x": tuple(slots.get(("xi_x", i), ZERO) for i in range(reg.dim)),
        "eta_u": tuple(slots.get(("eta_u", i), ZERO) for i in range(reg.dim)),
        "eta_p": slots.get(("eta_p",), ZERO),
        "eta_rho": slots.get(("eta_rho",), ZERO),
        "mu_pi": tuple(slots.get(("mu_pi", i), ZERO)
                       for i in range(len(reg.pi_pairs()))),
        "mu_g": slots.get(("mu_g",), ZERO),
        "mu_h": slots.get(("mu_h",), ZERO),
    }
    return make_generator(reg, **kwargs)


def _coefficient_str(coeff: Expr) -> str:
    """Render a coefficient for a generator term; '' means coefficient one.
    Single-term signs are folded into the separator by the caller."""
    if coeff == ONE:
        return ""
    if len(coeff.terms) == 1:
        mono, c = coeff.terms[0]
        if mono.is_one():
            return str(c)
        if c == 1:
            return str(mono)
        return f"{c}*{mono}"
    return f"({coeff})"


def print_generator(reg: JetRegistry, g: GeneratorSpec) -> str:
    """Canonical DSL form; directions in registry order, zero slots omitted."""
    directions = [(reg.t, g.xi_t)]
    directions += [(reg.x[i], g.xi_x[i]) for i in range(reg.dim)]
    directions += [(reg.u[i], g.eta_u[i]) for i in range(reg.dim)]
    directions += [(reg.p, g.eta_p), (reg.rho, g.eta_rho)]
    directions += [(reg.pi[pair], c) for pair, c in zip(reg.pi_pairs(), g.mu_pi)]
    directions += [(reg.g, g.mu_g), (reg.h, g.mu_h)]

    pieces = []
    for atom, coeff in directions:
        if is_zero(coeff):
            continue
        negative = False
        if len(coeff.terms) == 1 and coeff.terms[0][1] < 0:
            negative = True
            coeff = -coeff
        rendered = _coefficient_str(coeff)
        term = f"d/d{atom.name}" if not rendered else f"{rendered}*d/d{atom.name}"
        pieces.append((negative, term))
    if not pieces:
        return "0"
    out = []
    for i, (negative, term) in enumerate(pieces):
        if i == 0:
            out.append(("-" if negative else "") + term)
        else:
            out.append((" - " if negative else " + ") + term)
    return "".join(out)
