"""Exact symbolic expressions in canonical normal form.

The carrier is the polynomial ring, over exact rationals, in three kinds of
atoms:

* plain coordinates (``t``, ``x1``, ``rho_x2``, ...),
* function symbols with a declared argument list (``G`` over ``(p, rho)``),
* formal derivatives of function symbols, stored as a sorted multiset of
  differentiation arguments so that mixed partials coincide structurally.

Every constructor and operator returns the canonical form directly: terms
carry nonzero rational coefficients, monomials map atoms to positive integer
exponents, and both are kept sorted under a fixed total order (atoms by kind
rank then name, with function symbols first, their formal derivatives second
and coordinates last; monomials lexicographically on their (atom, exponent)
sequences).  Structural equality therefore decides mathematical equality and
normalization is idempotent by construction.  Output is byte-stable across
runs and platforms.

Division and negative or fractional exponents are deliberately unsupported;
callers that need a denominator clear it explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

COORD = "coord"
FUNC = "func"
DERIV = "deriv"

_KIND_RANK = {FUNC: 0, DERIV: 1, COORD: 2}


class ExprError(Exception):
    """Base class for expression-engine failures."""


class UnsupportedFormError(ExprError):
    """Exponent outside the supported non-negative integers, or a value that
    cannot be read as an expression."""


class UnknownSymbolError(ExprError):
    """Differentiation request that does not name a usable coordinate."""


class CyclicSubstitutionError(ExprError):
    """A substitution key occurs inside one of the replacement values."""


class MissingBindingError(ExprError):
    """Numeric evaluation hit an atom with no bound value."""


class Atom:
    """An indivisible symbol: coordinate, function symbol, or formal derivative.

    Atoms are immutable value objects; identity is the pair (kind, name).
    Function symbols carry the ordered tuple of coordinate names they are
    declared over; formal derivatives additionally carry the base symbol name
    and the sorted multiset of differentiation arguments.
    """

    __slots__ = ("kind", "name", "args", "base", "wrt", "key")

    def __init__(self, kind: str, name: str, args: tuple = (), base: str = "",
                 wrt: tuple = ()):
        self.kind = kind
        self.name = name
        self.args = tuple(args)
        self.base = base
        self.wrt = tuple(wrt)
        self.key = (_KIND_RANK[kind], name)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return self.name

    # arithmetic promotes to Expr, so atoms compose directly

    def __add__(self, other):
        return as_expr(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return as_expr(self) - other

    def __rsub__(self, other):
        return as_expr(other) - as_expr(self)

    def __mul__(self, other):
        return as_expr(self) * other

    __rmul__ = __mul__

    def __neg__(self):
        return -as_expr(self)

    def __pow__(self, n):
        return as_expr(self) ** n


def coordinate(name: str) -> Atom:
    return Atom(COORD, name)


def unknown(label: str) -> Atom:
    """An opaque rational constant, usable inside ansatz coefficients."""
    return Atom(COORD, "?" + label)


def is_unknown(a: Atom) -> bool:
    return a.kind == COORD and a.name.startswith("?")


def function_symbol(name: str, args: Iterable[str]) -> Atom:
    return Atom(FUNC, name, args=tuple(args))


def _derivative_name(base: str, wrt: tuple) -> str:
    # Frozen grammar: G_p / G_prho style for (p, rho)-functions, Pi12_d_u1x2
    # style for gradient-argument functions.
    tokens = [w.replace("_", "") for w in wrt]
    if all(tok in ("p", "rho") for tok in tokens):
        return base + "_" + "".join(tokens)
    return base + "_d_" + "".join(tokens)


def derivative_of(a: Atom, arg: str) -> Atom:
    """Formal derivative of a function symbol or of one of its derivatives.

    The differentiation argument must be one of the declared arguments of the
    base symbol; the multiset representation makes the result independent of
    differentiation order.
    """
    if a.kind == FUNC:
        base, args, wrt = a.name, a.args, (arg,)
    elif a.kind == DERIV:
        base, args, wrt = a.base, a.args, tuple(sorted(a.wrt + (arg,)))
    else:
        raise UnknownSymbolError(f"{a.name} has no formal derivatives")
    if arg not in args:
        raise UnknownSymbolError(f"{base} does not take {arg} as an argument")
    return Atom(DERIV, _derivative_name(base, wrt), args=args, base=base, wrt=wrt)


class Monomial:
    """Product of atoms with positive integer exponents; the empty product is 1."""

    __slots__ = ("factors", "key")

    def __init__(self, factors: Iterable = ()):
        acc = {}
        for a, e in factors:
            if not isinstance(e, int) or e < 0:
                raise UnsupportedFormError(f"unsupported exponent {e!r} on {a!r}")
            if e == 0:
                continue
            acc[a] = acc.get(a, 0) + e
        pairs = tuple(sorted(acc.items(), key=lambda item: item[0].key))
        self.factors = pairs
        self.key = tuple((a.key, e) for a, e in pairs)

    def is_one(self) -> bool:
        return not self.factors

    def atoms(self) -> tuple:
        return tuple(a for a, _ in self.factors)

    def exponent(self, a: Atom) -> int:
        for b, e in self.factors:
            if b == a:
                return e
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def __pow__(self, n: int) -> "Monomial":
        if not isinstance(n, int) or n < 0:
            raise UnsupportedFormError(f"unsupported exponent {n!r}")
        return Monomial(tuple((a, e * n) for a, e in self.factors))

    def try_divide(self, other: "Monomial"):
        """Quotient monomial, or None when ``other`` does not divide ``self``."""
        d = dict(self.factors)
        for a, e in other.factors:
            r = d.get(a, 0) - e
            if r < 0:
                return None
            if r == 0:
                d.pop(a)
            else:
                d[a] = r
        return Monomial(tuple(d.items()))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(a.name if e == 1 else f"{a.name}**{e}"
                        for a, e in self.factors)

    __repr__ = __str__


MONO_ONE = Monomial()


class Expr:
    """Canonical sum of rational multiples of monomials.  Immutable.

    The zero expression is the empty sum.  Construction from a mapping or an
    iterable of (monomial, coefficient) pairs merges duplicates, drops zero
    coefficients and sorts, so any Expr in circulation is canonical.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = {}
        for mono, c in items:
            c = Fraction(c)
            if not c:
                continue
            prev = acc.get(mono)
            if prev is None:
                acc[mono] = c
            else:
                s = prev + c
                if s:
                    acc[mono] = s
                else:
                    del acc[mono]
        self.terms = tuple(sorted(acc.items(), key=lambda item: item[0].key))

    @staticmethod
    def of(a: Atom) -> "Expr":
        return Expr(((Monomial(((a, 1),)), Fraction(1)),))

    @staticmethod
    def const(c) -> "Expr":
        return Expr(((MONO_ONE, Fraction(c)),))

    # -- ring operators -------------------------------------------------

    def __add__(self, other):
        other = as_expr(other)
        acc = dict(self.terms)
        for mono, c in other.terms:
            s = acc.get(mono, _F0) + c
            if s:
                acc[mono] = s
            else:
                acc.pop(mono, None)
        return _raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) + (-self)

    def __mul__(self, other):
        other = as_expr(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                s = acc.get(m, _F0) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        return _raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise UnsupportedFormError(f"unsupported exponent {n!r}")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, s):
        if not isinstance(s, (int, Fraction)):
            raise UnsupportedFormError("division is only defined by rational scalars")
        return self * (Fraction(1) / Fraction(s))

    def __eq__(self, other):
        if isinstance(other, Expr):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Atom)):
            return self.terms == as_expr(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def leading(self):
        """First (monomial, coefficient) pair in canonical order."""
        return self.terms[0]

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for i, (mono, c) in enumerate(self.terms):
            mag = abs(c)
            if mono.is_one():
                body = str(mag)
            elif mag == 1:
                body = str(mono)
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append((" - " if c < 0 else " + ") + body)
        return "".join(chunks)

    __repr__ = __str__


_F0 = Fraction(0)


def _raw(acc: dict) -> Expr:
    e = Expr.__new__(Expr)
    e.terms = tuple(sorted(acc.items(), key=lambda item: item[0].key))
    return e


ZERO = Expr()
ONE = Expr.const(1)


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, Atom):
        return Expr.of(v)
    if isinstance(v, (int, Fraction)):
        return Expr.const(v)
    raise UnsupportedFormError(f"cannot interpret {v!r} as an expression")


def normalize(v) -> Expr:
    """Canonical form of any finite +, *, integer-power tree over atoms and
    rationals.  Idempotent: normalize(normalize(e)) is structurally equal to
    normalize(e)."""
    return as_expr(v)


def is_zero(e) -> bool:
    return not as_expr(e).terms


def atoms_of(e) -> tuple:
    seen = set()
    for mono, _ in as_expr(e).terms:
        seen.update(mono.atoms())
    return tuple(sorted(seen))


def _single_derivative(a: Atom, v: Atom, chain: bool):
    """d(atom)/d(v) as None (zero), 1, or a fresh formal-derivative atom."""
    if not chain:
        return 1 if a == v else None
    if a.kind == COORD:
        return 1 if a == v else None
    if v.name in a.args:
        return derivative_of(a, v.name)
    return None


def _differentiate(e: Expr, v: Atom, chain: bool) -> Expr:
    acc = {}
    for mono, c in e.terms:
        for idx, (a, k) in enumerate(mono.factors):
            da = _single_derivative(a, v, chain)
            if da is None:
                continue
            rest = list(mono.factors[:idx] + mono.factors[idx + 1:])
            if k > 1:
                rest.append((a, k - 1))
            if isinstance(da, Atom):
                rest.append((da, 1))
            m = Monomial(rest)
            s = acc.get(m, _F0) + c * k
            if s:
                acc[m] = s
            else:
                del acc[m]
    return _raw(acc)


def diff_partial(e, v: Atom) -> Expr:
    """Formal partial derivative by the coordinate ``v``.

    Linear, Leibniz, and aware of declared arguments: differentiating a
    function symbol by one of its arguments yields the corresponding formal
    derivative atom, and the same chain applies to derivative atoms, so
    mixed partials commute.
    """
    if v.kind != COORD:
        raise UnknownSymbolError(f"cannot differentiate by {v.name}: not a coordinate")
    return _differentiate(as_expr(e), v, chain=True)


def diff_atom(e, a: Atom) -> Expr:
    """Partial derivative treating every atom as an independent coordinate.

    This is the derivative entering directional actions of vector fields on
    the extended space, where function symbols are coordinates in their own
    right and must not chain through their declared arguments.
    """
    return _differentiate(as_expr(e), a, chain=False)


def replace_atoms(e, mapping: Mapping[Atom, object]) -> Expr:
    """Simultaneous single-pass replacement of atoms by expressions.

    Atoms absent from the mapping are kept.  No recursion: keys occurring
    inside replacement values are left alone, which makes relabelings and
    self-referencing maps (x -> x + a) well defined.
    """
    e = as_expr(e)
    table = {a: as_expr(v) for a, v in mapping.items()}
    acc = {}
    for mono, c in e.terms:
        t = Expr.const(c)
        plain = []
        for a, k in mono.factors:
            b = table.get(a)
            if b is None:
                plain.append((a, k))
            else:
                t = t * b ** k
        if plain:
            t = t * _raw({Monomial(plain): Fraction(1)})
        for m, cc in t.terms:
            s = acc.get(m, _F0) + cc
            if s:
                acc[m] = s
            else:
                del acc[m]
    return _raw(acc)


def substitute(e, bindings: Mapping[Atom, object]) -> Expr:
    """Simultaneous substitution followed by normalization.

    Contract: no binding key may occur inside any binding value; a violation
    raises CyclicSubstitutionError.  Use :func:`replace_atoms` for raw
    relabelings where self reference is intended.
    """
    table = {a: as_expr(v) for a, v in bindings.items()}
    keys = set(table)
    for a, v in table.items():
        hit = keys.intersection(atoms_of(v))
        if hit:
            worst = sorted(hit)[0]
            raise CyclicSubstitutionError(
                f"binding value for {a.name} contains bound atom {worst.name}")
    return replace_atoms(e, table)


def collect(e, parametric) -> dict:
    """Split ``e`` by monomials in the ``parametric`` atoms.

    Returns an ordered mapping from parametric monomial to the coefficient
    expression over the remaining atoms; summing monomial * coefficient over
    the entries recovers ``e`` exactly.  The zero expression yields an empty
    mapping.
    """
    pset = set(parametric)
    if not pset:
        raise ValueError("parametric set must be non-empty")
    buckets = {}
    for mono, c in as_expr(e).terms:
        par, rest = [], []
        for a, k in mono.factors:
            (par if a in pset else rest).append((a, k))
        key = Monomial(par)
        sub = buckets.setdefault(key, {})
        m = Monomial(rest)
        s = sub.get(m, _F0) + c
        if s:
            sub[m] = s
        else:
            del sub[m]
    out = {}
    for key in sorted(buckets, key=lambda m: m.key):
        if buckets[key]:
            out[key] = _raw(buckets[key])
    return out


def evaluate(e, point: Mapping[Atom, object]):
    """Exact or floating evaluation; a ring homomorphism on bound atoms."""
    total = Fraction(0)
    for mono, c in as_expr(e).terms:
        v = c
        for a, k in mono.factors:
            if a not in point:
                raise MissingBindingError(f"no value bound for {a.name}")
            v = v * point[a] ** k
        total = total + v
    return total
