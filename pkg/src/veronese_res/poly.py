"""Sparse homogeneous polynomials over Q and F_p.

Two rings are supported: the curve ring k[x0, x1, x2] and the ambient ring
S = k[x00, x01, x02, x11, x12, x22] of P^5. A polynomial is a dict from
exponent tuples to nonzero field elements; values are never mutated after
construction.
"""
from __future__ import annotations

import enum
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[int, ...], one exponent per ring variable

DEFAULT_PRIME = 32003


class PolyError(ValueError):
    """Raised for ring/field mismatches and invalid polynomial operations."""


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --------------------------------------------------------------------------
# Coefficient fields
# --------------------------------------------------------------------------

class RationalField:
    """Exact rationals, elements are ``Fraction`` (or ``int``)."""

    name = "q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise PolyError(f"cannot coerce {value!r} into Q")

    def normalize(self, value):
        return value

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Residues modulo a prime ``p``; canonical representatives lie in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or not _is_prime(p):
            raise PolyError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, value) -> int:
        p = self.p
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        raise PolyError(f"cannot coerce {value!r} into F_{p}")

    def normalize(self, value):
        return value % self.p

    def inv(self, value):
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(value, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()
Field = Union[RationalField, PrimeField]


def _is_prime(n: int) -> bool:
    if n < 4:
        return n >= 2
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def parse_field(descriptor: str) -> Field:
    """Parse ``"q"`` or ``"fp:<p>"``."""
    descriptor = descriptor.strip().lower()
    if descriptor in ("q", "qq"):
        return QQ
    if descriptor.startswith("fp:"):
        try:
            p = int(descriptor[3:])
        except ValueError:
            raise PolyError(f"bad field descriptor {descriptor!r}") from None
        return PrimeField(p)
    raise PolyError(f"bad field descriptor {descriptor!r}")


# --------------------------------------------------------------------------
# Rings and monomials
# --------------------------------------------------------------------------

class Ring(enum.Enum):
    CURVE = ("x0", "x1", "x2")
    AMBIENT = ("x00", "x01", "x02", "x11", "x12", "x22")

    @property
    def variables(self) -> tuple:
        return self.value

    @property
    def arity(self) -> int:
        return len(self.value)


def grevlex_key(mono: Monomial):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


@lru_cache(maxsize=None)
def _graded_basis(ring: Ring, n: int) -> tuple:
    k = ring.arity
    monos = []
    for combo in combinations_with_replacement(range(k), n):
        exps = [0] * k
        for v in combo:
            exps[v] += 1
        monos.append(tuple(exps))
    monos.sort(key=grevlex_key, reverse=True)
    return tuple(monos)


def graded_basis(ring: Ring, n: int) -> list:
    """All monomials of total degree ``n``, in descending grevlex order."""
    if n < 0:
        return []
    return list(_graded_basis(ring, n))


@lru_cache(maxsize=None)
def basis_index(ring: Ring, n: int) -> dict:
    """Map monomial -> position in ``graded_basis(ring, n)``."""
    return {m: i for i, m in enumerate(_graded_basis(ring, n))} if n >= 0 else {}


def graded_dim(ring: Ring, n: int) -> int:
    if n < 0:
        return 0
    return comb(n + ring.arity - 1, ring.arity - 1)


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------

class NotHomogeneous:
    """Sentinel type returned by :meth:`Polynomial.homogeneous_degree`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_HOMOGENEOUS"


NOT_HOMOGENEOUS = NotHomogeneous()
ZERO_DEGREE = float("-inf")


class Polynomial:
    __slots__ = ("ring", "field", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | None = None, field: Field = QQ):
        self.ring = ring
        self.field = field
        clean = {}
        if terms:
            k = ring.arity
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != k or any(e < 0 for e in mono):
                    raise PolyError(f"monomial {mono} does not fit ring {ring.name}")
                c = field(c)
                if c != 0:
                    clean[mono] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, field, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, field: Field = QQ) -> "Polynomial":
        return cls._raw(ring, field, {})

    @classmethod
    def constant(cls, c, ring: Ring, field: Field = QQ) -> "Polynomial":
        return cls(ring, {(0,) * ring.arity: c}, field)

    @classmethod
    def monomial(cls, mono: Monomial, ring: Ring, field: Field = QQ, coeff=1) -> "Polynomial":
        return cls(ring, {tuple(mono): coeff}, field)

    @classmethod
    def var(cls, name: str, field: Field = QQ) -> "Polynomial":
        for ring in Ring:
            if name in ring.variables:
                exps = [0] * ring.arity
                exps[ring.variables.index(name)] = 1
                return cls._raw(ring, field, {tuple(exps): field(1)})
        raise PolyError(f"unknown variable {name}")

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def homogeneous_degree(self):
        """Degree if homogeneous, ``-inf`` for zero, else ``NOT_HOMOGENEOUS``."""
        if not self.terms:
            return ZERO_DEGREE
        degs = {sum(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return NOT_HOMOGENEOUS

    def is_homogeneous(self, n: int | None = None) -> bool:
        deg = self.homogeneous_degree()
        if deg is NOT_HOMOGENEOUS:
            return False
        return n is None or deg == ZERO_DEGREE or deg == n

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_nonzero_constant(self) -> bool:
        return bool(self.terms) and self.is_constant()

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.field(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise PolyError(f"expected Polynomial, got {type(other).__name__}")
        if other.ring is not self.ring:
            raise PolyError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
        if other.field != self.field:
            raise PolyError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def _lift_scalar(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.ring, self.field)
        return other

    def __add__(self, other):
        other = self._lift_scalar(other)
        self._check(other)
        norm = self.field.normalize
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.normalize
        return Polynomial._raw(self.ring, self.field, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial._raw(self.ring, self.field, {})
        norm = self.field.normalize
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        clean = {}
        for m, c in out.items():
            c = norm(c)
            if c:
                clean[m] = c
        return Polynomial._raw(self.ring, self.field, clean)

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return Polynomial._raw(self.ring, self.field, {})
        norm = self.field.normalize
        return Polynomial._raw(self.ring, self.field, {m: norm(v * c) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        """Multiply by ``c * x^mono`` (fast path used by the rank oracles)."""
        norm = self.field.normalize
        c = self.field(c)
        out = {}
        for m, v in self.terms.items():
            w = norm(v * c)
            if w:
                out[tuple(a + b for a, b in zip(m, mono))] = w
        return Polynomial._raw(self.ring, self.field, out)

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = Polynomial.constant(1, self.ring, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.ring, self.field)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring is other.ring and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.field, frozenset(self.terms.items())))
        return self._hash

    # -- field change / evaluation ----------------------------------------

    def change_field(self, field: Field) -> "Polynomial":
        """Map coefficients into ``field`` (Q -> F_p reduction, or F_p -> F_p identity)."""
        if field == self.field:
            return self
        if isinstance(self.field, PrimeField) and not (
            isinstance(field, PrimeField) and field.p == self.field.p
        ):
            raise PolyError(f"cannot move coefficients from {self.field!r} to {field!r}")
        return Polynomial(self.ring, self.terms, field)

    def evaluate(self, point: Iterable):
        point = [self.field(v) for v in point]
        if len(point) != self.ring.arity:
            raise PolyError("point has wrong length")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(point, m):
                if e:
                    t = t * v**e
            total += t
        return self.field.normalize(total)

    def divmod(self, divisor: "Polynomial"):
        """Division with remainder by ``divisor`` w.r.t. grevlex leading terms.

        With a single divisor this is the usual multivariate division, so
        ``remainder == 0`` iff ``divisor`` divides ``self``.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_m, lead_c = divisor.sorted_terms()[0]
        inv = self.field.inv(lead_c)
        quotient = Polynomial.zero(self.ring, self.field)
        remainder = Polynomial.zero(self.ring, self.field)
        rest = self
        while rest.terms:
            m, c = rest.sorted_terms()[0]
            if all(a >= b for a, b in zip(m, lead_m)):
                q_m = tuple(a - b for a, b in zip(m, lead_m))
                q_c = self.field.normalize(c * inv)
                quotient = quotient + Polynomial._raw(self.ring, self.field, {q_m: q_c})
                rest = rest - divisor.mul_monomial(q_m, q_c)
            else:
                lead = Polynomial._raw(self.ring, self.field, {m: c})
                remainder = remainder + lead
                rest = rest - lead
        return quotient, remainder

    # -- text --------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({self.ring.name}, {render(self)!r})"


# --------------------------------------------------------------------------
# Graded pieces
# --------------------------------------------------------------------------

def homogeneous_degree(p: Polynomial):
    return p.homogeneous_degree()


def coeff_vector(p: Polynomial, n: int) -> list:
    """Coefficients of ``p`` against ``graded_basis(p.ring, n)``."""
    if not p.is_homogeneous(n):
        raise PolyError(f"polynomial is not homogeneous of degree {n}")
    index = basis_index(p.ring, n)
    vec = [p.field(0)] * len(index)
    for m, c in p.terms.items():
        vec[index[m]] = c
    return vec


def from_coeff_vector(vec, ring: Ring, n: int, field: Field = QQ) -> Polynomial:
    basis = _graded_basis(ring, n)
    if len(vec) != len(basis):
        raise PolyError("vector length does not match the graded basis")
    return Polynomial(ring, {m: c for m, c in zip(basis, vec) if c}, field)


def ring_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PolyError(f"unknown operation {op!r}")


# --------------------------------------------------------------------------
# Text format
# --------------------------------------------------------------------------

def _format_coeff(c, field: Field) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _render_monomial(mono: Monomial, ring: Ring) -> str:
    parts = []
    for name, e in zip(ring.variables, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render(p: Polynomial) -> str:
    """Canonical text: descending grevlex, unit exponents and coefficients suppressed."""
    if not p.terms:
        return "0"
    out = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        body = _render_monomial(mono, p.ring)
        if not body:
            text = _format_coeff(mag, p.field)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_coeff(mag, p.field)}*{body}"
        if i == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring, field: Field):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.field = field

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> Polynomial:
        ring, field = self.ring, self.field
        terms: dict = {}
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            mono, coeff = self.term()
            value = field(coeff * sign)
            terms[mono] = field.normalize(terms.get(mono, 0) + value)
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            if tok[0] == "op" and tok[1] == "/":
                raise ParseError("division is not allowed here", tok[2])
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return Polynomial(ring, {m: c for m, c in terms.items() if c}, field)

    def term(self):
        exps = [0] * self.ring.arity
        coeff = Fraction(1)
        tok = self.peek()
        if tok[0] == "num":
            coeff = self.coeff()
        elif tok[0] == "var":
            self.factor(exps)
        else:
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            if self.peek()[0] == "num":
                raise ParseError("coefficient must lead the term", self.peek()[2])
            self.factor(exps)
        return tuple(exps), coeff

    def coeff(self) -> Fraction:
        num = int(self.take()[1])
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "/":
            self.take()
            den_tok = self.peek()
            if den_tok[0] != "num":
                raise ParseError("division is only allowed between integers", den_tok[2])
            den = int(self.take()[1])
            if den == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exps):
        kind, name, pos = self.take()
        if kind != "var":
            raise ParseError(f"expected a variable, found {name or 'end of input'!r}", pos)
        if name not in self.ring.variables:
            raise ParseError(f"unknown variable {name} for ring {self.ring.name}", pos)
        e = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, epos = self.take()
            if kind != "num" or int(val) < 1:
                raise ParseError("malformed exponent", epos)
            e = int(val)
        exps[self.ring.variables.index(name)] += e


def parse_poly(text: str, ring: Ring, field: Field = QQ) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring`` with coefficients in ``field``.

    >>> str(parse_poly("x0^2*x1 + 3*x1*x2^2", Ring.CURVE))
    'x0^2*x1 + 3*x1*x2^2'
    """
    return _Parser(text, ring, field).parse()


def random_homogeneous(ring: Ring, n: int, rng, field: Field = QQ, density: float = 1.0,
                       coeff_range: int = 9) -> Polynomial:
    """Random homogeneous polynomial of degree ``n``; each monomial kept with prob. ``density``."""
    terms = {}
    for m in _graded_basis(ring, n):
        if rng.random() < density:
            terms[m] = rng.randint(-coeff_range, coeff_range)
    return Polynomial(ring, terms, field)
