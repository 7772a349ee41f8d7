"""Exact dense polynomials in one or two variables.

Coefficients are exact rationals (:data:`Rat`, backed by ``gmpy2.mpq``) or
Gaussian rationals (:class:`CRat`).  Nothing in this module rounds: every
operation returns exact results, which the sign-critical tests built on top
of it (discrimination sequences, resultant zero tests) depend on.

Univariate polynomials carry a variable tag (``"z"``, ``"y"`` or ``"λ"``)
and bivariate ones a pair of tags; binary operations refuse to mix tags or
coefficient domains.
"""

from __future__ import annotations

import math
import numbers
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from gmpy2 import mpq, mpz

from . import intpoly
from .errors import DomainError, SingularPencilError

Rat = type(mpq(0))
_MPZ = type(mpz(0))
ZERO = mpq(0)
ONE = mpq(1)

_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_FRACTION = re.compile(r"[+-]?\d+/\d+")


def rat(value) -> Rat:
    """Convert ``value`` to an exact rational.

    Strings may be decimals (``"0.0005"``, ``"-1.2e-3"``) or fractions
    (``"1/3"``) and convert exactly.  Floats convert through their shortest
    decimal representation, so ``rat(0.1) == rat("0.1")``.
    """
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, _MPZ)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite coefficient {value!r}")
        return mpq(repr(value))
    if isinstance(value, str):
        text = value.strip().replace("_", "")
        if _DECIMAL.fullmatch(text) or _FRACTION.fullmatch(text):
            try:
                return mpq(text)
            except ZeroDivisionError:
                raise DomainError(f"zero denominator in {value!r}") from None
        raise DomainError(f"not an exact decimal or fraction: {value!r}")
    if isinstance(value, numbers.Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_to_str(value) -> str:
    """Exact text form: a terminating decimal when one exists, else ``p/q``."""
    q = rat(value)
    p, d = int(q.numerator), int(q.denominator)
    if d == 1:
        return str(p)
    t, twos, fives = d, 0, 0
    while t % 2 == 0:
        t //= 2
        twos += 1
    while t % 5 == 0:
        t //= 5
        fives += 1
    if t != 1:
        return f"{p}/{d}"
    k = max(twos, fives)
    digits = str(abs(p) * 10**k // d).rjust(k + 1, "0")
    sign = "-" if p < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


class CRat:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, CRat):
            re, im = re.re, re.im + rat(im)
        elif isinstance(re, complex):
            re, im = re.real, re.imag + (im.real if isinstance(im, complex) else im)
        self.re = rat(re)
        self.im = rat(im)

    @classmethod
    def _make(cls, re: Rat, im: Rat) -> "CRat":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    def conjugate(self) -> "CRat":
        return CRat._make(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, CRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (numbers.Number, Rat, _MPZ)) and not isinstance(other, complex):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self == CRat(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __neg__(self):
        return CRat._make(-self.re, -self.im)

    def __add__(self, other):
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        return CRat._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        return CRat._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        return CRat._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, Rat):
            return CRat._make(self.re * other, self.im * other)
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return CRat._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("complex division by zero")
        a, b, c, d = self.re, self.im, o.re, o.im
        return CRat._make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = _to_crat(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return CRat._make(ONE, ZERO) / (self ** (-k))
        result, base = CRat._make(ONE, ZERO), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CRat({rat_to_str(self.re)!r}, {rat_to_str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return rat_to_str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"({rat_to_str(self.re)}{sign}{rat_to_str(abs(self.im))}i)"


I = CRat._make(ZERO, ONE)


def _to_crat(value):
    if isinstance(value, CRat):
        return value
    if isinstance(value, complex):
        return CRat(value)
    try:
        return CRat._make(rat(value), ZERO)
    except (TypeError, DomainError):
        return None


def crat(value) -> CRat:
    c = _to_crat(value)
    if c is None:
        raise TypeError(f"cannot interpret {type(value).__name__} as a complex rational")
    return c


def _fmt_coeff(c) -> str:
    return str(c) if isinstance(c, CRat) else rat_to_str(c)


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs`` is a tuple in ascending degree with no trailing zeros, so the
    zero polynomial has ``coeffs == ()`` and degree ``-1``.
    """

    __slots__ = ("coeffs", "var")
    is_complex = False
    _coerce = staticmethod(rat)

    def __init__(self, coeffs: Iterable = (), var: str = "z"):
        cs = [self._coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _new(cls, cs: list, var: str):
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.var = var
        return obj

    @classmethod
    def constant(cls, c, var: str = "z"):
        return cls([c], var)

    @classmethod
    def variable(cls, var: str = "z"):
        return cls([0, 1], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise DomainError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self._coerce(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return type(self) is type(other) and self.var == other.var and self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash((type(self).__name__, self.var, self.coeffs))

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if type(other) is not type(self):
                raise DomainError(
                    f"coefficient domains differ: {type(self).__name__} and {type(other).__name__}"
                )
            if other.var != self.var:
                raise DomainError(f"variable tags differ: {self.var!r} and {other.var!r}")
            return other.coeffs
        if isinstance(other, (BiPoly, PolyMatrix)):
            return None
        try:
            c = self._coerce(other)
        except (TypeError, DomainError):
            return None
        return (c,) if c else ()

    def __neg__(self):
        return self._new([-c for c in self.coeffs], self.var)

    def __add__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        a = self.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        out = list(self.coeffs) + [self._coerce(0)] * max(0, len(b) - len(self.coeffs))
        for i, c in enumerate(b):
            out[i] = out[i] - c
        return self._new(out, self.var)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        a = self.coeffs
        if not a or not b:
            return self._new([], self.var)
        if len(b) == 1:
            c = b[0]
            return self._new([x * c for x in a], self.var)
        out = [self._coerce(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._new(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of polynomials are not polynomials")
        result = self._new([self._coerce(1)], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(b) - 1
        inv = self._coerce(1) / b[-1]
        q = [self._coerce(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            c = r[-1] * inv
            q[shift] = c
            for i, bi in enumerate(b):
                r[shift + i] = r[shift + i] - c * bi
            r.pop()
            while r and not r[-1]:
                r.pop()
        return self._new(q, self.var), self._new(r, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise DomainError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = self._coerce(0) if isinstance(x, (Rat, CRat, int, _MPZ, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self._coerce(1) / self.coeffs[-1]
        return self._new([c * inv for c in self.coeffs], self.var)

    def with_var(self, var: str):
        return self._new(list(self.coeffs), var)

    def to_complex(self) -> "CUniPoly":
        return CUniPoly._new([CRat._make(c, ZERO) for c in self.coeffs], self.var)

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def to_integer(self) -> tuple[list, Rat]:
        """Return ``(ints, scale)`` with ``self == scale * ints`` and ``ints`` primitive."""
        if self.is_complex:
            raise DomainError("integer form needs real coefficients")
        if not self.coeffs:
            return [], ONE
        den = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator),
                     self.coeffs, mpz(1))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        prim = intpoly.primitive(ints)
        scale = mpq(ints[-1]) / (den * prim[-1])
        return prim, scale

    @classmethod
    def from_integer(cls, ints: Sequence, var: str = "z", scale=ONE):
        return cls._new([mpq(c) * scale for c in ints], var)

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(repr(_fmt_coeff(c)) for c in self.coeffs)}], var={self.var!r})"

    def __str__(self):
        return _format_terms(
            ((c, _mono(self.var, k)) for k, c in reversed(list(enumerate(self.coeffs))))
        )


class CUniPoly(UniPoly):
    """Univariate polynomial with Gaussian-rational coefficients."""

    __slots__ = ()
    is_complex = True
    _coerce = staticmethod(crat)

    def split_real_imag(self) -> tuple[UniPoly, UniPoly]:
        return (
            UniPoly._new([c.re for c in self.coeffs], self.var),
            UniPoly._new([c.im for c in self.coeffs], self.var),
        )

    def conjugate(self) -> "CUniPoly":
        return self._new([c.conjugate() for c in self.coeffs], self.var)

    @classmethod
    def from_real_imag(cls, re: UniPoly, im: UniPoly) -> "CUniPoly":
        if re.var != im.var:
            raise DomainError("variable tags differ")
        n = max(len(re.coeffs), len(im.coeffs))
        return cls._new([CRat._make(re.coeff(k), im.coeff(k)) for k in range(n)], re.var)

    def to_complex(self):
        return self


def _mono(var: str, k: int) -> str:
    return "" if k == 0 else (var if k == 1 else f"{var}^{k}")


def _format_terms(terms) -> str:
    parts = []
    for c, mono in terms:
        if not c:
            continue
        text = _fmt_coeff(c)
        if mono:
            if text == "1":
                text = mono
            elif text == "-1":
                text = "-" + mono
            else:
                text = f"{text}*{mono}"
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Dense bivariate polynomial in ``(z, y)`` with exact rational coefficients.

    ``grid[i][j]`` is the coefficient of ``z**i * y**j``.  The grid is
    rectangular with trailing all-zero rows and columns trimmed.
    """

    __slots__ = ("grid", "vars")
    is_complex = False
    _coerce = staticmethod(rat)
    _uni = UniPoly

    def __init__(self, grid: Iterable[Iterable] = (), vars: tuple[str, str] = ("z", "y")):
        rows = [[self._coerce(c) for c in row] for row in grid]
        self.grid = self._normalize(rows)
        self.vars = tuple(vars)

    @classmethod
    def _normalize(cls, rows: list[list]) -> tuple:
        while rows and not any(rows[-1]):
            rows.pop()
        if not rows:
            return ()
        width = 0
        for row in rows:
            for j in range(len(row) - 1, -1, -1):
                if row[j]:
                    width = max(width, j + 1)
                    break
        zero = cls._coerce(0)
        return tuple(tuple(row[:width]) + (zero,) * (width - len(row[:width])) for row in rows)

    @classmethod
    def _new(cls, rows: list[list], vars: tuple[str, str]):
        obj = object.__new__(cls)
        obj.grid = cls._normalize(rows)
        obj.vars = vars
        return obj

    @classmethod
    def from_dict(cls, terms: dict, vars=("z", "y")):
        if not terms:
            return cls((), vars)
        nz = max(i for i, _ in terms) + 1
        ny = max(j for _, j in terms) + 1
        zero = cls._coerce(0)
        rows = [[zero] * ny for _ in range(nz)]
        for (i, j), c in terms.items():
            rows[i][j] = rows[i][j] + cls._coerce(c)
        return cls._new(rows, tuple(vars))

    @classmethod
    def from_uni(cls, p: UniPoly, vars=("z", "y")):
        """Embed a univariate polynomial in one of the two variables."""
        if p.is_complex != cls.is_complex:
            raise DomainError("coefficient domains differ")
        if p.var == vars[0]:
            return cls._new([[c] for c in p.coeffs], tuple(vars))
        if p.var == vars[1]:
            return cls._new([list(p.coeffs)], tuple(vars))
        raise DomainError(f"variable {p.var!r} is not one of {vars}")

    @property
    def degree_z(self) -> int:
        return len(self.grid) - 1

    @property
    def degree_y(self) -> int:
        return len(self.grid[0]) - 1 if self.grid else -1

    @property
    def is_zero(self) -> bool:
        return not self.grid

    def __bool__(self) -> bool:
        return bool(self.grid)

    def coeff(self, i: int, j: int):
        if 0 <= i < len(self.grid) and 0 <= j < len(self.grid[0]):
            return self.grid[i][j]
        return self._coerce(0)

    def terms(self):
        """Iterate ``((i, j), c)`` over nonzero coefficients."""
        for i, row in enumerate(self.grid):
            for j, c in enumerate(row):
                if c:
                    yield (i, j), c

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return type(self) is type(other) and self.vars == other.vars and self.grid == other.grid
        if not self.grid:
            return other == 0
        return len(self.grid) == 1 and len(self.grid[0]) == 1 and self.grid[0][0] == other

    def __hash__(self):
        return hash((type(self).__name__, self.vars, self.grid))

    def _lift(self, other):
        if isinstance(other, BiPoly):
            if type(other) is not type(self):
                raise DomainError(
                    f"coefficient domains differ: {type(self).__name__} and {type(other).__name__}"
                )
            if other.vars != self.vars:
                raise DomainError(f"variable tags differ: {self.vars} and {other.vars}")
            return other.grid
        if isinstance(other, UniPoly):
            if other.var not in self.vars:
                raise DomainError(f"variable {other.var!r} is not one of {self.vars}")
            return type(self).from_uni(other, self.vars).grid
        try:
            c = self._coerce(other)
        except (TypeError, DomainError):
            return None
        return ((c,),) if c else ()

    def __neg__(self):
        return self._new([[-c for c in row] for row in self.grid], self.vars)

    def _combine(self, b, sign: int):
        a = self.grid
        nz = max(len(a), len(b))
        ny = max(len(a[0]) if a else 0, len(b[0]) if b else 0)
        zero = self._coerce(0)
        rows = [[zero] * ny for _ in range(nz)]
        for i, row in enumerate(a):
            for j, c in enumerate(row):
                rows[i][j] = c
        for i, row in enumerate(b):
            for j, c in enumerate(row):
                rows[i][j] = rows[i][j] + c if sign > 0 else rows[i][j] - c
        return self._new(rows, self.vars)

    def __add__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        return self._combine(b, 1)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        return self._combine(b, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        a = self.grid
        if not a or not b:
            return self._new([], self.vars)
        zero = self._coerce(0)
        rows = [[zero] * (len(a[0]) + len(b[0]) - 1) for _ in range(len(a) + len(b) - 1)]
        bterms = [(k, l, d) for k, row in enumerate(b) for l, d in enumerate(row) if d]
        for i, row in enumerate(a):
            for j, c in enumerate(row):
                if not c:
                    continue
                for k, l, d in bterms:
                    rows[i + k][j + l] = rows[i + k][j + l] + c * d
        return self._new(rows, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of polynomials are not polynomials")
        result = self._new([[self._coerce(1)]], self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, z, y):
        acc = 0
        for row in reversed(self.grid):
            inner = 0
            for c in reversed(row):
                inner = inner * y + c
            acc = acc * z + inner
        return acc

    def coeffs_in(self, var: str) -> list[UniPoly]:
        """Coefficients as a polynomial in ``var`` (ascending powers of ``var``).

        Each coefficient is a univariate polynomial in the other variable.
        With ``var="z"`` this is the ``a_i(y)`` view; with ``var="y"`` the
        ``c_i(z)`` view.
        """
        zv, yv = self.vars
        if var == zv:
            return [self._uni._new(list(row), yv) for row in self.grid]
        if var == yv:
            ny = self.degree_y + 1
            return [self._uni._new([row[j] for row in self.grid], zv) for j in range(ny)]
        raise DomainError(f"variable {var!r} is not one of {self.vars}")

    @classmethod
    def from_coeffs_in(cls, var: str, coeffs: Sequence[UniPoly], vars=("z", "y")):
        terms = {}
        for k, p in enumerate(coeffs):
            for m, c in enumerate(p.coeffs):
                key = (k, m) if var == vars[0] else (m, k)
                terms[key] = c
        return cls.from_dict(terms, vars)

    def degree_in(self, var: str) -> int:
        if var == self.vars[0]:
            return self.degree_z
        if var == self.vars[1]:
            return self.degree_y
        raise DomainError(f"variable {var!r} is not one of {self.vars}")

    def eval_y(self, y0) -> UniPoly:
        """Substitute ``y = y0`` and return a polynomial in ``z``."""
        return self._uni._new([_horner(row, y0, self._coerce(0)) for row in self.grid], self.vars[0])

    def eval_z(self, z0) -> UniPoly:
        """Substitute ``z = z0`` and return a polynomial in ``y``."""
        return self._uni._new(
            [_horner(col, z0, self._coerce(0)) for col in zip(*self.grid)] if self.grid else [],
            self.vars[1],
        )

    def diff(self, var: str):
        if var == self.vars[0]:
            return self._new([[c * i for c in row] for i, row in enumerate(self.grid)][1:], self.vars)
        if var == self.vars[1]:
            return self._new([[c * j for j, c in enumerate(row)][1:] for row in self.grid], self.vars)
        raise DomainError(f"variable {var!r} is not one of {self.vars}")

    def exact_div(self, other) -> "BiPoly":
        """Exact quotient; raises :class:`DomainError` when ``other`` does not divide."""
        b = self._lift(other)
        if b is None:
            raise TypeError("unsupported divisor")
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        zv, yv = self.vars
        divisor = self._new([list(r) for r in b], self.vars).coeffs_in(zv)
        rem = self.coeffs_in(zv)
        db = len(divisor) - 1
        quot = [self._uni._new([], yv)] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            c = rem[-1].exact_div(divisor[-1])
            quot[shift] = c
            for i, d in enumerate(divisor):
                rem[shift + i] = rem[shift + i] - c * d
            while rem and rem[-1].is_zero:
                rem.pop()
        if rem:
            raise DomainError("inexact polynomial division")
        return type(self).from_coeffs_in(zv, quot, self.vars)

    __floordiv__ = exact_div

    def to_complex(self) -> "CBiPoly":
        return CBiPoly._new([[CRat._make(c, ZERO) for c in row] for row in self.grid], self.vars)

    def max_abs_coeff(self) -> float:
        return max((abs(complex(c)) if self.is_complex else abs(float(c)) for _, c in self.terms()),
                   default=0.0)

    def __repr__(self):
        rows = [[_fmt_coeff(c) for c in row] for row in self.grid]
        return f"{type(self).__name__}({rows!r}, vars={self.vars!r})"

    def __str__(self):
        zv, yv = self.vars
        terms = []
        for i in range(len(self.grid) - 1, -1, -1):
            for j in range(len(self.grid[i]) - 1, -1, -1):
                mono = "*".join(m for m in (_mono(zv, i), _mono(yv, j)) if m)
                terms.append((self.grid[i][j], mono))
        return _format_terms(terms)


def _horner(coeffs, x, zero):
    acc = zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class CBiPoly(BiPoly):
    """Bivariate polynomial with Gaussian-rational coefficients."""

    __slots__ = ()
    is_complex = True
    _coerce = staticmethod(crat)
    _uni = CUniPoly

    def split_real_imag(self) -> tuple[BiPoly, BiPoly]:
        return (
            BiPoly._new([[c.re for c in row] for row in self.grid], self.vars),
            BiPoly._new([[c.im for c in row] for row in self.grid], self.vars),
        )

    @classmethod
    def from_real_imag(cls, re: BiPoly, im: BiPoly) -> "CBiPoly":
        if re.vars != im.vars:
            raise DomainError("variable tags differ")
        nz = max(len(re.grid), len(im.grid))
        ny = max(re.degree_y, im.degree_y) + 1
        return cls._new(
            [[CRat._make(re.coeff(i, j), im.coeff(i, j)) for j in range(ny)] for i in range(nz)],
            re.vars,
        )

    def to_complex(self):
        return self


def split_real_imag(p):
    """Split a complex polynomial into its real and imaginary parts.

    Real input is returned together with the zero polynomial.
    """
    if isinstance(p, (CUniPoly, CBiPoly)):
        return p.split_real_imag()
    if isinstance(p, UniPoly):
        return p, UniPoly((), p.var)
    if isinstance(p, BiPoly):
        return p, BiPoly((), p.vars)
    raise TypeError(f"not a polynomial: {type(p).__name__}")


# ---------------------------------------------------------------------------
# matrices with polynomial entries


class PolyMatrix:
    """Square matrix whose entries are polynomials of one common class and tag."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DomainError("a polynomial matrix must be square with n >= 1")
        proto = next((e for r in rows for e in r if isinstance(e, (UniPoly, BiPoly))), None)
        if proto is None:
            raise DomainError("at least one entry must be a polynomial")
        kind = type(proto)
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                if isinstance(e, (UniPoly, BiPoly)):
                    if type(e) is not kind:
                        raise DomainError("entries mix coefficient domains")
                    if _tags(e) != _tags(proto):
                        raise DomainError("entries mix variable tags")
                else:
                    rows[i][j] = proto * 0 + e
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def det(self):
        return det_polymat(self)


def _tags(p):
    return p.var if isinstance(p, UniPoly) else p.vars


def det_polymat(M) -> UniPoly | BiPoly:
    """Exact determinant of a matrix with polynomial entries.

    Cofactor expansion (memoised over column subsets) for ``n <= 4``;
    fraction-free Bareiss elimination over the polynomial ring otherwise.
    """
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M)
    rows = M.rows
    n = len(rows)
    if n <= 4:
        return _laplace(rows)
    return bareiss_det([list(r) for r in rows])


def _laplace(rows):
    n = len(rows)
    memo: dict = {}

    def minor(r: int, cols: tuple):
        if r == n - 1:
            return rows[r][cols[0]]
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = None
        for idx, c in enumerate(cols):
            e = rows[r][c]
            if not e:
                continue
            term = e * minor(r + 1, cols[:idx] + cols[idx + 1:])
            if idx % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = rows[r][cols[0]] * 0
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def bareiss_det(matrix: list[list], divide=None):
    """Fraction-free Bareiss determinant over an integral domain.

    Entries must support ``+ - *`` and exact division through ``divide``
    (default ``//``, correct for integers and for the polynomial classes
    here, whose floor division is exact when the divisor divides).
    """
    div = divide or (lambda a, b: a // b)
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                v = p * ai[j] - aik * ak[j]
                ai[j] = v if prev is None else div(v, prev)
        prev = p
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_rational(matrix: Sequence[Sequence]) -> Rat:
    """Exact determinant of a rational matrix (integer Bareiss after row scaling)."""
    rows = [[rat(c) for c in r] for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant of a non-square matrix")
    scale = ONE
    ints = []
    for r in rows:
        den = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), r, mpz(1))
        ints.append([c.numerator * (den // c.denominator) for c in r])
        scale *= den
    return mpq(bareiss_det(ints)) / scale


def pencil_char_poly(P: Sequence[Sequence], Q: Sequence[Sequence]) -> UniPoly:
    """Monic ``det(λP - Q) / det(P)``; its roots are the eigenvalues of ``P⁻¹Q``."""
    P = [[rat(c) for c in r] for r in P]
    Q = [[rat(c) for c in r] for r in Q]
    n = len(P)
    if n == 0 or len(Q) != n or any(len(r) != n for r in P + Q):
        raise DomainError("pencil matrices must be square and of equal size")
    detP = det_rational(P)
    if not detP:
        raise SingularPencilError("det P = 0: the pencil λP - Q is singular")
    entries = [[UniPoly([-Q[i][j], P[i][j]], "λ") for j in range(n)] for i in range(n)]
    return det_polymat(entries).monic()


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    p._lift(q)
    if p.is_complex:
        a, b = p, q
        while b:
            a, b = b, a % b
        return a.monic()
    ia, _ = p.to_integer()
    ib, _ = q.to_integer()
    g = intpoly.gcd(ia, ib)
    return UniPoly.from_integer(g, p.var).monic()


def square_free_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')`` made monic: same distinct roots, all simple."""
    if p.is_zero:
        raise DomainError("the zero polynomial has no square-free part")
    if p.degree <= 0:
        return p.monic()
    if p.is_complex:
        return p.exact_div(poly_gcd(p, p.derivative())).monic()
    ints, _ = p.to_integer()
    return UniPoly.from_integer(square_free_ints(ints), p.var).monic()


def square_free_ints(ints: list) -> list:
    """Primitive square-free part of a primitive integer polynomial."""
    g = intpoly.gcd(ints, intpoly.derivative(ints))
    if len(g) <= 1:
        return intpoly.primitive(ints)
    return intpoly.primitive(intpoly.divmod_exact(ints, g))
