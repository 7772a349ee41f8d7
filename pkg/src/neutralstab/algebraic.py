"""Exact algebraic kernel: real-root counting, resultants, root isolation, Hurwitz.

Real-root counting uses the discrimination matrix of ``f`` and ``f'``.  Its
even-order leading minors ``D_1..D_n`` are computed through signed
subresultants by default (``D_k = a0 * sRes_{n-k}(f, f')``), with direct
minor evaluation available as ``method="minors"``.  The number of distinct
real roots is ``mu - 2*nu`` on the revised sign list.

All arithmetic is exact.  Polynomials with rational coefficients are scaled
to primitive integer polynomials internally and the scale is divided out of
every returned value, so results equal those of the rational inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from . import intpoly
from .errors import DegenerateViewError, DomainError, RootCountMismatch
from .polycore import (
    ONE,
    BiPoly,
    Rat,
    UniPoly,
    bareiss_det,
    det_rational,
    rat,
    square_free_ints,
)

DEFAULT_TOL = mpq(1, 10**12)


@dataclass(frozen=True)
class DiscriminationSequence:
    """``D_1..D_n`` of a degree-``n`` polynomial."""

    values: tuple

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def signs(self) -> "SignList":
        return sign_list(self.values)


@dataclass(frozen=True)
class SignList:
    signs: tuple
    revised: tuple


@dataclass(frozen=True)
class RootCount:
    mu: int
    nu: int
    distinct_real: int
    sequence: DiscriminationSequence | None = field(default=None, compare=False)
    sign_list: SignList | None = field(default=None, compare=False)

    def __int__(self):
        return self.distinct_real


@dataclass(frozen=True)
class IsolatedRoot:
    """A distinct real root enclosed in ``[lo, hi]`` with exact rational endpoints.

    When ``lo == hi`` the root is exactly rational.
    """

    interval: tuple
    refined: float
    multiplicity_free: bool = True

    @property
    def lo(self) -> Rat:
        return self.interval[0]

    @property
    def hi(self) -> Rat:
        return self.interval[1]

    @property
    def midpoint(self) -> Rat:
        return (self.interval[0] + self.interval[1]) / 2


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _as_integer(f: UniPoly) -> tuple[list, Rat]:
    if not isinstance(f, UniPoly) or f.is_complex:
        raise DomainError("expected a polynomial with real rational coefficients")
    if f.is_zero:
        raise DomainError("the zero polynomial is not allowed here")
    return f.to_integer()


# ---------------------------------------------------------------------------
# discrimination system


def discrimination_matrix(f: UniPoly) -> list[list[Rat]]:
    """The ``2n x 2n`` matrix of interleaved shifted rows of ``f`` and ``f'``."""
    if f.is_zero or f.degree < 1:
        raise DomainError("the discrimination matrix needs degree >= 1")
    n = f.degree
    a = list(reversed(f.coeffs))
    da = [(n - i) * a[i] for i in range(n)]
    size = 2 * n
    rows = []
    for k in range(n):
        rows.append(_padded([mpq(0)] * k + a, size))
        rows.append(_padded([mpq(0)] * (k + 1) + da, size))
    return rows


def _padded(row: list, size: int) -> list:
    row = row[:size]
    return row + [mpq(0)] * (size - len(row))


def discrimination_sequence(f: UniPoly, method: str = "subresultant") -> DiscriminationSequence:
    """Leading ``2k x 2k`` minors ``D_1..D_n`` of the discrimination matrix."""
    if not isinstance(f, UniPoly) or f.is_zero or f.degree < 1:
        raise DomainError("discrimination sequence needs a polynomial of degree >= 1")
    if method == "minors":
        M = discrimination_matrix(f)
        return DiscriminationSequence(
            tuple(det_rational([r[: 2 * k] for r in M[: 2 * k]]) for k in range(1, f.degree + 1))
        )
    if method != "subresultant":
        raise DomainError(f"unknown method {method!r}")
    ints, scale = _as_integer(f)
    n = len(ints) - 1
    s = signed_subresultant_coeffs(ints, intpoly.derivative(ints))
    values = []
    for k in range(1, n + 1):
        values.append(mpq(ints[-1] * s.get(n - k, 0)) * scale ** (2 * k))
    return DiscriminationSequence(tuple(values))


def signed_subresultant_coeffs(P: list, Q: list) -> dict:
    """Principal signed subresultant coefficients ``sRes_j(P, Q)``.

    ``P`` and ``Q`` are integer polynomials (ascending) with
    ``deg P > deg Q >= 0``.  Returns ``{j: sRes_j}`` for ``0 <= j <= deg P``;
    every division in the recurrence is exact.
    """
    p, q = len(P) - 1, len(Q) - 1
    if not Q or q >= p:
        raise DomainError("signed subresultants need deg P > deg Q >= 0")
    s = {p: mpz(1)}
    t = {p: mpz(1), p - 1: Q[-1]}
    S = {p: list(P), p - 1: list(Q)}

    def eps(i):
        return -1 if (i * (i - 1) // 2) % 2 else 1

    S[q] = [eps(p - q) * t[p - 1] ** (p - q - 1) * c for c in Q]
    s[q] = eps(p - q) * t[p - 1] ** (p - q)
    t[q] = s[q]
    for l in range(q + 1, p - 1):
        S[l] = []
        s[l] = mpz(0)
    if q < p - 1:
        s[p - 1] = mpz(0)
    i, j = p + 1, p
    while S[j - 1]:
        B = S[j - 1]
        k = len(B) - 1
        A = S[i - 1]
        if k == j - 1:
            s[j - 1] = t[j - 1]
            mult = s[j - 1] ** 2
        else:
            s[j - 1] = mpz(0)
            for d in range(1, j - k):
                t[j - d - 1] = (-1) ** d * _exact(t[j - 1] * t[j - d], s[j])
            s[k] = t[k]
            S[k] = [_exact(s[k] * c, t[j - 1]) for c in B]
            for l in range(j - 2, k, -1):
                S[l] = []
                s[l] = mpz(0)
            mult = t[j - 1] * s[k]
        e = len(A) - 1 - k + 1
        den = B[-1] ** e * s[j] * t[i - 1]
        R = intpoly.trim([_exact(-mult * c, den) for c in intpoly.prem(A, B)])
        S[k - 1] = R
        t[k - 1] = R[-1] if R else mpz(0)
        i, j = j, k
        if k == 0:
            break
    for l in range(0, p + 1):
        s.setdefault(l, mpz(0))
    return s


def _exact(a, b):
    q, r = gmpy2.f_divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in the subresultant recurrence")
    return q


def sign_list(values: Sequence) -> SignList:
    signs = tuple(_sgn(v) for v in values)
    return SignList(signs, _revise(signs))


def revised_sign_list(s) -> SignList:
    """Apply the zero-run revision rule.

    Each interior run of zeros following a nonzero ``s_i`` is replaced by
    ``e_{i+r} = (-1)**((r+1)//2) * s_i``; a run reaching the end of the list
    is left as zeros.  Accepts a :class:`SignList` (revising its current
    ``revised`` entries) or a plain sequence of signs.
    """
    if isinstance(s, SignList):
        return SignList(s.signs, _revise(s.revised))
    signs = tuple(_sgn(v) for v in s)
    return SignList(signs, _revise(signs))


def _revise(signs: tuple) -> tuple:
    out = list(signs)
    n = len(out)
    i = 0
    while i < n:
        if out[i] == 0:
            i += 1
            continue
        j = i + 1
        while j < n and out[j] == 0:
            j += 1
        if j < n and j > i + 1:
            for r in range(1, j - i):
                out[i + r] = (-1) ** ((r + 1) // 2) * out[i]
        i = j
    return tuple(out)


def count_from_revised(revised: Sequence[int]) -> tuple[int, int]:
    nonzero = [e for e in revised if e]
    nu = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    return len(nonzero), nu


def count_distinct_real_roots(f: UniPoly, method: str = "subresultant") -> RootCount:
    """Number of distinct real roots of ``f`` as ``mu - 2*nu``."""
    seq = discrimination_sequence(f, method)
    sl = seq.signs
    mu, nu = count_from_revised(sl.revised)
    return RootCount(mu, nu, mu - 2 * nu, seq, sl)


# ---------------------------------------------------------------------------
# resultants


def sylvester_matrix(f: UniPoly, g: UniPoly) -> list[list[Rat]]:
    """``deg g`` shifted rows of ``f`` followed by ``deg f`` rows of ``g``,
    coefficients in descending order."""
    f._lift(g)
    if f.is_zero or g.is_zero:
        raise DomainError("Sylvester matrix of the zero polynomial")
    return _sylvester_rows(list(reversed(f.coeffs)), list(reversed(g.coeffs)), lambda: mpq(0))


def _sylvester_rows(fd: list, gd: list, zero) -> list[list]:
    l, m = len(fd) - 1, len(gd) - 1
    size = l + m
    rows = []
    for k in range(m):
        rows.append([zero()] * k + list(fd) + [zero()] * (size - k - l - 1))
    for k in range(l):
        rows.append([zero()] * k + list(gd) + [zero()] * (size - k - m - 1))
    return rows


def sylvester_resultant(f: UniPoly, g: UniPoly) -> Rat:
    """Exact Sylvester resultant; zero iff ``f`` and ``g`` share a complex root."""
    f._lift(g)
    fi, cf = _as_integer(f)
    gi, cg = _as_integer(g)
    l, m = len(fi) - 1, len(gi) - 1
    if l + m == 0:
        return ONE
    rows = _sylvester_rows(list(reversed(fi)), list(reversed(gi)), lambda: mpz(0))
    return mpq(bareiss_det(rows)) * cf**m * cg**l


def bivar_resultant(F: BiPoly, G: BiPoly, eliminate: str = "z") -> UniPoly:
    """Resultant of ``F`` and ``G`` with respect to ``eliminate``.

    Eliminating ``z`` gives ``R(F,G)(y)``; eliminating ``y`` gives
    ``R~(F,G)(z)``.  The Sylvester determinant is evaluated at integer points
    of the remaining variable and recovered by exact interpolation.
    """
    if not isinstance(F, BiPoly) or F.is_complex or G.is_complex:
        raise DomainError("bivariate resultant needs real rational coefficients")
    F._lift(G)
    if F.is_zero or G.is_zero:
        raise DomainError("resultant with the zero polynomial")
    keep = F.vars[1] if eliminate == F.vars[0] else F.vars[0]
    if eliminate not in F.vars:
        raise DomainError(f"variable {eliminate!r} is not one of {F.vars}")
    fc = F.coeffs_in(eliminate)
    gc = G.coeffs_in(eliminate)
    l, m = len(fc) - 1, len(gc) - 1
    if l == 0 and m == 0:
        raise DegenerateViewError(f"neither polynomial involves {eliminate!r}")
    fi, sf = _integer_rows(fc)
    gi, sg = _integer_rows(gc)
    bound = m * max(len(c) - 1 for c in fi) + l * max(len(c) - 1 for c in gi)
    points = _sample_points(bound + 1)
    values = []
    for x in points:
        fv = [intpoly.eval_at(c, x) for c in reversed(fi)]
        gv = [intpoly.eval_at(c, x) for c in reversed(gi)]
        rows = _sylvester_rows(fv, gv, lambda: mpz(0))
        values.append(mpz(bareiss_det(rows)) if rows else mpz(1))
    coeffs = _interpolate(points, values)
    factor = sf**m * sg**l
    return UniPoly._new([mpq(c) * factor for c in coeffs], keep)


def _integer_rows(cs: list[UniPoly]) -> tuple[list, Rat]:
    den = mpz(1)
    for p in cs:
        for c in p.coeffs:
            den = gmpy2.lcm(den, c.denominator)
    rows = [[c.numerator * (den // c.denominator) for c in p.coeffs] for p in cs]
    return rows, mpq(1, den)


def _sample_points(count: int) -> list:
    pts = [mpz(0)]
    k = 1
    while len(pts) < count:
        pts.append(mpz(k))
        if len(pts) < count:
            pts.append(mpz(-k))
        k += 1
    return pts[:count]


def _interpolate(xs: list, ys: list) -> list:
    """Ascending coefficients of the interpolating polynomial (Newton form)."""
    n = len(xs)
    dd = [mpq(v) for v in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [mpq(0)] * n
    coeffs[0] = dd[n - 1]
    size = 1
    for i in range(n - 2, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        c = xs[i]
        for k in range(size, 0, -1):
            coeffs[k] = coeffs[k - 1] - c * coeffs[k]
        coeffs[0] = -c * coeffs[0] + dd[i]
        size += 1
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("interpolated resultant is not integral")
    return [c.numerator for c in coeffs]


# ---------------------------------------------------------------------------
# real-root isolation


def _positive_primitive(a: list) -> list:
    c = intpoly.content(a)
    return [x // c for x in a] if c > 1 else list(a)


def sturm_chain(ints: list) -> list[list]:
    """Sturm chain of a square-free integer polynomial."""
    chain = [list(ints), _positive_primitive(intpoly.derivative(ints))]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = intpoly.prem(a, b)
        if not r:
            break
        e = len(a) - len(b) + 1
        if b[-1] < 0 and e % 2:
            r = [-c for c in r]
        chain.append(_positive_primitive([-c for c in r]))
    return chain


def _variations(chain: list[list], x: Rat) -> int:
    num, den = x.numerator, x.denominator
    last, count = 0, 0
    for p in chain:
        s = intpoly.sign_at(p, num, den)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _cauchy_bound(ints: list) -> Rat:
    lead = abs(ints[-1])
    top = max(abs(c) for c in ints[:-1]) if len(ints) > 1 else mpz(0)
    return mpq(1) + mpq(top, lead)


def isolate_real_roots(f: UniPoly, tol=DEFAULT_TOL, check_count: bool = True) -> list[IsolatedRoot]:
    """Disjoint intervals of width ``<= tol``, one per distinct real root, ascending.

    With ``check_count`` the number of intervals is asserted against the
    discrimination-sequence count; a disagreement raises
    :class:`RootCountMismatch`.
    """
    ints, _ = _as_integer(f)
    if len(ints) < 2:
        raise DomainError("root isolation needs degree >= 1")
    tol = rat(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    sf = square_free_ints(ints)
    roots = _isolate_ints(sf, tol)
    if check_count:
        expected = count_distinct_real_roots(f).distinct_real
        if expected != len(roots):
            raise RootCountMismatch(
                f"Sturm isolation found {len(roots)} real roots, discrimination count is {expected}"
            )
    return roots


def real_roots_of_ints(sf: list, tol=DEFAULT_TOL) -> list[IsolatedRoot]:
    """Isolate the real roots of a square-free integer polynomial."""
    return _isolate_ints(sf, rat(tol))


def _isolate_ints(sf: list, tol: Rat) -> list[IsolatedRoot]:
    if len(sf) < 2:
        return []
    chain = sturm_chain(sf)
    B = _cauchy_bound(sf)
    pending = [(-B, B, _variations(chain, -B), _variations(chain, B))]
    brackets = []
    exact = []
    while pending:
        lo, hi, vlo, vhi = pending.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            brackets.append((lo, hi))
            continue
        mid = _split_point(sf, lo, hi)
        if intpoly.sign_at(sf, mid.numerator, mid.denominator) == 0:
            exact.append(mid)
            mid = _split_point(sf, lo, hi, avoid=mid)
        vmid = _variations(chain, mid)
        pending.append((lo, mid, vlo, vmid))
        pending.append((mid, hi, vmid, vhi))
    out = [_refine(sf, lo, hi, tol) for lo, hi in brackets]
    out += [IsolatedRoot((r, r), float(r)) for r in exact]
    # an exact root found at a split point may also sit inside a counted bracket
    out = _dedupe(out)
    out.sort(key=lambda r: r.interval[0])
    return out


def _dedupe(roots: list[IsolatedRoot]) -> list[IsolatedRoot]:
    roots = sorted(roots, key=lambda r: (r.interval[0], r.interval[1]))
    kept: list[IsolatedRoot] = []
    for r in roots:
        if kept and r.interval[0] <= kept[-1].interval[1]:
            prev = kept[-1]
            if prev.interval[0] == prev.interval[1]:
                continue
            kept[-1] = r if r.interval[0] == r.interval[1] else prev
            continue
        kept.append(r)
    return kept


def _split_point(sf: list, lo: Rat, hi: Rat, avoid=None) -> Rat:
    width = hi - lo
    for k in (mpq(1, 2), mpq(3, 7), mpq(4, 7), mpq(2, 5), mpq(3, 5), mpq(5, 11), mpq(6, 11)):
        m = lo + k * width
        if m != avoid and intpoly.sign_at(sf, m.numerator, m.denominator) != 0:
            return m
    return lo + width / 2 + width / 97


def _refine(sf: list, lo: Rat, hi: Rat, tol: Rat) -> IsolatedRoot:
    slo = intpoly.sign_at(sf, lo.numerator, lo.denominator)
    shi = intpoly.sign_at(sf, hi.numerator, hi.denominator)
    if slo == 0:
        return IsolatedRoot((lo, lo), float(lo))
    if shi == 0:
        return IsolatedRoot((hi, hi), float(hi))
    if slo == shi:
        raise RootCountMismatch("isolating interval without a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = intpoly.sign_at(sf, mid.numerator, mid.denominator)
        if s == 0:
            return IsolatedRoot((mid, mid), float(mid))
        if s == slo:
            lo = mid
        else:
            hi = mid
    return IsolatedRoot((lo, hi), float((lo + hi) / 2))


def common_real_roots(f: UniPoly, g: UniPoly, tol=DEFAULT_TOL) -> list[IsolatedRoot]:
    """Distinct real roots shared by ``f`` and ``g`` (real roots of their gcd).

    If one polynomial is identically zero the roots of the other are returned.
    """
    f._lift(g)
    if f.is_zero and g.is_zero:
        raise DomainError("both polynomials are identically zero")
    if f.is_zero or g.is_zero:
        h = g if f.is_zero else f
    else:
        fi, _ = f.to_integer()
        gi, _ = g.to_integer()
        h = UniPoly.from_integer(intpoly.gcd(fi, gi), f.var)
    if h.degree < 1:
        return []
    return isolate_real_roots(h, tol)


# ---------------------------------------------------------------------------
# Hurwitz


def hurwitz_matrix(f: UniPoly) -> list[list[Rat]]:
    if f.is_zero:
        raise DomainError("Hurwitz test of the zero polynomial")
    if f.degree < 1:
        raise DomainError("Hurwitz test needs degree >= 1")
    a = list(reversed(f.coeffs))
    if a[0] < 0:
        a = [-c for c in a]
    n = f.degree

    def coef(k):
        return a[k] if 0 <= k <= n else mpq(0)

    return [[coef(2 * j - i) for j in range(1, n + 1)] for i in range(1, n + 1)]


def hurwitz_stable(f: UniPoly) -> tuple[bool, list[Rat]]:
    """All roots in the open left half-plane iff every Hurwitz minor is positive.

    Returns the verdict together with the leading principal minors.
    """
    H = hurwitz_matrix(f)
    minors = [det_rational([r[:k] for r in H[:k]]) for k in range(1, len(H) + 1)]
    return all(m > 0 for m in minors), minors
