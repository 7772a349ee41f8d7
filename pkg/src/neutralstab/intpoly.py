"""Kernels on dense integer polynomials.

A polynomial is a plain list of ``mpz`` coefficients in ascending degree with
no trailing zeros; the zero polynomial is ``[]``.  These routines back the
rational-coefficient classes in :mod:`neutralstab.polycore` wherever big
integer arithmetic is much cheaper than normalising fractions at every step.
"""

from __future__ import annotations

from functools import reduce

import gmpy2
from gmpy2 import mpz


def trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: list) -> int:
    return len(a) - 1


def content(a: list) -> mpz:
    return reduce(gmpy2.gcd, a, mpz(0))


def primitive(a: list) -> list:
    """Divide by the content and make the leading coefficient positive."""
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return list(a)
    return [x // c for x in a]


def prem(a: list, b: list) -> list:
    """Pseudo-remainder: ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    da = degree(a)
    if da < db:
        return list(a)
    lb = b[-1]
    r = list(a)
    for step in range(da - db + 1):
        top = len(r) - 1
        shift = top - db
        if shift < 0:
            # missing pseudo-division steps still scale by lc(b)
            factor = lb ** (da - db + 1 - step)
            return trim([factor * x for x in r])
        lead = r[top]
        r = [lb * x for x in r]
        if lead:
            for i, bi in enumerate(b):
                r[shift + i] -= lead * bi
        r.pop()
        trim(r)
    return r


def divmod_exact(a: list, b: list) -> list:
    """Quotient of ``a`` by ``b`` when ``b`` divides ``a`` over the integers."""
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    q = [mpz(0)] * max(len(a) - db, 0)
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact integer polynomial division")
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] -= c * bi
        trim(r)
    if r:
        raise ArithmeticError("inexact integer polynomial division")
    return trim(q)


def gcd(a: list, b: list) -> list:
    """Primitive greatest common divisor via the primitive remainder sequence."""
    a, b = primitive(a), primitive(b)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return a


def derivative(a: list) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


_FILTER_PREC = 128


def sign_at(a: list, num, den) -> int:
    """Sign of ``a(num/den)`` for ``den > 0``, evaluated exactly.

    A floating-point Horner pass with a rigorous rounding-error bound decides
    the sign whenever the value is clearly away from zero; otherwise the
    exact integer evaluation runs.
    """
    if not a:
        return 0
    s = _filtered_sign(a, num, den)
    if s is not None:
        return s
    return _exact_sign(a, num, den)


def _filtered_sign(a: list, num, den):
    with gmpy2.context(precision=_FILTER_PREC):
        x = gmpy2.mpfr(num) / gmpy2.mpfr(den)
        ax = abs(x)
        acc = gmpy2.mpfr(a[-1])
        mag = abs(acc)
        for c in reversed(a[:-1]):
            cf = gmpy2.mpfr(c)
            acc = acc * x + cf
            mag = mag * ax + abs(cf)
        if not (gmpy2.is_finite(acc) and gmpy2.is_finite(mag)):
            return None
        # each of the ~3 roundings per step (and the rounding of x) costs at
        # most one ulp relative to the running magnitude sum; 8x is slack
        bound = mag * (8 * (len(a) + 2)) * gmpy2.exp2(-_FILTER_PREC)
        if acc > bound:
            return 1
        if acc < -bound:
            return -1
    return None


def _exact_sign(a: list, num, den) -> int:
    num, den = mpz(num), mpz(den)
    acc = a[-1]
    dpow = mpz(1)
    for c in reversed(a[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def eval_at(a: list, x) -> mpz:
    acc = mpz(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc
