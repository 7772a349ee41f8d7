"""Independent reference computations used only by the tests.

None of these share code with the package: determinants come from
permutation expansion or sympy, real-root counts from a floating-point
monotone-segment search in mpmath.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import sympy as sp


def perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def perm_det(rows):
    """Leibniz expansion; entries only need ``+`` and ``*``."""
    n = len(rows)
    total = None
    for p in itertools.permutations(range(n)):
        term = rows[0][p[0]]
        for i in range(1, n):
            term = term * rows[i][p[i]]
        if perm_sign(p) < 0:
            term = -term
        total = term if total is None else total + term
    return total


def to_sympy(coeffs_ascending, x):
    return sum(sp.Rational(str(c)) * x**k for k, c in enumerate(coeffs_ascending))


def sympy_discrimination_minors(coeffs_ascending):
    """``D_1..D_n`` from the explicitly assembled matrix, via sympy determinants."""
    a = [sp.Rational(str(c)) for c in reversed(coeffs_ascending)]
    n = len(a) - 1
    da = [(n - i) * a[i] for i in range(n)]
    size = 2 * n
    M = sp.zeros(size, size)
    for k in range(n):
        for j, c in enumerate(a):
            if k + j < size:
                M[2 * k, k + j] = c
        for j, c in enumerate(da):
            if k + 1 + j < size:
                M[2 * k + 1, k + 1 + j] = c
    return [M[: 2 * k, : 2 * k].det(method="berkowitz") for k in range(1, n + 1)]


def numeric_distinct_real_roots(coeffs_ascending, dps: int = 80) -> int:
    """Count distinct real roots without a companion matrix.

    Real roots of ``p'`` (found recursively) split the line into monotone
    segments; each segment holds a root iff ``p`` changes sign across it,
    located by bisection.  A critical point where ``p`` vanishes to working
    precision is a multiple root.
    """
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(Fraction(str(c)).numerator) / Fraction(str(c)).denominator for c in coeffs_ascending]
        while cs and cs[-1] == 0:
            cs.pop()
        return len(_real_roots(cs))


def _eval(cs, x):
    acc = mpmath.mpf(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _real_roots(cs):
    deg = len(cs) - 1
    if deg < 1:
        return []
    if deg == 1:
        return [-cs[0] / cs[1]]
    bound = 1 + max(abs(c) for c in cs[:-1]) / abs(cs[-1])
    crit = _real_roots([k * cs[k] for k in range(1, len(cs))])
    scale = max(abs(c) for c in cs)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    roots = []
    knots = [-bound] + crit + [bound]
    for c in crit:
        magnitude = sum(abs(ci) * abs(c) ** i for i, ci in enumerate(cs))
        if abs(_eval(cs, c)) <= eps * max(magnitude, scale):
            roots.append(c)
    for lo, hi in zip(knots, knots[1:]):
        flo, fhi = _eval(cs, lo), _eval(cs, hi)
        if any(abs(lo - r) < eps or abs(hi - r) < eps for r in roots):
            # segment ends at a multiple root; sign test on the inner part
            lo2 = lo + (hi - lo) * eps if any(abs(lo - r) < eps for r in roots) else lo
            hi2 = hi - (hi - lo) * eps if any(abs(hi - r) < eps for r in roots) else hi
            flo, fhi = _eval(cs, lo2), _eval(cs, hi2)
            lo, hi = lo2, hi2
        if flo * fhi < 0:
            for _ in range(mpmath.mp.prec):
                mid = (lo + hi) / 2
                fm = _eval(cs, mid)
                if fm == 0:
                    break
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append((lo + hi) / 2)
    roots.sort()
    # a k-fold root is only resolved to about 10^(-dps/k); degree <= 8 here
    merge = mpmath.mpf(10) ** (-(mpmath.mp.dps // 8))
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > merge * (1 + abs(r)):
            out.append(r)
    return out


def sympy_sylvester_det(f, g, var):
    """Determinant of the Sylvester matrix built here from sympy polynomials.

    ``sympy.resultant`` is not used: with rational coefficients its sign
    does not follow the f-rows-first convention.
    """
    a = sp.Poly(f, var).all_coeffs()
    b = sp.Poly(g, var).all_coeffs()
    l, m = len(a) - 1, len(b) - 1
    M = sp.zeros(l + m, l + m)
    for i in range(m):
        for j, c in enumerate(a):
            M[i, i + j] = c
    for i in range(l):
        for j, c in enumerate(b):
            M[m + i, i + j] = c
    return sp.expand(M.det(method="berkowitz"))


def sympy_resultant(f_asc, g_asc):
    x = sp.Symbol("x")
    return sympy_sylvester_det(to_sympy(f_asc, x), to_sympy(g_asc, x), x)


def poisson_resultant(f_asc, g_asc):
    """``lc(f)^deg g * prod g(alpha)`` over the roots of ``f``, exact via sympy."""
    x = sp.Symbol("x")
    f, g = sp.Poly(to_sympy(f_asc, x), x), sp.Poly(to_sympy(g_asc, x), x)
    roots = sp.roots(f, multiple=True)
    if len(roots) != f.degree():
        return None
    prod = f.LC() ** g.degree()
    for r in roots:
        prod *= g.as_expr().subs(x, r)
    return complex(sp.N(prod, 40))


def bareiss_resultant_qy(F, G, eliminate="z"):
    """Symbolic Sylvester determinant over ``Q[y]`` (or ``Q[z]``), no sampling."""
    z, y = sp.symbols("z y")
    def expr(P):
        return sum(sp.Rational(str(c)) * z**i * y**j for (i, j), c in P.terms())
    var = z if eliminate == "z" else y
    keep = y if eliminate == "z" else z
    return sp.Poly(sympy_sylvester_det(expr(F), expr(G), var), keep)


def track_characteristic_root(sys, lam0: complex, tau0: float, tau1: float, steps: int = 20, dps: int = 30):
    """Continue a root of ``det[lam (I - sum B_k e^{-lam k tau}) - A0 - sum A_k e^{-lam k tau}]`` in ``tau``."""
    n = sys.n
    f = lambda M: mpmath.matrix([[mpmath.mpf(Fraction(str(c)).numerator) / Fraction(str(c)).denominator for c in r] for r in M])
    A0, A, B = f(sys.A0), [f(M) for M in sys.A], [f(M) for M in sys.B]

    def chi(lam, tau):
        M = lam * mpmath.eye(n) - A0
        for k in range(sys.N):
            e = mpmath.exp(-lam * (k + 1) * tau)
            M -= lam * e * B[k] + e * A[k]
        return mpmath.det(M)

    with mpmath.workdps(dps):
        lam = mpmath.mpc(lam0)
        for j in range(1, steps + 1):
            tau = tau0 + (tau1 - tau0) * j / steps
            lam = mpmath.findroot(lambda l: chi(l, tau), lam)
        return complex(lam)
