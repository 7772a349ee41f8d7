"""Delay-independent stability of linear neutral systems with commensurate delays.

The system is

    x'(t) - sum_k B_k x'(t - k tau) = A0 x(t) + sum_k A_k x(t - k tau),  k = 1..N.

With ``w_k(z) = (1 + iz)**k * (1 - iz)**(N - k)`` the bilinear substitution
``e^{-i theta} -> (1 + iz)/(1 - iz)`` turns the characteristic conditions on
the imaginary axis into polynomial ones:

* condition (i): ``d(z) = det[w_0 I - sum B_k w_k]`` has no real zero, i.e.
  ``f = Re d`` and ``g = Im d`` share no real root;
* condition (ii): ``det[lambda (I - sum B_k) - sum_{k>=0} A_k]`` is Hurwitz;
* condition (iii): ``D(z, y) = det[(iy I - A0) w_0 - iy sum B_k w_k - sum A_k w_k]``
  has no real zero ``(z, y)`` with ``y != 0``.

The system is delay-independent stable iff all three hold.  The point
``z = inf`` (``theta = pi``) is not reached by any real ``z``; it is covered
by testing the leading coefficients in ``z`` separately.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import mpmath
from gmpy2 import mpq

from . import expr
from .algebraic import (
    DEFAULT_TOL,
    IsolatedRoot,
    bivar_resultant,
    common_real_roots,
    count_distinct_real_roots,
    hurwitz_stable,
    isolate_real_roots,
    sylvester_resultant,
)
from .errors import (
    ConfigError,
    DegenerateSystemError,
    DegenerateViewError,
    DomainError,
    RootCountMismatch,
    SingularPencilError,
)
from .polycore import (
    I,
    ZERO,
    BiPoly,
    CBiPoly,
    CRat,
    CUniPoly,
    Rat,
    UniPoly,
    det_polymat,
    det_rational,
    pencil_char_poly,
    poly_gcd,
    rat,
)

TOL_RES = 1e-8
TOL_Y = 1e-9
NEWTON_DPS = 50

Matrix = tuple  # tuple of row tuples of Rat


def _matrix(m, n: int, name: str) -> Matrix:
    try:
        rows = tuple(tuple(rat(c) for c in row) for row in m)
    except (TypeError, DomainError) as exc:
        raise ConfigError(f"{name}: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ConfigError(f"{name} must be {n}x{n}")
    return rows


def _zeros(n: int) -> Matrix:
    return tuple((ZERO,) * n for _ in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(mpq(int(i == j)) for j in range(n)) for i in range(n))


def _madd(P: Matrix, Q: Matrix, c=1) -> Matrix:
    return tuple(tuple(p + c * q for p, q in zip(rp, rq)) for rp, rq in zip(P, Q))


@dataclass(frozen=True)
class NeutralSystem:
    """Matrices ``A0``, ``A = (A_1..A_N)`` and ``B = (B_1..B_N)`` of size ``n``.

    Entries are exact rationals.  ``det(I - sum B_k) != 0`` is enforced.
    """

    n: int
    N: int
    A0: Matrix
    A: tuple
    B: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n, N = self.n, self.N
        if not isinstance(n, int) or n < 1:
            raise ConfigError("n must be a positive integer")
        if not isinstance(N, int) or N < 1:
            raise ConfigError("N must be a positive integer")
        if len(self.A) != N or len(self.B) != N:
            raise ConfigError(f"expected {N} delayed matrices in A and in B")
        object.__setattr__(self, "A0", _matrix(self.A0, n, "A0"))
        object.__setattr__(self, "A", tuple(_matrix(m, n, f"A{k + 1}") for k, m in enumerate(self.A)))
        object.__setattr__(self, "B", tuple(_matrix(m, n, f"B{k + 1}") for k, m in enumerate(self.B)))
        if not det_rational(self.neutral_matrix()):
            raise SingularPencilError("det(I - sum B_k) = 0")

    @classmethod
    def create(cls, A0, A=(), B=(), N: int | None = None, label: str | None = None):
        """Build a system, padding missing delayed matrices with zeros."""
        n = len(A0)
        N = N if N is not None else max(len(A), len(B), 1)
        if len(A) > N or len(B) > N:
            raise ConfigError(f"more delayed matrices than N = {N}")
        A = list(A) + [_zeros(n)] * (N - len(A))
        B = list(B) + [_zeros(n)] * (N - len(B))
        return cls(n, N, A0, tuple(A), tuple(B), label)

    def neutral_matrix(self) -> Matrix:
        """``I - sum B_k``."""
        M = _identity(self.n)
        for Bk in self.B:
            M = _madd(M, Bk, -1)
        return M

    def state_sum(self) -> Matrix:
        """``A0 + sum A_k``."""
        M = self.A0
        for Ak in self.A:
            M = _madd(M, Ak)
        return M

    def replace(self, **changes) -> "NeutralSystem":
        data = dict(n=self.n, N=self.N, A0=self.A0, A=self.A, B=self.B, label=self.label)
        data.update(changes)
        return NeutralSystem(**data)


# ---------------------------------------------------------------------------
# polynomial constructions


def _weights(N: int) -> list[CUniPoly]:
    p = CUniPoly([1, I], "z")
    m = CUniPoly([1, -I], "z")
    return [p**k * m ** (N - k) for k in range(N + 1)]


def condition_i_poly(sys: NeutralSystem) -> CUniPoly:
    """``d(z) = det[(1 - iz)^N I - sum B_k (1 + iz)^k (1 - iz)^(N - k)]``."""
    w = _weights(sys.N)
    n = sys.n
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            e = w[0] if r == c else CUniPoly((), "z")
            for k, Bk in enumerate(sys.B, start=1):
                if Bk[r][c]:
                    e = e - w[k] * Bk[r][c]
            row.append(e)
        rows.append(row)
    return det_polymat(rows)


def build_condition_i(sys: NeutralSystem) -> tuple[UniPoly, UniPoly]:
    """``(f, g) = (Re d, Im d)``."""
    return condition_i_poly(sys).split_real_imag()


def condition_iii_poly(sys: NeutralSystem) -> CBiPoly:
    """``D(z, y)`` as a polynomial in ``(z, y)`` with Gaussian-rational coefficients."""
    w = [CBiPoly.from_uni(p) for p in _weights(sys.N)]
    iy = CBiPoly.from_dict({(0, 1): I})
    n = sys.n
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            e = (iy - sys.A0[r][c]) * w[0] if r == c else w[0] * (-sys.A0[r][c])
            for k in range(1, sys.N + 1):
                b = sys.B[k - 1][r][c]
                a = sys.A[k - 1][r][c]
                if b or a:
                    e = e - (iy * b + a) * w[k]
            row.append(e)
        rows.append(row)
    return det_polymat(rows)


def build_condition_iii(sys: NeutralSystem) -> tuple[BiPoly, BiPoly]:
    """``(F, G) = (Re D, Im D)``."""
    return condition_iii_poly(sys).split_real_imag()


def pole_poly(sys: NeutralSystem) -> CUniPoly:
    """``det[iy (I - sum (-1)^k B_k) - A0 - sum (-1)^k A_k]``.

    Up to a unit this is the leading ``z`` coefficient of ``D``; its real
    zeros ``y != 0`` are imaginary-axis roots with ``e^{-i theta} = -1``.
    """
    n = sys.n
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            b = mpq(int(r == c))
            a = sys.A0[r][c]
            for k in range(1, sys.N + 1):
                sgn = -1 if k % 2 else 1
                b -= sgn * sys.B[k - 1][r][c]
                a += sgn * sys.A[k - 1][r][c]
            row.append(CUniPoly([CRat._make(-a, ZERO), CRat._make(ZERO, b)], "y"))
        rows.append(row)
    return det_polymat(rows)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ConditionIReport:
    f: UniPoly
    g: UniPoly
    resultant: Rat
    common_real_roots: tuple
    pole_det: Rat
    passed: bool


@dataclass(frozen=True)
class ConditionIIReport:
    char_poly: UniPoly
    hurwitz_minors: tuple
    passed: bool


@dataclass(frozen=True)
class ConditionIIIReport:
    F: BiPoly
    G: BiPoly
    res_y: UniPoly | None
    res_z: UniPoly | None
    witnesses: tuple
    pole_witnesses: tuple
    common_component: bool
    passed: bool
    y_roots: tuple = ()
    z_roots: tuple = ()


@dataclass(frozen=True)
class StabilityVerdict:
    condition_reports: tuple
    delay_independent_stable: bool
    delay_bound_T: float | None
    bound_applicable: bool
    status: str

    @property
    def failing(self) -> tuple:
        return tuple(name for name, r in zip(("i", "ii", "iii"), self.condition_reports) if not r.passed)


# ---------------------------------------------------------------------------
# condition checks


def check_condition_i(sys: NeutralSystem, tol_root=DEFAULT_TOL) -> ConditionIReport:
    f, g = build_condition_i(sys)
    if f.is_zero and g.is_zero:
        raise DegenerateSystemError("d(z) vanishes identically")
    res = sylvester_resultant(f, g) if not (f.is_zero or g.is_zero) else ZERO
    roots: tuple = ()
    if not res:
        roots = tuple(r.refined for r in common_real_roots(f, g, tol_root))
    alt = _identity(sys.n)
    for k, Bk in enumerate(sys.B, start=1):
        alt = _madd(alt, Bk, 1 if k % 2 else -1)
    pole = det_rational(alt)
    return ConditionIReport(f, g, res, roots, pole, not roots and bool(pole))


def check_condition_ii(sys: NeutralSystem) -> ConditionIIReport:
    char = pencil_char_poly(sys.neutral_matrix(), sys.state_sum())
    ok, minors = hurwitz_stable(char)
    return ConditionIIReport(char, tuple(minors), ok)


def check_condition_iii(
    sys: NeutralSystem,
    tol_res: float = TOL_RES,
    tol_root=DEFAULT_TOL,
    tol_y: float = TOL_Y,
) -> ConditionIIIReport:
    F, G = build_condition_iii(sys)
    if F.is_zero and G.is_zero:
        raise DegenerateSystemError("D(z, y) vanishes identically")
    poles = tuple(_pole_witnesses(sys, tol_root, tol_y))
    if F.is_zero or G.is_zero:
        return ConditionIIIReport(F, G, None, None, (), poles, True, False)
    try:
        res_y = bivar_resultant(F, G, "z")
        res_z = bivar_resultant(F, G, "y")
    except DegenerateViewError:
        return _degenerate_view(sys, F, G, poles, tol_res, tol_root, tol_y)
    if res_y.is_zero or res_z.is_zero:
        return ConditionIIIReport(F, G, res_y, res_z, (), poles, True, False)

    ys = _nonzero_real_roots(res_y, tol_root, tol_y)
    zs: list[float] = []
    witnesses = []
    if ys:
        zs = [r.refined for r in isolate_real_roots(res_z, tol_root)]
        verifier = _Verifier(F, G, tol_res, tol_y)
        for z0 in zs:
            for y0 in ys:
                w = verifier.polish(z0, y0)
                if w is not None:
                    witnesses.append(w)
    witnesses = _dedupe_points(witnesses)
    passed = not witnesses and not poles
    return ConditionIIIReport(F, G, res_y, res_z, tuple(witnesses), poles, False, passed,
                              tuple(ys), tuple(zs))


def _nonzero_real_roots(p: UniPoly, tol_root, tol_y: float) -> list[float]:
    """Real roots of ``p`` with ``|y| > tol_y`` (the factor ``y^k`` is removed exactly)."""
    k = 0
    while k < len(p.coeffs) and not p.coeffs[k]:
        k += 1
    q = UniPoly(p.coeffs[k:], p.var)
    if q.degree < 1:
        return []
    expected = count_distinct_real_roots(q).distinct_real
    if expected == 0:
        return []
    roots = isolate_real_roots(q, tol_root, check_count=False)
    if len(roots) != expected:
        raise RootCountMismatch(
            f"Sturm isolation found {len(roots)} real roots, discrimination count is {expected}"
        )
    return [r.refined for r in roots if abs(r.refined) > tol_y]


def _pole_witnesses(sys: NeutralSystem, tol_root, tol_y: float) -> list[float]:
    P = pole_poly(sys)
    re, im = P.split_real_imag()
    if re.is_zero and im.is_zero:
        # every y: reported by condition (i) through the vanishing pole determinant
        return []
    h = re if im.is_zero else im if re.is_zero else poly_gcd(re, im)
    if h.degree < 1:
        return []
    return _nonzero_real_roots(h, tol_root, tol_y)


def _degenerate_view(sys, F, G, poles, tol_res, tol_root, tol_y) -> ConditionIIIReport:
    # neither polynomial involves one of the variables: reduce to a univariate gcd
    if F.degree_z == 0 and G.degree_z == 0:
        f, g = F.eval_z(0), G.eval_z(0)
        ys = [v for v in (r.refined for r in common_real_roots(f, g, tol_root)) if abs(v) > tol_y]
        witnesses = tuple((0.0, v) for v in ys)
        return ConditionIIIReport(F, G, None, None, witnesses, poles, False,
                                  not witnesses and not poles, tuple(ys), ())
    f, g = F.eval_y(0), G.eval_y(0)
    zs = [r.refined for r in common_real_roots(f, g, tol_root)]
    # every nonzero y pairs with such a z: a whole line of common zeros
    return ConditionIIIReport(F, G, None, None, (), poles, bool(zs), not zs and not poles, (), tuple(zs))


class _Verifier:
    """Newton polish of candidate pairs followed by a scaled residual test."""

    def __init__(self, F: BiPoly, G: BiPoly, tol_res: float, tol_y: float):
        self.tol_res = tol_res
        self.tol_y = tol_y
        with mpmath.workdps(NEWTON_DPS):
            self.F = _mp_grid(F)
            self.G = _mp_grid(G)
            self.Fz, self.Fy = _mp_grid(F.diff("z")), _mp_grid(F.diff("y"))
            self.Gz, self.Gy = _mp_grid(G.diff("z")), _mp_grid(G.diff("y"))
        self.degs = [(F.degree_z, F.degree_y, F.max_abs_coeff()), (G.degree_z, G.degree_y, G.max_abs_coeff())]
        self.float_grids = [[[float(c) for c in row] for row in P.grid] for P in (F, G)]

    def _scale(self, k: int, z: float, y: float) -> float:
        dz, dy, cmax = self.degs[k]
        return cmax * max(1.0, abs(z)) ** dz * max(1.0, abs(y)) ** dy

    def polish(self, z0: float, y0: float):
        # cheap screen: a pair of unrelated resultant roots is nowhere near a zero
        for k, grid in enumerate(self.float_grids):
            if abs(_float_eval(grid, z0, y0)) > 1e-4 * self._scale(k, z0, y0):
                return None
        with mpmath.workdps(NEWTON_DPS):
            z, y = mpmath.mpf(z0), mpmath.mpf(y0)
            for _ in range(60):
                f, g = _mp_eval(self.F, z, y), _mp_eval(self.G, z, y)
                a, b = _mp_eval(self.Fz, z, y), _mp_eval(self.Fy, z, y)
                c, d = _mp_eval(self.Gz, z, y), _mp_eval(self.Gy, z, y)
                det = a * d - b * c
                if not det:
                    break
                dz = (d * f - b * g) / det
                dy = (a * g - c * f) / det
                z, y = z - dz, y - dy
                if abs(dz) + abs(dy) <= mpmath.mpf(10) ** (-NEWTON_DPS + 10) * (1 + abs(z) + abs(y)):
                    break
            zf, yf = float(z), float(y)
            if not (math.isfinite(zf) and math.isfinite(yf)):
                return None
            if abs(zf - z0) > 1e-6 * (1 + abs(z0)) or abs(yf - y0) > 1e-6 * (1 + abs(y0)):
                return None
            if abs(yf) <= self.tol_y:
                return None
            for k, grid in enumerate((self.F, self.G)):
                if abs(_mp_eval(grid, z, y)) > self.tol_res * self._scale(k, zf, yf):
                    return None
            return (zf, yf)


def _float_eval(grid, z: float, y: float) -> float:
    acc = 0.0
    for row in reversed(grid):
        inner = 0.0
        for c in reversed(row):
            inner = inner * y + c
        acc = acc * z + inner
    return acc


def _mp_grid(P: BiPoly) -> list[list]:
    return [[mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in row] for row in P.grid]


def _mp_eval(grid, z, y):
    acc = mpmath.mpf(0)
    for row in reversed(grid):
        inner = mpmath.mpf(0)
        for c in reversed(row):
            inner = inner * y + c
        acc = acc * z + inner
    return acc


def _dedupe_points(points: list) -> list:
    out = []
    for p in sorted(points):
        if out and abs(p[0] - out[-1][0]) <= 1e-9 * (1 + abs(p[0])) and abs(p[1] - out[-1][1]) <= 1e-9 * (1 + abs(p[1])):
            continue
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# verdict and delay bound


def delay_bound(witnesses: Sequence, pole_witnesses: Sequence = ()) -> float:
    """Smallest positive ``tau`` with ``-y tau = theta (mod 2 pi)``, ``theta = 2 atan z``.

    ``pole_witnesses`` are ``y`` values at ``theta = pi``.
    """
    pairs = [(2.0 * math.atan(z), y) for z, y in witnesses]
    pairs += [(math.pi, y) for y in pole_witnesses]
    if not pairs:
        raise DomainError("delay bound needs at least one witness")
    best = math.inf
    for theta, y in pairs:
        if not y:
            raise DomainError("witness with y = 0")
        period = 2.0 * math.pi / abs(y)
        tau = (-theta / y) % period
        if tau <= 1e-15 * period:
            tau = period
        best = min(best, tau)
    return best


def analyze(
    sys: NeutralSystem,
    tol_res: float = TOL_RES,
    tol_root=DEFAULT_TOL,
    tol_y: float = TOL_Y,
) -> StabilityVerdict:
    r1 = check_condition_i(sys, tol_root)
    r2 = check_condition_ii(sys)
    r3 = check_condition_iii(sys, tol_res, tol_root, tol_y)
    stable = r1.passed and r2.passed and r3.passed
    applicable = r1.passed and r2.passed and not r3.passed
    T = None
    if applicable and (r3.witnesses or r3.pole_witnesses):
        T = delay_bound(r3.witnesses, r3.pole_witnesses)
    if stable:
        status = "stable"
    elif r3.passed and (r2.passed or all(m >= 0 for m in r2.hurwitz_minors)):
        # any failure left is marginal: a unit-circle root of the difference
        # operator, or a characteristic root on the imaginary axis at tau = 0
        status = "boundary"
    else:
        status = "unstable"
    return StabilityVerdict((r1, r2, r3), stable, T, applicable, status)


# ---------------------------------------------------------------------------
# parametrised systems and sweeps


def _entry_template(m, n: int, name: str) -> tuple:
    if len(m) != n or any(len(r) != n for r in m):
        raise ConfigError(f"{name} must be {n}x{n}")
    out = []
    for row in m:
        cells = []
        for c in row:
            if isinstance(c, str):
                try:
                    cells.append(rat(c))
                except DomainError:
                    expr.parse(c)
                    cells.append(c.strip())
            else:
                try:
                    cells.append(rat(c))
                except (TypeError, DomainError) as exc:
                    raise ConfigError(f"{name}: {exc}") from None
        out.append(tuple(cells))
    return tuple(out)


@dataclass(frozen=True)
class SystemTemplate:
    """A system whose matrix entries may be expressions in named parameters.

    Sweep paths are either a parameter name or a matrix entry written
    ``"A0[i,j]"``, ``"A2[i,j]"`` or ``"B1[i,j]"`` (0-based indices).
    """

    n: int
    N: int
    A0: tuple
    A: tuple
    B: tuple
    params: Mapping = field(default_factory=dict)
    label: str | None = None

    def __post_init__(self):
        n, N = self.n, self.N
        if len(self.A) > N or len(self.B) > N:
            raise ConfigError(f"more delayed matrices than N = {N}")
        z = [["0"] * n for _ in range(n)]
        object.__setattr__(self, "A0", _entry_template(self.A0, n, "A0"))
        object.__setattr__(
            self, "A", tuple(_entry_template(m, n, f"A{k + 1}") for k, m in enumerate(list(self.A) + [z] * (N - len(self.A))))
        )
        object.__setattr__(
            self, "B", tuple(_entry_template(m, n, f"B{k + 1}") for k, m in enumerate(list(self.B) + [z] * (N - len(self.B))))
        )
        object.__setattr__(self, "params", {k: rat(v) for k, v in dict(self.params).items()})
        used = set()
        for M in self.matrices().values():
            for row in M:
                for c in row:
                    if isinstance(c, str):
                        used |= expr.names(c)
        missing = used - set(self.params)
        if missing:
            raise ConfigError(f"undeclared parameters: {sorted(missing)}")

    def matrices(self) -> dict:
        out = {"A0": self.A0}
        for k, m in enumerate(self.A, start=1):
            out[f"A{k}"] = m
        for k, m in enumerate(self.B, start=1):
            out[f"B{k}"] = m
        return out

    def instantiate(self, **values) -> NeutralSystem:
        env = dict(self.params)
        for k, v in values.items():
            if k not in env:
                raise ConfigError(f"unknown parameter {k!r}")
            env[k] = rat(v)

        def concrete(M):
            return tuple(tuple(expr.evaluate(c, env) if isinstance(c, str) else c for c in row) for row in M)

        return NeutralSystem(self.n, self.N, concrete(self.A0), tuple(concrete(m) for m in self.A),
                             tuple(concrete(m) for m in self.B), self.label)

    def with_entry(self, path: str, value) -> "SystemTemplate":
        name, i, j = parse_entry_path(path, self)
        mats = self.matrices()
        M = [list(r) for r in mats[name]]
        M[i][j] = rat(value)
        mats[name] = tuple(tuple(r) for r in M)
        return SystemTemplate(
            self.n, self.N, mats["A0"],
            tuple(mats[f"A{k}"] for k in range(1, self.N + 1)),
            tuple(mats[f"B{k}"] for k in range(1, self.N + 1)),
            self.params, self.label,
        )

    @classmethod
    def from_system(cls, sys: NeutralSystem) -> "SystemTemplate":
        return cls(sys.n, sys.N, sys.A0, sys.A, sys.B, {}, sys.label)


def parse_entry_path(path: str, tpl: SystemTemplate) -> tuple[str, int, int]:
    m = re.fullmatch(r"\s*(A0|A\d+|B\d+)\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*", path)
    if not m:
        raise ConfigError(f"invalid parameter path {path!r}")
    name, i, j = m.group(1), int(m.group(2)), int(m.group(3))
    if name not in tpl.matrices():
        raise ConfigError(f"no matrix {name!r} in a system with N = {tpl.N}")
    if not (0 <= i < tpl.n and 0 <= j < tpl.n):
        raise ConfigError(f"index out of range in {path!r}")
    return name, i, j


def resolve_param(tpl: SystemTemplate, path: str):
    """Return a function mapping a parameter value to a :class:`NeutralSystem`."""
    if path in tpl.params:
        return _ParamSetter(tpl, path, None)
    parse_entry_path(path, tpl)
    return _ParamSetter(tpl, None, path)


@dataclass(frozen=True)
class _ParamSetter:
    tpl: SystemTemplate
    name: str | None
    entry: str | None

    def __call__(self, value) -> NeutralSystem:
        if self.name is not None:
            return self.tpl.instantiate(**{self.name: value})
        return self.tpl.with_entry(self.entry, value).instantiate()


@dataclass(frozen=True)
class SweepPoint:
    value: Rat
    verdict: StabilityVerdict | None
    status: str
    error: str | None = None

    @property
    def stable(self) -> bool:
        return self.status == "stable"


@dataclass(frozen=True)
class Transition:
    left: Rat
    right: Rat
    estimate: float
    stable_side: str  # "left" or "right"


@dataclass(frozen=True)
class SweepResult:
    param: str
    points: tuple
    transitions: tuple
    regions: tuple  # stable intervals (lo, hi) as floats

    @property
    def endpoints(self) -> list[float]:
        return [t.estimate for t in self.transitions]


def _evaluate(setter, value, opts) -> SweepPoint:
    try:
        sys = setter(value)
    except SingularPencilError as exc:
        return SweepPoint(value, None, "singular", str(exc))
    v = analyze(sys, **opts)
    return SweepPoint(value, v, v.status)


def _eval_star(args):
    return _evaluate(*args)


def sweep(
    tpl: SystemTemplate | NeutralSystem,
    param_path: str,
    range_: tuple,
    steps: int,
    endpoint_tol=mpq(1, 10**4),
    workers: int = 1,
    **opts,
) -> SweepResult:
    """Analyze on an exact grid and bisect between neighbours whose stability differs."""
    if isinstance(tpl, NeutralSystem):
        tpl = SystemTemplate.from_system(tpl)
    lo, hi = rat(range_[0]), rat(range_[1])
    if hi < lo:
        raise ConfigError("range must satisfy lo <= hi")
    if lo == hi:
        steps = 1
    elif steps < 2:
        raise ConfigError("steps must be at least 2")
    setter = resolve_param(tpl, param_path)
    grid = [lo] if steps == 1 else [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_eval_star, [(setter, v, opts) for v in grid]))
    else:
        points = [_evaluate(setter, v, opts) for v in grid]
    tol = rat(endpoint_tol)
    transitions = []
    for a, b in zip(points, points[1:]):
        if a.stable == b.stable:
            continue
        left, right = a.value, b.value
        left_stable = a.stable
        while right - left > tol:
            mid = (left + right) / 2
            if _evaluate(setter, mid, opts).stable == left_stable:
                left = mid
            else:
                right = mid
        transitions.append(Transition(left, right, float((left + right) / 2), "left" if left_stable else "right"))
    regions = []
    start = float(lo) if points[0].stable else None
    for t in transitions:
        if t.stable_side == "right":
            start = t.estimate
        elif start is not None:
            regions.append((start, t.estimate))
            start = None
    if start is not None:
        regions.append((start, float(hi)))
    return SweepResult(param_path, tuple(points), tuple(transitions), tuple(regions))


__all__ = [
    "NeutralSystem",
    "SystemTemplate",
    "ConditionIReport",
    "ConditionIIReport",
    "ConditionIIIReport",
    "StabilityVerdict",
    "SweepPoint",
    "SweepResult",
    "Transition",
    "build_condition_i",
    "build_condition_iii",
    "condition_i_poly",
    "condition_iii_poly",
    "pole_poly",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "analyze",
    "delay_bound",
    "sweep",
    "resolve_param",
    "IsolatedRoot",
]
