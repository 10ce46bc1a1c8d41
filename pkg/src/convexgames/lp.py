"""Dense exact-rational simplex (two-phase, Bland's rule).

Tall programs with free variables, which is what the least-core LPs look
like, are solved through their dual so the tableau has one row per variable
instead of one per coalition; the primal point is read back from the simplex
multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError, SizeError
from .rationals import as_rational

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_VARS = 512
MAX_ROWS = 4096


@dataclass
class LinearProgram:
    """``max``/``min`` of ``objective . x`` subject to ``rows``.

    Each row is ``(coeffs, sense, rhs)`` with sense one of ``"<="``, ``">="``,
    ``"="``. ``nonneg`` lists the variables constrained to be ``>= 0``; every
    other variable is free.
    """

    n_vars: int
    objective: list
    maximize: bool = True
    rows: list = field(default_factory=list)
    nonneg: frozenset = frozenset()

    def add_row(self, coeffs: Sequence, sense: str, rhs) -> None:
        if sense not in ("<=", ">=", "="):
            raise InputError(f"unknown row sense {sense!r}")
        if len(coeffs) != self.n_vars:
            raise InputError(f"row has {len(coeffs)} coefficients, expected {self.n_vars}")
        self.rows.append(([as_rational(a) for a in coeffs], sense, as_rational(rhs)))

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        for i in self.nonneg:
            if x[i] < 0:
                return False
        for coeffs, sense, rhs in self.rows:
            lhs = sum((a * b for a, b in zip(coeffs, x) if a), ZERO)
            if (sense == "<=" and lhs > rhs) or (sense == ">=" and lhs < rhs) or \
                    (sense == "=" and lhs != rhs):
                return False
        return True


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def lp_solve(lp: LinearProgram) -> LPResult:
    if lp.n_vars > MAX_VARS or len(lp.rows) > MAX_ROWS:
        raise SizeError(f"LP of {lp.n_vars} vars x {len(lp.rows)} rows exceeds the solver bound")
    c = [as_rational(a) for a in lp.objective]
    if len(c) != lp.n_vars:
        raise InputError("objective length does not match n_vars")
    if not lp.nonneg and len(lp.rows) > lp.n_vars:
        res = _solve_via_dual(lp, c)
        if res is not None:
            return res
    return _solve_primal(lp, c)


def _solve_primal(lp: LinearProgram, c: list[Fraction]) -> LPResult:
    # columns: one per nonneg var, two per free var, one slack per inequality
    cols: list[tuple[int, int]] = []  # (original var, sign)
    for j in range(lp.n_vars):
        cols.append((j, 1))
        if j not in lp.nonneg:
            cols.append((j, -1))
    n_struct = len(cols)
    n_slack = sum(1 for _, s, _ in lp.rows if s != "=")
    sgn = 1 if not lp.maximize else -1  # internal problem is a minimization
    cost = [sgn * c[j] * s for j, s in cols] + [ZERO] * n_slack
    M = []
    rhs = []
    k = 0
    for coeffs, sense, b in lp.rows:
        row = [coeffs[j] * s for j, s in cols] + [ZERO] * n_slack
        if sense == "<=":
            row[n_struct + k] = ONE
            k += 1
        elif sense == ">=":
            row[n_struct + k] = -ONE
            k += 1
        M.append(row)
        rhs.append(b)
    status, value, w, _ = solve_standard(cost, M, rhs)
    if status != "optimal":
        return LPResult(status)
    x = [ZERO] * lp.n_vars
    for idx, (j, s) in enumerate(cols):
        x[j] += s * w[idx]
    return LPResult("optimal", sgn * value, tuple(x))


def _solve_via_dual(lp: LinearProgram, c: list[Fraction]) -> LPResult | None:
    """Solve ``max c x, a_i x >= b_i, e x = f`` (x free) through its dual.

    Returns ``None`` when the dual is infeasible, i.e. the primal is either
    infeasible or unbounded; the caller then falls back to the primal route.
    """
    obj = c if lp.maximize else [-a for a in c]
    n = lp.n_vars
    columns: list[list[Fraction]] = []
    costs: list[Fraction] = []
    for coeffs, sense, b in lp.rows:
        if sense == ">=":
            columns.append([-a for a in coeffs])
            costs.append(-b)
        elif sense == "<=":
            columns.append(list(coeffs))
            costs.append(b)
        else:
            columns.append([-a for a in coeffs])
            costs.append(-b)
            columns.append(list(coeffs))
            costs.append(b)
    M = [[col[i] for col in columns] for i in range(n)]
    status, value, _, pi = solve_standard(costs, M, obj)
    if status == "unbounded":
        return LPResult("infeasible")
    if status == "infeasible":
        return None
    x = tuple(pi)
    primal_value = sum((a * b for a, b in zip(c, x)), ZERO)
    return LPResult("optimal", primal_value, x)


def solve_standard(c: Sequence[Fraction], M: Sequence[Sequence[Fraction]], r: Sequence[Fraction]):
    """``min c w`` s.t. ``M w = r``, ``w >= 0``.

    Returns ``(status, value, w, pi)`` where ``pi`` are simplex multipliers
    (``pi M <= c`` at optimality, ``pi r = value``).
    """
    m = len(M)
    N = len(c)
    sign = [ONE] * m
    T: list[list[Fraction]] = []
    for i in range(m):
        row = [as_rational(a) for a in M[i]]
        b = as_rational(r[i])
        if b < 0:
            sign[i] = -ONE
            row = [-a for a in row]
            b = -b
        art = [ZERO] * m
        art[i] = ONE
        T.append(row + art + [b])
    basis = [N + i for i in range(m)]
    rows_idx = list(range(m))  # original row of each tableau row

    # phase 1: minimize the sum of artificials
    d = [ZERO] * (N + m + 1)
    for j in range(N):
        d[j] = -sum((T[i][j] for i in range(m)), ZERO)
    d[-1] = -sum((T[i][-1] for i in range(m)), ZERO)
    if _run(T, d, basis, N) == "unbounded":  # cannot happen in phase 1
        raise RuntimeError("phase 1 unbounded")
    if d[-1] != 0:
        return "infeasible", None, None, None

    # drive remaining artificials out of the basis, drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= N:
            j = next((j for j in range(N) if T[i][j] != 0), None)
            if j is None:
                del T[i], basis[i], rows_idx[i]
                continue
            _pivot(T, d, basis, i, j)
        i += 1

    c = [as_rational(a) for a in c]
    d = [ZERO] * (N + m + 1)
    for j in range(N):
        d[j] = c[j] - sum((c[basis[i]] * T[i][j] for i in range(len(T)) if T[i][j]), ZERO)
    d[-1] = -sum((c[basis[i]] * T[i][-1] for i in range(len(T))), ZERO)
    if _run(T, d, basis, N) == "unbounded":
        return "unbounded", None, None, None

    w = [ZERO] * N
    for i, j in enumerate(basis):
        w[j] = T[i][-1]
    value = sum((c[j] * w[j] for j in range(N) if w[j]), ZERO)
    B = [[as_rational(M[rows_idx[i]][basis[k]]) for i in range(len(T))] for k in range(len(T))]
    y = _solve_square(B, [c[j] for j in basis])
    pi = [ZERO] * m
    for i, orig in enumerate(rows_idx):
        pi[orig] = y[i]
    return "optimal", value, w, pi


def _run(T, d, basis, n_allowed: int) -> str:
    while True:
        j = next((j for j in range(n_allowed) if d[j] < 0), None)
        if j is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[j]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, d, basis, best[1], j)


def _pivot(T, d, basis, i: int, j: int) -> None:
    prow = T[i]
    p = prow[j]
    if p != 1:
        prow = [a / p for a in prow]
        T[i] = prow
    nz = [k for k, a in enumerate(prow) if a]
    for r, row in enumerate(T):
        if r != i:
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
    f = d[j]
    if f:
        for k in nz:
            d[k] -= f * prow[k]
    basis[i] = j


def _solve_square(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination for a nonsingular square system ``A y = b``."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    return [aug[i][-1] for i in range(n)]


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank over the rationals."""
    rows = [[as_rational(a) for a in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
