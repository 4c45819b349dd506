"""A small exact two-phase simplex over Fractions.

Used by the certificate checker, which must not rely on the cycle
enumeration of the solvers.  Problems are tiny, so a dense tableau with
Bland's rule is fast enough and never cycles.
"""

from fractions import Fraction


class LPResult:
    __slots__ = ("status", "value", "x")

    def __init__(self, status, value=None, x=None):
        self.status = status
        self.value = value
        self.x = x

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def _pivot(T, rhs, basis, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    rhs[row] = rhs[row] / piv
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            Ti, Tr = T[i], T[row]
            T[i] = [a - f * b for a, b in zip(Ti, Tr)]
            rhs[i] -= f * rhs[row]
    basis[row] = col


def _run(T, rhs, basis, obj, allowed):
    """Maximize ``obj·y`` from a feasible basis; returns 'optimal' or 'unbounded'."""
    ncols = len(obj)
    while True:
        enter = None
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            r = obj[j] - sum(obj[basis[i]] * T[i][j] for i in range(len(T)))
            if r > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave, best = None, None
        for i in range(len(T)):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return "unbounded"
        _pivot(T, rhs, basis, leave, enter)


def maximize(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), nonneg=True):
    """Maximize ``c·x`` subject to ``A_ub x ≤ b_ub`` and ``A_eq x = b_eq``.

    Variables are non-negative unless ``nonneg`` is False, in which case
    each is split into a difference of two non-negative parts.
    Returns an :class:`LPResult` with status ``optimal``, ``infeasible``
    or ``unbounded``.
    """
    c = [Fraction(v) for v in c]
    n = len(c)
    rows = [([Fraction(v) for v in r], Fraction(b)) for r, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in r], Fraction(b)) for r, b in zip(A_eq, b_eq)]
    rows += [([-Fraction(v) for v in r], -Fraction(b)) for r, b in zip(A_eq, b_eq)]
    if not nonneg:
        c = c + [-v for v in c]
        rows = [(r + [-v for v in r], b) for r, b in rows]
    nv = len(c)
    m = len(rows)
    # columns: structural | slacks | artificials
    ncols = nv + m + m
    T, rhs, basis = [], [], []
    n_art = 0
    for i, (r, b) in enumerate(rows):
        row = r + [Fraction(0)] * (2 * m)
        row[nv + i] = Fraction(1)
        if b < 0:
            row = [-v for v in row]
            b = -b
            row[nv + m + i] = Fraction(1)
            basis.append(nv + m + i)
            n_art += 1
        else:
            basis.append(nv + i)
        T.append(row)
        rhs.append(b)
    allowed = [True] * ncols
    if n_art:
        phase1 = [Fraction(0)] * (nv + m) + [Fraction(-1)] * m
        _run(T, rhs, basis, phase1, allowed)
        if sum(rhs[i] for i in range(m) if basis[i] >= nv + m) != 0:
            return LPResult("infeasible")
        for i in range(m):
            if basis[i] >= nv + m:
                for j in range(nv + m):
                    if T[i][j] != 0 and j not in basis:
                        _pivot(T, rhs, basis, i, j)
                        break
    for j in range(nv + m, ncols):
        allowed[j] = False
    keep = [i for i in range(m) if basis[i] < nv + m]
    T = [T[i] for i in keep]
    rhs = [rhs[i] for i in keep]
    basis = [basis[i] for i in keep]
    obj = c + [Fraction(0)] * (2 * m)
    status = _run(T, rhs, basis, obj, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    y = [Fraction(0)] * nv
    for i, j in enumerate(basis):
        if j < nv:
            y[j] = rhs[i]
    x = y if nonneg else [y[k] - y[k + n] for k in range(n)]
    return LPResult("optimal", sum(ci * xi for ci, xi in zip(c[:n], x)) if nonneg
                    else sum(ci * xi for ci, xi in zip(c[:n], x)), x)


def feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars=None, nonneg=True):
    n = nvars if nvars is not None else len((list(A_ub) + list(A_eq))[0])
    return maximize([0] * n, A_ub, b_ub, A_eq, b_eq, nonneg).status == "optimal"
