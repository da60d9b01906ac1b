"""Efficiency oracles for the primal problem.

The central device is a domination program: starting from a target image
value, push as much cone mass as possible onto the slack between the
target and the image of a feasible point. Its optimum is zero exactly
when nothing feasible sits strictly below the target, and that decides
efficiency without ever enumerating the image set. Deciding by LP rather
than by pairwise image comparison matters: a dominating point need not
be a vertex of the feasible set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cone import generator_matrix
from .exact import QMatrix, QVector, solve_linear_system
from .lp import (
    GeneralProgram,
    GenOptimal,
    GenRow,
    LinearProgram,
    Optimal,
    Unbounded,
    solve_feasibility,
    solve_general,
    solve_lp,
)
from .model import VlpProblem, primal_feasible

_ZERO = Fraction(0)
_ONE = Fraction(1)


class VertexLimitError(RuntimeError):
    """Raised when basis enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class EfficiencyCertificate:
    kind: str  # "efficient-with-scalarization" | "dominated" | "unbounded-domination"
    lam: QVector | None = None        # scalarizing weights, products >= 1 on generators
    eta: QVector | None = None        # equality multipliers of the scalar program
    dominator: QVector | None = None  # feasible point strictly below the target


def _domination_lp(problem: VlpProblem, target: QVector) -> LinearProgram:
    """max sum(mu) over {x >= 0, mu >= 0 : Ax = b, Lx + G mu = target}, as a min LP."""
    n, m, k = problem.n, problem.m, problem.k
    G = generator_matrix(problem.cone)
    g = G.cols
    width = n + g
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        rows.append([problem.A.at(i, j) for j in range(n)] + [_ZERO] * g)
        rhs.append(problem.b[i])
    for i in range(k):
        rows.append([problem.L.at(i, j) for j in range(n)] + [G.at(i, t) for t in range(g)])
        rhs.append(target[i])
    c = [_ZERO] * n + [-_ONE] * g
    return LinearProgram(
        QVector(tuple(c)),
        QMatrix(len(rows), width, tuple(v for r in rows for v in r)),
        QVector(tuple(rhs)),
    )


def is_efficient(problem: VlpProblem, xbar: QVector) -> tuple[bool, EfficiencyCertificate | None]:
    """Decide efficiency of a feasible point; a negative answer carries a dominator.

    Pointedness of the cone makes the test sound: a nonzero nonnegative
    combination of the generators is never the zero vector, so any
    positive cone mass witnesses strict domination.
    """
    if not primal_feasible(problem, xbar):
        raise ValueError("point is not feasible for the primal problem")
    out = solve_lp(_domination_lp(problem, problem.L @ xbar))
    n = problem.n
    if isinstance(out, Optimal):
        if out.value == 0:
            return True, None
        dominator = QVector(out.x.entries[:n])
        return False, EfficiencyCertificate("dominated", dominator=dominator)
    assert isinstance(out, Unbounded), "domination program is feasible at (xbar, 0)"
    moved = QVector(tuple(a + b for a, b in zip(out.x0.entries, out.ray.entries)))
    dominator = QVector(moved.entries[:n])
    return False, EfficiencyCertificate("unbounded-domination", dominator=dominator)


def proper_efficiency_certificate(problem: VlpProblem, xbar: QVector) -> EfficiencyCertificate | None:
    """Scalarizing weights under which xbar solves the weighted scalar program.

    Solves for (lam, eta):  lam.g >= 1 on every generator,
    L^T lam + A^T eta >= 0, and lam.(L xbar) + b.eta = 0. By scalar LP
    duality that system is feasible exactly when xbar minimizes
    lam.(L x) over the feasible set for some such lam.
    """
    if not primal_feasible(problem, xbar):
        raise ValueError("point is not feasible for the primal problem")
    n, m, k = problem.n, problem.m, problem.k
    width = k + m  # variables (lam, eta), all free
    image = problem.L @ xbar
    ge_rows: list[tuple[QVector, Fraction]] = []
    for g in problem.cone.generators:
        ge_rows.append((QVector(tuple(g.entries) + (_ZERO,) * m), _ONE))
    for j in range(n):
        coeffs = tuple(problem.L.at(i, j) for i in range(k)) + tuple(problem.A.at(i, j) for i in range(m))
        ge_rows.append((QVector(coeffs), _ZERO))
    eq = QMatrix(1, width, tuple(image.entries) + tuple(problem.b.entries))
    result = solve_feasibility(eq, QVector((_ZERO,)), ge_rows, free_vars=True)
    if result.point is None:
        return None
    lam = QVector(result.point.entries[:k])
    eta = QVector(result.point.entries[k:])
    return EfficiencyCertificate("efficient-with-scalarization", lam=lam, eta=eta)


def verify_scalarization_certificate(
    problem: VlpProblem, xbar: QVector, cert: EfficiencyCertificate
) -> bool:
    if cert.kind != "efficient-with-scalarization" or cert.lam is None or cert.eta is None:
        return False
    lam, eta = cert.lam, cert.eta
    if any(lam.dot(g) < 1 for g in problem.cone.generators):
        return False
    reduced = (problem.L.T @ lam) + (problem.A.T @ eta)
    if not reduced.is_nonneg():
        return False
    return lam.dot(problem.L @ xbar) + problem.b.dot(eta) == 0


def enumerate_vertices(problem: VlpProblem, limit: int = 100000) -> list[QVector]:
    """All basic feasible solutions of {x >= 0 : Ax = b}, deduplicated and sorted.

    The feasible set contains no lines, so it is empty exactly when this
    list is empty.
    """
    A, b, n = problem.A, problem.b, problem.n
    r = A.rank()
    if math.comb(n, r) > limit:
        raise VertexLimitError(
            f"basis enumeration needs {math.comb(n, r)} subsets (limit {limit}); shrink the instance"
        )
    if r == 0:
        return [QVector.zeros(n)] if b.is_zero() else []
    seen: set[tuple] = set()
    out: list[QVector] = []
    for cols in itertools.combinations(range(n), r):
        sub = QMatrix(A.rows, r, tuple(A.at(i, j) for i in range(A.rows) for j in cols))
        sol = solve_linear_system(sub, b)
        if sol is None or sol.nullspace:
            continue
        if not sol.particular.is_nonneg():
            continue
        full = [_ZERO] * n
        for pos, j in enumerate(cols):
            full[j] = sol.particular[pos]
        vec = QVector(tuple(full))
        if vec.entries not in seen:
            seen.add(vec.entries)
            out.append(vec)
    out.sort(key=lambda v: v.entries)
    return out


def efficient_vertices(problem: VlpProblem, limit: int = 100000) -> list[tuple[QVector, EfficiencyCertificate]]:
    """Efficient vertices, each with its scalarization certificate."""
    result = []
    for vertex in enumerate_vertices(problem, limit):
        efficient, _ = is_efficient(problem, vertex)
        if not efficient:
            continue
        cert = proper_efficiency_certificate(problem, vertex)
        assert cert is not None, "every efficient point admits a scalarization certificate"
        result.append((vertex, cert))
    return result


def recession_image_pointed(problem: VlpProblem) -> bool:
    """Whether the image of the primal recession cone meets -K only at the origin."""
    n, m, k = problem.n, problem.m, problem.k
    G = generator_matrix(problem.cone)
    g = G.cols
    width = n + g
    rows: list[GenRow] = []
    for i in range(m):
        coeffs = tuple(problem.A.at(i, j) for j in range(n)) + (_ZERO,) * g
        rows.append(GenRow(QVector(coeffs), "=", _ZERO))
    for i in range(k):
        coeffs = tuple(problem.L.at(i, j) for j in range(n)) + tuple(G.at(i, t) for t in range(g))
        rows.append(GenRow(QVector(coeffs), "=", _ZERO))
    rows.append(GenRow(QVector((_ONE,) * width), "<=", _ONE))  # normalization keeps it bounded
    objective = QVector((_ZERO,) * n + (-_ONE,) * g)
    out = solve_general(GeneralProgram(objective, tuple(rows), (_ZERO,) * width))
    assert isinstance(out, GenOptimal), "normalized domination program is bounded and feasible"
    return out.value == 0


def primal_bounded(problem: VlpProblem) -> bool:
    """Whether the feasible set has trivial recession cone."""
    n = problem.n
    rows: list[GenRow] = []
    for i in range(problem.m):
        rows.append(GenRow(problem.A.row(i), "=", _ZERO))
    rows.append(GenRow(QVector((_ONE,) * n), "<=", _ONE))
    objective = QVector((-_ONE,) * n)
    out = solve_general(GeneralProgram(objective, tuple(rows), (_ZERO,) * n))
    assert isinstance(out, GenOptimal)
    return out.value == 0
