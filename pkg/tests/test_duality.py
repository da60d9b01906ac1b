import random
from fractions import Fraction

import pytest

from vlpdual.cone import orthant, strictly_below
from vlpdual.duality import (
    check_feasible_D,
    check_feasible_J,
    check_feasible_L,
    check_feasible_U,
    construct_dual_solution,
    dual_B_nonempty,
    feasible_dual_point,
    h_H_value_membership,
    improve_dual_infeasible_primal,
    u_feasibility_multiplier,
    map_D_to_DL,
    map_DH_to_D,
    membership_hB,
    membership_hJ,
    membership_hL,
    minimize_over_image,
    recover_primal,
)
from vlpdual.efficiency import (
    EfficiencyCertificate,
    efficient_vertices,
    enumerate_vertices,
    is_efficient,
    proper_efficiency_certificate,
)
from vlpdual.exact import QMatrix, QVector, qmat, qvec
from vlpdual.lp import GeneralProgram, GenRow, Optimal, solve_lp, to_standard_form
from vlpdual.model import (
    DualCandidateD,
    DualCandidateJ,
    DualCandidateL,
    DualCandidateU,
    make_problem,
    objective_D,
    objective_J,
    objective_L,
)
from vlpdual.sampling import random_matrix, random_problem, sample_dual_points


@pytest.fixture
def no_dual_problem():
    # L^T lam >= 0 forces lam <= 0: the dual feasible set is empty
    return make_problem(QMatrix.identity(2).scale(-1), QMatrix.zeros(1, 2), qvec(0), orthant(2))


def test_check_feasible_D_r5(r5_problem):
    assert check_feasible_D(r5_problem, DualCandidateD(qvec(1, 1), QMatrix.zeros(2, 2), qvec(1, -1)))
    assert not check_feasible_D(r5_problem, DualCandidateD(qvec(1, 1), QMatrix.zeros(2, 2), qvec(-1, -1)))
    assert not check_feasible_D(r5_problem, DualCandidateD(qvec(1, 0), QMatrix.zeros(2, 2), qvec(0, 0)))


def test_check_feasible_L_r5(r5_problem):
    assert check_feasible_L(r5_problem, DualCandidateL(qvec(1, 1), qvec(0, 0), qvec(-1, -1)))
    assert not check_feasible_L(r5_problem, DualCandidateL(qvec(1, 1), qvec(0, 0), qvec(1, 0)))


def test_check_feasible_J_r5(r5_problem):
    assert check_feasible_J(r5_problem, DualCandidateJ(qvec(1, 1), QMatrix.zeros(2, 2)))


def test_check_feasible_U_r5(r5_problem):
    assert check_feasible_U(r5_problem, DualCandidateU(QMatrix.zeros(2, 2), "H"))


def test_check_feasible_U_negative(no_dual_problem):
    assert not check_feasible_U(no_dual_problem, DualCandidateU(QMatrix.zeros(2, 1), "H"))


def test_check_feasible_U_flavor_I_needs_orthant():
    wedge_problem = make_problem(
        QMatrix.identity(2),
        qmat([[1, 1]]),
        qvec(1),
        make_cone_wedge(),
    )
    with pytest.raises(ValueError, match="orthant"):
        check_feasible_U(wedge_problem, DualCandidateU(QMatrix.zeros(2, 1), "I"))


def make_cone_wedge():
    from vlpdual.cone import make_cone, validate_cone

    return validate_cone(make_cone(2, [qvec(1, 0), qvec(1, 1)]))


def test_check_feasible_U_flavors_agree_on_orthant(seg_problem):
    rng = random.Random(3)
    for _ in range(10):
        U = random_matrix(rng, seg_problem.k, seg_problem.m)
        assert check_feasible_U(seg_problem, DualCandidateU(U, "I")) == check_feasible_U(
            seg_problem, DualCandidateU(U, "H")
        )


def test_u_feasibility_multiplier_r5(r5_problem):
    lam = u_feasibility_multiplier(r5_problem, QMatrix.zeros(2, 2))
    assert lam is not None
    assert all(lam.dot(g) >= 1 for g in r5_problem.cone.generators)


def test_u_feasibility_multiplier_none(no_dual_problem):
    assert u_feasibility_multiplier(no_dual_problem, QMatrix.zeros(2, 1)) is None


@pytest.mark.parametrize("seed", range(15))
def test_u_feasibility_agreement_random(seed):
    rng = random.Random(200 + seed)
    problem = random_problem(rng)
    for _ in range(4):
        U = random_matrix(rng, problem.k, problem.m)
        via_image = check_feasible_U(problem, DualCandidateU(U, "H"))
        via_lam = u_feasibility_multiplier(problem, U)
        assert via_image == (via_lam is not None)


def test_construct_dual_solution_segment(seg_problem):
    xbar = qvec(1, 0)
    cert = proper_efficiency_certificate(seg_problem, xbar)
    cand = construct_dual_solution(seg_problem, xbar, cert)
    assert check_feasible_D(seg_problem, cand)
    assert objective_D(seg_problem, cand) == qvec(1, 0)
    assert xbar.dot((seg_problem.L - cand.U @ seg_problem.A).T @ cand.lam) == 0


def test_construct_dual_solution_second_vertex(seg_problem):
    xbar = qvec(0, 1)
    cert = proper_efficiency_certificate(seg_problem, xbar)
    cand = construct_dual_solution(seg_problem, xbar, cert)
    assert objective_D(seg_problem, cand) == qvec(0, 1)


def test_construct_dual_solution_zero_rhs(zb_problem):
    cert = EfficiencyCertificate("efficient-with-scalarization", lam=qvec(1, 1), eta=qvec(0))
    cand = construct_dual_solution(zb_problem, qvec(0, 0), cert)
    assert cand.U == QMatrix.zeros(2, 1)
    assert cand.v == qvec(0, 0)
    assert objective_D(zb_problem, cand) == qvec(0, 0)


def test_construct_dual_solution_rejects_bad_cert(seg_problem):
    bogus = EfficiencyCertificate("efficient-with-scalarization", lam=qvec(1, 1), eta=qvec(5))
    with pytest.raises(ValueError):
        construct_dual_solution(seg_problem, qvec(1, 0), bogus)


def test_recover_primal_segment(seg_problem):
    assert recover_primal(seg_problem, qvec(1, 0)) == qvec(1, 0)
    assert recover_primal(seg_problem, qvec(2, 2)) is None


def test_recover_primal_r5(r5_problem):
    assert recover_primal(r5_problem, qvec(0, 0)) is None


def test_membership_hB_r5(r5_problem):
    assert not membership_hB(r5_problem, qvec(-1, -1)).member
    verdict = membership_hB(r5_problem, qvec(1, -1))
    assert verdict.member
    assert check_feasible_D(r5_problem, verdict.candidate)
    assert objective_D(r5_problem, verdict.candidate) == qvec(1, -1)


def test_membership_hB_zero_rhs(zb_problem):
    verdict = membership_hB(zb_problem, qvec(5, -5))
    assert verdict.member
    assert check_feasible_D(zb_problem, verdict.candidate)
    assert objective_D(zb_problem, verdict.candidate) == qvec(5, -5)


def test_membership_hL_r5(r5_problem):
    assert membership_hL(r5_problem, qvec(-1, -1)).member
    assert membership_hL(r5_problem, qvec(1, -1)).member


def test_membership_hL_empty_dual(no_dual_problem):
    for d in (qvec(0, 0), qvec(-1, -1), qvec(3, 2)):
        assert not membership_hL(no_dual_problem, d).member


def test_membership_hJ_zero_rhs_gap(zb_problem):
    assert membership_hJ(zb_problem, qvec(0, 0)).member
    assert not membership_hJ(zb_problem, qvec(5, -5)).member
    assert membership_hB(zb_problem, qvec(5, -5)).member  # the strict gap at b = 0


def test_membership_hJ_nonzero_rhs(r5_problem):
    verdict = membership_hJ(r5_problem, qvec(1, -1))
    assert verdict.member
    assert check_feasible_J(r5_problem, verdict.candidate)
    assert objective_J(r5_problem, verdict.candidate) == qvec(1, -1)


def test_membership_system_standard_form_roundtrip(r5_problem):
    # the (lam, z) system behind the hB oracle, standardized and mapped back
    d = qvec(1, -1)
    p = r5_problem
    rows = [GenRow(QVector(tuple(g.entries) + (Fraction(0),) * p.m), ">=", Fraction(1)) for g in p.cone.generators]
    for j in range(p.n):
        coeffs = tuple(p.L.at(i, j) for i in range(p.k)) + tuple(-p.A.at(i, j) for i in range(p.m))
        rows.append(GenRow(QVector(coeffs), ">=", Fraction(0)))
    rows.append(GenRow(QVector(tuple(d.entries) + tuple((-p.b).entries)), "=", Fraction(0)))
    gp = GeneralProgram(QVector.zeros(p.k + p.m), tuple(rows), (None,) * (p.k + p.m))
    std = to_standard_form(gp)
    out = solve_lp(std.lp)
    assert isinstance(out, Optimal)
    point = std.back_point(out.x)
    lam, z = QVector(point.entries[: p.k]), QVector(point.entries[p.k :])
    assert all(lam.dot(g) >= 1 for g in p.cone.generators)
    assert lam.dot(d) == p.b.dot(z)
    assert ((p.L.T @ lam) - (p.A.T @ z)).is_nonneg()


def test_h_H_value_membership_r5(r5_problem):
    U = QMatrix.zeros(2, 2)
    assert h_H_value_membership(r5_problem, U, qvec(0, 0))
    assert not h_H_value_membership(r5_problem, U, qvec(1, 1))


def test_h_H_value_membership_zero_rhs(zb_problem):
    assert h_H_value_membership(zb_problem, QMatrix.zeros(2, 1), qvec(1, -1))


def test_h_H_value_membership_precondition(no_dual_problem):
    with pytest.raises(ValueError, match="not feasible"):
        h_H_value_membership(no_dual_problem, QMatrix.zeros(2, 1), qvec(0, 0))


def test_map_DH_to_D_r5(r5_problem):
    cand = map_DH_to_D(r5_problem, QMatrix.zeros(2, 2), qvec(0))
    assert check_feasible_D(r5_problem, cand)
    assert cand.v == qvec(0, 0)
    assert objective_D(r5_problem, cand) == qvec(0, 0)
    assert membership_hB(r5_problem, qvec(0, 0)).member


def test_map_DH_to_D_zero_rhs(zb_problem):
    cand = map_DH_to_D(zb_problem, QMatrix.zeros(2, 1), qvec(0, 1))
    assert cand.v == qvec(1, -1)
    assert check_feasible_D(zb_problem, cand)
    h = objective_D(zb_problem, cand)
    assert h == qvec(1, -1)
    assert membership_hB(zb_problem, h).member


def test_map_DH_to_D_rejects_nonminimal(seg_problem):
    with pytest.raises(ValueError, match="not minimal"):
        map_DH_to_D(seg_problem, QMatrix.zeros(2, 1), qvec(1, 1))


def test_minimize_over_image(seg_problem):
    U = QMatrix.zeros(2, 1)
    xstar = minimize_over_image(seg_problem, U, qvec(1, 1))
    assert h_H_value_membership(seg_problem, U, seg_problem.L @ xstar)


def test_map_D_to_DL_r5(r5_problem):
    cand = DualCandidateD(qvec(1, 1), QMatrix.zeros(2, 2), qvec(1, -1))
    mapped = map_D_to_DL(r5_problem, cand)
    assert mapped.z == qvec(0, 0)
    assert check_feasible_L(r5_problem, mapped)
    assert objective_L(mapped) == objective_D(r5_problem, cand)


def test_map_D_to_DL_zero_rhs(zb_problem):
    cand = DualCandidateD(qvec(1, 1), QMatrix.zeros(2, 1), qvec(3, -3))
    mapped = map_D_to_DL(zb_problem, cand)
    assert mapped.v == qvec(3, -3)
    assert check_feasible_L(zb_problem, mapped)


def test_map_D_to_DL_rejects_infeasible(r5_problem):
    with pytest.raises(ValueError):
        map_D_to_DL(r5_problem, DualCandidateD(qvec(1, 0), QMatrix.zeros(2, 2), qvec(0, 0)))


def test_map_D_to_DL_after_strong_duality(seg_problem):
    for vertex, cert in efficient_vertices(seg_problem):
        cand = construct_dual_solution(seg_problem, vertex, cert)
        mapped = map_D_to_DL(seg_problem, cand)
        assert objective_L(mapped) == seg_problem.L @ vertex


def test_dual_B_nonempty(r5_problem, seg_problem, no_dual_problem):
    assert dual_B_nonempty(r5_problem)
    assert dual_B_nonempty(seg_problem)
    assert not dual_B_nonempty(no_dual_problem)
    assert feasible_dual_point(no_dual_problem) is None
    cand = feasible_dual_point(r5_problem)
    assert cand is not None and check_feasible_D(r5_problem, cand)


def test_improve_dual_r5(r5_problem):
    cand = DualCandidateD(qvec(1, 1), QMatrix.zeros(2, 2), qvec(1, -1))
    improved = improve_dual_infeasible_primal(r5_problem, cand)
    assert check_feasible_D(r5_problem, improved)
    assert strictly_below(
        r5_problem.cone, objective_D(r5_problem, cand), objective_D(r5_problem, improved)
    )


def test_improve_dual_requires_infeasible_primal(seg_problem):
    cand = feasible_dual_point(seg_problem)
    with pytest.raises(ValueError, match="feasible"):
        improve_dual_infeasible_primal(seg_problem, cand)


@pytest.mark.parametrize("seed", range(10))
def test_weak_duality_random(seed):
    rng = random.Random(400 + seed)
    problem = random_problem(rng)
    duals = sample_dual_points(problem, rng, 8)
    vertices = enumerate_vertices(problem)
    for cand in duals:
        h = objective_D(problem, cand)
        for x in vertices:
            assert not strictly_below(problem.cone, problem.L @ x, h)


@pytest.mark.parametrize("seed", range(10))
def test_inclusion_chain_random(seed):
    rng = random.Random(500 + seed)
    problem = random_problem(rng)
    duals = sample_dual_points(problem, rng, 4)
    values = [objective_D(problem, c) for c in duals]
    values += [qvec(*[Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for _ in range(problem.k)]) for _ in range(6)]
    for d in values:
        in_j = membership_hJ(problem, d).member
        in_b = membership_hB(problem, d).member
        in_l = membership_hL(problem, d).member
        assert not (in_j and not in_b)
        assert not (in_b and not in_l)


@pytest.mark.parametrize("seed", range(8))
def test_hH_map_lands_in_hB_random(seed):
    rng = random.Random(600 + seed)
    problem = random_problem(rng)
    for U in (QMatrix.zeros(problem.k, problem.m), random_matrix(rng, problem.k, problem.m)):
        if not check_feasible_U(problem, DualCandidateU(U, "H")):
            continue
        start = QVector(tuple(Fraction(rng.randint(0, 4)) for _ in range(problem.n)))
        xbar = minimize_over_image(problem, U, start)
        cand = map_DH_to_D(problem, U, xbar)
        h = objective_D(problem, cand)
        assert membership_hB(problem, h).member
        assert h_H_value_membership(problem, U, h)


@pytest.mark.parametrize("seed", range(8))
def test_converse_duality_random(seed):
    rng = random.Random(700 + seed)
    problem = random_problem(rng)
    for vertex, cert in efficient_vertices(problem):
        cand = construct_dual_solution(problem, vertex, cert)
        d = objective_D(problem, cand)
        recovered = recover_primal(problem, d)
        assert recovered is not None
        assert (problem.L @ recovered) == d
        eff, _ = is_efficient(problem, recovered)
        assert eff
