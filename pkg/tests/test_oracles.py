import random

import pytest

from quivercount.ffield import GF
from quivercount.oracles import (
    BudgetExceededError,
    DegenerateSampleError,
    _kronecker_count,
    _kronecker_form,
    enumerate_subreps,
    gaussian_binomial,
    list_subreps,
    sampled_subrep_count,
    si_rank_oracle,
    verify_determinant_basis,
)
from quivercount.counting import NonzeroPairingError
from quivercount.quiver import FFRep, Quiver, random_rep


def theta(m: int) -> Quiver:
    return Quiver(2, tuple((0, 1) for _ in range(m)))


THETA2 = theta(2)
THETA4 = theta(4)
F5 = GF(5)

# generic two-arrow sample: identity plus distinct eigenvalues
V_GEN = FFRep(THETA2, F5, (2, 2), (((1, 0), (0, 1)), ((1, 0), (0, 2))))
V_ZERO = FFRep(THETA2, F5, (2, 2), (((0, 0), (0, 0)), ((0, 0), (0, 0))))


def test_gaussian_binomial_pins():
    assert gaussian_binomial(2, 1, 5) == 6
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(3, 0, 7) == 1
    assert gaussian_binomial(3, 3, 7) == 1
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3, 7)


def test_gaussian_binomial_symmetry_and_recurrence():
    for q in (2, 3, 5):
        for n in range(6):
            for r in range(n + 1):
                assert gaussian_binomial(n, r, q) == gaussian_binomial(n, n - r, q)
                if 0 < r <= n - 1:
                    # q-Pascal
                    assert gaussian_binomial(n, r, q) == gaussian_binomial(
                        n - 1, r - 1, q
                    ) + q**r * gaussian_binomial(n - 1, r, q)


def test_enumerate_generic_theta2():
    assert enumerate_subreps(THETA2, V_GEN, (1, 1)) == 2
    subs = list_subreps(THETA2, V_GEN, (1, 1))
    assert subs == ((((1, 0),), ((1, 0),)), (((0, 1),), ((0, 1),)))


def test_enumerate_zero_rep_counts_all_subspace_tuples():
    assert enumerate_subreps(THETA2, V_ZERO, (1, 1)) == gaussian_binomial(2, 1, 5) ** 2


def test_enumerate_trivial_beta():
    assert enumerate_subreps(THETA2, V_GEN, (0, 0)) == 1
    assert enumerate_subreps(THETA2, V_GEN, (2, 2)) == 1


def test_listed_subreps_are_closed_under_arrows():
    from quivercount.ffield import mat_rank, mat_vec

    rng = random.Random(6)
    for _ in range(10):
        Q = theta(rng.randint(1, 3))
        alpha = (rng.randint(1, 2), rng.randint(1, 3))
        beta = tuple(rng.randint(0, a) for a in alpha)
        V = random_rep(Q, alpha, F5, rng.randrange(1 << 30))
        for bases in list_subreps(Q, V, beta):
            for i, (t, h) in enumerate(Q.arrows):
                A = V.mat(i)
                for row in bases[t]:
                    img = mat_vec(F5, A, list(row))
                    stacked = [list(r) for r in bases[h]] + [img]
                    assert mat_rank(F5, stacked) == len(bases[h])


def test_budget_gate_names_the_point_count():
    with pytest.raises(BudgetExceededError) as ei:
        enumerate_subreps(THETA2, V_ZERO, (1, 1), budget=10)
    assert ei.value.points == 36
    assert ei.value.budget == 10
    assert "36" in str(ei.value)


def test_kronecker_eligibility():
    assert _kronecker_form(THETA2, (1, 1), (2, 2)) == (0, 1)
    assert _kronecker_form(THETA4, (1, 2), (3, 3)) == (0, 1)
    # beta at the source must be 1 and the minor size must stay small
    assert _kronecker_form(THETA2, (2, 2), (4, 4)) is None
    assert _kronecker_form(Quiver(3, ((0, 1), (1, 2))), (1, 1, 1), (2, 2, 2)) is None
    assert _kronecker_form(theta(5), (1, 4), (2, 5)) is None


def test_kronecker_solver_matches_enumeration():
    cases = [
        (THETA2, (1, 1), (2, 2)),
        (THETA2, (1, 1), (3, 3)),
        (THETA4, (1, 2), (3, 3)),
        (theta(3), (1, 1), (2, 3)),
        (THETA4, (1, 3), (2, 4)),
    ]
    checks = 0
    for Q, beta, alpha in cases:
        src, tgt = _kronecker_form(Q, beta, alpha)
        for seed in range(12):
            V = random_rep(Q, alpha, F5, seed)
            try:
                fast = _kronecker_count(Q, V, beta, src, tgt)
            except DegenerateSampleError:
                continue
            assert fast == enumerate_subreps(Q, V, beta), (Q.arrows, beta, alpha, seed)
            checks += 1
    assert checks >= 55


def test_kronecker_solver_matches_enumeration_extension_field():
    F9 = GF(3, 2)
    src, tgt = _kronecker_form(THETA4, (1, 2), (3, 3))
    agreed = 0
    for seed in range(6):
        V = random_rep(THETA4, (3, 3), F9, seed)
        try:
            fast = _kronecker_count(THETA4, V, (1, 2), src, tgt)
        except DegenerateSampleError:
            continue
        assert fast == enumerate_subreps(THETA4, V, (1, 2))
        agreed += 1
    assert agreed >= 4


def test_sampled_count_requires_zero_pairing():
    with pytest.raises(ValueError):
        sampled_subrep_count(Quiver(2, ((0, 1),)), (1, 1), (2, 2), 5)


def test_sampled_count_theta2_modal():
    got = sampled_subrep_count(THETA2, (1, 1), (2, 2), 101, max_ext_degree=2, trials=8, seed=0)
    assert got.modal == 2
    assert not got.inconclusive
    assert got.method == "solve"
    assert sum(got.tally.values()) == 8
    assert len(got.per_trial) == 8
    # every per-trial series is nondecreasing in the extension degree
    for series in got.per_trial:
        vals = [v for v in series if v is not None]
        assert vals == sorted(vals)


def test_sampled_count_enumerate_and_solve_agree():
    # same instance forced down both paths by the budget knob
    slow = sampled_subrep_count(
        THETA2, (1, 1), (2, 2), 13, max_ext_degree=2, trials=6, seed=1, budget=10**7
    )
    fast = sampled_subrep_count(
        THETA2, (1, 1), (2, 2), 13, max_ext_degree=2, trials=6, seed=1, budget=10
    )
    assert slow.method == "enumerate"
    assert fast.method == "solve"
    assert slow.per_trial == fast.per_trial
    assert slow.modal == fast.modal == 2


def test_sampled_count_budget_error_when_no_path_fits():
    with pytest.raises(BudgetExceededError):
        sampled_subrep_count(THETA2, (2, 2), (4, 4), 5, trials=2, seed=0, budget=100)


def test_si_rank_pins():
    assert si_rank_oracle(THETA2, (1, 1), (1, 1)) == 2
    assert si_rank_oracle(THETA4, (1, 2), (2, 1)) == 6
    assert si_rank_oracle(THETA2, (2, 2), (0, 0)) == 1
    assert si_rank_oracle(THETA2, (0, 0), (1, 1)) == 1


def test_si_rank_requires_zero_pairing():
    with pytest.raises(NonzeroPairingError):
        si_rank_oracle(Quiver(2, ((0, 1),)), (1, 1), (1, 1))


def test_si_rank_seed_stability():
    a = si_rank_oracle(THETA2, (1, 1), (1, 1), seed=3)
    b = si_rank_oracle(THETA2, (1, 1), (1, 1), seed=3)
    assert a == b == 2


def test_basis_theta2_over_f5():
    rep = verify_determinant_basis(THETA2, (1, 1), (2, 2), GF(5), seed=0)
    assert rep.passed and not rep.inconclusive
    assert rep.k == rep.m_expected == rep.n_expected == 2
    assert rep.extension_degree == 1
    # permutation-diagonal shape: zeros off the diagonal, units on it
    assert rep.matrix == ((2, 0), (0, 2))


def test_basis_theta2_over_f101():
    rep = verify_determinant_basis(THETA2, (1, 1), (2, 2), GF(101), seed=0)
    assert rep.passed
    assert rep.k == 2
    for i, row in enumerate(rep.matrix):
        for j, v in enumerate(row):
            assert (v != 0) == (i == j)


def test_basis_rejects_extension_base_field():
    with pytest.raises(ValueError):
        verify_determinant_basis(THETA2, (1, 1), (2, 2), GF(3, 2), seed=0)


def test_basis_inconclusive_under_tiny_budget():
    # (2,2) at the source disqualifies the linear solver, so a starved
    # enumeration budget leaves no route at all
    rep = verify_determinant_basis(THETA2, (2, 2), (4, 4), GF(5), seed=0, budget=1)
    assert rep.inconclusive and not rep.passed
    assert "budget" in rep.reason
