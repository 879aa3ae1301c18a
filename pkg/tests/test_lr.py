import itertools
import threading

from quivercount.lr import LREngine, SchubertElement, rectangle_partition, schubert_class
from quivercount.partitions import (
    Rectangle,
    complement,
    conjugate,
    partitions_in_rectangle,
    size,
)


def partitions_of(n: int, max_rows: int = 6):
    out = []

    def rec(prefix, maxpart, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_rows:
            return
        for p in range(min(maxpart, left), 0, -1):
            prefix.append(p)
            rec(prefix, p, left - p)
            prefix.pop()

    rec([], n, n)
    return out


def test_lr_pins(engine):
    assert engine.lr_coefficient((1,), (1,), (2,)) == 1
    assert engine.lr_coefficient((1,), (1,), (1, 1)) == 1
    assert engine.lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert engine.lr_coefficient((2,), (1,), (2, 1)) == 1
    # size mismatch and non-containment are zero, not errors
    assert engine.lr_coefficient((2,), (1,), (2,)) == 0
    assert engine.lr_coefficient((3,), (1,), (2, 2)) == 0


def test_lr_empty_cases(engine):
    assert engine.lr_coefficient((), (), ()) == 1
    assert engine.lr_coefficient((2, 1), (), (2, 1)) == 1
    assert engine.lr_coefficient((), (2, 1), (2, 1)) == 1


def test_lr_symmetry_small(engine):
    shapes = [lam for n in range(5) for lam in partitions_of(n)]
    for lam, mu in itertools.product(shapes, repeat=2):
        for nu in partitions_of(size(lam) + size(mu)):
            assert engine.lr_coefficient(lam, mu, nu) == engine.lr_coefficient(mu, lam, nu)


def test_lr_conjugation_invariance(engine):
    shapes = [lam for n in range(5) for lam in partitions_of(n)]
    for lam, mu in itertools.product(shapes, repeat=2):
        for nu in partitions_of(size(lam) + size(mu)):
            assert engine.lr_coefficient(lam, mu, nu) == engine.lr_coefficient(
                conjugate(lam), conjugate(mu), conjugate(nu)
            )


def test_expand_pieri_row(engine):
    # multiplying by a single row adds at most one box per column
    got = dict(engine.expand((2, 1), (2,), (4, 4, 4, 4)))
    assert got == {(4, 1): 1, (3, 2): 1, (3, 1, 1): 1, (2, 2, 1): 1}


def test_expand_respects_bound(engine):
    got = dict(engine.expand((2, 1), (2,), (3, 2)))
    assert got == {(3, 2): 1}


def test_tensor_multiplicity_basics(engine):
    assert engine.tensor_multiplicity((), []) == 1
    assert engine.tensor_multiplicity((1,), []) == 0
    assert engine.tensor_multiplicity((2, 1), [(2, 1)]) == 1
    assert engine.tensor_multiplicity((2, 1), [(1,), (1,), (1,)]) == 2
    # degree mismatch short-circuits to zero
    assert engine.tensor_multiplicity((2,), [(2,), (1,)]) == 0


def test_tensor_multiplicity_fold_order_is_irrelevant(engine):
    import random

    rng = random.Random(7)
    pool = [lam for n in range(4) for lam in partitions_of(n)]
    for _ in range(60):
        factors = [rng.choice(pool) for _ in range(rng.randint(0, 4))]
        total = sum(size(f) for f in factors)
        for target in partitions_of(total):
            assert engine.tensor_multiplicity(target, factors) == engine.tensor_multiplicity(
                target, list(reversed(factors))
            )


def test_schubert_class_outside_rectangle_is_zero():
    rect = Rectangle(2, 2)
    assert schubert_class(rect, (2, 1)).coeffs == {(2, 1): 1}
    assert schubert_class(rect, (3,)).coeffs == {}


def test_schubert_multiply_commutes_and_associates(engine):
    import random

    rng = random.Random(11)
    rect = Rectangle(3, 3)
    pool = partitions_in_rectangle(rect)

    def rand_elem():
        coeffs = {}
        for lam in rng.sample(pool, rng.randint(1, 4)):
            coeffs[lam] = rng.randint(-3, 3)
        return SchubertElement(rect, {k: v for k, v in coeffs.items() if v})

    for _ in range(25):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        ab = engine.schubert_multiply(a, b)
        assert ab == engine.schubert_multiply(b, a)
        assert engine.schubert_multiply(ab, c) == engine.schubert_multiply(
            a, engine.schubert_multiply(b, c)
        )


def test_poincare_duality_three_by_three(engine):
    rect = Rectangle(3, 3)
    point = {rectangle_partition(rect): 1}
    for lam in partitions_in_rectangle(rect):
        prod = engine.schubert_multiply(
            schubert_class(rect, lam), schubert_class(rect, complement(lam, rect))
        )
        assert prod.coeffs == point, lam


def test_schubert_truncation_kills_overflow(engine):
    rect = Rectangle(2, 2)
    full = schubert_class(rect, (2, 2))
    assert engine.schubert_multiply(full, schubert_class(rect, (1,))).coeffs == {}


def test_expansion_matches_schur_polynomial_oracle(engine):
    # product of Schur polynomials expanded monomial by monomial must agree
    # with the LR expansion; checked for small degrees in 5 variables
    nvars = 5
    shapes = [lam for n in range(4) for lam in partitions_of(n, max_rows=nvars)]
    for lam, mu in itertools.product(shapes, repeat=2):
        lhs = {}
        pl = engine.schur_polynomial(lam, nvars)
        pm = engine.schur_polynomial(mu, nvars)
        for ea, ca in pl.items():
            for eb, cb in pm.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                lhs[key] = lhs.get(key, 0) + ca * cb
                if lhs[key] == 0:
                    del lhs[key]
        rhs = {}
        bound = (size(lam) + size(mu),) * nvars
        for nu, c in engine.expand(lam, mu, bound):
            if len(nu) > nvars:
                continue
            for expo, cc in engine.schur_polynomial(nu, nvars).items():
                rhs[expo] = rhs.get(expo, 0) + c * cc
                if rhs[expo] == 0:
                    del rhs[expo]
        assert lhs == rhs, (lam, mu)


def test_engine_is_safe_to_share_across_threads():
    engine = LREngine()
    expected = engine.lr_coefficient((2, 1), (2, 1), (3, 2, 1))
    results = []

    def worker():
        local = []
        for _ in range(50):
            local.append(engine.lr_coefficient((2, 1), (2, 1), (3, 2, 1)))
            local.append(engine.tensor_multiplicity((2, 1), [(1,), (1,), (1,)]))
        results.append(local)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for local in results:
        assert local == [expected, 2] * 50
