import random
from fractions import Fraction

import pytest

from moipnd import ContractError, Constraint, NDSet, Problem, Sense, dominates, evaluate, filter_nondominated, is_feasible
from moipnd.instances import QUAD_EXAMPLE_VECTORS


def test_dominates_examples():
    assert not dominates((11, 19, 12, 14), (11, 19, 12, 14))
    assert dominates((12, 11, 11, 13), (12, 11, 11, 14))
    assert not dominates((15, 16, 7, 12), (13, 9, 16, 11))
    assert not dominates((13, 9, 16, 11), (15, 16, 7, 12))


def test_dominates_rejects_length_mismatch():
    with pytest.raises(ContractError):
        dominates((1, 2), (1, 2, 3))


def test_filter_examples():
    assert filter_nondominated(QUAD_EXAMPLE_VECTORS) == NDSet(QUAD_EXAMPLE_VECTORS)
    assert filter_nondominated([(1, 1), (1, 1)]).vectors == ((1, 1),)
    assert filter_nondominated([(0, 0), (0, 1), (1, 0)]).vectors == ((0, 0),)
    assert filter_nondominated([]) == NDSet()


def test_filter_rejects_mixed_lengths():
    with pytest.raises(ContractError):
        filter_nondominated([(1, 2), (1,)])


def test_ndset_canonical_order():
    nd = NDSet(((3, 1), (1, 3), (3, 1)))
    assert nd.vectors == ((1, 3), (3, 1))
    assert list(nd) == [(1, 3), (3, 1)]
    assert (3, 1) in nd and [1, 3] in nd
    assert not NDSet()
    assert nd.union([(2, 2)]).vectors == ((1, 3), (2, 2), (3, 1))
    assert nd.is_pairwise_nondominated()
    assert not NDSet(((1, 1), (2, 2))).is_pairwise_nondominated()


def test_problem_validation():
    with pytest.raises(ContractError):
        Problem(((1, 2),), (), ((0, 1),))
    with pytest.raises(ContractError):
        Problem(((1.5,),), (), ((0, 1),))
    with pytest.raises(ContractError):
        Problem(((1,),), (), ((2, 1),))
    with pytest.raises(ContractError):
        Problem((), (), ())
    with pytest.raises(ContractError):
        Problem(((1, 1),), (Constraint((1,), Sense.LE, 1),), ((0, 1), (0, 1)))
    p = Problem(((1, 2), (3, 4)), [((1, 1), "<=", 1)], [(0, 1), (-1, 2)])
    assert p.num_vars == 2 and p.num_objectives == 2 and p.box_size() == 8
    assert p.constraints[0].sense is Sense.LE
    assert hash(p) == hash(Problem(((1, 2), (3, 4)), [((1, 1), "<=", 1)], [(0, 1), (-1, 2)]))


def test_evaluate_examples():
    p = Problem(((1, 2, 3), (4, 5, 6)), (), ((0, 1),) * 3)
    assert evaluate(p, (0, 0, 0)) == (0, 0)
    assert evaluate(p, (0, 1, 0)) == (2, 5)


def test_evaluate_random_matches_naive_sum():
    rng = random.Random(3)
    for _ in range(50):
        objs = tuple(tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(3))
        p = Problem(objs, (), ((-3, 3),) * 4)
        x = [rng.randint(-3, 3) for _ in range(4)]
        want = []
        for row in objs:
            total = 0
            for j in range(4):
                total += row[j] * x[j]
            want.append(total)
        assert evaluate(p, x) == tuple(want)


def test_is_feasible_examples():
    assert is_feasible(Problem(((1, 1),), (), ((2, 5), (-1, 0))), (2, -1))
    one_hot = Problem(((1, 1, 1),), (Constraint((1, 1, 1), Sense.EQ, 1),), ((0, 1),) * 3)
    assert is_feasible(one_hot, (0, 1, 0))
    assert not is_feasible(one_hot, (1, 1, 0))
    assert not is_feasible(one_hot, (0, 2, -1))


def test_is_feasible_random_matches_recheck():
    rng = random.Random(4)
    for _ in range(100):
        rows = []
        for _ in range(3):
            coeffs = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
            rows.append(Constraint(coeffs, rng.choice(list(Sense)), Fraction(rng.randint(-4, 4), 2)))
        p = Problem(((1, 1, 1),), tuple(rows), ((-2, 2),) * 3)
        x = [rng.randint(-2, 2) for _ in range(3)]
        ok = True
        for c in rows:
            lhs = sum(a * v for a, v in zip(c.coeffs, x))
            ok &= {"<=": lhs <= c.rhs, ">=": lhs >= c.rhs, "=": lhs == c.rhs}[c.sense.value]
        assert is_feasible(p, x) == ok
