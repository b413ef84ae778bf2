import random
from fractions import Fraction

import pytest

from moipnd import ContractError, Constraint, Problem, ResourceError, Sense
from moipnd.instances import GeneratorConfig, build_point_instance, generate_random, quad_example
from moipnd.ipsolver import INFEASIBLE, Backend, ScalarIP, Status, default_backend, solve_scalar, tighten
from moipnd.ipsolver.bnb import solve_bb
from moipnd.ipsolver.rows import integer_row
from moipnd.ipsolver.simplex import INFEASIBLE as LP_INFEASIBLE
from moipnd.ipsolver.simplex import OPTIMAL, ExactLP

BACKENDS = [Backend.ENUM, Backend.BB]


@pytest.mark.parametrize("backend", BACKENDS)
def test_one_hot_selection(backend):
    p = build_point_instance([(11,), (12,), (13,), (14,)])
    res = solve_scalar(ScalarIP(p, 0), backend)
    assert res.status is Status.OPTIMAL and res.value == 11 and res.solution == (1, 0, 0, 0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_bounded_example_is_infeasible(backend):
    p = quad_example()
    ip = ScalarIP(p, 0, (Constraint(p.objective_coeffs[1], Sense.LE, 7),))
    assert solve_scalar(ip, backend) == INFEASIBLE


@pytest.mark.parametrize("backend", BACKENDS)
def test_tighten_examples(backend):
    p = quad_example()
    ip = ScalarIP(p, 0)
    same = tighten(ip, (0,) * 14, Sense.LE, 0)
    assert solve_scalar(same, backend) == solve_scalar(ip, backend)
    cut = tighten(ip, p.objective_coeffs[3], "<=", 13)
    assert cut.extra_constraints[-1].rhs == 13 and ip.extra_constraints == ()
    assert solve_scalar(cut, backend).value == 12
    row = (1,) + (0,) * 13
    clash = tighten(tighten(ip, row, Sense.LE, 0), row, Sense.GE, 1)
    assert solve_scalar(clash, backend) == INFEASIBLE


@pytest.mark.parametrize("seed", range(100))
def test_backends_agree_on_six_binaries(seed):
    p = generate_random(GeneratorConfig(6, 2, 2, 10, seed))
    rng = random.Random(seed)
    extra = (Constraint(p.objective_coeffs[1], Sense.LE, rng.randint(5, 30)),)
    ip = ScalarIP(p, 0, extra)
    e, b = solve_scalar(ip, Backend.ENUM), solve_scalar(ip, Backend.BB)
    assert (e.status, e.value) == (b.status, b.value)


def test_explicit_objective_row_and_validation():
    p = Problem(((1, 1),), (), ((-2, 3), (0, 4)))
    res = solve_scalar(ScalarIP(p, (3, -2)), Backend.BB)
    assert res.value == -14 and res.solution == (-2, 4)
    with pytest.raises(ContractError):
        ScalarIP(p, 1)
    with pytest.raises(ContractError):
        ScalarIP(p, (1,))
    with pytest.raises(ContractError):
        tighten(ScalarIP(p, 0), (1,), Sense.LE, 0)


def test_bb_node_limit_raises_resource_error():
    p = generate_random(GeneratorConfig(25, 10, 3, 10, 1))
    ip = ScalarIP(p, 0, (Constraint(p.objective_coeffs[1], Sense.LE, 70), Constraint(p.objective_coeffs[2], Sense.LE, 80)))
    with pytest.raises(ResourceError):
        solve_bb(ip, node_limit=5)


def test_default_backend_threshold():
    assert default_backend(quad_example()) is Backend.ENUM
    assert default_backend(generate_random(GeneratorConfig(25, 1, 1))) is Backend.BB


def test_integer_row_scaling():
    coeffs, sense, rhs = integer_row(Constraint((Fraction(1, 2), Fraction(2, 3)), Sense.GE, Fraction(5, 6)))
    assert (coeffs, sense, rhs) == ([3, 4], Sense.GE, 5)


def _lp_by_vertices(rows, senses, rhs, cost, lower, upper):
    """Brute-force LP optimum for two variables: best feasible vertex of the arrangement."""
    lines = [(list(map(Fraction, r)), Fraction(b)) for r, b in zip(rows, rhs)]
    for j in range(2):
        for v in (lower[j], upper[j]):
            unit = [Fraction(0), Fraction(0)]
            unit[j] = Fraction(1)
            lines.append((unit, Fraction(v)))
    best = None
    for i in range(len(lines)):
        for k in range(i + 1, len(lines)):
            (a, b), (c, d) = lines[i], lines[k]
            det = a[0] * c[1] - a[1] * c[0]
            if det == 0:
                continue
            x = ((b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det)
            if not all(lower[j] <= x[j] <= upper[j] for j in range(2)):
                continue
            ok = True
            for r, s, v in zip(rows, senses, rhs):
                lhs = r[0] * x[0] + r[1] * x[1]
                ok &= s.holds(lhs, v)
            if ok:
                val = cost[0] * x[0] + cost[1] * x[1]
                best = val if best is None else min(best, val)
    return best


def test_exact_lp_matches_vertex_enumeration():
    rng = random.Random(9)
    for _ in range(300):
        m = rng.randint(1, 3)
        rows = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(m)]
        senses = [rng.choice(list(Sense)) for _ in range(m)]
        rhs = [rng.randint(-6, 6) for _ in range(m)]
        cost = [rng.randint(-4, 4) for _ in range(2)]
        lower = [rng.randint(-3, 0) for _ in range(2)]
        upper = [lo + rng.randint(0, 4) for lo in lower]
        lp = ExactLP(rows, senses, rhs, cost, lower, upper)
        status = lp.solve()
        want = _lp_by_vertices(rows, senses, rhs, cost, lower, upper)
        if want is None:
            assert status == LP_INFEASIBLE
        else:
            assert status == OPTIMAL
            x = lp.primal()
            assert lp.objective(x) == want
            assert all(lower[j] <= x[j] <= upper[j] for j in range(2))
            for r, s, v in zip(rows, senses, rhs):
                assert s.holds(r[0] * x[0] + r[1] * x[1], v)


def test_exact_lp_bound_change_restarts_from_parent():
    lp = ExactLP([[2, 2]], [Sense.GE], [3], [1, 1], [0, 0], [5, 5])
    assert lp.solve() == OPTIMAL and lp.objective() == Fraction(3, 2)
    child = lp.clone()
    child.set_bounds(0, 2, 5)
    assert child.solve() == OPTIMAL and child.objective() == 2
    assert lp.objective() == Fraction(3, 2)
