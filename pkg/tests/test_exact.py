import random

import pytest

import oracles
from satmat import (
    BudgetExceededError,
    Matrix01,
    SearchBudget,
    Shape,
    avoids,
    exact_ex,
    exact_sat,
    exact_ssat,
    identity_pattern,
    is_saturating,
    is_semisaturating,
    verify_recurrence,
)

I2 = identity_pattern(2, 2)
I3 = identity_pattern(2, 3)


class TestKnownValues:
    def test_identity_square(self):
        s = Shape((3, 3))
        assert exact_ex(s, I2).value == 5
        assert exact_sat(s, I2).value == 5

    def test_identity_cube(self):
        s = Shape((2, 2, 2))
        p = identity_pattern(3, 2)
        assert exact_ex(s, p).value == 7
        assert exact_sat(s, p).value == 7

    def test_small_sat(self):
        assert exact_sat(Shape((2, 2)), I2).value == 3

    def test_all_ones_pattern(self):
        j2 = Matrix01.filled(Shape((2, 2)))
        assert exact_ex(Shape((2, 2)), j2).value == 3
        assert exact_ssat(Shape((2, 2)), j2).value == 3

    def test_ssat_single_entry_pattern(self):
        p = Matrix01.from_nested([[1]])
        for n in (2, 3, 4):
            res = exact_ssat(Shape((n, n)), p)
            assert res.value == 0
            assert res.witness.weight == 0

    def test_ssat_identity_regression(self):
        # frozen after exhaustive enumeration over all 512 hosts
        res = exact_ssat(Shape((3, 3)), I2)
        assert res.value == 4
        assert sorted(res.witness.iter_ones()) == [(1, 1), (1, 3), (3, 1), (3, 3)]


class TestBruteForceAgreement:
    CASES = [
        ((2, 2), [[1, 0], [0, 1]]),
        ((3, 3), [[1, 0], [0, 1]]),
        ((3, 3), [[1, 1], [0, 1]]),
        ((2, 4), [[1, 1]]),
        ((3, 3), [[1], [1]]),
        ((2, 2, 2), [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]),
        ((2, 2, 2), [[[1, 1], [0, 0]]]),
        ((9,), [1, 0, 1]),
        ((3, 3), [[0, 1], [1, 0]]),
        ((2, 3), [[1, 1, 1]]),
    ]

    @pytest.mark.parametrize("host_ext,pattern", CASES)
    def test_values_and_canonical_witnesses(self, host_ext, pattern):
        shape = Shape(host_ext)
        p = Matrix01.from_nested(pattern)
        (b_ssat, b_ssat_w), (b_sat, b_sat_w), (b_ex, b_ex_w) = (
            oracles.brute_exact_values(shape, p)
        )
        r_ssat = exact_ssat(shape, p)
        r_sat = exact_sat(shape, p)
        r_ex = exact_ex(shape, p)
        assert r_ssat.value == b_ssat
        assert r_sat.value == b_sat
        assert r_ex.value == b_ex
        # canonical witness: lexicographically least optimum, bit for bit
        assert r_ssat.witness == b_ssat_w
        assert r_sat.witness == b_sat_w
        assert r_ex.witness == b_ex_w

    def test_random_instances(self):
        rng = random.Random(19)
        for _ in range(12):
            d = rng.choice((1, 2))
            ext = tuple(rng.randint(1, 3) for _ in range(d))
            shape = Shape(ext)
            if shape.cell_count > 9:
                continue
            pext = tuple(rng.randint(1, 2) for _ in range(d))
            pshape = Shape(pext)
            p = Matrix01(pshape, rng.randrange(1, 1 << pshape.cell_count))
            (b_ssat, _), (b_sat, _), (b_ex, _) = oracles.brute_exact_values(shape, p)
            assert exact_ssat(shape, p).value == b_ssat
            assert exact_sat(shape, p).value == b_sat
            assert exact_ex(shape, p).value == b_ex


class TestWitnessValidity:
    def test_witnesses_verify(self):
        rng = random.Random(3)
        for _ in range(10):
            d = rng.choice((2, 3))
            ext = tuple(rng.randint(1, 4) for _ in range(d))
            shape = Shape(ext)
            if shape.cell_count > 16:
                continue
            pshape = Shape(tuple(rng.randint(1, 2) for _ in range(d)))
            p = Matrix01(pshape, rng.randrange(1, 1 << pshape.cell_count))
            budget = SearchBudget(max_cells=16)
            ssat = exact_ssat(shape, p, budget)
            sat = exact_sat(shape, p, budget)
            ex = exact_ex(shape, p, budget)
            assert ssat.value <= sat.value <= ex.value
            assert is_semisaturating(ssat.witness, p).verdict
            assert is_saturating(sat.witness, p).verdict
            assert avoids(ex.witness, p)


class TestEdgeCases:
    def test_nonfitting_pattern(self):
        shape = Shape((2, 2))
        p = Matrix01.from_ones(Shape((3, 3)), [(1, 1)])
        for fn in (exact_ex, exact_sat, exact_ssat):
            res = fn(shape, p)
            assert res.value == 4
            assert res.witness == Matrix01.filled(shape)

    def test_zero_pattern_rejected(self):
        with pytest.raises(ValueError):
            exact_ex(Shape((2, 2)), Matrix01.zeros(Shape((2, 2))))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            exact_ex(Shape((2, 2)), identity_pattern(3, 2))

    def test_determinism(self):
        a = exact_sat(Shape((3, 3)), I2)
        b = exact_sat(Shape((3, 3)), I2)
        assert a == b


class TestBudgets:
    def test_cell_cap(self):
        with pytest.raises(BudgetExceededError):
            exact_ssat(Shape((5, 4)), I2)  # 20 > 16 default
        with pytest.raises(BudgetExceededError):
            exact_ex(Shape((6, 6)), I2)  # 36 > 30 default
        # explicit budget lifts the default
        assert exact_ssat(Shape((5, 4)), I2, SearchBudget(max_cells=20)).value >= 1

    def test_node_cap(self):
        with pytest.raises(BudgetExceededError) as err:
            exact_ex(Shape((4, 4)), I2, SearchBudget(node_limit=5))
        assert err.value.nodes > 0

    def test_time_cap(self):
        with pytest.raises(BudgetExceededError):
            exact_ex(Shape((5, 5)), I2, SearchBudget(max_cells=25, time_limit=0.0))

    def test_node_cap_bounds_table_construction(self):
        # the selection enumeration itself counts against the node budget
        p = Matrix01.from_nested([1, 1, 1, 1, 1])
        with pytest.raises(BudgetExceededError):
            exact_ssat(Shape((16,)), p, SearchBudget(node_limit=10))


class TestRecurrence:
    def test_unit_base_case(self):
        unit = identity_pattern(2, 1)
        rep = verify_recurrence(unit, Shape((3, 3)))
        assert rep.holds
        assert rep.sat_outer == 5 and rep.sat_inner == 0 and rep.boundary == 5

    def test_identity_step(self):
        rep = verify_recurrence(I2, Shape((4, 4)))
        assert rep.holds
        assert (rep.sat_outer, rep.sat_inner, rep.boundary) == (12, 5, 7)
        assert (rep.ex_outer, rep.ex_inner) == (12, 5)

    def test_rejects_bad_inner_pattern(self):
        p = Matrix01.from_nested([[1, 1], [0, 1]])  # shell has two 1s
        with pytest.raises(ValueError):
            verify_recurrence(p, Shape((4, 4)))

    def test_rejects_tight_shape(self):
        with pytest.raises(ValueError):
            verify_recurrence(I2, Shape((2, 2)))
