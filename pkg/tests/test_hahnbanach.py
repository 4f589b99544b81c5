import random
from fractions import Fraction as F

import pytest

from normext.exactreal import RationalInterval, two_pow
from normext.functionals import FunctionalPresentation, GeneratorSystem, rescale
from normext.hahnbanach import (
    NormViolationError,
    cc_oracle_chooser,
    chooser_left,
    chooser_mid,
    chooser_right,
    conjugate_2d_linf,
    extend_2d_l1,
    extend_findim,
    extend_full_l1,
    one_step_bounds,
    one_step_extend,
)
from normext.spaces import FinVec, L1Point, l1_norm, linf_to_l1_pair
from normext.verify import grid_one_step_oracle, random_one_step_instance

LINE = GeneratorSystem((FinVec({0: 1}),))
F_LINE = FunctionalPresentation({0: 1}, 1)
DIAG = GeneratorSystem((FinVec({0: 1, 1: 1}),))
F_DIAG = FunctionalPresentation({0: 2}, 1)


class TestOneStepBounds:
    def test_orthogonal_direction_full_interval(self):
        b = one_step_bounds(F_LINE, LINE, FinVec({1: 1}))
        assert (b.lo, b.hi) == (F(-1), F(1))

    def test_point_inside_span_forces_value(self):
        b = one_step_bounds(F_LINE, LINE, FinVec({0: 1}))
        assert (b.lo, b.hi) == (F(1), F(1))

    def test_unique_extension_case(self):
        b = one_step_bounds(F_DIAG, DIAG, FinVec({0: 1}))
        assert (b.lo, b.hi) == (F(1), F(1))

    def test_grid_oracle_agrees_on_orthogonal_case(self):
        got = grid_one_step_oracle([F(1)], [FinVec({0: 1})], FinVec({1: 1}), upper=False)
        assert abs(F(-1) - got) <= two_pow(7)
        got = grid_one_step_oracle([F(1)], [FinVec({0: 1})], FinVec({1: 1}), upper=True)
        assert abs(F(1) - got) <= two_pow(7)

    def test_norm_violation_detected(self):
        bad = FunctionalPresentation({0: 2}, 1)  # f(e0) = 2 but ||e0|| = 1
        with pytest.raises(NormViolationError):
            one_step_bounds(bad, LINE, FinVec({0: 1, 1: 1}))

    def test_unnormalized_bound_rejected(self):
        f = FunctionalPresentation({0: 1}, 2)
        with pytest.raises(ValueError):
            one_step_bounds(f, LINE, FinVec({1: 1}))

    def test_zero_generator_with_value_rejected(self):
        f = FunctionalPresentation({0: 0, 1: F(1, 2)}, 1)
        system = GeneratorSystem((FinVec({0: 1}), FinVec()))
        with pytest.raises(NormViolationError):
            one_step_bounds(f, system, FinVec({0: 1}))

    def test_sandwich_on_random_instances(self):
        rng = random.Random(17)
        for _ in range(40):
            f, system, x = random_one_step_instance(rng)
            b = one_step_bounds(f, system, x)
            nx = l1_norm(x)
            assert -nx <= b.lo <= b.hi <= nx

    def test_grid_agreement_on_random_instances(self):
        rng = random.Random(23)
        tol = two_pow(7)
        for _ in range(20):
            f, system, x = random_one_step_instance(rng)
            b = one_step_bounds(f, system, x)
            vals = [f.value(j) for j in range(len(system.gens))]
            glo = grid_one_step_oracle(vals, system.gens, x, upper=False)
            ghi = grid_one_step_oracle(vals, system.gens, x, upper=True)
            assert F(0) <= b.lo - glo <= tol
            assert F(0) <= ghi - b.hi <= tol


class TestOneStepExtend:
    def test_midpoint_of_symmetric_interval(self):
        ext = one_step_extend(F_LINE, LINE, FinVec({1: 1}))
        assert ext.value_on_probe() == 0
        assert ext.functional.value(0) == 1

    def test_forced_value_ignores_chooser(self):
        for chooser in (chooser_left, chooser_mid, chooser_right, cc_oracle_chooser):
            ext = one_step_extend(F_DIAG, DIAG, FinVec({0: 1}), chooser=chooser)
            assert ext.value_on_probe() == 1

    def test_endpoint_choosers(self):
        left = one_step_extend(F_LINE, LINE, FinVec({1: 1}), chooser=chooser_left)
        right = one_step_extend(F_LINE, LINE, FinVec({1: 1}), chooser=chooser_right)
        assert left.value_on_probe() == -1
        assert right.value_on_probe() == 1

    def test_cc_oracle_chooser_picks_midpoint(self):
        ext = one_step_extend(F_LINE, LINE, FinVec({1: 1}), chooser=cc_oracle_chooser)
        assert ext.value_on_probe() == 0

    def test_rogue_chooser_rejected(self):
        with pytest.raises(ValueError):
            one_step_extend(F_LINE, LINE, FinVec({1: 1}), chooser=lambda iv: iv.hi + 1)

    def test_rescale_extend_multiply_back(self):
        # divide by the bound, extend, multiply back: values scale along
        f = FunctionalPresentation({0: F(3, 2)}, 2)
        normalized = rescale(f, 2)
        ext = one_step_extend(normalized, LINE, FinVec({1: 1}), chooser=chooser_right)
        restored = rescale(ext.functional, F(1, 2))
        assert restored.value(0) == F(3, 2)
        assert restored.value(1) == 2 * ext.value_on_probe()
        assert restored.bound == 2

    def test_l1point_probe_records_slack(self):
        x = L1Point.from_term_series(
            term=lambda n: (2 * n, two_pow(n + 1)), tail_bound=lambda m: two_pow(m)
        )
        ext = one_step_extend(F_LINE, LINE, x, precision=6)
        assert ext.tail_slack == two_pow(6)
        assert ext.probe.get(0) == F(1, 2)


class TestRescaleEquivariance:
    def test_extension_of_rescaled_transports_back(self):
        rng = random.Random(31)
        for _ in range(20):
            # c plays the role of an upper norm bound, so keep c >= ||f||
            c = F(rng.randint(2, 8), 2)
            gens = (FinVec({0: 1, 1: F(1, 2)}),)
            value = F(rng.randint(-2, 2), 2)
            f = FunctionalPresentation({0: value}, 1)
            scaled = FunctionalPresentation({0: value / c}, F(1, 1))
            for chooser in (chooser_left, chooser_mid, chooser_right):
                ext = one_step_extend(
                    scaled, GeneratorSystem(gens), FinVec({1: 1}), chooser=chooser
                )
                back = rescale(ext.functional, 1 / c)
                assert back.value(0) == value
                # transported value stays admissible for the original problem
                direct = one_step_bounds(
                    FunctionalPresentation({0: value / c}, 1),
                    GeneratorSystem(gens),
                    FinVec({1: 1}),
                )
                assert direct.lo * c <= back.value(1) <= direct.hi * c


class TestExtendFull:
    def test_line_extension_midpoint_zeros(self):
        res = extend_full_l1(F_LINE, LINE, fuel=2, precision=10)
        assert [res.dual.coord(i) for i in range(4)] == [F(1), F(0), F(0), F(0)]
        assert res.complete

    def test_left_chooser_endpoints(self):
        res = extend_full_l1(F_LINE, LINE, fuel=2, precision=10, chooser=chooser_left)
        assert [res.dual.coord(i) for i in range(4)] == [F(1), F(-1), F(-1), F(-1)]

    def test_total_functional_reproduced(self):
        system = GeneratorSystem((FinVec({0: 1}), FinVec({1: 1})))
        f = FunctionalPresentation({0: F(1, 2), 1: F(-1, 3)}, 1)
        res = extend_full_l1(f, system, fuel=1, precision=10)
        assert res.dual.coord(0) == F(1, 2)
        assert res.dual.coord(1) == F(-1, 3)

    def test_agreement_with_generators_is_exact(self):
        gens = (FinVec({0: F(1, 2), 3: F(-1, 4)}), FinVec({1: 1, 2: F(1, 8)}))
        w = [F(1, 2), F(-1), F(3, 4), F(1, 5)]
        values = {
            j: sum((v * w[i] for i, v in g.items()), F(0)) for j, g in enumerate(gens)
        }
        f = FunctionalPresentation(values, 1)
        res = extend_full_l1(f, GeneratorSystem(gens), fuel=2, precision=12)
        for j, g in enumerate(gens):
            assert res.dual.pair_finite(g) == values[j]

    def test_uncovered_generator_flagged(self):
        system = GeneratorSystem((FinVec({0: 1, 9: F(1, 2)}),))
        f = FunctionalPresentation({0: 1}, 1)
        res = extend_full_l1(f, system, fuel=2, precision=10)
        assert not res.complete and res.uncovered == (0,)

    def test_sup_bound_holds(self):
        res = extend_full_l1(F_DIAG, DIAG, fuel=3, precision=10, chooser=chooser_right)
        assert max(abs(res.dual.coord(i)) for i in range(6)) <= 1


class TestExtendFindim:
    def test_unique_extension_diagonal(self):
        res = extend_findim(F_DIAG, DIAG, 2)
        assert res.functional.value(0) == 1 and res.functional.value(1) == 1
        assert res.one_step_calls == 1

    def test_full_space_is_identity(self):
        system = GeneratorSystem((FinVec({0: 1}), FinVec({1: 1})))
        f = FunctionalPresentation({0: F(1, 3), 1: F(-1, 2)}, 1)
        res = extend_findim(f, system, 2)
        assert res.one_step_calls == 0
        assert res.functional.value(0) == F(1, 3)
        assert res.functional.value(1) == F(-1, 2)

    def test_two_steps_from_line_in_r3(self):
        res = extend_findim(F_LINE, LINE, 3)
        assert res.one_step_calls == 2
        assert [res.functional.value(i) for i in range(3)] == [F(1), F(0), F(0)]

    def test_zero_subspace_rejected(self):
        f = FunctionalPresentation({0: 0}, 1)
        with pytest.raises(ValueError):
            extend_findim(f, GeneratorSystem((FinVec(),)), 2)

    def test_zero_bound_zero_functional(self):
        f = FunctionalPresentation({0: 0}, 0)
        res = extend_findim(f, LINE, 3)
        assert res.one_step_calls == 0
        assert all(res.functional.value(i) == 0 for i in range(3))

    def test_norm_bound_preserved_after_scaling(self):
        # presentation with bound 3/2, generator (1, 1), value 3
        f = FunctionalPresentation({0: 3}, F(3, 2))
        res = extend_findim(f, DIAG, 2)
        assert res.functional.bound == F(3, 2)
        assert res.functional.value(0) + res.functional.value(1) == 3
        assert max(abs(res.functional.value(i)) for i in range(2)) <= F(3, 2)

    def test_dependent_generators_consistent(self):
        gens = (FinVec({0: 1}), FinVec({0: 2}))
        f = FunctionalPresentation({0: F(1, 2), 1: 1}, 1)
        res = extend_findim(f, GeneratorSystem(gens), 2)
        assert res.functional.value(0) == F(1, 2)

    def test_dependent_generators_inconsistent_rejected(self):
        gens = (FinVec({0: 1}), FinVec({0: 2}))
        f = FunctionalPresentation({0: F(1, 2), 1: F(1, 2)}, 1)
        with pytest.raises(NormViolationError):
            extend_findim(f, GeneratorSystem(gens), 2)

    def test_call_counts_from_line(self):
        rng = random.Random(41)
        for n in range(2, 7):
            g = FinVec({i: F(rng.randint(-4, 4), 2) for i in range(n)})
            if g.is_zero():
                g = FinVec({0: 1})
            wts = [F(rng.randint(-4, 4), 4) for _ in range(n)]
            val = sum((v * wts[i] for i, v in g.items()), F(0))
            f = FunctionalPresentation({0: val}, 1)
            res = extend_findim(f, GeneratorSystem((g,)), n)
            assert res.one_step_calls == n - 1

    def test_call_counts_from_partial_basis(self):
        # span of the first m basis vectors needs exactly n - m steps
        rng = random.Random(43)
        for n in range(2, 7):
            for m in range(1, n + 1):
                gens = tuple(FinVec.unit(i) for i in range(m))
                f = FunctionalPresentation(
                    {i: F(rng.randint(-4, 4), 4) for i in range(m)}, 1
                )
                res = extend_findim(f, GeneratorSystem(gens), n)
                assert res.one_step_calls == n - m


class TestExtend2D:
    def test_both_positive(self):
        w = extend_2d_l1(FunctionalPresentation({0: 2}, 1), FinVec({0: 1, 1: 1}))
        assert (w.coord(0), w.coord(1)) == (F(1), F(1))

    def test_second_negative(self):
        w = extend_2d_l1(FunctionalPresentation({0: 2}, 1), FinVec({0: 1, 1: -1}))
        assert (w.coord(0), w.coord(1)) == (F(1), F(-1))

    def test_corner_tie_breaks_positive(self):
        w = extend_2d_l1(FunctionalPresentation({0: 1}, 1), FinVec({0: 1}))
        assert (w.coord(0), w.coord(1)) == (F(1), F(1))

    def test_negative_first_coordinate(self):
        # x = (-1, 1/2), f(x) = ||x|| = 3/2: weights follow the signs
        w = extend_2d_l1(
            FunctionalPresentation({0: F(3, 2)}, 1), FinVec({0: -1, 1: F(1, 2)})
        )
        assert (w.coord(0), w.coord(1)) == (F(-1), F(1))
        assert w.coord(0) * -1 + w.coord(1) * F(1, 2) == F(3, 2)

    def test_smaller_norm_scales_weights(self):
        w = extend_2d_l1(FunctionalPresentation({0: F(1, 2)}, 1), FinVec({0: 1}))
        assert (w.coord(0), w.coord(1)) == (F(1, 2), F(1, 2))
        assert w.bound == F(1, 2)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            extend_2d_l1(FunctionalPresentation({0: 1}, 1), FinVec())

    def test_vanishing_functional_rejected(self):
        with pytest.raises(ValueError):
            extend_2d_l1(FunctionalPresentation({0: 0}, 1), FinVec({0: 1}))

    def test_pairing_and_norm_exact(self):
        rng = random.Random(47)
        for _ in range(60):
            x = FinVec({0: F(rng.randint(-6, 6), 3), 1: F(rng.randint(-6, 6), 3)})
            if x.is_zero():
                continue
            sign = rng.choice((1, -1))
            f = FunctionalPresentation({0: sign * l1_norm(x)}, 1)
            w = extend_2d_l1(f, x)
            assert w.coord(0) * x.get(0) + w.coord(1) * x.get(1) == f.value(0)
            assert max(abs(w.coord(0)), abs(w.coord(1))) == 1


class TestConjugate2D:
    def test_corner_map_examples(self):
        assert linf_to_l1_pair(1, 1) == (0, 1)
        assert linf_to_l1_pair(1, -1) == (1, 0)

    def test_extension_and_norm(self):
        rng = random.Random(53)
        for _ in range(60):
            x = FinVec({0: F(rng.randint(-6, 6), 2), 1: F(rng.randint(-6, 6), 2)})
            if x.is_zero():
                continue
            norm = max(abs(x.get(0)), abs(x.get(1)))
            f = FunctionalPresentation({0: norm}, 1)
            conj = conjugate_2d_linf(f, x)
            g0, g1 = conj.functional.value(0), conj.functional.value(1)
            assert g0 * x.get(0) + g1 * x.get(1) == norm
            assert abs(g0) + abs(g1) == 1
            assert conj.functional.bound == 1
