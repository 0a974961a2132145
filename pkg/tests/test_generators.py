import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pixtile.engine import run
from pixtile.generators import (
    EVEN_COLOR,
    ODD_COLOR,
    ShiftSpec,
    expected_tile_count,
    gen_nonuniform,
    gen_transform,
    gen_uniform,
    nonuniform_oracle,
    uniform_oracle,
    wrap1,
)
from pixtile.tilefile import emit

from bruteforce import brute_assemble

# the published 11-tile listing for N=4, S=1
LISTING_N4_S1 = [
    ((5, 0, 0, 5), ODD_COLOR),
    ((2, 5, 0, 6), EVEN_COLOR),
    ((3, 6, 0, 7), ODD_COLOR),
    ((4, 7, 0, 8), EVEN_COLOR),
    ((6, 0, 5, 4), EVEN_COLOR),
    ((7, 0, 6, 3), ODD_COLOR),
    ((8, 0, 7, 2), EVEN_COLOR),
    ((1, 4, 2, 1), ODD_COLOR),
    ((2, 1, 3, 2), EVEN_COLOR),
    ((3, 2, 4, 3), ODD_COLOR),
    ((4, 3, 1, 4), EVEN_COLOR),
]


class TestWrap1:
    def test_zero_wraps_to_modulus(self):
        assert wrap1(0, 4) == 4

    def test_above_modulus(self):
        assert wrap1(5, 4) == 1

    def test_negative(self):
        # frozen against repeated +/- n normalization (see property below)
        assert wrap1(-1, 4) == 3

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            wrap1(3, 0)

    @given(st.integers(-200, 200), st.integers(1, 64))
    def test_matches_repeated_normalization(self, x, n):
        expected = x
        while expected < 1:
            expected += n
        while expected > n:
            expected -= n
        assert wrap1(x, n) == expected


class TestUniform:
    def test_published_listing(self):
        system, layout = gen_uniform(4, 1)
        assert [(t.edges, t.color) for t in system.tiles] == LISTING_N4_S1
        assert layout.roles == ("seed",) + ("base_row",) * 3 + \
            ("base_column",) * 3 + ("rule",) * 4
        assert system.seed_id == 0 and system.temperature == 2

    def test_rule_io_recorded(self):
        _, layout = gen_uniform(4, 1)
        # {1 4 2 1}: reads south 2 and east 4, writes 1
        assert layout.rule_io[7] == (2, 4, 1)

    def test_zero_shift_identity_rules(self):
        system, layout = gen_uniform(2, 0)
        assert len(system.tiles) == 5
        for tid, (x, _, op) in layout.rule_io.items():
            assert op == x

    def test_n6_s2_count(self):
        system, _ = gen_uniform(6, 2)
        assert len(system.tiles) == 17

    def test_count_formula_sweep(self):
        for n in range(2, 65):
            for s in (0, 1, n - 1):
                system, _ = gen_uniform(n, s)
                assert len(system.tiles) == 3 * n - 1

    def test_shift_normalized(self):
        a, _ = gen_uniform(5, 2)
        b, _ = gen_uniform(5, 7)
        c, _ = gen_uniform(5, -3)
        assert a == b == c

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            gen_uniform(1, 0)


class TestUniformOracle:
    def test_first_row_of_n4_s1(self):
        assert [uniform_oracle(4, 1, 1, c) for c in range(1, 4)] == [1, 2, 3]

    def test_r2_c1(self):
        assert uniform_oracle(4, 1, 2, 1) == 4

    def test_zero_shift_copies_base_row(self):
        for n in (2, 5, 9):
            for r in range(1, n):
                for c in range(1, n):
                    assert uniform_oracle(n, 0, r, c) == c + 1

    def test_boundaries(self):
        assert uniform_oracle(4, 1, 0, 0) == 5
        assert uniform_oracle(4, 1, 0, 2) == 3
        assert uniform_oracle(4, 1, 3, 0) == 8

    def test_out_of_square(self):
        with pytest.raises(ValueError):
            uniform_oracle(4, 1, 4, 0)
        with pytest.raises(ValueError):
            uniform_oracle(4, 1, 0, -1)

    @given(st.integers(2, 12), st.integers(-30, 30))
    def test_shift_reduction_invariance(self, n, s):
        for r in range(n):
            for c in range(n):
                assert uniform_oracle(n, s, r, c) == \
                    uniform_oracle(n, s % n, r, c)

    def test_matches_brute_force_assembly(self):
        system, _ = gen_uniform(4, 1)
        placed, nondet = brute_assemble(system)
        assert not nondet and len(placed) == 16
        for (r, c), tid in placed.items():
            assert system.tiles[tid].edges[0] == uniform_oracle(4, 1, r, c)


class TestNonuniform:
    def test_example_counts(self):
        system, _ = gen_nonuniform(6, [2, 3, 1, 2, 3])
        assert len(system.tiles) == 29  # 11 boundary+seed, 18 rule tiles
        rules = [t for t in system.tiles if t.id >= 11]
        assert len(rules) == 18

    def test_constant_shifts_match_uniform(self, backend):
        for n, s in ((4, 1), (5, 3), (6, 0)):
            uni, _ = gen_uniform(n, s)
            non, _ = gen_nonuniform(n, [s] * (n - 1))
            a = run(uni, backend=backend).assembly
            b = run(non, backend=backend).assembly
            assert {site: uni.tiles[t].edges[0] for site, t in a.placed.items()} \
                == {site: non.tiles[t].edges[0] for site, t in b.placed.items()}

    def test_n2_single_shift(self):
        system, _ = gen_nonuniform(2, [1])
        assert len(system.tiles) == 5

    def test_wrong_arity(self):
        with pytest.raises(ValueError):
            gen_nonuniform(6, [1, 2])

    def test_cumulative_offsets(self):
        shifts = [2, 3, 1, 2, 3]
        offsets = [sum(shifts[:r]) % 6 for r in range(1, 6)]
        assert offsets == [2, 5, 0, 2, 5]
        # row 3 equals the base row (cumulative shift 0)
        for c in range(1, 6):
            assert nonuniform_oracle(6, shifts, 3, c) == \
                nonuniform_oracle(6, shifts, 0, c)

    def test_row1_is_base_row_shifted_by_first(self):
        shifts = [2, 3, 1, 2, 3]
        for c in range(1, 6):
            assert nonuniform_oracle(6, shifts, 1, c) == \
                wrap1(nonuniform_oracle(6, shifts, 0, c) - shifts[0], 6)

    def test_matches_brute_force_assembly(self):
        shifts = [2, 3, 1, 2, 3]
        system, _ = gen_nonuniform(6, shifts)
        placed, nondet = brute_assemble(system)
        assert not nondet and len(placed) == 36
        for (r, c), tid in placed.items():
            assert system.tiles[tid].edges[0] == \
                nonuniform_oracle(6, shifts, r, c)

    @given(n=st.integers(2, 8), data=st.data())
    @settings(max_examples=40, deadline=None,
              suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_lemma_rows_are_value_shifted_base_rows(self, backend, n, data):
        shifts = data.draw(st.lists(st.integers(-n, 2 * n),
                                    min_size=n - 1, max_size=n - 1))
        system, _ = gen_nonuniform(n, shifts)
        result = run(system, backend=backend)
        grid = {site: system.tiles[t].edges[0]
                for site, t in result.assembly.placed.items()}
        for r in range(1, n):
            offset = sum(shifts[:r])
            for c in range(1, n):
                assert grid[(r, c)] == wrap1(grid[(0, c)] - offset, n)


class TestTransform:
    def test_zero_rotation_identity(self):
        a, _ = gen_nonuniform(6, [1, 2, 3, 1, 2])
        b, _ = gen_transform(6, [1, 2, 3, 1, 2], 0)
        assert emit(a) == emit(b)

    def test_full_cycle_identity(self):
        a, _ = gen_transform(5, [1, 2, 0, 3], 0)
        b, _ = gen_transform(5, [1, 2, 0, 3], 5)
        assert a == b

    def test_rotation_shifts_every_pattern_value(self, backend):
        shifts = [1, 1, 1]
        plain, _ = gen_nonuniform(4, shifts)
        rotated, _ = gen_transform(4, shifts, 1)
        a = run(plain, backend=backend).assembly
        b = run(rotated, backend=backend).assembly
        assert set(a.placed) == set(b.placed)
        for site in a.placed:
            va = plain.tiles[a.placed[site]].edges[0]
            vb = rotated.tiles[b.placed[site]].edges[0]
            if site.col >= 1:
                assert vb == wrap1(va - 1, 4), site
            else:
                assert vb == va, site


class TestExpectedTileCount:
    def test_uniform_examples(self):
        assert expected_tile_count(ShiftSpec.uniform(4, 1)) == 11
        assert expected_tile_count(ShiftSpec.uniform(6, 2)) == 17

    def test_per_row_example(self):
        spec = ShiftSpec.per_row(6, (2, 3, 1, 2, 3))
        assert expected_tile_count(spec) == 29

    def test_matches_generators(self):
        for n in range(2, 12):
            s, _ = gen_uniform(n, 1)
            assert len(s.tiles) == expected_tile_count(ShiftSpec.uniform(n, 1))
        spec = ShiftSpec.per_row(5, (1, 1, 3, 3))
        s, _ = gen_nonuniform(5, [1, 1, 3, 3])
        assert len(s.tiles) == expected_tile_count(spec) == 1 + 8 + 10

    def test_per_row_arity_checked(self):
        with pytest.raises(ValueError):
            ShiftSpec.per_row(6, (1, 2))
