import pytest
from mpmath import mp

from qaccel.numerics import HPComplex, PrecisionConfig, parse_number, relative_error
from qaccel.series import SeriesDef, PartialSums, partial_sums
from qaccel.classic import (
    EpsilonTable,
    LevinSpec,
    LevinVariant,
    DegenerateAitkenError,
    epsilon_table,
    levin,
    aitken,
)
from qaccel.diagnostics import acc

CFG = PrecisionConfig(digits=32, guard=10)
P = CFG.working


def hp(text):
    return parse_number(text, CFG)


def tol(offset=6):
    with mp.workdps(P):
        return mp.mpf(10) ** (offset - P)


def geometric(x="1/3", terms=12):
    # alpha = beta makes the term ratio exactly x
    s = SeriesDef((hp("5/7"),), (hp("5/7"),), hp(x), CFG)
    return s, partial_sums(s, terms)


def shifted(sums, c, d):
    return PartialSums(
        s=tuple(c * v + d for v in sums.s),
        a=tuple(c * v for v in sums.a),
    )


class TestEpsilon:
    def test_column_zero_is_partial_sums(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 8)
        table = epsilon_table(sums, 2)
        for n in range(9):
            assert table.get(n, 0) == sums.s[n]

    def test_geometric_column_two_exact(self):
        _, sums = geometric()
        table = epsilon_table(sums, 1)
        limit = hp("3/2")  # 1/(1 - 1/3)
        for n in range(1, 8):
            assert relative_error(table.get(n, 2), limit) < tol()

    def test_insufficient_depth(self):
        _, sums = geometric(terms=3)
        with pytest.raises(ValueError):
            epsilon_table(sums, 4)

    def test_constant_sequence_flagged(self):
        one = HPComplex(1, 0, P)
        zero = HPComplex(0, 0, P)
        sums = PartialSums(s=(one,) * 6, a=(zero,) * 5)
        table = epsilon_table(sums, 1)
        assert table.flagged
        assert all(table.get(n, 2) is None for n in range(4))

    def test_translative_even_columns(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 14)
        c, d = hp("1.5-0.5i"), hp("-2.25")
        t1 = epsilon_table(sums, 3)
        t2 = epsilon_table(shifted(sums, c, d), 3)
        for n in range(2, 6):
            for k in (2, 4, 6):
                assert relative_error(t2.get(n, k), c * t1.get(n, k) + d) < tol(8)


class TestLevin:
    def test_order_zero(self, ex2):
        series, _ = ex2
        sums = partial_sums(series, 5)
        assert levin(sums, LevinSpec(), 0, 3) == sums.s[3]

    def test_t_variant_geometric_exact(self):
        _, sums = geometric()
        limit = hp("3/2")
        for m in (1, 2, 3):
            got = levin(sums, LevinSpec(LevinVariant.T), m, 2)
            assert relative_error(got, limit) < tol()

    def test_u_variant_accelerates_ex2(self, ex2):
        series, limit = ex2
        sums = partial_sums(series, 20)
        base = acc(sums.s[8], limit, CFG)
        got = acc(levin(sums, LevinSpec(LevinVariant.U), 8, 8), limit, CFG)
        assert got > base + 3

    def test_variants_agree_on_limit(self, ex1):
        series, limit = ex1
        sums = partial_sums(series, 25)
        for variant in LevinVariant:
            got = levin(sums, LevinSpec(variant), 10, 5)
            assert acc(got, limit, CFG) > 8

    def test_zero_omega_rejected(self):
        one = HPComplex(1, 0, P)
        zero = HPComplex(0, 0, P)
        sums = PartialSums(s=(one,) * 6, a=(zero,) * 5)
        with pytest.raises(ZeroDivisionError):
            levin(sums, LevinSpec(), 2, 1)

    def test_translative(self, ex2):
        series, _ = ex2
        sums = partial_sums(series, 15)
        c, d = hp("0.75+0.25i"), hp("10")
        for variant in (LevinVariant.T, LevinVariant.U):
            a = levin(sums, LevinSpec(variant), 4, 3)
            b = levin(shifted(sums, c, d), LevinSpec(variant), 4, 3)
            assert relative_error(b, c * a + d) < tol(8)


class TestAitken:
    def test_zero_iterations(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 6)
        assert aitken(sums, 0, 4) == sums.s[4]

    def test_geometric_exact(self):
        _, sums = geometric()
        limit = hp("3/2")
        for n in range(1, 8):
            assert relative_error(aitken(sums, 1, n), limit) < tol()

    def test_one_step_matches_epsilon_two(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 12)
        table = epsilon_table(sums, 1)
        for n in range(1, 8):
            a = aitken(sums, 1, n)
            e = table.get(n, 2)
            assert relative_error(a, e) < tol(8)

    def test_iterated_accelerates_ex1(self, ex1):
        series, limit = ex1
        sums = partial_sums(series, 20)
        base = acc(sums.s[5], limit, CFG)
        got = acc(aitken(sums, 4, 5), limit, CFG)
        assert got > base + 4

    def test_constant_sequence_raises(self):
        one = HPComplex(1, 0, P)
        zero = HPComplex(0, 0, P)
        sums = PartialSums(s=(one,) * 6, a=(zero,) * 5)
        with pytest.raises(DegenerateAitkenError):
            aitken(sums, 1, 0)

    def test_negative_iterations(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 6)
        with pytest.raises(ValueError):
            aitken(sums, -1, 0)

    def test_translative(self, ex1):
        series, _ = ex1
        sums = partial_sums(series, 16)
        c, d = hp("-1.25"), hp("0.5+0.5i")
        a = aitken(sums, 3, 4)
        b = aitken(shifted(sums, c, d), 3, 4)
        assert relative_error(b, c * a + d) < tol(8)
