"""The Q^(m) transformation.

Q^(m)_n is the quotient L^(m)(s_n)/L^(m)(1) where L^(m) is the difference
operator annihilating the first m remainder terms of the series.  Written
out, it is a normalized linear combination of the partial sums
s_n .. s_{n+mp} with polynomial weights

    lambda_j = C(mp, j) (-x)^{mp-j} prod_i (alpha_i+n+j)_{mp-j} (beta_i+n+m-1)_j.

Four equivalent evaluation paths are provided and cross-checked by the test
suite: the weight quotient (canonical), the remainder form of the weights'
partial tails, the explicit weighted forward-difference quotient, and (for
p = 2) the recursive operator scheme.  The exact-rational twins at the
bottom re-derive the weights independently with Fraction arithmetic for the
coefficient and degree identities.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp

from .numerics import HPComplex
from .series import SeriesDef, PartialSums, partial_sums, poch_product


class DegenerateDenominatorError(ArithmeticError):
    """The denominator polynomial is negligible against the weight scale."""


class UnsupportedShapeError(ValueError):
    """Operator path requested for a parameter shape it does not cover."""


class TablePath(enum.Enum):
    DIRECT = "direct"
    REMAINDER = "remainder"
    OPERATOR = "operator"
    RECURSION3F2 = "recursion3f2"


@dataclass(frozen=True)
class LambdaWeights:
    """Weights lambda_j and their partial tails M_k for one (m, n).

    M_k = sum_{j>=k} lambda_j, so M_0 is the denominator of the quotient
    and M_{mp} = lambda_{mp}.
    """

    m: int
    n: int
    lam: tuple
    M: tuple


@dataclass(frozen=True)
class LeadingCoeffs:
    """Leading coefficients c_j = C(mp, j)(-x)^{mp-j} of the weights.

    ``sum_residual`` and ``weighted_residual`` are the numeric residuals of
    the two binomial identities sum c_j = (1-x)^{mp} and sum c_j x^j = 0.
    """

    m: int
    p: int
    x: HPComplex
    c: tuple
    sum_residual: float
    weighted_residual: float


@dataclass
class QTable:
    """Triangular array of Q^(m)_n over a partial-sum budget.

    A cell (n, m) exists iff n >= 1, 0 <= m <= max_m and n + m*p <= budget;
    column m = 0 is the partial sums.  Degenerate cells hold None and are
    listed in ``flagged``.
    """

    series: SeriesDef
    budget: int
    max_m: int
    path: TablePath
    cells: dict = field(default_factory=dict)
    flagged: set = field(default_factory=set)

    @property
    def n_range(self):
        return (1, self.budget)

    def get(self, n: int, m: int) -> Optional[HPComplex]:
        return self.cells.get((n, m))

    def rows(self):
        p = self.series.p
        for n in range(1, self.budget + 1):
            yield n, [(m, self.cells.get((n, m)))
                      for m in range(self.max_m + 1) if n + m * p <= self.budget]


def lambda_weights(series: SeriesDef, m: int, n: int) -> LambdaWeights:
    """Weights lambda_j^(m)(n), j = 0..mp, and their exact partial tails."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    p = series.p
    mp_width = m * p
    prec = series.precision.working
    with mp.workdps(prec):
        av = [g.value for g in series.alpha]
        bv = [g.value for g in series.beta]
        xv = series.x.value
        lam = []
        for j in range(mp_width + 1):
            v = math.comb(mp_width, j) * (-xv) ** (mp_width - j)
            # fixed accumulation order: i ascending, factor ascending
            for a in av:
                for k in range(mp_width - j):
                    v = v * (a + (n + j + k))
            for b in bv:
                for k in range(j):
                    v = v * (b + (n + m - 1 + k))
            lam.append(v)
        tails = []
        acc = mp.mpc(0)
        for v in reversed(lam):
            acc = acc + v
            tails.append(acc)
        tails.reverse()
        return LambdaWeights(
            m=m, n=n,
            lam=tuple(HPComplex.from_mpc(v, prec) for v in lam),
            M=tuple(HPComplex.from_mpc(v, prec) for v in tails),
        )


def _check_denominator(weights: LambdaWeights):
    prec = max(v.precision for v in weights.lam)
    with mp.workdps(prec):
        scale = max(abs(v) for v in weights.lam) * len(weights.lam)
        if abs(weights.M[0]) < mp.mpf(10) ** (4 - prec) * scale:
            raise DegenerateDenominatorError(
                f"denominator M_0 negligible at (n={weights.n}, m={weights.m})"
            )


def q_direct(series: SeriesDef, sums: PartialSums, m: int, n: int) -> HPComplex:
    """Canonical path: Q^(m)_n = sum_j lambda_j s_{n+j} / sum_j lambda_j."""
    if m == 0:
        return sums.s[n]
    w = lambda_weights(series, m, n)
    _check_denominator(w)
    mp_width = m * series.p
    if n + mp_width >= len(sums.s):
        raise ValueError(f"partial sums cover only s_0..s_{len(sums.s)-1}")
    num = HPComplex(0, 0, series.precision.working)
    for j in range(mp_width + 1):
        num = num + w.lam[j] * sums.s[n + j]
    return num / w.M[0]


def q_remainder_form(series: SeriesDef, sums: PartialSums, m: int, n: int) -> HPComplex:
    """Remainder path: Q^(m)_n = s_n + sum_k (M_{k+1}/M_0) a_{n+k}."""
    if m == 0:
        return sums.s[n]
    w = lambda_weights(series, m, n)
    _check_denominator(w)
    mp_width = m * series.p
    out = sums.s[n]
    for k in range(mp_width):
        out = out + (w.M[k + 1] / w.M[0]) * sums.a[n + k]
    return out


def _operator_weights(series: SeriesDef, m: int, n: int):
    """Window of w_nu = [beta]_{nu+m-1} / ([alpha]_nu x^nu), rescaled.

    The common rescaling keeps magnitudes tame; it cancels in the quotient.
    """
    p = series.p
    prec = series.precision.working
    vals = []
    with mp.workdps(prec):
        for j in range(m * p + 1):
            nu = n + j
            w = poch_product(series.beta, nu + m - 1) / (
                poch_product(series.alpha, nu) * series.x ** nu
            )
            vals.append(w)
        scale = max(abs(v) for v in vals)
        if scale == 0:
            raise DegenerateDenominatorError("operator weights vanish")
        vals = [v / HPComplex.from_mpc(scale, prec) for v in vals]
    return vals


def _forward_diff(samples):
    out = list(samples)
    while len(out) > 1:
        out = [out[i + 1] - out[i] for i in range(len(out) - 1)]
    return out[0]


def l_ratio(series: SeriesDef, sums: PartialSums, m: int, n: int) -> HPComplex:
    """Operator path: Delta^{mp}(w_nu s_nu) / Delta^{mp}(w_nu) at nu = n."""
    if m == 0:
        return sums.s[n]
    w = _operator_weights(series, m, n)
    num = _forward_diff([w[j] * sums.s[n + j] for j in range(len(w))])
    den = _forward_diff(w)
    prec = series.precision.working
    with mp.workdps(prec):
        scale = max(abs(v) for v in w) * len(w)
        if abs(den) < mp.mpf(10) ** (4 - prec) * scale:
            raise DegenerateDenominatorError(
                f"difference denominator negligible at (n={n}, m={m})"
            )
    return num / den


def p_apply_3f2(series: SeriesDef, z: Sequence, m: int, n: int) -> HPComplex:
    """One application of the specialized p=2 operator P^(m) at index n.

    ``z`` must support indexing at n, n+1, n+2.  Combined coefficients:
    the z_n term carries x^2 and two length-2 rising factorials in the
    alpha parameters, the z_{n+1} term -2x and the mixed product, the
    z_{n+2} term the four shifted beta factors.
    """
    if series.p != 2:
        raise UnsupportedShapeError("the specialized operator requires p = 2")
    a1, a2 = series.alpha
    b1, b2 = series.beta
    x = series.x
    c0 = (x ** 2
          * (a1 + (n + 2 * m - 2)) * (a1 + (n + 2 * m - 1))
          * (a2 + (n + 2 * m - 2)) * (a2 + (n + 2 * m - 1)))
    c1 = (HPComplex(-2, 0, x.precision) * x
          * (a1 + (n + 2 * m - 1)) * (a2 + (n + 2 * m - 1))
          * ((b1 + (n + 2 * m - 2)) * (b2 + (n + 2 * m - 2)) - (m * m - m)))
    c2 = ((b1 + (n + m - 1)) * (b2 + (n + m - 1))
          * (b1 + (n + 3 * m - 2)) * (b2 + (n + 3 * m - 2)))
    return c0 * z[n] + c1 * z[n + 1] + c2 * z[n + 2]


def _recursion_3f2(series: SeriesDef, sums: PartialSums, budget: int, max_m: int):
    """Numerator/denominator columns N^(m), D^(m) per the recursive scheme."""
    prec = series.precision.working
    one = HPComplex(1, 0, prec)
    N = {n: sums.s[n] for n in range(1, budget + 1)}
    D = {n: one for n in range(1, budget + 1)}
    columns = {}
    for m in range(1, max_m + 1):
        N = {n: p_apply_3f2(series, N, m, n)
             for n in range(1, budget - 2 * m + 1)}
        D = {n: p_apply_3f2(series, D, m, n)
             for n in range(1, budget - 2 * m + 1)}
        columns[m] = (N, D)
    return columns


def q_table(series: SeriesDef, budget: int, max_m: int,
            path: TablePath = TablePath.DIRECT) -> QTable:
    """All cells (n, m) with 1 <= n, 0 <= m <= max_m, n + mp <= budget.

    Degenerate denominators flag the cell instead of aborting the table.
    """
    p = series.p
    if budget < 1 + p * max_m:
        raise ValueError(f"budget {budget} too small for max_m {max_m} at p={p}")
    if path is TablePath.RECURSION3F2 and p != 2:
        raise UnsupportedShapeError("recursion3f2 path requires p = 2")
    sums = partial_sums(series, budget)
    table = QTable(series=series, budget=budget, max_m=max_m, path=path)
    for n in range(1, budget + 1):
        table.cells[(n, 0)] = sums.s[n]
    if path is TablePath.RECURSION3F2:
        columns = _recursion_3f2(series, sums, budget, max_m)
        prec = series.precision.working
        for m, (N, D) in columns.items():
            for n in N:
                with mp.workdps(prec):
                    if abs(D[n]) == 0:
                        table.cells[(n, m)] = None
                        table.flagged.add((n, m))
                        continue
                table.cells[(n, m)] = N[n] / D[n]
        return table
    evaluate = {
        TablePath.DIRECT: q_direct,
        TablePath.REMAINDER: q_remainder_form,
        TablePath.OPERATOR: l_ratio,
    }[path]
    for m in range(1, max_m + 1):
        for n in range(1, budget - m * p + 1):
            try:
                table.cells[(n, m)] = evaluate(series, sums, m, n)
            except DegenerateDenominatorError:
                table.cells[(n, m)] = None
                table.flagged.add((n, m))
    return table


def annihilation_residual(series: SeriesDef, m: int, n: int) -> float:
    """Relative residual of the defining identity L^(m)(a_n+...+a_{n+m-1}) = 0.

    Applies the weighted forward difference to the finite-remainder window
    z_nu = a_nu + ... + a_{nu+m-1} and normalizes by the largest
    contributing summand, so the result is dimensionless and 0 up to
    rounding.  The window is summed from the terms directly (never as a
    difference of partial sums) to keep full relative accuracy when the
    terms are many orders below the sum.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    p = series.p
    sums = partial_sums(series, n + m * p + m)
    w = _operator_weights(series, m, n)
    prec = series.precision.working
    with mp.workdps(prec):
        def window(nu):
            total = sums.a[nu]
            for k in range(1, m):
                total = total + sums.a[nu + k]
            return total

        samples = [w[j] * window(n + j) for j in range(len(w))]
        total = _forward_diff(samples)
        # scale: largest signed binomial summand of the expanded difference
        mp_width = m * p
        scale = max(
            math.comb(mp_width, j) * abs(samples[j]) for j in range(len(samples))
        )
        if scale == 0:
            return 0.0
        return float(abs(total) / scale)


def leading_coeffs(m: int, p: int, x: HPComplex) -> LeadingCoeffs:
    """c_j = C(mp, j)(-x)^{mp-j}, with both binomial identities as residuals."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be >= 1")
    mp_width = m * p
    prec = x.precision
    c = tuple(
        HPComplex(math.comb(mp_width, j), 0, prec) * (-x) ** (mp_width - j)
        for j in range(mp_width + 1)
    )
    with mp.workdps(prec):
        total = HPComplex(0, 0, prec)
        weighted = HPComplex(0, 0, prec)
        for j, cj in enumerate(c):
            total = total + cj
            weighted = weighted + cj * x ** j
        expected = (HPComplex(1, 0, prec) - x) ** mp_width
        scale = max(abs(cj) for cj in c)
        sum_res = float(abs(total - expected) / scale) if scale else 0.0
        weighted_res = float(abs(weighted) / scale) if scale else 0.0
    return LeadingCoeffs(m=m, p=p, x=x, c=c,
                         sum_residual=sum_res, weighted_residual=weighted_res)


# -- exact-rational twins ----------------------------------------------

def leading_coeffs_exact(m: int, p: int, x: Fraction):
    """Exact c_j together with the two identity checks, all in Fractions."""
    mp_width = m * p
    c = [Fraction(math.comb(mp_width, j)) * (-x) ** (mp_width - j)
         for j in range(mp_width + 1)]
    sum_ok = sum(c) == (1 - x) ** mp_width
    weighted_ok = sum(cj * x ** j for j, cj in enumerate(c)) == 0
    return c, sum_ok, weighted_ok


def _poch_exact(g: Fraction, start: Fraction, count: int) -> Fraction:
    out = Fraction(1)
    for k in range(count):
        out *= g + start + k
    return out


def lambda_weights_exact(alpha, beta, x: Fraction, m: int, n) -> list:
    """Exact-rational evaluation of the weights at integer (or rational) n."""
    p = len(alpha)
    mp_width = m * p
    out = []
    for j in range(mp_width + 1):
        v = Fraction(math.comb(mp_width, j)) * (-x) ** (mp_width - j)
        for a in alpha:
            v *= _poch_exact(Fraction(a), Fraction(n + j), mp_width - j)
        for b in beta:
            v *= _poch_exact(Fraction(b), Fraction(n + m - 1), j)
        out.append(v)
    return out


def annihilation_residual_exact(alpha, beta, x: Fraction, m: int, n: int) -> Fraction:
    """Exact-rational residual of the annihilation identity (always 0).

    Uses the weight form of the operator: sum_j lambda_j (s_{n+j+m} - s_{n+j}).
    """
    alpha = [Fraction(a) for a in alpha]
    beta = [Fraction(b) for b in beta]
    p = len(alpha)
    top = n + m * p + m
    # exact terms and partial sums
    a = [Fraction(1)]
    for k in range(top):
        ratio = Fraction(x)
        for ai in alpha:
            ratio *= ai + k
        for bi in beta:
            ratio /= bi + k
        a.append(a[-1] * ratio)
    s = [Fraction(0)]
    for t in a:
        s.append(s[-1] + t)
    lam = lambda_weights_exact(alpha, beta, Fraction(x), m, n)
    return sum(lam[j] * (s[n + j + m] - s[n + j]) for j in range(len(lam)))


@dataclass(frozen=True)
class DegreeCheck:
    """Outcome of the exact-rational degree check on the weights.

    Truthy iff every lambda_j has degree exactly mp^2 in n with leading
    coefficient c_j, and (when x != 1) M_0 keeps that full degree.  At
    x = 1 the denominator drops degree; ``m0_degree_drop`` reports it.
    """

    lambda_ok: bool
    m0_full_degree: bool
    m0_degree_drop: bool

    def __bool__(self):
        return self.lambda_ok and (self.m0_full_degree or self.m0_degree_drop)


def lambda_degree_check(m: int, p: int, alpha, beta, x: Fraction) -> DegreeCheck:
    """Verify deg lambda_j = mp^2 with leading coefficient c_j, exactly.

    Samples the weights at mp^2 + 2 integer points; the (mp^2+1)-th finite
    difference must vanish and the mp^2-th must equal (mp^2)! c_j.
    """
    x = Fraction(x)
    alpha = [Fraction(a) for a in alpha]
    beta = [Fraction(b) for b in beta]
    deg = m * p * p
    if deg > 64:
        raise ValueError("degree check limited to m*p^2 <= 64")
    points = [lambda_weights_exact(alpha, beta, x, m, n) for n in range(deg + 2)]
    c, _, _ = leading_coeffs_exact(m, p, x)
    fact = math.factorial(deg)

    def diffs(samples, order):
        out = list(samples)
        for _ in range(order):
            out = [out[i + 1] - out[i] for i in range(len(out) - 1)]
        return out

    lambda_ok = True
    for j in range(m * p + 1):
        col = [pt[j] for pt in points]
        top = diffs(col, deg + 1)
        lead = diffs(col, deg)
        if any(v != 0 for v in top) or any(v != fact * c[j] for v in lead):
            lambda_ok = False
            break
    m0 = [sum(pt) for pt in points]
    m0_lead = diffs(m0, deg)
    m0_full = all(v == fact * sum(c) for v in m0_lead) and sum(c) != 0
    m0_drop = all(v == 0 for v in m0_lead)
    return DegreeCheck(lambda_ok=lambda_ok,
                       m0_full_degree=m0_full,
                       m0_degree_drop=m0_drop)
