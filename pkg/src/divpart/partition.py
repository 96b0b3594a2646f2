"""Exact bivariate coefficient tables for the weighted-part product

    prod over k >= 1 of (1 + u z^k)^(gap(k)),   gap(k) = sigma_r(k+1) - sigma_r(k),

truncated to z-degree <= n_max, together with the exact distribution of the
part count and two independent brute-force oracles.

Negative gaps are handled by the generalized binomial expansion of
(1 + u z^k)^d for d < 0; all coefficients stay integers.  The fast builder
packs each z-row's u-polynomial into a single big integer with balanced
base-2^L digits (Kronecker substitution), so the inner convolution is one
shifted multiply-add per expansion term.  A rigorous a-priori digit-width
bound plus an unpacked univariate cross-check rule out digit overflow.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import GapSequence


def general_binomial(d: int, m: int) -> int:
    """Binomial coefficient C(d, m) for any integer d and m >= 0."""
    if m < 0:
        raise ValueError("lower index must be >= 0")
    if m == 0:
        return 1
    if d >= 0:
        return math.comb(d, m) if m <= d else 0
    sign = -1 if m & 1 else 1
    return sign * math.comb(-d + m - 1, m)


def _expansion_terms(d: int, j: int, n_max: int) -> list[tuple[int, int]]:
    """Nonconstant terms (coefficient, u- and z^j-multiplicity) of
    (1 + u z^j)^d truncated to z-degree n_max."""
    m_cap = n_max // j
    if d > 0:
        m_cap = min(m_cap, d)
    return [(general_binomial(d, m), m) for m in range(1, m_cap + 1)]


@dataclass
class PartitionTable:
    """Triangular table coeff[n][k] of exact signed big-integer coefficients.

    row_totals[n] is the full row sum (the z^n coefficient at u = 1),
    cross-checked against an independent univariate build.
    """

    r: int
    n_max: int
    k_max: int
    coeff: list[list[int]]
    row_totals: list[int]
    gaps: tuple[int, ...] = field(repr=False)

    def value(self, n: int, k: int) -> int:
        if not 0 <= n <= self.n_max or k < 0:
            raise IndexError(f"(n, k) = ({n}, {k}) outside table")
        row = self.coeff[n]
        return row[k] if k < len(row) else 0

    def negative_cells(self, n: int) -> list[int]:
        return [k for k, c in enumerate(self.coeff[n]) if c < 0]

    def to_csv(self) -> str:
        lines = ["n,k,coefficient"]
        for n in range(self.n_max + 1):
            for k, c in enumerate(self.coeff[n]):
                if c != 0:
                    lines.append(f"{n},{k},{c}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "r": self.r,
            "n_max": self.n_max,
            "k_max": self.k_max,
            "entries": [
                [n, k, str(c)]
                for n in range(self.n_max + 1)
                for k, c in enumerate(self.coeff[n])
                if c != 0
            ],
            "row_totals": [str(t) for t in self.row_totals],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _digit_bits(gaps: tuple[int, ...], n_max: int) -> int:
    """Bit width L such that every intermediate coefficient fits a balanced
    base-2^L digit.

    Every partial product's |coefficient of z^n u^k| is bounded by the z^n
    coefficient of the absolute-value majorant
        prod_{gap>0} (1+z^j)^gap * prod_{gap<0} (1-z^j)^gap,
    all of whose coefficients are nonnegative, and [z^n] G <= G(z0)/z0^n
    for any 0 < z0 < 1.  Minimize the bound over a z0 grid.
    """
    best = float("inf")
    for i in range(1, 40):
        z0 = i / 40.0
        log_g = 0.0
        for j, d in enumerate(gaps[:n_max], start=1):
            zj = z0**j
            if zj < 1e-300:
                break
            if d > 0:
                log_g += d * math.log1p(zj)
            elif d < 0:
                log_g += -d * -math.log1p(-zj)
        bound = log_g - n_max * math.log(z0)
        best = min(best, bound)
    bits = int(best / math.log(2.0)) + 1
    return max(32, bits + 16)


def _unpack_row(packed: int, bits: int) -> list[int]:
    """Balanced base-2^bits digits of packed (signed coefficients)."""
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    x = packed
    while x:
        d = x & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        x = (x - d) >> bits
    return out if out else [0]


def _univariate_totals(gaps: tuple[int, ...], n_max: int) -> list[int]:
    """z^n coefficients of the u = 1 specialization, by an unpacked big-int
    knapsack (independent cross-check for row_totals)."""
    tot = [0] * (n_max + 1)
    tot[0] = 1
    for j in range(1, n_max + 1):
        d = gaps[j - 1]
        if d == 0:
            continue
        terms = _expansion_terms(d, j, n_max)
        for n in range(n_max, j - 1, -1):
            acc = tot[n]
            for c, m in terms:
                if j * m > n:
                    break
                acc += c * tot[n - j * m]
            tot[n] = acc
    return tot


def build_table(
    r: int,
    n_max: int,
    k_max: int | None = None,
    factor_order: list[int] | None = None,
) -> PartitionTable:
    """Exact coefficients of the truncated product, factors in any order.

    Cost is O(n_max^2 log n_max) big-integer multiply-adds on rows of
    ~k_max digits; memory is one packed integer per z-degree.
    """
    if r < 1 or n_max < 0:
        raise ValueError("build_table requires r >= 1 and n_max >= 0")
    if k_max is None:
        k_max = n_max
    gaps = GapSequence.build(r, max(n_max, 1)).gaps
    order = list(factor_order) if factor_order is not None else list(range(1, n_max + 1))
    if sorted(order) != list(range(1, n_max + 1)):
        raise ValueError("factor_order must be a permutation of 1..n_max")

    bits = _digit_bits(gaps, n_max) if n_max else 64
    rows = [0] * (n_max + 1)
    rows[0] = 1
    for j in order:
        d = gaps[j - 1]
        if d == 0:
            continue
        terms = _expansion_terms(d, j, n_max)
        shifted = [(c, bits * m, j * m) for c, m in terms]
        for n in range(n_max, j - 1, -1):
            acc = rows[n]
            for c, shift, dz in shifted:
                if dz > n:
                    break
                src = rows[n - dz]
                if src:
                    acc += c * (src << shift)
            rows[n] = acc

    coeff = []
    for n in range(n_max + 1):
        row = _unpack_row(rows[n], bits)
        if len(row) > k_max + 1:
            row = row[: k_max + 1]
        coeff.append(row)
    row_totals = _univariate_totals(gaps, n_max)
    packed_totals = [sum(_unpack_row(rows[n], bits)) for n in range(n_max + 1)]
    if packed_totals != row_totals:
        raise AssertionError(
            "packed rows disagree with the univariate specialization; "
            "digit-width bound violated"
        )
    return PartitionTable(
        r=r, n_max=n_max, k_max=k_max, coeff=coeff,
        row_totals=row_totals, gaps=gaps[:n_max],
    )


def permuted_build_matches(r: int, n_max: int, trials: int = 5, seed: int = 0) -> bool:
    """Factor-permutation invariance: shuffled factor orders give the same
    table (seeded shuffles for reproducibility)."""
    base = build_table(r, n_max)
    rng = random.Random(seed)
    order = list(range(1, n_max + 1))
    for _ in range(trials):
        rng.shuffle(order)
        if build_table(r, n_max, factor_order=order).coeff != base.coeff:
            return False
    return True


# ---------------------------------------------------------------------------
# Brute-force oracles
# ---------------------------------------------------------------------------

@dataclass
class OracleTables:
    """Results of the two independent oracle builds.

    enumeration is None when some gap is negative within range (the
    distinguishable-copy reading requires nonnegative multiplicities);
    naive is always present.
    """

    enumeration: PartitionTable | None
    naive: PartitionTable
    enumeration_refused: str | None = None


def _enumeration_table(r: int, n_max: int, gaps: tuple[int, ...]) -> PartitionTable | None:
    if any(g < 0 for g in gaps[:n_max]):
        return None
    # one 0/1 item per distinguishable copy of each part size
    items = [j for j in range(1, n_max + 1) for _ in range(gaps[j - 1])]
    dp = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    dp[0][0] = 1
    for w in items:
        for n in range(n_max, w - 1, -1):
            prev = dp[n - w]
            row = dp[n]
            for k in range(n_max, 0, -1):
                if prev[k - 1]:
                    row[k] += prev[k - 1]
    coeff = [list(_trim(dp[n])) for n in range(n_max + 1)]
    return PartitionTable(
        r=r, n_max=n_max, k_max=n_max, coeff=coeff,
        row_totals=[sum(row) for row in coeff], gaps=gaps[:n_max],
    )


def _trim(row: list[int]) -> list[int]:
    last = 0
    for i, v in enumerate(row):
        if v:
            last = i
    return row[: last + 1]


def _poly_mul_linear(poly: dict[tuple[int, int], int], j: int, n_max: int) -> dict:
    out = dict(poly)
    for (n, k), c in poly.items():
        if n + j <= n_max:
            key = (n + j, k + 1)
            out[key] = out.get(key, 0) + c
    return out


def _poly_mul_inverse(poly: dict[tuple[int, int], int], j: int, n_max: int) -> dict:
    # multiply by the truncated series (1 + u z^j)^(-1) = sum (-u)^m z^(jm)
    out: dict[tuple[int, int], int] = {}
    for (n, k), c in poly.items():
        m = 0
        while n + j * m <= n_max:
            key = (n + j * m, k + m)
            sign = -c if m & 1 else c
            out[key] = out.get(key, 0) + sign
            m += 1
    return {key: c for key, c in out.items() if c}


def _naive_table(r: int, n_max: int, gaps: tuple[int, ...]) -> PartitionTable:
    poly: dict[tuple[int, int], int] = {(0, 0): 1}
    for j in range(n_max, 0, -1):  # reversed factor order on purpose
        d = gaps[j - 1]
        if d > 0:
            for _ in range(d):
                poly = _poly_mul_linear(poly, j, n_max)
        elif d < 0:
            for _ in range(-d):
                poly = _poly_mul_inverse(poly, j, n_max)
    coeff: list[list[int]] = [[0] for _ in range(n_max + 1)]
    for (n, k), c in poly.items():
        row = coeff[n]
        if len(row) <= k:
            row.extend([0] * (k + 1 - len(row)))
        row[k] = c
    coeff = [_trim(row) for row in coeff]
    return PartitionTable(
        r=r, n_max=n_max, k_max=n_max, coeff=coeff,
        row_totals=[sum(row) for row in coeff], gaps=gaps[:n_max],
    )


def oracle_table(r: int, n_max: int) -> OracleTables:
    """Two independent slow builds for equality testing against build_table.

    (a) 0/1 take-or-skip counting over distinguishable part copies, which
    never touches binomial coefficients; (b) naive polynomial multiplication
    in reversed factor order, one linear (or truncated inverse-series)
    factor at a time.
    """
    if n_max > 14:
        raise ValueError("oracle_table is exponential-cost; n_max <= 14")
    gaps = GapSequence.build(r, max(n_max, 1)).gaps
    enum = _enumeration_table(r, n_max, gaps)
    refused = None
    if enum is None:
        first_neg = next(j for j in range(1, n_max + 1) if gaps[j - 1] < 0)
        refused = f"gap({first_neg}) = {gaps[first_neg - 1]} < 0"
    return OracleTables(
        enumeration=enum,
        naive=_naive_table(r, n_max, gaps),
        enumeration_refused=refused,
    )


def tables_equal(a: PartitionTable, b: PartitionTable) -> bool:
    """Entrywise exact equality of two tables over their common range."""
    if a.n_max != b.n_max:
        return False
    for n in range(a.n_max + 1):
        ka = len(a.coeff[n])
        kb = len(b.coeff[n])
        for k in range(max(ka, kb)):
            if a.value(n, k) != b.value(n, k):
                return False
    return True


# ---------------------------------------------------------------------------
# Exact distribution of the part count
# ---------------------------------------------------------------------------

@dataclass
class ExactDistribution:
    """Exact rational law of the part count on weight-n rows.

    pmf values are coeff/row_total and sum to 1 exactly whatever the signs;
    rows with negative cells are flagged and excluded from probabilistic
    downstream checks rather than rejected here.
    """

    n: int
    pmf: dict[int, Fraction]
    mean: Fraction
    variance: Fraction
    negativity_flags: list[int]
    total_positive: bool

    @property
    def negative_mass(self) -> Fraction:
        """Total signed defect: sum of |pmf[k]| over negative cells."""
        return -sum((p for p in self.pmf.values() if p < 0), Fraction(0))


def exact_distribution(table: PartitionTable, n: int) -> ExactDistribution:
    if n > table.n_max:
        raise ValueError(f"n = {n} beyond table range {table.n_max}")
    total = table.row_totals[n]
    if total == 0:
        raise ValueError(f"degenerate row: row total vanishes at n = {n}")
    stored = sum(table.coeff[n])
    if stored != total:
        raise ValueError(
            "row is k-truncated (k_max cap below the full length); "
            "exact distribution needs the uncapped table"
        )
    pmf = {
        k: Fraction(c, total) for k, c in enumerate(table.coeff[n]) if c != 0
    }
    mean = sum((k * p for k, p in pmf.items()), Fraction(0))
    second = sum((k * k * p for k, p in pmf.items()), Fraction(0))
    return ExactDistribution(
        n=n,
        pmf=pmf,
        mean=mean,
        variance=second - mean * mean,
        negativity_flags=sorted(k for k, c in enumerate(table.coeff[n]) if c < 0),
        total_positive=total > 0,
    )
