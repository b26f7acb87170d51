"""Exact codeword counting (exhaustive, systematic, half-rate, cyclic) and
the Sidel'nikov binomial approximation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Optional, Tuple

from . import gf2
from .codes import LinearCode
from .errors import BudgetExceeded, DimensionMismatch, NoDisjointForms
from .spectra import WeightSpectrum


class CountBudget:
    """Work meter: counts enumerated codewords, aborts past the cap."""

    def __init__(self, max_codewords: Optional[int] = None):
        self.max_codewords = max_codewords
        self.work = 0

    def charge(self, amount: int = 1, context: object = None) -> None:
        if self.max_codewords is not None and self.work + amount > self.max_codewords:
            raise BudgetExceeded(
                f"work {self.work}+{amount} exceeds budget {self.max_codewords}",
                context=context,
            )
        self.work += amount


def exhaustive_spectrum(
    code: LinearCode, budget: Optional[CountBudget] = None, dim_limit: int = 26
) -> WeightSpectrum:
    """Exact spectrum by Gray-code enumeration of all 2^k codewords."""
    if code.k > dim_limit:
        raise BudgetExceeded(
            f"dimension {code.k} exceeds exhaustive limit {dim_limit}", context=code
        )
    if budget is not None:
        budget.charge(1 << code.k, context=code)
    counts = [0] * (code.n + 1)
    rows = code.systematic[0].rows
    word = 0
    counts[0] += 1
    for m in range(1, 1 << code.k):
        word ^= rows[(m & -m).bit_length() - 1]
        counts[word.bit_count()] += 1
    return WeightSpectrum(code.n, tuple(counts))


def _encode_combo(rows: Tuple[int, ...], combo: Iterable[int]) -> int:
    c = 0
    for i in combo:
        c ^= rows[i]
    return c


def count_m1(code: LinearCode, w: int, budget: Optional[CountBudget] = None) -> int:
    """A_w by encoding every information vector of weight 1..w.

    Exact because systematic encoding makes codeword weight at least the
    information weight.  Work: sum_{i=1}^{w} C(k, i) encodings.
    """
    if not 0 <= w <= code.n:
        raise DimensionMismatch(f"weight {w} out of range 0..{code.n}")
    rows = code.systematic[0].rows
    if w == 0:
        if budget is not None:
            budget.charge(1)
        return 1
    count = 0
    for i in range(1, min(w, code.k) + 1):
        for combo in combinations(range(code.k), i):
            if budget is not None:
                budget.charge(1)
            if _encode_combo(rows, combo).bit_count() == w:
                count += 1
    return count


def _disjoint_systematic_rows(code: LinearCode) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    """Generator rows with identity on the pivot set and on its complement."""
    side_a = code.info_set
    side_b = tuple(c for c in range(code.n) if c not in set(side_a))
    sub = code.generator.column_select(side_b)
    if gf2.rank(sub) != code.k:
        raise NoDisjointForms("complement of the information set is not an information set")
    # Row-reduce pivoting on side_b columns only.
    rows = list(code.generator.rows)
    r = 0
    for col in side_b:
        src = next((i for i in range(r, len(rows)) if (rows[i] >> col) & 1), None)
        if src is None:
            raise NoDisjointForms("complement pivot vanished")  # pragma: no cover
        rows[r], rows[src] = rows[src], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
        r += 1
    rows_a = code.systematic[0].rows
    return rows_a, side_a, tuple(rows), side_b


def count_m2(code: LinearCode, w: int, budget: Optional[CountBudget] = None) -> int:
    """A_w for a half-rate code via two systematic forms on disjoint halves.

    Work equals 2*sum_{i=0}^{w/2-1} C(n/2, i) + C(n/2, w/2) encodings.
    """
    if w % 2:
        raise DimensionMismatch("half-rate split counting needs an even weight")
    if code.n != 2 * code.k:
        raise NoDisjointForms(f"[{code.n}, {code.k}] is not a half-rate code")
    rows_a, _, rows_b, _ = _disjoint_systematic_rows(code)
    half = w // 2
    count = 0
    for rows in (rows_a, rows_b):
        for i in range(half):
            for combo in combinations(range(code.k), i):
                if budget is not None:
                    budget.charge(1)
                if _encode_combo(rows, combo).bit_count() == w:
                    count += 1
    for combo in combinations(range(code.k), half):
        if budget is not None:
            budget.charge(1)
        if _encode_combo(rows_a, combo).bit_count() == w:
            count += 1
    return count


def least_rotation(bits: int, n: int) -> int:
    """Booth's algorithm: the start index of the least cyclic rotation."""
    s = [(bits >> (i % n)) & 1 for i in range(2 * n)]
    f = [-1] * (2 * n)
    least = 0
    for j in range(1, 2 * n):
        ch = s[j]
        i = f[j - least - 1]
        while i != -1 and ch != s[least + i + 1]:
            if ch < s[least + i + 1]:
                least = j - i - 1
            i = f[i]
        if ch != s[least + i + 1]:
            if ch < s[least + i + 1]:
                least = j
            f[j - least] = -1
        else:
            f[j - least] = i + 1
    return least % n


def _rotate(bits: int, shift: int, n: int) -> int:
    shift %= n
    mask = (1 << n) - 1
    return ((bits >> shift) | (bits << (n - shift))) & mask


def canonical_rotation(bits: int, n: int) -> Tuple[int, int]:
    """(least rotation of the word, number of distinct rotations)."""
    canon = _rotate(bits, least_rotation(bits, n), n)
    period = next(p for p in range(1, n + 1) if n % p == 0 and _rotate(canon, p, n) == canon)
    return canon, period


def count_m3(
    code: LinearCode,
    w: int,
    budget: Optional[CountBudget] = None,
    combo_order: Optional[Iterable[Tuple[int, ...]]] = None,
) -> int:
    """A_w for a cyclic code via the shift-window theorem: every weight-w
    codeword has a rotation with exactly r = floor(k*w/n) ones among its
    first k coordinates, so encoding the weight-r information vectors and
    expanding shift orbits (deduplicated by least rotation) is exhaustive.
    """
    if not code.is_cyclic():
        raise DimensionMismatch("shift-window counting requires a cyclic code")
    if code.info_set != tuple(range(code.k)):
        raise DimensionMismatch("generator is not systematic on the first k coordinates")
    if not 0 <= w <= code.n:
        raise DimensionMismatch(f"weight {w} out of range 0..{code.n}")
    rows = code.systematic[0].rows
    r = (code.k * w) // code.n
    found: Dict[int, int] = {}
    if combo_order is None:
        combo_order = combinations(range(code.k), r)
    for combo in combo_order:
        if budget is not None:
            budget.charge(1)
        c = _encode_combo(rows, combo)
        if c.bit_count() != w:
            continue
        canon, period = canonical_rotation(c, code.n)
        found[canon] = period
    return sum(found.values())


@dataclass(frozen=True)
class BinomialApproximation:
    """2^(-mt) C(n, j) as an exact rational, with its accuracy caveat.

    The relative error is bounded by K * n^(-1/10) for an unspecified
    constant K, so this is advisory only and is never fed into the exact
    pipelines; it fails badly at the spectrum tails.
    """

    value: Fraction
    relative_error_hint: float


def sidelnikov_approx(n: int, t: int, j: int) -> BinomialApproximation:
    """Binomial approximation of A_j for a BCH-like code of length 2^m - 1
    correcting t errors."""
    m = (n + 1).bit_length() - 1
    if (1 << m) - 1 != n:
        raise DimensionMismatch(f"length {n} is not of the form 2^m - 1")
    if not 0 <= j <= n:
        raise DimensionMismatch(f"weight {j} out of range 0..{n}")
    value = Fraction(math.comb(n, j), 1 << (m * t))
    return BinomialApproximation(value, n ** -0.1)
