"""Exact weight-enumerator algebra over arbitrary-precision integers.

Everything here is exact: spectra are big-integer vectors, linear systems
are solved over rationals, and no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    DivisibilityFailure,
    EmptyInterval,
    Inconsistent,
    NegativeCoefficient,
    NonIntegerResult,
    NotMonomial,
    Underflow,
)


@dataclass(frozen=True)
class WeightSpectrum:
    """Exact coefficients A_0..A_n of a weight enumerator."""

    n: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise DimensionMismatch(f"need {self.n + 1} coefficients")
        if any(c < 0 for c in self.counts):
            raise NegativeCoefficient("negative spectrum coefficient")

    @classmethod
    def from_dict(cls, n: int, coeffs: Mapping[int, int]) -> "WeightSpectrum":
        counts = [0] * (n + 1)
        for w, c in coeffs.items():
            if not 0 <= w <= n:
                raise DimensionMismatch(f"weight {w} out of range 0..{n}")
            counts[w] = int(c)
        return cls(n, tuple(counts))

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> "SupportSpectrum":
        return SupportSpectrum(self.n, frozenset(w for w, c in enumerate(self.counts) if c))

    def nonzero(self) -> Dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": {str(w): str(c) for w, c in self.nonzero().items()}}

    @classmethod
    def from_json(cls, data: dict) -> "WeightSpectrum":
        return cls.from_dict(int(data["n"]), {int(w): int(c) for w, c in data["coeffs"].items()})


@dataclass(frozen=True)
class SupportSpectrum:
    """Presence bits P_i: which weights occur in a code."""

    n: int
    present: FrozenSet[int]

    def __post_init__(self):
        if any(not 0 <= w <= self.n for w in self.present):
            raise DimensionMismatch("support weight out of range")

    def __contains__(self, w: int) -> bool:
        return w in self.present

    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted(self.present))

    @classmethod
    def from_weights(cls, n: int, weights: Iterable[int]) -> "SupportSpectrum":
        return cls(n, frozenset(weights))


@dataclass(frozen=True)
class ParameterCongruence:
    """A residue class for one free parameter: z = offset + modulus * eta."""

    param: str
    offset: int
    modulus: int
    eta_min: Optional[int] = None
    eta_max: Optional[int] = None

    def __post_init__(self):
        if self.modulus <= 0 or not 0 <= self.offset < self.modulus:
            raise DimensionMismatch("offset must lie in [0, modulus)")

    def value_at(self, eta: int) -> int:
        return self.offset + eta * self.modulus

    def with_bounds(self, eta_min: Optional[int], eta_max: Optional[int]) -> "ParameterCongruence":
        return replace(self, eta_min=eta_min, eta_max=eta_max)

    def to_json(self) -> dict:
        out = {"param": self.param, "offset": str(self.offset), "modulus": str(self.modulus)}
        if self.eta_min is not None:
            out["eta_min"] = str(self.eta_min)
        if self.eta_max is not None:
            out["eta_max"] = str(self.eta_max)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ParameterCongruence":
        return cls(
            data["param"],
            int(data["offset"]),
            int(data["modulus"]),
            int(data["eta_min"]) if "eta_min" in data else None,
            int(data["eta_max"]) if "eta_max" in data else None,
        )


# ---------------------------------------------------------------------------
# MacWilliams / Pless / extension identities.


@lru_cache(maxsize=1 << 20)
def krawtchouk(n: int, j: int, i: int) -> int:
    """K_j(i) = sum_l (-1)^l C(i,l) C(n-i, j-l), the binary Krawtchouk value."""
    lo = max(0, j - (n - i))
    hi = min(i, j)
    total = 0
    for l in range(lo, hi + 1):
        term = math.comb(i, l) * math.comb(n - i, j - l)
        total += -term if l & 1 else term
    return total


def macwilliams(dual_spectrum: WeightSpectrum, k: int) -> WeightSpectrum:
    """Spectrum of the [n, k] code whose dual has the given spectrum.

    A_j = 2^(k-n) * sum_i B_i K_j(i); every division must be exact.
    """
    n = dual_spectrum.n
    if not 0 <= k <= n:
        raise DimensionMismatch(f"k={k} out of range 0..{n}")
    divisor = 1 << (n - k)
    nz = dual_spectrum.nonzero()
    counts = []
    for j in range(n + 1):
        s = sum(b * krawtchouk(n, j, i) for i, b in nz.items())
        q, r = divmod(s, divisor)
        if r:
            raise NonIntegerResult(f"A_{j} = {s}/{divisor} is not an integer")
        counts.append(q)
    return WeightSpectrum(n, tuple(counts))


def pless_fill(partial: Mapping[int, int], n: int) -> WeightSpectrum:
    """Complete a QR(n) spectrum via the pair identity
    2j * A_{2j} = (n - (2j-1)) * A_{2j-1}.

    A pair (2j-1, 2j) with one coefficient supplied is filled through the
    identity; with both supplied it is verified; weights absent from
    ``partial`` are taken as zero (weight 0 defaults to 1).
    """
    known = dict(partial)
    for w in known:
        if not 0 <= w <= n:
            raise DimensionMismatch(f"weight {w} out of range 0..{n}")
    out = [0] * (n + 1)
    out[0] = known.get(0, 1)
    out[n] = known.get(n, 0)
    for j in range(1, (n - 1) // 2 + 1):
        lo, hi = 2 * j - 1, 2 * j
        c_lo, c_hi = n - (2 * j - 1), 2 * j  # c_hi * A_hi == c_lo * A_lo
        a_lo, a_hi = known.get(lo), known.get(hi)
        if a_lo is None and a_hi is None:
            a_lo = a_hi = 0
        elif a_lo is None:
            q, r = divmod(c_hi * a_hi, c_lo)
            if r:
                raise NonIntegerResult(f"A_{lo} = {c_hi}*{a_hi}/{c_lo} not integral")
            a_lo = q
        elif a_hi is None:
            q, r = divmod(c_lo * a_lo, c_hi)
            if r:
                raise NonIntegerResult(f"A_{hi} = {c_lo}*{a_lo}/{c_hi} not integral")
            a_hi = q
        elif c_hi * a_hi != c_lo * a_lo:
            raise Inconsistent(f"pair ({lo},{hi}) violates {c_hi}*A_{hi} = {c_lo}*A_{lo}")
        out[lo], out[hi] = a_lo, a_hi
    return WeightSpectrum(n, tuple(out))


def extend_spectrum_qr(qr_spectrum: WeightSpectrum) -> WeightSpectrum:
    """Spectrum of the parity extension: E_{2j} = A_{2j} + A_{2j-1}.

    Verifies both closed forms E_{2j} = (n+1)/(n+1-2j) A_{2j}
    = (n+1)/(2j) A_{2j-1} where defined.
    """
    n = qr_spectrum.n
    a = qr_spectrum.counts
    counts = [0] * (n + 2)
    counts[0] = a[0]
    for j in range(1, (n + 1) // 2 + 1):
        w = 2 * j
        e = (a[w] if w <= n else 0) + a[w - 1]
        if w <= n - 1:
            if (n + 1 - w) * e != (n + 1) * a[w]:
                raise Inconsistent(f"E_{w} fails (n+1-2j) E = (n+1) A_{w}")
            if w * e != (n + 1) * a[w - 1]:
                raise Inconsistent(f"E_{w} fails 2j E = (n+1) A_{w - 1}")
        counts[w] = e
    return WeightSpectrum(n + 1, tuple(counts))


# ---------------------------------------------------------------------------
# Affine families of spectra (solutions of the enumerator linear system).


AffineRow = Tuple[Fraction, Tuple[Fraction, ...]]  # (constant, per-param coefficients)


@dataclass(frozen=True)
class AffineSpectrum:
    """Each coefficient as an affine form const + sum_t c_t * z_t.

    Every parameter is anchored at a pivot weight: A_{pivot_weights[t]} =
    scales[t] * z_t with no other contribution, so substituting the pivot
    coefficients determines the whole spectrum.
    """

    n: int
    params: Tuple[str, ...]
    pivot_weights: Tuple[int, ...]
    scales: Tuple[int, ...]
    rows: Tuple[AffineRow, ...]

    def __post_init__(self):
        if len(self.rows) != self.n + 1:
            raise DimensionMismatch(f"need {self.n + 1} rows")
        for const, coeffs in self.rows:
            if len(coeffs) != len(self.params):
                raise DimensionMismatch("row arity mismatch")

    def row(self, w: int) -> AffineRow:
        return self.rows[w]

    def substitute(self, values: Mapping[str, object]) -> WeightSpectrum:
        """Exact evaluation at integer (or rational) parameter values."""
        missing = set(self.params) - set(values)
        if missing:
            raise ValueError(f"unbound parameters: {sorted(missing)}")
        vals = [Fraction(values[p]) for p in self.params]
        counts = []
        for w, (const, coeffs) in enumerate(self.rows):
            v = const + sum(c * x for c, x in zip(coeffs, vals))
            if v.denominator != 1:
                raise NonIntegerResult(f"A_{w} = {v} is not an integer")
            if v < 0:
                raise NegativeCoefficient(f"A_{w} = {v} is negative")
            counts.append(int(v))
        return WeightSpectrum(self.n, tuple(counts))

    def rescale_param(self, name: str, divisor: int, new_name: Optional[str] = None) -> "AffineSpectrum":
        """Reparameterize z -> z/divisor (coefficients multiply by divisor)."""
        if divisor <= 0:
            raise ValueError("divisor must be positive")
        t = self.params.index(name)
        rows = tuple(
            (const, tuple(c * divisor if s == t else c for s, c in enumerate(coeffs)))
            for const, coeffs in self.rows
        )
        params = tuple(
            (new_name or name) if s == t else p for s, p in enumerate(self.params)
        )
        scales = tuple(
            sc * divisor if s == t else sc for s, sc in enumerate(self.scales)
        )
        return AffineSpectrum(self.n, params, self.pivot_weights, scales, rows)

    def to_json(self) -> dict:
        rows = {}
        for w, (const, coeffs) in enumerate(self.rows):
            if const == 0 and all(c == 0 for c in coeffs):
                continue
            entry = {"const": frac_str(const)}
            for p, c in zip(self.params, coeffs):
                if c != 0:
                    entry[p] = frac_str(c)
            rows[str(w)] = entry
        return {
            "n": self.n,
            "params": [
                {"name": p, "weight": w, "scale": str(s)}
                for p, w, s in zip(self.params, self.pivot_weights, self.scales)
            ],
            "rows": rows,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AffineSpectrum":
        n = int(data["n"])
        params = tuple(p["name"] for p in data["params"])
        weights = tuple(int(p["weight"]) for p in data["params"])
        scales = tuple(int(p["scale"]) for p in data["params"])
        rows: List[AffineRow] = [(Fraction(0), tuple(Fraction(0) for _ in params))] * (n + 1)
        for w_str, entry in data["rows"].items():
            const = _parse_frac(entry.get("const", "0"))
            coeffs = tuple(_parse_frac(entry.get(p, "0")) for p in params)
            rows[int(w_str)] = (const, coeffs)
        return cls(n, params, weights, scales, tuple(rows))


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


def format_family_table(family: AffineSpectrum) -> str:
    """Aligned text rows "i : const + c1 z1 - c2 z2" for eyeball diffs."""
    lines = []
    for w, (const, coeffs) in enumerate(family.rows):
        if const == 0 and all(c == 0 for c in coeffs):
            continue
        parts = []
        if const != 0 or all(c == 0 for c in coeffs):
            parts.append(frac_str(const))
        for p, c in zip(family.params, coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = frac_str(abs(c))
            term = f"{mag} {p}" if mag != "1" else p
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        lines.append(f"{w}\t: " + " ".join(parts))
    return "\n".join(lines)


def format_spectrum_table(spectrum: WeightSpectrum) -> str:
    return "\n".join(f"{w}\t: {c}" for w, c in spectrum.nonzero().items())


# ---------------------------------------------------------------------------
# Exact linear solving (integer rows, fraction-free forward elimination).


def _eliminate(rows: List[List[int]], ncols: int) -> List[Tuple[int, List[int]]]:
    """Forward-eliminate integer rows [coeffs..., rhs]; returns pivot rows.

    Raises Inconsistent when a zero coefficient row has nonzero rhs.
    """

    def normalize(row: List[int]) -> None:
        g = 0
        for v in row:
            g = math.gcd(g, v)
        if g > 1:
            for idx in range(len(row)):
                row[idx] //= g

    work = [list(r) for r in rows]
    pivots: List[Tuple[int, List[int]]] = []
    r = 0
    for col in range(ncols):
        src = next((i for i in range(r, len(work)) if work[i][col]), None)
        if src is None:
            continue
        work[r], work[src] = work[src], work[r]
        normalize(work[r])
        base = work[r]
        for i in range(r + 1, len(work)):
            if work[i][col]:
                a, b = work[i][col], base[col]
                g = math.gcd(a, b)
                ma, mb = b // g, a // g
                row = work[i]
                for idx in range(col, ncols + 1):
                    row[idx] = ma * row[idx] - mb * base[idx]
                normalize(row)
        pivots.append((col, base))
        r += 1
        if r == len(work):
            break
    for i in range(r, len(work)):
        if any(work[i][c] for c in range(ncols)):
            raise AssertionError("unreduced row left behind")  # pragma: no cover
        if work[i][ncols]:
            raise Inconsistent("linear system has no solution")
    return pivots


def _back_substitute(
    pivots: List[Tuple[int, List[int]]], ncols: int
) -> Tuple[Dict[int, Tuple[Fraction, Dict[int, Fraction]]], List[int]]:
    """Express every column as const + sum over free columns."""
    pivot_cols = {col for col, _ in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    forms: Dict[int, Tuple[Fraction, Dict[int, Fraction]]] = {
        c: (Fraction(0), {c: Fraction(1)}) for c in free_cols
    }
    for col, row in reversed(pivots):
        const = Fraction(row[ncols])
        coeffs: Dict[int, Fraction] = {}
        for c2 in range(col + 1, ncols):
            if not row[c2]:
                continue
            sub_const, sub_coeffs = forms[c2]
            const -= row[c2] * sub_const
            for f, v in sub_coeffs.items():
                coeffs[f] = coeffs.get(f, Fraction(0)) - row[c2] * v
        lead = row[col]
        const /= lead
        coeffs = {f: v / lead for f, v in coeffs.items() if v}
        forms[col] = (const, coeffs)
    return forms, free_cols


def _canonical_family(
    n: int,
    row_forms: Sequence[Tuple[Fraction, Dict[int, Fraction]]],
    free_ids: Sequence[int],
) -> AffineSpectrum:
    """Repivot a solution family on the lowest undetermined weights and
    rescale each column to integer coefficients with content 1."""
    r = len(free_ids)
    if r == 0:
        rows = tuple((Fraction(c), ()) for c, _ in row_forms)
        return AffineSpectrum(n, (), (), (), rows)

    id_index = {f: t for t, f in enumerate(free_ids)}

    def vec(w: int) -> List[Fraction]:
        out = [Fraction(0)] * r
        for f, v in row_forms[w][1].items():
            out[id_index[f]] = v
        return out

    # Greedy rank-increasing pivot selection, lowest weights first.
    pivot_weights: List[int] = []
    basis: List[List[Fraction]] = []
    for w in range(n + 1):
        v = vec(w)
        red = list(v)
        for b in basis:
            lead = next((idx for idx, x in enumerate(b) if x), None)
            if lead is not None and red[lead]:
                factor = red[lead] / b[lead]
                red = [x - factor * y for x, y in zip(red, b)]
        if any(red):
            pivot_weights.append(w)
            basis.append(red)
            if len(pivot_weights) == r:
                break
    if len(pivot_weights) < r:
        raise AssertionError("free parameters are not independent")  # pragma: no cover

    # Invert the r x r map from old params to pivot-row coefficients.
    mat = [vec(w) for w in pivot_weights]
    consts = [row_forms[w][0] for w in pivot_weights]
    inv = _invert_fraction_matrix(mat)

    new_rows: List[Tuple[Fraction, List[Fraction]]] = []
    for w in range(n + 1):
        v = vec(w)
        coeffs = [
            sum(v[t] * inv[t][s] for t in range(r)) for s in range(r)
        ]
        const = row_forms[w][0] - sum(
            coeffs[s] * consts[s] for s in range(r)
        )
        new_rows.append((const, coeffs))

    # Content normalization: parameter z_s = A_{w_s} / c_s with c = lcm/gcd.
    scales: List[int] = []
    for s in range(r):
        denom_lcm = 1
        for const, coeffs in new_rows:
            denom_lcm = math.lcm(denom_lcm, coeffs[s].denominator)
        num_gcd = 0
        for const, coeffs in new_rows:
            num_gcd = math.gcd(num_gcd, int(coeffs[s] * denom_lcm))
        scale = Fraction(denom_lcm, num_gcd) if num_gcd else Fraction(1)
        scales.append(scale)
    rows = tuple(
        (const, tuple(c * scales[s] for s, c in enumerate(coeffs)))
        for const, coeffs in new_rows
    )
    params = tuple(f"z{s + 1}" for s in range(r))
    int_scales = []
    for s, sc in enumerate(scales):
        if sc.denominator != 1:
            raise AssertionError("scale should be integral")  # pragma: no cover
        int_scales.append(int(sc.numerator))
    return AffineSpectrum(n, params, tuple(pivot_weights), tuple(int_scales), rows)


def _invert_fraction_matrix(mat: List[List[Fraction]]) -> List[List[Fraction]]:
    r = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(mat)]
    for col in range(r):
        src = next((i for i in range(col, r) if aug[i][col]), None)
        if src is None:
            raise AssertionError("singular pivot matrix")  # pragma: no cover
        aug[col], aug[src] = aug[src], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[r:] for row in aug]


# ---------------------------------------------------------------------------
# The enumerator linear system (S) built from supports and MacWilliams zeros.


def build_system(
    primal_support: SupportSpectrum,
    dual_support: SupportSpectrum,
    n: int,
    k: int,
    symmetric: bool = False,
) -> AffineSpectrum:
    """Solve for all spectra consistent with the given supports.

    Unknowns are A_i at supported weights (A_0 = 1).  Constraints: the
    MacWilliams transform vanishes at every weight absent from the dual
    support, its weight-0 value is 1 (i.e. sum A_i = 2^k), and optionally
    A_i = A_{n-i}.  Returns the affine solution family with free parameters
    anchored at the lowest undetermined weights.
    """
    if primal_support.n != n or dual_support.n != n:
        raise DimensionMismatch("support length mismatch")
    if 0 not in primal_support or 0 not in dual_support:
        raise ValueError("both supports must contain weight 0")
    unknowns = [w for w in sorted(primal_support.present, reverse=True) if w != 0]
    col_of = {w: i for i, w in enumerate(unknowns)}
    ncols = len(unknowns)

    equations: List[List[int]] = []
    for j in range(1, n + 1):
        if j in dual_support:
            continue
        row = [krawtchouk(n, j, w) for w in unknowns]
        row.append(-krawtchouk(n, j, 0))
        equations.append(row)
    norm = [1] * ncols + [(1 << k) - 1]
    equations.append(norm)
    if symmetric:
        for w in unknowns:
            mirror = n - w
            row = [0] * (ncols + 1)
            row[col_of[w]] = 1
            if mirror == w:
                continue
            if mirror in col_of:
                if mirror < w:
                    continue  # count each pair once
                row[col_of[mirror]] = -1
            elif mirror == 0:
                row[ncols] = 1
            equations.append(row)

    pivots = _eliminate(equations, ncols)
    forms, free_cols = _back_substitute(pivots, ncols)

    zero_form = (Fraction(0), {})
    row_forms: List[Tuple[Fraction, Dict[int, Fraction]]] = []
    for w in range(n + 1):
        if w == 0:
            row_forms.append((Fraction(1), {}))
        elif w in col_of:
            row_forms.append(forms[col_of[w]])
        else:
            row_forms.append(zero_form)
    family = _canonical_family(n, row_forms, free_cols)
    for w, (const, coeffs) in enumerate(family.rows):
        if all(c == 0 for c in coeffs) and const < 0:
            raise Underflow(f"supports force A_{w} = {const} < 0")
    return family


# ---------------------------------------------------------------------------
# Gleason bases for (formally) self-dual codes.


def _poly_mul_vec(a: List[int], b: List[int], limit: int) -> List[int]:
    out = [0] * min(len(a) + len(b) - 1, limit + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j > limit:
                break
            if y:
                out[i + j] += x * y
    return out


def _poly_pow_vec(base: List[int], e: int, limit: int) -> List[int]:
    result = [1]
    acc = list(base)
    while e:
        if e & 1:
            result = _poly_mul_vec(result, acc, limit)
        e >>= 1
        if e:
            acc = _poly_mul_vec(acc, acc, limit)
    return result


def gleason_basis(n: int, mode: str) -> List[List[int]]:
    """Coefficient vectors (length n+1) of the Gleason basis polynomials."""
    if mode == "fsd":
        if n % 2:
            raise DimensionMismatch("formally self-dual length must be even")
        g1 = [1, 0, 1]  # 1 + x^2
        g2 = [0, 0, 1, 0, -2, 0, 1]  # x^2 - 2x^4 + x^6
        count = n // 8 + 1
        exps = [(n // 2 - 4 * i, i) for i in range(count)]
    elif mode == "doubly_even":
        if n % 8:
            raise DimensionMismatch("doubly-even self-dual length must be divisible by 8")
        g1 = [1, 0, 0, 0, 14, 0, 0, 0, 1]  # 1 + 14x^4 + x^8
        # x^4 (1 - x^4)^4
        g2 = [0] * 4 + [1, 0, 0, 0, -4, 0, 0, 0, 6, 0, 0, 0, -4, 0, 0, 0, 1]
        count = n // 24 + 1
        exps = [(n // 8 - 3 * i, i) for i in range(count)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    basis = []
    for e1, e2 in exps:
        vec = _poly_mul_vec(_poly_pow_vec(g1, e1, n), _poly_pow_vec(g2, e2, n), n)
        vec += [0] * (n + 1 - len(vec))
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class GleasonFit:
    """Result of fitting Gleason basis coefficients to constraints."""

    basis_coefficients: Optional[Tuple[Fraction, ...]]  # None when underdetermined
    family: AffineSpectrum


def gleason_fit(
    n: int, mode: str, constraints: Sequence[Tuple[int, int]]
) -> GleasonFit:
    """Fit A(x) = sum_i K_i g1^.. g2^.. to exact constraints (weight, value).

    Returns the unique basis coefficients when determined, and in every
    case the affine family of spectra, repivoted on the lowest
    undetermined weights.
    """
    basis = gleason_basis(n, mode)
    b = len(basis)
    equations: List[List[int]] = []
    for w, val in constraints:
        if not 0 <= w <= n:
            raise DimensionMismatch(f"constraint weight {w} out of range")
        equations.append([basis[i][w] for i in range(b)] + [int(val)])
    pivots = _eliminate(equations, b)
    forms, free_cols = _back_substitute(pivots, b)

    row_forms: List[Tuple[Fraction, Dict[int, Fraction]]] = []
    for w in range(n + 1):
        const = Fraction(0)
        coeffs: Dict[int, Fraction] = {}
        for i in range(b):
            weight_coeff = basis[i][w]
            if not weight_coeff:
                continue
            f_const, f_coeffs = forms[i]
            const += weight_coeff * f_const
            for f, v in f_coeffs.items():
                coeffs[f] = coeffs.get(f, Fraction(0)) + weight_coeff * v
        row_forms.append((const, {f: v for f, v in coeffs.items() if v}))
    family = _canonical_family(n, row_forms, free_cols)

    k_coeffs: Optional[Tuple[Fraction, ...]] = None
    if not free_cols:
        k_coeffs = tuple(forms[i][0] for i in range(b))
    return GleasonFit(k_coeffs, family)


# ---------------------------------------------------------------------------
# Threshold, congruence lifting, parameter bounding and selection.


def semi_local_threshold(family: AffineSpectrum) -> int:
    """Largest free-parameter pivot weight; knowing A_i for i <= s fixes A."""
    return max(family.pivot_weights, default=0)


def lift_congruence(
    family: AffineSpectrum, weight: int, residue: int, modulus: int
) -> ParameterCongruence:
    """Turn A_w = c*z and A_w = residue (mod modulus) into z = r/c (mod M/c)."""
    const, coeffs = family.rows[weight]
    live = [(s, c) for s, c in enumerate(coeffs) if c != 0]
    if const != 0 or len(live) != 1:
        raise NotMonomial(f"row {weight} is not a single-parameter monomial")
    s, c = live[0]
    if c.denominator != 1 or c <= 0:
        raise NotMonomial(f"row {weight} coefficient {c} is not a positive integer")
    c = int(c)
    if residue % c or modulus % c:
        raise DivisibilityFailure(f"{c} must divide residue {residue} and modulus {modulus}")
    new_mod = modulus // c
    return ParameterCongruence(family.params[s], (residue // c) % new_mod, new_mod)


def bound_parameters(
    family: AffineSpectrum, congruences: Sequence[ParameterCongruence]
) -> Dict[str, Tuple[Optional[int], Optional[int]]]:
    """Intersect coefficient nonnegativity with each congruence lattice.

    Only rows involving a single parameter yield linear bounds; the result
    maps each parameter to its [eta_min, eta_max] interval (None = unbounded).
    """
    out: Dict[str, Tuple[Optional[int], Optional[int]]] = {}
    for cong in congruences:
        s = family.params.index(cong.param)
        z_lo: Optional[Fraction] = None
        z_hi: Optional[Fraction] = None
        for const, coeffs in family.rows:
            c = coeffs[s]
            if c == 0 or any(coeffs[t] != 0 for t in range(len(coeffs)) if t != s):
                continue
            bound = Fraction(-const, c)
            if c > 0:
                z_lo = bound if z_lo is None else max(z_lo, bound)
            else:
                z_hi = bound if z_hi is None else min(z_hi, bound)
        eta_min = None
        eta_max = None
        if z_lo is not None:
            eta_min = math.ceil((z_lo - cong.offset) / cong.modulus)
        if z_hi is not None:
            eta_max = math.floor((z_hi - cong.offset) / cong.modulus)
        if eta_min is not None and eta_max is not None and eta_min > eta_max:
            raise EmptyInterval(f"no admissible eta for {cong.param}")
        out[cong.param] = (eta_min, eta_max)
    return out


def select_parameter(cong: ParameterCongruence, estimate) -> int:
    """The eta whose lattice point offset + eta*modulus is nearest the estimate,
    clamped to the congruence's bound interval when present."""
    t = (Fraction(estimate) - cong.offset) / cong.modulus
    eta = math.floor(t + Fraction(1, 2))
    if cong.eta_min is not None:
        eta = max(eta, cong.eta_min)
    if cong.eta_max is not None:
        eta = min(eta, cong.eta_max)
    return eta
