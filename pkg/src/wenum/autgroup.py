"""Permutation groups on code coordinates and the congruence pipeline:
fractional-linear generators, fixed subcodes, Sylow-2 combination, CRT."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from . import gf2
from .codes import LinearCode
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NotCoprime,
    NotPrime,
    SearchExhausted,
)
from .spectra import WeightSpectrum


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0..degree-1}; the infinity point, when present, is
    the last index."""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DimensionMismatch("images are not a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (a*b)(i) = a(b(i))."""
        if self.degree != other.degree:
            raise DimensionMismatch("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = math.lcm(o, len(cyc))
        return o

    def apply_to_word(self, bits: int) -> int:
        """Move coordinate i to coordinate images[i]."""
        out = 0
        w = bits
        while w:
            i = (w & -w).bit_length() - 1
            out |= 1 << self.images[i]
            w &= w - 1
        return out

    def to_json(self) -> list:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) for x in data))


@dataclass(frozen=True)
class PermGroup:
    """A finitely generated permutation group with optionally known order."""

    generators: Tuple[Permutation, ...]
    known_order: Optional[int] = None

    def __post_init__(self):
        degs = {g.degree for g in self.generators}
        if len(degs) > 1:
            raise DimensionMismatch("generators have mixed degrees")

    @property
    def degree(self) -> int:
        return self.generators[0].degree

    def random_element(self, rng: random.Random, max_len: int = 64) -> Permutation:
        """Product of 1..max_len uniformly chosen generators or inverses."""
        pool = list(self.generators) + [g.inverse() for g in self.generators]
        g = Permutation.identity(self.degree)
        for _ in range(rng.randint(1, max_len)):
            g = g * rng.choice(pool)
        return g


def smallest_primitive_root(n: int) -> int:
    """Least primitive root modulo a prime n."""
    from sympy import factorint, isprime

    if not isprime(n):
        raise NotPrime(f"{n} is not prime")
    if n == 2:
        return 1
    prime_factors = list(factorint(n - 1))
    for g in range(2, n):
        if all(pow(g, (n - 1) // p, n) != 1 for p in prime_factors):
            return g
    raise AssertionError("no primitive root")  # pragma: no cover


def psl2_generators(n: int) -> PermGroup:
    """The fractional-linear group on {0..n-1, infinity} via its three
    standard generators: y -> y+1, y -> rho^2 y, y -> -1/y."""
    from sympy import isprime

    if not isprime(n):
        raise NotPrime(f"{n} is not prime")
    inf = n  # infinity sits at index n
    rho = smallest_primitive_root(n)
    rho2 = (rho * rho) % n

    shift = Permutation(tuple((y + 1) % n for y in range(n)) + (inf,))
    scale = Permutation(tuple((rho2 * y) % n for y in range(n)) + (inf,))
    neg_inv_images = [0] * (n + 1)
    neg_inv_images[0] = inf
    neg_inv_images[inf] = 0
    for y in range(1, n):
        neg_inv_images[y] = (-pow(y, -1, n)) % n
    neg_inv = Permutation(tuple(neg_inv_images))
    return PermGroup((shift, scale, neg_inv), known_order=n * (n * n - 1) // 2)


def is_automorphism(code: LinearCode, perm: Permutation) -> bool:
    """True iff permuting every generator row stays inside the code."""
    if perm.degree != code.n:
        raise DimensionMismatch(f"degree {perm.degree} != code length {code.n}")
    return all(code.contains(perm.apply_to_word(r)) for r in code.generator.rows)


def find_element_of_order(
    grp: PermGroup, q: int, attempts: int = 2000, seed: int = 0
) -> Permutation:
    """Random search for an element of order exactly q (prime or prime power).

    Samples random generator words; when q divides the word's order o, the
    power word^(o/q) has order exactly q.
    """
    if grp.known_order is not None and grp.known_order % q:
        raise SearchExhausted(f"{q} does not divide the group order")
    rng = random.Random(seed)
    for _ in range(attempts):
        g = grp.random_element(rng)
        o = g.order()
        if o % q == 0:
            result = g ** (o // q)
            assert result.order() == q
            return result
    raise SearchExhausted(f"no element of order {q} in {attempts} samples")


def _random_involution(grp: PermGroup, rng: random.Random, attempts: int) -> Permutation:
    for _ in range(attempts):
        g = grp.random_element(rng)
        o = g.order()
        if o % 2 == 0:
            return g ** (o // 2)
    raise SearchExhausted(f"no involution found in {attempts} samples")


def find_dihedral_pair(
    grp: PermGroup, m: int, attempts: int = 2000, seed: int = 0
) -> Tuple[Permutation, Permutation]:
    """Find (a, b) with a of order 2^m, b an involution, and b a b = a^-1.

    Uses the fact that a product of two involutions is inverted by each
    factor: powers of g = b1*b2 inherit b1 g b1 = g^-1.
    """
    target = 1 << m
    if grp.known_order is not None and grp.known_order % target:
        raise SearchExhausted(f"2^{m} does not divide the group order")
    rng = random.Random(seed)
    for _ in range(attempts):
        b1 = _random_involution(grp, rng, attempts)
        b2 = _random_involution(grp, rng, attempts)
        g = b1 * b2
        o = g.order()
        if o % target:
            continue
        a = g ** (o // target)
        if a.order() != target or not (b1 * b1).is_identity():
            continue  # pragma: no cover
        if not (b1 * a * b1 * a).is_identity():
            continue  # pragma: no cover
        return a, b1
    raise SearchExhausted(f"no dihedral pair of order 2^{m} in {attempts} samples")


def fixed_subcode(code: LinearCode, perms: Sequence[Permutation]) -> LinearCode:
    """The subcode {c in code : sigma(c) = c for every sigma}.

    Computed as the GF(2) null space of the parity-check rows stacked with
    the coordinate-pairing constraints c_j + c_{sigma(j)} = 0.
    """
    rows = list(code.parity_check.rows)
    for sigma in perms:
        if sigma.degree != code.n:
            raise DimensionMismatch("permutation degree mismatch")
        for j, img in enumerate(sigma.images):
            if img > j:
                rows.append((1 << j) | (1 << img))
    basis = gf2.nullspace(gf2.BinaryMatrix(tuple(rows), code.n))
    sub = LinearCode(
        basis,
        construction=f"fixed subcode of {code.construction}",
    )
    for r in sub.generator.rows:
        assert code.contains(r)
        assert all(sigma.apply_to_word(r) == r for sigma in perms)
    return sub


def sylow_two_spectrum(
    fixed_center: WeightSpectrum,
    fixed_klein0: WeightSpectrum,
    fixed_klein1: WeightSpectrum,
    m: int,
) -> WeightSpectrum:
    """Combine fixed-subcode spectra into the Sylow-2 congruence source:
    E2_j = (2^m + 1) Fc_j - 2^(m-1) (F0_j + F1_j), coefficientwise."""
    n = fixed_center.n
    if fixed_klein0.n != n or fixed_klein1.n != n:
        raise DimensionMismatch("spectra lengths differ")
    counts = tuple(
        ((1 << m) + 1) * fc - (1 << (m - 1)) * (f0 + f1)
        for fc, f0, f1 in zip(fixed_center.counts, fixed_klein0.counts, fixed_klein1.counts)
    )
    return WeightSpectrum(n, counts)


def crt_combine(residues: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """Chinese remainder combination of (residue, modulus) pairs with
    pairwise coprime moduli."""
    if not residues:
        raise ValueError("no residues to combine")
    x, modulus = residues[0]
    x %= modulus
    for r, m in residues[1:]:
        if math.gcd(modulus, m) != 1:
            raise NotCoprime(f"moduli {modulus} and {m} share a factor")
        t = ((r - x) * pow(modulus, -1, m)) % m
        x += modulus * t
        modulus *= m
    return x, modulus


@dataclass(frozen=True)
class WeightCongruence:
    residues: Tuple[Tuple[int, int], ...]
    combined: Tuple[int, int]


@dataclass
class CongruenceTable:
    """Per-weight residue/modulus pairs and their CRT combination."""

    entries: Dict[int, WeightCongruence]
    audit: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            str(w): {
                "residues": [[str(r), str(m)] for r, m in wc.residues],
                "combined": [str(wc.combined[0]), str(wc.combined[1])],
            }
            for w, wc in self.entries.items()
        }

    @classmethod
    def from_json(cls, data: dict) -> "CongruenceTable":
        entries = {}
        for w, body in data.items():
            entries[int(w)] = WeightCongruence(
                tuple((int(r), int(m)) for r, m in body["residues"]),
                (int(body["combined"][0]), int(body["combined"][1])),
            )
        return cls(entries)


SpectrumEngine = Callable[[LinearCode], WeightSpectrum]


def exhaustive_engine(dim_limit: int = 26) -> SpectrumEngine:
    from .counting import exhaustive_spectrum

    def engine(sub: LinearCode) -> WeightSpectrum:
        return exhaustive_spectrum(sub, dim_limit=dim_limit)

    return engine


def sylow_two_exponent(prime: int) -> int:
    """Largest m with 2^m dividing (prime-1)/2 or (prime+1)/2."""
    def v2(x: int) -> int:
        return (x & -x).bit_length() - 1

    return max(v2((prime - 1) // 2), v2((prime + 1) // 2))


def mykkeltveit_congruences(
    code: LinearCode,
    grp: PermGroup,
    weights: Sequence[int],
    spectrum_engine: Optional[SpectrumEngine] = None,
    injected: Optional[Mapping[str, WeightSpectrum]] = None,
    seed: int = 0,
    attempts: int = 2000,
) -> CongruenceTable:
    """Weight-coefficient congruences modulo the group order.

    For each odd prime power q^e || |G|: find an element of order q^e
    (the cyclic Sylow generator), take the subcode it fixes, and read its
    spectrum mod q^e.  For 2^e || |G|: build the dihedral pair, the three
    fixed subcodes, and the Sylow-2 combination formula, read mod 2^e.
    Combine residues per weight by CRT.

    ``injected`` maps subgroup labels (S3, S5, ..., H2, G40, G41) to
    externally computed spectra for fixed subcodes that exceed the engine's
    exhaustive budget; BudgetExceeded errors carry the offending label.
    """
    if grp.known_order is None:
        raise ValueError("group order must be known")
    if grp.known_order <= 1:
        raise ValueError("trivial group carries no congruence information")
    if grp.degree != code.n:
        raise DimensionMismatch("group degree does not match code length")
    from sympy import factorint

    engine = spectrum_engine or exhaustive_engine()
    injected = injected or {}

    def subcode_spectrum(sub: LinearCode, label: str) -> WeightSpectrum:
        if label in injected:
            return injected[label]
        try:
            return engine(sub)
        except BudgetExceeded as exc:
            raise BudgetExceeded(
                f"fixed subcode {label} (dimension {sub.k}) exceeds the "
                f"spectrum engine budget; inject its spectrum externally",
                context=label,
            ) from exc

    factors = factorint(grp.known_order)
    audit: Dict[str, object] = {}
    per_q: List[Tuple[int, WeightSpectrum]] = []  # (prime power modulus, source spectrum)

    for q in sorted(factors):
        if q == 2:
            continue
        modulus = q ** factors[q]
        g = find_element_of_order(grp, modulus, attempts=attempts, seed=seed)
        sub = fixed_subcode(code, [g])
        label = f"S{q}"
        audit[label] = {"element": g, "dimension": sub.k}
        per_q.append((modulus, subcode_spectrum(sub, label)))

    if 2 in factors:
        e2 = factors[2]
        prime = code.n - 1
        m = sylow_two_exponent(prime)
        a, b = find_dihedral_pair(grp, m, attempts=attempts, seed=seed)
        central = a ** (1 << (m - 1))
        sub_c = fixed_subcode(code, [central])
        sub_k0 = fixed_subcode(code, [central, b])
        sub_k1 = fixed_subcode(code, [central, a * b])
        audit["H2"] = {"element": central, "dimension": sub_c.k, "a": a, "b": b}
        audit["G40"] = {"dimension": sub_k0.k}
        audit["G41"] = {"dimension": sub_k1.k}
        combined = sylow_two_spectrum(
            subcode_spectrum(sub_c, "H2"),
            subcode_spectrum(sub_k0, "G40"),
            subcode_spectrum(sub_k1, "G41"),
            m,
        )
        per_q.append((1 << e2, combined))

    entries: Dict[int, WeightCongruence] = {}
    for w in weights:
        residues = tuple((spec[w] % modulus, modulus) for modulus, spec in per_q)
        entries[w] = WeightCongruence(residues, crt_combine(residues))
    return CongruenceTable(entries, audit)
