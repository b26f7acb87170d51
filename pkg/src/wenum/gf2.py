"""Exact GF(2) linear algebra on bit-packed words, plus GF(2^m) arithmetic.

Words and matrix rows are Python ints with bit ``i`` holding coordinate
``i``; an int is already a packed array of machine words, so every row
operation below is a whole-word XOR.  Polynomials over GF(2) use the same
packing with bit ``i`` as the coefficient of ``x^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, InvalidModulus, RankDeficient


@dataclass(frozen=True)
class BitWord:
    """A fixed-length binary word; ``bits`` is the packed integer form."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise DimensionMismatch(f"word does not fit in {self.n} bits")

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitWord") -> "BitWord":
        if self.n != other.n:
            raise DimensionMismatch("XOR of words with different lengths")
        return BitWord(self.bits ^ other.bits, self.n)

    def to01(self) -> str:
        """Render as characters, coordinate 0 first."""
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    @classmethod
    def from01(cls, text: str) -> "BitWord":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(bits, len(text))


@dataclass(frozen=True)
class BinaryMatrix:
    """A k x n matrix over GF(2); each row is a packed int."""

    rows: Tuple[int, ...]
    n: int

    def __post_init__(self):
        for r in self.rows:
            if r < 0 or r >> self.n:
                raise DimensionMismatch(f"row does not fit in {self.n} columns")

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_bits(cls, rows: Iterable[Sequence[int]]) -> "BinaryMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("empty matrix")
        n = len(rows[0])
        packed = []
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch("ragged rows")
            packed.append(sum((b & 1) << i for i, b in enumerate(r)))
        return cls(tuple(packed), n)

    def row_word(self, i: int) -> BitWord:
        return BitWord(self.rows[i], self.n)

    def column_select(self, cols: Sequence[int]) -> "BinaryMatrix":
        """Submatrix keeping the given columns, in the given order."""
        out = []
        for r in self.rows:
            out.append(sum(((r >> c) & 1) << j for j, c in enumerate(cols)))
        return BinaryMatrix(tuple(out), len(cols))


def format_matrix(m: BinaryMatrix) -> str:
    """Text form: first line "n k", then k rows of n characters."""
    lines = [f"{m.n} {m.k}"]
    for r in m.rows:
        lines.append(BitWord(r, m.n).to01())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    n, k = (int(tok) for tok in lines[0].split())
    if len(lines) != k + 1:
        raise ValueError(f"expected {k} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        w = BitWord.from01(ln)
        if w.n != n:
            raise ValueError(f"row length {w.n} != {n}")
        rows.append(w.bits)
    return BinaryMatrix(tuple(rows), n)


def rref(m: BinaryMatrix) -> Tuple[BinaryMatrix, Tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns; row space preserved."""
    rows: List[int] = list(m.rows)
    pivots: List[int] = []
    r = 0
    for col in range(m.n):
        src = next((i for i in range(r, len(rows)) if (rows[i] >> col) & 1), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return BinaryMatrix(tuple(rows), m.n), tuple(pivots)


def rank(m: BinaryMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: BinaryMatrix) -> BinaryMatrix:
    """Basis of {v : m v^T = 0}; zero kernel gives a 0-row matrix."""
    red, pivots = rref(m)
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    basis = []
    for free in range(m.n):
        if free in pivot_of_col:
            continue
        v = 1 << free
        for c in pivots:
            if (red.rows[pivot_of_col[c]] >> free) & 1:
                v |= 1 << c
        basis.append(v)
    return BinaryMatrix(tuple(basis), m.n)


def row_space_contains(m: BinaryMatrix, word: int) -> bool:
    red, pivots = rref(m)
    w = word
    for i, c in enumerate(pivots):
        if (w >> c) & 1:
            w ^= red.rows[i]
    return w == 0


def same_row_space(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    if a.n != b.n:
        return False
    return all(row_space_contains(a, r) for r in b.rows) and all(
        row_space_contains(b, r) for r in a.rows
    )


def systematic_form(
    g: BinaryMatrix,
) -> Tuple[BinaryMatrix, Tuple[int, ...], Tuple[int, ...]]:
    """Row-reduce a full-rank generator so the information set carries I_k.

    Returns ``(gs, perm, info_set)``: ``gs`` keeps the original column
    order and has an identity block on ``info_set`` (the pivot columns);
    ``perm`` lists pivots first, so ``gs`` column-permuted by ``perm`` is
    the literal (I | A) form and ``perm[j]`` maps systematic position ``j``
    back to the original coordinate.
    """
    red, pivots = rref(g)
    if len(pivots) < g.k:
        raise RankDeficient(f"rank {len(pivots)} < {g.k} rows")
    pivot_set = set(pivots)
    perm = pivots + tuple(c for c in range(g.n) if c not in pivot_set)
    return red, perm, pivots


def dual_basis(g: BinaryMatrix) -> BinaryMatrix:
    """Parity-check matrix: rank n-k basis of the dual, with g H^T = 0."""
    if rank(g) < g.k:
        raise RankDeficient("generator is rank deficient")
    return nullspace(g)


# ---------------------------------------------------------------------------
# Polynomials over GF(2), packed as ints (bit i = coefficient of x^i).


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def poly_divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    q = 0
    while poly_degree(a) >= db:
        shift = poly_degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_powmod(a: int, e: int, mod: int) -> int:
    result = 1
    a = poly_mod(a, mod)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, a), mod)
        a = poly_mod(poly_mul(a, a), mod)
        e >>= 1
    return result


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); monic by construction unless zero."""

    bits: int

    @property
    def degree(self) -> int:
        return poly_degree(self.bits)

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(poly_mul(self.bits, other.bits))

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(poly_mod(self.bits, other.bits))

    def divides(self, other: "Gf2Poly") -> bool:
        return poly_mod(other.bits, self.bits) == 0

    def to01(self) -> str:
        """Coefficient string, lowest degree first."""
        if self.bits == 0:
            return "0"
        return "".join(
            "1" if (self.bits >> i) & 1 else "0" for i in range(self.degree + 1)
        )

    @classmethod
    def from01(cls, text: str) -> "Gf2Poly":
        return cls(BitWord.from01(text).bits)


def _is_irreducible(f: int, m: int) -> bool:
    # f irreducible of degree m  iff  x^(2^m) == x mod f and, for every
    # prime q | m, gcd(x^(2^(m/q)) - x, f) == 1.
    x = 2
    if poly_powmod(x, 1 << m, f) != poly_mod(x, f):
        return False
    q = 2
    mm = m
    primes = set()
    while q * q <= mm:
        if mm % q == 0:
            primes.add(q)
            while mm % q == 0:
                mm //= q
        q += 1
    if mm > 1:
        primes.add(mm)
    for q in primes:
        probe = poly_powmod(x, 1 << (m // q), f) ^ poly_mod(x, f)
        if poly_gcd(probe, f) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def irreducible_poly(m: int) -> int:
    """Lowest (as packed int) irreducible of degree m with constant term 1."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    if m == 1:
        return 0b11  # x + 1
    for cand in range((1 << m) | 1, 1 << (m + 1), 2):
        if _is_irreducible(cand, m):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Gf2Field:
    """GF(2^m) in polynomial basis modulo the canonical irreducible."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = irreducible_poly(m)
        self.order = (1 << m) - 1
        self._primitive: int | None = None

    def mul(self, a: int, b: int) -> int:
        return poly_mod(poly_mul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        e %= self.order
        return poly_powmod(a, e, self.modulus) if e else 1 % (1 << self.m)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 1)

    def primitive_element(self) -> int:
        """Smallest element (in packed-int order) of full multiplicative order."""
        if self._primitive is not None:
            return self._primitive
        from sympy import factorint

        prime_factors = list(factorint(self.order))
        for g in range(2, 1 << self.m):
            if all(self.pow(g, self.order // p) != 1 for p in prime_factors):
                self._primitive = g
                return g
        raise AssertionError("no primitive element")  # pragma: no cover


@lru_cache(maxsize=None)
def field(m: int) -> Gf2Field:
    return Gf2Field(m)


def multiplicative_order_of_two(n: int) -> int:
    """Smallest m >= 1 with n | 2^m - 1."""
    if n <= 0 or n % 2 == 0:
        raise InvalidModulus(f"modulus must be odd and positive, got {n}")
    if n == 1:
        return 1
    m = 1
    r = 2 % n
    while r != 1:
        r = (r * 2) % n
        m += 1
        if m > n:  # cannot happen for odd n; guard against loops
            raise AssertionError("order search overran")  # pragma: no cover
    return m


def root_of_unity(n: int) -> Tuple[Gf2Field, int]:
    """The fixed primitive n-th root of unity: (field GF(2^m), beta)."""
    m = multiplicative_order_of_two(n)
    f = field(m)
    beta = f.pow(f.primitive_element(), f.order // n)
    return f, beta


def min_poly(n: int, s: int) -> Gf2Poly:
    """Minimal polynomial over GF(2) of beta^s, beta the fixed n-th root of unity.

    The degree equals the size of the cyclotomic coset of s mod n, and the
    result divides x^n + 1.
    """
    if n <= 0 or n % 2 == 0:
        raise InvalidModulus(f"modulus must be odd and positive, got {n}")
    s %= n
    if n == 1 or s == 0:
        return Gf2Poly(0b11)  # beta^0 = 1, minimal polynomial x + 1
    f, beta = root_of_unity(n)
    coset = []
    j = s
    while j not in coset:
        coset.append(j)
        j = (2 * j) % n
    # Product of (x + beta^j) with coefficients in GF(2^m).
    coeffs = [1]
    for j in coset:
        root = f.pow(beta, j)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= f.mul(root, c)
        coeffs = nxt
    bits = 0
    for i, c in enumerate(coeffs):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial not binary")  # pragma: no cover
        bits |= c << i
    return Gf2Poly(bits)
