"""Binary linear code constructions: generic, cyclic, quadratic-residue, extended.

Coordinate conventions: a cyclic code of length n puts the coefficient of
x^j on coordinate j; extending a code appends the overall parity bit at
index n, the "infinity" position.
"""

from __future__ import annotations

from typing import FrozenSet, Optional, Tuple

from . import gf2
from .errors import DimensionMismatch, InvalidModulus, NotPrime, NotQrPrime, RankDeficient
from .gf2 import BinaryMatrix, BitWord, Gf2Poly


class LinearCode:
    """An [n, k] binary linear code, immutable after construction.

    Attributes:
        n, k: length and dimension.
        generator: full-rank k x n BinaryMatrix.
        parity_check: (n-k) x n BinaryMatrix with generator . H^T = 0.
        cyclic_gen: generator polynomial when the code was built cyclically.
        systematic: (matrix, perm, info_set) from gf2.systematic_form.
        construction: human-readable label ("qr n=23", "extended qr n=23", "raw").
        extended_from: the parent code when built by extend_code.
    """

    def __init__(
        self,
        generator: BinaryMatrix,
        parity_check: Optional[BinaryMatrix] = None,
        cyclic_gen: Optional[Gf2Poly] = None,
        construction: str = "raw",
        extended_from: Optional["LinearCode"] = None,
    ):
        self.n = generator.n
        self.k = generator.k
        if gf2.rank(generator) != self.k:
            raise RankDeficient("generator matrix is rank deficient")
        self.generator = generator
        if parity_check is None:
            parity_check = gf2.dual_basis(generator) if self.k else gf2.nullspace(generator)
        else:
            if parity_check.n != self.n:
                raise DimensionMismatch("parity-check length mismatch")
            if any(
                (g & h).bit_count() & 1
                for g in generator.rows
                for h in parity_check.rows
            ):
                raise DimensionMismatch("parity check does not annihilate generator")
        self.parity_check = parity_check
        self.cyclic_gen = cyclic_gen
        self.construction = construction
        self.extended_from = extended_from
        self.systematic = gf2.systematic_form(generator) if self.k else (generator, tuple(range(self.n)), ())

    # -- membership and encoding ------------------------------------------

    def contains(self, word: int) -> bool:
        if word < 0 or word >> self.n:
            raise DimensionMismatch("word length mismatch")
        return all((word & h).bit_count() % 2 == 0 for h in self.parity_check.rows)

    def encode(self, info: int) -> int:
        """info . G with the systematic generator; the information set of the
        output equals info (bit i lands on coordinate info_set[i])."""
        if info < 0 or info >> self.k:
            raise DimensionMismatch(f"information word does not fit in {self.k} bits")
        rows = self.systematic[0].rows
        c = 0
        m = info
        while m:
            i = (m & -m).bit_length() - 1
            c ^= rows[i]
            m &= m - 1
        return c

    def encode_word(self, info: BitWord) -> BitWord:
        if info.n != self.k:
            raise DimensionMismatch(f"information length {info.n} != k={self.k}")
        return BitWord(self.encode(info.bits), self.n)

    @property
    def info_set(self) -> Tuple[int, ...]:
        return self.systematic[2]

    def dual(self) -> "LinearCode":
        return LinearCode(
            self.parity_check,
            parity_check=self.generator,
            construction=f"dual of {self.construction}",
        )

    def is_cyclic(self) -> bool:
        """Check shift-invariance of the row space (certain for cyclic_gen)."""
        if self.cyclic_gen is not None:
            return True
        top = 1 << (self.n - 1)
        for r in self.generator.rows:
            shifted = ((r << 1) | (1 if r & top else 0)) & ((1 << self.n) - 1)
            if not self.contains(shifted):
                return False
        return True

    def __repr__(self):
        return f"LinearCode[n={self.n}, k={self.k}, {self.construction}]"


# -- number-theoretic scaffolding -----------------------------------------


def quadratic_residues(n: int) -> FrozenSet[int]:
    """The (n-1)/2 nonzero quadratic residues modulo an odd prime n."""
    from sympy import isprime

    if not isprime(n):
        raise NotPrime(f"{n} is not prime")
    return frozenset((j * j) % n for j in range(1, n))


def cyclotomic_cosets(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Partition of residues mod n under multiplication by 2."""
    if n <= 0 or n % 2 == 0:
        raise InvalidModulus(f"modulus must be odd and positive, got {n}")
    seen = [False] * n
    cosets = []
    for s in range(n):
        if seen[s]:
            continue
        coset = []
        j = s
        while not seen[j]:
            seen[j] = True
            coset.append(j)
            j = (2 * j) % n
        cosets.append(tuple(sorted(coset)))
    return tuple(cosets)


# -- constructions ----------------------------------------------------------


def cyclic_code(n: int, gen: Gf2Poly, construction: str = "cyclic") -> LinearCode:
    """Cyclic code from a generator polynomial dividing x^n + 1.

    The generator matrix holds the k shifts of gen; its RREF is systematic
    on the first k coordinates because gen has a nonzero constant term.
    """
    x_n_1 = Gf2Poly((1 << n) | 1)
    if not gen.divides(x_n_1):
        raise InvalidModulus(f"generator does not divide x^{n}+1")
    k = n - gen.degree
    rows = tuple(gen.bits << i for i in range(k))
    return LinearCode(BinaryMatrix(rows, n), cyclic_gen=gen, construction=construction)


def qr_code(n: int) -> LinearCode:
    """The quadratic-residue code QR(n, (n+1)/2) for a prime n = +-1 mod 8.

    The generator polynomial has root exponents exactly at the nonzero
    quadratic residues, for the fixed root-of-unity convention in gf2.
    """
    from sympy import isprime

    if not isprime(n):
        raise NotPrime(f"{n} is not prime")
    if n % 8 not in (1, 7):
        raise NotQrPrime(f"{n} is not +-1 mod 8")
    residues = quadratic_residues(n)
    reps = [c[0] for c in cyclotomic_cosets(n) if c[0] in residues]
    gen_bits = 1
    for rep in reps:
        gen_bits = gf2.poly_mul(gen_bits, gf2.min_poly(n, rep).bits)
    gen = Gf2Poly(gen_bits)
    if not _root_exponents_match(n, gen, residues):
        # Convention drift: swap to the complementary degree-(n-1)/2 factor.
        complement, rem = gf2.poly_divmod((1 << n) | 1, gf2.poly_mul(0b11, gen.bits))
        assert rem == 0
        gen = Gf2Poly(complement)
        if not _root_exponents_match(n, gen, residues):
            raise AssertionError("neither factor has residue roots")  # pragma: no cover
    return cyclic_code(n, gen, construction=f"qr n={n}")


def _root_exponents_match(n: int, gen: Gf2Poly, residues: FrozenSet[int]) -> bool:
    fld, beta = gf2.root_of_unity(n)
    for i in range(1, n):
        value = 0
        point = fld.pow(beta, i)
        for d in range(gen.degree, -1, -1):
            value = fld.mul(value, point) ^ ((gen.bits >> d) & 1)
        if (value == 0) != (i in residues):
            return False
    return True


def extend_code(code: LinearCode) -> LinearCode:
    """Append the overall parity bit at the infinity position (index n)."""
    n = code.n
    rows = tuple(
        r | ((r.bit_count() & 1) << n) for r in code.generator.rows
    )
    return LinearCode(
        BinaryMatrix(rows, n + 1),
        construction=f"extended {code.construction}",
        extended_from=code,
    )


def puncture_at_infinity(word: BitWord) -> BitWord:
    """Drop the infinity coordinate (the last index) from a word."""
    if word.n < 2:
        raise DimensionMismatch("word too short to puncture")
    n = word.n - 1
    return BitWord(word.bits & ((1 << n) - 1), n)


# -- code file format --------------------------------------------------------


def format_code(code: LinearCode) -> str:
    """Header line naming the construction, then the matrix text."""
    return code.construction + "\n" + gf2.format_matrix(code.generator)


def parse_code(text: str) -> LinearCode:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty code file")
    construction = lines[0].strip()
    matrix = gf2.parse_matrix("\n".join(lines[1:]))
    cyclic_gen = None
    if construction.startswith("qr n="):
        cyclic_gen = qr_code(int(construction.split("=", 1)[1])).cyclic_gen
    return LinearCode(matrix, cyclic_gen=cyclic_gen, construction=construction)


def save_code(code: LinearCode, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_code(code))


def load_code(path: str) -> LinearCode:
    with open(path, "r", encoding="ascii") as fh:
        return parse_code(fh.read())
