"""Probabilistic weight-count estimation: orbit expansion under the
automorphism group, distinct-count and dominance-rate estimators, and their
product as the approximate coefficient."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .autgroup import PermGroup, Permutation
from .codes import LinearCode
from .errors import DimensionMismatch, EmptySeedSet, SamplerFailure
from .gasearch import Decoder, GaConfig, wga_a1, wga_a2

STABILITY_WINDOW = 10
STABILITY_TOL = Fraction(1, 100)


class OrbitArchive:
    """A multiset of weight-w codewords collected from group images of seeds."""

    def __init__(self, code: LinearCode, w: int, seed: int):
        self.code = code
        self.w = w
        self.seed = seed
        self.multiplicity: Dict[int, int] = {}

    def insert(self, word: int) -> None:
        if word.bit_count() != self.w:
            raise DimensionMismatch(f"word weight {word.bit_count()} != {self.w}")
        if not self.code.contains(word):
            raise DimensionMismatch("word is not a codeword")
        self.multiplicity[word] = self.multiplicity.get(word, 0) + 1

    def __contains__(self, word: int) -> bool:
        return word in self.multiplicity

    @property
    def total(self) -> int:
        """|S2|: size counted with multiplicity."""
        return sum(self.multiplicity.values())

    @property
    def distinct(self) -> int:
        """|S3|: the exact number of distinct members."""
        return len(self.multiplicity)

    def to_json(self) -> dict:
        entries = [
            {"word": _bits_to_str(word, self.code.n), "mult": mult}
            for word, mult in sorted(self.multiplicity.items())
        ]
        return {"w": self.w, "entries": entries, "seed": self.seed}

    @classmethod
    def from_json(cls, data: dict, code: LinearCode) -> "OrbitArchive":
        arch = cls(code, int(data["w"]), int(data["seed"]))
        for entry in data["entries"]:
            word = _str_to_bits(entry["word"], code.n)
            for _ in range(int(entry["mult"])):
                arch.insert(word)
        return arch

    def save(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @classmethod
    def load(cls, path: str, code: LinearCode) -> "OrbitArchive":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_json(json.load(fh), code)


def expand_orbit(
    code: LinearCode,
    seeds: Sequence[int],
    grp: PermGroup,
    budget: int,
    seed: int = 0,
) -> OrbitArchive:
    """Insert ``budget`` group images of random seed words.

    Group elements come from a seeded random walk on the generators (one
    generator or inverse step per image), so a fixed seed reproduces the
    archive exactly.
    """
    if not seeds:
        raise EmptySeedSet("need at least one seed codeword")
    w = seeds[0].bit_count()
    for s in seeds:
        if s.bit_count() != w or not code.contains(s):
            raise DimensionMismatch("seeds must be codewords of one weight")
    rng = random.Random(seed)
    arch = OrbitArchive(code, w, seed)
    pool = list(grp.generators) + [g.inverse() for g in grp.generators]
    walker = Permutation.identity(grp.degree)
    for _ in range(budget):
        walker = walker * rng.choice(pool)
        arch.insert(walker.apply_to_word(rng.choice(seeds)))
    return arch


def _round_nearest(x: Fraction) -> int:
    return int((x + Fraction(1, 2)).__floor__())


def _stable(history: List[Fraction], window: int = STABILITY_WINDOW) -> bool:
    if len(history) < window:
        return False
    recent = history[-window:]
    lo, hi = min(recent), max(recent)
    return hi == 0 or (hi - lo) <= STABILITY_TOL * hi


def estimate_distinct(
    arch: OrbitArchive,
    j_max: int,
    seed: int = 0,
    max_samples: int = 1_000_000,
) -> int:
    """Estimate |S3| as |S2| * j / t, sampling members by multiplicity.

    Batches of ``j_max`` samples are drawn until the running estimate moves
    by less than 1% across ten consecutive batches (or the sample cap).
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    if not arch.multiplicity:
        raise EmptySeedSet("archive is empty")
    rng = random.Random(seed)
    words = sorted(arch.multiplicity)
    mults = [arch.multiplicity[word] for word in words]
    total = arch.total
    drawn = 0
    t_sum = 0
    history: List[Fraction] = []
    while True:
        for m in rng.choices(mults, weights=mults, k=j_max):
            t_sum += m
        drawn += j_max
        history.append(Fraction(total * drawn, t_sum))
        if _stable(history) or drawn + j_max > max_samples:
            return _round_nearest(history[-1])


def estimate_dominance(
    arch: OrbitArchive,
    sampler: Callable[[int], int],
    i_max: int,
    seed: int = 0,
    max_runs: int = 10_000,
) -> Fraction:
    """Estimate the dominance rate R = |C_w| / |S3| as (1 + i) / s.

    ``sampler(seed)`` must return a fresh weight-w codeword from an
    independent search run; s counts the hits that already lie in the
    archive (started at 1).  Runs grow in batches of ``i_max`` under the
    same 1%-stability rule.
    """
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    rng = random.Random(seed)
    s = 1
    runs = 0
    history: List[Fraction] = []
    while True:
        for _ in range(i_max):
            word = sampler(rng.getrandbits(63))
            if word.bit_count() != arch.w:
                raise SamplerFailure(f"sampler returned weight {word.bit_count()}")
            if word in arch:
                s += 1
        runs += i_max
        history.append(Fraction(1 + runs, s))
        if _stable(history) or runs + i_max > max_runs:
            return history[-1]


def approximate_count(distinct_estimate: int, dominance_rate) -> int:
    """The estimated coefficient: round(|S3| * R)."""
    return _round_nearest(Fraction(distinct_estimate) * Fraction(dominance_rate))


def ga_sampler(
    code: LinearCode,
    w: int,
    cfg: GaConfig,
    variant: str = "a1",
    decoder: Optional[Decoder] = None,
) -> Callable[[int], int]:
    """Factory of fresh weight-w search runs; returns the first witness of
    each run, raising SamplerFailure when a run finds none."""

    def sample(seed: int) -> int:
        run_cfg = GaConfig(
            ni=cfg.ni, ne=cfg.ne, ngmax=cfg.ngmax,
            pc=cfg.pc, pm=cfg.pm, mr=cfg.mr, seed=seed,
        )
        if variant == "a1":
            state = wga_a1(code, w, run_cfg)
        else:
            state = wga_a2(code, w, run_cfg, decoder or _default_decoder(code))
        if not state.present[w]:
            raise SamplerFailure(f"search run found no weight-{w} codeword")
        return state.first_witness[w]

    return sample


def _default_decoder(code: LinearCode) -> Decoder:
    from .gasearch import information_set_decoder

    return information_set_decoder(code)


def _bits_to_str(bits: int, n: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(n))


def _str_to_bits(text: str, n: int) -> int:
    if len(text) != n:
        raise ValueError(f"word length {len(text)} != {n}")
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
    return bits
