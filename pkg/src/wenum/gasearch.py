"""Genetic-algorithm weight search over a linear code.

Two population shapes: information vectors of length k (encoded before
scoring) and weight-preserving words of length n scored through a decoder.
Every evaluated codeword's weight is recorded as a side effect, with a
verified witness, so a full support sweep can skip weights already seen.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .codes import LinearCode
from .errors import DecoderViolation, DimensionMismatch
from .spectra import SupportSpectrum

Decoder = Callable[[int], int]


@dataclass(frozen=True)
class GaConfig:
    """Population/evolution parameters; defaults follow the validated setup."""

    ni: int = 1000
    ne: int = 500
    ngmax: int = 100
    pc: float = 0.9
    pm: float = 0.15
    mr: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.ne <= self.ni:
            raise ValueError("need 0 < ne <= ni")
        if self.ngmax < 1:
            raise ValueError("ngmax must be >= 1")
        for name in ("pc", "pm", "mr"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be a probability")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "GaConfig":
        return cls(**data)


class SearchState:
    """Support bits found so far, with verified witnesses per weight."""

    def __init__(self, code: LinearCode, witness_cap: int = 1 << 16):
        self.code = code
        self.present: List[bool] = [False] * (code.n + 1)
        self.archive: Dict[int, Set[int]] = {}
        self.first_witness: Dict[int, int] = {}
        self.witness_cap = witness_cap
        self.generations = 0
        self.evaluations = 0

    def record(self, codeword: int) -> int:
        """Mark the codeword's weight as present; returns the weight."""
        w = codeword.bit_count()
        bucket = self.archive.setdefault(w, set())
        if codeword not in bucket and len(bucket) < self.witness_cap:
            assert self.code.contains(codeword), "witness fails membership"
            bucket.add(codeword)
        if not self.present[w]:
            self.first_witness[w] = codeword
        self.present[w] = True
        return w

    def support(self) -> SupportSpectrum:
        return SupportSpectrum.from_weights(
            self.code.n, (w for w, p in enumerate(self.present) if p)
        )

    def witnesses(self, w: int) -> Tuple[int, ...]:
        return tuple(sorted(self.archive.get(w, ())))


def information_set_decoder(code: LinearCode) -> Decoder:
    """Project a word onto the information set and re-encode."""
    info_set = code.info_set

    def decode(word: int) -> int:
        info = 0
        for i, c in enumerate(info_set):
            info |= ((word >> c) & 1) << i
        return code.encode(info)

    return decode


def syndrome_decoder(code: LinearCode) -> Decoder:
    """Bounded-distance decoding from a coset-leader table (n <= 31 only)."""
    if code.n > 31:
        raise DimensionMismatch("syndrome table decoder limited to n <= 31")
    h_rows = code.parity_check.rows

    def syndrome(word: int) -> int:
        s = 0
        for i, h in enumerate(h_rows):
            s |= ((word & h).bit_count() & 1) << i
        return s

    table: Dict[int, int] = {0: 0}
    want = 1 << len(h_rows)
    from itertools import combinations

    for wt in range(1, code.n + 1):
        if len(table) == want:
            break
        for positions in combinations(range(code.n), wt):
            e = 0
            for p in positions:
                e |= 1 << p
            s = syndrome(e)
            if s not in table:
                table[s] = e
                if len(table) == want:
                    break

    def decode(word: int) -> int:
        return word ^ table[syndrome(word)]

    return decode


def _random_word_of_weight(rng: random.Random, length: int, weight: int) -> int:
    bits = 0
    for p in rng.sample(range(length), weight):
        bits |= 1 << p
    return bits


def _mutate(rng: random.Random, word: int, length: int, pm: float, mr: float) -> int:
    # With probability pm the offspring mutates; a mutating offspring flips
    # each gene independently with probability mr.
    if rng.random() >= pm:
        return word
    for i in range(length):
        if rng.random() < mr:
            word ^= 1 << i
    return word


def _batch(fn: Callable[[int], int], items: Sequence[int], threads: int) -> List[int]:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def wga_a1(
    code: LinearCode,
    w: int,
    cfg: GaConfig,
    state: Optional[SearchState] = None,
    rng: Optional[random.Random] = None,
    threads: int = 1,
    observer: Optional[Callable[[int, Tuple[Tuple[int, int], ...]], None]] = None,
) -> SearchState:
    """Search for a weight-w codeword with an information-vector population.

    Fitness is |weight(encode(ind)) - w|; truncation selection from the
    best ne, one-point crossover, then per-gene mutation.  Every evaluated
    codeword's weight is recorded into the state.  Stops as soon as w is
    marked present, or when the generation cap is reached.
    """
    if not 0 <= w <= code.n:
        raise DimensionMismatch(f"target weight {w} out of range 0..{code.n}")
    state = state if state is not None else SearchState(code)
    rng = rng if rng is not None else random.Random(cfg.seed)
    k = code.k

    # Systematic encoding makes codeword weight >= information weight, so
    # initial individuals are capped at weight w.
    cap = min(w, k)
    population = [
        _random_word_of_weight(rng, k, rng.randint(0, cap)) for _ in range(cfg.ni)
    ]

    codewords = _batch(code.encode, population, threads)
    fits = []
    for c in codewords:
        state.record(c)
        state.evaluations += 1
        fits.append(abs(c.bit_count() - w))
    scored = list(zip(population, fits))

    ng = 1
    while not state.present[w] and ng < cfg.ngmax:
        scored.sort(key=lambda pair: pair[1])  # stable: ties keep insertion order
        if observer is not None:
            observer(ng, tuple(scored))
        nxt = scored[: cfg.ne]
        pairs = []
        for _ in range(cfg.ni - cfg.ne):
            p1 = rng.choice(nxt)[0]
            p2 = rng.choice(nxt)[0]
            if k >= 2 and rng.random() < cfg.pc:
                point = rng.randrange(1, k)
                mask = (1 << point) - 1
                ch1 = (p1 & mask) | (p2 & ~mask)
                ch2 = (p2 & mask) | (p1 & ~mask)
            else:
                ch1, ch2 = p1, p2
            ch1 = _mutate(rng, ch1, k, cfg.pm, cfg.mr)
            ch2 = _mutate(rng, ch2, k, cfg.pm, cfg.mr)
            pairs.append((ch1, ch2))
        flat = [ch for pair in pairs for ch in pair]
        encoded = _batch(code.encode, flat, threads)
        children = []
        for ch, c in zip(flat, encoded):
            state.record(c)
            state.evaluations += 1
            children.append((ch, abs(c.bit_count() - w)))
        for (ch1, f1), (ch2, f2) in zip(children[::2], children[1::2]):
            nxt.append((ch1, f1) if f1 < f2 else (ch2, f2))
        scored = nxt
        ng += 1
        state.generations += 1
    return state


def wga_a2(
    code: LinearCode,
    w: int,
    cfg: GaConfig,
    decoder: Decoder,
    state: Optional[SearchState] = None,
    rng: Optional[random.Random] = None,
    threads: int = 1,
    observer: Optional[Callable[[int, Tuple[Tuple[int, int], ...]], None]] = None,
) -> SearchState:
    """Search with a weight-w word population scored through a decoder.

    Individuals keep weight exactly w: offspring shuffle a parent's values
    on a random index subset.  Fitness is |weight(decode(ind)) - w| and
    every decoded codeword is membership-checked before recording.
    """
    if not 0 <= w <= code.n:
        raise DimensionMismatch(f"target weight {w} out of range 0..{code.n}")
    state = state if state is not None else SearchState(code)
    rng = rng if rng is not None else random.Random(cfg.seed)
    n = code.n

    def score(word: int) -> Tuple[int, int]:
        d = decoder(word)
        if not code.contains(d):
            raise DecoderViolation(f"decoder output {d:#x} is not a codeword")
        state.record(d)
        state.evaluations += 1
        return abs(d.bit_count() - w), d

    population = [_random_word_of_weight(rng, n, w) for _ in range(cfg.ni)]
    decoded = _batch(decoder, population, threads)
    scored = []
    for ind, d in zip(population, decoded):
        if not code.contains(d):
            raise DecoderViolation(f"decoder output {d:#x} is not a codeword")
        state.record(d)
        state.evaluations += 1
        scored.append((ind, abs(d.bit_count() - w)))

    ng = 1
    while not state.present[w] and ng < cfg.ngmax:
        scored.sort(key=lambda pair: pair[1])
        if observer is not None:
            observer(ng, tuple(scored))
        nxt = scored[: cfg.ne]
        offspring = []
        parents = []
        for _ in range(cfg.ni - cfg.ne):
            ind1, f1 = rng.choice(nxt)
            gamma = [i for i in range(n) if rng.random() < 0.5]
            shuffled = gamma[:]
            rng.shuffle(shuffled)
            ind2 = ind1
            for dst, src in zip(gamma, shuffled):
                bit = (ind1 >> src) & 1
                ind2 = (ind2 & ~(1 << dst)) | (bit << dst)
            parents.append((ind1, f1))
            offspring.append(ind2)
        decoded = _batch(decoder, offspring, threads)
        for (ind1, f1), ind2, d in zip(parents, offspring, decoded):
            if not code.contains(d):
                raise DecoderViolation(f"decoder output {d:#x} is not a codeword")
            state.record(d)
            state.evaluations += 1
            f2 = abs(d.bit_count() - w)
            nxt.append((ind2, f2) if f2 < f1 else (ind1, f1))
        scored = nxt
        ng += 1
        state.generations += 1
    return state


def bega(
    code: LinearCode,
    cfg: GaConfig,
    variant: str = "a1",
    decoder: Optional[Decoder] = None,
    threads: int = 1,
) -> SearchState:
    """Sweep every weight 0..n, skipping weights already marked by side
    effects; returns the final state (support bits plus witness archive)."""
    if variant not in ("a1", "a2"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "a2" and decoder is None:
        decoder = information_set_decoder(code)
    state = SearchState(code)
    rng = random.Random(cfg.seed)
    for w in range(code.n + 1):
        if state.present[w]:
            continue
        if variant == "a1":
            wga_a1(code, w, cfg, state, rng, threads)
        else:
            wga_a2(code, w, cfg, decoder, state, rng, threads)
    return state


# -- witness archive file format -------------------------------------------


def archive_to_json(state: SearchState) -> list:
    out = []
    for w in sorted(state.archive):
        for word in sorted(state.archive[w]):
            out.append({"weight": w, "codeword": _bits_to_str(word, state.code.n)})
    return out


def save_archive(state: SearchState, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(archive_to_json(state), fh, indent=1)


def load_archive(path: str, n: int) -> Dict[int, Set[int]]:
    with open(path, "r", encoding="ascii") as fh:
        data = json.load(fh)
    archive: Dict[int, Set[int]] = {}
    for entry in data:
        word = _str_to_bits(entry["codeword"], n)
        archive.setdefault(int(entry["weight"]), set()).add(word)
    return archive


def _bits_to_str(bits: int, n: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(n))


def _str_to_bits(text: str, n: int) -> int:
    if len(text) != n:
        raise ValueError(f"codeword length {len(text)} != {n}")
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
    return bits
