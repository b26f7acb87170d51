"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
and enforcing its stated tolerance (exact unless noted) and time limit."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import golden
from oracles import dual_spectrum_by_enumeration, random_full_rank_code, spectrum_by_enumeration
from wenum import autgroup, codes, counting, gasearch, montecarlo, spectra


@contextmanager
def criterion(num: int, name: str, limit_s: float):
    start = time.perf_counter()
    failed = True
    try:
        yield
        failed = False
    finally:
        elapsed = time.perf_counter() - start
        status = "FAIL" if failed else "PASS"
        print(f"ACCEPTANCE {num:02d} {name}: {status} ({elapsed:.1f}s / limit {limit_s:.0f}s)")
    assert elapsed < limit_s, f"criterion {num} exceeded {limit_s}s ({elapsed:.1f}s)"


def test_criterion_01_golay_oracle_suite(qr23, eqr24):
    with criterion(1, "golay-oracle-suite", 5.0):
        golay = counting.exhaustive_spectrum(qr23)
        assert golay[7] == 253 and golay[8] == 506
        extended = counting.exhaustive_spectrum(eqr24)
        assert extended[8] == 759 and extended[12] == 2576
        for w in range(24):
            assert counting.count_m1(qr23, w) == golay[w]
            assert counting.count_m3(qr23, w) == golay[w]
        for w in range(25):
            assert counting.count_m1(eqr24, w) == extended[w]
            if w % 2 == 0:
                assert counting.count_m2(eqr24, w) == extended[w]


def test_criterion_02_macwilliams_random_codes():
    with criterion(2, "macwilliams-random-codes", 5.0):
        rng = random.Random(2024)
        for _ in range(20):
            n = rng.randint(6, 16)
            k = rng.randint(2, min(9, n - 1))
            rows = random_full_rank_code(rng, n, k)
            spectrum = spectra.WeightSpectrum.from_dict(n, spectrum_by_enumeration(rows))
            dual = spectra.WeightSpectrum.from_dict(n, dual_spectrum_by_enumeration(rows))
            assert spectra.macwilliams(spectrum, n - k) == dual
            assert spectra.macwilliams(dual, k) == spectrum
            assert spectra.macwilliams(spectra.macwilliams(spectrum, n - k), k) == spectrum


def test_criterion_03_pless_extension_identities(qr17, qr23):
    with criterion(3, "pless-extension-identities", 5.0):
        for code in (qr17, qr23):
            n = code.n
            a = counting.exhaustive_spectrum(code)
            for j in range(1, (n - 1) // 2 + 1):
                assert 2 * j * a[2 * j] == (n - (2 * j - 1)) * a[2 * j - 1]
            e = spectra.extend_spectrum_qr(a)  # verifies both closed forms
            for j in range(1, (n - 1) // 2 + 1):
                assert e[2 * j] == a[2 * j] + a[2 * j - 1]
        assert 28 * golden.QR191_PARTIAL[28] == 164 * golden.QR191_PARTIAL[27] == 20830460


def test_criterion_04_eqr192_system_reproduction():
    with criterion(4, "eqr192-system-reproduction", 120.0):
        support = spectra.SupportSpectrum.from_weights(
            192, [0, 192] + list(range(28, 165, 4))
        )
        family = spectra.build_system(support, support, 192, 96, symmetric=True)
        assert len(family.params) == 2
        family = family.rescale_param("z1", 48).rescale_param("z2", 6)
        for w, (const, c1, c2) in golden.EQR192_FAMILY.items():
            assert family.rows[w] == (const, (c1, c2)), f"row {w}"
        likely = family.substitute({"z1": 18145, "z2": 19781679})
        for w, value in golden.EQR192_LIKELY.items():
            assert likely[w] == value, f"substituted row {w}"
        assert likely.total == 1 << 96
        assert spectra.semi_local_threshold(family) == 32


def test_criterion_05_eqr200_system_reproduction():
    with criterion(5, "eqr200-system-reproduction", 120.0):
        support = spectra.SupportSpectrum.from_weights(
            200, [0, 200] + list(range(32, 169, 4))
        )
        family = spectra.build_system(support, support, 200, 100, symmetric=True)
        assert len(family.params) == 1
        family = family.rescale_param("z1", 25, "z")
        for w, (const, c) in golden.EQR200_FAMILY.items():
            assert family.rows[w] == (const, (c,)), f"row {w}"
        cong = spectra.lift_congruence(family, 32, *golden.EQR200_E32_CONGRUENCE)
        assert (cong.param, cong.offset, cong.modulus) == ("z", 111639, 157608)
        lo, hi = spectra.bound_parameters(family, [cong])["z"]
        assert (lo, hi) == (0, 295)


def test_criterion_06_congruence_arithmetic():
    with criterion(6, "congruence-arithmetic", 1.0):
        # length 192: Sylow-2 source values from the fixed-subcode counts
        by_label = golden.EQR192_SUBGROUP_COUNTS
        spectra_192 = {
            label: spectra.WeightSpectrum.from_dict(192, {28: row[1], 32: row[2]})
            for label, row in by_label.items()
        }
        sylow2 = autgroup.sylow_two_spectrum(
            spectra_192["H2"], spectra_192["G40"], spectra_192["G41"], m=5
        )
        assert sylow2[28] == 4656
        assert sylow2[32] == 33 * 5274 - 16 * (30 + 42) == 172890
        for w, expected in ((28, golden.EQR192_E28_CONGRUENCE),
                            (32, golden.EQR192_E32_CONGRUENCE)):
            residues = [
                (sylow2[w] % 64, 64),
                (spectra_192["S3"][w] % 3, 3),
                (spectra_192["S5"][w] % 5, 5),
                (spectra_192["S19"][w] % 19, 19),
                (spectra_192["S191"][w] % 191, 191),
            ]
            assert autgroup.crt_combine(residues) == expected

        # length 200, weight 32
        counts = {label: row[1] for label, row in golden.EQR200_SUBGROUP_COUNTS.items()}
        sylow2_200 = autgroup.sylow_two_spectrum(
            spectra.WeightSpectrum.from_dict(200, {32: counts["H2"]}),
            spectra.WeightSpectrum.from_dict(200, {32: counts["G40"]}),
            spectra.WeightSpectrum.from_dict(200, {32: counts["G41"]}),
            m=2,
        )
        assert sylow2_200[32] == 13279 and sylow2_200[32] % 8 == 7
        residues = [
            (sylow2_200[32] % 8, 8),
            (counts["S3"] % 9, 9),
            (counts["S5"] % 25, 25),
            (counts["S11"] % 11, 11),
            (counts["S199"] % 199, 199),
        ]
        assert autgroup.crt_combine(residues) == golden.EQR200_E32_CONGRUENCE


def test_criterion_07_mykkeltveit_desk_scale(eqr24, psl23):
    with criterion(7, "mykkeltveit-desk-scale", 60.0):
        exact = counting.exhaustive_spectrum(eqr24)
        table = autgroup.mykkeltveit_congruences(eqr24, psl23, [8])
        assert table.entries[8].combined == (exact[8], 6072) == (759, 6072)


def test_criterion_08_bega_completeness(qr23):
    with criterion(8, "bega-completeness", 600.0):
        target = (0, 7, 8, 11, 12, 15, 16, 23)
        complete = 0
        for seed in range(10):
            cfg = gasearch.GaConfig(ni=1000, ne=500, ngmax=100,
                                    pc=0.9, pm=0.15, mr=0.25, seed=seed)
            state = gasearch.bega(qr23, cfg)
            # soundness must hold in every run
            for w, bucket in state.archive.items():
                for c in bucket:
                    assert c.bit_count() == w and qr23.contains(c)
            if state.support().weights() == target:
                complete += 1
        assert complete >= 9, f"support recovered in only {complete}/10 runs"


def test_criterion_09_m4_accuracy(eqr24, psl23):
    with criterion(9, "m4-accuracy", 600.0):
        hits = 0
        for seed in range(10):
            found = gasearch.wga_a1(
                eqr24, 8, gasearch.GaConfig(ni=150, ne=75, ngmax=20, seed=100 + seed)
            )
            arch = montecarlo.expand_orbit(
                eqr24, sorted(found.archive[8]), psl23, budget=100_000, seed=200 + seed
            )
            est = montecarlo.estimate_distinct(arch, 500, seed=300 + seed)
            sampler = montecarlo.ga_sampler(
                eqr24, 8, gasearch.GaConfig(ni=60, ne=30, ngmax=15)
            )
            rate = montecarlo.estimate_dominance(
                arch, sampler, 25, seed=400 + seed, max_runs=200
            )
            approx = montecarlo.approximate_count(est, rate)
            if abs(approx - 759) <= 0.15 * 759:
                hits += 1
        assert hits >= 8, f"within 15% for only {hits}/10 seeds"


def test_criterion_10_parameter_selection():
    with criterion(10, "parameter-selection", 1.0):
        # congruences as lifted in criteria 4/5: z1 = 72580 eta + 18145,
        # z2 = 580640 eta + 39919, z = 157608 eta + 111639
        c1 = spectra.ParameterCongruence("z1", 18145, 72580)
        c2 = spectra.ParameterCongruence("z2", 39919, 580640)
        c3 = spectra.ParameterCongruence("z", 111639, 157608)
        # z1 = A_27 / 7 and z2 = A_31, from the search-based estimates
        assert spectra.select_parameter(c1, Fraction(golden.QR191_M4_ROWS[0][4], 7)) == 0
        assert spectra.select_parameter(c2, golden.QR191_M4_ROWS[1][4]) == 34
        # z = A_31 / 4 for the length-199 code
        assert spectra.select_parameter(c3, Fraction(golden.QR199_M4_ESTIMATE, 4)) == 10
