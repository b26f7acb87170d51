"""Batch command-line front end chaining the pipeline.

One verb per procedure: build codes, run searches, count codewords, apply
enumerator identities, solve the support system, compute group congruences,
and run the orbit estimators.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from . import autgroup, codes, counting, gasearch, gf2, montecarlo, spectra
from .errors import WenumError


class RunContext:
    """Tracks inputs/outputs for the run manifest."""

    def __init__(self, argv: List[str]):
        self.argv = argv
        self.inputs: Dict[str, str] = {}
        self.outputs: Dict[str, str] = {}
        self.started = time.monotonic()

    def read_text(self, path: str) -> str:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
        self.inputs[path] = hashlib.sha256(text.encode("ascii")).hexdigest()
        return text

    def write_text(self, path: str, text: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
        self.outputs[path] = hashlib.sha256(text.encode("ascii")).hexdigest()

    def manifest(self, args: argparse.Namespace) -> dict:
        return {
            "argv": self.argv,
            "seed": getattr(args, "seed", None),
            "threads": getattr(args, "threads", 1),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "wall_clock_s": round(time.monotonic() - self.started, 6),
        }


def _load_code(ctx: RunContext, path: str) -> codes.LinearCode:
    return codes.parse_code(ctx.read_text(path))


def _load_json(ctx: RunContext, path: str) -> dict:
    return json.loads(ctx.read_text(path))


def _dump(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _emit(ctx: RunContext, args, human: str, payload, artifact_text: Optional[str] = None):
    """Print human or JSON output; write the artifact and manifest if --out."""
    if getattr(args, "json", False):
        print(_dump(payload), end="")
    else:
        print(human)
    if getattr(args, "out", None):
        ctx.write_text(args.out, artifact_text if artifact_text is not None else _dump(payload))
        ctx.write_text(args.out + ".manifest.json", _dump(ctx.manifest(args)))


def _ga_config(ctx: RunContext, args) -> gasearch.GaConfig:
    if getattr(args, "config", None):
        cfg = gasearch.GaConfig.from_json(_load_json(ctx, args.config))
    else:
        cfg = gasearch.GaConfig()
    if getattr(args, "seed", None) is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


# -- handlers ----------------------------------------------------------------


def cmd_code_build(ctx, args):
    if args.kind == "qr":
        if args.n is None:
            raise WenumError("qr construction needs --n")
        code = codes.qr_code(args.n)
    elif args.kind == "raw":
        if not args.matrix:
            raise WenumError("raw construction needs --matrix")
        code = codes.LinearCode(gf2.parse_matrix(ctx.read_text(args.matrix)))
    else:
        raise WenumError(f"unknown construction {args.kind!r}")
    if args.extended:
        code = codes.extend_code(code)
    payload = {"n": code.n, "k": code.k, "construction": code.construction}
    _emit(ctx, args, f"built [{code.n},{code.k}] {code.construction}", payload,
          artifact_text=codes.format_code(code))


def cmd_code_info(ctx, args):
    code = _load_code(ctx, args.code)
    payload = {
        "n": code.n,
        "k": code.k,
        "construction": code.construction,
        "information_set": list(code.info_set),
    }
    if code.cyclic_gen is not None:
        payload["cyclic_generator"] = code.cyclic_gen.to01()
    human = "\n".join(f"{key}: {val}" for key, val in payload.items())
    _emit(ctx, args, human, payload)


def _archive_payload(state: gasearch.SearchState) -> dict:
    return {
        "support": list(state.support().weights()),
        "evaluations": state.evaluations,
        "generations": state.generations,
    }


def cmd_search_wga(ctx, args):
    code = _load_code(ctx, args.code)
    cfg = _ga_config(ctx, args)
    if args.variant == "a1":
        state = gasearch.wga_a1(code, args.w, cfg, threads=args.threads)
    else:
        decoder = _decoder_for(code, args.decoder)
        state = gasearch.wga_a2(code, args.w, cfg, decoder, threads=args.threads)
    payload = _archive_payload(state)
    payload["found"] = bool(state.present[args.w])
    human = (f"weight {args.w}: {'found' if payload['found'] else 'not found'}; "
             f"support so far {payload['support']}")
    _emit(ctx, args, human, payload,
          artifact_text=_dump(gasearch.archive_to_json(state)))


def cmd_search_bega(ctx, args):
    code = _load_code(ctx, args.code)
    cfg = _ga_config(ctx, args)
    decoder = _decoder_for(code, args.decoder) if args.variant == "a2" else None
    state = gasearch.bega(code, cfg, variant=args.variant, decoder=decoder,
                          threads=args.threads)
    payload = _archive_payload(state)
    human = f"support: {payload['support']} ({payload['evaluations']} evaluations)"
    _emit(ctx, args, human, payload,
          artifact_text=_dump(gasearch.archive_to_json(state)))


def _decoder_for(code, name):
    if name == "syndrome":
        return gasearch.syndrome_decoder(code)
    return gasearch.information_set_decoder(code)


def cmd_count(ctx, args):
    code = _load_code(ctx, args.code)
    budget = counting.CountBudget(args.budget)
    if args.method == "m1":
        value = counting.count_m1(code, args.w, budget)
    elif args.method == "m2":
        value = counting.count_m2(code, args.w, budget)
    else:
        value = counting.count_m3(code, args.w, budget)
    payload = {"weight": args.w, "count": str(value), "method": args.method,
               "work": budget.work}
    _emit(ctx, args, f"A_{args.w} = {value} ({args.method}, work {budget.work})", payload)


def cmd_count_exhaustive(ctx, args):
    code = _load_code(ctx, args.code)
    budget = counting.CountBudget(args.budget)
    spectrum = counting.exhaustive_spectrum(code, budget, dim_limit=args.dim_limit)
    payload = spectrum.to_json()
    payload["method"] = "exhaustive"
    _emit(ctx, args, spectra.format_spectrum_table(spectrum), payload,
          artifact_text=_dump(spectrum.to_json()))


def cmd_count_sidelnikov(ctx, args):
    approx = counting.sidelnikov_approx(args.n, args.t, args.j)
    payload = {
        "weight": args.j,
        "estimate": spectra.frac_str(approx.value),
        "method": "sidelnikov",
    }
    _emit(ctx, args,
          f"A_{args.j} ~ {approx.value} (binomial approximation, advisory only)",
          payload)


def cmd_spectrum_macwilliams(ctx, args):
    dual = spectra.WeightSpectrum.from_json(_load_json(ctx, args.spectrum))
    out = spectra.macwilliams(dual, args.k)
    _emit(ctx, args, spectra.format_spectrum_table(out), out.to_json(),
          artifact_text=_dump(out.to_json()))


def cmd_spectrum_pless(ctx, args):
    data = _load_json(ctx, args.spectrum)
    n = args.n if args.n is not None else int(data["n"])
    partial = {int(w): int(c) for w, c in data["coeffs"].items()}
    out = spectra.pless_fill(partial, n)
    _emit(ctx, args, spectra.format_spectrum_table(out), out.to_json(),
          artifact_text=_dump(out.to_json()))


def cmd_spectrum_extend(ctx, args):
    qr = spectra.WeightSpectrum.from_json(_load_json(ctx, args.spectrum))
    out = spectra.extend_spectrum_qr(qr)
    _emit(ctx, args, spectra.format_spectrum_table(out), out.to_json(),
          artifact_text=_dump(out.to_json()))


def cmd_spectrum_gleason(ctx, args):
    mode = args.mode.replace("-", "_")
    constraints = [_parse_assignment(c, int) for c in args.constraint]
    fit = spectra.gleason_fit(args.n, mode, constraints)
    payload = fit.family.to_json()
    if fit.basis_coefficients is not None:
        payload["basis_coefficients"] = [spectra.frac_str(k) for k in fit.basis_coefficients]
    _emit(ctx, args, spectra.format_family_table(fit.family), payload,
          artifact_text=_dump(payload))


def _parse_assignment(text: str, cast):
    key, _, value = text.partition("=")
    if not _:
        raise WenumError(f"expected KEY=VALUE, got {text!r}")
    return (int(key) if cast is int else key, int(value))


def _support_from_args(ctx, args) -> spectra.SupportSpectrum:
    if args.support:
        data = _load_json(ctx, args.support)
        return spectra.SupportSpectrum.from_weights(int(data["n"]), [int(w) for w in data["weights"]])
    if args.min_weight is None:
        raise WenumError("need --support FILE or --min-weight")
    if not args.doubly_even:
        raise WenumError("flag-built supports require --doubly-even")
    window = range(args.min_weight, args.n - args.min_weight + 1)
    weights = [0, args.n] + [w for w in window if w % 4 == 0]
    return spectra.SupportSpectrum.from_weights(args.n, weights)


def cmd_system_solve(ctx, args):
    primal = _support_from_args(ctx, args)
    n = primal.n
    if args.self_dual:
        dual, k = primal, n // 2
    else:
        if not args.dual_support or args.k is None:
            raise WenumError("non-self-dual solve needs --dual-support and --k")
        data = _load_json(ctx, args.dual_support)
        dual = spectra.SupportSpectrum.from_weights(int(data["n"]), [int(w) for w in data["weights"]])
        k = args.k
    family = spectra.build_system(primal, dual, n, k, symmetric=args.symmetric)
    for spec_text in args.rescale:
        weight, divisor = _parse_assignment(spec_text, int)
        name = family.params[family.pivot_weights.index(weight)]
        family = family.rescale_param(name, divisor)
    _emit(ctx, args, spectra.format_family_table(family), family.to_json(),
          artifact_text=_dump(family.to_json()))


def cmd_system_substitute(ctx, args):
    family = spectra.AffineSpectrum.from_json(_load_json(ctx, args.family))
    values = dict(_parse_param(s) for s in args.set)
    out = family.substitute(values)
    _emit(ctx, args, spectra.format_spectrum_table(out), out.to_json(),
          artifact_text=_dump(out.to_json()))


def _parse_param(text: str):
    key, _, value = text.partition("=")
    if not _:
        raise WenumError(f"expected PARAM=VALUE, got {text!r}")
    return key, Fraction(value)


def cmd_system_threshold(ctx, args):
    family = spectra.AffineSpectrum.from_json(_load_json(ctx, args.family))
    s = spectra.semi_local_threshold(family)
    _emit(ctx, args, f"threshold: {s}", {"threshold": s})


def cmd_system_lift(ctx, args):
    family = spectra.AffineSpectrum.from_json(_load_json(ctx, args.family))
    cong = spectra.lift_congruence(family, args.weight, args.residue, args.modulus)
    human = f"{cong.param} = {cong.modulus} * eta + {cong.offset}"
    _emit(ctx, args, human, cong.to_json(), artifact_text=_dump(cong.to_json()))


def cmd_system_bound(ctx, args):
    family = spectra.AffineSpectrum.from_json(_load_json(ctx, args.family))
    cong = spectra.ParameterCongruence.from_json(_load_json(ctx, args.congruence))
    bounds = spectra.bound_parameters(family, [cong])
    lo, hi = bounds[cong.param]
    cong = cong.with_bounds(lo, hi)
    _emit(ctx, args, f"eta({cong.param}) in [{lo}, {hi}]", cong.to_json(),
          artifact_text=_dump(cong.to_json()))


def cmd_system_select(ctx, args):
    cong = spectra.ParameterCongruence.from_json(_load_json(ctx, args.congruence))
    eta = spectra.select_parameter(cong, Fraction(args.estimate))
    value = cong.value_at(eta)
    payload = {"eta": str(eta), "param": cong.param, "value": str(value)}
    _emit(ctx, args, f"eta = {eta}  ({cong.param} = {value})", payload)


def cmd_group_psl2(ctx, args):
    grp = autgroup.psl2_generators(args.n)
    payload = {
        "order": str(grp.known_order),
        "generators": [g.to_json() for g in grp.generators],
    }
    _emit(ctx, args, f"order {grp.known_order}, degree {grp.degree}", payload,
          artifact_text=_dump(payload))


def _load_group(ctx, path) -> autgroup.PermGroup:
    data = _load_json(ctx, path)
    gens = data["generators"] if isinstance(data, dict) else data
    perms = tuple(autgroup.Permutation.from_json(g) for g in gens)
    order = int(data["order"]) if isinstance(data, dict) and "order" in data else None
    return autgroup.PermGroup(perms, known_order=order)


def cmd_group_fixed_subcode(ctx, args):
    code = _load_code(ctx, args.code)
    grp = _load_group(ctx, args.perms)
    perms = list(grp.generators)
    if args.select:
        wanted = [int(x) for x in args.select.split(",")]
        perms = [perms[i] for i in wanted]
    sub = autgroup.fixed_subcode(code, perms)
    payload = {"n": sub.n, "k": sub.k}
    _emit(ctx, args, f"fixed subcode dimension {sub.k}", payload,
          artifact_text=codes.format_code(sub))


def cmd_group_order_element(ctx, args):
    if args.perms:
        grp = _load_group(ctx, args.perms)
    else:
        grp = autgroup.psl2_generators(args.n)
    g = autgroup.find_element_of_order(grp, args.q, attempts=args.attempts, seed=args.seed or 0)
    payload = g.to_json()
    _emit(ctx, args, f"order-{args.q} element: cycles {g.cycles()}", payload,
          artifact_text=_dump(payload))


def cmd_group_congruence(ctx, args):
    code = _load_code(ctx, args.code)
    grp = autgroup.psl2_generators(code.n - 1)
    injected = {}
    for item in args.inject:
        label, _, path = item.partition("=")
        injected[label] = spectra.WeightSpectrum.from_json(_load_json(ctx, path))
    weights = [int(w) for w in args.weights.split(",")]
    table = autgroup.mykkeltveit_congruences(
        code, grp, weights,
        spectrum_engine=autgroup.exhaustive_engine(args.dim_limit),
        injected=injected, seed=args.seed or 0, attempts=args.attempts,
    )
    lines = [
        f"E_{w} = {wc.combined[0]} (mod {wc.combined[1]})"
        for w, wc in sorted(table.entries.items())
    ]
    _emit(ctx, args, "\n".join(lines), table.to_json(),
          artifact_text=_dump(table.to_json()))


def cmd_group_crt(ctx, args):
    residues = []
    for item in args.residue:
        r, m = item.split(",")
        residues.append((int(r), int(m)))
    combined = autgroup.crt_combine(residues)
    payload = {"residue": str(combined[0]), "modulus": str(combined[1])}
    _emit(ctx, args, f"{combined[0]} (mod {combined[1]})", payload)


def cmd_mc_expand(ctx, args):
    code = _load_code(ctx, args.code)
    grp = autgroup.psl2_generators(code.n - 1) if not args.perms else _load_group(ctx, args.perms)
    archive = gasearch.load_archive(args.witnesses, code.n)
    seeds = sorted(archive.get(args.w, ()))
    arch = montecarlo.expand_orbit(code, seeds, grp, args.budget, seed=args.seed or 0)
    payload = {"w": arch.w, "size": arch.total, "distinct": arch.distinct}
    _emit(ctx, args, f"|S2| = {arch.total}, exact distinct = {arch.distinct}", payload,
          artifact_text=_dump(arch.to_json()))


def _load_orbit(ctx, args) -> montecarlo.OrbitArchive:
    code = _load_code(ctx, args.code)
    return montecarlo.OrbitArchive.from_json(_load_json(ctx, args.orbit), code)


def cmd_mc_distinct(ctx, args):
    arch = _load_orbit(ctx, args)
    est = montecarlo.estimate_distinct(arch, args.jmax, seed=args.seed or 0)
    payload = {"distinct_estimate": str(est), "exact_distinct": arch.distinct}
    _emit(ctx, args, f"|S3| ~ {est} (archive holds {arch.distinct})", payload)


def cmd_mc_dominance(ctx, args):
    arch = _load_orbit(ctx, args)
    cfg = _ga_config(ctx, args)
    sampler = montecarlo.ga_sampler(arch.code, arch.w, cfg, variant=args.variant)
    rate = montecarlo.estimate_dominance(arch, sampler, args.imax, seed=args.seed or 0,
                                         max_runs=args.max_runs)
    payload = {"dominance": spectra.frac_str(rate)}
    _emit(ctx, args, f"R ~ {rate} ({float(rate):.3f})", payload)


def cmd_mc_estimate(ctx, args):
    arch = _load_orbit(ctx, args)
    cfg = _ga_config(ctx, args)
    est = montecarlo.estimate_distinct(arch, args.jmax, seed=args.seed or 0)
    sampler = montecarlo.ga_sampler(arch.code, arch.w, cfg, variant=args.variant)
    rate = montecarlo.estimate_dominance(arch, sampler, args.imax, seed=args.seed or 0,
                                         max_runs=args.max_runs)
    count = montecarlo.approximate_count(est, rate)
    payload = {
        "weight": arch.w,
        "distinct_estimate": str(est),
        "dominance": spectra.frac_str(rate),
        "count": str(count),
        "method": "m4",
    }
    _emit(ctx, args, f"A_{arch.w} ~ {count}  (|S3| ~ {est}, R ~ {float(rate):.3f})", payload)


# -- parser ------------------------------------------------------------------


def _common(parser):
    parser.add_argument("--seed", type=int, default=None, help="RNG seed")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", help="write the result artifact (plus manifest)")
    parser.add_argument("--json", action="store_true", help="JSON on stdout")
    parser.add_argument("--budget", type=int, default=None, help="work cap")
    parser.add_argument("--config", help="GA config JSON")
    return parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="wenum", description=__doc__)
    groups = top.add_subparsers(dest="group", required=True)

    def leaf(group_parser, name, handler, **kwargs):
        p = _common(group_parser.add_parser(name, **kwargs))
        p.set_defaults(handler=handler)
        return p

    code_p = groups.add_parser("code").add_subparsers(dest="sub", required=True)
    p = leaf(code_p, "build", cmd_code_build)
    p.add_argument("kind", choices=["qr", "raw"])
    p.add_argument("--n", type=int)
    p.add_argument("--matrix")
    p.add_argument("--extended", action="store_true")
    p = leaf(code_p, "info", cmd_code_info)
    p.add_argument("code")

    search_p = groups.add_parser("search").add_subparsers(dest="sub", required=True)
    p = leaf(search_p, "wga", cmd_search_wga)
    p.add_argument("code")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--variant", choices=["a1", "a2"], default="a1")
    p.add_argument("--decoder", choices=["info-set", "syndrome"], default="info-set")
    p = leaf(search_p, "bega", cmd_search_bega)
    p.add_argument("code")
    p.add_argument("--variant", choices=["a1", "a2"], default="a1")
    p.add_argument("--decoder", choices=["info-set", "syndrome"], default="info-set")

    count_p = groups.add_parser("count").add_subparsers(dest="sub", required=True)
    for method in ("m1", "m2", "m3"):
        p = leaf(count_p, method, cmd_count)
        p.add_argument("code")
        p.add_argument("--w", type=int, required=True)
        p.set_defaults(method=method)
    p = leaf(count_p, "exhaustive", cmd_count_exhaustive)
    p.add_argument("code")
    p.add_argument("--dim-limit", type=int, default=26)
    p = leaf(count_p, "sidelnikov", cmd_count_sidelnikov)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    spec_p = groups.add_parser("spectrum").add_subparsers(dest="sub", required=True)
    p = leaf(spec_p, "macwilliams", cmd_spectrum_macwilliams)
    p.add_argument("spectrum")
    p.add_argument("--k", type=int, required=True)
    p = leaf(spec_p, "pless", cmd_spectrum_pless)
    p.add_argument("spectrum")
    p.add_argument("--n", type=int, default=None)
    p = leaf(spec_p, "extend", cmd_spectrum_extend)
    p.add_argument("spectrum")
    p = leaf(spec_p, "gleason", cmd_spectrum_gleason)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["fsd", "doubly-even"], required=True)
    p.add_argument("--constraint", action="append", default=[], metavar="W=VALUE")

    sys_p = groups.add_parser("system").add_subparsers(dest="sub", required=True)
    p = leaf(sys_p, "solve", cmd_system_solve)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--self-dual", action="store_true")
    p.add_argument("--doubly-even", action="store_true")
    p.add_argument("--min-weight", type=int)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--support")
    p.add_argument("--dual-support")
    p.add_argument("--rescale", action="append", default=[], metavar="WEIGHT=DIVISOR",
                   help="reparameterize the pivot at WEIGHT as A_w = DIVISOR * z")
    p = leaf(sys_p, "substitute", cmd_system_substitute)
    p.add_argument("family")
    p.add_argument("--set", action="append", default=[], metavar="PARAM=VALUE")
    p = leaf(sys_p, "threshold", cmd_system_threshold)
    p.add_argument("family")
    p = leaf(sys_p, "lift", cmd_system_lift)
    p.add_argument("family")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--residue", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p = leaf(sys_p, "bound", cmd_system_bound)
    p.add_argument("family")
    p.add_argument("--congruence", required=True)
    p = leaf(sys_p, "select", cmd_system_select)
    p.add_argument("--congruence", required=True)
    p.add_argument("--estimate", required=True, help="integer or fraction p/q")

    grp_p = groups.add_parser("group").add_subparsers(dest="sub", required=True)
    p = leaf(grp_p, "psl2", cmd_group_psl2)
    p.add_argument("--n", type=int, required=True)
    p = leaf(grp_p, "fixed-subcode", cmd_group_fixed_subcode)
    p.add_argument("code")
    p.add_argument("--perms", required=True)
    p.add_argument("--select", help="comma-separated generator indices")
    p = leaf(grp_p, "order-element", cmd_group_order_element)
    p.add_argument("--n", type=int)
    p.add_argument("--perms")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--attempts", type=int, default=2000)
    p = leaf(grp_p, "congruence", cmd_group_congruence)
    p.add_argument("code")
    p.add_argument("--weights", required=True, help="comma-separated weights")
    p.add_argument("--inject", action="append", default=[], metavar="LABEL=SPECTRUM.json")
    p.add_argument("--attempts", type=int, default=2000)
    p.add_argument("--dim-limit", type=int, default=26)
    p = leaf(grp_p, "crt", cmd_group_crt)
    p.add_argument("--residue", action="append", required=True, metavar="R,M")

    mc_p = groups.add_parser("mc").add_subparsers(dest="sub", required=True)
    p = leaf(mc_p, "expand", cmd_mc_expand)
    p.add_argument("code")
    p.add_argument("--witnesses", required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--perms")
    p.set_defaults(budget=100000)
    for name, handler in (("distinct", cmd_mc_distinct), ("dominance", cmd_mc_dominance),
                          ("estimate", cmd_mc_estimate)):
        p = leaf(mc_p, name, handler)
        p.add_argument("orbit")
        p.add_argument("code")
        p.add_argument("--jmax", type=int, default=500)
        p.add_argument("--imax", type=int, default=20)
        p.add_argument("--max-runs", type=int, default=400)
        p.add_argument("--variant", choices=["a1", "a2"], default="a1")
    return top


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = RunContext(["wenum"] + argv)
    try:
        args.handler(ctx, args)
    except WenumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
