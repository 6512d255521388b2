"""Command line front end: ``annulus-cusps <subcommand> [flags]``.

Exit codes: 0 success / PASS, 1 Counterexample or validation failure,
2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .branch import (
    TopologyError,
    delta_invariant,
    excess_floor,
    external_codimension,
    milnor_number,
    parse_pairs,
    y_codimension,
)
from .lattice import (
    LatticeError,
    canonical_divisor,
    divisor_to_json,
    excess,
    graph_to_dot,
    graph_to_json,
    resolve_branch,
    rough_m_number,
    zariski_fujita,
)
from .oracle import DegenerateSample, check_genus_formula
from .profile import (
    N_POINTS,
    AnnulusProfile,
    BudgetError,
    ProfileError,
    canonical_form,
    normalize_to_handsome,
    profile_invariants,
)
from .verifier import COUNTEREXAMPLE, VerifierConfig, report_bytes, run_census, verify_profile

log = logging.getLogger("annulus_cusps")


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _text_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _profile_from(args) -> AnnulusProfile:
    missing = [k for k in "pqrs" if getattr(args, k) is None]
    if missing:
        raise ProfileError("missing " + ", ".join(f"--{k}" for k in missing))
    return AnnulusProfile(args.p, args.q, args.r, args.s)


def _require_format(args, allowed: tuple[str, ...]) -> None:
    if args.format not in allowed:
        raise ValueError(f"--format {args.format} is not available for {args.command}")


# ------------------------------------------------------------------ subcommands


def cmd_invariants(args) -> tuple[str, int]:
    _require_format(args, ("text", "json"))
    topo = parse_pairs(args.pairs)
    if topo.is_smooth:
        raise TopologyError("a smooth branch has no singular invariants")
    g = resolve_branch(topo)
    m0, n0 = topo.pairs[0]
    doc = {
        "pairs": topo.to_json(),
        "m": topo.multiplicity,
        "nu": y_codimension(topo),
        "extnu": external_codimension(topo),
        "delta": delta_invariant(topo),
        "mu": milnor_number(topo),
        "eta": _frac(excess(g)),
        "etaFloor": _frac(excess_floor(m0, n0)),
        "KKD": _frac(rough_m_number(g)),
    }
    if args.format == "json":
        return _dump_json(doc), 0
    lines = [f"pairs = {topo}", f"m = {doc['m']}", f"nu = {doc['nu']}",
             f"extnu = {doc['extnu']}", f"delta = {doc['delta']}", f"mu = {doc['mu']}",
             f"eta = {_text_frac(excess(g))}", f"eta floor = {_text_frac(excess_floor(m0, n0))}",
             f"K(K+D) = {_text_frac(rough_m_number(g))}"]
    return "\n".join(lines) + "\n", 0


def cmd_resolve(args) -> tuple[str, int]:
    topo = parse_pairs(args.pairs)
    g = resolve_branch(topo)
    if args.format == "dot":
        return graph_to_dot(g), 0
    k = canonical_divisor(g)
    pos, neg = zariski_fujita(g)
    doc = {
        "graph": graph_to_json(g),
        "K": divisor_to_json(k),
        "P": divisor_to_json(pos),
        "N": divisor_to_json(neg),
        "eta": _frac(excess(g)),
        "KKD": _frac(rough_m_number(g)),
    }
    if args.format == "json":
        return _dump_json(doc), 0
    lines = [f"weights = {list(g.weights)}",
             "edges = " + ", ".join(f"E{a + 1}-E{b + 1}" for a, b in sorted(sorted(e) for e in g.edges)),
             f"arrows = {[a + 1 for a in g.arrows]}",
             "K = (" + ", ".join(_text_frac(x) for x in k) + ")",
             "N = (" + ", ".join(_text_frac(x) for x in neg) + ")",
             f"eta = {_text_frac(excess(g))}",
             f"K(K+D) = {_text_frac(rough_m_number(g))}"]
    return "\n".join(lines) + "\n", 0


def cmd_profile(args) -> tuple[str, int]:
    _require_format(args, ("text", "json"))
    prof = _profile_from(args)
    inv = profile_invariants(prof)
    canon, _ = canonical_form(prof)
    doc = {"profile": list(prof.key), "canonical": list(canon.key), **inv.to_json()}
    if args.format == "json":
        return _dump_json(doc), 0
    lines = [f"profile = ({prof})", f"canonical = ({canon})", f"type = {inv.type_tag}",
             f"handsome = {'yes' if inv.handsome else 'no'}",
             f"reduced = {'yes' if inv.reduced else 'no'}",
             f"2delta_max = {inv.two_delta_max}"]
    if inv.det_prime is not None:
        lines.append(f"det' = {inv.det_prime}")
    if inv.s_bound is not None:
        lines.append(f"S <= {inv.s_bound}")
    lines.append(f"sum(m_i - 1) <= {inv.multiplicity_cap}")
    return "\n".join(lines) + "\n", 0


def _census_text(summary: dict) -> str:
    v = summary["verdicts"]
    lines = [f"maxExp = {summary['max_exponent']}  N = {summary['n_points']}"
             + ("  (relaxed ext nu floor)" if summary["relax_extnu_floor"] else ""),
             f"profiles = {summary['profiles']}"]
    lines += [f"  {k}: {v[k]}" for k in sorted(v)]
    lines.append("boundary = " + " ".join("(" + ",".join(map(str, b)) + ")"
                                        for b in summary["boundary_profiles"]))
    if summary["counterexamples"]:
        lines.append("counterexamples = " + " ".join(
            "(" + ",".join(map(str, c)) + ")" for c in summary["counterexamples"]))
    lines.append(summary["status"])
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[str, int]:
    _require_format(args, ("text", "json"))
    config = VerifierConfig(n_points=args.n_points, relax_extnu_floor=args.relax_extnu_floor)
    if any(getattr(args, k) is not None for k in "pqrs"):
        cert = verify_profile(_profile_from(args), config).to_json()
        code = 1 if cert["verdict"] == COUNTEREXAMPLE else 0
        if args.format == "json":
            return _dump_json(cert), code
        lines = [f"{k} = {cert[k]}" for k in ("profile", "type", "two_delta_max", "s_bound",
                                              "max_capacity", "min_reserve", "verdict")]
        if cert["witness"]:
            lines.insert(-1, f"witness = {json.dumps(cert['witness'], sort_keys=True)}")
        return "\n".join(lines) + "\n", code
    if args.max_exponent < config.n_points:
        raise ValueError(f"--max-exponent must be >= {config.n_points}")
    out = Path(args.out) if args.out else None
    stream = out.with_name(out.name + ".partial.jsonl") if out else None
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        if stream.exists() and not args.resume:
            stream.unlink()
    report = run_census(args.max_exponent, workers=args.jobs, config=config,
                        stream_path=stream, resume=args.resume)
    if out is not None:
        out.write_bytes(report_bytes(report))
        stream.unlink(missing_ok=True)
    summary = report["summary"]
    code = 0 if summary["status"] == "PASS" else 1
    if args.format == "json":
        return _dump_json(summary), code
    return _census_text(summary), code


def cmd_oracle(args) -> tuple[str, int]:
    _require_format(args, ("text", "json"))
    prof = _profile_from(args)
    rep = check_genus_formula(prof, trials=args.trials, seed=args.seed)
    code = 0 if rep.passed else 1
    if args.format == "json":
        return _dump_json(rep.to_json()), code
    lines = [f"profile = ({prof})", f"2delta_max = {rep.formula}"]
    for sd, n, d in zip(rep.seeds, rep.counts, rep.degrees):
        lines.append(f"  seed {sd}: double points = {n}, root degree = {d}")
    lines.append(f"agreement = {rep.agreeing}/{rep.valid}"
                 + (f" ({rep.degenerate} degenerate samples redrawn)" if rep.degenerate else ""))
    lines.append("PASS" if rep.passed else "FAIL")
    return "\n".join(lines) + "\n", code


def cmd_normalize(args) -> tuple[str, int]:
    _require_format(args, ("text", "json"))
    prof = _profile_from(args)
    out = normalize_to_handsome(prof)
    inv = profile_invariants(out)
    if args.format == "json":
        return _dump_json({"input": list(prof.key), "output": list(out.key),
                           "type": inv.type_tag, "reduced": inv.reduced}), 0
    return f"({prof}) -> ({out})  type {inv.type_tag}\n", 0


COMMANDS = {
    "invariants": cmd_invariants,
    "resolve": cmd_resolve,
    "profile": cmd_profile,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "normalize": cmd_normalize,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="annulus-cusps",
                                     description="Cusp budgets of rational annuli in the plane.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp_: argparse.ArgumentParser) -> None:
        sp_.add_argument("--format", choices=("text", "json", "dot"), default="text")
        sp_.add_argument("--out", help="write the document here instead of stdout")

    def exps(sp_: argparse.ArgumentParser) -> None:
        for k in "pqrs":
            sp_.add_argument(f"--{k}", type=int)

    for name in ("invariants", "resolve"):
        sp_ = sub.add_parser(name)
        sp_.add_argument("--pairs", required=True, help="characteristic pairs 'm1,n1;m2,n2'")
        common(sp_)
    for name in ("profile", "normalize"):
        sp_ = sub.add_parser(name)
        exps(sp_)
        common(sp_)

    sp_ = sub.add_parser("verify", help="census over the exponent box (or one profile)")
    exps(sp_)
    sp_.add_argument("--max-exponent", type=int, default=20)
    sp_.add_argument("--jobs", type=int, default=1)
    sp_.add_argument("--resume", action="store_true")
    sp_.add_argument("--relax-extnu-floor", action="store_true")
    sp_.add_argument("--n-points", type=int, default=N_POINTS, choices=range(4, 9),
                     metavar="N")
    common(sp_)

    sp_ = sub.add_parser("oracle", help="sampled double point counts vs the genus formula")
    exps(sp_)
    sp_.add_argument("--trials", type=int, default=3)
    sp_.add_argument("--seed", type=int, default=0)
    common(sp_)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be positive")
    # the census writes its own report file; other commands redirect stdout
    out_path = None if args.command == "verify" else args.out
    try:
        text, code = COMMANDS[args.command](args)
    except (TopologyError, LatticeError, ProfileError, BudgetError, DegenerateSample,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if out_path:
        try:
            Path(out_path).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
