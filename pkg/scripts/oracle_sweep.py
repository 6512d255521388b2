"""Genus formula against sampled curves on every small classified profile."""

from __future__ import annotations

import argparse
import itertools
import time

from annulus_cusps.oracle import DEGREE_CAP, DegenerateSample, check_genus_formula
from annulus_cusps.profile import AnnulusProfile, ProfileError, canonical_form


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exponent", type=int, default=3)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    e = args.max_exponent
    seen, failed, total = set(), [], 0
    t0 = time.perf_counter()
    for p, q, r, s in itertools.product(range(1, e + 1), range(-e, e + 1), range(-e, e + 1), range(1, e + 1)):
        prof = AnnulusProfile(p, q, r, s)
        try:
            canon, typ = canonical_form(prof)
        except ProfileError:
            continue
        if canon.key in seen or (p + r) < 1 or (q + s) < 1:
            continue
        if 2 * (p + r) * (q + s) > DEGREE_CAP:
            continue
        seen.add(canon.key)
        try:
            rep = check_genus_formula(canon, trials=args.trials, seed=args.seed)
        except (DegenerateSample, ValueError) as exc:
            print(f"{canon.key} {typ}: skipped ({exc})")
            continue
        total += 1
        status = "ok" if rep.passed else "MISMATCH"
        if not rep.passed:
            failed.append(canon.key)
        print(f"{canon.key} {typ:>8}  2delta_max={rep.formula:3d}  agree {rep.agreeing}/{rep.valid}  {status}")
    print(f"{total} profiles, {len(failed)} mismatches, {time.perf_counter() - t0:.1f}s")
    if failed:
        print("mismatches:", failed)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
