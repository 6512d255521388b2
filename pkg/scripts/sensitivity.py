"""Sensitivity of the census to the ext nu >= 2m - 3 floor.

Relaxing the floor to ext nu >= 1 can only enlarge the admissible budgets,
so the maximal capacity must never drop; the script asserts that and
reports which profiles lose their positive reserve.
"""

from __future__ import annotations

import argparse
from collections import Counter

from annulus_cusps.profile import two_delta_max
from annulus_cusps.verifier import InfeasibleProfile, VerifierConfig, enumerate_profiles, max_hidden_capacity


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exponent", type=int, default=12)
    args = ap.parse_args()

    strict_cfg, relaxed_cfg = VerifierConfig(), VerifierConfig(relax_extnu_floor=True)
    gains, lost = Counter(), []
    n = 0
    for prof in enumerate_profiles(args.max_exponent):
        try:
            strict = max_hidden_capacity(prof, strict_cfg)[0]
        except InfeasibleProfile:
            continue
        relaxed, witness = max_hidden_capacity(prof, relaxed_cfg)
        assert relaxed >= strict, (prof, strict, relaxed)
        n += 1
        gains[relaxed - strict] += 1
        if two_delta_max(prof) - relaxed <= 0:
            lost.append((prof.key, two_delta_max(prof) - relaxed, witness.to_json()))

    print(f"profiles: {n}")
    print("capacity gain histogram:", dict(sorted(gains.items())))
    print(f"profiles with reserve <= 0 under the relaxed floor: {len(lost)}")
    for key, res, w in lost[:15]:
        print(f"  {key}  reserve {res}  witness {w}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
