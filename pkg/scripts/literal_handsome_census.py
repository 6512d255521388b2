"""Census over the wider set of profiles that are handsome in their canonical
orientation, without discarding those that a cost-free de Jonquieres move or
an ugly t -> 1/t image would reduce.  Prints every profile whose reserve is
not positive together with the reason it is reducible."""

from __future__ import annotations

import argparse

from annulus_cusps.profile import cost_free_moves, is_reduced
from annulus_cusps.verifier import BOUNDARY, POSITIVE, VACUOUS, enumerate_profiles, verify_profile


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exponent", type=int, default=12)
    args = ap.parse_args()

    bad, n = [], 0
    for prof in enumerate_profiles(args.max_exponent, reduced_only=False):
        n += 1
        cert = verify_profile(prof)
        if cert.verdict in (POSITIVE, VACUOUS, BOUNDARY):
            continue
        bad.append(cert)
    print(f"{n} profiles, {len(bad)} with reserve <= 0")
    irreducible = 0
    for cert in bad:
        prof = cert.profile
        moves = cost_free_moves(prof)
        reason = ",".join(moves) if moves else ("ugly after t->1/t" if not is_reduced(prof) else "NONE")
        irreducible += reason == "NONE"
        print(f"  {prof.key} {cert.type_tag:>8} reserve {cert.min_reserve:4d}  reducible by: {reason}")
    print(f"not reducible: {irreducible}")
    return 1 if irreducible else 0


if __name__ == "__main__":
    raise SystemExit(main())
