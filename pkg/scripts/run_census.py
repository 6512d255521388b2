"""Run the census over the exponent box and write a JSON report.

    python scripts/run_census.py --max-exponent 20 --jobs 4 --out results/census20.json
    python scripts/run_census.py --max-exponent 12 --n-points 5   # more cusps
"""

from __future__ import annotations

import argparse
import logging
import time
from pathlib import Path

from annulus_cusps.verifier import VerifierConfig, report_bytes, run_census


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-exponent", type=int, default=20)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--n-points", type=int, default=4)
    ap.add_argument("--relax-extnu-floor", action="store_true")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    config = VerifierConfig(n_points=args.n_points, relax_extnu_floor=args.relax_extnu_floor)
    t0 = time.perf_counter()
    report = run_census(args.max_exponent, workers=args.jobs, config=config)
    dt = time.perf_counter() - t0
    s = report["summary"]
    logging.info("maxExp=%d N=%d: %d profiles in %.1fs", args.max_exponent, args.n_points,
                 s["profiles"], dt)
    for verdict, count in sorted(s["verdicts"].items()):
        print(f"{verdict:>18}: {count}")
    print(f"{'rejected':>18}: {s['rejected']}")
    print(f"{'boundary':>18}: {s['boundary_profiles']}")
    if s["counterexamples"]:
        print(f"{'counterexamples':>18}: {s['counterexamples'][:20]}")
    print(s["status"])
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_bytes(report_bytes(report))
        logging.info("report written to %s", args.out)
    return 0 if s["status"] == "PASS" else 1


if __name__ == "__main__":
    raise SystemExit(main())
