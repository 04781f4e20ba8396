"""Write the JSON invariant reports for p = 2 and p = 3.

    python3 scripts/make_report.py [--outdir reports] [--p 2 3]
"""

import argparse
import sys
import time
from pathlib import Path

from hopfp3.cli import RunConfig, build_report, emit


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for p in args.p:
        t = time.perf_counter()
        doc = build_report(RunConfig(p=p, seed=args.seed))
        path = out / f"report_p{p}.json"
        emit(doc, str(path))
        s = doc["summary"]
        ok &= s["members_pass_axioms"] and s["identities_pass"]
        failed = [k for k, v in s["distinguishing_checks"].items() if not v]
        print(f"p={p}: {path} ({time.perf_counter() - t:.0f}s); failed distinguishing checks: {failed or 'none'}; "
              f"C16 classes {s['c16_count']} (stated {s['c16_stated']})", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
