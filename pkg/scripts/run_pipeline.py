"""Run every verification stage for a list of (p, n) and write one JSON report per case.

    python scripts/run_pipeline.py --out reports 2:3 3:3
"""

import argparse
import io
import json
from pathlib import Path

from central_aut.cli import make_parser, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("cases", nargs="*", default=["2:3", "3:3"], help="p:n pairs")
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for case in args.cases:
        p, n = case.split(":")
        argv = ["all", "--p", p, "--n", n, "--output", "json", "--no-timing"]
        if args.force:
            argv.append("--force")
        buf = io.StringIO()
        code = run(make_parser().parse_args(argv), out=buf)
        path = args.out / f"all_p{p}_n{n}.json"
        path.write_text(buf.getvalue())
        stages = json.loads(buf.getvalue())["stages"]
        print(f"p={p} n={n}: exit {code}  " + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in stages.items()))
        failed += code != 0
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
