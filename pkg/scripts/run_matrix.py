"""Run one experiment grid and write the JSON summary.

    python3 scripts/run_matrix.py --grid stretch --out stretch.json
"""
import argparse
import json
import sys
from pathlib import Path

from hopsets import experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--grid", choices=sorted(experiments.GRIDS), default="stretch")
    ap.add_argument("--seeds", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    make = experiments.GRIDS[args.grid]
    cells = make() if args.seeds is None else make(seeds=args.seeds)
    summary = experiments.run_grid(cells, base_seed=args.seed, workers=args.workers)
    if args.out:
        args.out.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(experiments.format_summary(summary))
    return 0 if summary["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
