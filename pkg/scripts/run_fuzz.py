"""Seeded fuzzing of move invariance over the corpus; prints one line per run."""

import argparse
import json
import time

from nicehf import diagram as dg
from nicehf.moves import FuzzConfig, fuzz_invariance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moves", type=int, default=10)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--max-crossings", type=int, default=20)
    ap.add_argument("--json", action="store_true", help="dump full reports as JSON lines")
    args = ap.parse_args()
    total = 0
    t0 = time.perf_counter()
    for d in dg.corpus(5):
        for seed in range(args.seeds):
            cfg = FuzzConfig(n_moves=args.moves, seed=seed, max_crossings=args.max_crossings)
            rep = fuzz_invariance(d, config=cfg)
            n = sum(1 for s in rep.steps if s["move"] is not None)
            total += n
            if args.json:
                print(json.dumps(rep.to_json(), sort_keys=True))
            else:
                print(f"{d.name:22s} seed {seed}: {n:3d} moves, (dim, b) {rep.initial} -> {rep.final}")
    print(f"{total} moves, no invariance violations, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
