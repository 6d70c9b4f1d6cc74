"""Compare the pruned polygon search against exhaustion on fuzzed diagrams."""

import argparse
import time

from nicehf import diagram as dg
from nicehf.moves import apply_move, fuzz_invariance, move_from_json
from nicehf.oracle import FACE_CAP, all_polygons, compare_with_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moves", type=int, default=6)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    checked = pairs = bad = 0
    t0 = time.perf_counter()
    for d in dg.corpus(5):
        for seed in range(args.seeds):
            e = d
            for st in fuzz_invariance(d, args.moves, seed).steps:
                if st["move"] is not None:
                    e = apply_move(e, move_from_json(st["move"]))
            free = len(e.faces) - len(e.basepoints)
            if free > FACE_CAP:
                continue
            checked += 1
            pairs += len(all_polygons(e))
            bad += len(compare_with_search(e))
    print(f"{checked} diagrams, {pairs} (x, y) pairs with polygons, {bad} discrepancies, "
          f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
