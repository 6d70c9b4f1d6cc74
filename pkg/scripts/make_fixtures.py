"""Write the standard diagrams to fixtures/*.json, plus a few broken files for negative tests."""

import argparse
import json
from pathlib import Path

from nicehf import diagram as dg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    ap.add_argument("--max-p", type=int, default=7)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for d in dg.corpus(args.max_p):
        name = d.name.replace("#", "_sum_").replace("(", "").replace(")", "").replace(",", "_")
        dg.save(d, out / f"{name}.json")
        print(name, len(d.crossings), "crossings")

    # negative fixtures
    obj = dg.to_dict(dg.make_s3_torus())
    obj["basepoints"] = []
    (out / "broken_no_basepoint.json").write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    (out / "broken_syntax.json").write_text('{"alpha": [[0]], "beta": \n')


if __name__ == "__main__":
    main()
