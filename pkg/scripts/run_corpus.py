"""Run both regression suites and write their reports to a directory."""

import argparse
import json
import time
from pathlib import Path

from resonator.corpus import DEFAULT_SEED, run_fuzz, run_reference_examples


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="reports")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--cases", type=int, default=200)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, run in (("paper-examples", lambda: run_reference_examples(args.seed)),
                      ("fuzz", lambda: run_fuzz(args.seed, args.cases))):
        start = time.perf_counter()
        res = run()
        took = time.perf_counter() - start
        (out / f"{name}.json").write_text(json.dumps(res, sort_keys=True, indent=2) + "\n")
        status = "ok" if res["ok"] else f"FAILED {res['failed']}"
        print(f"{name:16s} {status}  ({took:.1f}s)")


if __name__ == "__main__":
    main()
