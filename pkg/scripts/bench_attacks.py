"""Run the default Attacks grid (p=50, n in {2,4}, m in {1,2}) and write a CSV.

    python3 scripts/bench_attacks.py [-o results.csv] [--timeout 600]
"""
import argparse
import sys

from wfagg import attacks


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", default="attacks_bench.csv")
    ap.add_argument("--timeout", type=float, default=600.0)
    ap.add_argument("--instances", type=int, default=3)
    args = ap.parse_args()
    result = attacks.bench(attacks.BenchConfig(timeout=args.timeout, instances=args.instances))
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(result.csv())
    print(result.csv(), end="")
    if result.disagreements:
        print(f"{len(result.disagreements)} instances where the encodings disagree", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
