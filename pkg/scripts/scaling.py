"""Ground and solve the aggregate Attacks encoding for growing p and fit a log-log slope.

    python3 scripts/scaling.py [--players 50 100 200 400 800] [-n 4] [-m 2] [--seed 1]
"""
import argparse
import math
import statistics
import time

from wfagg import attacks
from wfagg.engine import well_founded_model
from wfagg.grounder import ground
from wfagg.parser import parse_program


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--players", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("-n", type=int, default=4)
    ap.add_argument("-m", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--encoding", choices=attacks.ENCODINGS, default="aggregate")
    args = ap.parse_args()

    print("p,ground_size,atoms,iterations,seconds")
    sizes, times = [], []
    for p in args.players:
        text = attacks.program_text(attacks.random_instance(p, args.n, args.m, args.seed), args.encoding)
        start = time.perf_counter()
        g = ground(parse_program(text), "relevant")
        w = well_founded_model(g)
        seconds = time.perf_counter() - start
        size = sum(1 + len(r.body) for r in g.rules)
        sizes.append(size)
        times.append(seconds)
        print(f"{p},{size},{len(w.base)},{w.iterations},{seconds:.4f}")
    if len(sizes) > 1:
        slope, _ = statistics.linear_regression([math.log(s) for s in sizes], [math.log(t) for t in times])
        print(f"log-log slope: {slope:.2f}")


if __name__ == "__main__":
    main()
