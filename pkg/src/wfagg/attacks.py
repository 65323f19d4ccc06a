"""The Attacks benchmark: instance generation, the three encodings, timing."""
from __future__ import annotations

import csv
import io
import multiprocessing as mp
import random
import time
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

ENCODINGS = ("aggregate", "join", "mae")
MAX_JOIN_M = 8
CSV_COLUMNS = ["p", "n", "m", "encoding", "mean_seconds", "timeouts"]

AGGREGATE_ENCODING = "win(X) :- max(M), player(X), #count{Y : attacks(Y,X), win(Y)} <= M.\n"

MAE_ENCODING = """\
win(X) :- player(X), not lose(X).
lose(X) :- count(X,Y,S), max(M), S > M.
count(X,Y,1) :- aux(X,Y).
count(X,Y',S') :- count(X,Y,S), aux(X,Y'), Y < Y', S' = S+1.
aux(X,Y) :- attacks(Y,X), win(Y).
"""


@dataclass(frozen=True)
class AttacksInstance:
    players: Tuple[str, ...]
    attacks: Tuple[Tuple[str, str], ...]
    m: int

    @property
    def p(self) -> int:
        return len(self.players)

    def facts(self) -> str:
        lines = [f"player({x})." for x in self.players]
        lines += [f"attacks({x},{y})." for x, y in self.attacks]
        lines.append(f"max({self.m}).")
        return "\n".join(lines) + "\n"


def example14() -> AttacksInstance:
    """Six players, each attacking two others, threshold one."""
    targets = {"a": "bc", "b": "ac", "c": "ab", "d": "bf", "e": "cf", "f": "de"}
    return AttacksInstance(
        tuple("abcdef"),
        tuple((x, y) for x in "abcdef" for y in targets[x]),
        1,
    )


def random_instance(p: int, n: int, m: int, seed: int) -> AttacksInstance:
    """Players ``p1..pP``; each attacks ``n`` distinct others chosen uniformly."""
    if not 1 <= n < p:
        raise ValueError(f"need 1 <= n < p, got n={n}, p={p}")
    if m < 1:
        raise ValueError(f"need m >= 1, got m={m}")
    rng = random.Random(seed)
    players = [f"p{k}" for k in range(1, p + 1)]
    attacks = []
    for x in players:
        others = [y for y in players if y != x]
        for y in sorted(rng.sample(others, n), key=players.index):
            attacks.append((x, y))
    return AttacksInstance(tuple(players), tuple(attacks), m)


def join_encoding(m: int) -> str:
    if m > MAX_JOIN_M:
        raise ValueError(f"join encoding is generated for m <= {MAX_JOIN_M}, got {m}")
    k = m + 1
    parts = [f"max({m})"]
    for j in range(1, k + 1):
        parts.append(f"attacks(Y{j},X)")
        parts.append(f"win(Y{j})")
        parts.extend(f"Y{i} < Y{j}" for i in range(1, j))
    return "win(X) :- player(X), not lose(X).\n" + f"lose(X) :- {', '.join(parts)}.\n"


def encoding_text(encoding: str, m: int) -> str:
    if encoding == "aggregate":
        return AGGREGATE_ENCODING
    if encoding == "join":
        return join_encoding(m)
    if encoding == "mae":
        return MAE_ENCODING
    raise ValueError(f"unknown encoding {encoding!r}; choose from {', '.join(ENCODINGS)}")


def program_text(instance: AttacksInstance, encoding: str) -> str:
    return instance.facts() + encoding_text(encoding, instance.m)


def win_verdicts(text: str) -> Dict[str, str]:
    """Solve ``text`` and map each player to ``true``, ``false`` or ``undefined``."""
    from .solve import solve_text

    result = solve_text(text)
    out = {}
    for a in result.base:
        if a.pred == "player":
            out[a.args[0]] = "false"
    for a in result.true:
        if a.pred == "win":
            out[a.args[0]] = "true"
    for a in result.undefined:
        if a.pred == "win":
            out[a.args[0]] = "undefined"
    return out


# -- timing ---------------------------------------------------------------------


def _child(text: str, memory_cap: Optional[int], queue) -> None:
    if memory_cap:
        import resource

        resource.setrlimit(resource.RLIMIT_AS, (memory_cap, memory_cap))
    try:
        start = time.perf_counter()
        verdicts = win_verdicts(text)
        queue.put(("ok", time.perf_counter() - start, verdicts))
    except MemoryError:
        queue.put(("memory", None, None))


def timed_run(text: str, timeout: float, memory_cap: Optional[int] = None):
    """Solve in a child process.  Returns ``(seconds or None, verdicts or None)``."""
    ctx = mp.get_context("fork")
    queue = ctx.Queue()
    proc = ctx.Process(target=_child, args=(text, memory_cap, queue))
    proc.start()
    try:
        status, seconds, verdicts = queue.get(timeout=timeout)
    except Exception:
        status, seconds, verdicts = "timeout", None, None
    proc.join(1)
    if proc.is_alive():
        proc.kill()
        proc.join()
    if status != "ok":
        return None, None
    return seconds, verdicts


@dataclass(frozen=True)
class BenchConfig:
    players: Sequence[int] = (50,)
    attacks: Sequence[int] = (2, 4)
    maxes: Sequence[int] = (1, 2)
    encodings: Sequence[str] = ENCODINGS
    instances: int = 3
    seed: int = 1
    timeout: float = 600.0
    memory_cap: Optional[int] = None


@dataclass
class BenchResult:
    rows: List[Dict]
    disagreements: List[Tuple[int, int, int, int]]

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow(row)
        return buf.getvalue()


def bench(cfg: BenchConfig) -> BenchResult:
    """Mean solve time per grid cell and encoding over ``cfg.instances`` instances.

    Each solve runs in its own process under the time and memory budget; a
    run exceeding either counts as a timeout.  Win verdicts of the encodings
    are compared on every instance where all of them finished.
    """
    rows, disagreements = [], []
    for p in cfg.players:
        for n in cfg.attacks:
            for m in cfg.maxes:
                times: Dict[str, List[float]] = {e: [] for e in cfg.encodings}
                timeouts = {e: 0 for e in cfg.encodings}
                for k in range(cfg.instances):
                    inst = random_instance(p, n, m, cfg.seed + k)
                    verdicts = {}
                    for e in cfg.encodings:
                        seconds, v = timed_run(program_text(inst, e), cfg.timeout, cfg.memory_cap)
                        if seconds is None:
                            timeouts[e] += 1
                        else:
                            times[e].append(seconds)
                            verdicts[e] = v
                    if len(verdicts) > 1 and len({tuple(sorted(v.items())) for v in verdicts.values()}) > 1:
                        disagreements.append((p, n, m, cfg.seed + k))
                for e in cfg.encodings:
                    ts = times[e]
                    rows.append({
                        "p": p, "n": n, "m": m, "encoding": e,
                        "mean_seconds": f"{sum(ts) / len(ts):.6f}" if ts else "",
                        "timeouts": timeouts[e],
                    })
    return BenchResult(rows, disagreements)
