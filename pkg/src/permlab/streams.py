"""Edge streams, space-bounded streaming algorithms, and replay harnesses.

A stream is an ordered edge list; order is part of its identity. Algorithms
follow an init/update/finalize contract with a read-only randomness tape
fixed before the stream starts and a state budget in bits that the harness
enforces by serializing the state after every update. Between-element
computation is unbounded in the underlying model; run_passes accepts an
optional wall-clock cap that is strictly more restrictive and exists only
to keep desk experiments bounded.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field

from .graphs import LayeredGraph

MAGIC = "PHSTREAM v1"


@dataclass
class EdgeStream:
    n: int
    directed: bool
    edges: list[tuple[int, int]]       # one-indexed vertex ids
    tags: list[str] | None = None      # provenance, parallel to edges
    shuffle_seed: int | None = None

    def __post_init__(self):
        if self.tags is not None and len(self.tags) != len(self.edges):
            raise ValueError("tags must parallel edges")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) outside [1,{self.n}]")

    def __len__(self):
        return len(self.edges)


def graph_to_stream(g: LayeredGraph, shuffle_seed: int | None = None) -> EdgeStream:
    """Serialize a layered graph: vertices numbered globally layer by layer,
    canonical order layer-major then provenance-major. A seed applies a
    uniform shuffle on top (stream order is an experiment parameter)."""
    offsets = [0]
    for size in g.layers[:-1]:
        offsets.append(offsets[-1] + size)
    rows = [
        (li, tag, offsets[li - 1] + u, offsets[li] + v)
        for (li, u, v), tag in zip(g.edges, g.tags)
    ]
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    edges = [(u, v) for _, _, u, v in rows]
    tags = [tag for _, tag, _, _ in rows]
    if shuffle_seed is not None:
        order = list(range(len(edges)))
        random.Random(shuffle_seed).shuffle(order)
        edges = [edges[i] for i in order]
        tags = [tags[i] for i in order]
    return EdgeStream(sum(g.layers), True, edges, tags, shuffle_seed)


def dump_stream(stream: EdgeStream) -> str:
    lines = [MAGIC, f"{stream.n} {len(stream.edges)} {1 if stream.directed else 0}"]
    for i, (u, v) in enumerate(stream.edges):
        if stream.tags is not None:
            lines.append(f"{u} {v} {stream.tags[i]}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_stream(text: str) -> EdgeStream:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise ValueError(f"missing header {MAGIC!r}")
    head = lines[1].split()
    if len(head) != 3:
        raise ValueError("second line must be '<n> <edges> <directed>'")
    n, count, directed = int(head[0]), int(head[1]), int(head[2])
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != count:
        raise ValueError(f"expected {count} edges, found {len(body)}")
    edges = []
    tags: list[str] = []
    tagged = None
    for ln in body:
        parts = ln.split()
        if len(parts) == 2:
            now = False
        elif len(parts) == 3:
            now = True
        else:
            raise ValueError(f"bad edge line {ln!r}")
        if tagged is None:
            tagged = now
        elif tagged != now:
            raise ValueError("mixed tagged and untagged edge lines")
        edges.append((int(parts[0]), int(parts[1])))
        if now:
            tags.append(parts[2])
    return EdgeStream(n, directed == 1, edges, tags if tagged else None)


# ---------------------------------------------------------------------------
# algorithms

class StreamAlgorithm:
    """init() -> state; update(state, edge, rand) -> state;
    finalize(state, rand) -> output. serialize(state) measures the state;
    s_bits None means unbounded."""

    s_bits: int | None = None

    def init(self):
        raise NotImplementedError

    def update(self, state, edge, rand):
        raise NotImplementedError

    def finalize(self, state, rand):
        raise NotImplementedError

    def start_pass(self, state, pass_index: int):
        """Hook at each pass boundary; default is a no-op."""
        return state

    def serialize(self, state) -> bytes:
        return json.dumps(state, sort_keys=True, default=sorted).encode()


class StreamBudgetError(RuntimeError):
    pass


@dataclass
class RunResult:
    output: object
    snapshots: list            # state after each pass
    max_state_bits: int
    elements_seen: int


def run_passes(
    alg: StreamAlgorithm,
    stream: EdgeStream,
    p: int,
    tape_seed: int = 0,
    wall_clock_cap: float | None = None,
) -> RunResult:
    """Replay the stream p times; snapshot the state at each pass boundary.
    Exceeding the state budget fails hard, naming the offending element."""
    if p < 1:
        raise ValueError("p must be at least 1")
    rand = random.Random(tape_seed)  # the read-only tape, fixed up front
    state = alg.init()
    snapshots = []
    max_bits = 0
    start = time.monotonic()
    for pass_index in range(1, p + 1):
        state = alg.start_pass(state, pass_index)
        for idx, edge in enumerate(stream.edges):
            state = alg.update(state, edge, rand)
            bits = 8 * len(alg.serialize(state))
            max_bits = max(max_bits, bits)
            if alg.s_bits is not None and bits > alg.s_bits:
                raise StreamBudgetError(
                    f"state is {bits} bits after element {idx} of pass "
                    f"{pass_index}, budget is {alg.s_bits}"
                )
            if wall_clock_cap is not None and time.monotonic() - start > wall_clock_cap:
                raise TimeoutError(
                    f"wall clock cap {wall_clock_cap}s hit at element {idx} "
                    f"of pass {pass_index}"
                )
        snapshots.append(state)
    output = alg.finalize(state, rand)
    return RunResult(output, snapshots, max_bits, p * len(stream.edges))


class CountingAlgorithm(StreamAlgorithm):
    """Counts stream elements in a fixed 64-bit state."""

    s_bits = 64

    def init(self):
        return 0

    def update(self, state, edge, rand):
        return state + 1

    def finalize(self, state, rand):
        return state

    def serialize(self, state) -> bytes:
        return int(state).to_bytes(8, "big")


class GreedyMatching(StreamAlgorithm):
    """Maximal matching: take every edge whose endpoints are both free."""

    def init(self):
        return {"matched": {}, "pairs": []}

    def update(self, state, edge, rand):
        u, v = edge
        if u not in state["matched"] and v not in state["matched"]:
            state["matched"][u] = v
            state["matched"][v] = u
            state["pairs"].append((u, v))
        return state

    def finalize(self, state, rand):
        return sorted(state["pairs"])

    def serialize(self, state) -> bytes:
        return json.dumps(sorted(state["pairs"])).encode()


class AugmentingMatching(GreedyMatching):
    """Greedy first pass, then one sweep per extra pass growing length-3
    augmenting paths found in stream order."""

    def start_pass(self, state, pass_index: int):
        state["pass"] = pass_index
        state["half"] = {}   # matched vertex -> free vertex attacking it
        return state

    def update(self, state, edge, rand):
        if state.get("pass", 1) == 1:
            return super().update(state, edge, rand)
        u, v = edge
        matched = state["matched"]
        if u not in matched and v not in matched:
            return super().update(state, edge, rand)
        for a, bnode in ((u, v), (v, u)):
            if a in matched or bnode not in matched:
                continue
            partner = matched[bnode]
            other = state["half"].get(partner)
            if other is not None and other not in matched and other != a:
                # augment: a - bnode | partner - other replaces bnode-partner
                state["pairs"].remove(
                    (bnode, partner) if (bnode, partner) in state["pairs"] else (partner, bnode)
                )
                state["pairs"].extend([(a, bnode), (partner, other)])
                for x, y in ((a, bnode), (partner, other)):
                    matched[x] = y
                    matched[y] = x
                state["half"].pop(partner, None)
                state["half"].pop(bnode, None)
            else:
                state["half"][bnode] = a
        return state


def greedy_matching_baseline() -> StreamAlgorithm:
    return GreedyMatching()


def augmenting_baseline(p: int) -> StreamAlgorithm:
    return GreedyMatching() if p == 1 else AugmentingMatching()


# ---------------------------------------------------------------------------
# distinguishing advantage

@dataclass
class AdvantageReport:
    accuracy: float
    ci_low: float
    ci_high: float
    trials: int


def advantage_estimate(
    dist1,
    dist2,
    alg_factory,
    distinguisher,
    trials: int,
    p: int,
    rng: random.Random,
) -> AdvantageReport:
    """dist1/dist2 sample streams from rng; the distinguisher maps a final
    state to 0 (first) or 1 (second). Accuracy with a 95% binomial interval."""
    if trials < 30:
        raise ValueError("need at least 30 trials")
    hits = 0
    for _ in range(trials):
        which = rng.randrange(2)
        stream = (dist1 if which == 0 else dist2)(rng)
        res = run_passes(alg_factory(), stream, p, tape_seed=rng.randrange(2**32))
        if distinguisher(res.output) == which:
            hits += 1
    acc = hits / trials
    half = 1.96 * math.sqrt(max(acc * (1 - acc), 1e-12) / trials)
    return AdvantageReport(acc, max(0.0, acc - half), min(1.0, acc + half), trials)


# ---------------------------------------------------------------------------
# communication-pattern replay

def _party_of(tag: str) -> str:
    return tag if tag.startswith("player:") else "referee"


@dataclass
class ReplayReport:
    bytes_per_party: dict[str, int]
    handoffs: int              # entries into player segments, all passes
    passes: int
    output: object


def partitioned_replay(
    stream: EdgeStream,
    alg: StreamAlgorithm,
    p: int = 1,
    tape_seed: int = 0,
    fake_stream: EdgeStream | None = None,
) -> ReplayReport:
    """Replay the stream as a communication protocol: whenever provenance
    changes, the current party hands the serialized state to the next, and
    the handoff is charged to the sender. With fake_stream set, passes
    1..p-1 replay it instead of the real stream (the real referee input is
    only consumed on the final pass)."""
    if stream.tags is None:
        raise ValueError("partitioned replay needs provenance tags")
    if fake_stream is not None and fake_stream.tags is None:
        raise ValueError("fake stream needs provenance tags")
    rand = random.Random(tape_seed)
    state = alg.init()
    bytes_per: dict[str, int] = {}
    handoffs = 0
    for pass_index in range(1, p + 1):
        src = stream if (fake_stream is None or pass_index == p) else fake_stream
        state = alg.start_pass(state, pass_index)
        party = None
        for edge, tag in zip(src.edges, src.tags):
            now = _party_of(tag)
            if now != party:
                if party is not None:
                    bytes_per[party] = bytes_per.get(party, 0) + len(alg.serialize(state))
                if now.startswith("player:"):
                    handoffs += 1
                party = now
            state = alg.update(state, edge, rand)
        if party is not None:
            bytes_per[party] = bytes_per.get(party, 0) + len(alg.serialize(state))
    return ReplayReport(bytes_per, handoffs, p, alg.finalize(state, rand))
