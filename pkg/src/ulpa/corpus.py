"""Reference ultragraphs and the test corpus."""
from __future__ import annotations

import json
import random
from importlib import resources

from .ultragraph import OMEGA, EdgeClass, Ultragraph, make, validate

REFERENCE = ("g_loop", "g_fan", "g_omega", "loop2", "two_cycle")


def reference(name: str) -> Ultragraph:
    from .io import spec_from_json
    text = resources.files("ulpa.data").joinpath(f"{name}.json").read_text()
    return spec_from_json(json.loads(text))


def reference_path(name: str):
    return resources.files("ulpa.data").joinpath(f"{name}.json")


G_LOOP = make(["v"], [("e", "v", ["v"], 1)])
G_FAN = make(["v", "w"], [("e", "v", ["v", "w"], 1)])
G_OMEGA = make(["u", "w"], [("a", "u", ["w"], "omega"), ("g", "u", ["u"], 1)])
LOOP2 = make(["v"], [("e", "v", ["v"], 2)])
TWO_CYCLE = make(["a", "b"], [("e1", "a", ["b"]), ("e2", "b", ["a"])])

CURATED = {
    "g_loop": G_LOOP,
    "g_fan": G_FAN,
    "g_omega": G_OMEGA,
    "loop2": LOOP2,
    "two_cycle": TWO_CYCLE,
    "isolated": make(["a", "b"], []),
    "point": make(["v"], []),
    "edge": make(["a", "b"], [("e", "a", ["b"])]),
    "ultra_fork": make(["a", "b", "c"], [("e", "a", ["b", "c"])]),
    "loop_and_return": make(["a", "b"], [("e", "a", ["a", "b"]), ("f", "b", ["a"])]),
    "omega_escape": make(["u", "w", "x"], [("a", "u", ["w"], "omega"), ("b", "u", ["x"])]),
    "omega_to_loop": make(["u", "v"], [("a", "u", ["v"], "omega"), ("e", "v", ["v"])]),
    "three_cycle": make(["a", "b", "c"], [("e1", "a", ["b"]), ("e2", "b", ["c"]), ("e3", "c", ["a"])]),
    "ultra_three_cycle": make(["a", "b", "c"], [("e1", "a", ["b", "c"]), ("e2", "b", ["c"]), ("e3", "c", ["a"])]),
    "linked_loops": make(["a", "b"], [("e", "a", ["a"]), ("f", "a", ["b"]), ("g", "b", ["b"])]),
    "omega_two_breaking": make(
        ["u", "v", "w"],
        [("a", "u", ["w"], "omega"), ("b", "v", ["w"], "omega"), ("g", "u", ["u", "v"]), ("h", "v", ["u"])],
    ),
    "omega_and_loop2": make(["u", "w"], [("a", "u", ["w"], "omega"), ("g", "u", ["u"], 2)]),
    "figure_eight": make(["v"], [("e", "v", ["v"]), ("f", "v", ["v"])]),
    "fan_with_emitter": make(
        ["v", "u", "w"], [("e", "v", ["v", "u"]), ("a", "u", ["w"], "omega"), ("b", "u", ["v"])]
    ),
    "two_sinks": make(["a", "b", "c"], [("e", "a", ["b"]), ("f", "a", ["c"])]),
    "cycle_with_tail": make(
        ["a", "b", "c", "d"], [("e1", "a", ["b"]), ("e2", "b", ["a", "c"]), ("f", "d", ["a"])]
    ),
    "mult2_into_sink": make(["v", "w"], [("e", "v", ["w"], 2), ("g", "v", ["v"])]),
}


def random_spec(rng: random.Random, max_vertices: int = 4, max_classes: int = 4) -> Ultragraph:
    """A random presentation in which no OMEGA class lies on a cycle."""
    while True:
        n = rng.randint(1, max_vertices)
        vs = [f"v{i}" for i in range(n)]
        k = rng.randint(0, max_classes)
        classes = []
        for i in range(k):
            src = rng.choice(vs)
            size = rng.randint(1, min(2, n))
            rng_set = frozenset(rng.sample(vs, size))
            mult = rng.choice([1, 1, 1, 2, OMEGA])
            classes.append(EdgeClass(f"c{i}", src, rng_set, mult))
        g = validate(Ultragraph(tuple(vs), tuple(classes)))
        if _omega_off_cycles(g):
            return g


def _omega_off_cycles(g: Ultragraph) -> bool:
    from .ultragraph import reachability
    reach = reachability(g)
    for c in g.classes:
        if c.is_omega and any(c.source in reach[u] for u in c.range):
            return False
    return True


def corpus(n_random: int = 12, seed: int = 20240611) -> dict:
    """Curated specs plus seeded random ones; at most 4 vertices and 4 classes each."""
    out = dict(CURATED)
    rng = random.Random(seed)
    i = 0
    while i < n_random:
        g = random_spec(rng)
        if g in out.values():
            continue
        out[f"random_{i:02d}"] = g
        i += 1
    return out
