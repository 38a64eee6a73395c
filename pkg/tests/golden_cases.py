"""Golden CLI invocations on the three reference specs.

Regenerate with:  python3 tests/golden_cases.py
"""
from pathlib import Path

from ulpa.cli import run
from ulpa.corpus import reference_path

GOLDEN = Path(__file__).parent / "golden"

PER_SPEC = {
    "g_loop": {
        "quotient": ["--W", ""],
        "nf": ["--expr", "s(e)*st(e) + 2*s(e)^2*st(e)"],
        "member": ["--expr", "p({v}) - s(e)*st(e)", "--W", ""],
        "module": ["--type", "twisted", "--cycle", "e", "--poly", "x^2+x+1", "--field", "f2",
                   "--depth", "4", "--act", "s(e) + st(e)"],
    },
    "g_fan": {
        "quotient": ["--W", "w"],
        "nf": ["--expr", "s(e)*p({v})*st(e)"],
        "member": ["--expr", "p({w})", "--W", "w"],
        "module": ["--type", "sink", "--vertex", "w", "--depth", "3", "--act", "st(e)"],
    },
    "g_omega": {
        "quotient": ["--W", "w", "--S", "u"],
        "nf": ["--expr", "st(a:2)*s(a:2) - st(g)*s(a)"],
        "member": ["--expr", "p({u}) - s(g)*st(g)", "--W", "w", "--S", "u"],
        "module": ["--type", "emitter", "--vertex", "u", "--depth", "3", "--act", "s(g)*st(g)"],
    },
}

COMMON = {
    "validate": [],
    "analyze": [],
    "hs": [],
    "ideals": [],
    "primes": ["--field", "f2", "--deg", "2"],
    "primitives": ["--field", "f2", "--deg", "2"],
    "isotropy": ["--len", "2"],
    "compare-induced": ["--field", "f2", "--deg", "2"],
}


def cases():
    out = []
    for spec, extra in PER_SPEC.items():
        cmds = dict(COMMON)
        cmds.update(extra)
        for cmd in sorted(cmds):
            for js in (False, True):
                argv = [cmd, str(reference_path(spec))] + cmds[cmd] + (["--json"] if js else [])
                name = f"{spec}__{cmd}.{'json' if js else 'txt'}"
                out.append((name, argv))
    return out


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in cases():
        status, text = run(argv)
        assert status == 0, (name, text)
        (GOLDEN / name).write_text(text)


if __name__ == "__main__":
    regenerate()
