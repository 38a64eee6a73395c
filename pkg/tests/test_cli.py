import itertools
import json
import subprocess
import sys

import pytest

from golden_cases import GOLDEN, cases
from ulpa.cli import main, run
from ulpa.corpus import REFERENCE, reference, reference_path
from ulpa.errors import ParseError, ValidationError
from ulpa.io import dumps_spec, load_spec, loads_spec
from ulpa.lattice import is_hereditary_saturated

CASES = cases()


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden_byte_stable(name, argv):
    status, text = run(argv)
    assert status == 0
    assert text == (GOLDEN / name).read_text()
    assert run(argv)[1] == text


def test_every_subcommand_has_golden_on_each_reference():
    from ulpa.cli import COMMANDS
    have = {(n.split("__")[0], n.split("__")[1].rsplit(".", 1)[0]) for n, _ in CASES}
    for spec in ("g_loop", "g_fan", "g_omega"):
        for cmd in COMMANDS:
            assert (spec, cmd) in have


def _golden_json(spec, cmd):
    return json.loads((GOLDEN / f"{spec}__{cmd}.json").read_text())


def _hs_brute(g):
    out = []
    for r in range(len(g.vertices) + 1):
        for sub in itertools.combinations(g.vertices, r):
            if is_hereditary_saturated(g, set(sub)):
                out.append("{%s}" % ",".join(sub))
    return out


@pytest.mark.parametrize("spec", ["g_loop", "g_fan", "g_omega"])
def test_golden_values_against_oracles(spec):
    g = reference(spec)
    assert _golden_json(spec, "hs")["results"]["hereditary_saturated"] == _hs_brute(g)
    primes = _golden_json(spec, "primes")["results"]["primes"]
    from ulpa.ultragraph import exclusive_cycles
    n_nongraded = sum(1 for p in primes if p["kind"] == "non-graded")
    assert n_nongraded == 2 * len(exclusive_cycles(g))  # x+1 and x^2+x+1 over F2
    for row in _golden_json(spec, "compare-induced")["results"]["modules"]:
        assert row["ok"]
    assert _golden_json(spec, "module")["results"]["annihilator_ok"]


def test_analyze_fan():
    res = _golden_json("g_fan", "analyze")["results"]
    assert res["census"] == {"sinks": ["w"], "regular": ["v"], "infinite_emitters": []}
    assert res["downward_directed"] and not res["condition_K"]
    assert res["prime"] and res["primitive"] and not res["simple"]


def test_reference_examples():
    assert len(_golden_json("g_loop", "primes")["results"]["primes"]) == 3
    assert _golden_json("g_fan", "member")["results"]["member"] is True


def test_reference_files_round_trip():
    for name in REFERENCE:
        g = load_spec(reference_path(name))
        assert loads_spec(dumps_spec(g)) == g
    g = load_spec(reference_path("g_fan"))
    assert len(g.vertices) == 2 and len(g.classes) == 1


def test_load_errors(tmp_path):
    with pytest.raises(ValidationError):
        loads_spec('{"vertices": ["v"], "classes": [{"id": "e", "source": "v", "range": ["v"], "multiplicity": 0}]}')
    text = '{\n  "vertices": ["v"],\n  "classes": [],\n  "colour": 1\n}'
    with pytest.raises(ParseError) as ei:
        loads_spec(text)
    assert (ei.value.line, ei.value.col) == (4, 3)
    with pytest.raises(ParseError):
        loads_spec("{")
    assert loads_spec('{"vertices": ["u", "w"], "classes": [{"id": "a", "source": "u", "range": ["w"], '
                      '"multiplicity": "omega"}]}').is_infinite_emitter("u")


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [], "classes": [], "x": 1}')
    assert main(["validate", str(bad)]) == 1
    assert "ParseError" in capsys.readouterr().err
    fan = str(reference_path("g_fan"))
    assert main(["member", fan, "--expr", "p({v})", "--W", "w"]) == 0
    assert "member: false" in capsys.readouterr().out
    assert main(["nf", fan, "--expr", "s(q)"]) == 1
    assert main(["primes", str(reference_path("g_loop"))]) == 1  # Q enumeration refused
    assert main(["primes", str(reference_path("g_loop")), "--poly", "x^2-2"]) == 0


def test_counterexample_exit(monkeypatch):
    import ulpa.cli as cli
    from ulpa.groupoid import CompareReport

    def broken(g, d, depth, field=None, cap=None, strict=False):
        return CompareReport(d, depth, 1, ("gen", "b", None, None))
    monkeypatch.setattr(cli, "compare_induced_chen", broken)
    status, text = run(["compare-induced", str(reference_path("g_fan")), "--field", "f2"])
    assert status == 2 and "ok: false" in text


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "ulpa.cli", "hs", str(reference_path("g_fan"))],
                         capture_output=True, text=True, check=True)
    assert out.stdout == (GOLDEN / "g_fan__hs.txt").read_text()
