import io
import json
import re
import subprocess
import sys

import pytest

from ordered_shuffle import (algorithm_up, build_fixed_poset, build_periodic_poset,
                             build_shuffling_poset, find_orbit, make_params, parse_deck)
from ordered_shuffle.cli import main
from ordered_shuffle.formats import (export_dot, label_poset_from_record, orbit_from_record,
                                     params_from_record, weight_from_record, weight_table)

from conftest import pairs_upto


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, out = run(*argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_shuffle_worked_example():
    assert run("shuffle", "--n", "12", "--k", "3", "--deck", "021100122110") == (0, "200210111210\n")


def test_verify_theorem():
    code, out = run("verify-theorem", "--n", "12", "--k", "3")
    assert code == 0 and out.startswith("pass") and "ord_3(8)=2" in out
    rec = run_json("verify-theorem", "--n", "12", "--k", "3")
    assert rec["passed"] and rec["order"] == 2 and rec["method"] == "basek"


@pytest.mark.parametrize("argv, status", [
    (["shuffle", "--n", "12", "--k", "5", "--deck", "021100122110"], 1),
    (["shuffle", "--n", "12", "--k", "3", "--deck", "02x"], 1),
    (["frobnicate"], 1),
    ([], 1),
    (["shuffle", "--n", "12", "--k", "3"], 1),
    (["validate-weight", "--n", "4", "--k", "2", "--values", "0,x"], 1),
    (["shuffle", "--n", "12", "--k", "3", "--deck", "0211"], 2),
    (["validate-weight", "--n", "4", "--k", "2", "--values", "0,0,0,0"], 2),
    (["weight", "--n", "32", "--k", "4", "--method", "basek"], 2),
    (["verify-theorem", "--n", "32", "--k", "4"], 2),
    (["make-period", "--n", "12", "--k", "3", "--d", "3"], 2),
    (["max-settle", "--n", "24", "--k", "2", "--budget", "1000"], 3),
])
def test_exit_codes(argv, status, capsys):
    assert main(argv, stdout=io.StringIO()) == status


def test_budget_env(monkeypatch):
    monkeypatch.setenv("ORDERED_SHUFFLE_BUDGET", "16")
    assert run("max-settle", "--n", "8", "--k", "2")[0] == 3
    assert run("max-settle", "--n", "8", "--k", "2", "--budget", "256")[0] == 0


def test_unwritable_output(tmp_path):
    assert run("weight", "--n", "12", "--k", "3", "--output", str(tmp_path / "no" / "such"))[0] == 2


def test_output_file(tmp_path):
    path = tmp_path / "w.json"
    assert run("weight", "--n", "12", "--k", "3", "--format", "json", "--output", str(path))[0] == 0
    assert json.loads(path.read_text())["phi"] == [0, 1, 2] * 4


def test_orbit_round_trip():
    rec = run_json("orbit", "--n", "12", "--k", "3", "--deck", "021100122110")
    assert rec["schema"] == "ordered-shuffle/orbit/v1"
    p = params_from_record(rec["params"])
    assert orbit_from_record(rec) == find_orbit(parse_deck("021100122110"), p)


@pytest.mark.parametrize("method", ["up", "down", "symmetric", "general"])
def test_weight_round_trip(method):
    rec = run_json("weight", "--n", "32", "--k", "4", "--method", method)
    wf = weight_from_record(rec)
    assert rec["phi"] == list(wf.values) and rec["symmetric"] in (True, False)


def test_weight_text_table():
    code, out = run("weight", "--n", "12", "--k", "3")
    assert out.strip() == weight_table(algorithm_up(make_params(12, 3)))
    assert [c.strip() for c in out.splitlines()[1].split("|")[1:]] == [str(v) for v in [0, 1, 2] * 4]


@pytest.mark.parametrize("kind", ["fixed", "periodic"])
def test_poset_round_trip(kind):
    rec = run_json("poset", "--n", "12", "--k", "3", "--kind", kind)
    p = params_from_record(rec["params"])
    sp = build_shuffling_poset(p, algorithm_up(p))
    built = build_fixed_poset(sp) if kind == "fixed" else build_periodic_poset(sp)
    parsed = label_poset_from_record(rec["poset"])
    assert (parsed.levels, parsed.cover_edges, parsed.names) == (built.levels, built.cover_edges, built.names)


def test_shuffling_poset_record():
    rec = run_json("poset", "--n", "12", "--k", "3", "--kind", "shuffling")
    assert rec["poset"]["cycles"] == [[0], [1, 4], [2, 8], [3, 9], [5], [6], [7, 10], [11]]
    code, out = run("poset", "--n", "12", "--k", "3")
    assert out.splitlines()[0] == "level 0: (0) (3 9) (6)"


def test_counts_and_enumerations():
    rec = run_json("count-fixed", "--n", "972", "--k", "2")
    assert int(rec["count"]) == 128
    fixed = run_json("enum-fixed", "--n", "8", "--k", "2")["decks"]
    assert fixed == ["00000000", "10000000", "11101000", "11111110", "11111111"]
    assert int(run_json("count-fixed", "--n", "8", "--k", "2")["count"]) == len(fixed)
    periodic = run_json("enum-periodic", "--n", "12", "--k", "3", "--limit", "3")["decks"]
    assert periodic == ["000000000000", "000000000100", "000000100000"]
    code, out = run("enum-fixed", "--n", "8", "--k", "2", "--limit", "2")
    assert out.split() == fixed[:2]


def test_periods_and_witness():
    assert run_json("periods", "--n", "24", "--k", "2")["divisors"] == [1, 2, 3, 6]
    rec = run_json("make-period", "--n", "24", "--k", "2", "--d", "3")
    assert (rec["settle"], rec["period"]) == (0, 3)
    orbit = find_orbit(parse_deck(rec["deck"]), make_params(24, 2))
    assert orbit.period == 3 and orbit.settle == 0


def test_cycle_stats_and_scan():
    rec = run_json("cycle-stats", "--n", "32", "--k", "4")
    assert rec["histogram"] == {"1": 4, "2": 2, "3": 4, "6": 2} and rec["lcm_is_max"]
    rec = run_json("conjecture-scan", "--max-n", "40")
    assert rec["counterexamples"] == []


def test_max_settle():
    rec = run_json("max-settle", "--n", "12", "--k", "3")
    p = make_params(12, 3)
    assert find_orbit(parse_deck(rec["witness"]), p).settle == rec["max_settle"]


ALL_COMMANDS = [
    ["shuffle", "--n", "12", "--k", "3", "--deck", "021100122110"],
    ["orbit", "--n", "12", "--k", "3", "--deck", "021100122110"],
    ["weight", "--n", "24", "--k", "6"],
    ["validate-weight", "--n", "12", "--k", "3", "--values", "0,1,2,0,1,2,0,1,2,0,1,2"],
    ["poset", "--n", "24", "--k", "2", "--kind", "periodic", "--dot"],
    ["poset", "--n", "24", "--k", "2", "--kind", "fixed"],
    ["count-fixed", "--n", "64", "--k", "2", "--j", "3"],
    ["enum-fixed", "--n", "12", "--k", "3", "--j", "3"],
    ["enum-periodic", "--n", "12", "--k", "2"],
    ["periods", "--n", "32", "--k", "4"],
    ["make-period", "--n", "32", "--k", "4", "--d", "6"],
    ["verify-theorem", "--n", "24", "--k", "3"],
    ["cycle-stats", "--n", "24", "--k", "6"],
    ["conjecture-scan", "--max-n", "30"],
    ["max-settle", "--n", "8", "--k", "2", "--j", "3"],
]


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=lambda a: a[0])
def test_deterministic_and_schema(argv):
    assert run(*argv) == run(*argv)
    first, second = run_json(*argv), run_json(*argv)
    assert first == second and first["schema"] == f"ordered-shuffle/{argv[0]}/v1"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordered_shuffle", "shuffle", "--n", "8", "--k", "2",
                           "--deck", "01211201"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "10212011\n"


# --- DOT -------------------------------------------------------------------------

def dot_shape(text):
    ranks = re.findall(r"\{rank=same; ([^}]*)\}", text)
    nodes = re.findall(r"^  (\w+) \[label=", text, re.M)
    edges = re.findall(r"^  \w+ -> \w+", text, re.M)
    return ranks, nodes, edges


@pytest.mark.parametrize("k", [2, 3, 6])
def test_dot_chain(k):
    p = make_params(k, k)
    ranks, nodes, edges = dot_shape(export_dot(build_fixed_poset(build_shuffling_poset(p, algorithm_up(p)))))
    assert len(ranks) == k and len(nodes) == k and len(edges) == k - 1


def test_dot_fixed_n12_k3(tmp_path):
    p = make_params(12, 3)
    fp = build_fixed_poset(build_shuffling_poset(p, algorithm_up(p)))
    path = tmp_path / "fixed.dot"
    text = export_dot(fp, path)
    assert path.read_text() == text
    ranks, nodes, edges = dot_shape(text)
    assert len(nodes) == 8 and len(ranks) == 3
    assert text.startswith("digraph fixed_poset {")


@pytest.mark.parametrize("N, k", pairs_upto(24))
def test_dot_node_counts(N, k):
    p = make_params(N, k)
    sp = build_shuffling_poset(p, algorithm_up(p))
    for obj, size in [(sp, N), (build_fixed_poset(sp), len(sp.cycles)), (build_periodic_poset(sp), N)]:
        text = export_dot(obj)
        _, nodes, _ = dot_shape(text)
        assert len(nodes) == size
        assert export_dot(obj) == text
