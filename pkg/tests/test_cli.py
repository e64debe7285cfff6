"""Command-line surface: outputs, exit codes, determinism, exports."""

from __future__ import annotations

import json

from lpakit.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main
from lpakit.parser import parse_expansion
from lpakit.poly import VariableTable


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_explore_e4(capsys):
    code, out, _ = run_cli(capsys, "explore", "--seed", "e4")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "seeds: 5, variables: 5"


def test_explore_a2_variable_list(capsys):
    code, out, _ = run_cli(capsys, "explore", "--seed", "a2-toy", "--list-variables")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "seeds: 5, variables: 5"
    assert "(x1 + x2 + 1)/(x1*x2)" in lines[1:]


def test_mutate_a2(capsys):
    code, out, _ = run_cli(capsys, "mutate", "--seed", "a2-toy", "--at", "x1")
    assert code == EXIT_OK
    assert "new variable: (x2 + 1)/x1" in out


def test_mutate_slot_number(capsys):
    code, out, _ = run_cli(capsys, "mutate", "--seed", "a2-toy", "--at", "2")
    assert code == EXIT_OK
    assert "new variable: (x1 + 1)/x2" in out


def test_mutate_bad_slot(capsys):
    code, _, err = run_cli(capsys, "mutate", "--seed", "a2-toy", "--at", "x9")
    assert code == EXIT_USAGE
    assert "x9" in err


def test_unknown_seed(capsys):
    code, _, err = run_cli(capsys, "explore", "--seed", "nope")
    assert code == EXIT_USAGE
    assert "unknown seed" in err


def test_budget_exhaustion_exit(capsys):
    code, out, _ = run_cli(capsys, "explore", "--seed", "e5", "--budget", "8")
    assert code == EXIT_BUDGET
    assert "incomplete" in out


def test_lpa_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("LPA_BUDGET", "8")
    code, _, _ = run_cli(capsys, "explore", "--seed", "e5")
    assert code == EXIT_BUDGET


def test_verify_e4_text(capsys):
    code, out, _ = run_cli(capsys, "verify", "--seed", "e4")
    assert code == EXIT_OK
    assert "seeds: 5, variables: 5" in out
    assert "result: pass" in out


def test_verify_json_matches_text_numbers(capsys):
    code, out, _ = run_cli(capsys, "verify", "--seed", "e5", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["seeds"] == 16 and doc["variables"] == 10
    assert doc["passed"] is True
    code, text, _ = run_cli(capsys, "verify", "--seed", "e5")
    assert code == EXIT_OK
    assert "seeds: 16, variables: 10" in text


def test_cycles_e5(capsys):
    code, out, _ = run_cli(capsys, "cycles", "--seed", "e5")
    assert code == EXIT_OK
    assert "4: 2" in out and "5: 8" in out


def test_positivity_e4(capsys):
    code, out, _ = run_cli(capsys, "positivity", "--seed", "e4")
    assert code == EXIT_OK
    assert "positivity: pass" in out


def test_orbits_e5(capsys):
    code, out, _ = run_cli(capsys, "orbits", "--seed", "e5")
    assert code == EXIT_OK
    assert "orbits: 2" in out


def test_export_dot_e4(capsys, tmp_path):
    path = tmp_path / "e4.dot"
    code, out, _ = run_cli(capsys, "export", "--seed", "e4", "--format", "dot", "--out", str(path))
    assert code == EXIT_OK
    text = path.read_text()
    assert text.count(" -- ") == 5
    assert text.count("[label=") == 10  # 5 nodes + 5 edges


def test_export_json_e5(capsys, tmp_path):
    path = tmp_path / "e5.json"
    code, _, _ = run_cli(capsys, "export", "--seed", "e5", "--format", "json", "--out", str(path))
    assert code == EXIT_OK
    doc = json.loads(path.read_text())
    assert set(doc) == {"nodes", "edges"}
    assert len(doc["nodes"]) == 16 and len(doc["edges"]) == 24
    assert set(doc["nodes"][0]) == {"id", "cluster", "exchange"}
    assert set(doc["edges"][0]) == {"from", "to", "slot", "new_variable"}
    # Every expansion string parses back over the seed table.
    table = VariableTable([f"a{i}" for i in range(1, 9)], ["x1", "x2", "x3"])
    for node in doc["nodes"]:
        for text in node["cluster"]:
            parse_expansion(text, table)


def test_export_quotient_e6(capsys, tmp_path, ctx_e6):
    path = tmp_path / "quot.json"
    code, _, _ = run_cli(
        capsys, "export", "--seed", "e6", "--format", "json",
        "--out", str(path), "--symmetry", "builtin",
    )
    assert code == EXIT_OK
    doc = json.loads(path.read_text())
    assert len(doc["nodes"]) == 15
    assert {n["id"] for n in doc["nodes"]} == set("ABCDEFGHIJKLMNO")
    sizes = {n["id"]: n["size"] for n in doc["nodes"]}
    assert sorted(sizes.values()) == [12] * 8 + [24] * 7


def test_byte_identical_reruns(capsys):
    first = run_cli(capsys, "verify", "--seed", "e5", "--format", "json")
    second = run_cli(capsys, "verify", "--seed", "e5", "--format", "json")
    a, b = json.loads(first[1]), json.loads(second[1])
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert a == b
    third = run_cli(capsys, "export", "--seed", "e5", "--format", "json")
    fourth = run_cli(capsys, "export", "--seed", "e5", "--format", "json")
    assert third[1] == fourth[1]
    multi = run_cli(capsys, "explore", "--seed", "e5", "--workers", "4")
    single = run_cli(capsys, "explore", "--seed", "e5", "--workers", "1")
    assert multi[1] == single[1]


def test_verify_e6_exit_zero(capsys, ctx_e6):
    code, out, _ = run_cli(capsys, "verify", "--seed", "e6")
    assert code == EXIT_OK
    assert "seeds: 264, variables: 32" in out
    assert "t: 8, u: 36, x: 60, y: 32, z: 40" in out
    assert "result: pass" in out


def test_orbits_e6_labels(capsys, ctx_e6):
    code, out, _ = run_cli(capsys, "orbits", "--seed", "e6")
    assert code == EXIT_OK
    assert "orbits: 15" in out
    assert "orbit A: size 24" in out
    assert "orbit J: size 24" in out
    assert "orbit O: size 12" in out


def test_orbits_with_symmetry_file(capsys, tmp_path):
    # The pentagon rotation acts transitively on the five seeds.
    path = tmp_path / "rot.json"
    path.write_text(
        json.dumps(
            {
                "name": "a2-rotation",
                "frozen_map": {},
                "cluster_images": {"x1": "x2", "x2": "(1 + x2)/x1"},
            }
        )
    )
    code, out, _ = run_cli(
        capsys, "orbits", "--seed", "a2-toy", "--symmetry", str(path)
    )
    assert code == EXIT_OK
    assert "orbits: 1" in out
    assert "size 5" in out


def test_custom_seed_file(capsys, tmp_path):
    path = tmp_path / "toy.json"
    path.write_text(
        json.dumps(
            {
                "name": "toy",
                "frozen": ["a1"],
                "cluster": ["x1", "x2"],
                "exchange": {"x1": "a1 + x2", "x2": "a1 + x1"},
            }
        )
    )
    code, out, _ = run_cli(capsys, "explore", "--seed", str(path))
    assert code == EXIT_OK
    assert out.startswith("seeds: ")
