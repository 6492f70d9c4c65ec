import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from firebreak.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "src" / "firebreak" / "schemas"


def load_schema(name):
    from referencing import Registry, Resource

    contents = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
    registry = Registry().with_resources(
        (key, Resource.from_contents(value)) for key, value in contents.items()
    )
    validator = jsonschema.Draft7Validator(contents[name], registry=registry)
    return validator.validate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_generate_graph_file(capsys):
    code, out = run(capsys, "generate", "--family", "complete", "--n", "4")
    assert code == 0
    assert out.startswith("p 4 6")


def test_generate_dot(capsys):
    code, out = run(capsys, "generate", "--family", "path", "--n", "3", "--dot")
    assert code == 0 and "0 -- 1" in out


def test_orient_and_solve_pipeline(tmp_path, capsys):
    gfile = tmp_path / "pet.g"
    code, out = run(capsys, "generate", "--family", "petersen")
    gfile.write_text(out)
    code, out = run(capsys, "orient", "--recipe", "subcubic", "--in", str(gfile))
    assert code == 0
    ofile = tmp_path / "pet.o"
    ofile.write_text(out)
    code, out = run(capsys, "solve", "--in", str(ofile), "--f", "1")
    assert code == 0
    result = json.loads(out)
    assert result["beta"] <= 2 and result["exact"]
    load_schema("solve.json")(result)


def test_solve_best_complete_five(capsys):
    code, out = run(capsys, "solve-best", "--family", "complete", "--n", "5", "--f", "1")
    assert code == 0
    result = json.loads(out)
    assert result["beta"] == 2
    load_schema("solve.json")(result)


def test_solve_best_echoes_seed(capsys):
    code, out = run(capsys, "solve-best", "--family", "random_tree", "--n", "5", "--seed", "3")
    assert code == 0
    result = json.loads(out)
    assert result["seed"] == 3 and result["beta"] == 1


def test_simulate_json(tmp_path, capsys):
    code, out = run(capsys, "orient", "--recipe", "complete", "--n", "5")
    ofile = tmp_path / "k5.o"
    ofile.write_text(out)
    code, out = run(capsys, "simulate", "--in", str(ofile), "--start", "0", "--f", "1",
                    "--strategy", "complete-cyclic")
    assert code == 0
    trace = json.loads(out)
    assert trace["burned"] == 2 and trace["replay_valid"]
    load_schema("trace.json")(trace)


def test_bounds_json(capsys):
    code, out = run(capsys, "bounds", "--family", "complete_bipartite", "--p", "4", "--q", "4")
    assert code == 0
    entries = json.loads(out)
    load_schema("bounds.json")(entries)
    values = {e["name"]: e for e in entries}
    assert values["biclique-outdegree-plus"]["value"] == "3"


def test_solve_undirected(capsys):
    code, out = run(capsys, "solve-undirected", "--family", "star", "--n", "6", "--start", "0")
    assert code == 0
    result = json.loads(out)
    assert result["beta"] == 5 and result["saved"] == 1


def test_verify_suite_exit_zero(capsys):
    code, out = run(capsys, "verify", "recurrence-closed-form")
    assert code == 0
    assert "4/4 checks passed" in out


def test_verify_suite_json(capsys):
    code, out = run(capsys, "verify", "recurrence-closed-form", "--json")
    assert code == 0
    load_schema("suite.json")(json.loads(out))


def test_orient_family_with_recipe_flags(capsys):
    # recipe flags like --k must not leak into the family builder
    code, out = run(capsys, "orient", "--recipe", "bounded-degree", "--family", "random_regular",
                    "--n", "12", "--d", "4", "--k", "4", "--seed", "2")
    assert code == 0
    from firebreak.graphs import read_orientation

    o = read_orientation(out)
    assert o.n == 12 and o.graph.m == 24
    assert o.meta.get("scheme") == "bounded"


def test_usage_error_exit_two(capsys):
    assert main(["solve-best", "--family", "complete", "--n", "9"]) == 2
    assert main(["bounds", "--in", "/nonexistent/file.g"]) == 2


def test_unknown_subcommand_exit_two():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_malformed_input_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.g"
    bad.write_text("p 3 1\ne 2 2\n")
    assert main(["solve-best", "--in", str(bad)]) == 2
