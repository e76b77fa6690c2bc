import json

import pytest

from polysweep.cli import main, parse_input
from polysweep.errors import InputError
from polysweep.polytope import vrep_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_parse_builtins():
    assert parse_input("cube:3").dim == 3
    assert parse_input("pyramid:polygon:4").dim == 3
    assert parse_input("product:cube:2:polygon:3").dim == 4
    assert parse_input("prism:cross:3").dim == 4
    assert parse_input("point").dim == 0
    assert parse_input("segment").dim == 1
    with pytest.raises(InputError):
        parse_input("pentagon")
    with pytest.raises(InputError):
        parse_input("cube:3:junk")


def test_cdindex_sweep_pentagon(capsys):
    code, obj = run_json(
        capsys, "cdindex", "--input", "polygon:5", "--method", "sweep"
    )
    assert code == 0
    assert obj["schema"] == 1
    assert obj["cd"] == {"cc": 1, "d": 3}
    assert len(obj["per_vertex"]) == 5
    assert obj["per_vertex"][0]["cd"] == {"cc": 1}
    assert obj["per_vertex"][-1]["cd"] == {}


def test_toric_methods_agree(capsys):
    results = []
    for method in ("def", "cd", "sweep", "symmetric"):
        code, obj = run_json(
            capsys, "toric", "--input", "cube:3", "--method", method
        )
        assert code == 0
        results.append(obj["toric"])
    assert all(r == [1, 5, 5, 1] for r in results)


def test_extended(capsys):
    code, obj = run_json(capsys, "extended", "--input", "cross:3")
    assert code == 0
    assert obj["extended"] == {"1": [1, 3, 3, 1], "d": [6, 6], "dc": [4]}


def test_partition(capsys):
    code, obj = run_json(capsys, "partition", "--input", "polygon:5")
    assert code == 0
    assert obj["verified"] is True
    assert sorted(b["word"] for b in obj["blocks"]) == ["cc", "d", "d", "d"]
    assert [b["size"] for b in obj["blocks"]] == [9, 4, 4, 4]


def test_partition_dimension_gate(capsys):
    code = main(["partition", "--input", "cube:3", "--max-dim", "2"])
    assert code == 2


def test_verify_passes(capsys):
    code, obj = run_json(capsys, "verify", "--input", "pyramid:polygon:4")
    assert code == 0
    assert all(c["pass"] for c in obj["checks"])


def test_verify_degenerate_dimensions(capsys):
    for spec in ("point", "segment", "polygon:3"):
        code, obj = run_json(capsys, "verify", "--input", spec)
        assert code == 0, spec
        assert all(c["pass"] for c in obj["checks"])


def test_flag_command(capsys):
    code, obj = run_json(capsys, "flag", "--input", "polygon:5")
    assert code == 0
    assert obj["f"] == {"": 1, "0": 5, "1": 5, "0,1": 10}
    assert obj["h"] == {"": 1, "0": 4, "1": 4, "0,1": 1}
    assert obj["ab"] == {"aa": 1, "ab": 4, "ba": 4, "bb": 1}


def test_verify_simple_polytope_includes_baseline(capsys):
    code, obj = run_json(capsys, "verify", "--input", "cube:3")
    assert code == 0
    names = [c["name"] for c in obj["checks"]]
    assert any("outdegree" in n for n in names)


def test_describe_table(capsys):
    code, out = run(capsys, "describe", "--input", "polygon:5", "--format", "table")
    assert code == 0
    assert "f_vector: [1, 5, 5, 1]" in out


def test_bad_direction_exit_2(capsys):
    code = main(["cdindex", "--input", "cube:2", "--method", "sweep",
                 "--direction", "1,0"])
    assert code == 2


def test_non_vertex_point_exit_2(tmp_path, capsys):
    from polysweep.polytope import VRep
    from polysweep.exactnum import vec

    bad = VRep(2, (vec(0, 0), vec(2, 0), vec(0, 2), vec(2, 2), vec(1, 1)))
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(vrep_to_json(bad)))
    code = main(["describe", "--input", str(path)])
    assert code == 2


def test_file_input_roundtrip(tmp_path, capsys):
    from polysweep.polytope import make_polygon

    path = tmp_path / "pent.json"
    path.write_text(json.dumps(vrep_to_json(make_polygon(5))))
    code, obj = run_json(capsys, "cdindex", "--input", str(path))
    assert code == 0 and obj["cd"] == {"cc": 1, "d": 3}


def test_output_file(tmp_path, capsys):
    out = tmp_path / "res.json"
    code = main(["toric", "--input", "polygon:7", "--output", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["toric"] == [1, 5, 1]


def test_direction_with_fractions(capsys):
    code, obj = run_json(
        capsys, "cdindex", "--input", "pyramid:polygon:4",
        "--method", "symmetric", "--direction", "1,0,1/4",
    )
    assert code == 0
    assert obj["cd"] == {"ccc": 1, "cd": 3, "dc": 3}
    apex = obj["per_vertex"][2]
    assert apex["cd"] == {"cd": 1, "dc": 1}
    assert obj["per_vertex"][0]["cd"] == {"ccc": "1/2", "cd": "1/2"}


def test_deep_sweep_flag(capsys):
    code, obj = run_json(
        capsys, "cdindex", "--input", "cube:3", "--method", "sweep",
        "--deep-sweep",
    )
    assert code == 0
    assert obj["cd"] == {"ccc": 1, "dc": 6, "cd": 4}
