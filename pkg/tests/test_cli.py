import json

import pytest

from affscat.cli import run


@pytest.fixture
def b_a22(tmp_path):
    path = tmp_path / "a22.json"
    path.write_text(json.dumps({"n": 2, "b": [[0, 1], [-4, 0]]}))
    return str(path)


@pytest.fixture
def b_a11(tmp_path):
    path = tmp_path / "a11.json"
    path.write_text(json.dumps({"n": 2, "b": [[0, 2], [-2, 0]]}))
    return str(path)


@pytest.fixture
def b_a2t(tmp_path):
    path = tmp_path / "a2t.json"
    path.write_text(
        json.dumps({"n": 3, "b": [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]})
    )
    return str(path)


def test_classify_a22(b_a22, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert run(["classify", "--input", b_a22, "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["type"] == "affine"
    assert data["label"] == "A_2^(2)"
    assert data["is_A2k2"] is True


def test_rank2_kronecker(b_a11, tmp_path):
    out = tmp_path / "out.json"
    assert run(["rank2", "--input", b_a11, "--k", "6", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["limiting"] == ["1", "2", "3", "4", "5", "6", "7"]


def test_consistency_exit_zero(b_a11, tmp_path):
    out = tmp_path / "out.json"
    code = run(
        ["consistency", "--input", b_a11, "--H", "5", "--k", "5", "--out", str(out)]
    )
    assert code == 0
    assert json.loads(out.read_text())["consistent"]


def test_walls_equal(b_a11, tmp_path):
    out = tmp_path / "out.json"
    assert run(["walls", "--input", b_a11, "--H", "4", "--k", "4", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["equal"] is True
    normals = {tuple(w["normal"]) for w in data["dcscat"]["walls"]}
    assert (1, 1) in normals


def test_clusters_output(b_a11, tmp_path):
    out = tmp_path / "out.json"
    assert run(["clusters", "--input", b_a11, "--H", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert [[-1, 0], [0, -1]] in data["real_clusters"]
    assert data["imaginary_clusters"] == [[[1, 1]]]


def test_compare_small(b_a11, tmp_path):
    out = tmp_path / "out.json"
    code = run(
        [
            "compare", "--input", b_a11, "--H", "4", "--k", "4",
            "--L", "4", "--samples", "20", "--seed", "3", "--out", str(out),
        ]
    )
    assert code == 0
    assert json.loads(out.read_text())["clean"] is True


def test_svg_rank2(b_a11, tmp_path):
    out = tmp_path / "d.svg"
    assert run(["svg", "--input", b_a11, "--H", "4", "--k", "4", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("<svg")
    assert "imaginary" in text
    # 5 walls at H=4: each initial line plus three rays, all labeled
    assert text.count("<text") >= 5


def test_svg_rank3(b_a2t, tmp_path):
    out = tmp_path / "d.svg"
    assert run(["svg", "--input", b_a2t, "--H", "4", "--k", "4", "--out", str(out)]) == 0
    assert "<svg" in out.read_text()


def test_invalid_input_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "b": [[0, 1], [1, 0]]}))
    assert run(["classify", "--input", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "error" in json.loads(err)


def test_missing_file_exit_2(tmp_path):
    assert run(["classify", "--input", str(tmp_path / "nope.json")]) == 2


def test_finite_type_rejected_for_walls(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({"n": 2, "b": [[0, 1], [-1, 0]]}))
    assert run(["walls", "--input", str(path)]) == 2


def test_byte_identical_reruns(b_a11, tmp_path):
    out1, out2 = tmp_path / "1.json", tmp_path / "2.json"
    argv = ["compare", "--input", b_a11, "--H", "4", "--k", "4", "--L", "4",
            "--samples", "10", "--seed", "7"]
    assert run(argv + ["--out", str(out1)]) == 0
    assert run(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_svg_empty_diagram_axes_only():
    from affscat.scattering import ScatDiagram
    from affscat.svg import render_slice

    empty = ScatDiagram(cartan_n=2, walls=(), height_cap=0, truncation=0)
    text = render_slice(empty)
    assert text.count('class="axis"') == 2
    assert 'class="wall"' not in text


def test_svg_unsupported_rank():
    import pytest

    from affscat.scattering import ScatDiagram
    from affscat.svg import UnsupportedRank, render_slice

    with pytest.raises(UnsupportedRank):
        render_slice(ScatDiagram(cartan_n=4, walls=(), height_cap=0, truncation=0))


def test_walls_json_round_trip(b_a2t, tmp_path):
    from affscat.cartan import exchange_to_cartan
    from affscat.jsonio import diagram_from_json, diagram_json, read_exchange_matrix
    from affscat.scattering import build_dcscat

    bmat = read_exchange_matrix(open(b_a2t).read())
    d = build_dcscat(bmat, 4, 4)
    payload = diagram_json(d)
    rebuilt = diagram_from_json(payload, exchange_to_cartan(bmat).d)
    assert rebuilt.same_walls(d)
    assert rebuilt.height_cap == d.height_cap


def test_classify_reports_cartan_data(b_a22, tmp_path):
    out = tmp_path / "out.json"
    assert run(["classify", "--input", b_a22, "--H", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["cartan"]["a"] == [[2, -1], [-4, 2]]
    assert data["cartan"]["d"] == ["1", "1/4"]
    assert [1, 0] in data["positive_real_roots"]
