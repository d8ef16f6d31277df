import json

import pytest

from helpers import triangle, x_drawing
from kplane.cli import main
from kplane.drawing import load, make_drawing, save


@pytest.fixture
def files(tmp_path):
    def put(name, d):
        p = tmp_path / name
        save(d, p)
        return str(p)

    return put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_analyze(tmp_path, capsys):
    out = str(tmp_path / "p4.json")
    assert run(capsys, "construct", "propeller", "4", "-o", out)[0] == 0
    d = load(out)
    assert (d.n, d.e) == (5, 4)
    p3 = str(tmp_path / "p3.json")
    run(capsys, "construct", "propeller", "3", "-o", p3)
    code, text, _ = run(capsys, "analyze", p3)
    data = json.loads(text)
    assert code == 0 and len(data["flags"]) == 3 and len(data["special_cells"]) == 1


def test_construct_variants(tmp_path, capsys):
    for argv, size in ((["k2"], (2, 1)), (["kn", "3"], (3, 3)), (["family2", "8"], (8, 6)), (["family3", "7"], (7, 4))):
        out = str(tmp_path / "c.json")
        assert run(capsys, "construct", *argv, "-o", out)[0] == 0
        d = load(out)
        assert (d.n, d.e) == size
    assert run(capsys, "construct", "kn", "5", "-o", str(tmp_path / "bad.json"))[0] == 2
    assert run(capsys, "construct", "propeller", "-o", str(tmp_path / "bad.json"))[0] == 2


def test_saturate_check(files, capsys):
    code, text, _ = run(capsys, "saturate-check", files("t.json", triangle()), "--k", "2", "--l", "1")
    assert code == 0 and json.loads(text)["saturated"]
    code, text, _ = run(capsys, "saturate-check", files("x.json", x_drawing()), "--k", "2", "--l", "1")
    data = json.loads(text)
    assert code == 1 and not data["saturated"] and data["addable"]


def test_validate_exit_codes(files, tmp_path, capsys):
    assert run(capsys, "validate", files("t.json", triangle()))[0] == 0
    bad = make_drawing([(0, 0), (4, 0), (2, 0)], [(0, 1)])
    code, text, _ = run(capsys, "validate", files("bad.json", bad))
    assert code == 1 and "through-vertex" in text
    junk = tmp_path / "junk.json"
    junk.write_text("{ not json")
    code, _, err = run(capsys, "validate", str(junk))
    assert code == 2 and "line 1" in err
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "analyze", files("bad2.json", bad))[0] == 2


def test_discharge(files, capsys):
    code, text, _ = run(capsys, "discharge", "thm1", files("t.json", triangle()))
    data = json.loads(text)
    assert code == 0 and data["charges"] == {"0": "1", "1": "1", "2": "1"}
    assert run(capsys, "discharge", "thm2", files("t2.json", triangle()))[0] == 2
    code, text, _ = run(capsys, "discharge", "thm2", files("t3.json", triangle()), "--l", "2")
    assert code == 0


def test_render(tmp_path, capsys):
    src = str(tmp_path / "f6.json")
    run(capsys, "construct", "family3", "6", "-o", src)
    svg = tmp_path / "f6.svg"
    assert run(capsys, "render", src, "-o", str(svg))[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and text.count('class="special-cell"') == 1
    assert text.count('class="edge"') == 4 and text.count('class="crossing"') == 4


def test_bounds(capsys):
    code, text, _ = run(capsys, "bounds", "--n-max", "8")
    rows = [line.split("\t") for line in text.strip().splitlines()]
    head, body = rows[0], {int(r[0]): dict(zip(rows[0], r)) for r in rows[1:]}
    assert code == 0 and head[0] == "n"
    assert body[8]["family2"] == body[8]["f(n)"] == "6"
    assert body[8]["family3"] == body[8]["floor(2n/3)"] == "5"
    assert body[3]["family2"] == "3"
    assert run(capsys, "bounds", "--n-max", "0")[0] == 2


def test_experiment(tmp_path, capsys):
    out = tmp_path / "exp.json"
    code, text, _ = run(capsys, "experiment", "--n", "2..4", "--seeds", "2", "--k", "2", "--l", "1", "-o", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["pass_rate"] == 1.0 and len(data["cells"]) == 6
    code2, _, _ = run(capsys, "experiment", "--n", "2..4", "--seeds", "2", "--k", "2", "--l", "1", "-o", str(tmp_path / "b.json"))
    assert (tmp_path / "b.json").read_text() == out.read_text()


def test_adjudicate(capsys):
    code, text, _ = run(capsys, "adjudicate-n3")
    assert code == 0
    assert "s_2^3(3) <= 2" in text and "conflicts" in text


def test_bad_arguments(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "experiment", "--n", "x", "--seeds", "1")[0] == 2
