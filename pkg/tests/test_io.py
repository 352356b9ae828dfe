from fractions import Fraction

import pytest

from pagraph import (
    ArrivalGraph,
    ModelParams,
    OrderedPattern,
    config_hash,
    grow,
    load_config_file,
    new_initial,
    read_graph,
    read_pattern,
    write_csv,
    write_graph,
    write_json,
    write_pattern,
)


def test_graph_roundtrip(tmp_path):
    params = ModelParams(3, Fraction(2, 7), seed=11)
    g = grow(new_initial(params), params, 40)
    path = str(tmp_path / "g.pagraph")
    write_graph(path, g, params)
    g2, params2 = read_graph(path)
    assert g2 == g
    assert params2 == params


def test_graph_header_contents(tmp_path):
    params = ModelParams(2, Fraction(1, 2), seed=5)
    g = new_initial(params)
    path = str(tmp_path / "g.pagraph")
    write_graph(path, g, params)
    first = open(path).readline().strip()
    assert first == "pagraph 1 m=2 delta=1/2 n=1 seed=5"


def test_write_graph_m_mismatch(tmp_path):
    params = ModelParams(2, 1)
    with pytest.raises(ValueError):
        write_graph(str(tmp_path / "g"), ArrivalGraph.initial(3), params)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_read_graph_malformed_headers(tmp_path):
    cases = [
        ["nonsense 1 m=2 delta=1/1 n=1 seed=0", "1 0", "1 0"],
        ["pagraph 2 m=2 delta=1/1 n=1 seed=0", "1 0", "1 0"],
        ["pagraph 1 m=2 delta=1/1 n=1", "1 0", "1 0"],
        ["pagraph 1 m=2 delta=1 n=1 seed=0", "1 0", "1 0"],
        ["pagraph 1 mm=2 delta=1/1 n=1 seed=0", "1 0", "1 0"],
        ["pagraph 1 m=x delta=1/1 n=1 seed=0", "1 0", "1 0"],
    ]
    for i, lines in enumerate(cases):
        with pytest.raises(ValueError):
            read_graph(write_lines(tmp_path / f"bad{i}", lines))


def test_read_graph_draw_errors(tmp_path):
    head = "pagraph 1 m=2 delta=1/1 n=2 seed=0"
    # child out of arrival order
    with pytest.raises(ValueError):
        read_graph(write_lines(tmp_path / "a", [head, "1 0", "1 0", "1 0", "2 1"]))
    # parent not older than child
    with pytest.raises(ValueError):
        read_graph(write_lines(tmp_path / "b", [head, "1 0", "1 0", "2 2", "2 0"]))
    # fewer draws than the header announces
    with pytest.raises(ValueError):
        read_graph(write_lines(tmp_path / "c", [head, "1 0", "1 0", "2 0"]))
    # more draws than announced
    with pytest.raises(ValueError):
        read_graph(
            write_lines(tmp_path / "d", [head, "1 0", "1 0", "2 0", "2 1", "3 0", "3 1"])
        )
    # draw line with the wrong shape
    with pytest.raises(ValueError):
        read_graph(write_lines(tmp_path / "e", [head, "1 0", "1 0", "2 0 7", "2 1"]))


def test_pattern_roundtrip(tmp_path):
    for pat in (OrderedPattern.cycle(5), OrderedPattern.complete(4), OrderedPattern(3, [])):
        path = str(tmp_path / "p.pattern")
        write_pattern(path, pat)
        assert read_pattern(path) == pat


def test_pattern_file_shape(tmp_path):
    path = str(tmp_path / "c3.pattern")
    write_pattern(path, OrderedPattern.cycle(3))
    assert open(path).read() == "3 3\n1 2\n1 3\n2 3\n"


def test_read_pattern_errors(tmp_path):
    cases = [
        ["3"],
        ["3 1", "1 2 3"],
        ["3 1", "2 1"],
        ["3 1", "1 4"],
        ["3 2", "1 2", "1 2"],
        ["3 2", "1 2"],
    ]
    for i, lines in enumerate(cases):
        with pytest.raises(ValueError):
            read_pattern(write_lines(tmp_path / f"p{i}", lines))


def test_config_hash_stable():
    h1 = config_hash({"m": 2, "delta": Fraction(1, 2), "seeds": (1, 2)})
    h2 = config_hash({"seeds": (1, 2), "delta": Fraction(1, 2), "m": 2})
    assert h1 == h2
    assert len(h1) == 64
    h3 = config_hash({"m": 3, "delta": Fraction(1, 2), "seeds": (1, 2)})
    assert h3 != h1


def test_load_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# comment\n"
        "m = 2\n"
        "delta = 1/2   # inline comment\n"
        "\n"
        "m = 3\n"
    )
    cfg = load_config_file(str(path))
    assert cfg == {"m": "3", "delta": "1/2"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n")
    with pytest.raises(ValueError):
        load_config_file(str(bad))


def test_write_csv_stamp_and_skip(tmp_path):
    path = str(tmp_path / "rows.csv")
    rows = [
        {"n": 4, "mean": 0.5, "ok": True, "chi": Fraction(2, 5)},
        {"n": 8, "mean": 1.25, "ok": False, "chi": Fraction(2, 5)},
    ]
    h = config_hash({"x": 1})
    assert write_csv(path, ["n", "mean", "ok", "chi"], rows, h) is True
    text = open(path).read()
    assert text.splitlines()[0] == f"# config_hash={h}"
    assert text.splitlines()[1] == "n,mean,ok,chi"
    assert "4,0.5,true,2/5" in text
    # second run with the same hash leaves the file untouched
    assert write_csv(path, ["n", "mean", "ok", "chi"], rows, h) is False
    assert open(path).read() == text
    # a different hash rewrites
    h2 = config_hash({"x": 2})
    assert write_csv(path, ["n"], [{"n": 1}], h2) is True
    assert open(path).read().splitlines()[0] == f"# config_hash={h2}"


def test_write_json_deterministic(tmp_path):
    path = str(tmp_path / "report.json")
    h = config_hash({"y": 3})
    assert write_json(path, {"b": 1, "a": [1, 2]}, h) is True
    first = open(path).read()
    assert write_json(path, {"a": [1, 2], "b": 1}, h) is False
    assert open(path).read() == first
    with pytest.raises(ValueError):
        write_json(path, {"config_hash": "deadbeef"}, h)
    # unstamped writes always replace
    assert write_json(path, {"plain": True}) is True
