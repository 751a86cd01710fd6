import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperconn import generators as gen
from hyperconn.hypergraph import Hypergraph
from hyperconn.io import (
    InputError,
    format_hypergraph,
    format_multigraph,
    parse_hypergraph,
    read_arccc_instance,
    read_csv_dataset,
    read_hypergraph,
    read_json,
    read_scholp,
    to_json,
    write_csv,
    write_hypergraph,
)
from hyperconn.hypergraph import clique_reduction


def test_parse_basic():
    G = parse_hypergraph("# comment\nuniform 3 4 undirected\n\n1 2 3\n2 3 4 w=0.5\n")
    assert G.edges == ((0, 1, 2), (1, 2, 3)) and G.weights == (1.0, 0.5)
    D = parse_hypergraph("uniform 3 4 directed\n3 1 2\n")
    assert D.directed and D.edges == ((0, 2, 1),)


@pytest.mark.parametrize("text,line", [
    ("uniform 3 4 undirected\n1 2 3\n1 2 2\n", 3),
    ("uniform 3 4 undirected\n1 2 5\n", 2),
    ("uniform 3 4 undirected\n1 2\n", 2),
    ("uniform 3 4 undirected\n1 2 x\n", 2),
    ("uniform 3 4 undirected\n1 2 3 w=-1\n", 2),
    ("uniform 3 4 sideways\n", 1),
    ("\n\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(InputError) as exc:
        parse_hypergraph(text, "f.txt")
    assert exc.value.line == line
    assert f"f.txt:line {line}" in str(exc.value)


def test_round_trip_file(tmp_path):
    G = Hypergraph(6, 3, ((4, 1, 0), (2, 3, 5), (0, 1, 4)), weights=(0.1, 1 / 3, 2.5))
    p = tmp_path / "g.txt"
    write_hypergraph(G, p)
    H = read_hypergraph(p)
    assert H == G.canonical()
    np.testing.assert_array_equal(H.weight_array(), G.canonical().weight_array())


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.booleans())
def test_round_trip_random(seed, directed):
    make = gen.random_directed if directed else gen.random_uniform
    G = make(8, 3, 10, seed=seed)
    assert parse_hypergraph(format_hypergraph(G)) == G.canonical()


def test_missing_file():
    with pytest.raises(InputError):
        read_hypergraph("/nonexistent/graph.txt")


def test_multigraph_format():
    M = clique_reduction(Hypergraph(3, 3, ((0, 1, 2),)))
    assert format_multigraph(M) == "multigraph 3 undirected\n1 2\n1 3\n2 3\n"


# ---------------------------------------------------------------- ScHoLP


def write_scholp(tmp_path, nverts, simplices):
    prefix = tmp_path / "toy"
    (tmp_path / "toy-nverts.txt").write_text("\n".join(map(str, nverts)) + "\n")
    (tmp_path / "toy-simplices.txt").write_text("\n".join(map(str, simplices)) + "\n")
    return prefix


def test_scholp_filters_and_compacts(tmp_path):
    prefix = write_scholp(tmp_path, [3, 2, 3, 1, 3], [10, 20, 30, 10, 40, 20, 30, 50, 99, 30, 20, 10])
    G, ids = read_scholp(prefix, return_ids=True)
    assert ids == [10, 20, 30, 50]
    assert G.n == 4 and G.multiplicities()[(0, 1, 2)] == 2
    assert G.multiplicities()[(1, 2, 3)] == 1


def test_scholp_length_mismatch(tmp_path):
    prefix = write_scholp(tmp_path, [3, 3], [1, 2, 3, 4])
    with pytest.raises(InputError, match="nverts sums to 6"):
        read_scholp(prefix)


def test_scholp_bad_token(tmp_path):
    prefix = write_scholp(tmp_path, [3], ["1", "2", "x"])
    with pytest.raises(InputError) as exc:
        read_scholp(prefix)
    assert exc.value.line == 3


# ---------------------------------------------------------------- CSV / JSON


def test_csv_dataset(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("a,label,b\n1.0,y,2\n3,x,4\n\n5,y,6\n")
    d = read_csv_dataset(p, "label")
    np.testing.assert_array_equal(d.features, [[1, 2], [3, 4], [5, 6]])
    np.testing.assert_array_equal(d.labels, [0, 1, 0])
    assert d.label_names == ("y", "x") and d.feature_names == ("a", "b")


@pytest.mark.parametrize("body,line", [
    ("a,b\n1,2\n3,oops\n", 3),
    ("a,b\n1,2\n3\n", 3),
    ("a,b\n1,nan\n", 2),
])
def test_csv_errors(tmp_path, body, line):
    p = tmp_path / "d.csv"
    p.write_text(body)
    with pytest.raises(InputError) as exc:
        read_csv_dataset(p)
    assert exc.value.line == line


def test_csv_missing_label(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(InputError):
        read_csv_dataset(p, "class")


def test_write_csv_precision(tmp_path):
    p = tmp_path / "o.csv"
    write_csv(p, ["x"], [[1 / 3]])
    assert float(p.read_text().splitlines()[1]) == 1 / 3


def test_json_schema_and_numpy():
    d = json.loads(to_json({"v": np.arange(3), "x": np.float64(1.5)}))
    assert d == {"schema_version": 1, "v": [0, 1, 2], "x": 1.5}


def test_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  'x': 1}")
    with pytest.raises(InputError) as exc:
        read_json(p)
    assert exc.value.line == 2


def test_arccc_instance(tmp_path):
    p = tmp_path / "i.json"
    p.write_text(json.dumps({"n": 4, "budget": 1.0,
                             "candidates": [{"vertices": [1, 2, 3], "cost": 1}, {"vertices": [2, 3, 4], "cost": 2}]}))
    inst = read_arccc_instance(p)
    assert inst.candidates == ((0, 1, 2), (1, 2, 3))
    p.write_text(json.dumps({"n": 4, "budget": 1.0, "candidates": [{"vertices": [1, 2, 5], "cost": 1}]}))
    with pytest.raises(InputError):
        read_arccc_instance(p)
    p.write_text(json.dumps({"n": 4}))
    with pytest.raises(InputError):
        read_arccc_instance(p)
