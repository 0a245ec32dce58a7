import json

import pytest
from hypothesis import given, strategies as st

from majority_illusion import io
from majority_illusion.errors import ParseError
from majority_illusion.fixtures import nine_agent_illusion
from majority_illusion.network import EditPlan, Labelling, LabelledNetwork, SocialNetwork


def test_label_aliases():
    assert [io.parse_label(x) for x in ("b", "R", "g", 0, "3")] == [0, 1, 2, 0, 3]
    for bad in ("x", -1, True, 1.5):
        with pytest.raises(ParseError):
            io.parse_label(bad)


def test_network_json_round_trip():
    ln = nine_agent_illusion()
    data = io.network_to_json(ln)
    io.validate(data, "network")
    assert io.network_from_json(data) == ln


def test_unlabelled_and_multicolour_json():
    sn = io.network_from_json({"nodes": [{"id": 0}, {"id": 1}], "edges": [[0, 1]]})
    assert isinstance(sn, SocialNetwork) and sn.edges == {(0, 1)}
    ml = io.network_from_json({"nodes": [{"id": 0, "label": "g"}, {"id": 1, "label": "b"}], "edges": []})
    assert ml.labelling == Labelling((2, 0), 3)
    assert io.network_to_json(ml)["nodes"][0]["label"] == 2


@pytest.mark.parametrize(
    "data",
    [
        {"nodes": [{"id": 0}]},
        {"nodes": [{"id": 1}], "edges": []},
        {"nodes": [{"id": 0, "label": "b"}, {"id": 1}], "edges": []},
        {"nodes": [{"id": 0, "label": "purple"}], "edges": []},
        {"nodes": [{"id": 0}], "edges": [[0, 1, 2]]},
    ],
)
def test_bad_network_json(data):
    with pytest.raises(ParseError):
        io.network_from_json(data)


def test_edge_list_with_labels(tmp_path):
    edges = tmp_path / "g.txt"
    edges.write_text("# star\n0 1\n0 2  # trailing comment\n\n")
    labels = tmp_path / "g.labels"
    labels.write_text("0 b\n1 r\n2 r\n3 b\n")
    ln = io.read_network(edges, labels)
    assert ln.node_count == 4 and ln.labelling.colours == (0, 1, 1, 0)
    plain = io.read_network(edges)
    assert plain.node_count == 3


@pytest.mark.parametrize(
    "edge_text, label_text",
    [("0 1 2\n", None), ("0 a\n", None), ("0 1\n", "0 b\n"), ("0 1\n", "0\n"), ("0 1\n", "x b\n1 b\n")],
)
def test_bad_edge_lists(tmp_path, edge_text, label_text):
    edges = tmp_path / "g.txt"
    edges.write_text(edge_text)
    labels = None
    if label_text is not None:
        labels = tmp_path / "g.labels"
        labels.write_text(label_text)
    with pytest.raises(ParseError):
        io.read_network(edges, labels)


def test_json_file_detection(tmp_path):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(io.network_to_json(nine_agent_illusion())))
    assert io.read_network(path) == nine_agent_illusion()
    path.write_text("{not json")
    with pytest.raises(ParseError):
        io.read_network(path)


def test_plan_json(tmp_path):
    plan = EditPlan.of(add=[(2, 1)], remove=[(0, 3)])
    data = plan.to_dict()
    assert data == {"add": [[1, 2]], "remove": [[0, 3]]}
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(data))
    assert io.read_plan(path) == plan
    with pytest.raises(ParseError):
        io.plan_from_json({"add": [[1]]})


@given(st.lists(st.integers(0, 1), max_size=20))
def test_labelling_json_validates(colours):
    io.validate(io.labelling_to_json(Labelling(tuple(colours))), "labelling")


def test_write_atomic(tmp_path):
    path = tmp_path / "out.txt"
    io.write_atomic(path, "first\n")
    io.write_atomic(path, "second\n")
    assert path.read_text() == "second\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
