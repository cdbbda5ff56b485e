import pytest
from hypothesis import given

from advdel.formats import (
    GraphFormatError,
    dump_graphs,
    from_text,
    load_family,
    named,
    parse_graphs,
    read_graphs,
    to_graph6,
    to_text,
    write_graphs,
)
from advdel.graph import complement, complete, cycle, empty, path

from conftest import graphs


def test_text_layout():
    assert to_text(path(3)) == "3 2\n0 1\n1 2\n"
    assert to_text(empty(2)) == "2 0\n"


@given(graphs(max_order=9))
def test_text_round_trip_is_bit_exact(g):
    text = to_text(g)
    assert from_text(text) == g
    assert to_text(from_text(text)) == text


@given(graphs(max_order=9))
def test_graph6_round_trip(g):
    gs, _ = parse_graphs(to_graph6(g) + "\n")
    assert gs == [g]


def test_graph6_known_string():
    # networkx writes the 5-cycle 0-1-2-3-4-0 as "Dhc"
    assert to_graph6(cycle(5)) == "Dhc"
    assert parse_graphs(">>graph6<<Dhc\n")[0] == [cycle(5)]


def test_header_and_several_graphs(tmp_path):
    p = tmp_path / "f.txt"
    write_graphs(p, [complete(3), empty(3)], {"kind": "ramsey", "R": 6})
    gs, header = read_graphs(p)
    assert gs == [complete(3), empty(3)]
    assert header == {"kind": "ramsey", "R": "6"}
    assert dump_graphs([path(2)]) == "2 1\n0 1\n"


@pytest.mark.parametrize("text", ["3 1\n0 5\n", "3 2\n0 1\n", "2 1\n0 1 2\n", "3 1\n1 1\n"])
def test_malformed_text(text):
    with pytest.raises(GraphFormatError):
        parse_graphs(text)


def test_bad_graph6():
    with pytest.raises(GraphFormatError):
        parse_graphs("!!!\n")


class TestNamed:
    def test_basic(self):
        assert named("K3") == complete(3)
        assert named("coK3") == empty(3)
        assert named("E4") == empty(4)
        assert named("C5") == cycle(5)
        assert named("P4") == path(4)

    def test_unions(self):
        two = named("2K2")
        assert two.order == 4 and two.edges() == [(0, 1), (2, 3)]
        g = named("K2+P3")
        assert g.edges() == [(0, 1), (2, 3), (3, 4)]
        assert named("coP4") == complement(path(4))

    @pytest.mark.parametrize("bad", ["", "X3", "K", "3", "K2++K1"])
    def test_rejects(self, bad):
        with pytest.raises(GraphFormatError):
            named(bad)

    def test_load_family(self, tmp_path):
        assert load_family("K3,coK3") == [complete(3), empty(3)]
        p = tmp_path / "f.txt"
        p.write_text(to_text(path(3)))
        assert load_family(str(p)) == [path(3)]
