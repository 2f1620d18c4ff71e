import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from egomotif.errors import CanonicalityError, ParameterError, ParseError, ValidationError
from egomotif.etn import Etn, build_etn, compute_etns, etn_isomorphic, etns_parse, layered_graph
from egomotif.temporal_graph import TemporalGraph, extract_snapshots

from oracles import brute_force_isomorphic, random_presence, renamed, vf2_isomorphic


def seq_from_neighbor_lists(slices, ego="E"):
    """One snapshot per entry; entry lists the ego's neighbours in that slice."""
    edges = [(ego, u, 10 * i, 10 * i + 5) for i, nb in enumerate(slices) for u in nb]
    # pin the grid to len(slices) windows with a far-away pair in the first and last
    edges.append(("X", "Y", 0, 5))
    edges.append(("X", "Y", 10 * (len(slices) - 1), 10 * (len(slices) - 1) + 5))
    return extract_snapshots(TemporalGraph(edges, nodes=[ego]), 10)


def test_build_etn_hand_trace():
    seq = seq_from_neighbor_lists([["A"], ["A"], ["B"]])
    e = build_etn(seq, "E", 0, 2)
    assert e.presence == {"A": "110", "B": "001"}


def test_build_etn_isolated_ego():
    seq = seq_from_neighbor_lists([[], [], []])
    assert build_etn(seq, "E", 0, 2).presence == {}


def test_build_etn_constant_contact():
    seq = seq_from_neighbor_lists([["A"], ["A"], ["A"]])
    assert build_etn(seq, "E", 0, 2).presence == {"A": "111"}


def test_build_etn_window_out_of_range():
    seq = seq_from_neighbor_lists([["A"], ["A"], ["A"]])
    with pytest.raises(IndexError):
        build_etn(seq, "E", 1, 2)


def test_compute_etns_examples():
    assert compute_etns(Etn("E", 0, 2, {"A": "110", "B": "001"})).canonical_text == "001110"
    assert compute_etns(Etn("E", 0, 2, {"A": "111"})).canonical_text == "111"
    s = compute_etns(Etn("E", 0, 1, {"A": "10", "B": "10", "C": "01"}))
    assert s.blocks == ("01", "10", "10")
    assert s.canonical_text == "011010"


def test_empty_signature():
    assert compute_etns(Etn("E", 0, 3, {})).canonical_text == ""


def test_etn_validation():
    with pytest.raises(ValidationError):
        Etn("E", 0, 2, {"A": "000"})
    with pytest.raises(ValidationError):
        Etn("E", 0, 2, {"A": "10"})
    with pytest.raises(ValidationError):
        Etn("E", 0, 2, {"E": "100"})
    with pytest.raises(ParameterError):
        Etn("E", 0, 0, {})


def test_parse_examples():
    assert etns_parse("001110", 2).blocks == ("001", "110")
    with pytest.raises(CanonicalityError):
        etns_parse("110001", 2)
    with pytest.raises(ParseError, match="multiple"):
        etns_parse("0111", 2)
    with pytest.raises(ParseError):
        etns_parse("0120", 1)
    with pytest.raises(ParseError):
        etns_parse("0001", 1)


def test_isomorphic_examples():
    assert etn_isomorphic(Etn("E", 0, 2, {"A": "110", "B": "001"}), Etn("Z", 5, 2, {"X": "001", "Y": "110"}))
    assert not etn_isomorphic(Etn("E", 0, 2, {"A": "110"}), Etn("E", 0, 2, {"A": "011"}))
    e = Etn("E", 0, 3, {"A": "1010", "B": "0001"})
    assert etn_isomorphic(e, e)
    with pytest.raises(ParameterError):
        etn_isomorphic(Etn("E", 0, 1, {}), Etn("E", 0, 2, {}))


def test_layered_graph_links_next_occurrence():
    G = layered_graph(Etn("E", 0, 2, {"A": "101"}))
    assert G.has_edge(("A", 0), ("A", 2))
    assert not G.has_node(("A", 1))
    assert G.number_of_nodes() == 5 and G.number_of_edges() == 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_signature_agrees_with_bijection_search(k):
    rng = random.Random(100 + k)
    for _ in range(150):
        p1 = random_presence(rng, k)
        p2 = renamed(p1, rng) if rng.random() < 0.5 else random_presence(rng, k, prefix="m")
        same_sig = etn_isomorphic(Etn("E", 0, k, p1), Etn("F", 0, k, p2))
        assert same_sig == brute_force_isomorphic(p1, p2, k), (p1, p2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_signature_agrees_with_vf2_on_package_layered_graph(k):
    import networkx as nx

    rng = random.Random(7 * k)
    match = lambda a, b: a["label"] == b["label"]  # noqa: E731
    for _ in range(100):
        p1 = random_presence(rng, k, 5)
        p2 = renamed(p1, rng) if rng.random() < 0.5 else random_presence(rng, k, 5, prefix="m")
        e1, e2 = Etn("E", 0, k, p1), Etn("F", 0, k, p2)
        assert etn_isomorphic(e1, e2) == nx.is_isomorphic(layered_graph(e1), layered_graph(e2), node_match=match)
        assert etn_isomorphic(e1, e2) == vf2_isomorphic(p1, p2, k)


rows = st.integers(1, 3).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(1, 2 ** (k + 1) - 1), max_size=8))
)


@settings(max_examples=100, deadline=None)
@given(rows, st.randoms(use_true_random=False))
def test_permutation_and_renaming_invariance(kr, rnd):
    k, masks = kr
    pres = {f"a{i}": format(m, f"0{k + 1}b") for i, m in enumerate(masks)}
    items = list(pres.items())
    rnd.shuffle(items)
    other = {f"z{rnd.randrange(1000)}_{i}": r for i, (_, r) in enumerate(items)}
    s1 = compute_etns(Etn("E", 0, k, pres))
    s2 = compute_etns(Etn("Q", 3, k, other))
    assert s1 == s2
    assert etns_parse(s1.canonical_text, k) == s1
    assert len(s1.canonical_text) == len(masks) * (k + 1)


def test_compute_etns_scales_like_d_log_d():
    rng = random.Random(0)

    def timed(d):
        e = Etn("E", 0, 3, {i: format(rng.randrange(1, 16), "04b") for i in range(d)})
        best = float("inf")
        for _ in range(7):
            t = time.perf_counter()
            for _ in range(20):
                compute_etns(e)
            best = min(best, time.perf_counter() - t)
        return best

    ratio = timed(10_000) / timed(1_000)
    assert ratio < 15, ratio
