"""Smoke tests for the python bindings: determinism, round trips, and the
main operations on hand-checkable graphs. Exits nonzero on the first failure."""

import json
import os
import tempfile

import jsonschema

import sparselocal as sl


def test_versions():
    assert sl.__version__ == "0.1.0"
    assert sl.RNG_ID == "mt19937_64/splitmix64-streams/v1"


def test_generators_deterministic():
    a = sl.gen_er(50, 2.0, sl.Seed(123))
    b = sl.gen_er(50, 2.0, sl.Seed(123))
    assert a.edge_list() == b.edge_list()
    assert a.num_edges == 34  # pinned for this (params, seed)
    assert a.arrival() == list(range(50))

    g = sl.gen_ba(30, 2, sl.Seed(9))
    assert g.num_edges == 57  # K_3 seed plus 2 arcs per later vertex
    assert min(g.degree(v) for v in range(30)) >= 2


def test_graph_basics():
    g = sl.Graph(4, [(0, 1), (1, 2), (2, 3)], None)
    assert g.num_vertices == 4
    assert g.connected()
    ball = sl.bfs_ball(g, 1, 1)
    assert ball.vertices == [0, 1, 2]
    sub, kept = sl.induced_subgraph(g, [2, 3])
    assert kept == [2, 3]
    assert sub.edge_list() == [(0, 1)]
    assert sl.edge_surplus(g, [0, 1, 2, 3]) == -1


def test_edgelist_round_trip():
    g = sl.gen_er(40, 2.0, sl.Seed(5))
    text = sl.dumps_edgelist(g)
    back = sl.loads_edgelist(text)
    assert back.edge_list() == g.edge_list()
    assert back.arrival() == g.arrival()

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "g.el")
        sl.save_edgelist(path, g)
        assert sl.load_edgelist(path).edge_list() == g.edge_list()


def test_local_stats():
    tri = sl.Graph(3, [(0, 1), (1, 2), (0, 2)], None)
    assert sl.count_cycles(tri, 3) == 1
    assert sl.count_dense_subgraphs(tri, 3, 0) == 1
    prof = sl.surplus_profile(tri, 1)
    assert prof.max_surplus == 0
    est = sl.estimate_path_prob(100, 2.0, 3, 200, sl.Seed(4))
    assert 0.0 <= est.estimate <= 1.0
    assert est.trials == 200


def test_expansion_round_trip():
    p4 = sl.Graph(4, [(0, 1), (1, 2), (2, 3)], None)
    dg = sl.low_degree_orientation(p4)
    assert dg.arc_list() == [(1, 0), (2, 1), (2, 3)]
    aug = sl.tfa_step(dg)
    assert aug.arc_list() == [(1, 0), (2, 0), (2, 1), (2, 3)]

    final, records = sl.tfa_run(p4, 2)
    assert len(records) == 3
    assert records[0][0] == 1  # (step, arcs, max_in_degree)
    assert final.num_arcs >= dg.num_arcs

    star = sl.Graph(5, [(0, i) for i in range(1, 5)], None)
    res = sl.compute_p_centered(star, 2, 10)
    assert res.coloring.palette_size == 2
    assert res.steps_used == 1
    ok, witness = sl.verify_p_centered(star, res.coloring, 2)
    assert ok and witness is None

    try:
        sl.tfa_step(sl.Digraph(4, [(0, 1), (1, 2), (2, 3)]), arc_cap=3)
    except sl.CapacityError:
        pass
    else:
        raise AssertionError("arc cap violation must raise CapacityError")


def test_subgraph_search():
    k4 = sl.Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)], None)
    tri = sl.Pattern(sl.Graph(3, [(0, 1), (1, 2), (0, 2)], None))
    emb = sl.find_subgraph(k4, tri, sl.Seed(3))
    assert emb is not None
    sl.validate_embedding(k4, tri.graph, emb)

    p10 = sl.Graph(10, [(i, i + 1) for i in range(9)], None)
    assert sl.find_subgraph(p10, tri, sl.Seed(3)) is None  # one-sided
    assert sl.brute_force_embed(p10, tri.graph) is None

    core = sl.pattern_core(tri)
    assert len(core.tree_edges) == 2
    assert len(core.extra_edges) == 1


def test_sentences():
    c6 = sl.Graph(6, [(i, (i + 1) % 6) for i in range(6)], None)
    sent = sl.parse_sentence(json.dumps(
        {"s": 2, "r": 1, "pred": {"type": "min_degree_in_ball", "t": 2, "radius": 1}}))
    res = sl.check_sentence(c6, sent)
    assert res.holds
    assert res.witnesses == [0, 3]
    brute = sl.brute_force_sentence(c6, sent)
    assert brute.holds == res.holds

    scat = sl.greedy_scattered(c6, list(range(6)), 1, 2)
    assert scat.found and scat.set == [0, 3]


def test_experiment_report_schema():
    spec = sl.ExperimentSpec()
    spec.kind = "cycles"
    spec.n_values = [100]
    spec.trials = 5
    spec.seed = 7
    report = sl.run_experiment(spec)
    assert report.num_rows == 5
    doc = json.loads(report.to_json())
    schema = json.load(open(os.environ["SPARSELOCAL_SCHEMA"]))
    jsonschema.validate(doc, schema)
    summary = json.loads(report.summary_json())
    assert "mean" in summary and "expected" in summary
    csv_text = report.csv()
    assert csv_text.splitlines()[0] == "kind,n,d,r,k,m,p,q,s,step,trial,seed_index,statistic,value"

    rerun = sl.run_experiment(spec)
    assert rerun.to_json() == report.to_json()


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in tests:
        fn()
        print(f"{fn.__name__}: ok")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
