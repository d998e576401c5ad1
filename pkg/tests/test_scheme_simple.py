import pytest

from histroute import engine, scheme_simple

from conftest import make_double


def test_labels_rect(sch_rect):
    labs = [sch_rect.label_of(v) for v in range(4)]
    assert [(lab.vid, lab.br) for lab in labs] == \
        [(0, 1), (1, None), (2, None), (3, 2)]


def test_labels_steps(sch_steps):
    assert sch_steps.label_of(4) == scheme_simple.SimpleLabel(4, 5)
    assert sch_steps.label_of(1) == scheme_simple.SimpleLabel(1, None)


def test_table_bits_steps(sch_steps):
    assert [sch_steps.table_of(v) for v in range(8)] == \
        [False, True, True, False, False, False, False, False]


def test_size_bounds(sch_rect, sch_steps):
    for sch, n in ((sch_rect, 4), (sch_steps, 8)):
        w = (n - 1).bit_length()
        assert sch.max_label_bits <= 2 * w
        assert sch.max_table_bits == 1
        assert sch.max_header_bits == 0


def test_neighbor_ids(sch_steps, steps):
    h, g = steps
    for v in range(8):
        assert sorted(sch_steps.neighbor_ids(v)) == \
            sorted(int(u) for u in g.neighbors[v])


def test_route_trace_steps(sch_steps):
    assert engine.run_route(sch_steps, 2, 6) == [2, 0, 7, 6]
    assert engine.run_route(sch_steps, 6, 2) == [6, 7, 3, 2]


def test_route_step_invisible_in_interval(sch_steps):
    # target 6 sits between the near dominator 4 (breakpoint 5) and the
    # far dominator 7; outside [4,5] the far dominator wins
    link = sch_steps.link_of(0)
    nxt = scheme_simple.route_step_simple(
        link, sch_steps.table_of(0), sch_steps.label_of(6))
    assert nxt == 7
    nxt = scheme_simple.route_step_simple(
        link, sch_steps.table_of(0), sch_steps.label_of(5))
    assert nxt == 4


def test_route_rect_all_direct(sch_rect):
    for s in range(4):
        for t in range(4):
            if s != t:
                assert engine.run_route(sch_rect, s, t) == [s, t]


def test_route_all_pairs_exact(sch_steps, steps):
    h, g = steps
    rep = engine.verify_all_pairs(sch_steps, g)
    assert rep.ok
    assert rep.pairs == 8 * 7
    assert rep.max_stretch == 1.0


def test_corpus_exact(small_simples):
    for h, g in small_simples:
        sch = scheme_simple.preprocess_simple(h, g)
        rep = engine.verify_all_pairs(sch, g)
        assert rep.ok and rep.max_stretch == 1.0, f"n={h.n}"
        w = (h.n - 1).bit_length()
        assert sch.max_label_bits <= 2 * w


def test_preprocess_rejects_double():
    h, g = make_double(12, seed=3)
    with pytest.raises(engine.SchemeBuildError):
        scheme_simple.preprocess_simple(h, g)


def test_dump_round_trip(sch_steps):
    text = scheme_simple.dump_scheme(sch_steps)
    again = scheme_simple.parse_dump(text)
    assert again.kind == "simple" and again.n == 8
    assert again.max_label_bits == sch_steps.max_label_bits
    for v in range(8):
        assert again.label_of(v) == sch_steps.label_of(v)
        assert again.table_of(v) == sch_steps.table_of(v)
        assert sorted(again.neighbor_ids(v)) == \
            sorted(sch_steps.neighbor_ids(v))
    assert engine.run_route(again, 2, 6) == [2, 0, 7, 6]


def test_parse_dump_rejects_garbage():
    with pytest.raises(Exception):
        scheme_simple.parse_dump("not a scheme\n")


def test_route_unknown_target_raises(sch_steps):
    with pytest.raises(Exception):
        engine.run_route(sch_steps, 0, 99)
