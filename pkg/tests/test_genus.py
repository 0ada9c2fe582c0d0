"""Genus and singularity-measure sequences, and the ratio report."""

import pytest

from rectower.errors import BadIndex, NoRegularComponent
from rectower.ff import FieldCtx
from rectower.genus import asymptotic_report, delta, genus_closed, genus_sum
from rectower.p1 import map_parse
from rectower.tgraph import TowerGraph


def test_delta_values():
    assert delta(2) == 0
    assert delta(3) == 2
    assert delta(4) == 4
    assert delta(5) == 12
    with pytest.raises(BadIndex):
        delta(1)


def test_genus_closed_values():
    assert genus_closed(1) == 0
    assert genus_closed(2) == 1
    assert genus_closed(4) == 9
    assert genus_closed(5) == 21
    with pytest.raises(BadIndex):
        genus_closed(0)


def test_genus_sum_values():
    assert genus_sum(2) == 1
    assert genus_sum(4) == 9
    assert genus_sum(20) == genus_closed(20)
    with pytest.raises(BadIndex):
        genus_sum(1)


def test_formulas_agree_and_grow():
    for n in range(2, 25):
        assert genus_sum(n) == genus_closed(n)
    for n in range(2, 24):
        assert genus_closed(n + 1) > genus_closed(n)


def _graph(p):
    return TowerGraph(map_parse("(x^2+x)/(3*x-1)", p), map_parse("y^2", p),
                      FieldCtx(p, 2))


def test_report_rows_p5():
    rows = asymptotic_report(5, 10, _graph(5))
    by_n = {r.n: r for r in rows}
    assert by_n[1].ratio is None and by_n[1].genus == 0
    assert by_n[10].n_lower == 4096 and by_n[10].genus == 961
    assert abs(by_n[10].ratio - 4096 / 961) < 1e-12
    assert by_n[2].delta == 0


def test_report_ratio_tends_to_p_minus_1():
    rows = asymptotic_report(13, 16, _graph(13))
    assert abs(rows[-1].ratio - 12) < 0.1


def test_report_carries_both_genus_routes():
    rows = asymptotic_report(5, 6, _graph(5))
    for r in rows:
        if r.n >= 2:
            assert r.genus_sum == r.genus_closed == r.genus
    with pytest.raises(AssertionError):
        from rectower.genus import GenusReport
        GenusReport(n=3, delta=2, genus_closed=3, genus_sum=4, n_lower=0, ratio=None)


def test_report_refuses_other_towers():
    graph = TowerGraph(map_parse("(x^2+1)/(2*x)", 5), map_parse("y^2", 5),
                       FieldCtx(5, 2))
    with pytest.raises(ValueError):
        asymptotic_report(5, 5, graph)


def test_report_requires_regular_component():
    graph = TowerGraph(map_parse("(x^2+x)/(3*x-1)", 5), map_parse("y^2", 5),
                       FieldCtx(5))
    with pytest.raises(NoRegularComponent):
        asymptotic_report(5, 5, graph)
