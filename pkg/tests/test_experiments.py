import csv
import io
import xml.etree.ElementTree as ET

import pytest

from tdlab.closed_forms import dt_lex_star_complete, lex_star_min_degree
from tdlab.errors import ParameterError
from tdlab.experiments import (
    CSV_COLUMNS,
    ThresholdReport,
    conjecture_cell,
    conjugate_symmetry,
    csv_text,
    explore,
    family_instance,
    fmt,
    friendship_certificates,
    integer_sign_scan,
    interval_threshold,
    parity_class,
    svg_scatter,
    sweep,
    sweep_svg,
)
from tdlab.poly import Polynomial
from tdlab.roots import Cluster, RootSet, disk_radius, find_roots, fujiwara_bound

SVG = "{http://www.w3.org/2000/svg}"


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(-2.0) == "-2"


def test_family_instance():
    p, m, order, delta = family_instance("friendship4", 3, None)
    assert (p.degree, m, order, delta) == (10, 4, 10, 2)
    p, m, order, delta = family_instance("star_lex", 4, 2)
    assert (p.degree, m, order, delta) == (10, 2, 10, 3)
    with pytest.raises(ParameterError):
        family_instance("star_lex", 4, None)
    with pytest.raises(ParameterError):
        family_instance("wheel", 4, None)


def test_friendship_sweep_small():
    result = sweep("friendship4", range(2, 9))
    assert result.ok
    for pt in result.points:
        assert {c.name for c in pt.checks} == {"root_count", "conjugate_symmetry", "root_disk_bound", "root_residuals"}
    evens = [(n, c) for n, kind, c in result.certificates if kind == "(-1,0)"]
    assert [n for n, _ in evens] == [2, 4, 6, 8]
    assert all(c.passed for _, c in evens)


def test_even_n_rows_contain_root_in_unit_interval():
    result = sweep("friendship4", [2, 4, 6])
    for pt in result.points:
        assert any(-1 < z.real < 0 and pt.roots.config.is_real(z) for z, _ in pt.roots.centers())


def test_star_lex_sweep_counts():
    result = sweep("star_lex", range(2, 7), m=2)
    assert result.ok
    for pt in result.points:
        total = pt.roots.zero_multiplicity + sum(c.multiplicity for c in pt.roots.clusters)
        assert total == 2 * (pt.n + 1)


def test_sweep_threads_deterministic():
    a = csv_text(sweep("star_lex", range(2, 8), m=3, threads=1).rows())
    b = csv_text(sweep("star_lex", range(2, 8), m=3, threads=4).rows())
    assert a == b


def test_csv_layout():
    text = csv_text(sweep("friendship4", [2, 3]).rows())
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert all(len(r) == len(CSV_COLUMNS) for r in rows)
    assert rows[1][:3] == ["friendship4", "2", "4"]
    mult = sum(int(r[5]) for r in rows[1:] if r[1] == "2")
    assert mult == 7


def test_conjugate_symmetry_flags_missing_partner():
    rs = RootSet([], [Cluster(complex(-1, 1), 1)], 1, 0)
    assert conjugate_symmetry(rs).failed
    rs = RootSet([], [Cluster(complex(-1, 1), 1), Cluster(complex(-1, -1), 1)], 2, 0)
    assert conjugate_symmetry(rs).passed


def test_friendship_certificates():
    certs = dict(friendship_certificates(2))
    assert certs["(-1,0)"].passed
    assert certs["(-1,0)"].details["a"] == "-1"
    assert set(friendship_certificates(3)[0][1].details) >= {"a", "b", "sign_a", "sign_b", "note"}
    assert friendship_certificates(1) == []


def test_interval_threshold():
    th = interval_threshold(2, 50)
    assert th.failed == [2, 5, 7]
    assert th.first_certified == 3
    assert th.threshold == 8
    assert all(n in th.certified for n in range(8, 51))


def test_threshold_report_edge_cases():
    assert ThresholdReport(2, 5, [], [2, 3, 4, 5]).threshold is None
    assert ThresholdReport(2, 5, [2, 3], [4, 5]).threshold is None
    assert ThresholdReport(2, 5, [2, 3, 4, 5], []).threshold == 2


# -- conjecture --------------------------------------------------------------

def test_parity_classes():
    assert parity_class(1, 2) == ("m odd, n even", False)
    assert parity_class(2, 2) == ("m even, n even", True)
    assert parity_class(7, 3) == ("m odd, n odd", True)
    assert parity_class(2, 3) == ("m even, n odd", True)


def test_conjecture_examples():
    c = conjecture_cell(1, 2)
    assert c.polynomial.coeffs == (0, 0, 2, 1)
    assert c.solver_real == 1 and c.scan_zeros == [-2]
    assert c.verdict == "OUT_OF_CLASS"
    c = conjecture_cell(2, 2)
    assert c.in_class and c.solver_real == 0 and not c.scan_sign_changes
    assert c.verdict == "SUPPORTED"
    c = conjecture_cell(7, 3)
    assert c.verdict == "SUPPORTED"


def test_integer_sign_scan():
    zeros, changes = integer_sign_scan(Polynomial([-2, 0, 1]), -3, 3)
    assert zeros == [] and changes == [-2, 1]
    zeros, changes = integer_sign_scan(Polynomial([0, 0, 2, 1]), -3, 1)
    assert zeros == [-2, 0]


@pytest.mark.parametrize("m, n", [(1, 2), (1, 4), (3, 2), (1, 6), (5, 4)])
def test_scan_window_covers_real_roots(m, n):
    # the scan window is justified by both bounds holding for every real root
    p = dt_lex_star_complete(n, m)
    q = p.coeffs[p.valuation:]
    rs = find_roots(p)
    radius = disk_radius(m * (n + 1), lex_star_min_degree(n, m))
    for c in rs.nonzero_real_clusters():
        assert abs(c.center) <= fujiwara_bound(q)
        assert abs(c.center + 1) <= radius
    cell = conjecture_cell(m, n)
    assert cell.real_root_evidence == bool(rs.nonzero_real_clusters())


def test_explore_grid_order_and_limits():
    cells = explore([1, 2], [2, 3], threads=2)
    assert [(c.m, c.n) for c in cells] == [(1, 2), (1, 3), (2, 2), (2, 3)]
    with pytest.raises(ParameterError):
        explore([20], [20])
    with pytest.raises(ParameterError):
        conjecture_cell(0, 2)


# -- SVG ---------------------------------------------------------------------

def test_svg_structure():
    result = sweep("star_lex", range(2, 5), m=2)
    root = ET.fromstring(sweep_svg(result))
    assert root.get("viewBox") == "0 0 800 600"
    dots = root.findall(f"./{SVG}g/{SVG}circle")
    plotted = sum(1 for pt in result.points for _ in pt.roots.centers())
    assert len(dots) == plotted
    assert all(c.get("r") == "3" for c in dots)
    legend = root.findall(f"./{SVG}circle")
    assert len(legend) == len(result.points)
    texts = [t.text for t in root.iter(f"{SVG}text")]
    assert any(t and "n = 2" in t for t in texts)


def test_svg_handles_single_point():
    svg = svg_scatter([("only", [0j])], "one point")
    ET.fromstring(svg)
