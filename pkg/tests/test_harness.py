import json

import networkx as nx
import pytest
import sympy as sp

from lap2.errors import ConfigInvalid, NotBicyclic
from lap2.families import BrokenSun, Cycle, Sun, generate
from lap2.graph import build_graph
from lap2.harness import (
    CheckResult,
    SuiteConfig,
    check_broken_sun,
    check_coefficients,
    check_contraction,
    check_edge_deletion_thm,
    check_eigen_equation,
    check_example_fig6,
    check_interlacing,
    check_mult_bounds,
    check_no_pm_theorems,
    check_pm_join,
    check_remark_3_2,
    check_twotree_iff,
    check_unicyclic,
    float_crosscheck,
    rerun,
    run_suite,
)

from conftest import join, path, to_nx

C3, C4 = generate(Cycle(3)), generate(Cycle(4))
SUN3, SUN4 = generate(Sun(3)), generate(Sun(4))
BS4 = generate(BrokenSun(4, (0, 2)))


def verdicts(results, thm):
    return [r.verdict for r in results if r.theorem == thm]


# -- independent oracles ---------------------------------------------------------


def sym_mult2(h: nx.Graph) -> int:
    L = sp.Matrix(nx.laplacian_matrix(h, nodelist=sorted(h)).toarray().tolist())
    return h.number_of_nodes() - (L - 2 * sp.eye(h.number_of_nodes())).rank()


def sym_index_set(h: nx.Graph) -> set[int]:
    """1-based positions k (eigenvalues in descending order) with mu_k = 2."""
    x = sp.symbols("x")
    L = sp.Matrix(nx.laplacian_matrix(h, nodelist=sorted(h)).toarray().tolist())
    p = sp.Poly(L.charpoly(x).as_expr(), x)
    m = sp.roots(p, filter="Z").get(2, 0)
    above = p.count_roots(2, None) - m
    return set(range(above + 1, above + m + 1))


def has_pm(h: nx.Graph) -> bool:
    return 2 * len(nx.max_weight_matching(h, maxcardinality=True)) == h.number_of_nodes()


# -- single-graph checks ------------------------------------------------------------


def test_check_result_validates_ids():
    with pytest.raises(AssertionError):
        CheckResult("T9.9", "x", {}, "Pass")
    with pytest.raises(AssertionError):
        CheckResult("T2.1", "x", {}, "Maybe")


def test_coefficients_and_eigen_equation(sun4):
    assert check_coefficients(C3).verdict == "Pass"
    assert check_coefficients(sun4).witness["xi"][1] == 16
    r = check_eigen_equation(C4)
    assert r.verdict == "Pass" and r.witness["basis_size"] == 2
    assert float_crosscheck(C4) is None


def test_interlacing_examples():
    assert verdicts(check_interlacing(C4), "T3.1") == ["Pass"] * 4
    assert verdicts(check_interlacing(path(2)), "T3.1") == ["Pass"]


def test_remark_3_2_p4():
    res = check_remark_3_2(path(4))
    by_edge = {tuple(r.instance["edge"]) if r.instance["edge"] != "all" else "all": r.verdict for r in res}
    # (1,-1,-1,1): 0 and 3 agree, 1 and 2 are adjacent already
    assert by_edge[(0, 3)] == "Pass" and by_edge["all"] == "Pass"
    assert by_edge[(0, 2)] == "Inapplicable"
    assert all(r.verdict != "Fail" for r in check_remark_3_2(path(6)))
    assert verdicts(check_remark_3_2(path(3)), "R3.2") == ["Inapplicable"]


def test_constructive_checks():
    assert check_broken_sun(SUN4).verdict == "Pass"
    assert check_broken_sun(C3).verdict == "Inapplicable"
    assert check_unicyclic(SUN3).verdict == "Pass"
    res = check_contraction(generate(BrokenSun(10, (0, 1))))
    assert res and all(r.verdict == "Pass" for r in res)
    assert verdicts(check_contraction(SUN4), "T3.3") == ["Inapplicable"]


def test_mult_bounds_examples():
    r = check_mult_bounds(join(C3, C3))
    assert verdicts(r, "L4.1") == ["Pass"] and r[0].witness["mults"].get("2") is None
    r = check_mult_bounds(join(C3, C4))
    assert verdicts(r, "T4.2") == ["Pass"]
    assert r[0].witness["tau"] == r[0].witness["g1g2"] == 12
    assert verdicts(check_mult_bounds(join(SUN4, SUN4)), "L4.1") == ["Pass"]
    with pytest.raises(NotBicyclic):
        check_mult_bounds(SUN3)


def test_even_order_odd_girths_can_have_eigenvalue_2():
    """The 'both girths odd' clause only holds for odd order: Sun(3) joined to
    Sun(3) has n = 12, two triangles, and eigenvalue 2."""
    g = join(SUN3, SUN3)
    assert sym_mult2(to_nx(g)) >= 1
    r = check_mult_bounds(g)
    assert verdicts(r, "T4.2") == ["Inapplicable"]
    assert "2" in r[0].witness["mults"]


def test_pm_join():
    assert check_pm_join(SUN3, SUN3, 0, 0).verdict == "Pass"
    assert check_pm_join(C3, C3, 0, 0).verdict == "Inapplicable"


def test_edge_deletion_examples():
    assert verdicts(check_edge_deletion_thm(SUN3, SUN3, 0, 0), "T4.4") == ["Pass"]
    assert verdicts(check_edge_deletion_thm(SUN4, SUN4, 4, 4), "T4.4") == ["Pass"]
    assert verdicts(check_edge_deletion_thm(C3, C3, 0, 0), "T4.4") == ["Inapplicable"]


def test_twotree_examples():
    r = check_twotree_iff(SUN3, SUN3, 0, 0)
    assert r.verdict == "Pass" and r.witness["s1"] == r.witness["s2"] == 0
    assert "glued" in r.witness
    assert check_twotree_iff(SUN4, SUN4, 4, 4).verdict == "Pass"


def test_no_pm_examples():
    for u in range(BS4.n):
        for v in range(BS4.n):
            assert check_no_pm_theorems(BS4, BS4, u, v).verdict == "Pass"
    r = check_no_pm_theorems(BS4, SUN3, 0, 0)
    assert (r.theorem, r.verdict) == ("T4.8", "Pass")
    b8 = generate(BrokenSun(8, (0, 4)))
    assert check_no_pm_theorems(b8, BS4, 1, 2).verdict == "Pass"
    assert check_no_pm_theorems(C3, C3, 0, 0).verdict == "Inapplicable"


def test_example_fig6():
    r = check_example_fig6()
    assert r.verdict == "Pass" and all(r.witness["facts"].values())


# -- counterexamples, confirmed with sympy and networkx only --------------------------


def test_edge_deletion_counterexample():
    """Triangle with a pendant, joined at that pendant to C5 carrying three
    pendants: eigenvalue 2 has multiplicity 1, and every cycle edge whose
    removal keeps a perfect matching destroys it."""
    g1 = build_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    g2 = build_graph(8, [(0, 1), (0, 4), (1, 2), (2, 3), (2, 5), (3, 4), (3, 6), (4, 7)])
    G = to_nx(join(g1, g2, 3, 5))
    assert sym_mult2(G) == 1 and has_pm(G)
    cycle_edges = [(0, 1), (0, 2), (1, 2)] + [(a + 4, b + 4) for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]]
    admissible = []
    for e in cycle_edges:
        H = G.copy()
        H.remove_edge(*e)
        if has_pm(H):
            admissible.append(e)
            assert sym_mult2(H) == 0
    assert admissible
    res = check_edge_deletion_thm(g1, g2, 3, 5)
    assert verdicts(res, "T4.4") == ["Fail"]


def test_corollary_counterexample():
    """Triangle with a pendant joined to C4: mu_5 = 2, yet every double
    deletion that keeps a perfect matching has 2 only at index 4."""
    g1 = build_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    G = to_nx(join(g1, C4, 0, 0))
    K = sym_index_set(G)
    assert K == {5}
    c1, c2 = [(0, 1), (0, 2), (1, 2)], [(4, 5), (5, 6), (6, 7), (4, 7)]
    tried = 0
    for e in c1:
        for f in c2:
            H = G.copy()
            H.remove_edges_from([e, f])
            if has_pm(H):
                tried += 1
                assert not K & sym_index_set(H)
    assert tried
    res = check_edge_deletion_thm(g1, C4, 0, 0)
    assert verdicts(res, "C4.5") == ["Fail"]


# -- config and suite ------------------------------------------------------------------


@pytest.mark.parametrize(
    "d",
    [
        {"unicyclic_nmax": 2},
        {"girths": [2, 3]},
        {"girths": []},
        {"theorems": ["T9.9"]},
        {"forest_nmax": 12},
        {"pair_budget": 0},
        {"bogus": 1},
        {"girths": 5},
        {"workers": 0},
    ],
)
def test_config_invalid(d):
    with pytest.raises(ConfigInvalid):
        SuiteConfig.from_dict(d)


def test_config_capped():
    cfg = SuiteConfig().capped(8)
    assert cfg.bicyclic_nmax == 8 and cfg.girths == (3, 4, 5, 6, 7, 8)
    assert SuiteConfig().capped(4).girths == (3, 4)
    with pytest.raises(ConfigInvalid):
        SuiteConfig().capped(0)


def test_small_suite_report(tmp_path):
    out = tmp_path / "r.json"
    rep = run_suite(SuiteConfig().capped(7), out_path=str(out))
    assert rep["exit_status"] == 0
    assert not any(s["fail"] for s in rep["summary"].values())
    assert rep["summary"]["EX4.5"] == {"pass": 1, "fail": 0, "inapplicable": 0}
    assert rep["float_crosscheck"]["mismatches"] == []
    on_disk = json.loads(out.read_text())
    assert "_elapsed_s" not in on_disk and on_disk["summary"] == rep["summary"]
    for r in rep["results"]:
        assert rerun(r) == r["verdict"]


def test_suite_is_deterministic(tmp_path):
    cfg = SuiteConfig().capped(6)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_suite(cfg, str(a))
    run_suite(cfg, str(b))
    assert a.read_bytes() == b.read_bytes()


def test_suite_theorem_filter_and_failures():
    cfg = SuiteConfig(theorems=("T4.4", "C4.5")).capped(8)
    rep = run_suite(cfg)
    assert set(rep["summary"]) == {"T4.4", "C4.5"}
    assert rep["summary"]["C4.5"]["fail"] >= 1 and rep["exit_status"] == 1
    fails = [r for r in rep["results"] if r["verdict"] == "Fail"]
    assert fails and all(rerun(r) == "Fail" for r in fails)


def test_girth_restricted_config_runs_fewer_instances():
    full = run_suite(SuiteConfig(theorems=("T4.6",)).capped(12))["summary"]["T4.6"]
    odd = run_suite(SuiteConfig(girths=(3, 5), theorems=("T4.6",)).capped(12))["summary"]["T4.6"]
    assert full["fail"] == odd["fail"] == 0
    assert 0 < odd["pass"] < full["pass"]


def test_parallel_report_matches_serial(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_suite(SuiteConfig(workers=1).capped(7), str(a))
    run_suite(SuiteConfig(workers=2).capped(7), str(b))
    assert a.read_bytes() == b.read_bytes()
