"""Exact extremal values: oracle vs brute force, closed forms, constructions."""

import itertools

import pytest

from orituran.containment import is_free
from orituran.extremal import (
    BadParamsError,
    BudgetExceededError,
    NoFormulaError,
    PatternSpec,
    build_construction,
    formula_value,
    oracle_exo,
    turan_edges,
    verify_against_formula,
)
from orituran.graphs import OrientedGraph, TooLargeError
from orituran.homomorphism import EmptyPatternError


def _all_labelled(n):
    pairs = list(itertools.combinations(range(n), 2))
    for digits in itertools.product((0, 1, 2), repeat=len(pairs)):
        arcs = []
        for (i, j), d in zip(pairs, digits):
            if d == 1:
                arcs.append((i, j))
            elif d == 2:
                arcs.append((j, i))
        yield OrientedGraph.from_arcs(n, arcs)


def _naive_exo(n, pattern):
    return max(g.arc_count for g in _all_labelled(n) if is_free(g, pattern))


# --- pattern tokens -------------------------------------------------------------


def test_parse_tokens_roundtrip():
    for token in [
        "dpath3",
        "dpath5",
        "dcycle4",
        "ttour3",
        "star:1,2",
        "star:0,3",
        "matching2",
        "adpath4",
        "oc4",
        "prop23",
        "prop23m",
        "p3plusarc",
        "thm32",
    ]:
        spec = PatternSpec.parse(token)
        assert spec.token == token
        assert PatternSpec.parse(spec.token) == spec


def test_parse_cycle_alias():
    assert PatternSpec.parse("c3") == PatternSpec.parse("dcycle3")


def test_parse_rejects_garbage():
    for bad in ["", "dpath", "dpathx", "star:1", "star:a,b", "nope5"]:
        with pytest.raises(BadParamsError):
            PatternSpec.parse(bad)


def test_pattern_shapes():
    assert PatternSpec.parse("oc4").graph.arc_count == 4
    assert PatternSpec.parse("prop23").graph.n == 4
    assert PatternSpec.parse("thm32").graph.arc_count == 4
    assert PatternSpec.parse("star:2,3").graph.out_degree(0) == 3
    assert PatternSpec.parse("star:2,3").graph.in_degree(0) == 2


def test_custom_pattern_needs_arcs():
    with pytest.raises(EmptyPatternError):
        PatternSpec.custom(OrientedGraph.empty(3))


# --- closed forms ---------------------------------------------------------------


def test_turan_edges():
    assert turan_edges(10, 3) == 33
    assert turan_edges(7, 2) == 12
    assert turan_edges(5, 5) == 10
    assert turan_edges(3, 5) == 3


def test_formula_paths_and_cycles():
    assert formula_value(PatternSpec.parse("dpath3"), 7) == (12, "all n")
    assert formula_value(PatternSpec.parse("dpath4"), 7) == (16, "all n")
    assert formula_value(PatternSpec.parse("dcycle4"), 9) == (36, "all n")
    assert formula_value(PatternSpec.parse("ttour3"), 7) == (16, "all n")


def test_formula_stars():
    # out-stars: (q-1)n, exact once n >= 2q-1
    assert formula_value(PatternSpec.parse("star:0,2"), 4) == (4, "all n")
    assert formula_value(PatternSpec.parse("star:0,3"), 5) == (10, "all n")
    assert formula_value(PatternSpec.parse("star:0,3"), 4)[1] == "sufficiently large n"
    # mixed stars: (p-1)n + floor((n+q-p)^2/4)
    assert formula_value(PatternSpec.parse("star:1,2"), 10) == (
        30,
        "sufficiently large n",
    )
    # p > q mirrors to the reversed star
    assert formula_value(PatternSpec.parse("star:2,1"), 10) == (
        30,
        "sufficiently large n",
    )


def test_formula_matchings():
    # piecewise maximum over clique-plus-dominating-set shapes
    assert formula_value(PatternSpec.parse("matching2"), 10) == (9, "all n")
    assert formula_value(PatternSpec.parse("matching2"), 4) == (3, "all n")
    assert formula_value(PatternSpec.parse("matching3"), 10) == (17, "all n")


def test_formula_special_patterns():
    assert formula_value(PatternSpec.parse("adpath4"), 6) == (9, "all n")
    assert formula_value(PatternSpec.parse("prop23"), 6) == (9, "sufficiently large n")
    assert formula_value(PatternSpec.parse("p3plusarc"), 6) == (
        9,
        "sufficiently large n",
    )
    assert formula_value(PatternSpec.parse("thm32"), 6) == (
        12,
        "sufficiently large n",
    )
    assert formula_value(PatternSpec.parse("oc4"), 8) == (21, "all n")


def test_formula_absent():
    with pytest.raises(NoFormulaError):
        formula_value(PatternSpec.parse("adpath5"), 6)
    with pytest.raises(TooLargeError):
        formula_value(PatternSpec.parse("ttour4"), 6)


# --- oracle ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "token",
    ["dpath3", "dpath4", "matching2", "star:0,2", "adpath4", "thm32"],
)
def test_oracle_matches_brute_force(token):
    spec = PatternSpec.parse(token)
    for n in range(1, 5):
        rec = oracle_exo(n, spec)
        assert rec.value == _naive_exo(n, spec.graph)
        assert is_free(rec.witness, spec.graph)
        assert rec.witness.arc_count == rec.value


def test_oracle_frozen_values():
    frozen = [
        ("dpath3", 5, 6),
        ("dpath3", 6, 9),
        ("dpath3", 7, 12),
        ("dpath4", 7, 16),
        ("matching2", 7, 6),
        ("star:0,2", 7, 7),
        ("adpath4", 5, 7),
        ("adpath4", 6, 9),
        ("star:1,2", 6, 12),
        ("prop23", 6, 9),
        ("p3plusarc", 6, 9),
        ("thm32", 6, 12),
    ]
    for token, n, want in frozen:
        rec = oracle_exo(n, PatternSpec.parse(token))
        assert rec.value == want, (token, n)
        assert is_free(rec.witness, PatternSpec.parse(token).graph)


def test_oracle_accepts_raw_graph():
    arc = OrientedGraph.from_arcs(2, [(0, 1)])
    assert oracle_exo(4, arc).value == 0


def test_oracle_jobs_deterministic():
    spec = PatternSpec.parse("dpath3")
    serial = oracle_exo(6, spec)
    parallel = oracle_exo(6, spec, jobs=2)
    assert serial.value == parallel.value
    assert serial.witness == parallel.witness


def test_oracle_validates_inputs():
    spec = PatternSpec.parse("dpath3")
    with pytest.raises(BadParamsError):
        oracle_exo(0, spec)
    with pytest.raises(TooLargeError):
        oracle_exo(11, spec)
    with pytest.raises(TooLargeError):
        oracle_exo(8, spec)  # beyond the exhaustive cap, budget required


def test_oracle_budget_exhaustion_certifies_lower_bound():
    spec = PatternSpec.parse("dpath4")
    with pytest.raises(BudgetExceededError) as exc:
        oracle_exo(8, spec, budget=50)
    assert exc.value.lower_bound >= 21  # construction seed is certified
    assert is_free(exc.value.witness, spec.graph)
    assert exc.value.witness.arc_count == exc.value.lower_bound


# --- constructions ---------------------------------------------------------------


def test_construction_turan():
    g = build_construction("turan", 10, r=3)
    assert g.arc_count == turan_edges(10, 3)
    assert is_free(g, PatternSpec.parse("dpath4").graph)
    tt = build_construction("turan", 8, r=8)
    assert tt.arc_count == 28


def test_construction_turan_with_pattern():
    g = build_construction("turan", 9, r=2, pattern=PatternSpec.parse("dpath3"))
    assert g.arc_count == turan_edges(9, 2)
    assert is_free(g, PatternSpec.parse("dpath3").graph)
    with pytest.raises(BadParamsError):
        build_construction("turan", 9, r=3, pattern=PatternSpec.parse("dpath3"))


def test_construction_cyclepower():
    g = build_construction("cyclepower", 5, q=3)
    assert g.arc_count == 10
    assert is_free(g, PatternSpec.parse("star:0,3").graph)


def test_construction_starpartition():
    spec = PatternSpec.parse("star:1,2")
    g = build_construction("starpartition", 9, p=1, q=2)
    assert g.arc_count == formula_value(spec, 9)[0]
    assert is_free(g, spec.graph)


def test_construction_thm32():
    g = build_construction("thm32", 6)
    assert g.arc_count == 12
    assert is_free(g, PatternSpec.parse("thm32").graph)
    with pytest.raises(BadParamsError):
        build_construction("thm32", 4)


def test_construction_prop26_prop27():
    g26 = build_construction("prop26", 4)
    assert g26.arc_count == 5
    assert is_free(g26, PatternSpec.parse("adpath4").graph)
    g27 = build_construction("prop27", 6)
    assert g27.arc_count == 9
    assert is_free(g27, PatternSpec.parse("p3plusarc").graph)


def test_construction_unknown_name():
    with pytest.raises(BadParamsError):
        build_construction("blowup", 5)


# --- verification reports ---------------------------------------------------------


def test_verify_report_all_match():
    report = verify_against_formula(PatternSpec.parse("dpath3"), range(3, 7))
    assert [r.status for r in report.rows] == ["MATCH"] * 4
    assert report.first_match_n == 3
    obj = report.to_json_obj()
    assert obj["pattern"] == "dpath3"
    assert [row["n"] for row in obj["rows"]] == [3, 4, 5, 6]
    assert "status" in obj["rows"][0]


def test_verify_report_records_small_n_shortfall():
    # below the formula's validity range the oracle may fall short; recorded, not raised
    report = verify_against_formula(PatternSpec.parse("star:1,2"), [3, 4, 5])
    statuses = {r.n: r.status for r in report.rows}
    assert statuses[3] == "ORACLE_LOWER"
    assert statuses[4] == "MATCH"
    assert statuses[5] == "MATCH"
    assert report.first_match_n == 4


def test_verify_report_text_table():
    report = verify_against_formula(PatternSpec.parse("adpath4"), [4, 5])
    text = report.to_text()
    assert "adpath4" in text
    assert "MATCH" in text
    assert len(text.splitlines()) == 4
