from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clique_measure.errors import ContractError
from clique_measure.formulas import (
    CnfFormula,
    Gadget,
    bclique_value,
    brute_force_sat,
    check_witness_property,
    complete_bipartite,
    evaluate_lifted,
    from_dimacs,
    gen_bclique,
    gen_clique_plain,
    gen_php,
    gen_tseitin,
    lift_formula,
    random_kcnf,
    restrict_template,
    to_dimacs,
)
from clique_measure.graphs import KPartiteGraph, SampleParams, SimpleGraph, all_tuples, count_k_cliques, sample_kpartite

ONE_EDGE = KPartiteGraph(2, 2, frozenset({((0, 0), (1, 0))}))


def graphs(n_max=3, k_max=3):
    return st.builds(
        lambda n, k, s, p: sample_kpartite(SampleParams(n, k, p, s)),
        st.integers(1, n_max),
        st.integers(2, k_max),
        st.integers(0, 10**6),
        st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(4, 5)]),
    )


def test_plain_clique_examples():
    f = gen_clique_plain(SimpleGraph.named("triangle"), 1)
    assert f.num_clauses == 1 and brute_force_sat(f).sat
    assert not brute_force_sat(gen_clique_plain(SimpleGraph(2), 2)).sat
    assert brute_force_sat(gen_clique_plain(SimpleGraph.named("triangle"), 3)).sat
    assert not brute_force_sat(gen_clique_plain(SimpleGraph.named("C5"), 3)).sat


def test_unary_counts():
    f, _ = gen_bclique(ONE_EDGE, "unary")
    assert (f.num_vars, f.num_clauses) == (4, 5)
    header = [l for l in to_dimacs(f).splitlines() if l.startswith("p ")]
    assert header == ["p cnf 4 5"]


def test_binary_complete_graph():
    f, wm = gen_bclique(KPartiteGraph.complete(2, 2), "binary")
    assert f.num_vars == 2 and wm.num_x == 2
    assert f.num_clauses == 0 and brute_force_sat(f).sat


def test_cary_layout_count():
    f, wm = gen_bclique(KPartiteGraph.complete(4, 2), "cary", 2)
    assert f.num_vars == 8 and wm.m == 2
    f1, _ = gen_bclique(ONE_EDGE, "cary", 1)
    assert f1.clauses == gen_bclique(ONE_EDGE, "unary")[0].clauses


def test_unary_witness_example():
    _, wm = gen_bclique(ONE_EDGE, "unary")
    assert wm.assignment((0, 1)) == 0b1001  # x_a1 = 1, x_a2 = 0, x_b1 = 0, x_b2 = 1


@pytest.mark.parametrize("enc,c", [("unary", None), ("binary", None), ("cary", 1), ("cary", 2)])
def test_witness_injective_n3_k3(enc, c):
    g = KPartiteGraph.complete(3, 3)
    _, wm = gen_bclique(g, enc, c)
    values = wm.all_assignments().values()
    assert len(set(values)) == 27


@given(graphs(), st.sampled_from(["unary", "binary", "cary"]), st.booleans())
@settings(max_examples=60, deadline=None)
def test_encodings_agree_with_clique_existence(g, enc, width3):
    c = 1 if enc == "cary" else None
    f, wm = gen_bclique(g, enc, c, width3=width3)
    assert brute_force_sat(f).sat == (count_k_cliques(g) > 0)
    assert check_witness_property(f, wm, g)
    if width3 and enc != "binary":
        assert f.max_width <= 3  # binary edge axioms keep width 2L; ladders only rewrite block/range axioms


@given(graphs())
@settings(max_examples=40, deadline=None)
def test_template_restriction(g):
    for enc, c in (("unary", None), ("binary", None)):
        tf, _ = gen_bclique(g, enc, c, template=True)
        assert restrict_template(tf, g) == gen_bclique(g, enc, c)[0]


def test_bclique_value_matches_cliques():
    g = sample_kpartite(SampleParams(3, 3, Fraction(1, 2), 4))
    f, wm = gen_bclique(g, "binary")
    from clique_measure.graphs import is_clique

    assert all(bclique_value(f, wm, t) == is_clique(g, t) for t in all_tuples(3, 3))


def test_php_examples():
    f = gen_php(complete_bipartite(2, 1), 2, 1)
    assert f.num_clauses == 3 and not brute_force_sat(f).sat
    f = gen_php([(0, 0)], 2, 1)
    assert () in f.clauses
    assert not brute_force_sat(gen_php(complete_bipartite(4, 3), 4, 3)).sat
    assert brute_force_sat(gen_php(complete_bipartite(3, 3), 3, 3)).sat


def test_tseitin_examples():
    f = gen_tseitin(SimpleGraph.named("single"), "1")
    assert f.clauses == ((),)
    assert not brute_force_sat(gen_tseitin(SimpleGraph.named("triangle"), "100")).sat
    assert brute_force_sat(gen_tseitin(SimpleGraph.named("triangle"), "110")).sat
    k4 = SimpleGraph.named("K4")
    assert gen_tseitin(k4, "1000").num_clauses == 4 * 2 ** (3 - 1)
    with pytest.raises(ContractError):
        gen_tseitin(k4, "10")


def test_lift_examples():
    a = CnfFormula(1, ((1,),))
    assert lift_formula(a, Gadget.identity()).clauses == a.clauses
    assert lift_formula(a, Gadget.xor(2)).clauses == ((1, 2), (-1, -2))


@given(st.integers(0, 10**6), st.sampled_from(["xor:2", "and:2", "or:2", "xor:3", "id"]))
@settings(max_examples=30, deadline=None)
def test_lift_semantics(seed, gadget):
    a = random_kcnf(4, 6, 2, seed)
    g = Gadget.named(gadget)
    lifted = lift_formula(a, g)
    for y in range(1 << lifted.num_vars):
        assert lifted.evaluate(y) == evaluate_lifted(a, g, y)


def test_dimacs_examples():
    empty = CnfFormula(0, ())
    assert to_dimacs(empty) == "p cnf 0 0\n"
    f, _ = gen_bclique(ONE_EDGE, "binary", width3=True)
    g = from_dimacs(to_dimacs(f))
    assert g == f and g.var_names == f.var_names
    for bad in ("1 0\n", "p cnf 2 1\n3 0\n", "p cnf 2 1\n1 -1 0\n", "p cnf x 1\n"):
        with pytest.raises(ContractError):
            from_dimacs(bad)


def test_brute_force_examples():
    assert not brute_force_sat(CnfFormula(2, ((),))).sat
    res = brute_force_sat(CnfFormula(3, ()))
    assert res.sat and res.assignment == 0
    res = brute_force_sat(CnfFormula(2, ((2,), (-1, 2))))
    assert res.sat and res.assignment == 0b10


def test_random_kcnf_deterministic():
    assert random_kcnf(8, 20, 3, 5) == random_kcnf(8, 20, 3, 5)
    assert all(len(c) == 3 for c in random_kcnf(8, 20, 3, 5).clauses)


def test_gadget_contract():
    with pytest.raises(ContractError):
        Gadget(2, (0, 1))
    with pytest.raises(ContractError):
        Gadget.named("nand:2")
