"""Acceptance criteria 1-10, one test per criterion."""

from __future__ import annotations

import itertools
import json
import math
import random
from fractions import Fraction
from pathlib import Path


from clique_measure import cli
from clique_measure.formulas import (
    brute_force_sat,
    check_witness_property,
    complete_bipartite,
    embedding_witness,
    gen_bclique,
    gen_php,
    gen_tseitin,
    random_kcnf,
    restrict_template,
)
from clique_measure.graphs import (
    KPartiteGraph,
    SampleParams,
    SimpleGraph,
    all_tuples,
    count_k_cliques,
    cross_pairs,
    sample_kpartite,
)
from clique_measure.measure import (
    MeasureContext,
    exhaustive_expectation_check,
    mu_ruled_out_boundary,
    mu_set,
    mu_total,
    mu_tuple_core_factored,
    mu_tuple_naive,
    pairing_identity_check,
    tuples_through,
)
from clique_measure.patterns import (
    PatternGraph,
    core_count_bound_check,
    core_map,
    core_table,
    fiber_of_core,
    in_e_boundary,
    is_core_of,
    pair_slots,
)
from clique_measure.proofs import (
    balance_extract,
    certify_leaf_lower_bound,
    depth_bound,
    resolution_to_semantic,
    tree_resolution_refutation,
    verify_search_tree,
    verify_tree_refutation,
)
from clique_measure.vcdim import (
    SetFamily,
    reference_line_families,
    sauer_shelah_check,
    vc_dimension,
)


def graph(n: int, k: int, p: Fraction, seed: int) -> KPartiteGraph:
    return sample_kpartite(SampleParams(n, k, p, seed))


def brute_vc(k: int, edges: list[tuple[int, int]]) -> tuple[int, list[frozenset[int]]]:
    """Independent minimum vertex cover oracle."""
    for size in range(k + 1):
        covers = [frozenset(c) for c in itertools.combinations(range(k), size) if all(a in c or b in c for a, b in edges)]
        if covers:
            return size, covers
    raise AssertionError


# ---------------------------------------------------------------- 1


def test_criterion_01_measure_oracle_equivalence():
    mismatches = 0
    for n, k, d, p in itertools.product((2, 3), (2, 3, 4), (0, 1, 2), (Fraction(1, 2), Fraction(1, 3))):
        for s in range(50):
            ctx = MeasureContext(graph(n, k, p, 1000 * n + 100 * k + s), p, d)
            for t in all_tuples(n, k):
                mismatches += mu_tuple_core_factored(ctx, t) != mu_tuple_naive(ctx, t)
    assert mismatches == 0


# ---------------------------------------------------------------- 2


def test_criterion_02_zero_mean_expectation():
    rng = random.Random(2)
    for n, k, ps in ((2, 2, (Fraction(1, 2),)), (2, 3, (Fraction(1, 2), Fraction(1, 3)))):
        tuples = list(all_tuples(n, k))
        for p in ps:
            for d in (0, 1, 2):
                for _ in range(20):
                    q = rng.sample(tuples, rng.randint(1, len(tuples)))
                    mean, expected, ok = exhaustive_expectation_check(n, k, p, d, q)
                    assert ok and mean == Fraction(len(q), n**k)


# ---------------------------------------------------------------- 3


def test_criterion_03_full_budget_clique_identity():
    rng = random.Random(3)
    for s in range(100):
        n, k = rng.randint(2, 4), rng.randint(2, 4)
        p = rng.choice([Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)])
        g = graph(n, k, p, s)
        ctx = MeasureContext(g, p, k - 1)
        want = Fraction(count_k_cliques(g), n**k) / p ** math.comb(k, 2)
        assert mu_total(ctx) == want


# ---------------------------------------------------------------- 4


def test_criterion_04_boundary_form_and_pairing():
    rng = random.Random(4)
    done = seed = 0
    while done < 100:
        seed += 1
        n, k = rng.choice([2, 3]), rng.choice([2, 3, 4])
        p = rng.choice([Fraction(1, 2), Fraction(1, 3)])
        d = rng.randint(0, k - 1)
        g = graph(n, k, p, seed)
        missing = [e for e in cross_pairs(n, k) if e not in g.edges]
        if not missing:
            continue
        e = rng.choice(missing)
        ctx = MeasureContext(g, p, d)
        q = tuples_through(g, e)
        assert mu_ruled_out_boundary(ctx, q, e) == mu_set(ctx, q)
        checked, failures = pairing_identity_check(ctx, e, q)
        assert checked > 0 and failures == 0
        done += 1


# ---------------------------------------------------------------- 5


def _independent_core_checks(k: int, d: int, table) -> None:
    members = {h.mask for h in table.members}
    seen: dict[int, int] = {}
    for rec in table.records:
        for h in fiber_of_core(rec):
            assert h.mask in members and h.mask not in seen
            seen[h.mask] = rec.core.mask
    assert set(seen) == members
    slots = pair_slots(k)
    for rec in table.records:
        size, _ = brute_vc(k, rec.core.edges)
        assert size == rec.vc and len(rec.core.vertices) <= 3 * size
    for hm, fm in seen.items():
        h, f = PatternGraph(k, hm), PatternGraph(k, fm)
        vh, _ = brute_vc(k, h.edges)
        vf, covers_f = brute_vc(k, f.edges)
        assert vh == vf <= d
        assert all(all(a in c or b in c for a, b in h.edges) for c in covers_f)
        assert is_core_of(f, h)
        for a, b in slots:
            if not h.has_pair(a, b):
                assert in_e_boundary(h, (a, b)) == in_e_boundary(f, (a, b))


def test_criterion_05_core_machinery():
    for k in range(2, 7):
        for d in range(0, 4):
            table = core_table(k, d)  # raises CoreVerificationError on any failed property
            if k <= 5:
                _independent_core_checks(k, d, table)
            else:
                rng = random.Random(k * 10 + d)
                for h in rng.sample(table.members, min(300, len(table.members))):
                    rec = core_map(h)
                    assert h in fiber_of_core(rec)
                    assert brute_vc(k, rec.core.edges)[0] == brute_vc(k, h.edges)[0]
    for k in range(2, 7):
        for a in range(0, 4):
            for b in range(0, 10):
                count, bound, ok = core_count_bound_check(k, a, b)
                assert ok and count <= bound


# ---------------------------------------------------------------- 6


def _encodings(n: int) -> list[tuple[str, int | None]]:
    out = [("unary", None), ("binary", None)]
    c = 1
    while True:
        try:
            gen_bclique(KPartiteGraph.empty(n, 2), "cary", c)
        except ValueError:
            break
        out.append(("cary", c))
        c += 1
    return out


def _check_formulas(g: KPartiteGraph) -> None:
    expect = count_k_cliques(g) > 0
    for enc, c in _encodings(g.n):
        f, wm = gen_bclique(g, enc, c)
        assert brute_force_sat(f).sat == expect
        assert check_witness_property(f, wm, g)
        tf, _ = gen_bclique(g, enc, c, template=True)
        assert restrict_template(tf, g).clauses == f.clauses


def test_criterion_06_formula_correctness():
    # exhaustive where the graph count is small, seeded samples for (3, 3)
    for n, k in ((2, 2), (2, 3), (3, 2)):
        pairs = cross_pairs(n, k)
        for m in range(1 << len(pairs)):
            _check_formulas(KPartiteGraph(n, k, frozenset(e for i, e in enumerate(pairs) if m >> i & 1)))
    for s in range(300):
        _check_formulas(graph(3, 3, Fraction(s % 5 + 3, 10), s))
    _check_formulas(KPartiteGraph.complete(3, 3))
    _check_formulas(KPartiteGraph.empty(3, 3))
    for name in ("triangle", "K4", "C5", "P3"):
        sg = SimpleGraph.named(name)
        f = gen_tseitin(sg, "1" + "0" * (sg.num_vertices - 1))
        assert f.num_clauses == sum(2 ** (sg.degree(v) - 1) for v in range(sg.num_vertices) if sg.degree(v) > 0)


# ---------------------------------------------------------------- 7


def _unsat_formulas():
    out = [(f"php{m}", gen_php(complete_bipartite(m + 1, m), m + 1, m)) for m in (1, 2, 3)]
    for name in ("triangle", "K4", "C5"):
        sg = SimpleGraph.named(name)
        for charge in itertools.product("01", repeat=sg.num_vertices):
            if charge.count("1") % 2 and charge.count("1") <= 3:
                out.append((f"tseitin-{name}-{''.join(charge)}", gen_tseitin(sg, "".join(charge))))
    found = 0
    seed = 0
    while found < 8:
        nv = 8 + seed % 5
        f = random_kcnf(nv, 7 * nv, 3, seed)
        seed += 1
        if not brute_force_sat(f).sat:
            out.append((f"random-{nv}-{seed}", f))
            found += 1
    return out


def test_criterion_07_proof_pipeline():
    cases = 0
    p = Fraction(1, 2)
    for name, f in _unsat_formulas():
        pi = resolution_to_semantic(tree_resolution_refutation(f), f)
        assert verify_tree_refutation(pi, f), name
        dt = balance_extract(pi, f)
        assert dt.depth() <= depth_bound(pi.size), name
        assert verify_search_tree(dt, f), name
        n = 2 if f.num_vars >= 4 else 1
        g = graph(n, 2, p, cases)
        cert = certify_leaf_lower_bound(dt, MeasureContext(g, p, 1), embedding_witness(n, 2, f.num_vars))
        assert sum(e.mu for e in cert.leaves) == cert.mu_total
        assert cert.bound is None or cert.bound <= cert.num_leaves
        cases += 1
    # refutations of clique formulas, with their own witness maps
    for s in range(40):
        g = graph(2, 3, Fraction(1, 3), s)
        if count_k_cliques(g):
            continue
        f, wm = gen_bclique(g)
        pi = resolution_to_semantic(tree_resolution_refutation(f), f)
        assert verify_tree_refutation(pi, f)
        dt = balance_extract(pi, f)
        assert dt.depth() <= depth_bound(pi.size) and verify_search_tree(dt, f)
        cert = certify_leaf_lower_bound(dt, MeasureContext(g, Fraction(1, 3), 2), wm)
        assert sum(e.mu for e in cert.leaves) == cert.mu_total
        assert cert.bound is None or cert.bound <= cert.num_leaves
        cases += 1
    assert cases >= 20


# ---------------------------------------------------------------- 8


def test_criterion_08_vc_spot_checks():
    half = reference_line_families("halfspace", 2, 4)
    assert vc_dimension(half) == 3
    assert vc_dimension(reference_line_families("f2_affine", 2)) == 2
    assert vc_dimension(reference_line_families("ptf", 2, 2, 1)) == vc_dimension(reference_line_families("halfspace", 2, 2))
    rng = random.Random(8)
    pools = [
        half,
        reference_line_families("halfspace", 3, 2),
        reference_line_families("ptf", 2, 2, 2),
        reference_line_families("f2_affine", 3, affine=True),
        SetFamily.power_set(range(6)),
    ]
    for _ in range(1000):
        fam = rng.choice(pools)
        sub = fam.subfamily(m for m in fam.members if rng.random() < rng.random())
        size, bound, ok = sauer_shelah_check(sub)
        assert ok and size <= bound


# ---------------------------------------------------------------- 9 and 10


def _run(argv: list[str]) -> None:
    assert cli.main(argv) == 0


def _tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


GOOD_ARGS = ["good", "-n", "8", "-k", "3", "--D", "2", "--delta", "1/2", "--d", "1", "--samples", "500", "--seed", "9"]


def test_criterion_09_goodness_report(tmp_path, capsys):
    _run(GOOD_ARGS + ["--out", str(tmp_path / "a")])
    _run(GOOD_ARGS + ["--out", str(tmp_path / "b")])
    capsys.readouterr()
    assert _tree(tmp_path / "a") == _tree(tmp_path / "b")
    report = json.loads((tmp_path / "a" / "good_n8_k3_d1_s9.json").read_text())
    summary = report["summary"]
    assert summary["samples"] == 500
    assert 0 <= summary["fraction_pairs_bounded"] <= 1 and 0 <= summary["fraction_good_graphs"] <= 1
    # At p = 1/8 the variance of mu(T) is 3(1-p)/(p n^2) + 3n((1-p) n/p)^2 / n^6, sd about 0.78,
    # so roughly half the samples fall in [0.5, 1.5]; this line is expected to fail.
    assert summary["fraction_mu_in_window"] >= 0.6, (
        f"mu(T) in [1/2, 3/2] for {summary['fraction_mu_in_window']:.3f} of samples (need 0.6)"
    )


def test_criterion_10_reproducibility(tmp_path, capsys):
    def batch(out: Path, jobs: str) -> None:
        common = ["--seed", "4", "--jobs", jobs, "--out", str(out)]
        _run(["gen", "bclique", "-n", "2", "-k", "3", "-p", "1/3", "--enc", "binary"] + common)
        _run(["gen", "php", "--holes", "2", "--proof"] + common)
        _run(["sample", "-n", "4", "-k", "3", "--edgelist"] + common)
        _run(["measure", "-n", "3", "-k", "3", "--D", "2", "--delta", "1/2", "--d", "1", "--samples", "12"] + common)
        _run(["good", "-n", "6", "-k", "3", "--D", "2", "--delta", "1/2", "--epsilon", "1/2", "--samples", "40"] + common)
        _run(["certify", str(out / "php_m2.proof.json"), "--cnf", str(out / "php_m2.cnf"), "-n", "2", "-k", "2"] + common)
        _run(["vc"] + common)

    batch(tmp_path / "r1", "1")
    batch(tmp_path / "r2", "1")
    batch(tmp_path / "r3", "3")
    capsys.readouterr()
    first = _tree(tmp_path / "r1")
    assert len(first) >= 10
    assert first == _tree(tmp_path / "r2") == _tree(tmp_path / "r3")
