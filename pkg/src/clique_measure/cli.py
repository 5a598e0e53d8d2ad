"""Command-line harness: ``clique-measure <command> [options]``.

Exit codes: 0 success, 1 usage or invalid parameters, 2 verification
failure, 3 budget exceeded. Every JSON report embeds the experiment
configuration; re-running it reproduces the file byte for byte, whatever
``--jobs`` is. A ``timestamp`` key is added at the top level only when
``--timestamp`` is passed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import budget
from .errors import BudgetExceeded, ContractError, VerificationError
from .formulas import (
    CnfFormula,
    Gadget,
    brute_force_sat,
    complete_bipartite,
    embedding_witness,
    from_dimacs,
    gen_bclique,
    gen_clique_plain,
    gen_php,
    gen_tseitin,
    lift_formula,
    random_kcnf,
    to_dimacs,
)
from .graphs import (
    KPartiteGraph,
    SampleParams,
    SimpleGraph,
    all_tuples,
    count_k_cliques,
    cross_pairs,
    rational_edge_probability,
    sample_kpartite,
)
from .measure import (
    MeasureContext,
    exhaustive_expectation_check,
    goodness_check,
    mu_set,
    mu_total,
    ruled_out_family,
    tuples_through,
)

SAT_DECIDE_MAX_VARS = 22


def q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def derive_seed(seed: int, index: int) -> int:
    """Per-sample seed, independent of scheduling."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one run. The output directory and worker count are left out on purpose."""

    command: str
    seed: int
    family: str | None = None
    encoding: str | None = None
    n: int | None = None
    k: int | None = None
    c: int | None = None
    p: str | None = None
    D: str | None = None
    delta: str | None = None
    d: int | None = None
    epsilon: str | None = None
    samples: int | None = None
    budget: int | None = None
    extra: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        out = {k: v for k, v in dataclasses.asdict(self).items() if v is not None and k != "extra"}
        out.update(dict(self.extra))
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit with 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sample loops")
    p.add_argument("--budget", type=int, default=None, help="enumeration cap (overrides CLIQUE_MEASURE_BUDGET)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--timestamp", action="store_true", help="add a top-level timestamp to JSON reports")
    return p


def _graph_args(p: argparse.ArgumentParser, n: int = 4, k: int = 3) -> None:
    p.add_argument("-n", type=int, default=n, help="vertices per block")
    p.add_argument("-k", type=int, default=k, help="number of blocks")
    p.add_argument("-p", type=_fraction, default=None, help="edge probability (rational, default 1/2)")
    p.add_argument("--D", type=_fraction, default=None, help="use p = n^(-2/D)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="clique-measure", description=__doc__.splitlines()[0], parents=[common])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a DIMACS formula and its manifest")
    g.add_argument("family", choices=["bclique", "clique", "php", "tseitin", "lift", "random"])
    _graph_args(g)
    g.add_argument("--enc", choices=["unary", "binary", "cary"], default="unary")
    g.add_argument("--c", type=int, default=None, help="coordinates for the c-ary encoding")
    g.add_argument("--width3", action="store_true")
    g.add_argument("--template", action="store_true")
    g.add_argument("--graph", default=None, help="named graph: triangle, K<m>, C<m>, P<m>, single")
    g.add_argument("--charge", default=None, help="Tseitin charges as a 0/1 string")
    g.add_argument("--holes", type=int, default=2, help="PHP holes m (pigeons m+1)")
    g.add_argument("--gadget", default="xor:2", help="lift gadget: id, xor:m, and:m, or:m")
    g.add_argument("--vars", type=int, default=10)
    g.add_argument("--clauses", type=int, default=60)
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--proof", action="store_true", help="also write a tree resolution refutation")

    s = sub.add_parser("sample", parents=[common], help="sample a k-partite graph")
    _graph_args(s)
    s.add_argument("--edgelist", action="store_true", help="also write the edge-list format")

    for name, hlp in (("measure", "pseudo-measure report over sampled graphs"), ("good", "goodness Monte-Carlo summary")):
        m = sub.add_parser(name, parents=[common], help=hlp)
        _graph_args(m, 4 if name == "measure" else 8, 3)
        m.add_argument("--d", type=int, default=None, help="vc budget d")
        m.add_argument("--epsilon", type=_fraction, default=None, help="set d = round(epsilon * D)")
        m.add_argument("--delta", type=_fraction, default=None)
        m.add_argument("--samples", type=int, default=10 if name == "measure" else 500)
        if name == "measure":
            m.add_argument("--exhaustive", action="store_true", help="run the exhaustive expectation check")
            m.add_argument("--per-tuple", action="store_true", help="include per-tuple measures")

    c = sub.add_parser("certify", parents=[common], help="verify a refutation and certify a leaf bound")
    c.add_argument("proof", type=Path, help="refutation JSON")
    c.add_argument("--cnf", type=Path, required=True, help="DIMACS formula refuted by the proof")
    c.add_argument("--graph-file", type=Path, default=None, help="graph JSON of a bclique formula")
    c.add_argument("--enc", choices=["unary", "binary", "cary"], default="unary")
    c.add_argument("--c", type=int, default=None)
    c.add_argument("--width3", action="store_true")
    c.add_argument("-n", type=int, default=None, help="tuple space size when no graph is given")
    c.add_argument("-k", type=int, default=None)
    c.add_argument("-p", type=_fraction, default=Fraction(1, 2))
    c.add_argument("--d", type=int, default=1)

    v = sub.add_parser("vc", parents=[common], help="VC dimension report for reference line families")
    v.add_argument("--subfamilies", type=int, default=0, help="random subfamilies for Sauer-Shelah")

    sub.add_parser("selftest", parents=[common], help="quick invariant checks")
    return top


# ---------------------------------------------------------------- helpers


def _edge_probability(args) -> tuple[Fraction, str | None]:
    if args.D is not None:
        if args.p is not None:
            raise ContractError("give either -p or --D")
        return rational_edge_probability(args.n, args.D), q(args.D)
    return (args.p if args.p is not None else Fraction(1, 2)), None


def _write_json(path: Path, obj: dict, stamp: bool) -> None:
    if stamp:
        obj = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()), **obj}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _parallel_map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# ---------------------------------------------------------------- gen


def _decide(f: CnfFormula) -> bool | None:
    return brute_force_sat(f).sat if f.num_vars <= SAT_DECIDE_MAX_VARS else None


def cmd_gen(args) -> int:
    fam = args.family
    p, d_text = _edge_probability(args)
    extra: list[tuple[str, str]] = []
    n = k = c = None
    enc = None
    if fam == "bclique":
        n, k, enc, c = args.n, args.k, args.enc, args.c
        g = sample_kpartite(SampleParams(n, k, p, args.seed))
        f, _ = gen_bclique(g, enc, c, width3=args.width3, template=args.template)
        extra += [("width3", str(args.width3)), ("template", str(args.template))]
        if enc == "binary":
            extra.append(("binary_out_of_range", "forbidding clauses"))
        stem = f"bclique_{enc}{c or ''}_n{n}_k{k}_s{args.seed}"
    elif fam == "clique":
        k = args.k
        if args.graph:
            sg = SimpleGraph.named(args.graph)
            extra.append(("graph", args.graph))
            stem = f"clique_{args.graph}_k{k}"
        else:
            n = args.n
            sg = SimpleGraph.from_kpartite(sample_kpartite(SampleParams(n, k, p, args.seed)))
            stem = f"clique_n{n}_k{k}_s{args.seed}"
        f = gen_clique_plain(sg, k)
    elif fam == "php":
        m = args.holes
        f = gen_php(complete_bipartite(m + 1, m), m + 1, m)
        extra.append(("holes", str(m)))
        stem = f"php_m{m}"
    elif fam == "tseitin":
        sg = SimpleGraph.named(args.graph or "triangle")
        charge = args.charge or "1" + "0" * (sg.num_vertices - 1)
        f = gen_tseitin(sg, charge)
        extra += [("graph", args.graph or "triangle"), ("charge", charge)]
        stem = f"tseitin_{args.graph or 'triangle'}_{charge}"
    elif fam == "lift":
        m = args.holes
        gadget = Gadget.named(args.gadget)
        f = lift_formula(gen_php(complete_bipartite(m + 1, m), m + 1, m), gadget)
        extra += [("holes", str(m)), ("gadget", args.gadget)]
        stem = f"lift_php{m}_{args.gadget.replace(':', '')}"
    else:
        f = random_kcnf(args.vars, args.clauses, args.width, args.seed)
        extra += [("vars", str(args.vars)), ("clauses", str(args.clauses)), ("width", str(args.width))]
        stem = f"random{args.width}_v{args.vars}_c{args.clauses}_s{args.seed}"
    cfg = ExperimentConfig(
        "gen", args.seed, fam, enc, n, k, c, q(p) if fam in ("bclique", "clique") else None, d_text,
        budget=args.budget, extra=tuple(extra),
    )
    sat = _decide(f)
    manifest = {
        "config": cfg.to_json(),
        "family": fam,
        "encoding": enc,
        "n": n,
        "k": k,
        "c": c,
        "p": cfg.p,
        "seed": args.seed,
        "sat": sat,
        "clause_count": f.num_clauses,
        "var_count": f.num_vars,
    }
    out = args.out
    _write_text(out / f"{stem}.cnf", to_dimacs(f))
    _write_json(out / f"{stem}.json", manifest, args.timestamp)
    print(f"wrote {out / (stem + '.cnf')} ({f.num_vars} vars, {f.num_clauses} clauses, sat={sat})")
    if args.proof:
        from .proofs import resolution_to_semantic, tree_resolution_refutation

        if sat is not False:
            raise ContractError("--proof needs a formula decided unsatisfiable")
        pi = resolution_to_semantic(tree_resolution_refutation(f), f)
        _write_json(out / f"{stem}.proof.json", pi.to_json(), False)
        print(f"wrote {out / (stem + '.proof.json')} ({pi.size} nodes)")
    return 0


# ---------------------------------------------------------------- sample


def cmd_sample(args) -> int:
    p, d_text = _edge_probability(args)
    g = sample_kpartite(SampleParams(args.n, args.k, p, args.seed))
    cfg = ExperimentConfig("sample", args.seed, n=args.n, k=args.k, p=q(p), D=d_text, budget=args.budget)
    stem = f"graph_n{args.n}_k{args.k}_s{args.seed}"
    obj = {"config": cfg.to_json(), **g.to_json(p, args.seed), "num_edges": g.num_edges}
    if args.n**args.k <= budget.get_budget():
        obj["k_cliques"] = count_k_cliques(g)
    _write_json(args.out / f"{stem}.json", obj, args.timestamp)
    if args.edgelist:
        _write_text(args.out / f"{stem}.edges", g.to_edgelist())
    print(f"wrote {args.out / (stem + '.json')} ({g.num_edges} edges)")
    return 0


# ---------------------------------------------------------------- measure / good


def _vc_budget(args) -> tuple[int, str | None]:
    if args.epsilon is not None:
        if args.D is None:
            raise ContractError("--epsilon needs --D")
        if args.d is not None:
            raise ContractError("give either --d or --epsilon")
        return round(args.epsilon * args.D), q(args.epsilon)
    return (args.d if args.d is not None else 1), None


def _measure_sample(job: tuple) -> dict:
    kind, n, k, p, d, D, delta, seed, index, per_tuple, budget_cap = job
    budget.set_budget(budget_cap)
    s = derive_seed(seed, index)
    g = sample_kpartite(SampleParams(n, k, p, s))
    ctx = MeasureContext(g, p, d, D, delta)
    total = mu_total(ctx)
    row: dict = {"index": index, "seed": s, "num_edges": g.num_edges, "mu_total": q(total)}
    family = ruled_out_family(g)
    if kind == "measure":
        row["ruled_out"] = [
            {"pair": [list(e[0]), list(e[1])], "mu": q(mu_set(ctx, tuples_through(g, e)))}
            for e in cross_pairs(n, k)
            if e not in g.edges
        ]
        if per_tuple:
            row["per_tuple"] = {",".join(map(str, t)): q(mu_set(ctx, [t])) for t in all_tuples(n, k)}
    if D is not None and delta is not None:
        rep = goodness_check(ctx, family)
        row["good"] = rep.good
        row["pairs"] = len(rep.rows)
        row["pairs_bounded"] = sum(r.passed for r in rep.rows)
        if kind == "measure":
            row["goodness_rows"] = rep.rows_csv()
    return row


def _sample_jobs(args, kind: str) -> tuple[ExperimentConfig, list[tuple]]:
    p, d_text = _edge_probability(args)
    d, eps = _vc_budget(args)
    D = args.D
    cfg = ExperimentConfig(
        kind, args.seed, n=args.n, k=args.k, p=q(p), D=d_text, delta=q(args.delta) if args.delta else None,
        d=d, epsilon=eps, samples=args.samples, budget=args.budget,
    )
    per_tuple = getattr(args, "per_tuple", False)
    jobs = [
        (kind, args.n, args.k, p, d, D, args.delta, args.seed, i, per_tuple, args.budget)
        for i in range(args.samples)
    ]
    return cfg, jobs


def cmd_measure(args) -> int:
    if args.exhaustive:
        p, _ = _edge_probability(args)
        d, _ = _vc_budget(args)
        rng = random.Random(args.seed)
        tuples = list(all_tuples(args.n, args.k))
        sets = [tuples] + [rng.sample(tuples, rng.randint(0, len(tuples))) for _ in range(5)]
        ok = True
        for qs in sets:
            mean, expected, good = exhaustive_expectation_check(args.n, args.k, p, d, qs)
            ok &= good
            print(f"|q|={len(qs)} mean={q(mean)} expected={q(expected)} ok={good}")
        print("ok" if ok else "FAILED")
        return 0 if ok else 2
    cfg, jobs = _sample_jobs(args, "measure")
    rows = _parallel_map(_measure_sample, jobs, args.jobs)
    csv_lines = ["sample,seed,num_edges,mu_total,good,pairs_bounded,pairs"]
    goodness_csv = []
    for r in rows:
        csv_lines.append(
            f"{r['index']},{r['seed']},{r['num_edges']},{r['mu_total']},"
            f"{r.get('good', '')},{r.get('pairs_bounded', '')},{r.get('pairs', '')}"
        )
        if "goodness_rows" in r:
            body = r.pop("goodness_rows").splitlines()
            if not goodness_csv:
                goodness_csv.append("sample," + body[0])
            goodness_csv += [f"{r['index']},{line}" for line in body[1:]]
    stem = f"measure_n{args.n}_k{args.k}_d{cfg.d}_s{args.seed}"
    _write_json(args.out / f"{stem}.json", {"config": cfg.to_json(), "samples": rows}, args.timestamp)
    _write_text(args.out / f"{stem}.csv", "\n".join(csv_lines) + "\n")
    if goodness_csv:
        _write_text(args.out / f"{stem}.goodness.csv", "\n".join(goodness_csv) + "\n")
    for r in rows[:5]:
        print(f"sample {r['index']}: mu(T) = {r['mu_total']}" + (f", good={r['good']}" if "good" in r else ""))
    if "good" in rows[0] if rows else False:
        frac = sum(r["good"] for r in rows) / len(rows)
        print(f"fraction of good graphs: {frac:.4f}")
    print(f"wrote {args.out / (stem + '.json')}")
    return 0


def summarize_good(rows: list[dict], lo: Fraction = Fraction(1, 2), hi: Fraction = Fraction(3, 2)) -> dict:
    pairs = sum(r.get("pairs", 0) for r in rows)
    bounded = sum(r.get("pairs_bounded", 0) for r in rows)
    in_window = sum(lo <= Fraction(r["mu_total"]) <= hi for r in rows)
    return {
        "samples": len(rows),
        "pairs": pairs,
        "fraction_pairs_bounded": bounded / pairs if pairs else 1.0,
        "fraction_good_graphs": sum(r.get("good", True) for r in rows) / len(rows) if rows else 1.0,
        "fraction_mu_in_window": in_window / len(rows) if rows else 0.0,
        "mu_window": [q(lo), q(hi)],
    }


def cmd_good(args) -> int:
    if args.D is None or args.delta is None:
        raise ContractError("good needs --D and --delta")
    cfg, jobs = _sample_jobs(args, "good")
    rows = _parallel_map(_measure_sample, jobs, args.jobs)
    summary = summarize_good(rows)
    stem = f"good_n{args.n}_k{args.k}_d{cfg.d}_s{args.seed}"
    _write_json(args.out / f"{stem}.json", {"config": cfg.to_json(), "summary": summary, "samples": rows}, args.timestamp)
    lines = ["sample,seed,mu_total,good,pairs_bounded,pairs"]
    lines += [f"{r['index']},{r['seed']},{r['mu_total']},{int(r['good'])},{r['pairs_bounded']},{r['pairs']}" for r in rows]
    _write_text(args.out / f"{stem}.csv", "\n".join(lines) + "\n")
    for key in ("samples", "fraction_pairs_bounded", "fraction_good_graphs", "fraction_mu_in_window"):
        print(f"{key}: {summary[key]}")
    print(f"wrote {args.out / (stem + '.json')}")
    return 0


# ---------------------------------------------------------------- certify


def cmd_certify(args) -> int:
    from .proofs import TreeRefutation, balance_extract, certify_leaf_lower_bound, verify_search_tree, verify_tree_refutation

    f = from_dimacs(args.cnf.read_text())
    try:
        pi = TreeRefutation.from_json(json.loads(args.proof.read_text()))
    except json.JSONDecodeError as exc:
        raise ContractError(f"{args.proof}: {exc}") from None
    res = verify_tree_refutation(pi, f)
    if not res:
        raise VerificationError(f"refutation invalid at node {res.node}: {res.message}", res.node, res.assignment)
    if args.graph_file is not None:
        g = KPartiteGraph.from_json(json.loads(args.graph_file.read_text()))
        expect, wm = gen_bclique(g, args.enc, args.c, width3=args.width3)
        if expect.clauses != f.clauses or expect.num_vars != f.num_vars:
            raise ContractError("formula does not match the bclique encoding of the graph")
        graph_src = str(args.graph_file.name)
    else:
        if args.n is None or args.k is None:
            raise ContractError("give --graph-file or both -n and -k")
        g = sample_kpartite(SampleParams(args.n, args.k, args.p, args.seed))
        wm = embedding_witness(args.n, args.k, f.num_vars)
        graph_src = "sampled"
    ctx = MeasureContext(g, args.p, args.d)
    dt = balance_extract(pi, f)
    vs = verify_search_tree(dt, f)
    if not vs:
        raise VerificationError(f"extracted tree fails at node {vs.node}", vs.node, vs.assignment)
    cert = certify_leaf_lower_bound(dt, ctx, wm)
    cfg = ExperimentConfig(
        "certify", args.seed, encoding=wm.encoding, n=g.n, k=g.k, c=args.c, p=q(args.p), d=args.d,
        budget=args.budget, extra=(("proof", args.proof.name), ("cnf", args.cnf.name), ("graph", graph_src)),
    )
    obj = cert.to_json()
    obj["config"] = cfg.to_json()
    obj["proof_size"] = pi.size
    obj["graph"] = g.to_json()
    out = args.out / (args.proof.name.removesuffix(".json") + ".certificate.json")
    _write_json(out, obj, args.timestamp)
    print(f"proof size {pi.size}, decision tree depth {dt.depth()}")
    print(f"certified leaf bound {cert.bound}, actual leaf count {cert.num_leaves}")
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------- vc / selftest


def cmd_vc(args) -> int:
    from .vcdim import reference_line_families, sauer_shelah_check, vc_report_csv

    specs = [
        ("halfspace(2,4)", 2, reference_line_families("halfspace", 2, 4)),
        ("halfspace(3,2)", 3, reference_line_families("halfspace", 3, 2)),
        ("f2_affine(2)", 2, reference_line_families("f2_affine", 2)),
        ("f2_affine(3)", 3, reference_line_families("f2_affine", 3)),
        ("ptf(2,1,2)", 2, reference_line_families("ptf", 2, 2, 1)),
        ("ptf(2,2,2)", 2, reference_line_families("ptf", 2, 2, 2)),
        ("ptf(3,2,1)", 3, reference_line_families("ptf", 3, 1, 2)),
    ]
    text = vc_report_csv(specs)
    _write_text(args.out / "vc_report.csv", text)
    print(text, end="")
    if args.subfamilies:
        rng = random.Random(args.seed)
        ok = True
        for _ in range(args.subfamilies):
            name, _, fam = rng.choice(specs)
            members = [m for m in fam.members if rng.random() < 0.5]
            ok &= sauer_shelah_check(fam.subfamily(members))[2]
        print(f"sauer-shelah on {args.subfamilies} random subfamilies: {'ok' if ok else 'VIOLATED'}")
        if not ok:
            return 2
    return 0


def cmd_selftest(args) -> int:
    from .patterns import core_table
    from .measure import mu_tuple_core_factored, mu_tuple_naive

    for k in range(2, 6):
        for d in range(0, 3):
            core_table(k, d)
    print("core tables k<=5, d<=2: verified")
    for s in range(5):
        g = sample_kpartite(SampleParams(2, 3, Fraction(1, 3), derive_seed(args.seed, s)))
        for d in range(3):
            ctx = MeasureContext(g, Fraction(1, 3), d)
            for t in all_tuples(2, 3):
                if mu_tuple_naive(ctx, t) != mu_tuple_core_factored(ctx, t):
                    raise VerificationError(f"measure paths disagree at seed {s}, d={d}, t={t}")
        ctx = MeasureContext(g, Fraction(1, 3), 2)
        if mu_total(ctx) * 8 != Fraction(27) * count_k_cliques(g):
            raise VerificationError("full-budget clique identity fails")
        f, _ = gen_bclique(g)
        if brute_force_sat(f).sat != (count_k_cliques(g) > 0):
            raise VerificationError("bclique satisfiability disagrees with clique count")
    print("measure oracle, clique identity, encoding: ok")
    print("ok")
    return 0


COMMANDS = {
    "gen": cmd_gen,
    "sample": cmd_sample,
    "measure": cmd_measure,
    "good": cmd_good,
    "certify": cmd_certify,
    "vc": cmd_vc,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget.set_budget(args.budget)
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        where = f" (node {exc.node})" if exc.node is not None else ""
        print(f"verification failed{where}: {exc}", file=sys.stderr)
        return 2
    except (ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        budget.set_budget(None)


if __name__ == "__main__":
    sys.exit(main())
