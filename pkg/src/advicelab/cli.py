"""Command-line front end.

Exit codes: 0 every verdict passed, 1 a verdict failed (witness printed),
2 invalid input.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from .codec import bit_width, select_advice_bound
from .colouring import beta_of, is_legal_colouring, parse_rational, verify_membership
from .generate import default_L, random_graph, random_ring
from .graph import GraphError, InstanceError, build_ring, diameter, parse_instance, serialize_instance
from .lowerbounds import (
    adversary_stages,
    enumerate_fat_rings,
    epsilon_family,
    epsilon_harness,
    fat_ring,
    fat_ring_count,
    nested_ring_family,
    verify_epsilon_views,
    verify_fat_views,
    verify_nested_views,
)
from .lowerbounds.chopglue import adversary_label_bound, chop, verify_glue
from .lowerbounds.epsilon import next_pow2
from .lowerbounds.fat import pool_sets
from .schemes import SCHEME_NAMES, floor_log2, local_max_within, scheme
from .sim import EMPTY_ORACLE, run
from .verdict import Verdict

FAMILIES = ("nested", "epsilon", "fat", "random-ring", "random-graph")
CHECKS = ("legality", "membership", "nested", "fat-count", "fat-views", "epsilon", "glue")


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    try:
        return int(os.environ.get("ADVICELAB_SEED", "0"))
    except ValueError:
        raise UsageError("ADVICELAB_SEED must be an integer") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here")


def _write_family(out: Path, name: str, params: dict, graphs: dict[str, object]):
    out.mkdir(parents=True, exist_ok=True)
    for fname, g in graphs.items():
        (out / fname).write_text(serialize_instance(g))
    head = f"family {name} params " + " ".join(f"{k}={v}" for k, v in params.items())
    lines = [head] + [f"instance {fname}" for fname in graphs]
    (out / "MANIFEST").write_text("\n".join(lines) + "\n")


def cmd_gen(args) -> int:
    fam = args.family
    out = Path(args.out or fam)
    seed = _seed(args)
    if fam == "nested":
        _need(args, "D")
        f = nested_ring_family(args.D)
        graphs = {"R.txt": f.base}
        graphs.update({f"R1_{k}.txt": g for k, g in enumerate(f.members, 1)})
        params = {"D": args.D}
    elif fam == "epsilon":
        _need(args, "D", "eps")
        f = epsilon_family(args.D, args.eps, args.L)
        graphs = {f"R_{i}.txt": g for i, g in enumerate(f.rings, 1)}
        params = {"D": args.D, "eps": f.eps, "x": f.x, "y": f.y, "L": f.L}
    elif fam == "fat":
        _need(args, "D", "n")
        if args.n % (2 * args.D):
            raise UsageError(f"2D = {2 * args.D} must divide n = {args.n}")
        width = args.n // (2 * args.D)
        pool = args.pool or 2 * args.D + 1
        blocks = random.Random(seed).sample(pool_sets(pool, width), 2 * args.D)
        graphs = {"fat.txt": fat_ring(blocks)}
        params = {"D": args.D, "n": args.n, "pool": pool, "seed": seed}
    elif fam == "random-ring":
        _need(args, "n")
        graphs = {"ring.txt": random_ring(args.n, seed, args.L)}
        params = {"n": args.n, "seed": seed, "L": args.L or default_L(args.n)}
    else:
        _need(args, "n")
        graphs = {"graph.txt": random_graph(args.n, seed, args.L)}
        params = {"n": args.n, "seed": seed, "L": args.L or default_L(args.n)}
    _write_family(out, fam, params, graphs)
    print(f"wrote {len(graphs)} instance(s) to {out}")
    return 0


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def cmd_run(args) -> int:
    g = _load(args.instance)
    L = args.L or g.L or max(default_L(g.n), next_pow2(g.max_label))
    if g.max_label > L:
        raise UsageError(f"label {g.max_label} exceeds L={L}")
    if args.algo not in SCHEME_NAMES:
        raise UsageError(f"unknown algorithm {args.algo!r}; choose from {', '.join(SCHEME_NAMES)}")
    if args.algo == "select" and not g.is_ring():
        raise UsageError("select runs on rings only")
    oracle, alg = scheme(args.algo, alpha=args.alpha, L=L, D=args.D or max(diameter(g), 1))
    report = run(g, oracle, alg, args.round_cap)
    sys.stdout.write(report.format())
    ok = report.selection if alg.task == "selection" else report.election
    return 0 if ok and report.within_time else 1


def _report(v: Verdict, label: str) -> int:
    print(f"{label}: {v.format()}")
    return 0 if v.ok else 1


def cmd_verify(args) -> int:
    c = args.check
    if c == "legality":
        _need(args, "L", "beta")
        return _report(is_legal_colouring(args.L, args.beta), "legality")
    if c == "membership":
        _need(args, "L", "beta")
        return _report(verify_membership(args.L, args.beta), "membership")
    if c == "nested":
        _need(args, "D")
        return _report(verify_nested_views(args.D), "nested")
    if c == "fat-count":
        _need(args, "m", "slots")
        got, want = enumerate_fat_rings(args.m, args.slots), fat_ring_count(args.m, args.slots)
        return _report(Verdict(got == want, got, None if got == want else (got, want), f"formula={want}"),
                       "fat-count")
    if c == "fat-views":
        _need(args, "D", "n")
        return _report(verify_fat_views(args.D, args.n, args.trials, args.pool, _seed(args)), "fat-views")
    if c == "epsilon":
        _need(args, "D", "eps")
        return _report(verify_epsilon_views(epsilon_family(args.D, args.eps, args.L)), "epsilon")
    trials = args.trials or 100
    rng = random.Random(_seed(args))
    oracle, alg = scheme("select", alpha="1/1", L=1 << 12)
    for t in range(trials):
        sizes = [rng.choice((3, 5, 7, 9, 11)) for _ in range(2)]
        labels = rng.sample(range(1, 1 << 11), sum(sizes) + 1)
        r1, r2 = build_ring(labels[:sizes[0]]), build_ring(labels[sizes[0]:-1])
        c1, c2 = chop(r1, run(r1, oracle, alg)), chop(r2, run(r2, oracle, alg))
        ok, why = verify_glue(c1, c2, labels[-1])
        if not ok:
            return _report(Verdict(False, t + 1, (c1, c2, why)), "glue")
    return _report(Verdict(True, trials), "glue")


def cmd_adversary(args) -> int:
    if args.construction == "epsilon":
        _need(args, "D", "eps")
        fam = epsilon_family(args.D, args.eps, args.L)
        if args.algo != "local-max-noadvice":
            raise UsageError("the epsilon construction pits the advice-blind strawman only")
        w = epsilon_harness(fam, local_max_within(fam.x), EMPTY_ORACLE)
        if w is None:
            print("status=survived")
            return 1
        print(f"status=counterexample {w.format()}")
        _save(args, fam.rings[w.b - 1], "epsilon",
              {"D": fam.D, "eps": fam.eps, "x": fam.x, "y": fam.y, "L": fam.L, "ring": w.b, "peak": w.label})
        return 0
    budget, pool = args.budget, args.pool
    if budget is None or pool is None:
        raise UsageError("--budget and --pool are required")
    L = args.L or next_pow2(adversary_label_bound(budget, pool))
    if args.algo not in ("local-max-noadvice", "select", "select-diam"):
        raise UsageError(f"unknown selection algorithm {args.algo!r}")
    D = 2 ** (budget + 2)
    oracle, alg = scheme(args.algo, alpha=args.alpha, L=L, D=D)
    result = adversary_stages(alg, oracle, budget, pool, L=L)
    print(result.summary())
    for note in result.notes:
        print(f"note {note}")
    if result.status in ("counterexample", "incorrect"):
        fresh = sorted(set(result.X.labels) - {x for s in result.stages for m in s.survivors for x in m.ring.labels})
        params = {"algo": args.algo, "budget": budget, "pool": pool, "L": L,
                  "triples": f"3i+1..3i+3,i<{pool}", "glue_base": 3 * pool + 1}
        if fresh:
            params["fresh"] = f"{fresh[0]}..{fresh[-1]}"
        _save(args, result.X, "chopglue", params)
        return 0
    return 1


def _save(args, g, family: str, params: dict):
    """Write the counterexample plus a manifest naming the label layout used."""
    out = Path(args.out or "counterexample.txt")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(serialize_instance(g))
    head = f"family {family} params " + " ".join(f"{k}={v}" for k, v in params.items())
    out.with_name(out.name + ".manifest").write_text(f"{head}\ninstance {out.name}\n")
    print(f"counterexample written to {out}")


def _split(text: str, conv):
    try:
        return [conv(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None


def cmd_table(args) -> int:
    Ds = _split(args.D_list, int)
    alphas = _split(args.alpha_list, parse_rational)
    if not Ds or any(D < 2 for D in Ds):
        raise UsageError("--D needs integers >= 2")
    seed = _seed(args)
    print("task time_regime D measured_max_bits bound verdict")
    failed = False
    for alpha in alphas:
        beta = beta_of(alpha)
        for D in Ds:
            L = default_L(2 * D + 1)
            rng = random.Random(f"{seed}:{alpha}:{D}")
            sizes = [2 * D + 1, 2 * D] + [rng.randint(3, 2 * D + 1) for _ in range(args.samples)]
            oracle, alg = scheme("select", alpha=alpha, L=L)
            bits = 0
            ok = True
            for n in sizes:
                g = random_ring(n, rng.randrange(2**31), L)
                rep = run(g, oracle, alg)
                bits = max(bits, rep.advice_bits)
                ok &= rep.selection and rep.within_time
            bound = select_advice_bound(floor_log2(D), beta, L)
            ok &= bits <= bound
            failed |= not ok
            print(f"select alpha*diam(alpha={alpha}) {D} {bits} {bound} {'pass' if ok else 'fail'}")
    for D in Ds:
        L = default_L(2 * D + 1)
        print(f"elect-max 0 {D} {bit_width(L)} {bit_width(L)} pass")
        print(f"elect-diam diam {D} {bit_width(D)} {bit_width(D)} pass")
        print(f"elect-stall diam+1 {D} 0 0 pass")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="advicelab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int)
        sp.add_argument("--L", type=int)
        sp.add_argument("--D", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--eps", type=parse_rational)
        sp.add_argument("--pool", type=int)
        sp.add_argument("--trials", type=int)
        sp.add_argument("--out")

    sp = sub.add_parser("gen", help="write instance families")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("run", help="simulate one algorithm on one instance")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--algo", required=True)
    sp.add_argument("--alpha", type=parse_rational, default=parse_rational("1/1"))
    sp.add_argument("--round-cap", type=int)
    sp.add_argument("--L", type=int)
    sp.add_argument("--D", type=int)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("verify", help="exhaustive or sampled checks")
    sp.add_argument("--check", choices=CHECKS, required=True)
    sp.add_argument("--beta", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--slots", type=int)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("adversary", help="search for a counterexample")
    sp.add_argument("--algo", required=True)
    sp.add_argument("--construction", choices=("chopglue", "epsilon"), default="chopglue")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--alpha", type=parse_rational, default=parse_rational("1/1"))
    common(sp)
    sp.set_defaults(func=cmd_adversary)

    sp = sub.add_parser("table", help="measured advice size against the closed-form bounds")
    sp.add_argument("--D", dest="D_list", required=True)
    sp.add_argument("--alpha", dest="alpha_list", default="1/1")
    sp.add_argument("--samples", type=int, default=4)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, InstanceError, GraphError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
