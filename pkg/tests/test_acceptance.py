"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as
they are produced; they are also repeated in the terminal summary.
"""
import io
import os
import random
import subprocess
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

from advicelab.cli import main
from advicelab.codec import bit_width
from advicelab.colouring import beta_of, is_legal_colouring, verify_membership
from advicelab.generate import default_L, random_graph, random_ring
from advicelab.graph import build_ring, diameter, eccentricities, ring_sequence
from advicelab.lowerbounds import (
    adversary_stages,
    chop,
    enumerate_fat_rings,
    epsilon_family,
    epsilon_harness,
    nested_ring_family,
    verify_epsilon_views,
    verify_fat_views,
    verify_nested_views,
)
from advicelab.lowerbounds.chopglue import verify_glue
from advicelab.schemes import (
    ELECT_DIAM,
    ELECT_MAX,
    ELECT_STALL,
    LOCAL_MAX_NOADVICE,
    algorithm_select,
    candidate_set,
    diam_oracle,
    floor_log2,
    local_max_within,
    max_label_oracle,
    scheme,
    select_oracle,
    select_radius,
)
from advicelab.sim import EMPTY_ORACLE, run

ALPHAS = (Fraction(1), Fraction(1, 2), Fraction(1, 4))
SEED = 20241016


def test_c1_legality(criterion):
    times = {}
    ok = True
    for L, beta in ((16, 3), (32, 3), (16, 4)):
        t0 = time.perf_counter()
        v = is_legal_colouring(L, beta)
        times[L, beta] = time.perf_counter() - t0
        ok &= v.ok and times[L, beta] < 60
    detail = " ".join(f"(L={L},b={b}) {t:.2f}s" for (L, b), t in times.items())
    assert criterion(1, ok, f"legality {detail}")


def _ring_runs():
    """(ring, alpha, L, report) for 200 seeded rings under each alpha."""
    rng = random.Random(SEED)
    sizes = [3, 4, 5, 4096] + [rng.randint(3, 4096) for _ in range(196)]
    for n in sizes:
        L = default_L(n)
        g = random_ring(n, rng.randrange(2**32), L)
        for alpha in ALPHAS:
            yield g, alpha, L, run(g, select_oracle(alpha, L), algorithm_select(alpha, L))


_RUNS = None


def ring_runs():
    global _RUNS
    if _RUNS is None:
        _RUNS = list(_ring_runs())
    return _RUNS


def test_c2_selection(criterion):
    bad = []
    worst = 0
    for g, alpha, L, rep in ring_runs():
        d = diameter(g)
        a1 = floor_log2(d)
        beta = beta_of(alpha)
        tb = select_radius(alpha, a1)
        bound_bits = 1 + (2 * floor_log2(a1 + 1) + 1) + (beta - 1) * bit_width(floor_log2(L) + 1)
        worst = max(worst, rep.advice_bits)
        if not (rep.selection and rep.time <= tb <= alpha * d and rep.advice_bits <= bound_bits):
            bad.append((g.n, str(alpha), rep.time, rep.advice_bits, bound_bits))
    runs = len(ring_runs())
    assert criterion(2, not bad, f"select on {runs} ring runs, max bits {worst}, failures {bad[:3]}")


def test_c3_candidates(criterion):
    bad = []
    for g, alpha, L, rep in ring_runs():
        r = select_radius(alpha, floor_log2(diameter(g)))
        cands = candidate_set(g, r)
        if not 1 <= len(cands) < 8 / alpha:
            bad.append((g.n, str(alpha), len(cands)))
            continue
        pos = {lab: i for i, lab in enumerate(ring_sequence(g))}
        idx = sorted(pos[c] for c in cands)
        gaps = [b - a for a, b in zip(idx, idx[1:])] + [g.n - idx[-1] + idx[0]] if len(idx) > 1 else []
        if any(min(gap, g.n - gap) <= r for gap in gaps):
            bad.append((g.n, str(alpha), "close pair"))
    assert criterion(3, not bad, f"1 <= |C| < 8/alpha and pairwise distance > r, failures {bad[:3]}")


def test_c4_membership(criterion):
    t0 = time.perf_counter()
    failures = [L for L in range(3, 41) if not verify_membership(L, 3).ok]
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 300
    assert criterion(4, ok, f"membership L=3..40 beta=3 in {elapsed:.1f}s, failures {failures}")


def test_c5_election(criterion):
    D = 256
    rng = random.Random(SEED + 5)
    graphs = []
    for _ in range(100):
        n = rng.randint(2, 200)
        graphs.append(random_graph(n, rng.randrange(2**32), extra=rng.random()))
    graphs += [random_ring(n, n) for n in range(3, 65)]
    bad = []
    for g in graphs:
        L = g.L
        m = run(g, max_label_oracle(L), ELECT_MAX)
        if not (m.election and m.time == 0 and m.advice_bits == bit_width(L)):
            bad.append(("max", g.n))
        d = run(g, diam_oracle(D), ELECT_DIAM)
        if not (d.election and d.time == diameter(g) and d.advice_bits == bit_width(D)):
            bad.append(("diam", g.n))
        s = run(g, EMPTY_ORACLE, ELECT_STALL)
        ecc = eccentricities(g).tolist()
        halts = all(s.nodes[g.labels[v]].halt_round == ecc[v] + 1 for v in range(g.n))
        if not (s.election and s.advice_bits == 0 and halts):
            bad.append(("stall", g.n))
    assert criterion(5, not bad, f"{len(graphs)} graphs x 3 election schemes, failures {bad[:3]}")


def test_c6_nested(criterion):
    bad = []
    for D in range(2, 65):
        fam = nested_ring_family(D)
        for k in range(1, D + 1):
            g = fam.member(k)
            if diameter(g) != k or g.max_label != D + k + 1:
                bad.append((D, k))
        if not verify_nested_views(family=fam).ok:
            bad.append((D, "views"))
    assert criterion(6, not bad, f"nested families D=2..64, failures {bad[:3]}")


def test_c7_fat(criterion):
    counts = {(m, s): enumerate_fat_rings(m, s) for m, s in ((4, 4), (5, 4), (6, 4), (7, 6))}
    ok = all(c == comb(m, s) * factorial(s - 1) // 2 for (m, s), c in counts.items())
    v1 = verify_fat_views(3, 18, pool=7)
    v2 = verify_fat_views(4, 32, trials=50, seed=SEED)
    ok &= v1.ok and v2.ok
    detail = f"counts {list(counts.values())}, D=3 n=18 {v1.format()}, D=4 n=32 {v2.format()}"
    assert criterion(7, ok, detail)


def test_c8_chop_glue(criterion):
    rng = random.Random(SEED + 8)
    oracle, alg = scheme("select", L=1 << 12)
    glue_bad = []
    for _ in range(100):
        sizes = [rng.choice((3, 5, 7, 9, 11, 13)) for _ in range(2)]
        labels = rng.sample(range(1, 1 << 12), sum(sizes) + 1)
        r1, r2 = build_ring(labels[: sizes[0]]), build_ring(labels[sizes[0]:-1])
        c1, c2 = chop(r1, run(r1, oracle, alg)), chop(r2, run(r2, oracle, alg))
        good, why = verify_glue(c1, c2, labels[-1])
        if not good:
            glue_bad.append(why)
    t0 = time.perf_counter()
    res = adversary_stages(LOCAL_MAX_NOADVICE, EMPTY_ORACLE, 1, 8)
    elapsed = time.perf_counter() - t0
    two_ones = res.status == "counterexample" and len(res.X_report.selected()) >= 2
    ok = not glue_bad and two_ones and elapsed < 60
    assert criterion(8, ok, f"glue 100 pairs failures {glue_bad[:3]}; adversary {res.summary()} in {elapsed:.2f}s")


def test_c9_epsilon(criterion):
    parts = []
    ok = True
    for D in (81, 256):
        fam = epsilon_family(D, "1/4")
        sizes = all(g.n == 2 * D for g in fam.rings)
        views = verify_epsilon_views(fam)
        w = epsilon_harness(fam, local_max_within(fam.x), EMPTY_ORACLE)
        ok &= sizes and views.ok and w is not None and w.replay_equal
        parts.append(f"D={D} x={fam.x} y={fam.y} views={views.ok} harness=({w.format() if w else 'none'})")
    assert criterion(9, ok, "; ".join(parts))


ACCEPTANCE_COMMANDS = [
    ["gen", "--family", "random-ring", "--n", "100", "--seed", "7"],
    ["gen", "--family", "random-graph", "--n", "60", "--seed", "7"],
    ["gen", "--family", "fat", "--D", "3", "--n", "18", "--seed", "7"],
    ["gen", "--family", "nested", "--D", "8"],
    ["gen", "--family", "epsilon", "--D", "81", "--eps", "1/4"],
    ["run", "--instance", "ring5", "--algo", "select", "--alpha", "1/1", "--L", "32"],
    ["run", "--instance", "ring5", "--algo", "elect-diam"],
    ["verify", "--check", "legality", "--L", "16", "--beta", "3"],
    ["verify", "--check", "fat-views", "--D", "4", "--n", "32", "--trials", "10", "--seed", "7"],
    ["verify", "--check", "glue", "--trials", "20", "--seed", "7"],
    ["adversary", "--algo", "local-max-noadvice", "--budget", "1", "--pool", "8"],
    ["adversary", "--construction", "epsilon", "--algo", "local-max-noadvice", "--D", "81", "--eps", "1/4"],
    ["table", "--D", "64,256", "--alpha", "1/1,1/2", "--seed", "7"],
]


def _snapshot(workdir: Path, argv):
    """Run one command in ``workdir`` and collect its stdout and written files."""
    (workdir / "ring5").write_text("ring 1 2 3 5 4\n")
    buf = io.StringIO()
    cwd = os.getcwd()
    os.chdir(workdir)
    try:
        with redirect_stdout(buf):
            code = main(argv + ["--out", "out"] if argv[0] in ("gen", "adversary") else argv)
    finally:
        os.chdir(cwd)
    files = {str(p.relative_to(workdir)): p.read_bytes() for p in sorted(workdir.rglob("*")) if p.is_file()}
    return code, buf.getvalue().replace(str(workdir), "<dir>"), files


def test_c10_determinism(criterion, tmp_path):
    bad = []
    for i, argv in enumerate(ACCEPTANCE_COMMANDS):
        a, b = tmp_path / f"a{i}", tmp_path / f"b{i}"
        a.mkdir()
        b.mkdir()
        if _snapshot(a, argv) != _snapshot(b, argv):
            bad.append(" ".join(argv))
    # separate interpreters with different hash seeds
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(
            [sys.executable, "-m", "advicelab.cli", "table", "--D", "64", "--alpha", "1/4", "--seed", "3"],
            env=env, capture_output=True)
        outs.append(proc.stdout)
    if outs[0] != outs[1] or not outs[0]:
        bad.append("table across hash seeds")
    assert criterion(10, not bad, f"{len(ACCEPTANCE_COMMANDS)} commands replayed, mismatches {bad}")
