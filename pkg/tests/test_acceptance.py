"""Acceptance suite: one test per release criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with
``pytest -s``) including the measured runtime against the criterion's
budget, then asserts. The three heavyweight ensembles are built once in
a module fixture; their build times are charged to the criteria that
consume them.
"""

from __future__ import annotations

import math
from time import perf_counter

import numpy as np
import pytest

from diffusim import (
    ContactModel,
    EnsembleConfig,
    GeneratorSpec,
    Graph,
    SimulationConfig,
    average_degree_histograms,
    compare_ensembles,
    degree_histogram,
    fit_power_law,
    gen_random,
    gen_scale_free,
    gen_stochastic,
    import_matrix,
    init_state,
    is_connected,
    mean_offdiagonal_weight,
    run,
    run_ensemble,
    step,
)


def _report(num, name, ok, elapsed, limit, detail):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    print(f"[{status}] criterion {num} ({name}): {detail} "
          f"[runtime {elapsed:.2f}s, budget {limit}s]")
    assert ok, f"criterion {num} ({name}) failed: {detail}"
    assert elapsed < limit, (
        f"criterion {num} ({name}) exceeded runtime budget: "
        f"{elapsed:.2f}s >= {limit}s")


# ---------------------------------------------------------------------------
# criterion 1: complete-network first-loop saturation
# ---------------------------------------------------------------------------

def test_criterion_1_complete_saturation():
    t0 = perf_counter()
    checked = 0
    ok = True
    for n in (10, 100):
        g = GeneratorSpec("complete", n).build()
        for seed in range(100):
            k = seed % n + 1
            rec = run(g, SimulationConfig("broadcast", k, 10, seed=seed))
            expected = [k] if k == n else [k, n]
            if rec.counts != expected:
                ok = False
            checked += 1
    elapsed = perf_counter() - t0
    _report(1, "complete saturation", ok, elapsed, 1.0,
            f"{checked} runs, trajectory exactly [k, n] at zero tolerance")


# ---------------------------------------------------------------------------
# criterion 2: matrix-average convergence to 1/2
# ---------------------------------------------------------------------------

def test_criterion_2_matrix_average_convergence():
    t0 = perf_counter()
    gens = {
        "random": lambda n, s: gen_random(n, 0.5, seed=s),
        "stochastic": lambda n, s: gen_stochastic(n, seed=s),
    }
    ok = True
    worst = 0.0
    mae = {}
    for family, gen in gens.items():
        for n in (100, 1000):
            errs = []
            for seed in range(30):
                err = abs(mean_offdiagonal_weight(gen(n, seed)) - 0.5)
                errs.append(err)
                if n == 1000:
                    worst = max(worst, err)
                    if err > 0.02:
                        ok = False
            mae[(family, n)] = float(np.mean(errs))
        if not mae[(family, 1000)] < mae[(family, 100)]:
            ok = False
    elapsed = perf_counter() - t0
    _report(2, "mean weight -> 1/2", ok, elapsed, 10.0,
            f"worst |mean-0.5| at n=1000 = {worst:.4f} (<= 0.02), "
            f"MAE shrinks 100->1000 for both families")


# ---------------------------------------------------------------------------
# criterion 3: scale-free trees with dominant degree-1 share
# ---------------------------------------------------------------------------

def test_criterion_3_scale_free_structure():
    t0 = perf_counter()
    fracs = []
    ok = True
    for seed in range(200):
        g = gen_scale_free(100, seed=seed)
        if g.edge_count != 99 or not is_connected(g):
            ok = False
        fracs.append(degree_histogram(g).get(1, 0) / 100)
    mean_frac = float(np.mean(fracs))
    ok = ok and mean_frac > 0.60
    elapsed = perf_counter() - t0
    _report(3, "scale-free structure", ok, elapsed, 5.0,
            f"mean degree-1 fraction {mean_frac:.3f} > 0.60, "
            f"200 graphs all connected with 99 edges")


# ---------------------------------------------------------------------------
# criterion 4: power-law shape of the ensemble degree histogram
# ---------------------------------------------------------------------------

def test_criterion_4_power_law_shape():
    t0 = perf_counter()
    hists = [degree_histogram(gen_scale_free(1000, seed=s))
             for s in range(200)]
    avg = average_degree_histograms(hists)
    fit = fit_power_law(avg)
    head = [avg.get(k, 0.0) for k in (1, 2, 3, 4)]
    non_increasing = all(a >= b for a, b in zip(head, head[1:]))
    ok = -3.5 <= fit.slope <= -1.5 and non_increasing
    elapsed = perf_counter() - t0
    _report(4, "power-law shape", ok, elapsed, 30.0,
            f"slope {fit.slope:.3f} in [-3.5, -1.5], head counts "
            f"{[round(h, 1) for h in head]} non-increasing")


# ---------------------------------------------------------------------------
# criteria 5 and 6 share three 1000-replication ensembles
# ---------------------------------------------------------------------------

ENSEMBLE_N = 100
ENSEMBLE_INITIAL = 10
ENSEMBLE_MAX_LOOPS = 1000
ENSEMBLE_REPS = 1000
ENSEMBLE_SEED = 505
GRAPH_SEED = 71


@pytest.fixture(scope="module")
def ensembles():
    base = SimulationConfig("random-contact", ENSEMBLE_INITIAL,
                            ENSEMBLE_MAX_LOOPS, seed=ENSEMBLE_SEED)
    summaries, times = {}, {}
    for family in ("random", "stochastic", "scale-free"):
        prob = 0.5 if family == "random" else None
        spec = GeneratorSpec(family, ENSEMBLE_N, prob, GRAPH_SEED)
        t0 = perf_counter()
        summaries[family] = run_ensemble(
            EnsembleConfig(base, spec, ENSEMBLE_REPS, regenerate_graph=True))
        times[family] = perf_counter() - t0
    return summaries, times


def test_criterion_5_random_vs_stochastic(ensembles):
    summaries, times = ensembles
    t0 = perf_counter()
    a, b = summaries["random"], summaries["stochastic"]
    horizon = max(a.horizon, b.horizon)
    rep = compare_ensembles(a.extended(horizon), b.extended(horizon))
    sat_a, sat_b = a.saturation, b.saturation
    ok = (rep.max_abs_mean_diff <= 5.0
          and sat_a.censored == 0 and sat_b.censored == 0
          and sat_a.mean is not None and sat_b.mean is not None
          and abs(sat_a.mean / sat_b.mean - 1.0) <= 0.10)
    elapsed = times["random"] + times["stochastic"] + (perf_counter() - t0)
    _report(5, "random ~ stochastic", ok, elapsed, 60.0,
            f"max per-loop mean diff {rep.max_abs_mean_diff:.2f} <= 5, "
            f"saturation means {sat_a.mean:.1f} vs {sat_b.mean:.1f} "
            f"(ratio-1 = {abs(sat_a.mean / sat_b.mean - 1):.3f} <= 0.10)")


def test_criterion_6_scale_free_drag(ensembles):
    summaries, times = ensembles
    t0 = perf_counter()
    sf, rnd = summaries["scale-free"], summaries["random"]
    horizon = max(sf.horizon, rnd.horizon)
    rep = compare_ensembles(sf.extended(horizon), rnd.extended(horizon))
    lo, hi = rep.threshold_diff_ci95
    ok = (rep.threshold_mean_a is not None
          and rep.threshold_mean_b is not None
          and rep.threshold_mean_a > rep.threshold_mean_b
          and lo > 0.0)
    elapsed = times["scale-free"] + (perf_counter() - t0)
    _report(6, "scale-free drag", ok, elapsed, 60.0,
            f"mean loops to 90%: scale-free {rep.threshold_mean_a:.1f} > "
            f"random {rep.threshold_mean_b:.1f}; bootstrap 95% CI of the "
            f"difference [{lo:.1f}, {hi:.1f}] excludes 0 "
            f"(censored {sf.threshold.censored}/{rnd.threshold.censored})")


# ---------------------------------------------------------------------------
# criterion 7: broadcast equals BFS ball on unit-weight graphs
# ---------------------------------------------------------------------------

def _oracle_adjacency(g):
    adj = {v: set() for v in range(g.n)}
    for u, v, _w in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _oracle_connected(adj, n):
    seen = {0}
    frontier = {0}
    while frontier:
        frontier = {j for i in frontier for j in adj[i]} - seen
        seen |= frontier
    return len(seen) == n


def test_criterion_7_bfs_oracle_equivalence():
    t0 = perf_counter()
    ok = True
    graphs = 0
    seed = 0
    while graphs < 50:
        n = 5 + (graphs * 46) // 50  # spreads n over 5..50
        p = min(1.0, 2.5 * math.log(n) / n)
        g = gen_random(n, p, seed=seed)
        seed += 1
        adj = _oracle_adjacency(g)
        if not _oracle_connected(adj, n):
            continue
        graphs += 1
        k = 1 + graphs % 3
        cfg = SimulationConfig("broadcast", k, n, seed=graphs)
        rng = np.random.default_rng(graphs)
        state = init_state(g, cfg, rng)
        ball = set(state.informed)
        while len(state.informed) < n:
            state = step(g, state, ContactModel.BROADCAST, rng)
            ball |= {j for i in ball for j in adj[i]}
            if state.informed != ball:
                ok = False
                break
    elapsed = perf_counter() - t0
    _report(7, "BFS oracle equivalence", ok, elapsed, 5.0,
            f"{graphs} connected unit-weight graphs (n <= 50), informed set "
            f"equals BFS ball at every loop, exact")


# ---------------------------------------------------------------------------
# criterion 8: determinism, monotonicity, absorption, weight-1 degeneracy
# ---------------------------------------------------------------------------

def _random_case(rng):
    family = ("complete", "random", "stochastic", "scale-free")[
        int(rng.integers(0, 4))]
    n = int(rng.integers(2, 31))
    prob = float(rng.random()) if family == "random" else None
    gseed = None if family == "complete" else int(rng.integers(0, 2 ** 32))
    g = GeneratorSpec(family, n, prob, gseed).build()
    model = ("broadcast", "random-contact")[int(rng.integers(0, 2))]
    cfg = SimulationConfig(model, int(rng.integers(1, n + 1)),
                           int(rng.integers(1, 16)),
                           seed=int(rng.integers(0, 2 ** 32)))
    return g, cfg


def test_criterion_8_determinism_and_monotonicity():
    t0 = perf_counter()
    rng = np.random.default_rng(20260810)
    ok = True
    cases = 1000
    for case in range(cases):
        g, cfg = _random_case(rng)
        a = run(g, cfg)
        b = run(g, cfg)
        if a.counts != b.counts:
            ok = False
        if any(x > y for x, y in zip(a.counts, a.counts[1:])):
            ok = False
        if a.counts[-1] == g.n:
            # absorption: stepping a saturated state never changes the set
            srng = np.random.default_rng(cfg.seed + 1)
            full = init_state(
                g, SimulationConfig(cfg.model, g.n, 1, seed=0), srng)
            after = step(g, full, cfg.model, srng)
            if after.informed != full.informed or after.loop != full.loop + 1:
                ok = False
        if case % 10 == 0:
            # weight-1.0 probability matrix vs 0/1 link matrix: identical
            # graphs, so trajectories agree seed for seed
            n = g.n
            prob_text = "\n".join(
                " ".join("0.00" if i == j else "1.00" for j in range(n))
                for i in range(n)) + "\n"
            link_text = "\n".join(
                " ".join("0" if i == j else "1" for j in range(n))
                for i in range(n)) + "\n"
            ga, gb = import_matrix(prob_text), import_matrix(link_text)
            if run(ga, cfg).counts != run(gb, cfg).counts:
                ok = False
    elapsed = perf_counter() - t0
    _report(8, "determinism/monotonicity", ok, elapsed, 30.0,
            f"{cases} randomized cases: bit-identical reruns, non-decreasing "
            f"informed counts, absorption at saturation, weight-1.0 "
            f"stochastic matches link matrix")
