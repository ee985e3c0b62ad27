"""Command-line front end: generate / simulate / analyze / reproduce.

Every command is deterministic given its flags: seeds are explicit
arguments with fixed defaults (never wall-clock derived), and the
``reproduce`` command refuses to run without one. Exit codes are stable
for scripting: 0 success, 1 runtime/IO/format failure, 2 usage error.

Output directory resolution: --outdir flag, else the DIFFUSIM_OUTDIR
environment variable, else the current directory.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import (characteristic_path_length, clustering_coefficient,
                       fit_power_law)
from .diffusion import SimulationConfig, run
from .ensemble import EnsembleConfig, compare_ensembles, run_ensemble
from .generators import FAMILIES, GeneratorSpec
from .graph import Graph, degree_histogram, mean_offdiagonal_weight
from .matrixio import (MatrixFormatError, export_link_matrix,
                       export_probability_matrix, graph_from_json,
                       graph_to_json, import_matrix)

FIGURES = ("random-network", "stochastic-network", "scale-free-network",
           "power-law", "random-vs-stochastic")
STATS = ("degree-histogram", "matrix-mean", "clustering", "path-length",
         "power-law")
MODELS = ("broadcast", "random-contact")

_DESK = {
    "n": 100,
    "initials": (1, 2, 5, 10, 20, 50),
    "model": "random-contact",
    "max_loops": 1000,
    "replications": 200,
    "compare_replications": 1000,
    "compare_initial": 10,
}


def _outdir(args) -> Path:
    if getattr(args, "outdir", None):
        d = Path(args.outdir)
    elif os.environ.get("DIFFUSIM_OUTDIR"):
        d = Path(os.environ["DIFFUSIM_OUTDIR"])
    else:
        d = Path(".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")
    print(f"wrote {path}")


def _load_graph(path: str) -> Graph:
    p = Path(path)
    if not p.exists():
        raise MatrixFormatError(f"graph file not found: {path}")
    text = p.read_text(encoding="utf-8")
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        return graph_from_json(text)
    return import_matrix(text)


def _int_list(value: str) -> list[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {value!r}") from exc


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def _generator_spec(parser, family, n, edge_prob, seed) -> GeneratorSpec:
    try:
        return GeneratorSpec(
            family, n,
            edge_prob if family == "random" else None,
            None if family == "complete" else seed)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_generate(parser, args) -> int:
    spec = _generator_spec(parser, args.family, args.n, args.edge_prob,
                           args.seed)
    g = spec.build()
    outdir = _outdir(args)
    prefix = args.prefix or (
        f"{args.family.replace('-', '_')}_n{args.n}"
        + ("" if args.family == "complete" else f"_seed{args.seed}"))
    matrix = (export_probability_matrix(g) if args.family == "stochastic"
              else export_link_matrix(g))
    _write(outdir / f"{prefix}.matrix.txt", matrix)
    _write(outdir / f"{prefix}.graph.json", graph_to_json(g) + "\n")
    density = (2 * g.edge_count / (g.n * (g.n - 1))) if g.n > 1 else 0.0
    seed_part = "" if spec.seed is None else f" seed={spec.seed}"
    print(f"family={args.family} n={g.n}{seed_part} "
          f"edges={g.edge_count} density={density:.4f}")
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _apply_config_file(parser, args) -> None:
    cp = configparser.ConfigParser()
    read = cp.read(args.config)
    if not read:
        raise OSError(f"config file not found: {args.config}")
    getters = {
        ("generator", "family"): ("family", str),
        ("generator", "n"): ("n", int),
        ("generator", "edge_prob"): ("edge_prob", float),
        ("generator", "seed"): ("graph_seed", int),
        ("simulation", "model"): ("model", str),
        ("simulation", "initial"): ("initial", _int_list),
        ("simulation", "max_loops"): ("max_loops", int),
        ("simulation", "seed"): ("seed", int),
        ("ensemble", "replications"): ("replications", int),
        ("ensemble", "regenerate_graph"): ("fixed_graph", None),
        ("output", "outdir"): ("outdir", str),
        ("output", "prefix"): ("prefix", str),
    }
    for (section, key), (dest, conv) in getters.items():
        if not cp.has_option(section, key):
            continue
        if dest in args._explicit:
            continue  # flags override file values
        raw = cp.get(section, key)
        if dest == "fixed_graph":
            setattr(args, dest, not cp.getboolean(section, key))
        else:
            setattr(args, dest, conv(raw))


def _simulate_one(parser, args, g, spec, initial, prefix, outdir) -> None:
    try:
        cfg = SimulationConfig(
            model=args.model,
            initial_informed=(len(args.initial_vertices)
                              if args.initial_vertices else initial),
            max_loops=args.max_loops,
            seed=args.seed,
            initial_vertices=(tuple(args.initial_vertices)
                              if args.initial_vertices else None),
        )
    except ValueError as exc:
        parser.error(str(exc))
    if args.replications == 1:
        rec = run(g if g is not None else spec.build(), cfg)
        sat = rec.saturation_loop()
        _write(outdir / f"{prefix}.trajectory.csv", rec.to_csv())
        if sat is None:
            print(f"initial={cfg.initial_informed}: not saturated within "
                  f"{rec.loops} loops (final informed {rec.counts[-1]})")
        else:
            print(f"initial={cfg.initial_informed}: saturated at loop {sat}")
    else:
        ecfg = EnsembleConfig(
            base=cfg, generator=spec, replications=args.replications,
            regenerate_graph=not args.fixed_graph)
        summary = run_ensemble(ecfg)
        _write(outdir / f"{prefix}.ensemble.csv", summary.to_csv())
        _write(outdir / f"{prefix}.ensemble.json",
               json.dumps(summary.to_json_dict(), indent=2) + "\n")
        sat = summary.saturation
        mean = "n/a" if sat.mean is None else f"{sat.mean:.2f}"
        print(f"initial={cfg.initial_informed}: replications="
              f"{args.replications} mean_saturation={mean} "
              f"censored={sat.censored}")


def cmd_simulate(parser, args) -> int:
    if args.config:
        _apply_config_file(parser, args)
    if args.graph and args.family:
        parser.error("give either --graph or --family, not both")
    g = None
    spec = None
    if args.graph:
        g = _load_graph(args.graph)
        if args.replications > 1:
            parser.error("ensembles need --family generation parameters "
                         "(a file-loaded graph cannot be regenerated)")
    elif args.family:
        if args.n is None:
            parser.error("--family requires --n")
        spec = _generator_spec(parser, args.family, args.n, args.edge_prob,
                               args.graph_seed)
        if args.replications == 1:
            g = spec.build()
    else:
        parser.error("one of --graph or --family is required")

    outdir = _outdir(args)
    prefix = args.prefix or "simulation"
    print(f"model={args.model} seed={args.seed} max_loops={args.max_loops}")
    initials = args.initial
    if args.initial_vertices:
        initials = [len(args.initial_vertices)]
    for initial in initials:
        suffix = f"_k{initial}" if len(initials) > 1 else ""
        _simulate_one(parser, args, g, spec, initial,
                      f"{prefix}{suffix}", outdir)
    return 0


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _histogram_csv(hist) -> str:
    lines = ["degree,count"]
    lines.extend(f"{k},{hist[k]}" for k in sorted(hist))
    return "\n".join(lines) + "\n"


def cmd_analyze(parser, args) -> int:
    g = _load_graph(args.graph)
    stat = args.stat
    if stat == "degree-histogram":
        text = _histogram_csv(degree_histogram(g))
    elif stat == "matrix-mean":
        text = json.dumps(
            {"n": g.n, "mean_offdiagonal_weight":
                mean_offdiagonal_weight(g)}) + "\n"
    elif stat == "clustering":
        text = json.dumps(
            {"n": g.n, "clustering_coefficient":
                clustering_coefficient(g)}) + "\n"
    elif stat == "path-length":
        res = characteristic_path_length(g)
        text = json.dumps(
            {"n": g.n, "characteristic_path_length": res.value,
             "connected": res.connected,
             "component_size": res.component_size}) + "\n"
    else:  # power-law
        fit = fit_power_law(degree_histogram(g))
        text = json.dumps(
            {"n": g.n, "slope": fit.slope, "intercept": fit.intercept,
             "points_used": fit.points_used}) + "\n"
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

def _reproduce_trajectories(family: str, seed: int, outdir: Path) -> list[str]:
    d = _DESK
    outputs = []
    for k in d["initials"]:
        base = SimulationConfig(model=d["model"], initial_informed=k,
                                max_loops=d["max_loops"], seed=seed + k)
        edge_prob = 0.5 if family == "random" else None
        spec = GeneratorSpec(family, d["n"], edge_prob, seed)
        summary = run_ensemble(EnsembleConfig(
            base=base, generator=spec, replications=d["replications"]))
        name = f"{family.replace('-', '_')}_trajectory_k{k}.csv"
        _write(outdir / name, summary.to_csv())
        outputs.append(name)
    return outputs


def _reproduce_power_law(seed: int, outdir: Path) -> list[str]:
    g = GeneratorSpec("scale-free", _DESK["n"], None, seed).build()
    hist = degree_histogram(g)
    outputs = ["degree_histogram.csv", "power_law_fit.json"]
    _write(outdir / outputs[0], _histogram_csv(hist))
    fit = fit_power_law(hist)
    hub = max(hist)
    _write(outdir / outputs[1], json.dumps(
        {"n": g.n, "slope": fit.slope, "intercept": fit.intercept,
         "points_used": fit.points_used, "max_degree": hub,
         "degree_one_fraction": hist.get(1, 0) / g.n}, indent=2) + "\n")
    return outputs


def _reproduce_random_vs_stochastic(seed: int, outdir: Path) -> list[str]:
    d = _DESK
    base = SimulationConfig(model=d["model"],
                            initial_informed=d["compare_initial"],
                            max_loops=d["max_loops"], seed=seed)
    summaries = {}
    for family in ("random", "stochastic"):
        edge_prob = 0.5 if family == "random" else None
        spec = GeneratorSpec(family, d["n"], edge_prob, seed)
        summaries[family] = run_ensemble(EnsembleConfig(
            base=base, generator=spec,
            replications=d["compare_replications"]))
    horizon = max(s.horizon for s in summaries.values())
    report = compare_ensembles(summaries["random"].extended(horizon),
                               summaries["stochastic"].extended(horizon))
    outputs = ["random_ensemble.csv", "stochastic_ensemble.csv",
               "comparison.json"]
    _write(outdir / outputs[0], summaries["random"].to_csv())
    _write(outdir / outputs[1], summaries["stochastic"].to_csv())
    _write(outdir / outputs[2],
           json.dumps(report.to_json_dict(), indent=2) + "\n")
    return outputs


def _run_reproduce(figure: str, seed: int, outdir: Path) -> None:
    if figure == "random-network":
        outputs = _reproduce_trajectories("random", seed, outdir)
    elif figure == "stochastic-network":
        outputs = _reproduce_trajectories("stochastic", seed, outdir)
    elif figure == "scale-free-network":
        outputs = _reproduce_trajectories("scale-free", seed, outdir)
    elif figure == "power-law":
        outputs = _reproduce_power_law(seed, outdir)
    else:
        outputs = _reproduce_random_vs_stochastic(seed, outdir)
    manifest = {
        "figure": figure,
        "seed": seed,
        "parameters": dict(_DESK, initials=list(_DESK["initials"])),
        "outputs": outputs,
        "version": __version__,
    }
    _write(outdir / "manifest.json",
           json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def cmd_reproduce(parser, args) -> int:
    if args.from_manifest:
        manifest = json.loads(Path(args.from_manifest).read_text(
            encoding="utf-8"))
        figure = manifest["figure"]
        seed = int(manifest["seed"])
        if figure not in FIGURES:
            raise ValueError(f"manifest names unknown figure {figure!r}")
    else:
        if args.figure is None:
            parser.error("--figure is required (or --from-manifest)")
        if args.seed is None:
            parser.error("--seed is required in reproduce mode")
        figure, seed = args.figure, args.seed
    outdir = _outdir(args)
    _run_reproduce(figure, seed, outdir)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _suppress_defaults(parser: argparse.ArgumentParser) -> None:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                _suppress_defaults(sp)
        else:
            action.default = argparse.SUPPRESS


def _explicit_dests(argv: list[str]) -> set[str]:
    """Dests actually given on the command line (config must not override)."""
    aux = build_parser()
    _suppress_defaults(aux)
    return set(vars(aux.parse_args(argv)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffusim",
        description="Information-diffusion simulation on complete, random, "
                    "stochastic and scale-free networks.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a graph and write "
                                        "matrix text plus JSON dump")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--edge-prob", type=float, default=None,
                   help="edge probability (random family only, default 0.5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--outdir")
    p.add_argument("--prefix")

    p = sub.add_parser("simulate", help="run one diffusion or an ensemble "
                                        "and write trajectory CSVs")
    p.add_argument("--graph", help="graph file (.matrix.txt or .graph.json)")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--edge-prob", type=float, default=None)
    p.add_argument("--graph-seed", type=int, default=0)
    p.add_argument("--model", choices=MODELS, default="random-contact")
    p.add_argument("--initial", type=_int_list, default=[1],
                   help="initial informed count(s), comma separated")
    p.add_argument("--initial-vertices", type=_int_list, default=None,
                   help="explicit initial vertex ids (overrides --initial)")
    p.add_argument("--max-loops", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replications", type=int, default=1)
    p.add_argument("--fixed-graph", action="store_true",
                   help="reuse one graph across replications instead of "
                        "regenerating per replication")
    p.add_argument("--config", help="INI config file; flags override it")
    p.add_argument("--outdir")
    p.add_argument("--prefix")

    p = sub.add_parser("analyze", help="compute a statistic of a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--stat", required=True, choices=STATS)
    p.add_argument("--out")

    p = sub.add_parser("reproduce", help="write the canned desk-scale data "
                                         "bundle for one figure")
    p.add_argument("--figure", choices=FIGURES)
    p.add_argument("--seed", type=int)
    p.add_argument("--from-manifest",
                   help="re-execute a previously written manifest.json")
    p.add_argument("--outdir")

    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args._explicit = _explicit_dests(argv)
    handlers = {
        "generate": cmd_generate,
        "simulate": cmd_simulate,
        "analyze": cmd_analyze,
        "reproduce": cmd_reproduce,
    }
    try:
        return handlers[args.command](parser, args)
    except (MatrixFormatError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
