"""Benchmark harness: instance generation, algorithm runs, and comparison.

Instances are a sweep of scene x size x prior x feasibility x seed. One
roadmap is built per (scene, size, seed) and reused across the feasible and
infeasible scene variants — only the edge truths change. Runs emit one
BenchRecord row per (algorithm, instance) as CSV; comparison aggregates
paired metric differences against a baseline algorithm with Student-t
confidence intervals.
"""

import csv
import io
import os
import statistics
from dataclasses import dataclass, fields

from scipy import stats as scipy_stats

from .baselines import run_bfs_feasibility, run_cut_only, run_path_only
from .generators import NOISY, PriorCalibration, grid, label_and_calibrate, prm, sparse_roadmap
from .geometry import bundled_scene, save_scene
from .idpc import run_idpc
from .ipc import run_ipc
from .oracle import SceneOracle, TableOracle
from .roadmap import (
    QueryNotEmbeddable,
    attach_query,
    load_roadmap,
    load_truth,
    save_roadmap,
    save_truth,
)
from .verify import ground_truth_feasible, validate_verdict

CSV_VERSION = "# pathcut-bench-csv v1"

ALGORITHMS = {
    "ipc": run_ipc,
    "idpc": run_idpc,
    "path_only": run_path_only,
    "cut_only": run_cut_only,
    "bfs": run_bfs_feasibility,
}


class ConfigError(Exception):
    """Malformed config; message carries the line number."""


class AnalysisError(Exception):
    pass


@dataclass
class BenchRecord:
    algorithm: str
    scene: str
    instance_id: str
    seed: int
    n_vertices: int
    n_edges: int
    prior_mode: str
    ground_truth_feasible: bool
    verdict: str
    correct: bool
    n_evaluations: int
    n_iterations: int
    n_path_calls: int
    n_cut_calls: int
    max_cut_input_vertices: int
    wall_time_us: float


RECORD_FIELDS = [f.name for f in fields(BenchRecord)]

_KNOWN_KEYS = {
    "scene",
    "feasibility",
    "roadmap.type",
    "roadmap.n_vertices",
    "roadmap.k",
    "roadmap.n_edges",
    "roadmap.visibility_radius",
    "prior.mode",
    "prior.params",
    "algorithm.names",
    "algorithm.paths_per_iteration",
    "seeds",
    "instances",
    "output",
}

_DEFAULTS = {
    "scene": ["passage"],
    "feasibility": ["feasible", "infeasible"],
    "roadmap.type": "prm",
    "roadmap.n_vertices": [100],
    "roadmap.k": None,
    "roadmap.n_edges": None,
    "roadmap.visibility_radius": 0.35,
    "prior.mode": [NOISY],
    "prior.params": (0.3, 0.4, 0.6, 0.7),
    "algorithm.names": ["ipc", "idpc"],
    "algorithm.paths_per_iteration": 1,
    "seeds": [0],
    "instances": None,
    "output": None,
}


def _parse_int_list(value, lineno, key):
    out = []
    for tok in value.split(","):
        tok = tok.strip()
        if ".." in tok:
            lo, _, hi = tok.partition("..")
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise ConfigError(f"line {lineno}: {key}: bad range {tok!r}")
        elif tok:
            try:
                out.append(int(tok))
            except ValueError:
                raise ConfigError(f"line {lineno}: {key}: bad integer {tok!r}")
    return out


def parse_config(text):
    """Parse KEY = VALUE config lines; '#' starts a comment."""
    cfg = dict(_DEFAULTS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected KEY = VALUE, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in ("scene", "feasibility", "prior.mode", "algorithm.names"):
            cfg[key] = [tok.strip() for tok in value.split(",") if tok.strip()]
        elif key in ("roadmap.n_vertices", "roadmap.n_edges", "seeds"):
            cfg[key] = _parse_int_list(value, lineno, key)
        elif key in ("roadmap.k", "algorithm.paths_per_iteration"):
            try:
                cfg[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key}: bad integer {value!r}")
        elif key == "roadmap.visibility_radius":
            try:
                cfg[key] = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key}: bad number {value!r}")
        elif key == "prior.params":
            try:
                parts = tuple(float(tok) for tok in value.split(","))
            except ValueError:
                raise ConfigError(f"line {lineno}: prior.params: bad number in {value!r}")
            if len(parts) != 4:
                raise ConfigError(f"line {lineno}: prior.params needs 4 values")
            cfg[key] = parts
        else:
            cfg[key] = value
    for mode in cfg["prior.mode"]:
        if mode not in ("PERFECT", "NOISY", "NONE"):
            raise ConfigError(f"unknown prior mode {mode!r}")
    for name in cfg["algorithm.names"]:
        if name not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {name!r}")
    for fcls in cfg["feasibility"]:
        if fcls not in ("feasible", "infeasible"):
            raise ConfigError(f"unknown feasibility class {fcls!r}")
    if cfg["roadmap.type"] not in ("prm", "grid", "sparse"):
        raise ConfigError(f"unknown roadmap type {cfg['roadmap.type']!r}")
    return cfg


def load_config(path):
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    with open(path) as fh:
        return parse_config(fh.read())


def _sizes(cfg):
    """(n_vertices, n_edges-target) pairs of the sweep; index-paired when
    both lists have equal length, cross product otherwise."""
    nvs = cfg["roadmap.n_vertices"]
    nes = cfg["roadmap.n_edges"]
    if nes is None:
        return [(nv, None) for nv in nvs]
    if len(nes) == len(nvs):
        return list(zip(nvs, nes))
    return [(nv, ne) for nv in nvs for ne in nes]


def _build_roadmap(cfg, scene, n_vertices, n_edges, seed):
    kind = cfg["roadmap.type"]
    if kind == "prm":
        if n_edges is not None:
            return prm(scene, n_vertices, seed=seed, n_edges=n_edges)
        return prm(scene, n_vertices, k_neighbors=cfg["roadmap.k"] or 8, seed=seed)
    if kind == "grid":
        rows = max(2, int(round(n_vertices**0.5)))
        cols = max(2, (n_vertices + rows - 1) // rows)
        return grid(scene, rows, cols)
    return sparse_roadmap(
        scene, n_attempts=n_vertices, visibility_radius=cfg["roadmap.visibility_radius"], seed=seed
    )


def _calibration(cfg, mode, seed):
    a, b, c, d = cfg["prior.params"]
    if mode == NOISY:
        return PriorCalibration(mode, a, b, c, d, seed=seed)
    return PriorCalibration(mode, seed=seed)


def generate_instances(cfg, out_dir):
    """Write scene/roadmap/truth files and the instances.txt manifest.

    Returns the list of instance ids. Queries that cannot be embedded in a
    sampled roadmap are skipped.
    """
    os.makedirs(out_dir, exist_ok=True)
    manifest = []
    for scene_name in cfg["scene"]:
        for n_vertices, n_edges in _sizes(cfg):
            for seed in cfg["seeds"]:
                base = bundled_scene(scene_name, infeasible=False)
                rm_base = _build_roadmap(cfg, base, n_vertices, n_edges, seed)
                oracle = SceneOracle(base)
                try:
                    attach_query(rm_base, base.start, base.goal, oracle)
                except QueryNotEmbeddable:
                    continue
                for fcls in cfg["feasibility"]:
                    scene = bundled_scene(scene_name, infeasible=(fcls == "infeasible"))
                    for mode in cfg["prior.mode"]:
                        inst = f"{scene_name}-{rm_base.n_edges}-{mode}-{fcls}-{seed}"
                        rm = rm_base.copy()
                        truth = label_and_calibrate(
                            rm, scene, _calibration(cfg, mode, seed)
                        )
                        scene_file = f"{inst}.scene"
                        rm_file = f"{inst}.roadmap"
                        truth_file = f"{inst}.truth"
                        save_scene(scene, os.path.join(out_dir, scene_file))
                        save_roadmap(rm, os.path.join(out_dir, rm_file))
                        save_truth(os.path.join(out_dir, truth_file), rm, truth)
                        manifest.append(
                            f"{inst} {scene_file} {rm_file} {truth_file} "
                            f"{rm.v_s} {rm.v_g} {seed} {mode}"
                        )
    with open(os.path.join(out_dir, "instances.txt"), "w") as fh:
        for line in manifest:
            fh.write(line + "\n")
    return [line.split()[0] for line in manifest]


def load_instances(in_dir):
    """Read the manifest; yields (id, roadmap, truth, seed, prior_mode)."""
    manifest_path = os.path.join(in_dir, "instances.txt")
    if not os.path.exists(manifest_path):
        raise FileNotFoundError(manifest_path)
    out = []
    with open(manifest_path) as fh:
        for line in fh:
            if not line.strip():
                continue
            inst, _scene_f, rm_f, truth_f, v_s, v_g, seed, mode = line.split()
            rm_path = os.path.join(in_dir, rm_f)
            truth_path = os.path.join(in_dir, truth_f)
            if not os.path.exists(rm_path) or not os.path.exists(truth_path):
                raise FileNotFoundError(rm_path)
            rm = load_roadmap(rm_path)
            rm.v_s, rm.v_g = int(v_s), int(v_g)
            t_edges, t_free, _ = load_truth(truth_path)
            truth = {}
            for (u, v), free in zip(t_edges, t_free):
                truth[rm.edge_index[(u, v) if u < v else (v, u)]] = free
            out.append((inst, rm, truth, int(seed), mode))
    return out


def run_instance(algorithm, roadmap, truth, paths_per_iteration=1):
    """Run one algorithm on one instance against a table oracle."""
    runner = ALGORITHMS[algorithm]
    rm = roadmap.copy()
    oracle = TableOracle(truth)
    if algorithm in ("ipc", "idpc"):
        verdict = runner(rm, oracle, paths_per_iteration=paths_per_iteration)
    else:
        verdict = runner(rm, oracle)
    correct, cert_ok = validate_verdict(rm, truth, verdict)
    return verdict, correct, cert_ok, rm


def run_bench(cfg, in_dir):
    """Produce BenchRecord rows for every (algorithm, instance) pair.

    Aborts with AnalysisError on any incorrect verdict or invalid
    certificate — a completeness regression, never expected.
    """
    records = []
    instances = load_instances(in_dir)
    for inst, rm, truth, seed, mode in instances:
        gt = ground_truth_feasible(rm, truth)
        for name in cfg["algorithm.names"]:
            verdict, correct, cert_ok, _ = run_instance(
                name, rm, truth, cfg["algorithm.paths_per_iteration"]
            )
            if not correct or not cert_ok:
                raise AnalysisError(
                    f"{name} mis-verdicted instance {inst} "
                    f"(correct={correct}, certificate_ok={cert_ok})"
                )
            records.append(
                BenchRecord(
                    algorithm=name,
                    scene=inst.split("-")[0],
                    instance_id=inst,
                    seed=seed,
                    n_vertices=rm.n_vertices,
                    n_edges=rm.n_edges,
                    prior_mode=mode,
                    ground_truth_feasible=gt,
                    verdict="FEASIBLE" if verdict.feasible else "INFEASIBLE",
                    correct=correct,
                    n_evaluations=verdict.stats.n_evaluations,
                    n_iterations=verdict.stats.n_iterations,
                    n_path_calls=verdict.stats.n_path_calls,
                    n_cut_calls=verdict.stats.n_cut_calls,
                    max_cut_input_vertices=verdict.stats.max_cut_input_vertices,
                    wall_time_us=verdict.stats.wall_time_us,
                )
            )
    return records


def write_csv(records, stream):
    stream.write(CSV_VERSION + "\n")
    writer = csv.writer(stream)
    writer.writerow(RECORD_FIELDS)
    for r in records:
        writer.writerow([getattr(r, f) for f in RECORD_FIELDS])


def read_csv(stream):
    first = stream.readline()
    if not first.startswith("# pathcut-bench-csv"):
        raise AnalysisError("not a pathcut benchmark CSV")
    reader = csv.DictReader(stream)
    rows = []
    for row in reader:
        row["n_evaluations"] = int(row["n_evaluations"])
        row["wall_time_us"] = float(row["wall_time_us"])
        row["ground_truth_feasible"] = row["ground_truth_feasible"] == "True"
        rows.append(row)
    return rows


def mean_ci(values, confidence=0.95):
    """Sample mean and Student-t confidence half-width (n-1 dof)."""
    n = len(values)
    mean = statistics.fmean(values)
    if n < 2:
        return mean, float("inf")
    sd = statistics.stdev(values)
    tcrit = scipy_stats.t.ppf(0.5 + confidence / 2.0, n - 1)
    return mean, tcrit * sd / n**0.5


def compare(rows, baseline):
    """Paired metric differences (algorithm - baseline) per group.

    Groups are (scene, n_edges, feasibility class); metrics n_evaluations
    and wall_time_us. Returns a list of summary dicts.
    """
    algorithms = sorted({r["algorithm"] for r in rows})
    if baseline not in algorithms:
        raise AnalysisError(f"baseline algorithm {baseline!r} absent from CSV")
    by_key = {}
    for r in rows:
        by_key[(r["instance_id"], r["algorithm"])] = r
    instances = sorted({r["instance_id"] for r in rows})
    groups = {}
    for inst in instances:
        base_row = by_key.get((inst, baseline))
        if base_row is None:
            continue
        gkey = (
            base_row["scene"],
            base_row["n_edges"],
            "feasible" if base_row["ground_truth_feasible"] else "infeasible",
        )
        groups.setdefault(gkey, []).append(inst)
    out = []
    for gkey in sorted(groups):
        for alg in algorithms:
            if alg == baseline:
                continue
            diffs_eval = []
            diffs_time = []
            for inst in groups[gkey]:
                row = by_key.get((inst, alg))
                if row is None:
                    continue
                base_row = by_key[(inst, baseline)]
                diffs_eval.append(row["n_evaluations"] - base_row["n_evaluations"])
                diffs_time.append(row["wall_time_us"] - base_row["wall_time_us"])
            if not diffs_eval:
                continue
            ev_mean, ev_hw = mean_ci(diffs_eval)
            t_mean, t_hw = mean_ci(diffs_time)
            out.append(
                {
                    "scene": gkey[0],
                    "n_edges": gkey[1],
                    "class": gkey[2],
                    "algorithm": alg,
                    "baseline": baseline,
                    "n": len(diffs_eval),
                    "d_evaluations_mean": ev_mean,
                    "d_evaluations_ci95": ev_hw,
                    "d_wall_time_us_mean": t_mean,
                    "d_wall_time_us_ci95": t_hw,
                }
            )
    return out


def format_compare(summaries):
    buf = io.StringIO()
    header = (
        f"{'scene':<10} {'edges':>6} {'class':<10} {'algorithm':<10} {'n':>4} "
        f"{'d_evals':>10} {'ci95':>8} {'d_time_us':>12} {'ci95':>10}"
    )
    buf.write(header + "\n")
    for s in summaries:
        buf.write(
            f"{s['scene']:<10} {s['n_edges']:>6} {s['class']:<10} "
            f"{s['algorithm']:<10} {s['n']:>4} "
            f"{s['d_evaluations_mean']:>10.2f} {s['d_evaluations_ci95']:>8.2f} "
            f"{s['d_wall_time_us_mean']:>12.1f} {s['d_wall_time_us_ci95']:>10.1f}\n"
        )
    return buf.getvalue()
