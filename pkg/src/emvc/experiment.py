"""Experiment orchestration: repetitions, methods, error injection, reports."""

import configparser
import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import baselines
from .data import (inject_gaussian_noise, inject_sample_corruption,
                   load_views, synthetic_two_view)
from .exceptions import ConfigError
from .graph import SIGMA_MODES, view_transitions
from .kmeans import KMeansConfig
from .markov_spectral import cluster_markov
from .metrics import ClusteringResult, MetricsReport
from .solver import EmvcConfig, solve

logger = logging.getLogger(__name__)

METRICS = [f.name for f in fields(MetricsReport)]

# ablations drop one or both error penalties
EMVC_VARIANTS = {
    "emvc": {},
    "emvc_nuclear": {"lam": 0.0, "beta": 0.0},
    "emvc_g1": {"beta": 0.0},
    "emvc_l21": {"lam": 0.0},
}
METHODS = (*EMVC_VARIANTS, "bsv", "feat_concat", "kernel_addition")

# offsets keep the per-repetition RNG streams apart
_NOISE_STREAM = 1_000_003
_CORRUPT_STREAM = 2_000_003


@dataclass
class ExperimentConfig:
    dataset: list = field(default_factory=list)
    labels: str = None
    synthetic: int = None
    methods: list = field(default_factory=lambda: ["emvc"])
    clusters: int = 2
    emvc: EmvcConfig = field(default_factory=EmvcConfig)
    kmeans: KMeansConfig = field(default_factory=KMeansConfig)
    sigma_mode: str = "median_squared"
    snr: float = None
    corrupt_fraction: float = None
    reps: int = 1
    seed: int = 0
    out: str = "report"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        if self.clusters < 2:
            raise ConfigError("clusters must be >= 2")
        if bool(self.dataset) == (self.synthetic is not None):
            raise ConfigError("give exactly one of dataset files or synthetic")
        if self.synthetic is not None and self.synthetic < 1:
            raise ConfigError("synthetic must be >= 1 samples per cluster")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ConfigError(f"unknown methods {unknown}; choose from "
                              f"{', '.join(METHODS)}")
        if self.sigma_mode not in SIGMA_MODES:
            raise ConfigError(f"sigma_mode must be one of {SIGMA_MODES}")
        if self.snr is not None and self.corrupt_fraction is not None:
            raise ConfigError("choose at most one of snr and corrupt_fraction")
        if self.snr is not None and not self.snr > 0:
            raise ConfigError("snr must be positive")
        if self.corrupt_fraction is not None and not 0 < self.corrupt_fraction < 1:
            raise ConfigError("corrupt_fraction must lie in (0, 1)")

    def to_dict(self):
        d = asdict(self)
        d["dataset"] = [str(p) for p in self.dataset]
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["emvc"] = EmvcConfig(**d.get("emvc", {}))
        d["kmeans"] = KMeansConfig(**d.get("kmeans", {}))
        return cls(**d)


# (section, key) -> (field path, parser)
def _floats(s):
    return [float(v) for v in s.replace(",", " ").split()]


def _names(s):
    return [v for v in s.replace(",", " ").split() if v]


def _optional(parse):
    return lambda s: None if s.strip().lower() in ("", "none") else parse(s)


_CONFIG_KEYS = {
    ("dataset", "files"): ("dataset", _names),
    ("dataset", "labels"): ("labels", _optional(str)),
    ("dataset", "synthetic"): ("synthetic", _optional(int)),
    ("dataset", "sigma_mode"): ("sigma_mode", str),
    ("experiment", "methods"): ("methods", _names),
    ("experiment", "clusters"): ("clusters", int),
    ("experiment", "reps"): ("reps", int),
    ("experiment", "seed"): ("seed", int),
    ("experiment", "out"): ("out", str),
    ("errors", "snr"): ("snr", _optional(float)),
    ("errors", "corrupt_fraction"): ("corrupt_fraction", _optional(float)),
}
_EMVC_KEYS = {f.name: f.type for f in fields(EmvcConfig)}
_KMEANS_KEYS = {f.name: f.type for f in fields(KMeansConfig)}
_TYPES = {"float": float, "int": int, float: float, int: int}


def read_config_file(path):
    """Parse an INI-style experiment file into a flat dict of overrides.

    Sections are ``[dataset]``, ``[experiment]``, ``[errors]``, ``[emvc]``
    and ``[kmeans]``. Errors name the section and key at fault.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    values = {"emvc": {}, "kmeans": {}}
    for section in parser.sections():
        for key, raw in parser.items(section):
            where = f"{path}: [{section}] {key}"
            try:
                if section in ("emvc", "kmeans"):
                    table = _EMVC_KEYS if section == "emvc" else _KMEANS_KEYS
                    if key not in table:
                        raise KeyError(key)
                    values[section][key] = _TYPES[table[key]](raw)
                else:
                    name, parse = _CONFIG_KEYS[(section, key)]
                    values[name] = parse(raw)
            except KeyError:
                raise ConfigError(f"{where}: unknown field") from None
            except ValueError as exc:
                raise ConfigError(f"{where}: {exc}") from None
    return values


def build_config(file_values=None, **overrides):
    """Merge defaults, config-file values and explicit overrides (in that
    order of increasing priority)."""
    merged = {"emvc": {}, "kmeans": {}}
    for source in (file_values or {}, overrides):
        for key, value in source.items():
            if value is None:
                continue
            if key in ("emvc", "kmeans"):
                merged[key].update({k: v for k, v in value.items()
                                    if v is not None})
            else:
                merged[key] = value
    try:
        return ExperimentConfig.from_dict(merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def prepare_dataset(cfg, rep_seed):
    if cfg.synthetic is not None:
        ds = synthetic_two_view(cfg.synthetic, seed=rep_seed)
    else:
        ds = load_views(cfg.dataset, cfg.labels)
    corrupted = None
    if cfg.snr is not None:
        ds = inject_gaussian_noise(ds, cfg.snr, seed=rep_seed + _NOISE_STREAM)
    if cfg.corrupt_fraction is not None:
        ds, corrupted = inject_sample_corruption(
            ds, cfg.corrupt_fraction, seed=rep_seed + _CORRUPT_STREAM)
    return ds, corrupted


def run_method(method, ds, cfg, rep_seed, transitions=None):
    """Run one method on one dataset; returns ``(result, info)``."""
    kcfg = cfg.kmeans.replace(k=cfg.clusters, seed=rep_seed)
    if method == "bsv":
        result, chosen = baselines.best_single_view(ds, cfg.clusters, kcfg)
        return result, {"chosen_view": chosen}
    if method == "feat_concat":
        return baselines.feature_concat(ds, cfg.clusters, kcfg), {}
    if method == "kernel_addition":
        return baselines.kernel_addition(ds, cfg.clusters, kcfg,
                                         cfg.sigma_mode), {}
    ecfg = cfg.emvc.replace(seed=rep_seed, **EMVC_VARIANTS[method])
    if transitions is None:
        transitions = view_transitions(ds.views, cfg.sigma_mode)
    state = solve(transitions, ecfg, track_objective=False)
    labels = cluster_markov(state.p_hat, cfg.clusters, kcfg)
    info = {"iterations": state.iter, "converged": state.converged}
    return ClusteringResult.scored(labels, ds.labels), info


def run_repetitions(cfg):
    """Per-repetition records, ordered by repetition then method."""
    records = []
    for rep in range(cfg.reps):
        rep_seed = cfg.seed + rep
        ds, _ = prepare_dataset(cfg, rep_seed)
        transitions = None
        if any(m in EMVC_VARIANTS for m in cfg.methods):
            transitions = view_transitions(ds.views, cfg.sigma_mode)
        for method in cfg.methods:
            record = {"method": method, "rep": rep, "seed": rep_seed}
            try:
                result, info = run_method(method, ds, cfg, rep_seed,
                                          transitions)
            except Exception as exc:  # recorded, other methods keep running
                logger.exception("method %s failed on repetition %d",
                                 method, rep)
                record.update(status="error",
                              error=f"{type(exc).__name__}: {exc}")
            else:
                record["status"] = "ok"
                record.update(info)
                if result.metrics is not None:
                    record.update(result.metrics.as_dict())
            records.append(record)
    return records


def summarize(records, methods):
    """Mean and population standard deviation of every metric per method."""
    rows = []
    for method in methods:
        ok = [r for r in records if r["method"] == method
              and r["status"] == "ok" and "accuracy" in r]
        failed = sum(1 for r in records if r["method"] == method
                     and r["status"] != "ok")
        row = {"method": method, "runs": len(ok), "failed": failed}
        for m in METRICS:
            vals = np.array([r[m] for r in ok], dtype=float)
            row[f"{m}_mean"] = float(vals.mean()) if vals.size else math.nan
            row[f"{m}_std"] = float(vals.std()) if vals.size else math.nan
        rows.append(row)
    return rows


def format_table(summary):
    """Method-by-metric table with ``mean(std)`` cells."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["method", *METRICS])
    for row in summary:
        writer.writerow([row["method"], *(
            f"{row[m + '_mean']:.3f}({row[m + '_std']:.3f})" for m in METRICS)])
    return buf.getvalue()


def _records_csv(records):
    columns = ["method", "rep", "seed", "status", *METRICS,
               "iterations", "converged", "chosen_view", "error"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, columns, lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for r in records:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v)
                         for k, v in r.items()})
    return buf.getvalue()


def run_experiment(cfg, write=True):
    """Run every method for every repetition and write the report.

    Writes ``summary.csv`` (mean(std) per method and metric),
    ``records.csv`` (one row per repetition and method) and
    ``report.json`` (config echo, records and summary) into ``cfg.out``.

    Returns
    -------
    dict
        The JSON report.
    """
    records = run_repetitions(cfg)
    summary = summarize(records, cfg.methods)
    report = {
        "config": cfg.to_dict(),
        "status": "ok" if all(r["status"] == "ok" for r in records) else "error",
        "summary": summary,
        "records": records,
    }
    if write:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.csv").write_text(format_table(summary))
        (out / "records.csv").write_text(_records_csv(records))
        (out / "report.json").write_text(dumps(report))
    return report


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def sweep(cfg, lambda_grid, beta_grid, write=True):
    """EMVC accuracy over a (lambda, beta) grid.

    Rows are ordered by lambda, then beta, in the order given.
    """
    if not lambda_grid or not beta_grid:
        raise ConfigError("lambda and beta grids must be non-empty")
    rows = []
    status = "ok"
    for lam in lambda_grid:
        for beta in beta_grid:
            sub = replace(cfg, methods=["emvc"],
                          emvc=cfg.emvc.replace(lam=lam, beta=beta))
            report = run_experiment(sub, write=False)
            s = report["summary"][0]
            status = "ok" if report["status"] == "ok" and status == "ok" else "error"
            rows.append({"lambda": lam, "beta": beta, "runs": s["runs"],
                         "accuracy_mean": s["accuracy_mean"],
                         "accuracy_std": s["accuracy_std"],
                         "nmi_mean": s["nmi_mean"],
                         "nmi_std": s["nmi_std"]})
    grid = {"config": cfg.to_dict(), "lambda_grid": list(lambda_grid),
            "beta_grid": list(beta_grid), "status": status, "rows": rows}
    if write:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: repr(v) for k, v in r.items()})
        (out / "sweep.csv").write_text(buf.getvalue())
        (out / "sweep.json").write_text(dumps(grid))
    return grid
