"""Scripted experiment runs emitting CSV tables and a JSON manifest.

Four runs are provided:

ratio-curve
    The two-point worked example: diagrams B and B' differ by a death shift
    of eps across the bin boundary at 0.5; the table holds the ratio of the
    sup-norm change in the Gaussian-stabilized vector to the 1-Wasserstein
    distance eps.  The ratio approaches exp(-5/16) / (2 pi) as eps -> 0.

theorem-2-5-demo
    The instability witness: one diagram point per bin triangle, one death
    shifted by eps across its bin boundary.  The interval Betti vectors
    then differ by exactly 1 in sup norm while the diagrams are eps apart,
    so the ratio 1/eps is unbounded.

instability-sweep
    The exact 15x15 lattice on [0, 0.7(1+eps)]^2 and a uniform cloud on
    [0, 1+eps]^2, swept over small eps.  Records the first entry of the
    normalized cumulative H1 vector for the interval variant and for the
    extended (new) variant.

batch
    100 seeded samples per generator on [0,1]^2; writes interval and
    extended normalized-cumulative H1 vectors per sample.

Every run is a pure function of its configuration and seed; re-runs produce
byte-identical CSVs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .diagram import FiltrationGrid, truncate_essential
from .filtration import build_rips
from .homology import PersistenceDiagram, PersistencePair, persistence_h1
from .metrics import sup_distance, wasserstein
from .pointcloud import (
    PointCloud,
    distances_from_points,
    enclosing_radius,
    gen_perturbed_lattice,
    gen_sierpinski,
    gen_uniform,
    gen_uniform_with_hole,
)
from .rng import Xoshiro256StarStar
from .vectorize import (
    BettiVector,
    betti_interval,
    betti_new,
    normalized_cumulative,
    stable_betti,
)

BATCH_GENERATORS = ("perturbed_lattice", "uniform", "sierpinski", "uniform_with_hole")


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    grid: FiltrationGrid = FiltrationGrid(1.0, 20)
    dims: tuple[int, ...] = (1,)
    n_samples: int = 100
    seed: int = 0
    epsilon_range: tuple[float, float] = (-1e-8, 1e-8)
    epsilon_count: int = 100
    n_points: int = 225
    lattice_side: int = 15
    lattice_scale: float = 0.7
    hole: tuple[float, float] = (0.15, 0.85)

    def __post_init__(self):
        if self.epsilon_count < 1:
            raise ValueError("epsilon_count must be at least 1")


def h1_diagram(points: np.ndarray, tau_max: float) -> PersistenceDiagram:
    """Full H1 pipeline for a coordinate array, truncated at tau_max.

    The Rips threshold is capped at the enclosing radius: past it the
    complex is a cone, so no bar is born or survives there and the diagram
    is unchanged.
    """
    dm = distances_from_points(points)
    threshold = min(tau_max, enclosing_radius(dm))
    fc = build_rips(dm, threshold, max_dim=2)
    return truncate_essential(persistence_h1(fc), tau_max)


def _two_point_diagrams(eps: float) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    b = PersistenceDiagram(
        1,
        (
            PersistencePair(0.25, 0.5 - eps / 2.0, 1),
            PersistencePair(0.75, 0.8, 1),
        ),
    )
    b_prime = PersistenceDiagram(
        1,
        (
            PersistencePair(0.25, 0.5 + eps / 2.0, 1),
            PersistencePair(0.75, 0.8, 1),
        ),
    )
    return b, b_prime


def run_ratio_curve(
    eps_lo: float = 1e-6, eps_hi: float = 1.0, n: int = 10_000
) -> np.ndarray:
    """Table (eps, ratio) over a log-spaced eps grid.

    ratio = ||stable(B) - stable(B')||_inf / eps, with the diagrams exactly
    eps apart in 1-Wasserstein distance.  The lower bound keeps the
    floating-point cancellation in the vector difference well below the
    curve's 1e-9 reproduction tolerance.
    """
    if not 0 < eps_lo < eps_hi:
        raise ValueError("need 0 < eps_lo < eps_hi")
    grid = FiltrationGrid(1.0, 2)
    eps_values = np.logspace(math.log10(eps_lo), math.log10(eps_hi), n)
    out = np.empty((n, 2))
    for k, eps in enumerate(eps_values):
        b, b_prime = _two_point_diagrams(eps)
        delta = sup_distance(stable_betti(b, grid), stable_betti(b_prime, grid))
        out[k, 0] = eps
        out[k, 1] = delta / eps
    return out


def _exact_shift(base: float, eps: float) -> tuple[float, float]:
    """(d, d + eps) with the addition floating-point exact, d near base.

    Nudges the shifted endpoint onto the representable grid so the realized
    l-inf perturbation equals the difference of the two stored doubles.
    """
    d = float(base)
    d_shifted = d + eps
    d = d_shifted - eps
    return d, d_shifted


def run_theorem_2_5_demo(eps: float, n_bins: int = 4) -> dict:
    """Instability witness per the proof construction.

    Builds diagrams with one point inside each bin triangle; the death in
    bin j = n_bins - 1 sits eps/2 below the boundary and is shifted up by
    eps.  Reports the sup distance of the interval vectors (exactly 1), the
    1-Wasserstein distance (the realized shift), and their ratio.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n_bins < 2:
        raise ValueError("need at least two bins")
    grid = FiltrationGrid(1.0, n_bins)
    taus = grid.endpoints
    dt = grid.delta_tau
    if eps >= dt / 4.0:
        raise ValueError("eps must be small relative to the bin width")
    j = n_bins - 1

    pairs = []
    pairs_shifted = []
    w1_expected = eps
    for i in range(1, n_bins + 1):
        bb = taus[i - 1] + 0.25 * dt
        if i == j:
            d, d_shifted = _exact_shift(taus[i] - eps / 2.0, eps)
            w1_expected = d_shifted - d
            pairs.append(PersistencePair(bb, d, 1))
            pairs_shifted.append(PersistencePair(bb, d_shifted, 1))
        else:
            dd = taus[i - 1] + 0.75 * dt
            pairs.append(PersistencePair(bb, dd, 1))
            pairs_shifted.append(PersistencePair(bb, dd, 1))
    b = PersistenceDiagram(1, tuple(pairs))
    b_prime = PersistenceDiagram(1, tuple(pairs_shifted))

    sup = sup_distance(betti_interval(b, grid), betti_interval(b_prime, grid))
    w1 = wasserstein(b, b_prime, p=1.0)
    return {
        "eps": eps,
        "w1_expected": w1_expected,
        "sup_dist": sup,
        "w1": w1,
        "ratio": sup / w1,
        "diagrams": (b, b_prime),
    }


def _first_entries(pd: PersistenceDiagram, grid: FiltrationGrid) -> tuple[float, float]:
    v_orig = normalized_cumulative(betti_interval(pd, grid)).values[0]
    v_new = normalized_cumulative(betti_new(pd, grid)).values[0]
    return float(v_orig), float(v_new)


def run_instability_sweep(cfg: ExperimentConfig) -> dict[str, np.ndarray]:
    """Tables (eps, v1_original, v1_stable) for the lattice and uniform clouds."""
    lo, hi = cfg.epsilon_range
    eps_values = np.linspace(lo, hi, cfg.epsilon_count)
    tables = {
        "perturbed_lattice": np.empty((cfg.epsilon_count, 3)),
        "uniform": np.empty((cfg.epsilon_count, 3)),
    }
    tau_max = cfg.grid.tau_max
    for k, eps in enumerate(eps_values):
        lattice = gen_perturbed_lattice(
            cfg.lattice_side, cfg.lattice_scale, eps, cfg.seed, perturb=0.0
        )
        pd = h1_diagram(lattice.points, tau_max)
        tables["perturbed_lattice"][k] = (eps, *_first_entries(pd, cfg.grid))

        uniform = gen_uniform(cfg.n_points, 1.0 + eps, cfg.seed)
        pd = h1_diagram(uniform.points, tau_max)
        tables["uniform"][k] = (eps, *_first_entries(pd, cfg.grid))
    return tables


def _sample_seed(base: int, index: int) -> int:
    # Derive per-sample seeds from one stream so samples are independent
    # of each other and of evaluation order.
    rng = Xoshiro256StarStar(base)
    seed = 0
    for _ in range(index + 1):
        seed = rng.next_u64()
    return seed


def _batch_cloud(kind: str, cfg: ExperimentConfig, seed: int) -> PointCloud:
    if kind == "perturbed_lattice":
        return gen_perturbed_lattice(
            cfg.lattice_side, 1.0, 0.0, seed, perturb=cfg.grid.delta_tau
        )
    if kind == "uniform":
        return gen_uniform(cfg.n_points, 1.0, seed)
    if kind == "sierpinski":
        return gen_sierpinski(cfg.n_points, seed)
    if kind == "uniform_with_hole":
        return gen_uniform_with_hole(cfg.n_points, *cfg.hole, seed)
    raise ValueError(f"unknown generator {kind!r}")


def run_batch(cfg: ExperimentConfig) -> dict[str, dict]:
    """Per generator: interval and extended normalized-cumulative vectors
    for n_samples seeded clouds, plus the per-sample seeds."""
    out: dict[str, dict] = {}
    n_bins = cfg.grid.n_bins
    for kind in BATCH_GENERATORS:
        original = np.empty((cfg.n_samples, n_bins))
        stable = np.empty((cfg.n_samples, n_bins))
        seeds = []
        for s in range(cfg.n_samples):
            seed = _sample_seed(cfg.seed, s)
            cloud = _batch_cloud(kind, cfg, seed)
            pd = h1_diagram(cloud.points, cfg.grid.tau_max)
            original[s] = normalized_cumulative(betti_interval(pd, cfg.grid)).values
            stable[s] = normalized_cumulative(betti_new(pd, cfg.grid)).values
            seeds.append(seed)
        out[kind] = {"original": original, "stable": stable, "seeds": seeds}
    return out


def mean_entrywise_std(vectors: np.ndarray) -> float:
    """Dispersion statistic for a (samples, bins) block of vectors."""
    return float(np.mean(np.std(vectors, axis=0)))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_table_csv(path, header: list[str], rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(float(x)) for x in row) + "\n")


def write_manifest(path, cfg_dict: dict) -> None:
    record = {"version": __version__, **cfg_dict}
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_config(path, name: str = "experiment") -> ExperimentConfig:
    """Flat key-value config (`key = value` per line, `#` comments)."""
    raw: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            raw[key] = value
    kwargs: dict = {"name": name}
    if "tau_max" in raw or "n_bins" in raw:
        kwargs["grid"] = FiltrationGrid(
            float(raw.get("tau_max", 1.0)), int(raw.get("n_bins", 20))
        )
    for key, conv in (
        ("n_samples", int),
        ("seed", int),
        ("epsilon_count", int),
        ("n_points", int),
        ("lattice_side", int),
        ("lattice_scale", float),
    ):
        if key in raw:
            kwargs[key] = conv(raw[key])
    if "epsilon_lo" in raw or "epsilon_hi" in raw:
        kwargs["epsilon_range"] = (
            float(raw.get("epsilon_lo", -1e-8)),
            float(raw.get("epsilon_hi", 1e-8)),
        )
    if "hole_lo" in raw or "hole_hi" in raw:
        kwargs["hole"] = (float(raw.get("hole_lo", 0.15)), float(raw.get("hole_hi", 0.85)))
    if "dims" in raw:
        kwargs["dims"] = tuple(int(t) for t in raw["dims"].split(","))
    return ExperimentConfig(**kwargs)


def write_sweep_outputs(tables: dict[str, np.ndarray], cfg: ExperimentConfig, outdir) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for kind, table in tables.items():
        path = outdir / f"instability_sweep_{kind}.csv"
        write_table_csv(path, ["epsilon", "v1_original", "v1_stable"], table)
        paths.append(path)
    manifest = outdir / "manifest.json"
    write_manifest(
        manifest,
        {
            "experiment": "instability-sweep",
            "seed": cfg.seed,
            "epsilon_range": list(cfg.epsilon_range),
            "epsilon_count": cfg.epsilon_count,
            "tau_max": cfg.grid.tau_max,
            "n_bins": cfg.grid.n_bins,
            "n_points": cfg.n_points,
        },
    )
    paths.append(manifest)
    return paths


def write_batch_outputs(results: dict[str, dict], cfg: ExperimentConfig, outdir) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    n_bins = cfg.grid.n_bins
    header = ["variant", "dim", "seed"] + [f"v{i+1}" for i in range(n_bins)]
    for kind, block in results.items():
        path = outdir / f"batch_{kind}.csv"
        with open(path, "w") as fh:
            fh.write(",".join(header) + "\n")
            for variant_key, variant_name in (
                ("original", "interval"),
                ("stable", "new_extended"),
            ):
                for seed, row in zip(block["seeds"], block[variant_key]):
                    body = ",".join(_fmt(float(x)) for x in row)
                    fh.write(f"{variant_name},1,{seed},{body}\n")
        paths.append(path)
    manifest = outdir / "manifest.json"
    write_manifest(
        manifest,
        {
            "experiment": "batch",
            "seed": cfg.seed,
            "n_samples": cfg.n_samples,
            "tau_max": cfg.grid.tau_max,
            "n_bins": cfg.grid.n_bins,
            "n_points": cfg.n_points,
            "generators": list(BATCH_GENERATORS),
        },
    )
    paths.append(manifest)
    return paths
