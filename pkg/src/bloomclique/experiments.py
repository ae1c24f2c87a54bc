"""Monte Carlo harnesses for the empirical claims.

Reproducibility contract: trial t of a run with master seed s draws all
its randomness from numpy's PCG64 seeded with SeedSequence((s, t)).  That
generator is stable across platforms and numpy releases, so a (master
seed, trial count) pair pins every report byte for byte.

Reports are CSV: a header row, one row per trial, and a final summary row
whose first field is "summary" and whose remaining fields are the column
means.  Richer aggregates (expectations, bounds, thresholds) live in the
report's summary mapping and are printed by the CLI.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GuardExceeded, OutOfRange, UnqueryableVariant
from .extract import RandomString, required_bits
from .owf import (
    array_densities,
    clique_edges,
    edge_query_batch,
    generate,
)
from .oracle import (
    PREIMAGE_GUARD_COMB,
    pair_codes,
    planted_gnp,
    preimages,
    spurious_cliques,
)
from .analysis import spurious_sum
from .params import derive_params


def rng_for_trial(master_seed: int, trial_index: int) -> np.random.Generator:
    """The one blessed per-trial stream; see the module docstring."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((master_seed, trial_index)))
    )


def random_string_for(rng: np.random.Generator, params, variant: str,
                      kind: str) -> RandomString:
    nbits = required_bits(params, variant, kind)
    return RandomString.from_bytes(rng.bytes((nbits + 7) // 8))


@dataclass
class TrialReport:
    experiment: str
    params: dict
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        j = self.columns.index(name)
        return [r[j] for r in self.rows]

    def write_csv(self, f) -> None:
        w = csv.writer(f)
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(r)
        means: list = ["summary"]
        for j in range(1, len(self.columns)):
            vals = [r[j] for r in self.rows]
            means.append(sum(vals) / len(vals) if vals else "")
        w.writerow(means)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            self.write_csv(f)


def univalence_trials(n: int, variant: str, kind: str, trials: int,
                      master_seed: int, *,
                      guard_comb: int = PREIMAGE_GUARD_COMB) -> TrialReport:
    """Exhaustive preimage census per generated instance.

    Each trial generates one instance from fresh bits and counts every
    vertex set that reproduces it exactly.  The summary compares the
    multi-preimage rate against the union bound taken at the largest
    array density any trial realized.
    """
    ps = derive_params(n)
    rep = TrialReport(
        "univalence",
        {"n": n, "variant": variant, "kind": kind, "trials": trials,
         "master_seed": master_seed},
        ("trial_index", "preimage_count", "max_density"),
    )
    worst = Fraction(0)
    multi_pre = 0
    for t in range(trials):
        rng = rng_for_trial(master_seed, t)
        rs = random_string_for(rng, ps, variant, kind)
        gen = generate(rs, n, variant, kind)
        pres = preimages(gen.instance, guard_comb=guard_comb)
        if gen.seed.vertices not in pres:
            raise AssertionError("generator's own clique missing from census")
        dens = max(array_densities(gen.instance))
        worst = max(worst, dens)
        if len(pres) > 1:
            multi_pre += 1
        rep.rows.append((t, len(pres), float(dens)))
    rate = multi_pre / trials if trials else 0.0
    bound = spurious_sum(ps.c, worst) if worst > 0 else None
    bound_p = min(1.0, bound.probability()) if bound else 0.0
    sigma = math.sqrt(bound_p * (1 - bound_p) / trials) if trials else 0.0
    rep.summary = {
        "trials": trials,
        "multi_preimage_rate": rate,
        "max_density": float(worst),
        "union_bound": bound_p,
        "threshold_3sigma": bound_p + 3 * sigma,
    }
    return rep


def gnp_spurious_trials(n: int, alpha: float, trials: int, master_seed: int,
                        *, guard_n: int = 64) -> TrialReport:
    """Spurious cliques in true random graphs with a planted clique.

    Each trial samples independent edges at density alpha, plants a
    c-clique, and counts other c-cliques by explicit enumeration.  The
    empirical any-spurious rate is compared against the union bound.
    """
    if n > guard_n:
        raise GuardExceeded(f"n={n} exceeds enumeration guard {guard_n}")
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRange(f"alpha={alpha} outside [0, 1]")
    ps = derive_params(n)
    rep = TrialReport(
        "gnp",
        {"n": n, "alpha": alpha, "trials": trials, "master_seed": master_seed},
        ("trial_index", "spurious_count", "any_spurious"),
    )
    hits = 0
    for t in range(trials):
        rng = rng_for_trial(master_seed, t)
        g, planted = planted_gnp(n, ps.c, alpha, rng)
        cnt = spurious_cliques(g, ps.c, planted)
        hits += 1 if cnt else 0
        rep.rows.append((t, cnt, 1 if cnt else 0))
    rate = hits / trials if trials else 0.0
    if 0.0 < alpha < 1.0:
        bound_p = min(1.0, spurious_sum(ps.c, Fraction(alpha), n=n).probability())
    else:
        bound_p = 0.0 if alpha == 0.0 else 1.0
    sigma = math.sqrt(bound_p * (1 - bound_p) / trials) if trials else 0.0
    rep.summary = {
        "trials": trials,
        "spurious_rate": rate,
        "union_bound": bound_p,
        "threshold_3sigma": bound_p + 3 * sigma,
    }
    return rep


def attack_simulation(n: int, variant: str, kind: str, trials: int,
                      master_seed: int, *,
                      strategy: str = "uniform") -> TrialReport:
    """Edge-probing inversion: query random pairs until a clique edge shows.

    Each trial generates an instance, then walks a fresh uniform random
    permutation of all C(n,2) pairs, querying the implicit graph as it
    goes.  Recorded per trial: the 1-based position of the first true
    clique edge, the false positives seen before it, and the position by
    which every clique edge has been probed.  Drawing without replacement
    makes the first-hit expectation (N+1)/(K+1) for K clique edges among
    N pairs; the summary reports it next to the measured mean.
    """
    if strategy != "uniform":
        raise OutOfRange(f"unknown strategy {strategy!r}")
    if variant == "masked":
        raise UnqueryableVariant("masked instances cannot be probed edge by edge")
    ps = derive_params(n)
    codes = pair_codes(n)
    N = codes.shape[0]
    K = ps.ec
    rep = TrialReport(
        "attack",
        {"n": n, "variant": variant, "kind": kind, "trials": trials,
         "master_seed": master_seed, "strategy": strategy},
        ("trial_index", "first_hit", "false_positives", "cover_all"),
    )
    for t in range(trials):
        rng = rng_for_trial(master_seed, t)
        rs = random_string_for(rng, ps, variant, kind)
        gen = generate(rs, n, variant, kind)
        clique_rows = np.searchsorted(
            codes, np.array(clique_edges(gen.seed.vertices, n), dtype=np.uint64)
        )
        walk = rng.permutation(N)
        at_clique = np.isin(walk, clique_rows)
        pos = np.flatnonzero(at_clique)
        first = int(pos[0]) + 1
        cover = int(pos[-1]) + 1
        if first > 1:
            prefix = codes[walk[: first - 1]]
            fp = int(edge_query_batch(gen.instance, prefix, gen.specs).sum())
        else:
            fp = 0
        rep.rows.append((t, first, fp, cover))
    mean_first = (
        sum(rep.column("first_hit")) / trials if trials else float("nan")
    )
    rep.summary = {
        "trials": trials,
        "pairs": N,
        "clique_edges": K,
        "mean_first_hit": mean_first,
        "expected_first_hit": (N + 1) / (K + 1),
        "mean_false_positives": (
            sum(rep.column("false_positives")) / trials if trials else 0.0
        ),
        "mean_cover_all": (
            sum(rep.column("cover_all")) / trials if trials else 0.0
        ),
    }
    return rep


def density_experiment(n: int, variant: str, kind: str, trials: int,
                       master_seed: int) -> TrialReport:
    """Realized one-bit fraction of every filter array across generations."""
    ps = derive_params(n)
    rep = TrialReport(
        "density",
        {"n": n, "variant": variant, "kind": kind, "trials": trials,
         "master_seed": master_seed},
        ("trial_index", "array_index", "popcount", "m", "density"),
    )
    total = 0.0
    count = 0
    for t in range(trials):
        rng = rng_for_trial(master_seed, t)
        rs = random_string_for(rng, ps, variant, kind)
        gen = generate(rs, n, variant, kind)
        for i, arr in enumerate(gen.instance.arrays):
            d = arr.popcount() / arr.m
            total += d
            count += 1
            rep.rows.append((t, i + 1, arr.popcount(), arr.m, d))
    rep.summary = {
        "trials": trials,
        "arrays_per_trial": count // trials if trials else 0,
        "mean_density": total / count if count else 0.0,
    }
    return rep
