"""Identity verification suites over seeded random state samples.

Each suite draws Haar-distributed samples, evaluates the monogamy identities
and orderings on every sample, and reports per-identity max/mean residuals
against the pinned tolerances.  Tolerances reflect the optimizer's projective
restriction and multi-start noise budget, not the identities themselves,
which hold exactly at the true optima.
"""

from __future__ import annotations

import numpy as np

from . import monogamy as mo
from .correlations import discord, eof_2q, work_deficit_oneway
from .entropy import interaction_info_unmeasured, mutual_information, von_neumann
from .linalg import DimensionList, partial_trace, validate_density
from .states import haar_random_pure
from .util import parallel_map

SUITES = ("tripartite", "npartite", "workdeficit", "all")

TOLERANCES = {
    "pair_mean": 5e-4,
    "exchange": 5e-4,
    "gap_vs_eof": 1e-3,
    "lami_limi": 5e-4,
    "avg_split": 5e-4,
    "koashi_winter": 5e-4,
    "koashi_winter_half_cmi": 1e-3,
    "squashed_identity": 1e-3,
    "route_agreement": 1e-3,
    "interaction_decomposition_pure": 1e-9,
    "interaction_decomposition_mixed": 1e-9,
    "right_recursion": 5e-3,
    "left_recursion": 1e-2,
    "work_deficit_dominance": 5e-4,
    "work_deficit_left_ordering": 5e-4,
    "work_deficit_right_ordering": 5e-4,
}

_MIX_WEIGHTS = (0.1, 0.5, 0.9)


def _tripartite_pure_sample(args) -> dict:
    state_seed, opt_seed = args
    psi = haar_random_pure(DimensionList.qubits(3), state_seed)
    rho = psi.to_density()
    table = mo.TripartiteTable(psi, seed=opt_seed)
    labels = table.labels
    out = {
        "pair_mean": max(
            mo.check_left_deficit_pair_mean(psi, a, table=table) for a in labels
        ),
        "exchange": max(
            mo.check_right_deficit_exchange(psi, a, table=table) for a in labels
        ),
        "gap_vs_eof": max(
            mo.check_deficit_gap_vs_eof(psi, pair=(x, y), table=table)
            for x, y in (("A", "B"), ("A", "C"), ("B", "C"))
        ),
        "lami_limi": max(
            max(mo.check_lami_limi(psi, a, table=table)) for a in labels
        ),
        "avg_split": max(
            mo.check_left_deficit_avg_split(psi, a, table=table) for a in labels
        ),
    }

    kw = 0.0
    for x in labels:
        for y in labels:
            if x == y:
                continue
            (z,) = tuple(lab for lab in labels if lab not in (x, y))
            e_pair = eof_2q(partial_trace(rho, (y, z)))
            kw = max(kw, abs(table.pair[(x, y)].min_conditional - e_pair))
    out["koashi_winter"] = kw

    kw_half = 0.0
    spread_max = table.max_spread()
    decomposition = 0.0
    route = 0.0
    squashed = 0.0
    for a in labels:
        x, y = tuple(lab for lab in labels if lab != a)
        interrogated_cmi = (
            table.pair[(a, x)].min_conditional
            + table.pair[(a, y)].min_conditional
            - table.bip_right[a].min_conditional
        )
        kw_half = max(
            kw_half, abs(eof_2q(partial_trace(rho, (x, y))) - 0.5 * interrogated_cmi)
        )
        lhs = table.delta_right(a)
        unmeasured = interaction_info_unmeasured(rho, a)
        interrogated = interrogated_cmi - mutual_information(rho, (x,), (y,))
        decomposition = max(decomposition, abs(lhs - (unmeasured - interrogated)))
        closed_left = mo.deficit_left_pure_closed(psi, a)
        closed_right = mo.deficit_right_pure_closed(psi, a)
        route = max(
            route,
            abs(closed_left - table.delta_left(a)),
            abs(closed_right - table.delta_right(a)),
        )
        squashed = max(squashed, abs(closed_left - table.delta_left(a)))
    out["koashi_winter_half_cmi"] = kw_half
    out["interaction_decomposition_pure"] = decomposition
    out["route_agreement"] = route
    # the EOF deficit of a pure state IS the closed form of delta_left, so the
    # squashed-entanglement identity residual is the optimized-route gap
    out["squashed_identity"] = squashed
    out["_spread"] = spread_max
    return out


def _tripartite_mixed_sample(args) -> dict:
    state_seed, opt_seed, weight = args
    psi = haar_random_pure(DimensionList.qubits(3), state_seed)
    dims = DimensionList.qubits(3)
    matrix = (1.0 - weight) * psi.to_density().matrix + weight * np.eye(8) / 8.0
    rho = validate_density(matrix, dims)
    return {
        "interaction_decomposition_mixed": mo.check_interaction_decomposition(
            rho, anchor="A", seed=opt_seed
        )
    }


def _npartite_sample(args) -> dict:
    state_seed, opt_seed = args
    psi = haar_random_pure(DimensionList.qubits(4), state_seed)
    right = mo.check_right_deficit_recursion(psi, seed=opt_seed)
    left, diag = mo.check_left_deficit_recursion(psi, seed=opt_seed)
    return {
        "right_recursion": right,
        "left_recursion": left,
        "_spread": max(diag["bipartition_spread"], diag["omega_spread"]),
    }


def _workdeficit_pair_sample(args) -> dict:
    state_seed, opt_seed = args
    psi = haar_random_pure(DimensionList.qubits(4), state_seed)
    rho = partial_trace(psi.to_density(), ("A1", "A2"))
    worst = 0.0
    for measured, target in (("A1", "A2"), ("A2", "A1")):
        d = discord(rho, measured=measured, target=target, seed=opt_seed).discord
        wd = work_deficit_oneway(rho, (measured,), seed=opt_seed)
        worst = max(worst, d - wd)
    return {"work_deficit_dominance": worst}


def _workdeficit_pure_sample(args) -> dict:
    state_seed, opt_seed = args
    psi = haar_random_pure(DimensionList.qubits(3), state_seed)
    report = mo.work_deficit_bounds(psi, anchor="A", seed=opt_seed)
    return {
        "work_deficit_left_ordering": report["delta_left_work"]
        - report["delta_left_discord"],
        "work_deficit_right_ordering": report["delta_right_work"]
        - report["delta_right_discord"],
    }


def _collect(samples: list[dict]) -> tuple[dict, float]:
    """Per-identity max/mean over sample dicts, plus the worst spread seen."""
    keys = sorted({k for s in samples for k in s if not k.startswith("_")})
    stats = {}
    for k in keys:
        vals = np.array([s[k] for s in samples if k in s])
        stats[k] = {"max": float(vals.max()), "mean": float(vals.mean()), "n": len(vals)}
    spread = max((s.get("_spread", 0.0) for s in samples), default=0.0)
    return stats, spread


def run_suite(
    suite: str, n_samples: int, seed: int = 0, tol_override: float | None = None,
    threads: int = 1,
) -> dict:
    """Run one verification suite and grade it against the tolerances.

    ``tol_override`` replaces every identity tolerance (it is recorded in the
    output).  The report is JSON-ready; ``passed`` is False iff any identity
    exceeds its tolerance.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")

    samples: list[dict] = []
    if suite in ("tripartite", "all"):
        tasks = [(seed + i, seed + i) for i in range(n_samples)]
        samples += parallel_map(_tripartite_pure_sample, tasks, threads)
        n_mixed = max(1, n_samples // 4)
        tasks = [
            (seed + 10_000 + i, seed + i, _MIX_WEIGHTS[i % len(_MIX_WEIGHTS)])
            for i in range(n_mixed)
        ]
        samples += parallel_map(_tripartite_mixed_sample, tasks, threads)
    if suite in ("npartite", "all"):
        tasks = [(seed + 20_000 + i, seed + i) for i in range(n_samples)]
        samples += parallel_map(_npartite_sample, tasks, threads)
    if suite in ("workdeficit", "all"):
        tasks = [(seed + 30_000 + i, seed + i) for i in range(n_samples)]
        samples += parallel_map(_workdeficit_pair_sample, tasks, threads)
        tasks = [(seed + 40_000 + i, seed + i) for i in range(n_samples)]
        samples += parallel_map(_workdeficit_pure_sample, tasks, threads)

    stats, spread = _collect(samples)
    identities = {}
    all_pass = True
    for name, st in stats.items():
        tol = tol_override if tol_override is not None else TOLERANCES[name]
        ok = st["max"] <= tol
        all_pass &= ok
        identities[name] = {**st, "tolerance": tol, "pass": ok}
    return {
        "suite": suite,
        "n_samples": n_samples,
        "seed": seed,
        "tolerance_override": tol_override,
        "identities": identities,
        "passed": all_pass,
        "diagnostics": {
            "max_optimizer_spread": spread,
            "measurement_family": "rank1_projective",
        },
    }
