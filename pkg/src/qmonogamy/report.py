"""Full correlation report for one state: every pairwise and bipartition
measure the package computes, JSON-ready."""

from __future__ import annotations

from .correlations import discord, eof_2q, work_deficit_oneway
from .entropy import mutual_information, von_neumann
from .errors import WrongArity
from .linalg import DensityMatrix, partial_trace
from .states import StateVector

PURITY_ATOL = 1e-8
MAX_PARTIES = 4


def correlation_report(state, seed: int = 0) -> dict:
    """All pairwise and bipartition correlation measures of a state.

    Pairs carry entropies, total correlation, the directional classical/
    discord splits, two-qubit entanglement of formation and both one-way work
    deficits; bipartitions carry the anchored discords.  For pure states the
    left bipartition discord is the anchor entropy (exact); for mixed states
    it is only computed when the measured composite stays within dimension 4,
    and is then an upper-bound-biased heuristic.
    """
    rho = state.to_density() if isinstance(state, StateVector) else state
    labels = rho.labels
    if len(labels) < 2 or len(labels) > MAX_PARTIES:
        raise WrongArity(f"report covers 2..{MAX_PARTIES} parties, state has {len(labels)}")
    pure = rho.purity() >= 1.0 - PURITY_ATOL

    report: dict = {
        "labels": list(labels),
        "dims": list(rho.dims.dims),
        "purity": rho.purity(),
        "total_entropy": von_neumann(rho),
        "entropy": {lab: von_neumann(partial_trace(rho, (lab,))) for lab in labels},
    }

    restarts = 0
    spread = 0.0
    pairs = {}
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            pair_rho = partial_trace(rho, (x, y))
            right = discord(pair_rho, measured=(x,), target=(y,), seed=seed)
            left = discord(pair_rho, measured=(y,), target=(x,), seed=seed)
            entry = {
                "entropy": von_neumann(pair_rho),
                "mutual_info": right.mutual_info,
                "classical_right": right.classical,
                "classical_left": left.classical,
                "discord_right": right.discord,
                "discord_left": left.discord,
                "work_deficit_right": work_deficit_oneway(pair_rho, (x,), seed=seed),
                "work_deficit_left": work_deficit_oneway(pair_rho, (y,), seed=seed),
            }
            if pair_rho.dims.dims == (2, 2):
                entry["eof"] = eof_2q(pair_rho)
            pairs[f"{x}|{y}"] = entry
            for r in (right, left):
                restarts += r.opt.diagnostics["n_starts"]
                spread = max(spread, r.opt.diagnostics["spread"])
    report["pairs"] = pairs

    if len(labels) >= 3:
        bipartitions = {}
        for anchor in labels:
            rest = tuple(lab for lab in labels if lab != anchor)
            rest_dim = 1
            for lab in rest:
                rest_dim *= rho.dims.dims[rho.dims.index_of(lab)]
            right = discord(rho, measured=(anchor,), target=rest, seed=seed)
            entry = {
                "anchor_entropy": report["entropy"][anchor],
                "mutual_info": right.mutual_info,
                "discord_right": right.discord,
                "classical_right": right.classical,
            }
            restarts += right.opt.diagnostics["n_starts"]
            spread = max(spread, right.opt.diagnostics["spread"])
            if pure:
                entry["discord_left"] = report["entropy"][anchor]
                entry["route_left"] = "pure_closed_form"
                entry["eof"] = report["entropy"][anchor]
            elif rest_dim <= 4:
                left = discord(rho, measured=rest, target=(anchor,), seed=seed)
                entry["discord_left"] = left.discord
                entry["route_left"] = "optimized_heuristic"
                restarts += left.opt.diagnostics["n_starts"]
                spread = max(spread, left.opt.diagnostics["spread"])
            else:
                entry["discord_left"] = None
                entry["route_left"] = "unavailable_composite_dimension"
            bipartitions[f"{anchor}|{''.join(rest)}"] = entry
        report["bipartitions"] = bipartitions

    report["diagnostics"] = {
        "seed": seed,
        "measurement_family": "rank1_projective",
        "total_restarts": restarts,
        "max_optimizer_spread": spread,
    }
    return report
