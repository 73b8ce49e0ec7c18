"""Transition sweep of the right monogamy deficit over the two-parameter
pure-state family.

For each grid point (p, eps) the row carries the closed-form deficits of
anchor A, the optimized pair discords measured on A, and the pair
entanglement of formation of BC.  The per-curve sign change from polygamy
(negative deficit) to monogamy is located by linear interpolation between
the bracketing grid points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correlations import discord, eof_2q
from .errors import OutOfRange
from .linalg import partial_trace
from .monogamy import deficit_left_pure_closed, deficit_right_pure_closed
from .states import psi_tilde
from .util import fmt12, parallel_map

CSV_HEADER = "p,eps,delta_right_A,delta_left_A,D_right_AB,D_right_AC,E_BC,route,optimizer_spread"


@dataclass(frozen=True)
class SweepRow:
    """One (p, eps) grid point of the deficit sweep."""

    p: float
    eps: float
    delta_right_a: float
    delta_left_a: float
    d_right_ab: float
    d_right_ac: float
    e_bc: float
    route: str
    optimizer_spread: float


def sweep_point(args) -> SweepRow:
    """Evaluate one grid point; module-level so worker pools can pickle it."""
    p, eps, seed = args
    psi = psi_tilde(p, eps)
    rho = psi.to_density()
    r_ab = discord(rho, measured="A", target="B", seed=seed)
    r_ac = discord(rho, measured="A", target="C", seed=seed)
    return SweepRow(
        p=p,
        eps=eps,
        delta_right_a=deficit_right_pure_closed(psi, "A"),
        delta_left_a=deficit_left_pure_closed(psi, "A"),
        d_right_ab=r_ab.discord,
        d_right_ac=r_ac.discord,
        e_bc=eof_2q(partial_trace(rho, ("B", "C"))),
        route="pure_closed_form",
        optimizer_spread=max(
            r_ab.opt.diagnostics["spread"], r_ac.opt.diagnostics["spread"]
        ),
    )


def p_grid(p_start: float, p_end: float, p_step: float) -> list[float]:
    if not (0.0 <= p_start < p_end <= 1.0):
        raise OutOfRange(f"need 0 <= p_start < p_end <= 1, got [{p_start}, {p_end}]")
    if p_step <= 0.0:
        raise OutOfRange(f"p_step must be positive, got {p_step}")
    values = []
    k = 0
    while True:
        p = p_start + k * p_step
        if p > p_end + 1e-12:
            break
        values.append(min(p, p_end))
        k += 1
    if values[-1] < p_end - 1e-12:
        values.append(p_end)
    return values


def run_sweep(
    eps_list, p_start: float = 0.0, p_end: float = 1.0, p_step: float = 0.01,
    seed: int = 0, threads: int = 1,
) -> list[SweepRow]:
    """Sweep rows for every eps curve over the p grid, eps-major order."""
    eps_list = list(eps_list)
    for eps in eps_list:
        if not (0.0 <= eps <= 1.0):
            raise OutOfRange(f"eps = {eps} outside [0, 1]")
    ps = p_grid(p_start, p_end, p_step)
    tasks = [(p, eps, seed) for eps in eps_list for p in ps]
    return parallel_map(sweep_point, tasks, threads=threads)


def sign_changes(rows: list[SweepRow]) -> dict[float, list[float]]:
    """Polygamy-to-monogamy crossings per eps, by linear interpolation.

    A crossing is a consecutive grid pair with deficit < 0 on the left and
    >= 0 on the right.  The leading exact zero of a curve that starts at 0
    is not a crossing.
    """
    by_eps: dict[float, list[SweepRow]] = {}
    for row in rows:
        by_eps.setdefault(row.eps, []).append(row)
    out = {}
    for eps, curve in by_eps.items():
        curve = sorted(curve, key=lambda r: r.p)
        stars = []
        for left, right in zip(curve, curve[1:]):
            if left.delta_right_a < 0.0 <= right.delta_right_a:
                frac = -left.delta_right_a / (right.delta_right_a - left.delta_right_a)
                stars.append(left.p + frac * (right.p - left.p))
        out[eps] = stars
    return out


def write_sweep_csv(rows: list[SweepRow], path) -> dict[float, list[float]]:
    """Write rows plus a '#'-commented crossing summary; returns crossings."""
    crossings = sign_changes(rows)
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    fmt12(r.p),
                    fmt12(r.eps),
                    fmt12(r.delta_right_a),
                    fmt12(r.delta_left_a),
                    fmt12(r.d_right_ab),
                    fmt12(r.d_right_ac),
                    fmt12(r.e_bc),
                    r.route,
                    fmt12(r.optimizer_spread),
                ]
            )
        )
    for eps in sorted(crossings):
        stars = crossings[eps]
        shown = " ".join(f"{p:.3f}" for p in stars) if stars else "none"
        lines.append(f"# crossing eps={fmt12(eps)} p_star={shown}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return crossings


def rows_as_dicts(rows: list[SweepRow]) -> list[dict]:
    return [
        {
            "p": r.p,
            "eps": r.eps,
            "delta_right_A": r.delta_right_a,
            "delta_left_A": r.delta_left_a,
            "D_right_AB": r.d_right_ab,
            "D_right_AC": r.d_right_ac,
            "E_BC": r.e_bc,
            "route": r.route,
            "optimizer_spread": r.optimizer_spread,
        }
        for r in rows
    ]
