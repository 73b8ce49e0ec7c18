"""Rank-1 projective measurements on a party and entropy minimization.

A measurement basis on a d-dimensional party is parametrized by d(d-1) real
angles: Bloch angles (theta, phi) for d = 2, and (rotation, phase) pairs of a
fixed Givens chain for d > 2.  The inner optimization of the discord is a
multi-start Nelder-Mead search over these angles:

- d = 2: a 13 x 25 (theta, phi) coarse grid, the best five cells refined;
- d > 2: 64 starts decomposed from Haar-random unitaries.

Each start converges when the simplex collapses below 1e-9 or after 2000
evaluations.  Restarts run in lockstep through a batched objective (one
contraction serves every simplex), are reduced in a fixed order, and ties
within 1e-10 resolve to the lowest start index, so results are deterministic
for a fixed seed.  The search covers projective measurements only (not
general POVMs); identity checks downstream budget a 5e-4 tolerance for the
residual gap, and the restriction is recorded in the diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import EIG_FLOOR
from .errors import BadParamLength, OverlappingParties, UnknownLabel
from .linalg import DensityMatrix, DimensionList, eigvalsh_stack, partial_trace, permute_subsystems

COMPLETENESS_TOL = 1e-10
PROB_FLOOR = 1e-12

_GRID_THETA = 13
_GRID_PHI = 25
_GRID_REFINE = 5
_RANDOM_STARTS = 64
_XATOL = 1e-9
_FATOL = 1e-12
_MAXFEV = 2000
_TIE_TOL = 1e-10
# both objectives are nonnegative; once any start reaches this floor no other
# start can improve, so the search stops early
_ZERO_STOP = 1e-11


@dataclass(frozen=True)
class MeasurementParams:
    """Angle vector generating a complete rank-1 projective basis."""

    party_dim: int
    angles: np.ndarray

    def __post_init__(self):
        angles = np.asarray(self.angles, dtype=float).reshape(-1)
        object.__setattr__(self, "angles", angles)
        expected = self.party_dim * (self.party_dim - 1)
        if angles.size != expected:
            raise BadParamLength(
                f"dimension {self.party_dim} needs {expected} angles, got {angles.size}"
            )


@dataclass(frozen=True)
class MeasurementOutcomeEnsemble:
    """Outcome probabilities with the post-measurement states of the rest.

    Outcomes with probability below 1e-12 carry ``None`` instead of a state
    and contribute nothing to averages.
    """

    outcomes: tuple = field(default_factory=tuple)

    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.outcomes])


def _pair_order(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def unitaries_from_angles(d: int, angle_rows: np.ndarray) -> np.ndarray:
    """Basis-change unitaries for a batch of angle vectors, shape (m, d, d).

    Column i of each unitary is the i-th measurement direction.  For d = 2
    the two angles are Bloch angles of the first column; for d > 2 the rows
    hold (rotation, phase) pairs applied along the fixed pair order
    (0,1), (0,2), ..., (d-2,d-1).
    """
    x = np.atleast_2d(np.asarray(angle_rows, dtype=float))
    m = x.shape[0]
    if x.shape[1] != d * (d - 1):
        raise BadParamLength(f"dimension {d} needs {d * (d - 1)} angles, got {x.shape[1]}")
    if d == 2:
        pairs = x[:, None, :] / np.array([[2.0, 1.0]])
    else:
        pairs = x.reshape(m, -1, 2)
    u = np.broadcast_to(np.eye(d, dtype=complex), (m, d, d)).copy()
    for k, (i, j) in enumerate(_pair_order(d)):
        c = np.cos(pairs[:, k, 0])[:, None]
        s = np.sin(pairs[:, k, 0])[:, None]
        w = np.exp(1j * pairs[:, k, 1])[:, None]
        col_i = u[:, :, i].copy()
        col_j = u[:, :, j].copy()
        u[:, :, i] = col_i * c + col_j * (s * w)
        u[:, :, j] = col_i * (-s * np.conj(w)) + col_j * c
    return u


def unitary_from_params(params: MeasurementParams) -> np.ndarray:
    """Basis-change unitary whose columns define the measurement projectors."""
    return unitaries_from_angles(params.party_dim, params.angles[None, :])[0]


def params_from_unitary(u: np.ndarray) -> MeasurementParams:
    """Angles reproducing the projector set of ``u`` (columns up to phase).

    Inverts the Givens chain by QR-style elimination; the dropped diagonal
    phase factor does not affect the projectors.
    """
    u = np.asarray(u, dtype=complex)
    d = u.shape[0]
    m = u.copy()
    angles = []
    for i, j in _pair_order(d):
        a = m[i, i]
        b = m[j, i]
        alpha = math.atan2(abs(b), abs(a))
        phi = float(np.angle(b) - np.angle(a)) if abs(b) > 0 else 0.0
        angles.extend([alpha, phi])
        c, s = math.cos(alpha), math.sin(alpha)
        w = complex(math.cos(phi), math.sin(phi))
        row_i = m[i, :].copy()
        row_j = m[j, :].copy()
        m[i, :] = row_i * c + row_j * (s * np.conj(w))
        m[j, :] = row_i * (-s * w) + row_j * c
    if d == 2:
        alpha, phi = angles
        return MeasurementParams(2, np.array([2.0 * alpha, phi]))
    return MeasurementParams(d, np.array(angles))


def projectors_from_params(params: MeasurementParams) -> np.ndarray:
    """Stack of d orthogonal rank-1 projectors summing to the identity."""
    u = unitary_from_params(params)
    return np.einsum("ki,li->ikl", u, u.conj())


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a complex Ginibre."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def _h2(values: np.ndarray) -> np.ndarray:
    """-sum x log2 x over the last axis, entries below 1e-12 contributing 0."""
    safe = np.maximum(values, 1e-300)
    term = np.where(values >= EIG_FLOOR, values * np.log2(safe), 0.0)
    return -term.sum(axis=-1)


class MeasurementProblem:
    """State permuted so the measured party is the leading tensor factor.

    The conditional blocks for a whole batch of bases reduce to a single
    matrix product against a precomputed reshaping of the state, which keeps
    the per-evaluation cost of the optimizer small.
    """

    def __init__(self, rho: DensityMatrix, measured):
        measured = (measured,) if isinstance(measured, str) else tuple(measured)
        dims = rho.dims
        measured_idx = sorted(set(dims.indices_of(measured)))
        if not measured_idx:
            raise UnknownLabel("measured party set is empty")
        rest_idx = [i for i in range(len(dims.dims)) if i not in measured_idx]
        if not rest_idx:
            raise UnknownLabel("measurement must leave at least one party unmeasured")
        self.party_dim = math.prod(dims.dims[i] for i in measured_idx)
        self.rest_dim = math.prod(dims.dims[i] for i in rest_idx)
        self.rest_dims = DimensionList(
            tuple(dims.dims[i] for i in rest_idx), tuple(dims.labels[i] for i in rest_idx)
        )
        perm = measured_idx + rest_idx
        mat = permute_subsystems(rho.matrix, dims.dims, perm)
        dm, dr = self.party_dim, self.rest_dim
        tensor = mat.reshape(dm, dr, dm, dr)
        # rows indexed by (k, l) measured indices, columns by (a, b) rest indices
        self._t2 = np.ascontiguousarray(tensor.transpose(0, 2, 1, 3).reshape(dm * dm, dr * dr))

    def conditional_blocks(self, unitaries: np.ndarray) -> np.ndarray:
        """Unnormalized post-measurement blocks for a batch of basis unitaries.

        ``unitaries`` has shape (g, d, d); the result has shape
        (g, d, rest_dim, rest_dim) where block (g, i) carries trace p_i.
        """
        g = unitaries.shape[0]
        dm, dr = self.party_dim, self.rest_dim
        ut = unitaries.transpose(0, 2, 1)
        coeff = ut.conj()[:, :, :, None] * ut[:, :, None, :]
        blocks = coeff.reshape(g * dm, dm * dm) @ self._t2
        return blocks.reshape(g, dm, dr, dr)

    def block_spectra(self, unitaries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Outcome probabilities and raw conditional spectra per basis."""
        g = unitaries.shape[0]
        dm, dr = self.party_dim, self.rest_dim
        blocks = self.conditional_blocks(unitaries)
        lam = eigvalsh_stack(blocks.reshape(g * dm, dr, dr))
        lam = np.clip(lam.reshape(g, dm, dr), 0.0, None)
        probs = np.clip(np.real(np.einsum("giaa->gi", blocks)), 0.0, None)
        return probs, lam

    def avg_conditional_entropy(self, unitaries: np.ndarray) -> np.ndarray:
        """sum_i p_i S(rho_rest|i) in bits, batched over bases."""
        probs, lam = self.block_spectra(unitaries)
        g = lam.shape[0]
        return _h2(lam.reshape(g, -1)) - _h2(probs)

    def dephased_entropy(self, unitaries: np.ndarray) -> np.ndarray:
        """Entropy of sum_i Pi rho Pi, block diagonal in the measured basis."""
        _, lam = self.block_spectra(unitaries)
        g = lam.shape[0]
        return _h2(lam.reshape(g, -1))


def measure_party(rho: DensityMatrix, party, params: MeasurementParams) -> MeasurementOutcomeEnsemble:
    """Apply the projective basis on ``party`` and collect the outcomes.

    p_i = tr[(Pi_i x I) rho]; the conditional state of the remaining parties
    is the corresponding normalized block.
    """
    problem = MeasurementProblem(rho, party)
    if params.party_dim != problem.party_dim:
        raise BadParamLength(
            f"params are for dimension {params.party_dim}, party has {problem.party_dim}"
        )
    u = unitary_from_params(params)[None, :, :]
    blocks = problem.conditional_blocks(u)[0]
    outcomes = []
    for i in range(problem.party_dim):
        p = float(np.real(np.trace(blocks[i])))
        if p < PROB_FLOOR:
            outcomes.append((max(p, 0.0), None))
            continue
        cond = blocks[i] / p
        outcomes.append((p, DensityMatrix(problem.rest_dims, (cond + cond.conj().T) / 2.0)))
    return MeasurementOutcomeEnsemble(tuple(outcomes))


def _nelder_mead_batch(batch_fun, x0s: np.ndarray, xatol: float, fatol: float, maxfev: int):
    """Run independent Nelder-Mead searches in lockstep.

    ``batch_fun`` maps an (m, n) array of points to an (m,) array of values;
    every probe of every active simplex goes through one such call per round.
    Uses the standard reflection/expansion/contraction/shrink coefficients
    (dimension-adaptive for n > 2).  Each instance stops when its simplex
    spread falls below ``xatol`` with value spread below ``fatol``, or when
    its evaluation budget ``maxfev`` runs out.  All searches abort once any
    instance reaches the global objective floor, which is sound because the
    objectives are nonnegative.

    Returns (best_points, best_values, total_evals).
    """
    x0s = np.atleast_2d(np.asarray(x0s, dtype=float))
    m, n = x0s.shape
    if n > 2:
        chi, psi, sigma = 1.0 + 2.0 / n, 0.75 - 1.0 / (2.0 * n), 1.0 - 1.0 / n
    else:
        chi, psi, sigma = 2.0, 0.5, 0.5

    sim = np.repeat(x0s[:, None, :], n + 1, axis=1)
    for k in range(n):
        bump = np.where(np.abs(sim[:, k + 1, k]) > 1e-12, sim[:, k + 1, k] * 0.05, 0.00025)
        sim[:, k + 1, k] += bump
    fsim = batch_fun(sim.reshape(m * (n + 1), n)).reshape(m, n + 1)
    nfev = np.full(m, n + 1)
    total = m * (n + 1)

    order = np.argsort(fsim, axis=1, kind="stable")
    sim = np.take_along_axis(sim, order[:, :, None], axis=1)
    fsim = np.take_along_axis(fsim, order, axis=1)
    active = np.ones(m, dtype=bool)

    while True:
        spread_x = np.max(np.abs(sim[:, 1:, :] - sim[:, :1, :]), axis=(1, 2))
        spread_f = np.max(np.abs(fsim[:, 1:] - fsim[:, :1]), axis=1)
        active &= ~((spread_x <= xatol) & (spread_f <= fatol))
        active &= nfev < maxfev
        if not np.any(active) or fsim[:, 0].min() <= _ZERO_STOP:
            break

        idx = np.nonzero(active)[0]
        centroid = sim[idx, :-1, :].mean(axis=1)
        worst = sim[idx, -1, :]
        xr = 2.0 * centroid - worst
        fxr = batch_fun(xr)
        nfev[idx] += 1
        total += len(idx)

        new_x = xr.copy()
        new_f = fxr.copy()

        expand = fxr < fsim[idx, 0]
        if np.any(expand):
            xe = (1.0 + chi) * centroid[expand] - chi * worst[expand]
            fxe = batch_fun(xe)
            nfev[idx[expand]] += 1
            total += int(expand.sum())
            better = fxe < fxr[expand]
            rows = np.nonzero(expand)[0][better]
            new_x[rows] = xe[better]
            new_f[rows] = fxe[better]

        # neither new best nor better than second-worst: try a contraction
        contract = ~expand & (fxr >= fsim[idx, -2])
        shrink_rows = np.zeros(len(idx), dtype=bool)
        if np.any(contract):
            outside = contract & (fxr < fsim[idx, -1])
            inside = contract & ~outside
            xc = np.empty((int(contract.sum()), n))
            sel = np.nonzero(contract)[0]
            out_sel = outside[sel]
            xc[out_sel] = (1.0 + psi) * centroid[sel][out_sel] - psi * worst[sel][out_sel]
            xc[~out_sel] = (1.0 - psi) * centroid[sel][~out_sel] + psi * worst[sel][~out_sel]
            fxc = batch_fun(xc)
            nfev[idx[sel]] += 1
            total += len(sel)
            ok = np.where(out_sel, fxc <= fxr[sel], fxc < fsim[idx[sel], -1])
            new_x[sel[ok]] = xc[ok]
            new_f[sel[ok]] = fxc[ok]
            shrink_rows[sel[~ok]] = True

        accept = ~shrink_rows
        rows = idx[accept]
        sim[rows, -1, :] = new_x[accept]
        fsim[rows, -1] = new_f[accept]

        if np.any(shrink_rows):
            rows = idx[shrink_rows]
            pts = sim[rows, :1, :] + sigma * (sim[rows, 1:, :] - sim[rows, :1, :])
            vals = batch_fun(pts.reshape(len(rows) * n, n)).reshape(len(rows), n)
            sim[rows, 1:, :] = pts
            fsim[rows, 1:] = vals
            nfev[rows] += n
            total += len(rows) * n

        order = np.argsort(fsim[idx], axis=1, kind="stable")
        sim[idx] = np.take_along_axis(sim[idx], order[:, :, None], axis=1)
        fsim[idx] = np.take_along_axis(fsim[idx], order, axis=1)

    return sim[:, 0, :], fsim[:, 0], total


@dataclass(frozen=True)
class OptResult:
    """Minimized value with the winning angles and search diagnostics."""

    value: float
    params: MeasurementParams
    diagnostics: dict


def _minimize_objective(problem: MeasurementProblem, kind: str, seed: int) -> OptResult:
    d = problem.party_dim
    if kind == "avg_conditional":
        objective = problem.avg_conditional_entropy
    elif kind == "dephased":
        objective = problem.dephased_entropy
    else:
        raise ValueError(f"unknown objective {kind!r}")

    def batch_fun(x_rows: np.ndarray) -> np.ndarray:
        return objective(unitaries_from_angles(d, x_rows))

    if d == 2:
        thetas = np.linspace(0.0, math.pi, _GRID_THETA)
        phis = np.linspace(0.0, 2.0 * math.pi, _GRID_PHI, endpoint=False)
        tt, pp = np.meshgrid(thetas, phis, indexing="ij")
        starts = np.column_stack([tt.ravel(), pp.ravel()])
        n_refine = _GRID_REFINE
    else:
        rng = np.random.default_rng(seed)
        starts = np.array(
            [params_from_unitary(haar_unitary(d, rng)).angles for _ in range(_RANDOM_STARTS)]
        )
        n_refine = _RANDOM_STARTS

    start_values = batch_fun(starts)
    n_evals = len(start_values)
    order = np.argsort(start_values, kind="stable")[:n_refine]

    if float(start_values[order[0]]) <= _ZERO_STOP:
        values = np.array([float(start_values[order[0]])])
        points = starts[order[:1]]
        n_starts = 1
    else:
        points, values, used = _nelder_mead_batch(
            batch_fun, starts[order], xatol=_XATOL, fatol=_FATOL, maxfev=_MAXFEV
        )
        n_evals += used
        n_starts = len(order)

    vmin = float(values.min())
    best = int(np.nonzero(values <= vmin + _TIE_TOL)[0][0])
    diagnostics = {
        "objective": kind,
        "family": "rank1_projective",
        "n_starts": n_starts,
        "n_evals": int(n_evals),
        "spread": float(values.max() - vmin),
        "best_start": best,
    }
    return OptResult(float(values[best]), MeasurementParams(d, points[best]), diagnostics)


def min_avg_conditional_entropy(
    rho: DensityMatrix, measured, target, seed: int = 0
) -> OptResult:
    """Minimize sum_i p_i S(rho_target|i) over projective bases on ``measured``.

    The state is first reduced to measured + target, so the conditional
    states are exactly the target marginals given each outcome.
    """
    measured = (measured,) if isinstance(measured, str) else tuple(measured)
    target = (target,) if isinstance(target, str) else tuple(target)
    if set(measured) & set(target):
        raise OverlappingParties(f"measured {measured} overlaps target {target}")
    reduced = partial_trace(rho, measured + target)
    problem = MeasurementProblem(reduced, measured)
    return _minimize_objective(problem, "avg_conditional", seed)


def min_dephased_entropy(rho: DensityMatrix, measured, seed: int = 0) -> OptResult:
    """Minimize S(sum_i Pi rho Pi) over projective bases on ``measured``."""
    problem = MeasurementProblem(rho, measured)
    return _minimize_objective(problem, "dephased", seed)
