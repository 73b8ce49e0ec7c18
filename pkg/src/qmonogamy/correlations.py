"""Directional quantum discord, classical correlation, entanglement of
formation and the one-way quantum work deficit.

Arrow convention: for an ordered pair (X, Y), the "right" quantities measure
X and condition Y on the outcomes; "left" measures Y.  Classical correlation
(locally accessible mutual information) and discord (locally inaccessible
mutual information) always split the total correlation exactly:
I_cl + D = I(X:Y) by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import (
    binary_entropy,
    mutual_information,
    von_neumann,
)
from .errors import NotPure, UnknownLabel, WrongArity
from .linalg import DensityMatrix, kron, partial_trace
from .measure_opt import OptResult, min_avg_conditional_entropy, min_dephased_entropy
from .states import StateVector

PURITY_ATOL = 1e-8

_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = kron(_PAULI_Y, _PAULI_Y)


def _as_density(state) -> DensityMatrix:
    return state.to_density() if isinstance(state, StateVector) else state


def _as_labels(x) -> tuple[str, ...]:
    return (x,) if isinstance(x, str) else tuple(x)


@dataclass(frozen=True)
class DiscordResult:
    """Measurement-optimized correlation split of an ordered pair."""

    discord: float
    classical: float
    mutual_info: float
    target_entropy: float
    min_conditional: float
    opt: OptResult


def discord(rho: DensityMatrix, measured, target, seed: int = 0) -> DiscordResult:
    """Quantum discord with measurement on ``measured`` and target ``target``.

    The state is reduced to measured + target first, so the same call serves
    full states and pair reductions.  Classical correlation is
    S(target) - min_avg_conditional_entropy and the discord is the exact
    remainder of the mutual information.
    """
    rho = _as_density(rho)
    measured = _as_labels(measured)
    target = _as_labels(target)
    reduced = partial_trace(rho, measured + target)
    mi = mutual_information(reduced, measured, target)
    s_target = von_neumann(partial_trace(reduced, target))
    opt = min_avg_conditional_entropy(reduced, measured, target, seed=seed)
    classical = s_target - opt.value
    return DiscordResult(
        discord=mi - classical,
        classical=classical,
        mutual_info=mi,
        target_entropy=s_target,
        min_conditional=opt.value,
        opt=opt,
    )


def purity_of(state) -> float:
    return _as_density(state).purity()


def discord_bipartition(state, anchor: str, rest=None, direction: str = "left", seed: int = 0) -> float:
    """Discord across the anchor|rest bipartition of a pure state.

    direction "left" measures the rest: for pure states any complete rank-1
    measurement of the rest leaves the anchor pure, so the value is exactly
    the anchor entropy and is returned analytically.  direction "right"
    measures the anchor and goes through the optimizer; for pure states both
    directions coincide at S(rho_anchor).
    """
    rho = _as_density(state)
    if rho.purity() < 1.0 - PURITY_ATOL:
        raise NotPure(f"bipartition discord needs a pure state, purity {rho.purity():.9f}")
    labels = rho.labels
    if anchor not in labels:
        raise UnknownLabel(f"unknown anchor {anchor!r}; state has {labels}")
    rest = tuple(x for x in labels if x != anchor) if rest is None else _as_labels(rest)
    if set(rest) | {anchor} != set(labels) or anchor in rest:
        raise UnknownLabel(f"anchor {anchor!r} plus rest {rest} must cover {labels}")
    if direction == "left":
        return von_neumann(partial_trace(rho, (anchor,)))
    if direction == "right":
        return discord(rho, measured=(anchor,), target=rest, seed=seed).discord
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


@dataclass(frozen=True)
class AnchorBundle:
    """Per-term optimal conditional entropies for one measured anchor.

    Holds the three independently optimized quantities S(X|anchor) for
    X = first partner, second partner and the pair, plus the entropies needed
    to assemble the three anchored discords from them.  Downstream identity
    checks reuse these values verbatim, which makes the discord-deficit
    decomposition algebraic.
    """

    anchor: str
    partners: tuple[str, str]
    s_cond: dict
    entropies: dict
    opts: dict

    def discord_pair(self, partner: str) -> float:
        """D of the (anchor, partner) reduction, measurement on the anchor."""
        mi = self.entropies[("mi", partner)]
        classical = self.entropies[("s", partner)] - self.s_cond[(partner,)]
        return mi - classical

    def discord_bipartition_right(self) -> float:
        """D of anchor|partners, measurement on the anchor."""
        mi = self.entropies[("mi", self.partners)]
        classical = self.entropies[("s", self.partners)] - self.s_cond[self.partners]
        return mi - classical

    def interrogated_cmi(self) -> float:
        b, c = self.partners
        return self.s_cond[(b,)] + self.s_cond[(c,)] - self.s_cond[(b, c)]

    def deficit_right(self) -> float:
        return (
            self.discord_bipartition_right()
            - self.discord_pair(self.partners[0])
            - self.discord_pair(self.partners[1])
        )


def anchor_measurement_bundle(rho: DensityMatrix, anchor: str, seed: int = 0) -> AnchorBundle:
    """Optimize the three anchored conditional entropies of a 3-party state."""
    rho = _as_density(rho)
    if rho.n_parties != 3:
        raise WrongArity(f"anchored bundle needs 3 parties, state has {rho.n_parties}")
    labels = rho.labels
    if anchor not in labels:
        raise UnknownLabel(f"unknown anchor {anchor!r}; state has {labels}")
    b, c = tuple(x for x in labels if x != anchor)

    opts = {
        (b,): min_avg_conditional_entropy(rho, (anchor,), (b,), seed=seed),
        (c,): min_avg_conditional_entropy(rho, (anchor,), (c,), seed=seed),
        (b, c): min_avg_conditional_entropy(rho, (anchor,), (b, c), seed=seed),
    }
    entropies = {
        ("s", b): von_neumann(partial_trace(rho, (b,))),
        ("s", c): von_neumann(partial_trace(rho, (c,))),
        ("s", (b, c)): von_neumann(partial_trace(rho, (b, c))),
        ("mi", b): mutual_information(partial_trace(rho, (anchor, b)), (anchor,), (b,)),
        ("mi", c): mutual_information(partial_trace(rho, (anchor, c)), (anchor,), (c,)),
        ("mi", (b, c)): mutual_information(rho, (anchor,), (b, c)),
    }
    return AnchorBundle(
        anchor=anchor,
        partners=(b, c),
        s_cond={k: v.value for k, v in opts.items()},
        entropies=entropies,
        opts=opts,
    )


def interrogated_cmi(rho: DensityMatrix, anchor: str, seed: int = 0) -> float:
    """Measured conditional mutual information S(B|A) + S(C|A) - S(BC|A).

    Each conditional entropy is optimized independently (per-term optimal
    measurements), matching the per-discord cancellation the deficit
    decomposition relies on.
    """
    return anchor_measurement_bundle(rho, anchor, seed=seed).interrogated_cmi()


def interrogated_interaction_info(rho: DensityMatrix, anchor: str, seed: int = 0) -> float:
    """Interrogated conditional mutual information minus the unmeasured I(B:C).

    The subtrahend carries no measurement: the anchor is absent from it.
    """
    bundle = anchor_measurement_bundle(rho, anchor, seed=seed)
    b, c = bundle.partners
    rho = _as_density(rho)
    return bundle.interrogated_cmi() - mutual_information(rho, (b,), (c,))


def concurrence_2q(rho) -> float:
    """Two-qubit concurrence from the spin-flipped spectrum.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the descending square roots
    of the eigenvalues of rho (Y x Y) rho* (Y x Y).
    """
    rho = _as_density(rho)
    if rho.dims.dims != (2, 2):
        raise WrongArity(f"concurrence needs a two-qubit state, got dims {rho.dims.dims}")
    m = rho.matrix
    flipped = _YY @ m.conj() @ _YY
    vals = np.linalg.eigvals(m @ flipped)
    # spectrum is real nonnegative up to roundoff
    roots = np.sqrt(np.abs(np.real(vals)))
    roots.sort()
    return float(max(0.0, roots[3] - roots[2] - roots[1] - roots[0]))


def eof_2q(rho) -> float:
    """Entanglement of formation of a two-qubit state, in bits.

    h((1 + sqrt(1 - C^2)) / 2) with C the concurrence; monotone in C.
    """
    c = concurrence_2q(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def eof_pure_bipartition(state, anchor: str) -> float:
    """Entanglement of formation across anchor|rest of a pure state."""
    rho = _as_density(state)
    if rho.purity() < 1.0 - PURITY_ATOL:
        raise NotPure(f"pure-bipartition EOF needs a pure state, purity {rho.purity():.9f}")
    return von_neumann(partial_trace(rho, (anchor,)))


def work_deficit_oneway(rho: DensityMatrix, measured, seed: int = 0) -> float:
    """One-way quantum work deficit: min over projective dephasings of the
    measured party of S(sum_i Pi rho Pi) - S(rho).

    Upper-bounds the discord of the same direction; zero iff some basis
    dephases the state for free.
    """
    rho = _as_density(rho)
    measured = _as_labels(measured)
    dim = 1
    for lab in measured:
        dim *= rho.dims.dims[rho.dims.index_of(lab)]
    if dim > 4:
        raise WrongArity(f"measured party dimension {dim} exceeds the supported 4")
    opt = min_dephased_entropy(rho, measured, seed=seed)
    return opt.value - von_neumann(rho)
