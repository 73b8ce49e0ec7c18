"""Entropic functionals: von Neumann entropy and its derived quantities.

Everything is in base-2 logarithm units (bits).  Eigenvalues below 1e-12
contribute zero to entropies, which keeps solver noise out of the logs.
"""

from __future__ import annotations

import numpy as np

from .errors import OverlappingParties, WrongArity
from .linalg import DensityMatrix, hermitian_eig, partial_trace

EIG_FLOOR = 1e-12


def entropy_of_spectrum(values) -> float:
    """-sum(x log2 x) over the raw values, with x < 1e-12 contributing 0."""
    v = np.asarray(values, dtype=float)
    v = v[v >= EIG_FLOOR]
    if v.size == 0:
        return 0.0
    return float(-np.sum(v * np.log2(v))) + 0.0


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x) in bits."""
    return entropy_of_spectrum([x, 1.0 - x])


def von_neumann(rho: DensityMatrix) -> float:
    """S(rho) = -tr(rho log2 rho) in bits."""
    vals, _ = hermitian_eig(rho.matrix)
    return entropy_of_spectrum(vals)


def _as_label_set(labels) -> tuple[str, ...]:
    if isinstance(labels, str):
        return (labels,)
    return tuple(labels)


def conditional_entropy_unmeasured(rho: DensityMatrix, target, given) -> float:
    """S(target|given) = S(target u given) - S(given), no measurement involved.

    May be negative for entangled states.
    """
    target = _as_label_set(target)
    given = _as_label_set(given)
    if set(target) & set(given):
        raise OverlappingParties(f"target {target} overlaps conditioning set {given}")
    joint = von_neumann(partial_trace(rho, target + given))
    return joint - von_neumann(partial_trace(rho, given))


def mutual_information(rho: DensityMatrix, a, b) -> float:
    """I(a:b) = S(a) + S(b) - S(a u b); nonnegative up to solver noise."""
    a = _as_label_set(a)
    b = _as_label_set(b)
    if not a or not b:
        raise WrongArity("both party sets must be nonempty")
    if set(a) & set(b):
        raise OverlappingParties(f"party sets {a} and {b} overlap")
    s_a = von_neumann(partial_trace(rho, a))
    s_b = von_neumann(partial_trace(rho, b))
    s_ab = von_neumann(partial_trace(rho, a + b))
    return s_a + s_b - s_ab


def cond_mutual_info_unmeasured(rho: DensityMatrix, b, c, given) -> float:
    """I(b:c|given) = S(b|given) + S(c|given) - S(b u c|given).

    Nonnegative by strong subadditivity, up to solver noise.
    """
    b = _as_label_set(b)
    c = _as_label_set(c)
    given = _as_label_set(given)
    for x, y in ((b, c), (b, given), (c, given)):
        if set(x) & set(y):
            raise OverlappingParties(f"party sets {x} and {y} overlap")
    return (
        conditional_entropy_unmeasured(rho, b, given)
        + conditional_entropy_unmeasured(rho, c, given)
        - conditional_entropy_unmeasured(rho, b + c, given)
    )


def interaction_info_unmeasured(rho: DensityMatrix, anchor: str | None = None) -> float:
    """Interaction information I(b:c|anchor) - I(b:c) of a three-party state.

    Independent of which party anchors the conditioning; equals the symmetric
    combination S(AB)+S(AC)+S(BC) - S(A)-S(B)-S(C) - S(ABC).
    """
    if rho.n_parties != 3:
        raise WrongArity(f"interaction information needs 3 parties, state has {rho.n_parties}")
    labels = rho.labels
    anchor = labels[0] if anchor is None else anchor
    rest = [x for x in labels if x != anchor]
    if len(rest) != 2:
        raise OverlappingParties(f"anchor {anchor!r} not among parties {labels}")
    return cond_mutual_info_unmeasured(rho, (rest[0],), (rest[1],), (anchor,)) - mutual_information(
        rho, (rest[0],), (rest[1],)
    )
