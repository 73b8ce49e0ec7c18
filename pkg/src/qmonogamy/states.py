"""State constructors, Haar-random sampling and state file I/O.

The two-parameter pure-state family ``psi_tilde`` interpolates between the
GHZ point at (p, eps) = (1, 1/2) and the maximally entangled W point at
(1/3, 1); together with the generalized GHZ/W constructors it supplies every
fixture the correlation and monogamy modules are exercised on.

All family constructors use non-negative real amplitudes; arbitrary phases
enter only through ``haar_random_pure``.  Randomness comes from numpy's
seeded PCG64 generator so every sampled suite is replayable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, NotPure, OutOfRange, ParseError
from .linalg import DensityMatrix, DimensionList, hermitian_eig, validate_density

NORM_ATOL = 1e-10
PURITY_ATOL = 1e-8


@dataclass(frozen=True)
class StateVector:
    """Pure state over labelled subsystems, unit norm within 1e-10."""

    dims: DimensionList
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amp)
        if amp.size != self.dims.total:
            raise NotNormalized(
                f"amplitude count {amp.size} does not match dimensions {self.dims.dims}"
            )
        if abs(np.linalg.norm(amp) - 1.0) > NORM_ATOL:
            raise NotNormalized(f"norm {np.linalg.norm(amp):.12g} is not 1 within 1e-10")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.dims.labels

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


def psi_tilde(p: float, eps: float) -> StateVector:
    """Three-qubit family sqrt(p*eps)|000> + sqrt(p(1-eps))|111>
    + sqrt((1-p)/2)(|101> + |110>).

    Raises OutOfRange unless both parameters lie in [0, 1].
    """
    if not (0.0 <= p <= 1.0):
        raise OutOfRange(f"p = {p} outside [0, 1]")
    if not (0.0 <= eps <= 1.0):
        raise OutOfRange(f"eps = {eps} outside [0, 1]")
    amp = np.zeros(8, dtype=complex)
    amp[0b000] = math.sqrt(p * eps)
    amp[0b111] = math.sqrt(p * (1.0 - eps))
    amp[0b101] = math.sqrt((1.0 - p) / 2.0)
    amp[0b110] = math.sqrt((1.0 - p) / 2.0)
    return StateVector(DimensionList.qubits(3), amp)


def ghz_generalized(alpha: float) -> StateVector:
    """sqrt(alpha)|000> + sqrt(1-alpha)|111>."""
    if not (0.0 <= alpha <= 1.0):
        raise OutOfRange(f"alpha = {alpha} outside [0, 1]")
    amp = np.zeros(8, dtype=complex)
    amp[0b000] = math.sqrt(alpha)
    amp[0b111] = math.sqrt(1.0 - alpha)
    return StateVector(DimensionList.qubits(3), amp)


def w_generalized(a: float, b: float, c: float) -> StateVector:
    """sqrt(a)|100> + sqrt(b)|010> + sqrt(c)|001> with a + b + c = 1."""
    if min(a, b, c) < 0.0:
        raise OutOfRange(f"weights must be non-negative, got ({a}, {b}, {c})")
    if abs((a + b + c) - 1.0) > NORM_ATOL:
        raise NotNormalized(f"weights sum to {a + b + c:.12g}, expected 1 within 1e-10")
    amp = np.zeros(8, dtype=complex)
    amp[0b100] = math.sqrt(a)
    amp[0b010] = math.sqrt(b)
    amp[0b001] = math.sqrt(c)
    return StateVector(DimensionList.qubits(3), amp)


def ghz_n(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(DimensionList.qubits(n), amp)


def product_state(n: int = 3) -> StateVector:
    """|0...0> on n qubits."""
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = 1.0
    return StateVector(DimensionList.qubits(n), amp)


def haar_random_pure(dims: DimensionList, seed: int) -> StateVector:
    """Haar-distributed pure state, deterministic for a fixed seed.

    Amplitudes are independent standard complex Gaussians (PCG64 stream)
    normalized to the unit sphere, which is exactly the Haar distribution on
    pure states.
    """
    rng = np.random.default_rng(seed)
    d = dims.total
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(dims, z / np.linalg.norm(z))


def as_pure(rho: DensityMatrix, atol: float = PURITY_ATOL) -> StateVector:
    """Dominant eigenvector of an (almost) pure density matrix.

    Raises NotPure when tr(rho^2) < 1 - atol.
    """
    if rho.purity() < 1.0 - atol:
        raise NotPure(f"purity {rho.purity():.12g} below 1 - {atol:g}")
    vals, vecs = hermitian_eig(rho.matrix)
    vec = vecs[:, 0]
    # fix the global phase so the largest-magnitude amplitude is real positive
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    return StateVector(rho.dims, vec / np.linalg.norm(vec))


def save_state(state, path) -> None:
    """Write a density matrix (or pure state, as its projector) to JSON.

    The schema is ``{"dims": [...], "labels": [...], "matrix": [[re, im],
    ...]}`` with the matrix flattened row-major.  Floats serialize through
    Python's shortest round-trip repr, so save -> load is exact.
    """
    if isinstance(state, StateVector):
        state = state.to_density()
    flat = state.matrix.reshape(-1)
    doc = {
        "dims": list(state.dims.dims),
        "labels": list(state.dims.labels),
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_state(path) -> DensityMatrix:
    """Read a density matrix saved by :func:`save_state`.

    Raises ParseError on malformed files and NotDensityMatrix when the stored
    matrix fails validation.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read state file {path}: {exc}") from exc
    try:
        dims = DimensionList(tuple(doc["dims"]), tuple(doc["labels"]))
        entries = np.array([complex(re, im) for re, im in doc["matrix"]])
        side = dims.total
        matrix = entries.reshape(side, side)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"state file {path} does not match the schema: {exc}") from exc
    return validate_density(matrix, dims)
