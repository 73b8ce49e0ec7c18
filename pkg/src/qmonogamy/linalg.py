"""Dense complex matrix kernel for small multipartite states.

Plain complex ``numpy`` arrays play the role of matrices throughout the
package; this module adds the pieces the rest of the code builds on:

- a cyclic Jacobi eigensolver for Hermitian matrices (dimensions here never
  exceed 16, where Jacobi is simple and very stable),
- Kronecker products and partial traces over labelled subsystems,
- validation of density matrices with an explicit clamping policy for
  floating-point positivity violations.

Subsystem ordering convention: row-major tensor layout, first label is the
most significant index.  Every module in the package conforms to this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotDensityMatrix, NotHermitian, UnknownLabel

HERMITICITY_TOL = 1e-10
DENSITY_ATOL = 1e-8
EIG_CLAMP = 1e-8

_JACOBI_OFF_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


def _default_labels(n: int) -> tuple[str, ...]:
    if n <= 3:
        return tuple("ABC"[:n])
    return tuple(f"A{i + 1}" for i in range(n))


@dataclass(frozen=True)
class DimensionList:
    """Ordered per-subsystem dimensions with unique party labels."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.dims) != len(self.labels):
            raise ValueError("dims and labels must have equal length")
        if any(d < 2 for d in self.dims):
            raise ValueError("every subsystem dimension must be >= 2")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels must be unique, got {self.labels}")

    @classmethod
    def qubits(cls, n: int, labels=None) -> "DimensionList":
        return cls((2,) * n, tuple(labels) if labels else _default_labels(n))

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown party {label!r}; state has {self.labels}") from None

    def indices_of(self, labels) -> list[int]:
        return [self.index_of(lab) for lab in labels]

    def subset(self, labels) -> "DimensionList":
        """Dimension list restricted to ``labels``, kept in this list's order."""
        idx = sorted(self.indices_of(labels))
        return DimensionList(tuple(self.dims[i] for i in idx), tuple(self.labels[i] for i in idx))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, trace-one matrix over labelled subsystems.

    Construct untrusted matrices through :func:`validate_density`; operations
    in this package that provably preserve validity build instances directly.
    """

    dims: DimensionList
    matrix: np.ndarray

    @property
    def labels(self) -> tuple[str, ...]:
        return self.dims.labels

    @property
    def n_parties(self) -> int:
        return len(self.dims.dims)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and eigenvectors as the corresponding orthonormal
    columns.  Convergence is declared when the off-diagonal Frobenius mass
    drops below 1e-12; the sweep cap is 100.

    Raises
    ------
    NotHermitian
        if ``max |m - m^dagger|`` exceeds 1e-10.
    NoConvergence
        if the sweep cap is exhausted (does not occur for n <= 16).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix contains non-finite entries")
    if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-10")

    n = m.shape[0]
    a = (m + m.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), v

    for _ in range(_JACOBI_MAX_SWEEPS):
        # off-diagonal Frobenius mass, summed directly (the subtraction form
        # trace-minus-total cancels catastrophically near convergence)
        off_sq = np.abs(a) ** 2
        np.fill_diagonal(off_sq, 0.0)
        if math.sqrt(float(off_sq.sum())) < _JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, a[p, p].real - a[q, q].real)
                c = math.cos(theta)
                s = math.sin(theta)
                w = np.conj(phase)
                # 2x2 unitary [[c, -s], [s*w, c*w]] on coordinates (p, q)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * c + col_q * (s * w)
                a[:, q] = col_p * (-s) + col_q * (c * w)
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = row_p * c + row_q * np.conj(s * w)
                a[q, :] = row_p * (-s) + row_q * np.conj(c * w)
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = vec_p * c + vec_q * (s * w)
                v[:, q] = vec_p * (-s) + vec_q * (c * w)
    else:
        raise NoConvergence(f"Jacobi did not converge in {_JACOBI_MAX_SWEEPS} sweeps")

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(eigenvalues)[::-1]
    return eigenvalues[order], v[:, order]


def eigvalsh_stack(mats: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues for a stack of Hermitian matrices.

    Hot path of the measurement optimizer; uses the analytic 2x2 formula or
    batched LAPACK instead of the Jacobi kernel purely for throughput.
    """
    mats = np.asarray(mats)
    if mats.shape[-1] == 2:
        t = np.real(mats[..., 0, 0] + mats[..., 1, 1])
        det = np.real(mats[..., 0, 0] * mats[..., 1, 1]) - np.abs(mats[..., 0, 1]) ** 2
        gap = np.sqrt(np.maximum(t * t - 4.0 * det, 0.0))
        return np.stack([(t - gap) / 2.0, (t + gap) / 2.0], axis=-1)
    return np.linalg.eigvalsh(mats)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product in the row-major convention."""
    return np.kron(np.asarray(a), np.asarray(b))


def permute_subsystems(matrix: np.ndarray, dims, order) -> np.ndarray:
    """Reorder tensor factors of a square matrix to ``order``."""
    dims = list(dims)
    n = len(dims)
    order = list(order)
    t = np.asarray(matrix).reshape(dims + dims)
    t = np.transpose(t, axes=order + [i + n for i in order])
    d = math.prod(dims)
    return np.ascontiguousarray(t.reshape(d, d))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every party not in ``keep``.

    ``keep`` is a nonempty subset of the state's labels; the result keeps the
    surviving parties in the state's original order.  Tracing over the full
    label set returns the state unchanged.
    """
    keep = list(keep) if not isinstance(keep, str) else [keep]
    if not keep:
        raise UnknownLabel("keep must name at least one party")
    keep_idx = sorted(set(rho.dims.indices_of(keep)))
    dims = list(rho.dims.dims)
    n = len(dims)
    if len(keep_idx) == n:
        return DensityMatrix(rho.dims, rho.matrix.copy())

    trace_idx = [i for i in range(n) if i not in keep_idx]
    cur = list(dims)
    t = rho.matrix.reshape(cur + cur)
    for ax in sorted(trace_idx, reverse=True):
        m = len(cur)
        t = np.trace(t, axis1=ax, axis2=ax + m)
        cur.pop(ax)
    d = math.prod(cur)
    sub = DimensionList(
        tuple(dims[i] for i in keep_idx), tuple(rho.dims.labels[i] for i in keep_idx)
    )
    return DensityMatrix(sub, np.ascontiguousarray(t.reshape(d, d)))


def validate_density(matrix: np.ndarray, dims: DimensionList) -> DensityMatrix:
    """Gate an untrusted matrix into a :class:`DensityMatrix`.

    Accepts iff the matrix is Hermitian (1e-8), has unit trace (1e-8) and a
    spectrum bounded below by -1e-8.  Eigenvalues in [-1e-8, 0) are clamped
    to zero and the spectrum is renormalized; more negative spectra are
    rejected.

    Raises
    ------
    NotDensityMatrix
        naming the violated property.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotDensityMatrix(f"shape: expected a square matrix, got {m.shape}")
    if m.shape[0] != dims.total:
        raise NotDensityMatrix(
            f"shape: matrix side {m.shape[0]} does not match product of dims {dims.dims}"
        )
    if not np.all(np.isfinite(m)):
        raise NotDensityMatrix("finiteness: matrix contains NaN or Inf entries")
    if np.max(np.abs(m - m.conj().T)) > DENSITY_ATOL:
        raise NotDensityMatrix("hermiticity: max |m - m^dagger| exceeds 1e-8")
    tr = np.trace(m)
    if abs(tr - 1.0) > DENSITY_ATOL:
        raise NotDensityMatrix(f"trace: tr(m) = {tr.real:.12g}, expected 1 within 1e-8")

    vals, vecs = hermitian_eig(m)
    if vals[-1] < -EIG_CLAMP:
        raise NotDensityMatrix(
            f"positivity: eigenvalue {vals[-1]:.3e} below the -1e-8 clamping threshold"
        )
    if vals[-1] >= 0.0 and abs(tr - 1.0) <= 1e-15:
        return DensityMatrix(dims, (m + m.conj().T) / 2.0)
    clamped = np.clip(vals, 0.0, None)
    clamped /= clamped.sum()
    rebuilt = (vecs * clamped) @ vecs.conj().T
    return DensityMatrix(dims, (rebuilt + rebuilt.conj().T) / 2.0)
