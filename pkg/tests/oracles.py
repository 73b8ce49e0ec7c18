"""Independent brute-force oracles used by the tests.

Everything here works on raw numpy matrices and avoids the package's
measurement/optimization code entirely, so that optimizer results can be
checked against an implementation-independent route.
"""

import numpy as np

GRID_THETA = 721
GRID_PHI = 1441


def entropy_bits(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-13]
    return float(-(w * np.log2(w)).sum()) if w.size else 0.0


def partial_trace_raw(rho: np.ndarray, keep, dims) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    keep = sorted(keep)
    t = rho.reshape(dims + dims)
    for ax in sorted((i for i in range(n) if i not in keep), reverse=True):
        m = len(t.shape) // 2
        t = np.trace(t, axis1=ax, axis2=ax + m)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def _bloch_columns(thetas, phis):
    """All (v0, v1) basis pairs of a (theta, phi) grid, each (G, 2)."""
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt = tt.ravel()
    pp = pp.ravel()
    v0 = np.stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)], axis=1)
    v1 = np.stack([-np.sin(tt / 2), np.exp(1j * pp) * np.cos(tt / 2)], axis=1)
    return v0, v1


def _h_rows(lam: np.ndarray) -> np.ndarray:
    safe = np.maximum(lam, 1e-300)
    term = np.where(lam >= 1e-12, lam * np.log2(safe), 0.0)
    return -term.sum(axis=-1)


def _eig2_raw(blocks: np.ndarray):
    """Eigenvalues of a stack of 2x2 Hermitian blocks plus their traces."""
    t = np.real(blocks[:, 0, 0] + blocks[:, 1, 1])
    det = np.real(blocks[:, 0, 0] * blocks[:, 1, 1]) - np.abs(blocks[:, 0, 1]) ** 2
    gap = np.sqrt(np.maximum(t * t - 4.0 * det, 0.0))
    lam = np.stack([(t - gap) / 2, (t + gap) / 2], axis=1)
    return np.clip(lam, 0.0, None), np.clip(t, 0.0, None)


def grid_avg_conditional_entropy(rho4: np.ndarray, n_theta=GRID_THETA, n_phi=GRID_PHI,
                                 chunk=200_000) -> np.ndarray:
    """Average conditional entropy of qubit 2 after measuring qubit 1 of a
    two-qubit state, over a dense Bloch-angle grid.  Returns all grid values.
    """
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    v0, v1 = _bloch_columns(thetas, phis)
    r = rho4.reshape(2, 2, 2, 2)
    out = np.empty(v0.shape[0])
    for lo in range(0, v0.shape[0], chunk):
        hi = min(lo + chunk, v0.shape[0])
        total = np.zeros(hi - lo)
        for v in (v0[lo:hi], v1[lo:hi]):
            blk = np.einsum("gk,kalb,gl->gab", v.conj(), r, v)
            lam, p = _eig2_raw(blk)
            total += _h_rows(lam) + np.where(p >= 1e-12, p * np.log2(np.maximum(p, 1e-300)), 0.0)
        out[lo:hi] = total
    return out


def grid_dephased_entropy(rho4: np.ndarray, n_theta=GRID_THETA, n_phi=GRID_PHI,
                          chunk=200_000) -> np.ndarray:
    """Entropy of the state dephased in each grid basis on qubit 1."""
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    v0, v1 = _bloch_columns(thetas, phis)
    r = rho4.reshape(2, 2, 2, 2)
    out = np.empty(v0.shape[0])
    for lo in range(0, v0.shape[0], chunk):
        hi = min(lo + chunk, v0.shape[0])
        lam_all = []
        for v in (v0[lo:hi], v1[lo:hi]):
            blk = np.einsum("gk,kalb,gl->gab", v.conj(), r, v)
            lam, _ = _eig2_raw(blk)
            lam_all.append(lam)
        out[lo:hi] = _h_rows(np.concatenate(lam_all, axis=1))
    return out


def random_two_qubit_mixed(seed: int) -> np.ndarray:
    """Generic rank-4 two-qubit state: 4-qubit Haar vector traced to 2."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    z /= np.linalg.norm(z)
    rho = np.outer(z, z.conj())
    return partial_trace_raw(rho, [0, 1], [2, 2, 2, 2])
