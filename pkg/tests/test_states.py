import json

import numpy as np
import pytest

from qmonogamy.errors import NotDensityMatrix, NotNormalized, OutOfRange, ParseError
from qmonogamy.linalg import DimensionList, partial_trace, validate_density
from qmonogamy.states import (
    as_pure,
    ghz_generalized,
    ghz_n,
    haar_random_pure,
    load_state,
    product_state,
    psi_tilde,
    save_state,
    w_generalized,
)

SQ2 = 1 / np.sqrt(2)


def test_psi_tilde_ghz_point():
    psi = psi_tilde(1.0, 0.5)
    expected = np.zeros(8)
    expected[0] = expected[7] = SQ2
    assert np.max(np.abs(psi.amplitudes - expected)) <= 1e-12


def test_psi_tilde_w_point():
    psi = psi_tilde(1 / 3, 1.0)
    expected = np.zeros(8)
    expected[0b000] = expected[0b101] = expected[0b110] = 1 / np.sqrt(3)
    assert np.max(np.abs(psi.amplitudes - expected)) <= 1e-12


def test_psi_tilde_product_point():
    psi = psi_tilde(1.0, 1.0)
    assert abs(psi.amplitudes[0] - 1.0) <= 1e-12
    assert np.max(np.abs(psi.amplitudes[1:])) == 0.0


def test_psi_tilde_range_check():
    with pytest.raises(OutOfRange):
        psi_tilde(-0.1, 0.5)
    with pytest.raises(OutOfRange):
        psi_tilde(0.5, 1.2)


def test_psi_tilde_lipschitz_on_grid():
    # finite differences bounded by 10 per unit parameter step on [0.01, 1]^2
    grid = np.linspace(0.01, 1.0, 20)
    step = grid[1] - grid[0]
    worst = 0.0
    for p in grid:
        for e in grid:
            base = psi_tilde(p, e).amplitudes
            if p + step <= 1.0:
                dp = np.linalg.norm(psi_tilde(p + step, e).amplitudes - base) / step
                worst = max(worst, dp)
            if e + step <= 1.0:
                de = np.linalg.norm(psi_tilde(p, e + step).amplitudes - base) / step
                worst = max(worst, de)
    assert worst <= 10.0


def test_ghz_generalized():
    psi = ghz_generalized(0.5)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12
    assert abs(psi.amplitudes[0] - SQ2) <= 1e-12
    assert abs(ghz_generalized(1.0).amplitudes[0] - 1.0) <= 1e-12
    nz = np.abs(ghz_generalized(0.3).amplitudes) > 0
    assert nz.sum() == 2
    with pytest.raises(OutOfRange):
        ghz_generalized(1.5)


def test_w_generalized():
    psi = w_generalized(1 / 3, 1 / 3, 1 / 3)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12
    assert abs(psi.amplitudes[0b100] - 1 / np.sqrt(3)) <= 1e-12
    assert abs(w_generalized(1.0, 0.0, 0.0).amplitudes[0b100] - 1.0) <= 1e-12
    assert abs(np.linalg.norm(w_generalized(0.5, 0.3, 0.2).amplitudes) - 1.0) <= 1e-12
    with pytest.raises(NotNormalized):
        w_generalized(0.5, 0.5, 0.5)
    with pytest.raises(OutOfRange):
        w_generalized(1.2, -0.1, -0.1)


def test_haar_determinism_and_norm():
    dims = DimensionList.qubits(3)
    a = haar_random_pure(dims, seed=11)
    b = haar_random_pure(dims, seed=11)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert abs(np.linalg.norm(a.amplitudes) - 1.0) <= 1e-12
    c = haar_random_pure(dims, seed=12)
    assert not np.array_equal(a.amplitudes, c.amplitudes)


def test_haar_mean_reduced_purity():
    # Haar average purity of a one-qubit marginal of two qubits is
    # (dA + dB) / (dA dB + 1) = 4/5; Monte-Carlo with the documented seeds
    dims = DimensionList.qubits(2)
    vals = [
        partial_trace(haar_random_pure(dims, seed=777_000 + k).to_density(), ("A",)).purity()
        for k in range(1000)
    ]
    assert abs(float(np.mean(vals)) - 0.8) <= 0.01


def test_constructors_pass_validation():
    for psi in (psi_tilde(0.4, 0.8), ghz_generalized(0.25), w_generalized(0.5, 0.25, 0.25)):
        dm = psi.to_density()
        validate_density(dm.matrix, dm.dims)


def test_save_load_round_trip(tmp_path):
    path = tmp_path / "ghz.json"
    rho = ghz_n(3).to_density()
    save_state(rho, path)
    back = load_state(path)
    assert np.array_equal(back.matrix, rho.matrix)
    assert back.dims == rho.dims


def test_load_rejects_bad_trace(tmp_path):
    path = tmp_path / "bad.json"
    doc = {
        "dims": [2],
        "labels": ["A"],
        "matrix": [[2.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    }
    path.write_text(json.dumps(doc))
    with pytest.raises(NotDensityMatrix):
        load_state(path)


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_state(path)


def test_load_rejects_wrong_schema(tmp_path):
    path = tmp_path / "schema.json"
    path.write_text(json.dumps({"dims": [2], "labels": ["A"]}))
    with pytest.raises(ParseError):
        load_state(path)


def test_as_pure_round_trip():
    psi = haar_random_pure(DimensionList.qubits(3), seed=4)
    back = as_pure(psi.to_density())
    overlap = abs(np.vdot(back.amplitudes, psi.amplitudes))
    assert abs(overlap - 1.0) <= 1e-9


def test_as_pure_rejects_mixed():
    from qmonogamy.errors import NotPure

    mixed = validate_density(np.eye(8) / 8, DimensionList.qubits(3))
    with pytest.raises(NotPure):
        as_pure(mixed)


def test_product_state_and_ghz_n():
    assert abs(product_state(4).amplitudes[0] - 1.0) == 0.0
    g = ghz_n(4)
    assert abs(g.amplitudes[0] - SQ2) <= 1e-12
    assert abs(g.amplitudes[-1] - SQ2) <= 1e-12
