"""Oscillator-basis transform tests: matrix anchors, intertwining, detectors."""

import numpy as np
import pytest

from quantaequiv.rieffel import (
    Grid2n,
    GridError,
    GridFunction,
    TruncationError,
    WeylMatrix,
    moyal_product,
    oscillator_momentum,
    oscillator_position,
    weyl_homomorphism_residual,
    weyl_transform,
)

HBAR = 0.1


@pytest.fixture(scope="module")
def grid():
    return Grid2n(1, 256, 20.0)


@pytest.fixture(scope="module")
def window(grid):
    # flat to ~1e-7 inside radius 1.4, gone by radius 3.2
    def fn(x, p):
        r2 = (x * x + p * p) / 2.8**2
        return np.exp(-(r2**12))

    return GridFunction.from_callable(grid, fn)


@pytest.fixture(scope="module")
def gaussian_pair(grid):
    f = GridFunction.gaussian(grid, (0.5, 0.0), 1.0)
    g = GridFunction.gaussian(grid, (-0.4, 0.3), 2.0 / 3.0)
    return f, g


class TestOscillatorMatrices:
    def test_position_is_the_standard_tridiagonal(self):
        q = oscillator_position(6, HBAR)
        off = np.sqrt(0.5 * HBAR * np.arange(1, 6))
        assert np.allclose(np.diag(q, 1), off)
        assert np.allclose(np.diag(q, -1), off)
        assert np.allclose(np.diag(q), 0.0)

    def test_commutator_on_the_interior(self):
        n = 40
        q, p = oscillator_position(n, HBAR), oscillator_momentum(n, HBAR)
        comm = (q @ p - p @ q)[: n - 1, : n - 1]
        assert np.max(np.abs(comm - 1j * HBAR * np.eye(n - 1))) <= 1e-13

    def test_hermiticity(self):
        for mat in (oscillator_position(12, HBAR), oscillator_momentum(12, HBAR)):
            assert np.max(np.abs(mat - mat.conj().T)) == 0.0


class TestWeylMatrix:
    def test_hermiticity_defect(self):
        entries = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, 3.0]])
        assert WeylMatrix(2, entries).hermiticity_defect() == 0.0
        skew = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert WeylMatrix(2, skew).hermiticity_defect() == pytest.approx(2.0)


class TestWeylTransform:
    def test_window_gives_identity_block(self, window):
        mat = weyl_transform(window, HBAR, 64)
        block = mat.entries[:10, :10]
        assert np.max(np.abs(block - np.eye(10))) <= 1e-6

    def test_windowed_coordinate_gives_position_block(self, grid, window):
        xw = GridFunction.from_callable(grid, lambda x, p: x) * window
        mat = weyl_transform(xw, HBAR, 64)
        ref = oscillator_position(64, HBAR)
        assert np.max(np.abs(mat.entries[:10, :10] - ref[:10, :10])) <= 1e-6

    def test_real_input_gives_hermitian_matrix(self, gaussian_pair):
        f, _ = gaussian_pair
        mat = weyl_transform(f, HBAR, 48)
        assert mat.hermiticity_defect() <= 1e-12

    def test_zero_function(self, grid):
        zero = GridFunction.from_callable(grid, lambda x, p: np.zeros_like(x))
        mat = weyl_transform(zero, HBAR, 32)
        assert np.max(np.abs(mat.entries)) == 0.0

    def test_input_validation(self, gaussian_pair):
        f, _ = gaussian_pair
        with pytest.raises(GridError):
            weyl_transform(f, HBAR, 8)
        with pytest.raises(GridError):
            weyl_transform(f, 0.0, 64)
        four = Grid2n(2, 32, 10.0)
        g4 = GridFunction.gaussian(four, (0.0, 0.0, 0.0, 0.0), 1.0)
        with pytest.raises(GridError):
            weyl_transform(g4, HBAR, 64)


class TestTruncationDetector:
    def test_small_truncation_rejected(self, gaussian_pair):
        f, _ = gaussian_pair
        with pytest.raises(TruncationError):
            weyl_transform(f, HBAR, 16)

    def test_wide_support_rejected(self, grid):
        def fn(x, p):
            r2 = (x * x + p * p) / 7.0**2
            return np.exp(-(r2**6))

        wide = GridFunction.from_callable(grid, fn)
        with pytest.raises(TruncationError):
            weyl_transform(wide, HBAR, 64)

    def test_threshold_is_overridable(self, gaussian_pair):
        f, _ = gaussian_pair
        mat = weyl_transform(f, HBAR, 16, support_tail=1.0)
        assert mat.dim == 16


@pytest.fixture(scope="module")
def residuals(gaussian_pair):
    f, g = gaussian_pair
    star = moyal_product(f, g, HBAR)
    out = {}
    for n in (32, 64, 128):
        wf = weyl_transform(f, HBAR, n, support_tail=1.0)
        wg = weyl_transform(g, HBAR, n, support_tail=1.0)
        ws = weyl_transform(star, HBAR, n, support_tail=1.0)
        out[n] = weyl_homomorphism_residual(ws, wf, wg)
    return out


class TestIntertwining:
    def test_residual_small_at_reference_truncation(self, residuals):
        assert residuals[64] <= 1e-3

    def test_residual_decreases_monotonically(self, residuals):
        assert residuals[32] > residuals[64] > residuals[128]

    def test_residual_magnitudes(self, residuals):
        assert 1e-5 <= residuals[32] <= 1e-2
        assert 1e-8 <= residuals[64] <= 1e-4
        assert residuals[128] <= 1e-9

    def test_residual_validation(self):
        a = WeylMatrix(4, np.eye(4, dtype=complex))
        b = WeylMatrix(6, np.eye(6, dtype=complex))
        with pytest.raises(GridError):
            weyl_homomorphism_residual(a, a, b)
        with pytest.raises(GridError):
            weyl_homomorphism_residual(a, a, a, block=9)

    def test_exact_for_matching_products(self):
        rng = np.random.default_rng(7)
        m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        a, b = WeylMatrix(16, m), WeylMatrix(16, m @ m)
        assert weyl_homomorphism_residual(b, a, a) <= 1e-12
