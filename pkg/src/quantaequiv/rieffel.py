"""Grid-based deformed products on phase space.

Functions live on a periodic grid over [-L/2, L/2)^{2n} standing in for
R^{2n}; everything spectral (shifts, derivatives, deformed products) acts
on the trigonometric interpolant, so band-limited inputs are handled
exactly up to round-off.  The deformed product follows the plane-wave rule

    e^{i k.z} * e^{i l.z} = e^{-i hbar sigma(k,l)/2} e^{i (k+l).z}

with sigma(k,l) = k.J l for the standard block form J, the normalization
that expands as  f*g = fg + (i hbar/2){f,g} + O(hbar^2)  against the grid
Poisson bracket.  Because the twist blocks the plain convolution theorem,
products are computed as direct twisted double sums over pruned
significant modes; contributions that would wrap past the Nyquist box are
dropped and accounted by an aliasing detector.

Test functions must decay below a threshold at the domain boundary (the
grid is a torus; the detector keeps wrap-around artifacts out of norms).
"""

import hashlib
import json
import struct
from dataclasses import dataclass
from functools import lru_cache
from math import atan2

import numpy as np
from scipy.linalg import eigh_tridiagonal


class GridError(ValueError):
    """Bad grid parameters or incompatible operands."""


class SupportError(GridError):
    """Function mass too close to the periodic boundary."""


class AliasError(GridError):
    """Twisted convolution pushed significant mass past the Nyquist box."""


class TruncationError(GridError):
    """Oscillator truncation too small for the function's phase-space support."""


@dataclass(frozen=True)
class Grid2n:
    n: int
    points_per_axis: int
    extent: float

    def __post_init__(self):
        if self.n not in (1, 2):
            raise GridError("phase space dimension must be 2 or 4 (n = 1 or 2)")
        p = self.points_per_axis
        if p < 32 or (p & (p - 1)) != 0:
            raise GridError("points_per_axis must be a power of two, at least 32")
        if not (self.extent > 0):
            raise GridError("extent must be positive")

    @property
    def dim(self):
        return 2 * self.n

    @property
    def shape(self):
        return (self.points_per_axis,) * self.dim

    @property
    def spacing(self):
        return self.extent / self.points_per_axis

    @property
    def mode_step(self):
        return 2.0 * np.pi / self.extent

    def axis_coordinates(self):
        p = self.points_per_axis
        return -0.5 * self.extent + self.spacing * np.arange(p)

    def coordinate_mesh(self):
        return np.meshgrid(*([self.axis_coordinates()] * self.dim), indexing="ij")

    def form_matrix(self):
        return _standard_form(self.dim)


def _standard_form(dim):
    n = dim // 2
    j = np.zeros((dim, dim))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


@lru_cache(maxsize=32)
def _int_freqs(points):
    return np.fft.fftfreq(points, d=1.0 / points).astype(np.int64)


@lru_cache(maxsize=32)
def _parity(points, dim):
    # grid origin sits at -L/2, which shows up as a (-1)^m factor per axis
    sign = (-1.0) ** (_int_freqs(points) & 1)
    total = sign
    for _ in range(dim - 1):
        total = np.multiply.outer(total, sign)
    return total


class GridFunction:
    """Immutable complex samples over one grid."""

    __slots__ = ("grid", "samples")

    def __init__(self, grid, samples):
        samples = np.asarray(samples, dtype=np.complex128)
        if samples.shape != grid.shape:
            raise GridError("sample shape does not match the grid")
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise GridError("samples must be finite")
        samples = samples.copy()
        samples.flags.writeable = False
        self.grid = grid
        self.samples = samples

    @classmethod
    def from_callable(cls, grid, fn):
        return cls(grid, fn(*grid.coordinate_mesh()))

    @classmethod
    def gaussian(cls, grid, center, decay, amplitude=1.0):
        """amplitude * exp(-decay * |z - center|^2)."""
        center = np.asarray(center, dtype=float)
        if center.shape != (grid.dim,):
            raise GridError("center must be a phase-space point")
        mesh = grid.coordinate_mesh()
        r2 = sum((m - c) ** 2 for m, c in zip(mesh, center))
        return cls(grid, amplitude * np.exp(-float(decay) * r2))

    def __add__(self, other):
        _require_same_grid(self, other)
        return GridFunction(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        _require_same_grid(self, other)
        return GridFunction(self.grid, self.samples - other.samples)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            _require_same_grid(self, other)
            return GridFunction(self.grid, self.samples * other.samples)
        return GridFunction(self.grid, self.samples * complex(other))

    __rmul__ = __mul__

    def conjugate(self):
        return GridFunction(self.grid, np.conj(self.samples))

    def sup_norm(self):
        return float(np.abs(self.samples).max())

    def boundary_ratio(self):
        """Largest boundary-face magnitude relative to the global maximum."""
        peak = np.abs(self.samples).max()
        if peak == 0.0:
            return 0.0
        worst = 0.0
        for axis in range(self.grid.dim):
            for face in (0, -1):
                sl = [slice(None)] * self.grid.dim
                sl[axis] = face
                worst = max(worst, float(np.abs(self.samples[tuple(sl)]).max()))
        return worst / float(peak)


def _require_same_grid(f, g):
    if f.grid != g.grid:
        raise GridError("functions live on different grids")


def _require_interior_support(f, threshold):
    ratio = f.boundary_ratio()
    if ratio > threshold:
        raise SupportError(
            "boundary mass %.3e exceeds the decay threshold %.1e" % (ratio, threshold)
        )


def _modes(f):
    p = f.grid.points_per_axis
    return np.fft.fftn(f.samples) * _parity(p, f.grid.dim) / p**f.grid.dim


def _from_modes(grid, modes):
    p = grid.points_per_axis
    return np.fft.ifftn(modes * _parity(p, grid.dim)) * p**grid.dim


def _axis_broadcast(values, axis, dim):
    shape = [1] * dim
    shape[axis] = len(values)
    return values.reshape(shape)


def translate(f, x):
    """Compose with the shift z -> z + x, spectrally (exact group law)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (f.grid.dim,):
        raise GridError("shift must be a phase-space vector")
    modes = _modes(f)
    freqs = _int_freqs(f.grid.points_per_axis)
    for axis in range(f.grid.dim):
        phase = np.exp(1j * f.grid.mode_step * freqs * x[axis])
        modes = modes * _axis_broadcast(phase, axis, f.grid.dim)
    return GridFunction(f.grid, _from_modes(f.grid, modes))


def lie_derivative(f, direction):
    """Directional derivative along the translation flow, spectrally."""
    direction = np.asarray(direction, dtype=float)
    if direction.shape != (f.grid.dim,):
        raise GridError("direction must be a phase-space vector")
    modes = _modes(f)
    freqs = _int_freqs(f.grid.points_per_axis)
    factor = np.zeros(f.grid.shape)
    for axis in range(f.grid.dim):
        if direction[axis] != 0.0:
            factor = factor + direction[axis] * _axis_broadcast(
                freqs.astype(float), axis, f.grid.dim
            )
    return GridFunction(
        f.grid, _from_modes(f.grid, modes * (1j * f.grid.mode_step * factor))
    )


def _partial(f, axis):
    direction = np.zeros(f.grid.dim)
    direction[axis] = 1.0
    return lie_derivative(f, direction)


def poisson_bracket_grid(f, g):
    """Canonical bracket sum_j (d_qj f d_pj g - d_pj f d_qj g)."""
    _require_same_grid(f, g)
    n = f.grid.n
    total = np.zeros(f.grid.shape, dtype=np.complex128)
    for j in range(n):
        total += _partial(f, j).samples * _partial(g, n + j).samples
        total -= _partial(f, n + j).samples * _partial(g, j).samples
    return GridFunction(f.grid, total)


def _significant_modes(mode_array, threshold):
    flat = mode_array.reshape(-1)
    mags = np.abs(flat)
    peak = mags.max()
    if peak == 0.0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.complex128)
    idx = np.nonzero(mags > peak * threshold)[0]
    return idx, flat[idx]


def _freq_vectors(grid, flat_idx):
    per_axis = np.unravel_index(flat_idx, grid.shape)
    freqs = _int_freqs(grid.points_per_axis)
    return np.stack([freqs[ix] for ix in per_axis], axis=1)


def moyal_product(
    f,
    g,
    hbar,
    prune_threshold=1e-14,
    alias_tolerance=1e-9,
    boundary_threshold=1e-12,
    chunk=256,
):
    """Twisted mode-space double sum realizing the deformed product.

    Modes below prune_threshold (relative) are dropped; pair contributions
    whose combined frequency leaves the Nyquist box are excluded and their
    mass is compared against alias_tolerance.
    """
    _require_same_grid(f, g)
    if not (hbar >= 0):
        raise GridError("the deformation parameter must be nonnegative")
    _require_interior_support(f, boundary_threshold)
    _require_interior_support(g, boundary_threshold)
    grid = f.grid
    p = grid.points_per_axis
    half = p // 2
    fi, fval = _significant_modes(_modes(f), prune_threshold)
    gi, gval = _significant_modes(_modes(g), prune_threshold)
    out = np.zeros(p**grid.dim, dtype=np.complex128)
    if len(fi) == 0 or len(gi) == 0:
        return GridFunction(grid, _from_modes(grid, out.reshape(grid.shape)))
    fvec = _freq_vectors(grid, fi)
    gvec = _freq_vectors(grid, gi)
    twist_scale = 0.5 * hbar * grid.mode_step**2
    f_j = fvec.astype(float) @ grid.form_matrix()
    alias_mass = 0.0
    total_mass = 0.0
    for start in range(0, len(fi), chunk):
        stop = min(start + chunk, len(fi))
        sigma = f_j[start:stop] @ gvec.T.astype(float)
        contrib = fval[start:stop, None] * gval[None, :] * np.exp(-1j * twist_scale * sigma)
        combined = fvec[start:stop, None, :] + gvec[None, :, :]
        in_range = np.all((combined >= -half) & (combined < half), axis=2)
        mags = np.abs(contrib)
        total_mass += float(mags.sum())
        alias_mass += float(mags[~in_range].sum())
        kept = combined[in_range] % p
        flat = np.ravel_multi_index(tuple(kept.T), grid.shape)
        np.add.at(out, flat, contrib[in_range])
    if total_mass > 0.0 and alias_mass / total_mass > alias_tolerance:
        raise AliasError(
            "aliased mass ratio %.3e exceeds %.1e; refine the grid or widen the domain"
            % (alias_mass / total_mass, alias_tolerance)
        )
    return GridFunction(grid, _from_modes(grid, out.reshape(grid.shape)))


def von_neumann_defect_grid(f, g, hbar, **kwargs):
    """Sup norm of f*g minus the pointwise product."""
    star = moyal_product(f, g, hbar, **kwargs)
    return (star - f * g).sup_norm()


def dirac_defect_grid(f, g, hbar, **kwargs):
    """Sup norm of (f*g - g*f)/(i hbar) minus the Poisson bracket."""
    if not (hbar > 0):
        raise GridError("the commutator comparison needs a positive parameter")
    forward = moyal_product(f, g, hbar, **kwargs)
    backward = moyal_product(g, f, hbar, **kwargs)
    commutator_scaled = (forward - backward) * (1.0 / (1j * hbar))
    return (commutator_scaled - poisson_bracket_grid(f, g)).sup_norm()


# --- affine symplectic morphisms ---------------------------------------------


class AffineSymplecticMap:
    """z -> A z + b with A invertible; symplecticity is queried, not forced.

    Keeping non-symplectic maps constructible is deliberate: the morphism
    defect measurements use them as negative controls.
    """

    __slots__ = ("linear", "offset")

    def __init__(self, linear, offset=None):
        linear = np.array(linear, dtype=float)
        if linear.ndim != 2 or linear.shape[0] != linear.shape[1]:
            raise GridError("linear part must be square")
        if linear.shape[0] % 2 != 0:
            raise GridError("phase space dimension must be even")
        if not np.all(np.isfinite(linear)) or abs(np.linalg.det(linear)) < 1e-12:
            raise GridError("linear part must be finite and invertible")
        if offset is None:
            offset = np.zeros(linear.shape[0])
        offset = np.array(offset, dtype=float)
        if offset.shape != (linear.shape[0],) or not np.all(np.isfinite(offset)):
            raise GridError("offset must be a finite phase-space vector")
        linear.flags.writeable = False
        offset.flags.writeable = False
        self.linear = linear
        self.offset = offset

    @property
    def dim(self):
        return self.linear.shape[0]

    def is_symplectic(self, tol=1e-12):
        j = _standard_form(self.dim)
        defect = self.linear.T @ j @ self.linear - j
        return float(np.abs(defect).max()) <= tol

    def __call__(self, z):
        return self.linear @ np.asarray(z, dtype=float) + self.offset

    def inverse(self):
        inv = np.linalg.inv(self.linear)
        return AffineSymplecticMap(inv, -inv @ self.offset)

    def compose(self, first):
        return AffineSymplecticMap(
            self.linear @ first.linear, self.linear @ first.offset + self.offset
        )

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @classmethod
    def translation(cls, offset):
        return cls(np.eye(len(offset)), offset)

    @classmethod
    def rotation(cls, angle):
        c, s = np.cos(angle), np.sin(angle)
        return cls(np.array([[c, -s], [s, c]]))

    @classmethod
    def shear(cls, amount, upper=True):
        m = np.eye(2)
        if upper:
            m[0, 1] = amount
        else:
            m[1, 0] = amount
        return cls(m)


def pullback(f, phi, prune_threshold=1e-14, boundary_threshold=1e-12, chunk=4096):
    """Composition with an affine map via exact trigonometric synthesis.

    f(Az + b) = sum_k F_k e^{i k.b} e^{i (A^T k).z}, evaluated by rank-one
    sums over the half-axis factorization of the grid.  The result must
    keep its mass interior, otherwise the support escaped the domain.
    """
    if phi.dim != f.grid.dim:
        raise GridError("map dimension does not match the grid")
    _require_interior_support(f, boundary_threshold)
    grid = f.grid
    fi, fval = _significant_modes(_modes(f), prune_threshold)
    if len(fi) == 0:
        return GridFunction(grid, np.zeros(grid.shape))
    kvec = _freq_vectors(grid, fi).astype(float) * grid.mode_step
    alpha = kvec @ phi.linear
    coeff = fval * np.exp(1j * (kvec @ phi.offset))
    x = grid.axis_coordinates()
    half_axes = grid.dim // 2
    rows = grid.points_per_axis**half_axes
    result = np.zeros((rows, rows), dtype=np.complex128)
    for start in range(0, len(coeff), chunk):
        stop = min(start + chunk, len(coeff))
        left = np.ones((rows, stop - start), dtype=np.complex128)
        right = np.ones((rows, stop - start), dtype=np.complex128)
        for axis in range(half_axes):
            idx = _half_axis_indices(grid.points_per_axis, half_axes, axis)
            left *= np.exp(1j * np.outer(x, alpha[start:stop, axis]))[idx]
            right *= np.exp(1j * np.outer(x, alpha[start:stop, half_axes + axis]))[idx]
        result += (left * coeff[start:stop][None, :]) @ right.T
    out = GridFunction(grid, result.reshape(grid.shape))
    if out.boundary_ratio() > boundary_threshold:
        raise SupportError("image support escapes the domain")
    return out


@lru_cache(maxsize=64)
def _half_axis_indices(points, half_axes, axis):
    # per-axis digit of the row-major half-grid row index
    idx = np.arange(points**half_axes)
    return (idx // points ** (half_axes - axis - 1)) % points


def morphism_star_defect(
    phi,
    f,
    g,
    hbar,
    prune_threshold=1e-14,
    alias_tolerance=1e-9,
    boundary_threshold=1e-12,
):
    """Relative sup defect of pullback against the deformed product.

    Small for symplectic affine maps (the product only sees the form),
    large for maps that change the form: the direct numerical shadow of
    quantized-morphism multiplicativity.  Rotated off-center functions keep
    a little periodic leakage near the boundary, so callers measuring at
    coarse tolerances may relax boundary_threshold accordingly.
    """
    star = moyal_product(
        f,
        g,
        hbar,
        prune_threshold=prune_threshold,
        alias_tolerance=alias_tolerance,
        boundary_threshold=boundary_threshold,
    )
    star_then_pull = pullback(
        star, phi, prune_threshold=prune_threshold, boundary_threshold=boundary_threshold
    )
    pull_then_star = moyal_product(
        pullback(f, phi, prune_threshold=prune_threshold, boundary_threshold=boundary_threshold),
        pullback(g, phi, prune_threshold=prune_threshold, boundary_threshold=boundary_threshold),
        hbar,
        prune_threshold=prune_threshold,
        alias_tolerance=alias_tolerance,
        boundary_threshold=boundary_threshold,
    )
    scale = star_then_pull.sup_norm()
    if scale == 0.0:
        return (pull_then_star - star_then_pull).sup_norm()
    return (pull_then_star - star_then_pull).sup_norm() / scale


def equivariance_defect(phi, f, direction, prune_threshold=1e-14, boundary_threshold=1e-12):
    """Relative sup defect of pullback(translate(f, A X)) vs translate(pullback(f), X)."""
    direction = np.asarray(direction, dtype=float)
    lhs = pullback(
        translate(f, phi.linear @ direction),
        phi,
        prune_threshold=prune_threshold,
        boundary_threshold=boundary_threshold,
    )
    rhs = translate(
        pullback(f, phi, prune_threshold=prune_threshold, boundary_threshold=boundary_threshold),
        direction,
    )
    scale = f.sup_norm()
    if scale == 0.0:
        return (lhs - rhs).sup_norm()
    return (lhs - rhs).sup_norm() / scale


# --- oscillator-basis transform (n = 1) -------------------------------------


@dataclass(frozen=True)
class WeylMatrix:
    dim: int
    entries: object

    def hermiticity_defect(self):
        return float(np.abs(self.entries - self.entries.conj().T).max())


def oscillator_position(n_trunc, hbar):
    off = np.sqrt(0.5 * hbar * np.arange(1, n_trunc))
    m = np.zeros((n_trunc, n_trunc), dtype=np.complex128)
    m[np.arange(n_trunc - 1), np.arange(1, n_trunc)] = off
    m[np.arange(1, n_trunc), np.arange(n_trunc - 1)] = off
    return m


def oscillator_momentum(n_trunc, hbar):
    # commutator [Q, P] = +i hbar; plane-wave composition then reproduces
    # the product twist e^{-i hbar sigma/2} used by moyal_product
    off = np.sqrt(0.5 * hbar * np.arange(1, n_trunc))
    m = np.zeros((n_trunc, n_trunc), dtype=np.complex128)
    m[np.arange(n_trunc - 1), np.arange(1, n_trunc)] = -1j * off
    m[np.arange(1, n_trunc), np.arange(n_trunc - 1)] = 1j * off
    return m


def _mode_exponential(n_trunc, hbar, mode_step, class_key):
    """exp(i(k1 Q + k2 P)) reduced to a real tridiagonal problem.

    The Hermitian tridiagonal k1 Q + k2 P is unitarily similar (diagonal
    phases) to a real symmetric tridiagonal depending only on |k|, so one
    eigendecomposition serves every mode with the same |k|^2 class.
    """
    absk = mode_step * np.sqrt(float(class_key))
    off = absk * np.sqrt(0.5 * hbar * np.arange(1, n_trunc))
    w, v = eigh_tridiagonal(np.zeros(n_trunc), off)
    return (v * np.exp(1j * w)) @ v.T


def weyl_transform(
    f,
    hbar,
    n_trunc,
    prune_threshold=1e-14,
    boundary_threshold=1e-12,
    support_tail=1e-3,
):
    """Matrix of the phase-space function in the truncated oscillator basis.

    Builds sum_k F_k exp(i(k1 Q + k2 P)) over significant modes.  Before
    assembling, a trace-residual detector integrates |f|^2 outside the
    classical reach of the highest retained basis state; a tail fraction
    above support_tail means the truncation cannot hold the function's
    phase-space support.  Pass support_tail >= 1 to measure deliberately
    under-resolved truncations (convergence studies).
    """
    if f.grid.n != 1:
        raise GridError("the oscillator representation is built for n = 1")
    if n_trunc < 16:
        raise GridError("truncation size must be at least 16")
    if not (hbar > 0):
        raise GridError("the deformation parameter must be positive")
    _require_interior_support(f, boundary_threshold)
    grid = f.grid

    # trace of |f|^2 beyond the turning radius of the top basis state
    mass = np.abs(f.samples) ** 2
    total_mass = float(mass.sum())
    if total_mass > 0.0:
        reach = np.sqrt(hbar * (2.0 * n_trunc - 1.0))
        radius2 = sum(c**2 for c in grid.coordinate_mesh())
        tail = float(mass[radius2 > reach**2].sum()) / total_mass
        if tail > support_tail:
            raise TruncationError(
                "phase-space mass fraction %.3e beyond the truncation reach %.3f; "
                "increase the truncation" % (tail, reach)
            )
    fi, fval = _significant_modes(_modes(f), prune_threshold)
    mvec = _freq_vectors(grid, fi)
    class_keys = (mvec[:, 0] ** 2 + mvec[:, 1] ** 2).astype(np.int64)

    cache = {}

    def class_exponential(key, size):
        tag = (int(key), size)
        if tag not in cache:
            cache[tag] = _mode_exponential(size, hbar, grid.mode_step, key)
        return cache[tag]

    total = np.zeros((n_trunc, n_trunc), dtype=np.complex128)
    levels = np.arange(n_trunc)
    for j in range(len(fi)):
        key = class_keys[j]
        if key == 0:
            total[np.arange(n_trunc), np.arange(n_trunc)] += fval[j]
            continue
        base = class_exponential(key, n_trunc)
        k1 = grid.mode_step * mvec[j, 0]
        k2 = grid.mode_step * mvec[j, 1]
        phi = atan2(k2, k1)
        phases = np.exp(1j * phi * levels)
        total += fval[j] * (phases[:, None] * base * phases.conj()[None, :])

    return WeylMatrix(n_trunc, total)


def weyl_homomorphism_residual(product_matrix, left_matrix, right_matrix, block=None):
    """Frobenius residual of the transform against the operator product.

    Compared on the leading block (default three quarters of the dimension):
    rows within ~|k|sqrt(hbar N) of the truncation edge never converge
    entrywise, so the intertwining statement is a statement about the
    interior.  At the default block the residual is the edge-band overlap,
    which shrinks steadily as the truncation grows.
    """
    dim = product_matrix.dim
    if not (left_matrix.dim == right_matrix.dim == dim):
        raise GridError("matrices must share one truncation size")
    if block is None:
        block = (3 * dim) // 4
    if not 1 <= block <= dim:
        raise GridError("comparison block must fit inside the matrices")
    composed = (left_matrix.entries @ right_matrix.entries)[:block, :block]
    defect = product_matrix.entries[:block, :block] - composed
    scale = np.linalg.norm(composed)
    if scale == 0.0:
        return float(np.linalg.norm(defect))
    return float(np.linalg.norm(defect) / scale)


# --- quadrature oracle and closed form ---------------------------------------


def moyal_quadrature_oracle(f_callable, g_callable, hbar, points, radius=9.0, nodes=2048):
    """Direct oscillatory-integral evaluation of the deformed product (n=1).

    (f*g)(z) = (pi hbar)^{-2} iint f(z+u) g(z+v) e^{(2i/hbar) sigma(u,v)} du dv
    over u, v in R^2, with sigma(u,v) = u1 v2 - u2 v1.  The phase splits per
    axis pair, so for per-axis separable f and g the quadruple integral is a
    product of two double integrals over (u1,v2) and (u2,v1); each is done on
    a uniform midpoint grid of `nodes` points per axis.  Independent of every
    grid code path; slow on purpose.
    """
    if not (hbar > 0):
        raise GridError("the deformation parameter must be positive")
    step = 2.0 * radius / nodes
    u = -radius + step * (np.arange(nodes) + 0.5)
    wu = np.full(nodes, step)
    kernel = np.exp((2j / hbar) * np.outer(u, u))
    rows = []
    for z in np.atleast_2d(np.asarray(points, dtype=float)):
        fu = f_callable(z[0] + u[:, None], z[1] + u[None, :])
        gv = g_callable(z[0] + u[:, None], z[1] + u[None, :])
        fa, fb = _separate(fu)
        ga, gb = _separate(gv)
        ia = (wu * fa) @ kernel @ (wu * gb)
        ib = (wu * fb) @ kernel.conj() @ (wu * ga)
        rows.append(ia * ib / (np.pi * hbar) ** 2)
    return np.array(rows)


def _separate(values, tol=1e-9):
    """Split a rank-one sample matrix M[i,j] = a[i] b[j]."""
    idx = np.unravel_index(np.argmax(np.abs(values)), values.shape)
    pivot = values[idx]
    if pivot == 0:
        return np.zeros(values.shape[0]), np.zeros(values.shape[1])
    col = values[:, idx[1]]
    row = values[idx[0], :] / pivot
    approx = np.outer(col, row)
    if np.abs(approx - values).max() > tol * np.abs(pivot):
        raise GridError("oracle inputs must factor per axis")
    return col, row


def gaussian_star_closed_form(decay_a, decay_b, hbar):
    """The deformed product of centered radial Gaussians (n = 1).

    exp(-a|z|^2) * exp(-b|z|^2)
        = (1 + a b hbar^2)^{-1} exp(-(a+b)|z|^2 / (1 + a b hbar^2)).
    Returns (prefactor, effective_decay).
    """
    denom = 1.0 + decay_a * decay_b * hbar * hbar
    return 1.0 / denom, (decay_a + decay_b) / denom


# --- schedules and convergence tables ----------------------------------------


def convergence_study(defect_fn, f, g, schedule, floor=1e-12):
    """Defect table along a decreasing schedule with a log-log slope fit."""
    schedule = [float(h) for h in schedule]
    if len(schedule) < 4:
        raise GridError("schedule needs at least 4 points")
    if any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise GridError("schedule must be strictly decreasing")
    rows = [(h, float(defect_fn(f, g, h))) for h in schedule]
    if any(d < floor for _, d in rows):
        return {"rows": rows, "slope": None, "residual": None, "saturated": True}
    logh = np.log([h for h, _ in rows])
    logd = np.log([d for _, d in rows])
    design = np.stack([logh, np.ones_like(logh)], axis=1)
    coef, *_ = np.linalg.lstsq(design, logd, rcond=None)
    fit = design @ coef
    residual = float(np.sqrt(np.mean((logd - fit) ** 2)))
    return {
        "rows": rows,
        "slope": float(coef[0]),
        "residual": residual,
        "saturated": False,
    }


# --- serialization -----------------------------------------------------------

_HEADER = struct.Struct("<3d")


def grid_function_to_bytes(f):
    header = _HEADER.pack(
        float(f.grid.n), float(f.grid.points_per_axis), f.grid.extent
    )
    return header + np.ascontiguousarray(f.samples).tobytes()


def grid_function_from_bytes(data):
    n, points, extent = _HEADER.unpack_from(data, 0)
    grid = Grid2n(int(n), int(points), extent)
    expected = _HEADER.size + 16 * grid.points_per_axis**grid.dim
    if len(data) != expected:
        raise GridError("payload length does not match the header")
    samples = np.frombuffer(data, dtype=np.complex128, offset=_HEADER.size)
    return GridFunction(grid, samples.reshape(grid.shape))


def grid_function_descriptor(f):
    payload = grid_function_to_bytes(f)
    return {
        "schema_version": 1,
        "kind": "grid-function",
        "n": f.grid.n,
        "points_per_axis": f.grid.points_per_axis,
        "extent": f.grid.extent,
        "byte_length": len(payload),
        "header": "n,points,extent as little-endian float64",
        "payload": "row-major complex128",
        "sha256": hashlib.sha256(payload).hexdigest(),
    }


def save_grid_function(f, path):
    path = str(path)
    with open(path, "wb") as fh:
        fh.write(grid_function_to_bytes(f))
    with open(path + ".json", "w") as fh:
        json.dump(grid_function_descriptor(f), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_grid_function(path):
    with open(str(path), "rb") as fh:
        return grid_function_from_bytes(fh.read())
