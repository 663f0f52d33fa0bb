"""Discrete bosonic-bath mode grids and the spectral sums built on them.

Units are dimensionless throughout: the reference frequency, reference
momentum and coupling-normalization momentum are all 1, so times are
measured in inverse reference frequencies and lengths in inverse reference
momenta.  A channel has dispersion omega(k) = |k|**z_exp and coupling weight
|u_k|**2 = |k|**(2*s_exp); modes live on the momentum lattice k = (2*pi/L)*n
for nonzero integer vectors n, cut off at omega <= omega_c.

Two grid representations are supported.  The dense form stores every integer
vector and supports position-dependent sums.  The radial form groups modes by
|n|**2 with integer multiplicities; dispersion and coupling weight depend
only on |k|, so isotropic sums (the decoherence function, saturation values)
are algebraically identical on either form while the radial one stays small
even for 3-dimensional baths with tens of millions of modes.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CapabilityError, DegenerateInputError, DimensionError

DEFAULT_MODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class BathChannel:
    """One decoherence channel: axis label, exponents, bare coupling."""

    axis: str
    z_exp: float
    s_exp: float
    lam: float

    def __post_init__(self) -> None:
        if self.axis not in ("x", "z"):
            raise ValueError(f"channel axis must be 'x' or 'z', got {self.axis!r}")
        if self.z_exp <= 0:
            raise ValueError("dynamical exponent z_exp must be positive")
        if self.lam < 0:
            raise ValueError("bare coupling must be non-negative")


@dataclass(frozen=True)
class BathGeometry:
    """Spatial dimension, linear size and UV frequency cutoff of the bath."""

    D: int
    L: float
    omega_c: float

    def __post_init__(self) -> None:
        if self.D not in (1, 2, 3):
            raise ValueError("bath dimension D must be 1, 2 or 3")
        if self.L <= 0:
            raise ValueError("bath size L must be positive")
        if self.omega_c <= 0:
            raise ValueError("cutoff omega_c must be positive")


@dataclass(eq=False)
class ModeGrid:
    """Momentum lattice of one channel, dense or radially compressed.

    omega, u2 and weight are aligned arrays; weight is the integer
    multiplicity of each stored record (all ones for dense grids).  Dense
    grids additionally carry the integer vectors n with k = (2*pi/L)*n.

    Instances are value objects: build once, share read-only.  The two
    internal caches (damping weights, register structure factors) are
    idempotent, so a rare concurrent recomputation is harmless.
    """

    D: int
    L: float
    omega: np.ndarray
    u2: np.ndarray
    weight: np.ndarray
    n: np.ndarray | None = field(default=None, repr=False)

    @property
    def prefactor(self) -> float:
        return (2.0 * math.pi / self.L) ** self.D

    @property
    def stored_count(self) -> int:
        return len(self.omega)

    @property
    def mode_count(self) -> int:
        """Number of lattice modes represented (multiplicities included)."""
        return int(round(float(np.sum(self.weight))))

    @property
    def is_radial(self) -> bool:
        return self.n is None

    def k_vectors(self) -> np.ndarray:
        """Momentum vectors (N, D) of a dense grid."""
        if self.n is None:
            raise CapabilityError(
                "radial grid does not store mode vectors; build a dense grid "
                "for position-dependent sums"
            )
        return self.n * (2.0 * math.pi / self.L)

    @cached_property
    def damping_weights(self) -> np.ndarray:
        """weight * |u|^2 / omega^2, the static kernel of all dephasing sums."""
        return self.weight * self.u2 / (self.omega * self.omega)

    @property
    def static_sum(self) -> float:
        """sum over modes of |u|^2 / omega^2 (no lattice prefactor)."""
        return float(np.sum(self.damping_weights))


def _isqrt_exact(values: np.ndarray) -> np.ndarray:
    """Elementwise integer sqrt of non-negative int64 values, exact."""
    r = np.floor(np.sqrt(values.astype(np.float64))).astype(np.int64)
    r = np.where((r + 1) * (r + 1) <= values, r + 1, r)
    return np.where(r * r > values, r - 1, r)


def _lattice_extent(geom: BathGeometry, ch: BathChannel) -> tuple[int, int]:
    """(n_max, m2max): largest |n| and |n|^2 passing the frequency cutoff."""
    k_c = geom.omega_c ** (1.0 / ch.z_exp)
    dk = 2.0 * math.pi / geom.L
    # tiny relative slack so k = k_c lands inside despite rounding
    n_max = int(math.floor(k_c / dk * (1.0 + 1e-12)))
    if n_max < 1:
        raise DegenerateInputError(
            f"cutoff omega_c={geom.omega_c} lies below the smallest mode "
            f"frequency for L={geom.L}; the grid would be empty"
        )
    return n_max, n_max * n_max


def _count_modes(D: int, m2max: int) -> int:
    """Number of nonzero integer vectors with |n|^2 <= m2max."""
    n_max = math.isqrt(m2max)
    if D == 1:
        return 2 * n_max
    total = 0
    if D == 2:
        n1 = np.arange(-n_max, n_max + 1, dtype=np.int64)
        m = _isqrt_exact(m2max - n1 * n1)
        total = int(np.sum(2 * m + 1))
    else:
        for n1 in range(-n_max, n_max + 1):
            r2 = m2max - n1 * n1
            m1 = math.isqrt(r2)
            n2 = np.arange(-m1, m1 + 1, dtype=np.int64)
            m = _isqrt_exact(r2 - n2 * n2)
            total += int(np.sum(2 * m + 1))
    return total - 1  # exclude the origin


def _check_budget(geom: BathGeometry, count: int, max_modes: int) -> None:
    if count > max_modes:
        raise CapabilityError(
            f"grid for (L={geom.L}, omega_c={geom.omega_c}) needs {count} modes, "
            f"exceeding the budget of {max_modes}"
        )


def _dense_vectors(D: int, m2max: int) -> np.ndarray:
    n_max = math.isqrt(m2max)
    if D == 1:
        ns = np.arange(-n_max, n_max + 1, dtype=np.int64)
        return ns[ns != 0].reshape(-1, 1)
    blocks = []
    if D == 2:
        for n1 in range(-n_max, n_max + 1):
            m = math.isqrt(m2max - n1 * n1)
            n2 = np.arange(-m, m + 1, dtype=np.int64)
            block = np.empty((len(n2), 2), dtype=np.int64)
            block[:, 0] = n1
            block[:, 1] = n2
            blocks.append(block)
    else:
        for n1 in range(-n_max, n_max + 1):
            r2 = m2max - n1 * n1
            m1 = math.isqrt(r2)
            for n2 in range(-m1, m1 + 1):
                m = math.isqrt(r2 - n2 * n2)
                n3 = np.arange(-m, m + 1, dtype=np.int64)
                block = np.empty((len(n3), 3), dtype=np.int64)
                block[:, 0] = n1
                block[:, 1] = n2
                block[:, 2] = n3
                blocks.append(block)
    vectors = np.concatenate(blocks)
    return vectors[np.any(vectors != 0, axis=1)]


def _radial_counts(D: int, m2max: int) -> tuple[np.ndarray, np.ndarray]:
    """(values of |n|^2, multiplicities) over nonzero integer vectors."""
    n_max = math.isqrt(m2max)
    counts = np.zeros(m2max + 1, dtype=np.int64)
    ax = np.arange(-n_max, n_max + 1, dtype=np.int64)
    if D == 1:
        m2 = ax * ax
        counts += np.bincount(m2[m2 <= m2max], minlength=m2max + 1)
    elif D == 2:
        base = ax * ax
        for n1 in ax:
            m2 = base + n1 * n1
            counts += np.bincount(m2[m2 <= m2max], minlength=m2max + 1)
    else:
        yy, zz = np.meshgrid(ax, ax, indexing="ij")
        base = (yy * yy + zz * zz).ravel()
        for n1 in ax:
            m2 = base + n1 * n1
            counts += np.bincount(m2[m2 <= m2max], minlength=m2max + 1)
    counts[0] -= 1  # origin excluded
    idx = np.nonzero(counts)[0]
    return idx, counts[idx]


def _grid_from_radii(
    geom: BathGeometry, ch: BathChannel, m2: np.ndarray, weight: np.ndarray, n: np.ndarray | None
) -> ModeGrid:
    dk = 2.0 * math.pi / geom.L
    k = dk * np.sqrt(m2.astype(np.float64))
    omega = k ** ch.z_exp
    u2 = k ** (2.0 * ch.s_exp)
    return ModeGrid(D=geom.D, L=geom.L, omega=omega, u2=u2, weight=weight, n=n)


def build_mode_grid(
    geom: BathGeometry, ch: BathChannel, max_modes: int = DEFAULT_MODE_BUDGET
) -> ModeGrid:
    """Dense grid: every nonzero integer vector with omega(|k|) <= omega_c."""
    _, m2max = _lattice_extent(geom, ch)
    _check_budget(geom, _count_modes(geom.D, m2max), max_modes)
    n = _dense_vectors(geom.D, m2max)
    m2 = np.sum(n * n, axis=1)
    weight = np.ones(len(n), dtype=np.float64)
    return _grid_from_radii(geom, ch, m2, weight, n)


def build_radial_mode_grid(
    geom: BathGeometry, ch: BathChannel, max_modes: int = DEFAULT_MODE_BUDGET
) -> ModeGrid:
    """Radially compressed grid: one record per |n|^2 value with multiplicity."""
    _, m2max = _lattice_extent(geom, ch)
    _check_budget(geom, _count_modes(geom.D, m2max), max_modes)
    m2, counts = _radial_counts(geom.D, m2max)
    return _grid_from_radii(geom, ch, m2, counts.astype(np.float64), None)


# -- spectral sums -----------------------------------------------------------


def gamma(grid: ModeGrid, lambda_star: float, T: float) -> float:
    """Dephasing decoherence function.

    gamma(T) = (2*pi/L)^D * lambda_star^2 * sum_k (|u_k|^2/omega_k^2) * (1 - cos(omega_k T)).

    Non-negative and bounded by twice the static sum.
    """
    if T < 0:
        raise ValueError("time must be non-negative")
    osc = 1.0 - np.cos(grid.omega * T)
    return grid.prefactor * lambda_star**2 * float(np.dot(grid.damping_weights, osc))


def gamma_infinity(grid: ModeGrid, lambda_star: float) -> float:
    """Long-time mean of gamma: the static sum with the oscillatory term dropped."""
    return grid.prefactor * lambda_star**2 * grid.static_sum


def _pair_kernel(grid: ModeGrid, d: np.ndarray, T: float) -> complex:
    """sum_k (|u|^2/omega^2) e^{-i k.d} (1 - e^{-i omega T}), no prefactor.

    The +-k symmetry of the grid reduces e^{-i k.d} to cos(k.d) exactly.
    """
    w = grid.damping_weights
    if np.any(d):
        w = w * np.cos(grid.k_vectors() @ d)
    re = float(np.dot(w, 1.0 - np.cos(grid.omega * T)))
    im = -float(np.dot(w, np.sin(grid.omega * T)))
    return complex(re, im)


def w_pair(grid: ModeGrid, x: Sequence[float], y: Sequence[float], T: float) -> complex:
    """Pair correlation sum between positions x and y.

    W_{x,y}(T) = (2*pi/L)^D * sum_k (|u_k|^2/omega_k^2) e^{-i k.(x-y)} (1 - e^{-i omega_k T}).

    Symmetric under x <-> y; complex in general (the x = y imaginary part is
    -prefactor * sum (|u|^2/omega^2) sin(omega T)).
    """
    if T < 0:
        raise ValueError("time must be non-negative")
    d = np.atleast_1d(np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64))
    if d.shape != (grid.D,):
        raise DimensionError(f"positions must have dimension {grid.D}")
    return grid.prefactor * _pair_kernel(grid, d, T)


def _register_weights(grid: ModeGrid, pos: np.ndarray) -> np.ndarray:
    """damping_weights * |sum_x e^{i k.x}|^2, memoized per position set.

    The structure factor is T-independent, so time series over a fixed
    register reuse it; a small FIFO memo lives on the grid instance.
    """
    key = pos.tobytes()
    memo: dict[bytes, np.ndarray] = grid.__dict__.setdefault("_register_memo", {})
    cached = memo.get(key)
    if cached is not None:
        return cached
    k = grid.k_vectors()
    f = np.zeros(grid.stored_count, dtype=np.complex128)
    for x in pos:  # one pass per qubit keeps the temporaries mode-sized
        f += np.exp(1j * (k @ x))
    weights = grid.damping_weights * (f.real**2 + f.imag**2)
    if len(memo) >= 8:
        memo.pop(next(iter(memo)))
    memo[key] = weights
    return weights


def w_sum(grid: ModeGrid, positions: np.ndarray, T: float) -> complex:
    """Double sum of w_pair over all ordered position pairs, diagonal included.

    Evaluated through the register structure factor: the pair double sum
    collapses to sum_k (|u|^2/omega^2) |sum_x e^{i k.x}|^2 (1 - e^{-i omega T}),
    algebraically identical to summing w_pair over all pairs.
    """
    if T < 0:
        raise ValueError("time must be non-negative")
    pos = np.asarray(positions, dtype=np.float64)
    if pos.ndim == 1:
        pos = pos[:, None]
    if pos.shape[1] != grid.D:
        raise DimensionError(f"positions must have dimension {grid.D}")
    weights = _register_weights(grid, pos)
    re = float(np.dot(weights, 1.0 - np.cos(grid.omega * T)))
    im = -float(np.dot(weights, np.sin(grid.omega * T)))
    return grid.prefactor * complex(re, im)


# -- qubit geometry ----------------------------------------------------------


def lattice_sites(count: int, dims: int) -> np.ndarray:
    """First `count` sites of a unit-spacing dims-dimensional lattice, centered.

    Sites are taken in lexicographic order from a cube just large enough to
    hold them, then shifted to zero centroid.  dims = 0 collapses everything
    to a single point.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if dims == 0:
        return np.zeros((count, 1))
    side = 1
    while side**dims < count:
        side += 1
    sites = np.array(
        list(itertools.islice(itertools.product(range(side), repeat=dims), count)),
        dtype=np.float64,
    )
    return sites - sites.mean(axis=0)


@dataclass(eq=False)
class QubitLayout:
    """Positions of logical qubits and of the physical sites inside one.

    Offsets and positions are stored with D_x columns; pad to the bath
    dimension with :meth:`padded_logical_positions` / :meth:`padded_offsets`.
    """

    logical_positions: np.ndarray  # (n_logical, max(D_x, 1))
    physical_offsets: np.ndarray  # (n_physical, max(D_x, 1))
    xi: float
    Xi: float
    D_x: int

    def __post_init__(self) -> None:
        self.logical_positions = np.atleast_2d(np.asarray(self.logical_positions, dtype=np.float64))
        self.physical_offsets = np.atleast_2d(np.asarray(self.physical_offsets, dtype=np.float64))
        if self.D_x < 0:
            raise ValueError("array dimension D_x must be non-negative")
        if math.isfinite(self.xi) and math.isfinite(self.Xi) and 10.0 * self.xi > self.Xi:
            warnings.warn(
                f"intra-logical spacing xi={self.xi} is not small against "
                f"inter-logical spacing Xi={self.Xi}; corrections dropped by the "
                "coarse graining may be sizable",
                stacklevel=2,
            )

    @property
    def n_logical(self) -> int:
        return self.logical_positions.shape[0]

    def _pad(self, arr: np.ndarray, D: int) -> np.ndarray:
        if arr.shape[1] > D:
            raise DimensionError(
                f"layout dimension {arr.shape[1]} exceeds bath dimension {D}"
            )
        if arr.shape[1] == D:
            return arr
        out = np.zeros((arr.shape[0], D))
        out[:, : arr.shape[1]] = arr
        return out

    def padded_logical_positions(self, D: int) -> np.ndarray:
        return self._pad(self.logical_positions, D)

    def padded_offsets(self, D: int) -> np.ndarray:
        return self._pad(self.physical_offsets, D)


def regular_layout(
    n_logical: int, Xi: float, D_x: int, xi: float, n_physical: int = 5
) -> QubitLayout:
    """Default geometry: regular lattices at both scales.

    Logical qubits fill a D_x-dimensional lattice with spacing Xi; the
    physical sites of each logical qubit fill a centered D_x-dimensional
    lattice with spacing xi.
    """
    return QubitLayout(
        logical_positions=lattice_sites(n_logical, D_x) * Xi,
        physical_offsets=lattice_sites(n_physical, D_x) * xi,
        xi=xi,
        Xi=Xi,
        D_x=D_x,
    )
