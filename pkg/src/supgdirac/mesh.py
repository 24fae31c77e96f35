"""Exponentially graded radial meshes and the per-node SUPG stability parameter."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class MeshConfig:
    """Exponential mesh on ``[a, b]`` with ``n`` interior nodes.

    ``epsilon`` is the node intensity parameter: smaller values pull more
    nodes towards ``a``.
    """

    a: float
    b: float
    n: int
    epsilon: float = 1e-4

    def __post_init__(self):
        if not 0 <= self.a < self.b:
            raise ConfigError(f"need 0 <= a < b, got a={self.a}, b={self.b}")
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f"need at least 2 interior nodes, got n={self.n}")
        if not 0 < self.epsilon <= 1:
            raise ConfigError(f"epsilon must lie in (0, 1], got {self.epsilon}")


@dataclass(frozen=True, eq=False)
class Mesh:
    """Nodes ``r_0 < r_1 < ... < r_{n+1}``; nodes 1..n carry unknowns."""

    nodes: np.ndarray
    label: str = field(default="mesh")

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 4:
            raise ConfigError("a mesh needs at least 2 interior nodes")
        if np.any(np.diff(nodes) <= 0):
            raise ConfigError("mesh nodes must be strictly increasing")
        if nodes[0] < 0:
            raise ConfigError("radial mesh must start at r >= 0")
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def n(self) -> int:
        """Number of interior nodes."""
        return self.nodes.size - 2

    @property
    def a(self) -> float:
        return float(self.nodes[0])

    @property
    def b(self) -> float:
        return float(self.nodes[-1])

    @property
    def steps(self) -> np.ndarray:
        """``h_j = r_j - r_{j-1}`` for ``j = 1..n+1`` (stored 0-based)."""
        return np.diff(self.nodes)

    @property
    def taus(self) -> np.ndarray:
        """Stability parameter for interior nodes ``1..n`` (stored 0-based).

        Step differences at the rounding level of the node coordinates are
        set to zero, so equally spaced nodes give ``tau == 0`` exactly.
        """
        h = self.steps
        dh = h[1:] - h[:-1]
        noise = 8 * np.finfo(float).eps * np.maximum(np.abs(self.nodes[:-2]), np.abs(self.nodes[2:]))
        return np.where(np.abs(dh) <= noise, 0.0, dh / 3.0)


def exponential_nodes(a: float, b: float, n: int, epsilon: float) -> np.ndarray:
    """``exp(ln(a+eps) + i (ln(b+eps) - ln(a+eps)) / (n+1)) - eps`` for ``i = 0..n+1``."""
    lo, hi = np.log(a + epsilon), np.log(b + epsilon)
    r = np.exp(lo + (hi - lo) / (n + 1) * np.arange(n + 2)) - epsilon
    # pin endpoints against rounding
    r[0], r[-1] = a, b
    return r


def generate_exponential(config: MeshConfig) -> Mesh:
    a, b, n, eps = config.a, config.b, config.n, config.epsilon
    return Mesh(exponential_nodes(a, b, n, eps), label=f"exp(a={a!r},b={b!r},n={n},eps={eps!r})")


def generate_uniform(a: float, b: float, n: int) -> Mesh:
    if not 0 <= a < b or n < 2:
        raise ConfigError("need 0 <= a < b and n >= 2")
    return Mesh(np.linspace(a, b, n + 2), label=f"uniform(a={a!r},b={b!r},n={n})")


def generate_two_segment(
    a: float, R: float, b: float, n_inner: int, n_outer: int, epsilon: float = 1e-4
) -> Mesh:
    """Join exponential meshes on ``[a, R]`` and ``[R, b]`` at the shared node ``R``.

    ``n_inner`` nodes lie in ``(a, R]`` (the last one is ``R`` itself) and
    ``n_outer`` in ``(R, b)``, so the mesh has ``n_inner + n_outer`` interior
    nodes.
    """
    if not a < R < b:
        raise ConfigError(f"need a < R < b, got {a}, {R}, {b}")
    if n_inner < 3 or n_outer < 2:
        raise ConfigError("each segment needs a few nodes")
    inner = generate_exponential(MeshConfig(a, R, n_inner - 1, epsilon)).nodes
    outer = generate_exponential(MeshConfig(R, b, n_outer, epsilon)).nodes
    nodes = np.concatenate([inner, outer[1:]])
    return Mesh(nodes, label=f"two-segment(a={a!r},R={R!r},b={b!r},{n_inner}+{n_outer},eps={epsilon!r})")


def tau(mesh: Mesh, j: int) -> float:
    """Stability parameter ``(h_{j+1} - h_j) / 3`` at interior node ``j`` (1-based)."""
    if not 1 <= j <= mesh.n:
        raise IndexError(f"interior node index must be in [1, {mesh.n}], got {j}")
    return float(mesh.taus[j - 1])


def neighbor_estimates(zeta, xi, h_prev, h_next, lam, m=1.0, c=1.0):
    """Far-field estimates of the nodal values at ``r_{j-1}`` and ``r_{j+1}``.

    Far from the nucleus the radial system reduces to ``m c^2 f - c g' = lam f``
    and ``c f' - m c^2 g = lam g``.  One-sided differences at node ``j`` then
    express the neighbours through ``zeta = f(r_j)`` and ``xi = g(r_j)``.

    Returns
    -------
    zeta_prev, zeta_next, xi_prev, xi_next
    """
    zeta_prev = zeta + (-m * c * h_prev - h_prev / c * lam) * xi
    zeta_next = zeta + (m * c * h_next + h_next / c * lam) * xi
    xi_prev = xi + (-m * c * h_prev + h_prev / c * lam) * zeta
    xi_next = xi + (m * c * h_next - h_next / c * lam) * zeta
    return zeta_prev, zeta_next, xi_prev, xi_next
