"""Hypersurface descriptors: sphere, hyperplane and the empty surface.

All operations are vectorized over points: an argument of shape ``(..., d)``
yields results with the leading batch shape preserved. Descriptors are
immutable and every operation is pure, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPHERE = "sphere"
HYPERPLANE = "hyperplane"
EMPTY = "empty"

# Default relative tolerance for "point lies on the surface" checks.
ON_SURFACE_RTOL = 1e-9


class NotUniquelyProjectable(ValueError):
    """The nearest surface point is not unique (distance >= reach).

    Signals that the caller must shrink its neighborhood parameter.
    """


class NotOnSurface(ValueError):
    """A point expected on the surface lies too far from it."""


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HypersurfaceDescriptor:
    """A closed-form hypersurface with distance/projection/normal primitives.

    Use the :func:`sphere`, :func:`hyperplane` and :func:`empty_surface`
    constructors instead of instantiating directly.

    Attributes
    ----------
    kind : str
        One of ``"sphere"``, ``"hyperplane"``, ``"empty"``.
    dim : int
        Ambient dimension d.
    center, radius : sphere parameters (outward-oriented normal).
    normal, offset : hyperplane parameters; the surface is
        ``{x : normal.x = offset}`` with ``||normal|| = 1``.
    """

    kind: str
    dim: int
    center: np.ndarray | None = None
    radius: float | None = None
    normal: np.ndarray | None = None
    offset: float | None = field(default=None)

    @property
    def reach(self) -> float:
        """Largest eps such that the eps-neighborhood projects uniquely."""
        if self.kind == SPHERE:
            return float(self.radius)
        return np.inf

    def _signed(self, x: np.ndarray) -> np.ndarray:
        """Signed distance, positive on the chosen normal's side."""
        x = np.asarray(x, dtype=float)
        if self.kind == SPHERE:
            return np.linalg.norm(x - self.center, axis=-1) - self.radius
        if self.kind == HYPERPLANE:
            return x @ self.normal - self.offset
        return np.full(x.shape[:-1], np.inf)

    def distance(self, x: np.ndarray) -> np.ndarray | float:
        """Euclidean distance to the surface; +inf for the empty surface."""
        d = np.abs(self._signed(x))
        return float(d) if d.ndim == 0 else d

    def project(self, x: np.ndarray) -> np.ndarray:
        """Nearest surface point.

        Requires ``distance(x) < reach``; raises
        :class:`NotUniquelyProjectable` otherwise (e.g. the sphere center).
        """
        x = np.asarray(x, dtype=float)
        if self.kind == EMPTY:
            raise NotUniquelyProjectable("the empty surface has no projection")
        d = np.abs(self._signed(x))
        if np.any(d >= self.reach):
            raise NotUniquelyProjectable(
                f"distance {np.max(d):.6g} >= reach {self.reach:.6g}"
            )
        if self.kind == SPHERE:
            v = x - self.center
            nrm = np.linalg.norm(v, axis=-1, keepdims=True)
            return self.center + self.radius * v / nrm
        return x - np.multiply.outer(x @ self.normal - self.offset, self.normal)

    def unit_normal(self, y: np.ndarray, rtol: float = ON_SURFACE_RTOL) -> np.ndarray:
        """Unit normal at a point on the surface.

        The orientation is outward for spheres and the stored normal for
        hyperplanes. Raises :class:`NotOnSurface` when
        ``distance(y) > rtol * (1 + ||y||)``.
        """
        y = np.asarray(y, dtype=float)
        if self.kind == EMPTY:
            raise NotOnSurface("no point lies on the empty surface")
        tol = rtol * (1.0 + np.linalg.norm(y, axis=-1))
        if np.any(np.abs(self._signed(y)) > tol):
            raise NotOnSurface("point is not on the surface within tolerance")
        if self.kind == SPHERE:
            v = y - self.center
            return v / np.linalg.norm(v, axis=-1, keepdims=True)
        return np.broadcast_to(self.normal, y.shape).copy()

    def side(self, x: np.ndarray, tol: float = 0.0) -> np.ndarray | int:
        """Which side of the surface x lies on: +1, -1, or 0 on the surface.

        The + side is swept by the chosen normal (outside for spheres);
        ``side == 0`` iff ``distance(x) <= tol``. Requires
        ``distance(x) < reach`` except for the empty surface, which reports
        +1 everywhere.
        """
        x = np.asarray(x, dtype=float)
        if self.kind == EMPTY:
            s = np.ones(x.shape[:-1], dtype=int)
            return int(s) if s.ndim == 0 else s
        sd = self._signed(x)
        if np.any(np.abs(sd) >= self.reach):
            raise NotUniquelyProjectable(
                f"distance {np.max(np.abs(sd)):.6g} >= reach {self.reach:.6g}"
            )
        s = np.sign(sd).astype(int)
        s = np.where(np.abs(sd) <= tol, 0, s)
        return int(s) if s.ndim == 0 else s

    def sample(self, rng: np.random.Generator, count: int, spread: float = 1.0) -> np.ndarray:
        """Random points on the surface, for sampled validation only.

        Spheres are sampled uniformly; hyperplanes get Gaussian tangential
        offsets of scale ``spread`` around the foot of the normal.
        """
        if self.kind == SPHERE:
            v = rng.standard_normal((count, self.dim))
            v /= np.linalg.norm(v, axis=-1, keepdims=True)
            return self.center + self.radius * v
        if self.kind == HYPERPLANE:
            g = rng.standard_normal((count, self.dim)) * spread
            g -= np.multiply.outer(g @ self.normal, self.normal)
            return g + self.offset * self.normal
        raise NotOnSurface("cannot sample the empty surface")


def sphere(center, radius: float) -> HypersurfaceDescriptor:
    """Sphere of given center and radius > 0, outward normal, reach = radius."""
    center = _readonly(np.atleast_1d(center))
    if not radius > 0:
        raise ValueError(f"sphere radius must be positive, got {radius}")
    return HypersurfaceDescriptor(
        kind=SPHERE, dim=center.shape[0], center=center, radius=float(radius)
    )


def hyperplane(normal, offset: float) -> HypersurfaceDescriptor:
    """Hyperplane {x : normal.x = offset} with a unit normal, infinite reach."""
    normal = _readonly(np.atleast_1d(normal))
    nrm = np.linalg.norm(normal)
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"hyperplane normal must be unit length, got norm {nrm!r}")
    return HypersurfaceDescriptor(
        kind=HYPERPLANE, dim=normal.shape[0], normal=normal, offset=float(offset)
    )


def empty_surface(dim: int) -> HypersurfaceDescriptor:
    """The empty exceptional set: distance +inf, side +1 everywhere."""
    return HypersurfaceDescriptor(kind=EMPTY, dim=int(dim))


def on_surface_mask(
    surface: HypersurfaceDescriptor, x: np.ndarray, rtol: float = 1e-12
) -> np.ndarray:
    """Boolean mask of points within ``rtol * (1 + ||x||)`` of the surface.

    This is the shared "on the exceptional set" convention used by the
    derivative fields and the transform.
    """
    x = np.asarray(x, dtype=float)
    if surface.kind == EMPTY:
        return np.zeros(x.shape[:-1], dtype=bool)
    d = np.abs(surface._signed(x))
    return d <= rtol * (1.0 + np.linalg.norm(x, axis=-1))
