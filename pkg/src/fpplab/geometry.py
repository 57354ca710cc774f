"""Norms, hyperplanes, slabs, cylinders, projections, and curvature queries.

Conventions.  A direction theta is a Euclidean unit vector.  For a shape
(norm) g, y_theta is the boundary point of the unit g-ball in direction
theta, and the supporting hyperplane there has unit normal n.  The level
hyperplane at height r is H(theta, r) = {u : n.u = r * (n.y_theta)}, and the
signed height Phi(u) = (n.u) / (n.y_theta) is linear, equals r on
H(theta, r), and equals +/- g of the tangential projection of u.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Sequence

import numpy as np

from .lattice import Site, Window

_TOL = 1e-9


class GeometryError(ValueError):
    """Degenerate frames, bad radii, empty probe sets."""


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n <= 0:
        raise GeometryError("zero vector has no direction")
    return v / n


def closest_lattice_point(u) -> Site:
    """Componentwise nearest lattice site; exact half-ties round toward +inf."""
    u = np.asarray(u, dtype=float)
    return tuple(int(c) for c in np.floor(u + 0.5))


# ---------------------------------------------------------------------------
# Shape models
# ---------------------------------------------------------------------------

class ShapeModel:
    """A norm g with supporting-hyperplane queries."""

    dim: int

    def g(self, pts) -> np.ndarray:
        raise NotImplementedError

    def g1(self, pt) -> float:
        return float(self.g(np.asarray(pt, dtype=float)[None, :])[0])

    def support_normal(self, theta) -> np.ndarray:
        """Unit normal of the supporting hyperplane at the boundary point y_theta."""
        raise NotImplementedError

    def y_point(self, theta) -> np.ndarray:
        theta = unit(theta)
        return theta / self.g1(theta)

    def spec(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class L2Shape(ShapeModel):
    dim: int

    def g(self, pts):
        return np.linalg.norm(np.asarray(pts, dtype=float), axis=-1)

    def support_normal(self, theta):
        return unit(theta)

    def spec(self):
        return "l2"


@dataclass(frozen=True)
class WeightedL1Shape(ShapeModel):
    """g(x) = sum_i w_i |x_i|.  Plain l1 is the all-ones special case.

    At boundary points where some coordinate vanishes (edges or vertices of
    the ball) the supporting plane is not unique; averaging the adjacent face
    normals zeroes those components, which keeps the choice deterministic and
    continuous in theta.
    """

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise GeometryError("l1 weights must be positive")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def g(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.abs(pts) @ np.asarray(self.weights)

    def support_normal(self, theta):
        theta = unit(theta)
        n = np.where(np.abs(theta) > _TOL, np.sign(theta) * np.asarray(self.weights), 0.0)
        return unit(n)

    def spec(self):
        if all(w == 1.0 for w in self.weights):
            return "l1"
        return "wl1:" + ":".join(f"{w:g}" for w in self.weights)


def l1_shape(dim: int) -> WeightedL1Shape:
    return WeightedL1Shape((1.0,) * dim)


class EmpiricalShape(ShapeModel):
    """Radial shape from per-direction boundary-radius estimates (d=2 only).

    g(x) = |x| / rho(angle of x), with rho interpolated periodically and
    piecewise-linearly on the angle grid, so homogeneity is exact by
    construction.  Supporting normals come from the gradient of a mollified
    copy of rho (circular Gaussian smoothing), which makes the choice
    deterministic where the raw interpolant has corners.
    """

    dim = 2

    def __init__(self, angles, radii, mollify_sigma: float = 0.02):
        angles = np.asarray(angles, dtype=float) % (2 * math.pi)
        radii = np.asarray(radii, dtype=float)
        if angles.ndim != 1 or angles.shape != radii.shape or angles.size < 4:
            raise GeometryError("need matching angle/radius grids with >= 4 entries")
        if np.any(radii <= 0):
            raise GeometryError("radius estimates must be positive")
        order = np.argsort(angles)
        self.angles = angles[order]
        self.radii = radii[order]
        if np.any(np.diff(self.angles) <= 0):
            raise GeometryError("duplicate angles in shape grid")
        # fine mollified grid for normals
        m = max(720, 8 * angles.size)
        fine = np.linspace(0.0, 2 * math.pi, m, endpoint=False)
        rho = self._rho_raw(fine)
        if mollify_sigma > 0:
            half = int(max(1, round(3 * mollify_sigma / (2 * math.pi / m))))
            offs = np.arange(-half, half + 1)
            kern = np.exp(-0.5 * (offs * (2 * math.pi / m) / mollify_sigma) ** 2)
            kern /= kern.sum()
            rho = np.convolve(np.concatenate([rho[-half:], rho, rho[:half]]), kern, mode="valid")
        self._fine = fine
        self._rho_smooth = rho

    @classmethod
    def from_csv(cls, path) -> "EmpiricalShape":
        angles, radii = [], []
        with open(path, newline="") as f:
            for row in csv.reader(f):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if row[0].strip().lower() in ("angle", "direction", "dir"):
                    continue
                angles.append(float(row[0]))
                radii.append(float(row[1]))
        return cls(angles, radii)

    def _rho_raw(self, phis):
        return np.interp(
            np.asarray(phis) % (2 * math.pi),
            np.concatenate([self.angles, [self.angles[0] + 2 * math.pi]]),
            np.concatenate([self.radii, [self.radii[0]]]),
        )

    def g(self, pts):
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            pts = pts[None, :]
        r = np.linalg.norm(pts, axis=-1)
        phi = np.arctan2(pts[..., 1], pts[..., 0])
        out = np.where(r > 0, r / self._rho_raw(phi), 0.0)
        return out

    def _rho_mollified(self, phi: float) -> tuple[float, float]:
        m = self._fine.size
        step = 2 * math.pi / m
        x = (phi % (2 * math.pi)) / step
        i = int(x) % m
        frac = x - int(x)
        j = (i + 1) % m
        rho = (1 - frac) * self._rho_smooth[i] + frac * self._rho_smooth[j]
        drho = (self._rho_smooth[j] - self._rho_smooth[i]) / step
        return float(rho), float(drho)

    def support_normal(self, theta):
        theta = unit(theta)
        phi = math.atan2(theta[1], theta[0])
        rho, drho = self._rho_mollified(phi)
        e_r = np.array([math.cos(phi), math.sin(phi)])
        e_phi = np.array([-math.sin(phi), math.cos(phi)])
        grad = e_r / rho - (drho / rho**2) * e_phi
        return unit(grad)

    def convexity_defect(self, n_pairs: int = 2000, seed: int = 0) -> float:
        """Max midpoint-convexity violation of g over random point pairs."""
        rng = np.random.default_rng(seed)
        u = rng.normal(size=(n_pairs, 2))
        v = rng.normal(size=(n_pairs, 2))
        lhs = self.g((u + v) / 2.0)
        rhs = (self.g(u) + self.g(v)) / 2.0
        return float(np.max(lhs - rhs))

    def spec(self):
        return "empirical"


def parse_shape(spec: str, dim: int) -> ShapeModel:
    """Parse a shape spec: l1 | l2 | wl1:w1:...:wd | empirical:FILE."""
    parts = spec.strip().split(":")
    if parts[0] == "l2":
        return L2Shape(dim)
    if parts[0] == "l1":
        return l1_shape(dim)
    if parts[0] == "wl1":
        w = tuple(float(x) for x in parts[1:])
        if len(w) != dim:
            raise GeometryError(f"wl1 needs {dim} weights, got {len(w)}")
        return WeightedL1Shape(w)
    if parts[0] == "empirical":
        if dim != 2:
            raise GeometryError("empirical shapes are implemented for d=2 only")
        return EmpiricalShape.from_csv(Path(":".join(parts[1:])))
    raise GeometryError(f"unknown shape spec {spec!r}")


# ---------------------------------------------------------------------------
# Hyperplanes, projections, Phi
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """H(theta, r): plane through r * y_theta parallel to the supporting plane."""

    theta: tuple[float, ...]
    r: float
    normal: tuple[float, ...]
    y_theta: tuple[float, ...]

    @classmethod
    def at(cls, shape: ShapeModel, theta, r: float, normal=None) -> "Hyperplane":
        theta = unit(theta)
        n = unit(normal) if normal is not None else shape.support_normal(theta)
        y = shape.y_point(theta)
        if abs(float(n @ y)) <= _TOL * float(np.linalg.norm(y)):
            raise GeometryError("direction numerically parallel to its hyperplane")
        return cls(tuple(theta), float(r), tuple(n), tuple(y))

    @property
    def scale(self) -> float:
        # n.y_theta: converts raw plane offsets to Phi units
        return float(np.asarray(self.normal) @ np.asarray(self.y_theta))

    @property
    def offset(self) -> float:
        return self.r * self.scale

    def signed_height(self, pts) -> np.ndarray:
        """Phi(u): the height of u in units of y_theta, minus r gives plane distance."""
        pts = np.asarray(pts, dtype=float)
        return (pts @ np.asarray(self.normal)) / self.scale


def _frame(shape: ShapeModel, theta, normal=None) -> Hyperplane:
    return Hyperplane.at(shape, theta, 0.0, normal=normal)


def tangential_projection(u, theta, shape: ShapeModel, normal=None) -> np.ndarray:
    """Project u along H(theta, 0) onto the axis line through 0 and theta."""
    f = _frame(shape, theta, normal)
    t = float(np.asarray(u, dtype=float) @ np.asarray(f.normal)) / f.scale
    return t * np.asarray(f.y_theta)


def phi_theta(u, theta, shape: ShapeModel, normal=None) -> float:
    """Signed g-height of u: +g of the tangential projection above H(theta,0), -g below."""
    f = _frame(shape, theta, normal)
    return float(np.asarray(u, dtype=float) @ np.asarray(f.normal)) / f.scale


def theta_surrogate_angle(y, rho_dir, shape: ShapeModel, normal=None) -> float:
    """|y - proj(y)| / g(proj(y)): a surrogate for the angle between y and the direction."""
    p = tangential_projection(y, rho_dir, shape, normal)
    gp = shape.g1(p)
    if gp <= _TOL:
        raise GeometryError("projection of y onto the axis is zero")
    return float(np.linalg.norm(np.asarray(y, dtype=float) - p)) / gp


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------

class Region:
    """Deterministic membership predicate over R^d (evaluated on lattice sites)."""

    tol = _TOL

    def contains(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains_site(self, site: Sequence[int]) -> bool:
        return bool(self.contains(np.asarray(site, dtype=float)[None, :])[0])


@dataclass(frozen=True)
class Everywhere(Region):
    dim: int

    def contains(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.ones(pts.shape[0], dtype=bool)


@dataclass(frozen=True)
class Halfspace(Region):
    """One side of a hyperplane; side=+1 is the upper halfspace H+."""

    plane: Hyperplane
    side: int = 1

    def contains(self, pts):
        h = self.plane.signed_height(np.atleast_2d(np.asarray(pts, dtype=float)))
        if self.side >= 0:
            return h >= self.plane.r - self.tol
        return h <= self.plane.r + self.tol


@dataclass(frozen=True)
class Slab(Region):
    """Closed slab between H(theta, lo) and H(theta, hi), possibly re-anchored.

    Membership is lo - shift <= Phi(u) <= hi - shift in Phi units; `shift`
    lets natural slabs of (x, y) sit between planes through x and y.
    """

    theta: tuple[float, ...]
    lo: float
    hi: float
    normal: tuple[float, ...]
    y_theta: tuple[float, ...]
    anchor: tuple[float, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.lo > self.hi:
            raise GeometryError(f"slab needs lo <= hi, got {self.lo} > {self.hi}")
        if self.anchor is None:
            object.__setattr__(self, "anchor", (0.0,) * len(self.theta))

    @classmethod
    def at(cls, shape: ShapeModel, theta, lo: float, hi: float, normal=None, anchor=None) -> "Slab":
        f = _frame(shape, theta, normal)
        a = (0.0,) * len(f.theta) if anchor is None else tuple(float(c) for c in anchor)
        return cls(f.theta, float(lo), float(hi), f.normal, f.y_theta, a)

    @property
    def scale(self) -> float:
        return float(np.asarray(self.normal) @ np.asarray(self.y_theta))

    def phi(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float)) - np.asarray(self.anchor)
        return (pts @ np.asarray(self.normal)) / self.scale

    def contains(self, pts):
        h = self.phi(pts)
        return (h >= self.lo - self.tol) & (h <= self.hi + self.tol)

    def strictly_inside(self, pts) -> np.ndarray:
        h = self.phi(pts)
        return (h > self.lo + self.tol) & (h < self.hi - self.tol)

    def widened(self, r: float) -> "Slab":
        return Slab(self.theta, self.lo - r, self.hi + r, self.normal, self.y_theta, self.anchor)


@dataclass(frozen=True)
class Cylinder(Region):
    """Bounded theta-cylinder: tube around an axis line cut by a slab.

    With skew=True the tube condition uses the tangential distance
    |u - pi_theta(u)| instead of the Euclidean point-to-line distance.
    """

    p0: tuple[float, ...]
    p1: tuple[float, ...]
    radius: float
    slab: Slab
    skew: bool = False

    def __post_init__(self):
        if self.radius <= 0:
            raise GeometryError("cylinder radius must be positive")

    @property
    def axis_dir(self) -> np.ndarray:
        return unit(np.asarray(self.p1) - np.asarray(self.p0))

    def axis_distance(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        a = np.asarray(self.p0, dtype=float)
        if self.skew:
            # translate so the axis passes through the origin, project tangentially
            rel = pts - a
            t = (rel @ np.asarray(self.slab.normal)) / self.slab.scale
            proj = t[:, None] * np.asarray(self.slab.y_theta)
            return np.linalg.norm(rel - proj, axis=1)
        d = self.axis_dir
        rel = pts - a
        along = rel @ d
        return np.linalg.norm(rel - along[:, None] * d, axis=1)

    def contains(self, pts):
        return (self.axis_distance(pts) <= self.radius + self.tol) & self.slab.contains(pts)

    def end_planes(self) -> tuple[float, float]:
        """Phi offsets of the two end hyperplanes (in the slab's units)."""
        return self.slab.lo, self.slab.hi


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple[Region, ...]

    def contains(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.ones(pts.shape[0], dtype=bool)
        for p in self.parts:
            out &= p.contains(pts)
        return out


@dataclass(frozen=True)
class Disc(Region):
    """Omega(psi, r, eps): points of H(psi, r) within tangential distance eps*r."""

    plane: Hyperplane
    eps: float

    def contains(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        h = self.plane.signed_height(pts)
        on_plane = np.abs(h - self.plane.r) <= self.tol
        proj = h[:, None] * np.asarray(self.plane.y_theta)
        tang = np.linalg.norm(pts - proj, axis=1)
        return on_plane & (tang <= self.eps * self.plane.r + self.tol)


# ---------------------------------------------------------------------------
# Natural slabs and cylinders
# ---------------------------------------------------------------------------

def slab_region(shape: ShapeModel, theta, lo: float, hi: float, normal=None) -> Slab:
    """The slab S_theta(lo, hi) between H(theta, lo) and H(theta, hi)."""
    return Slab.at(shape, theta, lo, hi, normal=normal)


def natural_slab(x, y, shape: ShapeModel) -> Slab:
    """Region between the hyperplanes through x and y parallel to the supporting
    plane in the segment direction."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    seg = y - x
    phi_dir = unit(seg)
    height = shape.g1(seg)
    return Slab.at(shape, phi_dir, 0.0, height, anchor=tuple(x))


def natural_cylinder(x, y, radius: float, shape: ShapeModel) -> Cylinder:
    """Tube of the given radius around the line through x and y, cut by the
    natural slab of (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.array_equal(x, y):
        raise GeometryError("natural cylinder needs distinct endpoints")
    if radius <= 0:
        raise GeometryError("cylinder radius must be positive")
    return Cylinder(tuple(x), tuple(y), float(radius), natural_slab(x, y, shape))


def near_natural_slab(x, y, psi, shape: ShapeModel) -> Slab:
    """Slab with direction psi whose boundary planes pass through x and y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    f = _frame(shape, psi)
    n = np.asarray(f.normal)
    lo = float(n @ x) / f.scale
    hi = float(n @ y) / f.scale
    if lo > hi:
        lo, hi = hi, lo
    return Slab(f.theta, lo, hi, f.normal, f.y_theta)


def is_near_natural(slab: Slab, x, y, shape: ShapeModel, eps1: float = 0.05) -> bool:
    """Whether `slab` qualifies as a near-natural slab of (x, y).

    Requires (x, y) to be a boundary pair of the slab, the slab direction to
    be within eps1 of the segment direction, and the slab planes to make an
    angle below eps1 with the natural planes of (x, y).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    seg_dir = unit(y - x)
    if float(np.linalg.norm(seg_dir - np.asarray(slab.theta))) >= eps1:
        return False
    nat = natural_slab(x, y, shape)
    cosang = abs(float(np.asarray(slab.normal) @ np.asarray(nat.normal)))
    if math.acos(min(1.0, cosang)) >= eps1:
        return False
    hx, hy = slab.phi(x[None, :])[0], slab.phi(y[None, :])[0]
    inside = slab.strictly_inside(np.stack([x, y]))
    if inside.any():
        return False
    return hx <= slab.lo + slab.tol and hy >= slab.hi - slab.tol


# ---------------------------------------------------------------------------
# End pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EndPairSet:
    """End vertices of a bounded cylinder, grouped by end, with all cross pairs."""

    cylinder: Cylinder
    low: tuple[Site, ...]
    high: tuple[Site, ...]

    @property
    def pairs(self) -> tuple[tuple[Site, Site], ...]:
        return tuple((u, v) for u in self.low for v in self.high)

    def __len__(self) -> int:
        return len(self.low) * len(self.high)


def end_pairs(cyl: Cylinder, w: Window) -> EndPairSet:
    """Enumerate end vertices of the cylinder inside the window.

    An end edge crosses an end disc (end hyperplane clipped to the tube) and
    has one endpoint strictly inside the associated slab; the other endpoint
    is the end vertex.
    """
    slab = cyl.slab
    n = np.asarray(slab.normal)
    anchor = np.asarray(slab.anchor)
    scale = slab.scale
    lows: set[Site] = set()
    highs: set[Site] = set()

    # candidate sites: integer bounding box of the cylinder, padded by 1
    pts = np.stack([np.asarray(cyl.p0, dtype=float), np.asarray(cyl.p1, dtype=float)])
    pad = cyl.radius + 1.5
    lo_box = [max(w.lo[k], int(math.floor(pts[:, k].min() - pad))) for k in range(w.dim)]
    hi_box = [min(w.hi[k], int(math.ceil(pts[:, k].max() + pad))) for k in range(w.dim)]
    if any(l > h for l, h in zip(lo_box, hi_box)):
        return EndPairSet(cyl, (), ())

    ranges = [range(l, h + 1) for l, h in zip(lo_box, hi_box)]
    for z in product(*ranges):
        zf = np.asarray(z, dtype=float)
        hz = float((zf - anchor) @ n) / scale
        if slab.lo + slab.tol < hz < slab.hi - slab.tol:
            continue  # z strictly inside: cannot be an end vertex
        for axis in range(w.dim):
            for sign in (-1, 1):
                b = z[:axis] + (z[axis] + sign,) + z[axis + 1:]
                if not w.contains(b):
                    continue
                bf = np.asarray(b, dtype=float)
                hb = float((bf - anchor) @ n) / scale
                if not (slab.lo + slab.tol < hb < slab.hi - slab.tol):
                    continue  # neighbor must be strictly interior
                for which, c in ((0, slab.lo), (1, slab.hi)):
                    denom = hb - hz
                    if abs(denom) <= slab.tol:
                        continue
                    t = (c - hz) / denom
                    if t < -slab.tol or t > 1 + slab.tol:
                        continue
                    p = zf + t * (bf - zf)
                    if cyl.axis_distance(p[None, :])[0] <= cyl.radius + slab.tol:
                        (lows if which == 0 else highs).add(tuple(z))
    low = tuple(sorted(lows))
    high = tuple(sorted(highs))
    return EndPairSet(cyl, low, high)


# ---------------------------------------------------------------------------
# Curvature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureReport:
    c5_hat: float
    c6_hat: float
    quality: float
    eps: float
    n_points: int
    curved: bool


def _tangent_basis(normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane with the given unit normal."""
    d = normal.size
    basis = []
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        v = e - (e @ normal) * normal
        for b in basis:
            v -= (v @ b) * b
        nv = np.linalg.norm(v)
        if nv > 1e-12:
            basis.append(v / nv)
        if len(basis) == d - 1:
            break
    return np.stack(basis)


def curvature_fit(
    shape: ShapeModel,
    theta,
    eps: float,
    normal=None,
    n_radial: int = 8,
    quality_threshold: float = 0.95,
    c6_floor: float = 1e-9,
) -> CurvatureReport:
    """Probe the boundary near y_theta on H(theta, 1) and fit g(u) - 1 ~ c |u - y_theta|^2.

    c5_hat and c6_hat are the extreme observed ratios (upper and lower
    quadratic coefficients); quality is the uncentered R^2 of a
    through-origin least-squares fit.  The direction is declared empirically
    curved when the lower coefficient is positive and the fit is good.
    """
    f = _frame(shape, theta, normal)
    y = np.asarray(f.y_theta)
    tans = _tangent_basis(np.asarray(f.normal))
    radii = eps * np.arange(1, n_radial + 1) / n_radial
    probes = []
    for tan in tans:
        for r in radii:
            probes.append(y + r * tan)
            probes.append(y - r * tan)
    probes = np.asarray(probes)
    if probes.shape[0] < 8:
        raise GeometryError(f"only {probes.shape[0]} probe points; need >= 8")
    sq = np.sum((probes - y) ** 2, axis=1)
    dev = shape.g(probes) - 1.0
    ratios = dev / sq
    slope = float((sq @ dev) / (sq @ sq))
    ss_res = float(np.sum((dev - slope * sq) ** 2))
    ss_tot = float(np.sum(dev**2))
    quality = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    c5 = float(ratios.max())
    c6 = float(ratios.min())
    return CurvatureReport(
        c5_hat=c5,
        c6_hat=c6,
        quality=quality,
        eps=float(eps),
        n_points=int(probes.shape[0]),
        curved=bool(c6 > c6_floor and quality >= quality_threshold),
    )


def estimate_eps0(
    shape: ShapeModel,
    theta,
    radii: Sequence[float] = (0.4, 0.2, 0.1, 0.05, 0.025),
    quality_threshold: float = 0.95,
    normal=None,
) -> float:
    """Largest probe radius on the ladder whose curvature fit is good; 0 if none."""
    for eps in sorted(radii, reverse=True):
        rep = curvature_fit(shape, theta, eps, normal=normal, quality_threshold=quality_threshold)
        if rep.quality >= quality_threshold and rep.c6_hat > 0:
            return float(eps)
    return 0.0


def line_distance(x, theta) -> float:
    """Euclidean distance from x to the infinite line through 0 in direction theta."""
    x = np.asarray(x, dtype=float)
    t = unit(theta)
    return float(np.linalg.norm(x - (x @ t) * t))


def is_directionally_good(theta, x, report: CurvatureReport, eps0_hat: float) -> bool:
    """Curved direction, axis distance at most d, and |x| large enough for eps0."""
    x = np.asarray(x, dtype=float)
    size = float(np.linalg.norm(x))
    if size <= 0:
        raise GeometryError("x must be nonzero")
    return bool(
        report.curved
        and line_distance(x, theta) <= x.size
        and size ** (-0.25) < eps0_hat
    )


def is_directionally_acceptable(theta, x, report: CurvatureReport, eps0_hat: float) -> bool:
    """Like directionally good, but the axis-distance budget grows as |x|^(1/5)."""
    x = np.asarray(x, dtype=float)
    size = float(np.linalg.norm(x))
    if size <= 0:
        raise GeometryError("x must be nonzero")
    return bool(
        report.curved
        and line_distance(x, theta) <= size ** 0.2
        and size ** (-0.25) < eps0_hat
    )
