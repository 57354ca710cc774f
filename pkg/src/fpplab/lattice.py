"""Integer-lattice sites, edges, bounded windows, and reproducible edge-weight fields.

The randomness model is counter-based: every edge weight is a pure function of
``(seed, replica, canonical edge id)``, so any subset of weights can be
regenerated in any order, on any thread, and the result is bit-identical.
Weights are produced by pushing a 64-bit hash of the counter through the
inverse CDF of the configured distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Site = tuple[int, ...]

_MASK64 = (1 << 64) - 1
_C_REPLICA = 0xBF58476D1CE4E5B9
_C_EDGE = 0x94D049BB133111EB
_INV_2_53 = 2.0 ** -53


class LatticeError(ValueError):
    """Domain error for lattice objects (bad edges, out-of-window queries)."""


# ---------------------------------------------------------------------------
# Edges
# ---------------------------------------------------------------------------

def canonical_edge(a: Sequence[int], b: Sequence[int]) -> tuple[Site, Site, int]:
    """Return (lo, hi, axis) for a nearest-neighbor edge, orientation-normalized.

    The canonical form puts the endpoint with the smaller coordinate first
    along the single axis where the endpoints differ; canonicalization is
    idempotent.
    """
    a = tuple(int(c) for c in a)
    b = tuple(int(c) for c in b)
    if len(a) != len(b):
        raise LatticeError(f"endpoint dimensions differ: {len(a)} vs {len(b)}")
    diffs = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diffs) != 1 or abs(a[diffs[0]] - b[diffs[0]]) != 1:
        raise LatticeError(f"not a nearest-neighbor edge: {a} -- {b}")
    axis = diffs[0]
    if a[axis] < b[axis]:
        return a, b, axis
    return b, a, axis


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """Inclusive axis-aligned box of lattice sites."""

    lo: Site
    hi: Site

    def __post_init__(self):
        lo = tuple(int(c) for c in self.lo)
        hi = tuple(int(c) for c in self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != len(hi) or len(lo) == 0:
            raise LatticeError("window lo/hi must be same nonzero dimension")
        if any(l > h for l, h in zip(lo, hi)):
            raise LatticeError(f"window lo {lo} exceeds hi {hi}")
        if self.num_sites < 2:
            raise LatticeError("window must contain at least 2 sites")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    @property
    def num_sites(self) -> int:
        n = 1
        for l, h in zip(self.lo, self.hi):
            n *= h - l + 1
        return n

    @property
    def strides(self) -> tuple[int, ...]:
        s = [1] * self.dim
        for k in range(self.dim - 2, -1, -1):
            s[k] = s[k + 1] * self.shape[k + 1]
        return tuple(s)

    def contains(self, site: Sequence[int]) -> bool:
        return all(l <= c <= h for c, l, h in zip(site, self.lo, self.hi))

    def on_boundary(self, site: Sequence[int]) -> bool:
        return any(c == l or c == h for c, l, h in zip(site, self.lo, self.hi))

    def rank(self, site: Sequence[int]) -> int:
        """Row-major (lexicographic) index of a site inside the window."""
        if not self.contains(site):
            raise LatticeError(f"site {tuple(site)} outside window {self.lo}..{self.hi}")
        r = 0
        for c, l, s in zip(site, self.lo, self.strides):
            r += (c - l) * s
        return r

    def site(self, rank: int) -> Site:
        out = []
        for l, s, n in zip(self.lo, self.strides, self.shape):
            q, rank = divmod(rank, s)
            if q >= n:
                raise LatticeError("rank out of range")
            out.append(l + q)
        return tuple(out)

    def sites(self) -> Iterable[Site]:
        for r in range(self.num_sites):
            yield self.site(r)

    def halo(self) -> "Window":
        """Window expanded by one site on every face."""
        return Window(tuple(l - 1 for l in self.lo), tuple(h + 1 for h in self.hi))

    @property
    def num_edges(self) -> int:
        total = 0
        for k in range(self.dim):
            n = self.shape[k] - 1
            for j in range(self.dim):
                if j != k:
                    n *= self.shape[j]
            total += n
        return total

    def coord_grid(self) -> np.ndarray:
        """All window sites as an (num_sites, dim) int array in rank order."""
        axes = [np.arange(l, h + 1) for l, h in zip(self.lo, self.hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


def _count_digit_eq_top(r: int, stride: int, size: int) -> int:
    """How many m in [0, r) have ((m // stride) % size) == size - 1."""
    period = stride * size
    full, rem = divmod(r, period)
    partial = min(max(rem - (size - 1) * stride, 0), stride)
    return full * stride + partial


def _edges_before(rank: int, w: Window) -> int:
    """Window edges whose canonical endpoint has row-major rank < rank."""
    total = 0
    for stride, size in zip(w.strides, w.shape):
        total += rank - _count_digit_eq_top(rank, stride, size)
    return total


def _sites_lex_below(site: Site, w: Window) -> int:
    """Window sites lexicographically below `site` (site may lie outside)."""
    count = 0
    suffix = w.num_sites
    for k in range(w.dim):
        suffix //= w.shape[k]
        below = min(max(site[k] - w.lo[k], 0), w.shape[k])
        count += below * suffix
        if not (w.lo[k] <= site[k] <= w.hi[k]):
            break
    return count


def canonical_edge_id(edge: tuple[Sequence[int], Sequence[int]], w: Window) -> int:
    """Stable nonnegative id of an edge, injective over the window-plus-halo set.

    Window-interior edges (both endpoints inside `w`) are numbered 0..E-1 in
    position-then-axis order: sites in row-major order, and at each site the
    outgoing +axis edges in axis order.  Halo edges (one endpoint in the
    one-site halo) follow after E in the same order taken over the halo box.
    """
    a, b, axis = canonical_edge(*edge)
    if w.contains(a) and w.contains(b):
        own = sum(1 for j in range(axis) if a[j] < w.hi[j])
        return _edges_before(w.rank(a), w) + own
    h = w.halo()
    if not (h.contains(a) and h.contains(b)):
        raise LatticeError(f"edge {a} -- {b} outside window halo")
    own_h = sum(1 for j in range(axis) if a[j] < h.hi[j])
    id_h = _edges_before(h.rank(a), h) + own_h
    # window-interior edges preceding this one in halo order
    before = _edges_before(_sites_lex_below(a, w), w)
    if w.contains(a):
        before += sum(1 for j in range(axis) if a[j] < w.hi[j])
    return w.num_edges + (id_h - before)


def neighbors(x: Sequence[int], w: Window, region=None) -> list[Site]:
    """Unit-step neighbors of x inside the window and region.

    Order is deterministic: ascending axis, minus direction before plus.
    """
    x = tuple(int(c) for c in x)
    if not w.contains(x):
        raise LatticeError(f"site {x} outside window")
    out = []
    for axis in range(w.dim):
        for sign in (-1, 1):
            y = x[:axis] + (x[axis] + sign,) + x[axis + 1:]
            if not w.contains(y):
                continue
            if region is not None and not region.contains_site(y):
                continue
            out.append(y)
    return out


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Exponential:
    rate: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise LatticeError("exponential rate must be > 0")

    def quantile(self, u):
        return -np.log(u) / self.rate

    @property
    def mean(self) -> float:
        return 1.0 / self.rate

    def spec(self) -> str:
        return f"exp:{self.rate:g}"


@dataclass(frozen=True)
class Uniform:
    a: float
    b: float

    def __post_init__(self):
        if not (0 <= self.a < self.b):
            raise LatticeError("uniform bounds must satisfy 0 <= a < b")

    def quantile(self, u):
        return self.a + (self.b - self.a) * u

    @property
    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def spec(self) -> str:
        return f"unif:{self.a:g}:{self.b:g}"


@dataclass(frozen=True)
class ShiftedExponential:
    shift: float
    rate: float

    def __post_init__(self):
        if self.shift < 0 or not self.rate > 0:
            raise LatticeError("shifted-exponential needs shift >= 0, rate > 0")

    def quantile(self, u):
        return self.shift - np.log(u) / self.rate

    @property
    def mean(self) -> float:
        return self.shift + 1.0 / self.rate

    def spec(self) -> str:
        return f"sexp:{self.shift:g}:{self.rate:g}"


@dataclass(frozen=True)
class Constant:
    """Degenerate constant-weight law.  Testing hook, not a standard model."""

    value: float

    def __post_init__(self):
        if not self.value > 0:
            raise LatticeError("constant weight must be > 0")

    def quantile(self, u):
        return self.value + 0.0 * u

    @property
    def mean(self) -> float:
        return self.value

    def spec(self) -> str:
        return f"const:{self.value:g}"


@dataclass(frozen=True)
class Table:
    """Explicit per-edge-id weights.  Testing hook for tiny hand-built fields."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if any(v <= 0 for v in self.values):
            raise LatticeError("table weights must be > 0")

    @property
    def mean(self) -> float:
        return sum(self.values) / len(self.values)

    def spec(self) -> str:
        return "table:" + ":".join(f"{v:g}" for v in self.values)


def parse_distribution(spec: str):
    """Parse a distribution spec string: exp:RATE | unif:A:B | sexp:SHIFT:RATE | const:V."""
    parts = spec.strip().split(":")
    try:
        if parts[0] == "exp" and len(parts) == 2:
            return Exponential(float(parts[1]))
        if parts[0] == "unif" and len(parts) == 3:
            return Uniform(float(parts[1]), float(parts[2]))
        if parts[0] == "sexp" and len(parts) == 3:
            return ShiftedExponential(float(parts[1]), float(parts[2]))
        if parts[0] == "const" and len(parts) == 2:
            return Constant(float(parts[1]))
        if parts[0] == "table" and len(parts) >= 2:
            return Table(tuple(float(v) for v in parts[1:]))
    except ValueError as exc:
        raise LatticeError(f"bad distribution spec {spec!r}: {exc}") from None
    raise LatticeError(f"unknown distribution spec {spec!r}")


# ---------------------------------------------------------------------------
# Counter-based weight field
# ---------------------------------------------------------------------------

def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _splitmix64_vec(z: np.ndarray) -> np.ndarray:
    z = (z + np.uint64(0x9E3779B97F4A7C15))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class WeightField:
    """Deterministic mapping (seed, replica, edge id) -> positive edge weight."""

    seed: int
    replica: int = 0
    distribution: object = Exponential(1.0)

    def __post_init__(self):
        if self.replica < 0:
            raise LatticeError("replica must be >= 0")
        if isinstance(self.distribution, str):
            object.__setattr__(self, "distribution", parse_distribution(self.distribution))

    def _base(self) -> int:
        h = _splitmix64(self.seed & _MASK64)
        return _splitmix64(h ^ (((self.replica + 1) * _C_REPLICA) & _MASK64))

    def uniform_for_id(self, edge_id: int) -> float:
        """The (0,1) uniform driving the given edge's weight."""
        h = _splitmix64(self._base() ^ (((edge_id + 1) * _C_EDGE) & _MASK64))
        return ((h >> 11) + 0.5) * _INV_2_53

    def weight_for_id(self, edge_id: int) -> float:
        if isinstance(self.distribution, Table):
            if edge_id >= len(self.distribution.values):
                raise LatticeError(f"table has no weight for edge id {edge_id}")
            return self.distribution.values[edge_id]
        return float(self.distribution.quantile(self.uniform_for_id(edge_id)))

    def weights_for_ids(self, edge_ids: np.ndarray) -> np.ndarray:
        """Vectorized weights; bit-identical to weight_for_id element-wise."""
        ids = np.asarray(edge_ids, dtype=np.uint64)
        if isinstance(self.distribution, Table):
            vals = np.asarray(self.distribution.values)
            if ids.size and int(ids.max()) >= len(vals):
                raise LatticeError("table has no weight for some edge id")
            return vals[ids]
        h = _splitmix64_vec(np.uint64(self._base()) ^ ((ids + np.uint64(1)) * np.uint64(_C_EDGE)))
        u = ((h >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53
        return np.asarray(self.distribution.quantile(u), dtype=np.float64)


def sample_weight(field: WeightField, edge: tuple[Sequence[int], Sequence[int]], w: Window) -> float:
    """Weight of one edge; pure in (seed, replica, canonical id)."""
    return field.weight_for_id(canonical_edge_id(edge, w))


def interior_edge_ids(w: Window) -> np.ndarray:
    """Ids of all window-interior edges as an (num_sites, dim) array.

    Entry [r, k] is the id of the +k edge out of the rank-r site, or -1 where
    that edge leaves the window.  Row-major flattening of the valid entries
    reproduces the position-then-axis numbering, i.e. ids run 0..E-1.
    """
    grid = w.coord_grid()
    valid = np.zeros((w.num_sites, w.dim), dtype=bool)
    for k in range(w.dim):
        valid[:, k] = grid[:, k] < w.hi[k]
    ids = np.full((w.num_sites, w.dim), -1, dtype=np.int64)
    ids[valid] = np.arange(int(valid.sum()))
    return ids


def weight_table(field: WeightField, w: Window) -> np.ndarray:
    """All window-edge weights as an (num_sites, dim) array (NaN where no edge)."""
    ids = interior_edge_ids(w)
    out = np.full(ids.shape, np.nan)
    mask = ids >= 0
    out[mask] = field.weights_for_ids(ids[mask].astype(np.uint64))
    return out


def site_norm(x: Sequence[int]) -> float:
    """Euclidean length of a lattice vector."""
    return math.sqrt(sum(float(c) * c for c in x))


def l1_norm(x: Sequence[int]) -> int:
    return sum(abs(int(c)) for c in x)
