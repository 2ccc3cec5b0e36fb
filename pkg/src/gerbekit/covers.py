"""Open covers of S^1 and T^2, refinements, subordinations, and dual cell
decompositions on which cochains live and holonomy is computed.

Angular coordinates have period 2*pi throughout.  Cells are stored with
lifted (non-wrapped) real coordinates; since all integrands are periodic the
choice of lift does not affect any integral.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

TWO_PI = 2 * math.pi


# ---------------------------------------------------------------------------
# oriented cells


class PointCell:
    dim = 0

    def __init__(self, point, sign: int):
        self.point = np.asarray(point, dtype=float)
        self.sign = int(sign)

    def __repr__(self):
        return f"PointCell({self.point}, sign={self.sign})"


class SegmentCell:
    dim = 1

    def __init__(self, start, end):
        self.start = np.asarray(start, dtype=float)
        self.end = np.asarray(end, dtype=float)

    def reversed(self) -> "SegmentCell":
        return SegmentCell(self.end, self.start)

    def __repr__(self):
        return f"SegmentCell({self.start} -> {self.end})"


class PolygonCell:
    dim = 2

    def __init__(self, vertices):
        self.vertices = [np.asarray(v, dtype=float) for v in vertices]

    def area(self) -> float:
        s = 0.0
        vs = self.vertices
        for i in range(len(vs)):
            x0, y0 = vs[i]
            x1, y1 = vs[(i + 1) % len(vs)]
            s += x0 * y1 - x1 * y0
        return 0.5 * s

    def __repr__(self):
        return f"PolygonCell({len(self.vertices)} vertices)"


# ---------------------------------------------------------------------------
# interval arithmetic on the circle


def _arc_to_intervals(lo: float, hi: float) -> List[Tuple[float, float]]:
    """Represent the open arc (lo, hi) (length < 2pi) as plain intervals in [0, 2pi)."""
    length = hi - lo
    if length >= TWO_PI:
        return [(0.0, TWO_PI)]
    lo = lo % TWO_PI
    hi = lo + length
    if hi <= TWO_PI:
        return [(lo, hi)]
    return [(lo, TWO_PI), (0.0, hi - TWO_PI)]


def _intersect_interval_lists(a, b):
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if hi - lo > 1e-12:
                out.append((lo, hi))
    return out


def _arcs_intersection(arcs: Sequence[Tuple[float, float]]):
    cur = _arc_to_intervals(*arcs[0])
    for arc in arcs[1:]:
        cur = _intersect_interval_lists(cur, _arc_to_intervals(*arc))
        if not cur:
            return []
    return cur


def _arc_contains_interval(arc: Tuple[float, float], lo: float, hi: float,
                           tol: float = 1e-9) -> bool:
    """Does the circle arc contain the (lifted) interval [lo, hi]?"""
    alo, ahi = arc
    if hi - lo > (ahi - alo) + tol:
        return False
    shift = math.floor((lo - alo) / TWO_PI) * TWO_PI
    for k in (shift, shift + TWO_PI):
        if lo - k >= alo - tol and hi - k <= ahi + tol:
            return True
    return False


# ---------------------------------------------------------------------------
# covers


class Cover:
    """A finite open cover of a product of circles by boxes.

    pieces[i] is a tuple of per-factor arcs (lo, hi) in lifted coordinates.
    """

    def __init__(self, factors: int, pieces: Sequence[Tuple[Tuple[float, float], ...]],
                 label: str = ""):
        self.factors = factors
        self.pieces = [tuple(tuple(arc) for arc in p) for p in pieces]
        self.label = label
        self._tuple_cache: Dict[int, List[Tuple[int, ...]]] = {}
        self._support_cache: Dict[int, List[Tuple[int, ...]]] = {}
        self._adjacency = None

    def __len__(self):
        return len(self.pieces)

    @property
    def indices(self):
        return range(len(self.pieces))

    def intersection_nonempty(self, idx: Sequence[int]) -> bool:
        idx = tuple(idx)
        for axis in range(self.factors):
            arcs = [self.pieces[i][axis] for i in set(idx)]
            if not _arcs_intersection(arcs):
                return False
        return True

    def supports(self, size: int) -> List[Tuple[int, ...]]:
        """Sorted index sets of the given size with a common point.

        Built incrementally: a (k+1)-support extends a k-support, so the
        enumeration never touches the vast majority of index combinations.
        """
        if size in self._support_cache:
            return self._support_cache[size]
        n = len(self.pieces)
        if self._adjacency is None:
            adj = [[False] * n for _ in range(n)]
            for i in range(n):
                adj[i][i] = True
                for j in range(i + 1, n):
                    adj[i][j] = adj[j][i] = self.intersection_nonempty((i, j))
            self._adjacency = adj
        adj = self._adjacency
        if size == 1:
            out = [(i,) for i in range(n)]
        else:
            out = []
            for s in self.supports(size - 1):
                for j in range(s[-1] + 1, n):
                    if all(adj[i][j] for i in s) and \
                            self.intersection_nonempty(s + (j,)):
                        out.append(s + (j,))
        self._support_cache[size] = out
        return out

    def nonempty_tuples(self, length: int) -> List[Tuple[int, ...]]:
        """All ordered tuples of *distinct* piece indices with a common point."""
        if length in self._tuple_cache:
            return self._tuple_cache[length]
        out: List[Tuple[int, ...]] = []
        for combo in self.supports(length):
            out.extend(itertools.permutations(combo))
        out.sort()
        self._tuple_cache[length] = out
        return out

    def piece_contains_box(self, i: int, box: Sequence[Tuple[float, float]]) -> bool:
        return all(_arc_contains_interval(self.pieces[i][axis], lo, hi)
                   for axis, (lo, hi) in enumerate(box))

    def covers_point(self, x: Sequence[float]) -> bool:
        for piece in self.pieces:
            ok = True
            for axis, (lo, hi) in enumerate(piece):
                if not _arc_contains_interval((lo, hi), x[axis], x[axis]):
                    ok = False
                    break
            if ok:
                return True
        return False


class Subordination:
    """sigma: refinement index -> coarse index with V_j contained in U_{sigma(j)}."""

    def __init__(self, source: Cover, target: Cover, index_map: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.index_map = tuple(int(i) for i in index_map)
        if len(self.index_map) != len(source.pieces):
            raise ValueError("index map length mismatch")
        if check:
            for j, i in enumerate(self.index_map):
                if not target.piece_contains_box(i, source.pieces[j]):
                    raise ValueError(f"V_{j} not contained in U_{i}")

    def __call__(self, j: int) -> int:
        return self.index_map[j]


def make_circle_cover(N: int, overlap: float) -> Cover:
    if N < 3:
        raise ValueError("need at least 3 arcs")
    if not (0 < overlap < math.pi / N):
        raise ValueError("overlap must lie in (0, pi/N)")
    h = TWO_PI / N
    pieces = [((j * h - overlap, (j + 1) * h + overlap),) for j in range(N)]
    return Cover(1, pieces, label=f"circle(N={N},ov={overlap:g})")


def make_torus_cover(N: int, M: int, overlap: float) -> Cover:
    cx = make_circle_cover(N, overlap)
    cy = make_circle_cover(M, overlap)
    return product_cover(cx, cy)


def product_cover(a: Cover, b: Cover) -> Cover:
    pieces = []
    for pa in a.pieces:
        for pb in b.pieces:
            pieces.append(pa + pb)
    c = Cover(a.factors + b.factors, pieces,
              label=f"product({a.label},{b.label})")
    c.factor_covers = (a, b)
    c.block_sizes = (len(a.pieces), len(b.pieces))
    return c


def product_index(cover: Cover, ia: int, ib: int) -> int:
    return ia * cover.block_sizes[1] + ib


def split_index(cover: Cover, i: int) -> Tuple[int, int]:
    nb = cover.block_sizes[1]
    return divmod(i, nb)


# ---------------------------------------------------------------------------
# refinement with two subordinations


def _refine_circle(c: Cover, factor: int):
    """Refine a circle cover into N*factor arcs.

    Within each coarse arc, the first refined piece straddles the coarse
    boundary (it sits inside the double overlap of two consecutive coarse
    arcs, so it admits two subordination choices); the remaining factor-1
    pieces subdivide the interior.
    """
    N = len(c.pieces)
    h = TWO_PI / N
    ov = c.pieces[0][0][1] - h  # right extension of the first arc
    w = 0.45 * ov              # half-width of a straddling piece
    m = 0.5 * w                # overlap margin of interior pieces
    pieces = []
    sig, sig2 = [], []
    for i in range(N):
        left = i * h
        # straddling piece centered at the coarse boundary
        pieces.append(((left - w, left + w),))
        sig.append(i)
        sig2.append((i - 1) % N)
        # interior pieces
        L = (h - 2 * w) / (factor - 1) if factor > 1 else 0.0
        for s in range(1, factor):
            a = left + w + (s - 1) * L
            pieces.append(((a - m, a + L + m),))
            sig.append(i)
            sig2.append(i)
    fine = Cover(1, pieces, label=f"refined({c.label},x{factor})")
    return fine, sig, sig2


def refine(c: Cover, factor: int):
    """Return (refined cover, sigma, sigma') with two distinct subordinations."""
    if factor < 2:
        raise ValueError("factor must be >= 2")
    if c.factors == 1:
        fine, sig, sig2 = _refine_circle(c, factor)
        return (fine, Subordination(fine, c, sig), Subordination(fine, c, sig2))
    if c.factors == 2:
        ax, ay = c.factor_covers
        fx, sx, sx2 = _refine_circle(ax, factor)
        fy, sy, sy2 = _refine_circle(ay, factor)
        fine = product_cover(fx, fy)
        nb = len(ay.pieces)
        sig, sig2 = [], []
        for ja in range(len(fx.pieces)):
            for jb in range(len(fy.pieces)):
                sig.append(sx[ja] * nb + sy[jb])
                # the second map differs along the first factor only
                sig2.append(sx2[ja] * nb + sy[jb])
        return (fine, Subordination(fine, c, sig), Subordination(fine, c, sig2))
    raise ValueError("only 1- and 2-factor covers are supported")


# ---------------------------------------------------------------------------
# dual cell decompositions


class DualCellDecomposition:
    """Oriented cell complex dual to a triangulation of S^1 or T^2.

    faces[k] maps strictly decreasing multi-indices (i1 > ... > ik) of top
    cells to the oriented common (n+1-k)-cell; Delta_(i1...ik) carries the
    orientation induced as a boundary component of Delta_(i1...ik-1).
    """

    def __init__(self, dim: int, top_cells: Sequence, faces: Dict[int, Dict[Tuple[int, ...], object]]):
        self.dim = dim
        self.top_cells = list(top_cells)
        self.faces = faces  # faces[1][(i,)] = top_cells[i]

    def face(self, idx: Tuple[int, ...]):
        return self.faces[len(idx)].get(tuple(idx))

    def multi_indices(self, k: int):
        return self.faces.get(k, {}).keys()


def make_circle_decomposition(N: int) -> DualCellDecomposition:
    if N < 3:
        raise ValueError("N must be >= 3")
    h = TWO_PI / N
    segs = [SegmentCell([j * h], [(j + 1) * h]) for j in range(N)]
    faces: Dict[int, Dict[Tuple[int, ...], object]] = {1: {}, 2: {}}
    for j, s in enumerate(segs):
        faces[1][(j,)] = s
    for j in range(N):
        jn = (j + 1) % N
        i1, i2 = (jn, j) if jn > j else (j, jn)
        v = segs[j].end  # shared vertex between segments j and j+1
        # boundary of the oriented segment Delta_{i1}: + at its end, - at start
        top = segs[i1]
        if np.allclose(v % TWO_PI, top.end % TWO_PI) or np.allclose(
                (v - top.end) % TWO_PI, 0.0):
            sign = +1
        else:
            sign = -1
        faces[2][(i1, i2)] = PointCell(v, sign)
    return DualCellDecomposition(1, segs, faces)


_HEX_OFFSETS = np.array([
    (2 / 3, 1 / 3), (1 / 3, 2 / 3), (-1 / 3, 1 / 3),
    (-2 / 3, -1 / 3), (-1 / 3, -2 / 3), (1 / 3, -1 / 3),
])


def make_torus_hex_decomposition(N: int) -> DualCellDecomposition:
    """Dual of the N x N diagonal-split grid triangulation of T^2.

    One hexagon per grid vertex, with vertices at the barycenters of the six
    incident triangles; 3 hexagons meet at each barycenter, 2 along each edge.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    h = TWO_PI / N
    hexes = []
    for p in range(N):
        for q in range(N):
            center = np.array([p * h, q * h])
            hexes.append(PolygonCell([center + h * off for off in _HEX_OFFSETS]))

    def canon(pt):
        return (round((pt[0] % TWO_PI) / h * 3) % (3 * N),
                round((pt[1] % TWO_PI) / h * 3) % (3 * N))

    # collect edges: edge key -> list of (hexagon index, oriented segment)
    edge_map: Dict[tuple, List[Tuple[int, SegmentCell]]] = {}
    vert_map: Dict[tuple, List[int]] = {}
    for i, hexa in enumerate(hexes):
        vs = hexa.vertices
        for t in range(6):
            a, b = vs[t], vs[(t + 1) % 6]
            key = tuple(sorted((canon(a), canon(b))))
            edge_map.setdefault(key, []).append((i, SegmentCell(a, b)))
            vkey = canon(a)
            if i not in vert_map.setdefault(vkey, []):
                vert_map[vkey].append(i)

    faces: Dict[int, Dict[Tuple[int, ...], object]] = {1: {}, 2: {}, 3: {}}
    for i, hexa in enumerate(hexes):
        faces[1][(i,)] = hexa
    for key, owners in edge_map.items():
        if len(owners) != 2:
            raise RuntimeError("each hexagon edge must be shared by exactly 2 cells")
        (ia, sa), (ib, sb) = owners
        (i1, seg) = max(owners, key=lambda t: t[0])
        i2 = min(ia, ib)
        faces[2][(i1, i2)] = seg  # oriented as traversed by the larger-index cell
    for vkey, owners in vert_map.items():
        if len(owners) != 3:
            raise RuntimeError("each dual vertex must meet exactly 3 hexagons")
        i1, i2, i3 = sorted(owners, reverse=True)
        seg = faces[2][(i1, i2)]
        # locate the vertex on the oriented edge Delta_(i1,i2)
        for pt, sign in ((seg.end, +1), (seg.start, -1)):
            if canon(pt) == vkey:
                faces[3][(i1, i2, i3)] = PointCell(pt, sign)
                break
        else:
            raise RuntimeError("triple vertex not an endpoint of the shared edge")
    dec = DualCellDecomposition(2, hexes, faces)
    dec.grid_n = N
    return dec


# ---------------------------------------------------------------------------
# subordinations of decompositions to covers


def _cell_bounding_box(cell) -> List[Tuple[float, float]]:
    if cell.dim == 0:
        pts = [cell.point]
    elif cell.dim == 1:
        pts = [cell.start, cell.end]
    else:
        pts = cell.vertices
    arr = np.array(pts)
    return [(float(arr[:, a].min()), float(arr[:, a].max()))
            for a in range(arr.shape[1])]


def admissible_pieces(dec: DualCellDecomposition, cover: Cover) -> List[List[int]]:
    """For each top cell, the cover pieces fully containing it."""
    out = []
    for cell in dec.top_cells:
        box = _cell_bounding_box(cell)
        out.append([i for i in cover.indices if cover.piece_contains_box(i, box)])
    return out


def subordinate(dec: DualCellDecomposition, cover: Cover,
                choice: Sequence[int] | None = None) -> List[int]:
    """A subordination rho: top cell -> cover piece containing it."""
    adm = admissible_pieces(dec, cover)
    rho = []
    for i, options in enumerate(adm):
        if not options:
            raise ValueError(
                f"top cell {i} is not contained in any cover piece; "
                "increase the cover overlap")
        if choice is not None and choice[i] in options:
            rho.append(choice[i])
        else:
            rho.append(options[0])
    return rho


def two_subordinations(dec: DualCellDecomposition, cover: Cover,
                       rng=None) -> Tuple[List[int], List[int]]:
    """Two valid subordinations differing wherever a cell admits a choice."""
    adm = admissible_pieces(dec, cover)
    rho, rho2 = [], []
    for i, options in enumerate(adm):
        if not options:
            raise ValueError(f"top cell {i} not contained in any cover piece")
        rho.append(options[0])
        if len(options) > 1:
            if rng is not None:
                rho2.append(options[int(rng.integers(1, len(options)))])
            else:
                rho2.append(options[1])
        else:
            rho2.append(options[0])
    return rho, rho2
