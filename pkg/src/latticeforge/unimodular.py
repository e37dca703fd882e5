"""Unimodularity tests, constructive decompositions, covers, dilation search.

The constructive side: inside a unimodular simplex, every lattice point of
the h-fold dilate is a nonnegative integer combination of the vertices with
weights summing to h, and the weights are unique.  Covers extend this to
polytopes: a certified unimodular triangulation yields a decomposition of
any lattice point of the dilate by locating a containing cell.

Certification is exact throughout: volumes are compared as integers
(normalized volume = |det|), and pairwise interior disjointness is decided
by an exact rational LP.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .errors import (
    CoverageError,
    DegeneratePolytopeError,
    DimensionMismatchError,
    NotUnimodularError,
    PointOutsideError,
)
from .geometry import (
    LatticePolytope,
    LatticeSimplex,
    Point,
    as_point,
    contains,
    dilate,
    lattice_points,
    vec_dot,
    vec_scale,
    vec_sub,
)
from .linalg import IntMatrix, determinant, hermite_normal_form, integral_solution, rank_of_rows
from .sumsets import idp_scan


def lattice_index(s: LatticeSimplex) -> int:
    """|det| of the edge-difference matrix.

    This is the index in Z^n of the subgroup generated by the vertex
    differences, and also the normalized volume of the simplex; it equals 1
    exactly when the differences form a basis of Z^n.
    """
    return abs(s.det)


def is_unimodular(s: LatticeSimplex) -> bool:
    return lattice_index(s) == 1


def hnf_diagonal(s: LatticeSimplex) -> tuple:
    """Diagonal of the Hermite form of the difference matrix.

    Diagnostic view of the difference subgroup: the product of the diagonal
    is the lattice index, and each entry shows the stretch along one basis
    direction (e.g. (1, 1, 2) for an index-2 subgroup).
    """
    h, _ = hermite_normal_form(s.difference_matrix)
    return h.diagonal()


@dataclass(frozen=True)
class Decomposition:
    """p written as a weighted sum of the vertices of one simplex cell.

    weights pairs every cell vertex with its nonnegative integer weight
    (zeros included); the weights sum to h and the expanded multiset of
    parts sums to the decomposed point.
    """

    parts: tuple
    weights: tuple
    h: int
    cell: LatticeSimplex

    def point(self) -> Point:
        acc = tuple(0 for _ in range(self.cell.dim))
        for part in self.parts:
            acc = tuple(a + b for a, b in zip(acc, part))
        return acc


def decompose_in_simplex(s: LatticeSimplex, p: Sequence[int], h: int) -> Decomposition:
    """Unique weights w_i >= 0 with sum h and sum w_i * vertex_i = p.

    Requires s unimodular and p a lattice point of the h-fold dilate of s.
    The weights come from solving the integer system over the difference
    basis, so the result is exact and deterministic.
    """
    if not is_unimodular(s):
        raise NotUnimodularError(
            f"simplex has lattice index {lattice_index(s)}; decomposition needs index 1"
        )
    pt = as_point(p)
    if len(pt) != s.dim:
        raise DimensionMismatchError("point dimension does not match the simplex")
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise ValueError(f"h must be a positive integer, got {h!r}")
    coords = s.barycentric(tuple(Fraction(x, h) for x in pt))
    if any(t < 0 for t in coords):
        raise PointOutsideError(f"{pt} is not in the {h}-fold dilate of the simplex")
    target = vec_sub(pt, vec_scale(s.vertices[0], h))
    tail = integral_solution(s.difference_matrix, target)
    assert tail is not None, "unimodular difference matrix must solve integrally"
    w = (h - sum(tail), *tail)
    assert all(x >= 0 for x in w) and sum(w) == h
    parts = []
    for vertex, weight in zip(s.vertices, w):
        parts.extend([vertex] * weight)
    return Decomposition(
        parts=tuple(sorted(parts)),
        weights=tuple(zip(s.vertices, w)),
        h=h,
        cell=s,
    )


@dataclass(frozen=True)
class SimplicialCover:
    """A list of simplices claimed to cover a target polytope."""

    target: LatticePolytope
    cells: tuple
    kind: str = "triangulation"  # "triangulation" | "general-cover"
    certified: str = "uncertified"  # "certified" | "vertices-only" | "uncertified"


@dataclass(frozen=True)
class Certification:
    status: str
    problems: tuple = ()


def _facet_normal(points: Sequence[Point]) -> tuple:
    """Integer normal of the hyperplane through n points in R^n (cofactors)."""
    n = len(points[0])
    if n == 1:
        return (1,)
    diffs = [vec_sub(q, points[0]) for q in points[1:]]
    normal = []
    for j in range(n):
        minor = [[row[t] for t in range(n) if t != j] for row in diffs]
        d = determinant(IntMatrix(minor))
        normal.append(d if j % 2 == 0 else -d)
    return tuple(normal)


def _cell_volume(cell: Sequence[Point]) -> int:
    diff = IntMatrix.from_columns([vec_sub(v, cell[0]) for v in cell[1:]])
    return abs(determinant(diff))


def _placing_cells(points: Sequence[Point], dim: int):
    """Incremental (beneath-beyond) triangulation of conv(points).

    Points are inserted in the given order; a point strictly outside the
    current hull cones onto every strictly visible boundary facet.  Points
    inside or on the hull extend nothing (they simply do not become cell
    vertices).  The output cells tile the hull with disjoint interiors.
    """
    start = []
    for p in points:
        if not start:
            start.append(p)
            continue
        diffs = [vec_sub(q, start[0]) for q in start[1:]] + [vec_sub(p, start[0])]
        if rank_of_rows(diffs) == len(diffs):
            start.append(p)
        if len(start) == dim + 1:
            break
    if len(start) < dim + 1:
        raise DegeneratePolytopeError("points do not span the ambient dimension")
    cells = [tuple(start)]
    starters = set(start)
    for p in points:
        if p in starters:
            continue
        boundary = {}
        for cell in cells:
            for skip in range(dim + 1):
                fpts = cell[:skip] + cell[skip + 1 :]
                key = frozenset(fpts)
                if key in boundary:
                    boundary[key] = None
                else:
                    boundary[key] = (fpts, cell[skip])
        new_cells = []
        for info in boundary.values():
            if info is None:
                continue
            fpts, opposite = info
            normal = _facet_normal(fpts)
            offset = vec_dot(normal, fpts[0])
            if vec_dot(normal, opposite) > offset:
                normal = tuple(-x for x in normal)
                offset = -offset
            if vec_dot(normal, p) > offset:
                new_cells.append(fpts + (p,))
        cells.extend(new_cells)
    return cells


def placing_triangulation(p: LatticePolytope, order: Optional[Sequence] = None) -> SimplicialCover:
    """Placing triangulation over the polytope's lattice points.

    `order` must be a permutation of lattice_points(p); the default is the
    lexicographic enumeration order.  Geometry (tiling, disjointness) holds
    by construction; the cells may or may not be unimodular.
    """
    pts = lattice_points(p)
    if order is None:
        sequence = list(pts)
    else:
        sequence = [as_point(q) for q in order]
        if len(sequence) != len(pts) or sorted(set(sequence)) != list(pts):
            raise ValueError("order must be a permutation of the polytope's lattice points")
    if not p.is_full_dimensional():
        raise DegeneratePolytopeError("placing triangulation needs a full-dimensional polytope")
    cells = _placing_cells(sequence, p.dim)
    return SimplicialCover(
        target=p,
        cells=tuple(LatticeSimplex(c) for c in cells),
        kind="triangulation",
        certified="uncertified",
    )


def normalized_volume(p: LatticePolytope) -> int:
    """n! times Euclidean volume as an exact integer; 0 for flat polytopes."""
    if not p.is_full_dimensional():
        return 0
    return sum(_cell_volume(c) for c in _placing_cells(p.vertices, p.dim))


def _interior_inequalities(cell: LatticeSimplex):
    """Facet rows (a, b) with a.x >= b on the cell, strict on its interior."""
    verts = cell.vertices
    rows = []
    for skip in range(len(verts)):
        fpts = verts[:skip] + verts[skip + 1 :]
        normal = _facet_normal(fpts)
        offset = vec_dot(normal, fpts[0])
        if vec_dot(normal, verts[skip]) < offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        rows.append((normal, offset))
    return rows


def _interiors_intersect(a: LatticeSimplex, b: LatticeSimplex) -> bool:
    dim = a.dim
    for j in range(dim):
        a_lo = min(v[j] for v in a.vertices)
        a_hi = max(v[j] for v in a.vertices)
        b_lo = min(v[j] for v in b.vertices)
        b_hi = max(v[j] for v in b.vertices)
        if a_hi <= b_lo or b_hi <= a_lo:
            return False
    margin = lp.max_min_margin(_interior_inequalities(a) + _interior_inequalities(b), dim)
    return margin > 0


def verify_cover(cover: SimplicialCover) -> Certification:
    """Exact certification of a cover.

    Triangulations are fully checked: unimodular cells, containment in the
    target, cell volumes summing to the target's normalized volume, and
    pairwise disjoint interiors; success means "certified".  General covers
    only get the unimodularity and containment checks ("vertices-only"),
    because exact coverage of an overlapping union is not decided here.
    """
    problems = []
    target = cover.target
    if not cover.cells:
        problems.append("cover has no cells")
    for i, cell in enumerate(cover.cells):
        if cell.dim != target.dim:
            problems.append(f"cell {i} has dimension {cell.dim}, target has {target.dim}")
            continue
        for v in cell.vertices:
            if not contains(target, v):
                problems.append(f"cell {i} vertex {list(v)} lies outside the target")
                break
        if not is_unimodular(cell):
            problems.append(f"cell {i} is not unimodular (index {lattice_index(cell)})")
    if cover.kind == "general-cover":
        status = "vertices-only" if not problems else "uncertified"
        return Certification(status=status, problems=tuple(problems))
    if cover.kind != "triangulation":
        return Certification(status="uncertified", problems=(f"unknown cover kind {cover.kind!r}",))
    if not any("dimension" in msg for msg in problems):
        total = sum(lattice_index(c) for c in cover.cells)
        vol = normalized_volume(target)
        if total != vol:
            problems.append(
                f"cell volumes sum to {total} but the target has normalized volume {vol}"
            )
        for i in range(len(cover.cells)):
            for j in range(i + 1, len(cover.cells)):
                if _interiors_intersect(cover.cells[i], cover.cells[j]):
                    problems.append(f"cells {i} and {j} share an interior point")
    status = "certified" if not problems else "uncertified"
    return Certification(status=status, problems=tuple(problems))


def find_unimodular_triangulation(
    p: LatticePolytope, attempts: int = 20, seed: int = 0
) -> Optional[SimplicialCover]:
    """Search for a certified all-unimodular placing triangulation.

    Tries the lexicographic insertion order first, then seeded shuffles.
    Returns the first certified cover, or None.  None only proves
    nonexistence when the lattice points admit a single triangulation
    (see has_unique_triangulation); otherwise it just means "not found".
    """
    if not isinstance(attempts, int) or isinstance(attempts, bool) or attempts < 1:
        raise ValueError(f"attempts must be a positive integer, got {attempts!r}")
    pts = list(lattice_points(p))
    for k in range(attempts):
        if k == 0:
            order = pts
        else:
            order = pts[:]
            random.Random(f"{seed}:{k}").shuffle(order)
        cover = placing_triangulation(p, order)
        if all(is_unimodular(c) for c in cover.cells):
            cert = verify_cover(cover)
            if cert.status == "certified":
                return replace(cover, certified="certified")
    return None


def has_unique_triangulation(p: LatticePolytope) -> bool:
    """True when the only triangulation on the lattice points is forced.

    This is the one situation where a failed search is a proof: a
    full-dimensional polytope whose lattice points are exactly the n+1
    vertices of a simplex admits that simplex as its only triangulation.
    """
    return p.is_full_dimensional() and len(lattice_points(p)) == p.dim + 1


def decompose(
    p: LatticePolytope, cover: SimplicialCover, point: Sequence[int], h: int
) -> Decomposition:
    """Decompose a lattice point of the h-fold dilate via a certified cover.

    Locates the first cell (in cover order) containing point/h and solves
    there; the parts are h lattice points of p summing to the input.
    """
    pt = as_point(point)
    if len(pt) != p.dim:
        raise DimensionMismatchError("point dimension does not match the polytope")
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise ValueError(f"h must be a positive integer, got {h!r}")
    if cover.certified != "certified":
        raise ValueError("decompose requires a cover with certified status")
    q = tuple(Fraction(x, h) for x in pt)
    for cell in cover.cells:
        if cell.contains_point(q):
            return decompose_in_simplex(cell, pt, h)
    if contains(p, q):
        raise CoverageError(
            f"no cell of the certified cover contains {pt} / {h}; the certificate is wrong"
        )
    raise PointOutsideError(f"{pt} is not a point of the {h}-fold dilate")


@dataclass(frozen=True)
class EllProbe:
    """One row of the dilation search: certificate vs direct verdicts at ell."""

    ell: int
    certificate: str  # "certified" | "not-found" | "impossible"
    cell_count: Optional[int]
    idp: tuple


@dataclass(frozen=True)
class EllReport:
    """Result of scanning dilation factors 1..ell_max."""

    ell: Optional[int]
    per_ell: tuple


def find_ell(
    p: LatticePolytope, ell_max: int, h_max: int, attempts: int = 20, seed: int = 0
) -> EllReport:
    """Search for the smallest dilation factor with a certified triangulation.

    Every factor in 1..ell_max gets a row pairing the certificate outcome
    with the direct h-fold verdicts for h = 1..h_max, so the two can be
    cross-checked; `ell` is the smallest certified factor, or None.
    """
    if not isinstance(ell_max, int) or isinstance(ell_max, bool) or ell_max < 1:
        raise ValueError(f"ell_max must be a positive integer, got {ell_max!r}")
    rows = []
    found = None
    for ell in range(1, ell_max + 1):
        scaled = dilate(p, ell)
        cover = find_unimodular_triangulation(scaled, attempts=attempts, seed=seed)
        if cover is not None:
            status = "certified"
            if found is None:
                found = ell
        elif has_unique_triangulation(scaled):
            status = "impossible"
        else:
            status = "not-found"
        rows.append(
            EllProbe(
                ell=ell,
                certificate=status,
                cell_count=len(cover.cells) if cover is not None else None,
                idp=idp_scan(scaled, h_max),
            )
        )
    return EllReport(ell=found, per_ell=tuple(rows))
