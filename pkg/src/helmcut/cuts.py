"""Surface systems, the cut/open operation, and cut-system classification.

A surface system in a domain complex K is a finite family of disjoint,
connected, two-sided, properly embedded surfaces.  Cutting K along the
system is realized combinatorially: remove the open star of the (once
subdivided) surfaces from the second barycentric subdivision of K.  The
result deformation-retracts onto the complement of the surfaces, so its
components carry the right homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complexes import (
    ComplexError,
    MarkedComplex,
    Simplex,
    SimplicialComplex,
    barycentric_subdivide_with_map,
    boundary_subcomplex,
    build_complex,
    connected_components,
    last_vertex_map,
    push_cycle,
)
from .exact_linalg import IntegerMatrix, smith_normal_form
from .homology import (
    Chain,
    InternalConsistencyError,
    homology_of,
    homology_of_pair,
    is_boundary_witness,
)


class SurfaceSystemError(ComplexError):
    """A proposed surface system violates an invariant."""

    def __init__(self, diagnostic: str, message: str):
        super().__init__(f"{diagnostic}: {message}")
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class SurfaceSystem:
    """Named disjoint surfaces, each given by its generating triangles."""

    names: tuple[str, ...]
    triangles: tuple[tuple[Simplex, ...], ...]

    def __len__(self) -> int:
        return len(self.names)


def surface_system_from_marks(M: MarkedComplex, names: Sequence[str] | None = None) -> SurfaceSystem:
    if names is None:
        names = sorted(M.marks)
    tris = []
    for name in names:
        if name not in M.marks:
            raise ComplexError(f"unknown marked subcomplex: {name!r}")
        tris.append(tuple(M.marks[name]))
    return SurfaceSystem(tuple(names), tuple(tris))


def _as_marked(K) -> MarkedComplex:
    if isinstance(K, MarkedComplex):
        return K
    return MarkedComplex(K, {})


# -- validation ------------------------------------------------------------


def _faces(simplex: Simplex) -> list[Simplex]:
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def validate_surface_system(K, F: SurfaceSystem) -> list[SimplicialComplex]:
    """Check all surface-system invariants; returns the surfaces as
    subcomplexes.  Raises SurfaceSystemError with a diagnostic tag
    (overlap, disconnected, non-surface, one-sided, boundary-leak) on the
    first violated invariant."""
    M = _as_marked(K)
    KC = M.complex
    if not KC.simplices(3):
        raise ComplexError("surface systems live in pure 3-dimensional complexes")
    tri_tets: dict[Simplex, list[Simplex]] = {}
    for tet in KC.simplices(3):
        for f in _faces(tet):
            tri_tets.setdefault(f, []).append(tet)
    bdK = boundary_subcomplex(KC)
    bd_edges = set(bdK.simplices(1))
    bd_tris = set(bdK.simplices(2))

    surfaces = []
    seen: dict[Simplex, str] = {}
    for name, tris in zip(F.names, F.triangles):
        if not tris:
            raise SurfaceSystemError("non-surface", f"{name} has no triangles")
        S = KC.subcomplex(tris)
        if S.dimension != 2 or S.simplices(3):
            raise SurfaceSystemError("non-surface", f"{name} is not 2-dimensional")
        if len(connected_components(S)) != 1:
            raise SurfaceSystemError("disconnected", f"{name} is not connected")
        # every simplex belongs to at most one surface
        for dim in range(3):
            for s in S.simplices(dim):
                if s in seen:
                    raise SurfaceSystemError(
                        "overlap", f"{name} and {seen[s]} share {s}"
                    )
                seen[s] = name
        # manifold condition and boundary behaviour
        edge_count: dict[Simplex, int] = {e: 0 for e in S.simplices(1)}
        for t in S.simplices(2):
            for e in _faces(t):
                edge_count[e] += 1
        for e, c in edge_count.items():
            if c > 2:
                raise SurfaceSystemError(
                    "non-surface", f"edge {e} of {name} has {c} triangles"
                )
        for e, c in edge_count.items():
            if c == 1 and e not in bd_edges:
                raise SurfaceSystemError(
                    "boundary-leak", f"boundary edge {e} of {name} is not on the domain boundary"
                )
            if c == 2 and e in bd_edges:
                raise SurfaceSystemError(
                    "boundary-leak", f"interior edge {e} of {name} lies on the domain boundary"
                )
        for t in S.simplices(2):
            if t in bd_tris or len(tri_tets[t]) != 2:
                raise SurfaceSystemError(
                    "boundary-leak", f"triangle {t} of {name} is not interior to the domain"
                )
        _check_two_sided(KC, S, name, tri_tets)
        surfaces.append(S)
    return surfaces


def _check_two_sided(
    K: SimplicialComplex, S: SimplicialComplex, name: str, tri_tets: Mapping[Simplex, list[Simplex]]
) -> None:
    """Two-sidedness: a consistent transverse orientation must propagate
    across the interior edges of S.  A side of a triangle is one of its two
    incident tetrahedra; walking the tetrahedron fan around a shared edge
    links a side of one triangle to a side of the other."""
    # union-find over (triangle, side) pairs
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    s_tris = set(S.simplices(2))
    edge_tris: dict[Simplex, list[Simplex]] = {}
    for t in s_tris:
        for e in _faces(t):
            edge_tris.setdefault(e, []).append(t)
    # fan structures around each interior edge of S
    for e, tris_here in edge_tris.items():
        if len(tris_here) != 2:
            continue
        t1, t2 = tris_here
        # walk the fan of K around e starting at t1 into each of its sides
        k_tris_at_e = [
            t for t in K.simplices(2) if set(e) <= set(t)
        ]
        tet_by_tri: dict[Simplex, list[Simplex]] = {t: list(tri_tets[t]) for t in k_tris_at_e}
        for start_tet in tet_by_tri[t1]:
            tri, tet = t1, start_tet
            while True:
                # next triangle of the fan: the other face of tet containing e
                nxt = [
                    f for f in _faces(tet) if set(e) <= set(f) and f != tri
                ]
                if len(nxt) != 1:
                    raise ComplexError(f"bad tetrahedron fan around edge {e}")
                tri = nxt[0]
                if tri in s_tris:
                    break
                tets = tet_by_tri[tri]
                others = [x for x in tets if x != tet]
                if len(others) != 1:
                    raise ComplexError(f"edge {e} has a non-circular fan")
                tet = others[0]
            # side (t1, start_tet) faces side (tri, tet) across this arc
            union((t1, start_tet), (tri, tet))
    for t in s_tris:
        tets = tri_tets[t]
        if len(tets) == 2 and find((t, tets[0])) == find((t, tets[1])):
            raise SurfaceSystemError("one-sided", f"{name} has no consistent transverse orientation")


# -- cut/open --------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    components: tuple[SimplicialComplex, ...]
    vertex_map: dict  # vertex of the cut complex -> vertex of the base complex

    @property
    def component_count(self) -> int:
        return len(self.components)


def cut_open(K, F: SurfaceSystem, depth: int = 2) -> CutResult:
    """Cut a domain complex along a validated surface system.

    The cut complex is the full subcomplex of the depth-th barycentric
    subdivision of K spanned by the vertices whose carrier is not contained
    in the (depth-1 times subdivided) surfaces: the complement of the open
    star, a regular-neighborhood complement.  The returned vertex map (a
    composition of last-vertex simplicial approximations of the identity)
    carries cut cycles back into K.
    """
    if depth < 2:
        raise ComplexError("cut depth must be at least 2")
    validate_surface_system(K, F)
    M = _as_marked(K)
    KC = M.complex
    if not F.names:
        # cutting along nothing is the identity
        return CutResult(tuple(connected_components(KC)), {v: v for v in KC.vertices})
    sigma = KC.subcomplex([t for tris in F.triangles for t in tris])

    level = KC
    sigma_simplices = (
        set(s for d in range(3) for s in sigma.simplices(d)) if sigma else set()
    )
    maps = []
    sigma_vertices: set[int] = set()
    for d in range(depth):
        level, v2s = barycentric_subdivide_with_map(level)
        maps.append(last_vertex_map(v2s))
        if d == 0:
            sigma_vertices = {v for v, s in v2s.items() if s in sigma_simplices}
        else:
            sigma_vertices = {
                v for v, s in v2s.items() if all(u in sigma_vertices for u in s)
            }
        if d == depth - 2:
            final_sigma = set(sigma_vertices)
    # survivors: carrier not contained in the subdivided surface
    last_v2s = {v: s for v, s in v2s.items()}
    survivors = {
        v
        for v, s in last_v2s.items()
        if not all(u in final_sigma for u in s)
    }
    kept = [
        s
        for dim in range(4)
        for s in level.simplices(dim)
        if all(v in survivors for v in s)
    ]
    cut = build_complex(kept)
    composed: dict[int, int] = {}
    for v in cut.vertices:
        x = v
        for m in reversed(maps):
            x = m[x]
        composed[v] = x
    comps = tuple(connected_components(cut))
    return CutResult(comps, composed)


# -- relative classes ------------------------------------------------------


def orient_surface_with_boundary(S: SimplicialComplex) -> dict[Simplex, int]:
    """Consistent orientation signs for a connected surface with (possibly
    empty) boundary; smallest triangle gets +1.  Raises if non-orientable."""
    tris = S.simplices(2)
    at_edge: dict[Simplex, list[Simplex]] = {}
    for t in tris:
        for e in _faces(t):
            at_edge.setdefault(e, []).append(t)

    def induced(t: Simplex, e: Simplex) -> int:
        for i, f in enumerate(_faces(t)):
            if f == e:
                return (-1) ** i
        raise AssertionError

    sign: dict[Simplex, int] = {}
    for t0 in tris:
        if t0 in sign:
            continue
        sign[t0] = 1
        stack = [t0]
        while stack:
            t = stack.pop()
            for e in _faces(t):
                pair = at_edge[e]
                if len(pair) != 2:
                    continue
                other = pair[1] if t == pair[0] else pair[0]
                want = -sign[t] * induced(t, e) * induced(other, e)
                if other in sign:
                    if sign[other] != want:
                        raise ComplexError("surface is not orientable")
                else:
                    sign[other] = want
                    stack.append(other)
    return sign


@dataclass(frozen=True)
class RelativeClassData:
    matrix: IntegerMatrix  # columns: [Sigma_i]; rows: free basis of H2(K, dK)
    rank: int
    chains: tuple[Chain, ...]  # the oriented relative 2-cycles


def relative_surface_classes(K, F: SurfaceSystem) -> RelativeClassData:
    """Express each (oriented) surface of the system as a relative 2-cycle
    and report the coordinates in the fixed basis of H2(K, boundary), plus
    the rank of their span.

    Orientations are fixed by the smallest-triangle convention; flipping an
    orientation flips the sign of its column but never the rank.
    """
    surfaces = validate_surface_system(K, F)
    KC = _as_marked(K).complex
    bd = boundary_subcomplex(KC)
    H = homology_of_pair(KC, bd)
    chains = []
    cols = []
    for S in surfaces:
        ori = orient_surface_with_boundary(S)
        chain = {t: s for t, s in ori.items()}
        chains.append(chain)
        cols.append(H.class_coords(chain, 2)[0])
    rows = H.betti(2)
    Mx = IntegerMatrix(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])
    rank = smith_normal_form(Mx).rank if rows and cols else 0
    return RelativeClassData(Mx, rank, tuple(chains))


# -- classification --------------------------------------------------------


@dataclass(frozen=True)
class CutVerdict:
    system_size: int
    component_count: int
    component_betti: tuple[tuple[int, int, int, int], ...]
    is_helmholtz_cut_system: bool
    is_weak_cut_system: bool
    is_minimal_weak: bool
    relative_class_matrix: IntegerMatrix
    relative_class_rank: int

    @property
    def independent(self) -> bool:
        return self.relative_class_rank == self.system_size

    @property
    def cut_connected(self) -> bool:
        return self.component_count == 1

    def to_json(self) -> dict:
        return {
            "system_size": self.system_size,
            "component_count": self.component_count,
            "component_betti": [list(b) for b in self.component_betti],
            "is_helmholtz_cut_system": self.is_helmholtz_cut_system,
            "is_weak_cut_system": self.is_weak_cut_system,
            "is_minimal_weak": self.is_minimal_weak,
            "relative_class_matrix": self.relative_class_matrix.to_lists(),
            "relative_class_rank": self.relative_class_rank,
        }


def classify_cut_system(K, F: SurfaceSystem, depth: int = 2) -> CutVerdict:
    """Classify a surface system:

    - Helmholtz cut-system: every cut component has b1 = 0.
    - weak cut-system: the relative classes span rank b1(K); cross-checked
      against the direct criterion that every cut component's H1 maps to
      zero in H1(K) (integrally, with witnesses).
    - minimal weak: weak with exactly b1(K) surfaces and connected cut.
    """
    KC = _as_marked(K).complex
    rel = relative_surface_classes(K, F)
    cut = cut_open(K, F, depth=depth)
    betti = []
    beta4_vanishes = True
    for comp in cut.components:
        Hc = homology_of(comp)
        betti.append(tuple(Hc.betti(n) for n in range(4)))
        for gen in Hc.generators(1):
            pushed = push_cycle(gen, cut.vertex_map)
            if pushed and not is_boundary_witness(KC, pushed).bounds:
                beta4_vanishes = False
    b1 = homology_of(KC).betti(1)
    weak_by_rank = rel.rank == b1
    if weak_by_rank != beta4_vanishes:
        raise InternalConsistencyError(
            "relative-class rank criterion and direct component-H1 check disagree"
        )
    helmholtz = all(b[1] == 0 for b in betti)
    minimal = weak_by_rank and len(F) == b1 and cut.component_count == 1
    return CutVerdict(
        len(F),
        cut.component_count,
        tuple(betti),
        helmholtz,
        weak_by_rank,
        minimal,
        rel.matrix,
        rel.rank,
    )


def find_minimal_weak_subsets(K, F: SurfaceSystem, max_size: int = 6) -> list[tuple[str, ...]]:
    """Exhaustive search (|F| <= max_size) for subsets of the system that
    are minimal weak cut-systems with connected cut."""
    if len(F) > max_size:
        raise ComplexError(f"subset search limited to systems of size <= {max_size}")
    from itertools import combinations

    KC = _as_marked(K).complex
    b1 = homology_of(KC).betti(1)
    hits = []
    for k in range(len(F) + 1):
        if k != b1:
            continue
        for idx in combinations(range(len(F)), k):
            sub = SurfaceSystem(
                tuple(F.names[i] for i in idx), tuple(F.triangles[i] for i in idx)
            )
            verdict = classify_cut_system(K, sub)
            if verdict.is_minimal_weak:
                hits.append(sub.names)
    return hits
