"""Finite abstract simplicial complexes of dimension <= 3.

Vertices are integer labels.  A simplex is a sorted tuple of distinct
vertices; the sorted tuple is the positive orientation.  All operations are
pure: complexes are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .exact_linalg import IntegerMatrix

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Invalid input to a simplicial-complex operation."""


def _faces(simplex: Simplex) -> list[Simplex]:
    """All codimension-1 faces, in vertex-deletion order."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


class SimplicialComplex:
    """Immutable simplicial complex, closed under faces, dim <= 3."""

    __slots__ = ("_simplices", "_hash")

    def __init__(self, simplices_by_dim: Sequence[Sequence[Simplex]]):
        # Trusted constructor: callers must pass face-closed, sorted data.
        self._simplices = tuple(tuple(s) for s in simplices_by_dim)
        self._hash = hash(self._simplices)

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_simplices(simplex_list: Iterable[Sequence[int]]) -> "SimplicialComplex":
        by_dim: list[set[Simplex]] = [set(), set(), set(), set()]
        for raw in simplex_list:
            verts = tuple(sorted(int(v) for v in raw))
            if len(verts) == 0 or len(verts) > 4:
                raise ComplexError(f"simplex must have 1-4 vertices: {raw!r}")
            if len(set(verts)) != len(verts):
                raise ComplexError(f"malformed simplex (repeated vertex): {raw!r}")
            by_dim[len(verts) - 1].add(verts)
        # face closure
        for dim in (3, 2, 1):
            for s in list(by_dim[dim]):
                for f in _faces(s):
                    by_dim[dim - 1].add(f)
        return SimplicialComplex([sorted(d) for d in by_dim])

    # -- basic queries -----------------------------------------------------

    def simplices(self, dim: int) -> tuple[Simplex, ...]:
        if not 0 <= dim <= 3:
            return ()
        return self._simplices[dim]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self._simplices[0])

    @property
    def dimension(self) -> int:
        for dim in (3, 2, 1, 0):
            if self._simplices[dim]:
                return dim
        return -1  # empty complex

    def all_simplices(self) -> list[Simplex]:
        out: list[Simplex] = []
        for dim in range(4):
            out.extend(self._simplices[dim])
        return out

    def has_simplex(self, simplex: Sequence[int]) -> bool:
        s = tuple(sorted(simplex))
        k = len(s) - 1
        if not 0 <= k <= 3:
            return False
        return s in set(self._simplices[k])

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        counts = [len(d) for d in self._simplices]
        return f"SimplicialComplex(f-vector={counts})"

    # -- derived complexes -------------------------------------------------

    def subcomplex(self, generators: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Face closure of the given simplices; all must belong to self."""
        sub = SimplicialComplex.from_simplices(generators)
        mine = [set(d) for d in self._simplices]
        for dim in range(4):
            for s in sub.simplices(dim):
                if s not in mine[dim]:
                    raise ComplexError(f"simplex {s} not in ambient complex")
        return sub

    def contains(self, other: "SimplicialComplex") -> bool:
        return all(
            set(other.simplices(d)) <= set(self.simplices(d)) for d in range(4)
        )


def build_complex(simplex_list: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given simplices (1-4 distinct vertices each)."""
    return SimplicialComplex.from_simplices(simplex_list)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * len(K.simplices(d)) for d in range(4))


def boundary_matrix(K: SimplicialComplex, n: int) -> IntegerMatrix:
    """Matrix of the boundary operator d_n in the canonical sorted bases.

    Rows are indexed by (n-1)-simplices, columns by n-simplices; the entry
    for face f of simplex s is (-1)**i where f omits the i-th vertex of s.
    """
    if not 1 <= n <= 3:
        raise ComplexError(f"boundary dimension out of range: {n}")
    rows = K.simplices(n - 1)
    cols = K.simplices(n)
    index = {s: i for i, s in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i, f in enumerate(_faces(s)):
            entries[index[f]][j] += (-1) ** i
    return IntegerMatrix(len(rows), len(cols), entries)


def boundary_operator(K: SimplicialComplex, n: int) -> dict[Simplex, dict[Simplex, int]]:
    """Sparse boundary: n-simplex -> {face: coefficient}."""
    out: dict[Simplex, dict[Simplex, int]] = {}
    for s in K.simplices(n):
        out[s] = {f: (-1) ** i for i, f in enumerate(_faces(s))}
    return out


def is_pure_3(K: SimplicialComplex) -> bool:
    tets = K.simplices(3)
    if not tets:
        return False
    covered: set[Simplex] = set()
    for t in tets:
        covered.add(t)
        for f in _faces(t):
            covered.add(f)
            for e in _faces(f):
                covered.add(e)
                for v in _faces(e):
                    covered.add(v)
    return all(s in covered for s in K.all_simplices())


def boundary_subcomplex(K: SimplicialComplex) -> SimplicialComplex:
    """Subcomplex generated by triangles incident to exactly one tetrahedron."""
    if not is_pure_3(K):
        raise ComplexError("boundary_subcomplex requires a pure 3-complex")
    count: dict[Simplex, int] = {}
    for t in K.simplices(3):
        for f in _faces(t):
            count[f] = count.get(f, 0) + 1
    return build_complex([f for f, c in count.items() if c == 1])


def connected_components(K: SimplicialComplex) -> list[SimplicialComplex]:
    """Partition by vertex-edge connectivity (sorted by smallest vertex)."""
    parent: dict[int, int] = {v: v for v in K.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in K.simplices(1):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[Simplex]] = {}
    for dim in range(4):
        for s in K.simplices(dim):
            groups.setdefault(find(s[0]), []).append(s)
    comps = [build_complex(g) for g in groups.values()]
    comps.sort(key=lambda c: c.vertices[0])
    return comps


# -- barycentric subdivision ----------------------------------------------


def barycentric_subdivide_with_map(
    K: SimplicialComplex,
) -> tuple[SimplicialComplex, dict[int, Simplex]]:
    """Barycentric subdivision plus the map new-vertex -> original simplex.

    New vertex labels are the indices of the original simplices in the
    (dimension, tuple)-sorted order, so the result is deterministic.
    """
    all_simplices = K.all_simplices()
    vid = {s: i for i, s in enumerate(all_simplices)}
    # Chains of the face poset ending at each simplex, memoized.
    chains_at: dict[Simplex, list[tuple[int, ...]]] = {}
    for s in all_simplices:  # sorted by dim, so faces come first
        own = (vid[s],)
        chains = [own]
        if len(s) > 1:
            for f in _proper_faces(s):
                for ch in chains_at[f]:
                    chains.append(ch + own)
        chains_at[s] = chains
    new_simplices = [ch for chains in chains_at.values() for ch in chains]
    return build_complex(new_simplices), {i: s for s, i in vid.items()}


def _proper_faces(simplex: Simplex) -> list[Simplex]:
    """All proper nonempty faces."""
    out = []
    n = len(simplex)
    for mask in range(1, (1 << n) - 1):
        out.append(tuple(simplex[i] for i in range(n) if mask >> i & 1))
    return out


def barycentric_subdivide(K: SimplicialComplex) -> SimplicialComplex:
    return barycentric_subdivide_with_map(K)[0]


def last_vertex_map(vertex_to_simplex: Mapping[int, Simplex]) -> dict[int, int]:
    """Simplicial approximation of the identity K' -> K (barycenter -> max vertex)."""
    return {v: max(s) for v, s in vertex_to_simplex.items()}


def push_cycle(cycle: Mapping[Simplex, int], vertex_map: Mapping[int, int]) -> dict[Simplex, int]:
    """Push a 1-chain through a simplicial vertex map (degenerate edges drop)."""
    out: dict[Simplex, int] = {}
    for (a, b), coeff in cycle.items():
        ia, ib = vertex_map[a], vertex_map[b]
        if ia == ib:
            continue
        sign = 1 if ia < ib else -1
        e = (min(ia, ib), max(ia, ib))
        out[e] = out.get(e, 0) + sign * coeff
        if out[e] == 0:
            del out[e]
    return out


# -- closed surfaces -------------------------------------------------------


@dataclass(frozen=True)
class SurfaceComponentInfo:
    euler_characteristic: int
    orientable: bool
    genus: int | None  # (2 - chi) / 2 for orientable components, else None


@dataclass(frozen=True)
class SurfaceInfo:
    components: tuple[SurfaceComponentInfo, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    @property
    def orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    @property
    def genus_list(self) -> tuple[int | None, ...]:
        return tuple(c.genus for c in self.components)


def _check_closed_surface(S: SimplicialComplex) -> None:
    if S.simplices(3):
        raise ComplexError("not a surface: contains tetrahedra")
    count: dict[Simplex, int] = {e: 0 for e in S.simplices(1)}
    for t in S.simplices(2):
        for e in _faces(t):
            count[e] += 1
    bad = [e for e, c in count.items() if c != 2]
    if bad:
        raise ComplexError(f"not a closed surface: edge {bad[0]} has {count[bad[0]]} triangles")


def orient_surface(S: SimplicialComplex) -> dict[Simplex, int] | None:
    """Consistent triangle orientations (sign per sorted triangle), or None.

    The component containing the smallest triangle gets that triangle with
    sign +1; other components likewise from their smallest triangle.
    Requires every edge to bound exactly 2 triangles.
    """
    _check_closed_surface(S)
    tris = S.simplices(2)
    at_edge: dict[Simplex, list[Simplex]] = {}
    for t in tris:
        for e in _faces(t):
            at_edge.setdefault(e, []).append(t)
    sign: dict[Simplex, int] = {}

    def induced(t: Simplex, e: Simplex) -> int:
        # coefficient of edge e in the boundary of t (canonical orientation)
        for i, f in enumerate(_faces(t)):
            if f == e:
                return (-1) ** i
        raise AssertionError

    for t0 in tris:
        if t0 in sign:
            continue
        sign[t0] = 1
        stack = [t0]
        while stack:
            t = stack.pop()
            for e in _faces(t):
                (ta, tb) = at_edge[e]
                other = tb if t == ta else ta
                # opposite induced orientations on the shared edge
                want = -sign[t] * induced(t, e) * induced(other, e)
                if other in sign:
                    if sign[other] != want:
                        return None
                else:
                    sign[other] = want
                    stack.append(other)
    return sign


def surface_info(S: SimplicialComplex) -> SurfaceInfo:
    """Per-component Euler characteristic, orientability and genus."""
    _check_closed_surface(S)
    infos = []
    for comp in connected_components(S):
        chi = euler_characteristic(comp)
        orientation = orient_surface(comp)
        orientable = orientation is not None
        genus: int | None = None
        if orientable:
            if chi % 2:
                raise ComplexError("odd Euler characteristic on an orientable closed surface")
            genus = (2 - chi) // 2
        infos.append(SurfaceComponentInfo(chi, orientable, genus))
    return SurfaceInfo(tuple(infos))


# -- products and mapping tori --------------------------------------------


def _prism_pieces(simplex: Simplex, bottom: Callable[[int], int], top: Callable[[int], int]):
    """Staircase split of simplex x [0,1] into len(simplex) simplices."""
    k = len(simplex)
    for j in range(k):
        yield tuple(bottom(v) for v in simplex[: j + 1]) + tuple(top(v) for v in simplex[j:])


def _product_simplices(
    S: SimplicialComplex, steps: int, label: Callable[[int, int], int]
) -> list[Simplex]:
    out: list[Simplex] = []
    dim = S.dimension
    tops = S.simplices(dim) if dim >= 0 else ()
    # include lower-dim maximal simplices too: take all simplices of top two
    # dims; face closure removes duplicates.
    gens: list[Simplex] = []
    for d in range(4):
        gens.extend(S.simplices(d))
    for t in range(steps):
        for s in gens:
            for piece in _prism_pieces(s, lambda v: label(v, t), lambda v: label(v, t + 1)):
                out.append(piece)
    return out


class MarkedComplex:
    """A complex with named marked subcomplexes (given by generating simplices)."""

    __slots__ = ("complex", "marks")

    def __init__(self, complex: SimplicialComplex, marks: Mapping[str, Sequence[Simplex]]):
        self.complex = complex
        self.marks = {
            name: tuple(sorted(tuple(sorted(s)) for s in gens))
            for name, gens in marks.items()
        }

    def mark(self, name: str) -> SimplicialComplex:
        if name not in self.marks:
            raise ComplexError(f"unknown marked subcomplex: {name!r}")
        return self.complex.subcomplex(self.marks[name])


def product_with_interval(S: SimplicialComplex, steps: int = 1) -> MarkedComplex:
    """Triangulated S x [0,1] with marked copies "bottom" (S x 0) and "top" (S x 1)."""
    if S.dimension > 2:
        raise ComplexError("product_with_interval requires dim <= 2")
    if steps < 1:
        raise ComplexError("steps must be positive")
    verts = sorted(S.vertices)
    idx = {v: i for i, v in enumerate(verts)}

    def label(v: int, t: int) -> int:
        return idx[v] * (steps + 1) + t

    K = build_complex(_product_simplices(S, steps, label))
    marks = {
        "bottom": [tuple(label(v, 0) for v in s) for s in _maximal(S)],
        "top": [tuple(label(v, steps) for v in s) for s in _maximal(S)],
    }
    return MarkedComplex(K, marks)


def _maximal(S: SimplicialComplex) -> list[Simplex]:
    faces: set[Simplex] = set()
    for d in (3, 2, 1):
        for s in S.simplices(d):
            for f in _faces(s):
                faces.add(f)
    return [s for d in range(4) for s in S.simplices(d) if s not in faces]


def mapping_torus(
    S: SimplicialComplex, phi: Mapping[int, int], steps: int = 3
) -> MarkedComplex:
    """Triangulated (S x [0,1]) / ((x,1) ~ (phi(x),0)) with marked "fiber" S x 0.

    phi must be a simplicial automorphism of S; steps >= 3 keeps the glued
    triangulation simplicial for automorphisms without fixed simplices.
    """
    verts = sorted(S.vertices)
    if sorted(phi.keys()) != verts or sorted(phi.values()) != verts:
        raise ComplexError("phi is not a vertex bijection of S")
    for d in range(4):
        for s in S.simplices(d):
            if not S.has_simplex([phi[v] for v in s]):
                raise ComplexError(f"phi is not simplicial: image of {s} missing")
    if steps < 1:
        raise ComplexError("steps must be positive")
    idx = {v: i for i, v in enumerate(verts)}

    def label(v: int, t: int) -> int:
        if t == steps:
            return idx[phi[v]] * steps
        return idx[v] * steps + t

    pieces = _product_simplices(S, steps, label)
    for p in pieces:
        if len(set(p)) != len(p):
            raise ComplexError("mapping torus gluing is degenerate; increase steps")
    K = build_complex(pieces)
    dim = S.dimension
    expected = (dim + 1) * steps * len(S.simplices(dim))
    if len(K.simplices(dim + 1)) != expected:
        raise ComplexError("mapping torus gluing identified distinct simplices; increase steps")
    marks = {"fiber": [tuple(label(v, 0) for v in s) for s in _maximal(S)]}
    return MarkedComplex(K, marks)


# -- JSON complex format ---------------------------------------------------


def marked_complex_from_json(data: Mapping) -> MarkedComplex:
    if not isinstance(data, Mapping) or "simplices" not in data:
        raise ComplexError('JSON complex must have a "simplices" array')
    K = build_complex(data["simplices"])
    marks_raw = data.get("marked_subcomplexes", {})
    marks = {}
    for name, gens in marks_raw.items():
        marks[name] = [tuple(sorted(int(v) for v in s)) for s in gens]
        for s in marks[name]:
            if not K.has_simplex(s):
                raise ComplexError(f"marked simplex {s} of {name!r} not in complex")
    return MarkedComplex(K, marks)


def marked_complex_to_json(M: MarkedComplex) -> dict:
    out: dict = {"simplices": [list(s) for s in _maximal(M.complex)]}
    if M.marks:
        out["marked_subcomplexes"] = {
            name: [list(s) for s in gens] for name, gens in sorted(M.marks.items())
        }
    return out
