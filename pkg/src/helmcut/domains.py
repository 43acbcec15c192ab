"""Domain-level invariants and verdicts for compact triangulated domains.

A "domain complex" is a pure 3-dimensional complex with non-empty boundary,
standing for the closure of a bounded domain with smooth-enough boundary.
This module computes the boundary decomposition, the standard numerical
identities, the kernel of the boundary inclusion on first homology, the
skew intersection form on each boundary surface, the Lagrangian
obstruction, and corank bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .complexes import (
    ComplexError,
    MarkedComplex,
    Simplex,
    SimplicialComplex,
    boundary_subcomplex,
    connected_components,
    euler_characteristic,
    orient_surface,
    surface_info,
)
from .exact_linalg import IntegerMatrix, smith_normal_form
from .homology import (
    Chain,
    InternalConsistencyError,
    homology_groups,
    homology_of,
)


class NotADomainError(ComplexError):
    """Input is not a pure 3-complex with non-empty boundary."""


def _as_complex(K) -> SimplicialComplex:
    if isinstance(K, MarkedComplex):
        return K.complex
    return K


def _check_domain(K: SimplicialComplex) -> SimplicialComplex:
    if not K.simplices(3):
        raise NotADomainError("domain complex must be pure 3-dimensional")
    if not boundary_subcomplex(K).simplices(2):
        raise NotADomainError("domain complex must have non-empty boundary")
    return K


@lru_cache(maxsize=None)
def boundary_components(K: SimplicialComplex) -> tuple[SimplicialComplex, ...]:
    return tuple(connected_components(boundary_subcomplex(K)))


# -- domain report ---------------------------------------------------------


@dataclass(frozen=True)
class DomainReport:
    boundary_component_count: int          # h + 1
    genus_list: tuple[int | None, ...]     # per boundary component
    chi: int
    betti: tuple[int, int, int, int]
    torsion_free: bool
    identity_checks: tuple[tuple[str, bool], ...]

    @property
    def all_checks_pass(self) -> bool:
        return all(ok for _, ok in self.identity_checks)

    def to_json(self) -> dict:
        return {
            "boundary_component_count": self.boundary_component_count,
            "genus_list": list(self.genus_list),
            "chi": self.chi,
            "betti": list(self.betti),
            "torsion_free": self.torsion_free,
            "identity_checks": {name: ok for name, ok in self.identity_checks},
            "all_checks_pass": self.all_checks_pass,
        }


def analyze_domain(K) -> DomainReport:
    """Numerical profile of a domain plus the standard identity checks:

    (i)   chi = 1 - b1 + b2
    (ii)  chi = (h+1) - sum of boundary genera
    (iii) b1(boundary) = 2 b1
    (iv)  homology torsion-free in all degrees
    (v)   b3 = 0
    """
    K = _check_domain(_as_complex(K))
    groups = homology_groups(K)
    betti = tuple(g.rank for g in groups)
    chi = euler_characteristic(K)
    bd = boundary_subcomplex(K)
    info = surface_info(bd)
    genus_list = info.genus_list
    b1_bd = homology_of(bd).betti(1)
    torsion_free = all(not g.torsion for g in groups)
    h1 = len(genus_list)
    checks = (
        ("chi_eq_1_minus_b1_plus_b2", chi == 1 - betti[1] + betti[2]),
        (
            "chi_eq_components_minus_genus",
            info.orientable and chi == h1 - sum(genus_list),
        ),
        ("boundary_b1_eq_twice_b1", b1_bd == 2 * betti[1]),
        ("torsion_free", torsion_free),
        ("b3_zero", betti[3] == 0),
    )
    return DomainReport(h1, genus_list, chi, betti, torsion_free, checks)


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    b1: int
    b2: int
    boundary_component_count: int
    genus_list: tuple[int | None, ...]

    @property
    def profile_consistent(self) -> bool:
        """When simple: b2 = h and every boundary component is a sphere."""
        if not self.simple:
            return True
        return self.b2 == self.boundary_component_count - 1 and all(
            g == 0 for g in self.genus_list
        )

    def to_json(self) -> dict:
        return {
            "simple": self.simple,
            "b1": self.b1,
            "b2": self.b2,
            "boundary_component_count": self.boundary_component_count,
            "genus_list": list(self.genus_list),
            "profile_consistent": self.profile_consistent,
        }


def is_simple(K) -> SimplicityReport:
    """A domain is simple iff b1 = 0 (equivalently, every curl-free field
    is a gradient); simple domains have b2 = h and spherical boundary."""
    K = _check_domain(_as_complex(K))
    H = homology_of(K)
    info = surface_info(boundary_subcomplex(K))
    report = SimplicityReport(
        H.betti(1) == 0, H.betti(1), H.betti(2), info.component_count, info.genus_list
    )
    if report.simple and not report.profile_consistent:
        raise InternalConsistencyError("simple domain with non-simple profile")
    return report


# -- intersection form on a closed oriented surface ------------------------


def _vertex_fans(S: SimplicialComplex, orientation: Mapping[Simplex, int]) -> dict[int, dict[Simplex, int]]:
    """For each vertex: edge -> position in the positively-ordered fan.

    Walking the fan from an edge through the positively-oriented triangle
    between them yields the next edge counterclockwise.
    """
    succ: dict[int, dict[Simplex, Simplex]] = {v: {} for v in S.vertices}
    for t in S.simplices(2):
        v0, v1, v2 = t
        cyc = (v0, v1, v2) if orientation[t] == 1 else (v0, v2, v1)
        for i in range(3):
            v, x, y = cyc[i], cyc[(i + 1) % 3], cyc[(i + 2) % 3]
            succ[v][tuple(sorted((v, x)))] = tuple(sorted((v, y)))
    fans: dict[int, dict[Simplex, int]] = {}
    for v, nxt in succ.items():
        start = min(nxt)
        order: dict[Simplex, int] = {}
        e = start
        while e not in order:
            order[e] = len(order)
            e = nxt[e]
        if len(order) != len(nxt):
            raise ComplexError(f"link of vertex {v} is not a single circle")
        fans[v] = order
    return fans


def intersection_pairing(
    S: SimplicialComplex,
    z: Mapping[Simplex, int],
    w: Mapping[Simplex, int],
    orientation: Mapping[Simplex, int] | None = None,
    fans: Mapping[int, Mapping[Simplex, int]] | None = None,
) -> int:
    """Algebraic intersection number of two 1-cycles on a closed oriented
    surface.

    The second cycle is pushed off itself to the left and its transversal
    crossings with the first are counted with signs; per vertex this
    reduces to counting, for each strand of w through the vertex, the fan
    edges carried by z inside the sector swept by the strand.
    """
    if orientation is None:
        orientation = orient_surface(S)
        if orientation is None:
            raise ComplexError("surface is not orientable")
    if fans is None:
        fans = _vertex_fans(S, orientation)
    total = 0
    for v, order in fans.items():
        z_out: list[tuple[int, int]] = []  # (fan position, z-flow away from v)
        w_in: list[tuple[int, int]] = []   # (fan position, w-flow into v)
        for e, pos in order.items():
            zc = z.get(e, 0)
            if zc:
                z_out.append((pos, zc if e[0] == v else -zc))
            wc = w.get(e, 0)
            if wc:
                w_in.append((pos, wc if e[1] == v else -wc))
        if not z_out or not w_in:
            continue
        for pe, zf in z_out:
            for pf, wf in w_in:
                if pe < pf:
                    total += zf * wf
    # shared edges: the pushoff runs parallel to w and never crosses the
    # strand it was pushed off from
    for e, wc in w.items():
        zc = z.get(e, 0)
        if zc:
            total -= zc * wc
    return total


@dataclass(frozen=True)
class SurfaceFormData:
    generators: tuple[Chain, ...]          # basis cycles of H1 of the surface
    matrix: IntegerMatrix                  # pairing matrix on that basis


@lru_cache(maxsize=None)
def intersection_form(S: SimplicialComplex) -> SurfaceFormData:
    """Pairing matrix of the intersection form on H1 of a closed oriented
    connected surface, on the homology basis fixed by homology_of.

    Consistency requirements (skew-symmetry, unimodularity) are enforced.
    """
    orientation = orient_surface(S)
    if orientation is None:
        raise ComplexError("surface is not orientable")
    fans = _vertex_fans(S, orientation)
    gens = homology_of(S).free_generators(1)
    n = len(gens)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            M[i][j] = intersection_pairing(S, gens[i], gens[j], orientation, fans)
    mat = IntegerMatrix(n, n, M)
    for i in range(n):
        for j in range(n):
            if M[i][j] != -M[j][i]:
                raise InternalConsistencyError("intersection form is not skew-symmetric")
    if n and smith_normal_form(mat).diagonal != (1,) * n:
        raise InternalConsistencyError("intersection form is not unimodular")
    return SurfaceFormData(tuple(gens), mat)


# -- kernel of the boundary inclusion --------------------------------------


@dataclass(frozen=True)
class ComponentProjection:
    """P_j: the projection of Ker(i_*) into H1 of one boundary component."""

    coords: tuple[tuple[int, ...], ...]  # generating vectors in the H1(S_j) basis
    cycles: tuple[Chain, ...]            # the same generators as 1-cycles on S_j

    @property
    def rank(self) -> int:
        if not self.coords:
            return 0
        n = len(self.coords[0])
        M = IntegerMatrix(n, len(self.coords), [[c[i] for c in self.coords] for i in range(n)])
        return smith_normal_form(M).rank


@dataclass(frozen=True)
class BoundaryKernelData:
    components: tuple[SimplicialComplex, ...]
    genus_list: tuple[int, ...]
    kernel_coords: tuple[tuple[int, ...], ...]  # basis of Ker(i_*), concatenated basis
    kernel_cycles: tuple[Chain, ...]            # the same basis as 1-cycles on the boundary
    projections: tuple[ComponentProjection, ...]
    inclusion_surjective: bool

    @property
    def kernel_rank(self) -> int:
        return len(self.kernel_coords)


@lru_cache(maxsize=None)
def kernel_of_boundary_inclusion(K) -> BoundaryKernelData:
    """Integer kernel of i_*: H1(boundary) -> H1(domain), with per-component
    projections P_j.  The rank must equal the total boundary genus."""
    K = _check_domain(_as_complex(K))
    comps = boundary_components(K)
    genus_list = []
    gens: list[Chain] = []
    slices: list[tuple[int, int]] = []  # generator index range per component
    for S in comps:
        info = surface_info(S)
        if not info.orientable:
            raise ComplexError("boundary component is not orientable")
        genus_list.append(info.genus_list[0])
        start = len(gens)
        gens.extend(homology_of(S).free_generators(1))
        slices.append((start, len(gens)))
    HK = homology_of(K)
    rK = HK.betti(1)
    tors = HK.group(1).torsion
    # columns: boundary generators; rows: free coords of H1(K), then one row
    # per torsion factor (solved modulo the factor via helper columns)
    m = len(gens)
    cols = [HK.class_coords(g, 1) for g in gens]
    nt = len(tors)
    rows = []
    for i in range(rK):
        rows.append([c[0][i] for c in cols] + [0] * nt)
    for i, d in enumerate(tors):
        rows.append([c[1][i] for c in cols] + [d if j == i else 0 for j in range(nt)])
    A = IntegerMatrix(len(rows), m + nt, rows) if rows else IntegerMatrix(0, m + nt, [])
    snf = smith_normal_form(A)
    V = snf.V.to_lists()
    kernel_coords = []
    for j in range(snf.rank, m + nt):
        vec = tuple(V[i][j] for i in range(m))
        if any(vec):
            kernel_coords.append(vec)
    # drop the pure-helper kernel directions (zero on the generator part)
    kernel_cycles = []
    for vec in kernel_coords:
        cyc: Chain = {}
        for i, c in enumerate(vec):
            if c:
                for e, val in gens[i].items():
                    cyc[e] = cyc.get(e, 0) + c * val
        kernel_cycles.append({e: v for e, v in cyc.items() if v})
    if len(kernel_coords) != sum(genus_list):
        raise InternalConsistencyError(
            f"kernel rank {len(kernel_coords)} != total boundary genus {sum(genus_list)}"
        )
    # integer-level surjectivity of i_* (on the free part; torsion handled by
    # the helper columns having been available)
    free_rows = rows[:rK]
    if rK:
        Mfree = IntegerMatrix(rK, m + nt, free_rows)
        s = smith_normal_form(Mfree)
        surjective = s.rank == rK and all(d == 1 for d in s.diagonal[: s.rank])
    else:
        surjective = True
    projections = []
    for (start, stop), S in zip(slices, comps):
        pcoords = []
        pcycles = []
        edge_set = set(S.simplices(1))
        for vec, cyc in zip(kernel_coords, kernel_cycles):
            sub = vec[start:stop]
            if any(sub):
                pcoords.append(tuple(sub))
                pcycles.append({e: v for e, v in cyc.items() if e in edge_set})
        projections.append(ComponentProjection(tuple(pcoords), tuple(pcycles)))
    return BoundaryKernelData(
        comps,
        tuple(genus_list),
        tuple(kernel_coords),
        tuple(kernel_cycles),
        tuple(projections),
        surjective,
    )


# -- Lagrangian obstruction ------------------------------------------------


@dataclass(frozen=True)
class LagrangianVerdict:
    component: int
    lagrangian: bool
    witness: tuple[tuple[int, ...], tuple[int, ...], int] | None  # (u, v, <u,v>)


@dataclass(frozen=True)
class LagrangianReport:
    verdicts: tuple[LagrangianVerdict, ...]
    obstructed: bool  # True -> certified NOT weakly-Helmholtz

    def to_json(self) -> dict:
        return {
            "obstructed": self.obstructed,
            "certificate": "not weakly-Helmholtz" if self.obstructed else None,
            "components": [
                {
                    "component": v.component,
                    "lagrangian": v.lagrangian,
                    "witness": (
                        {
                            "u": list(v.witness[0]),
                            "v": list(v.witness[1]),
                            "pairing": v.witness[2],
                        }
                        if v.witness
                        else None
                    ),
                }
                for v in self.verdicts
            ],
        }


def lagrangian_obstruction(K) -> LagrangianReport:
    """Check, for each boundary component S_j, whether P_j (the projection
    of Ker(i_*)) is a Lagrangian submodule of H1(S_j) under the
    intersection form.  A non-Lagrangian P_j certifies that the domain is
    not weakly-Helmholtz.

    It suffices to test a generating set of P_j, by bilinearity.
    """
    K = _as_complex(K)
    data = kernel_of_boundary_inclusion(K)
    verdicts = []
    obstructed = False
    for j, (S, proj) in enumerate(zip(data.components, data.projections)):
        form = intersection_form(S)
        B = form.matrix.to_lists()
        witness = None
        for u in proj.coords:
            for v in proj.coords:
                val = sum(
                    u[a] * B[a][b] * v[b]
                    for a in range(len(u))
                    for b in range(len(v))
                    if u[a] and v[b]
                )
                if val:
                    witness = (u, v, val)
                    break
            if witness:
                break
        verdicts.append(LagrangianVerdict(j, witness is None, witness))
        if witness is not None:
            obstructed = True
    return LagrangianReport(tuple(verdicts), obstructed)


# -- corank bounds ---------------------------------------------------------


def corank_bounds(K, system=None) -> tuple[int, int]:
    """(lower, upper) bounds for the corank of the fundamental group.

    upper = b1.  lower = size of the exhibited surface system when the cut
    engine verifies it as independent and non-disconnecting, else 0.  The
    exact corank is not computed.
    """
    KC = _check_domain(_as_complex(K))
    upper = homology_of(KC).betti(1)
    lower = 0
    if system is not None:
        from .cuts import classify_cut_system

        cls = classify_cut_system(K, system)
        if cls.independent and cls.cut_connected:
            lower = min(cls.system_size, upper)
    return lower, upper
