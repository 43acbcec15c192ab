"""Integral homology of simplicial complexes and pairs, with generators.

Large complexes are first shrunk by exact chain-complex reductions
(reduction.py); the small residual complex is finished off with dense Smith
normal form.  Homology bases are fixed once per complex by the SNF and
reused by every caller, so induced-map matrices are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .complexes import ComplexError, Simplex, SimplicialComplex, boundary_operator
from .exact_linalg import IntegerMatrix, SmithDecomposition, smith_normal_form
from .reduction import Chain, ChainComplexData, ReducedComplex, add_scaled, reduce_complex


class NotACycleError(ValueError):
    """The given chain is not a cycle."""


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree by theorem disagreed: a toolkit bug."""


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...]  # divisibility chain, entries > 1

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion


def _matvec(M: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a and b) for row in M]


class _DimData:
    """Homology bookkeeping for one dimension of a reduced complex."""

    def __init__(self, cells_prev: list, cells: list, cells_next: list,
                 boundary_of, n: int):
        self.cells = cells
        self.index = {c: i for i, c in enumerate(cells)}
        prev_index = {c: i for i, c in enumerate(cells_prev)}
        # A = residual boundary matrix d_n
        A = [[0] * len(cells) for _ in cells_prev]
        for j, c in enumerate(cells):
            for f, coeff in boundary_of(c).items():
                A[prev_index[f]][j] = coeff
        self.snfA = smith_normal_form(IntegerMatrix(len(cells_prev), len(cells), A))
        self.r = self.snfA.rank
        self.k = len(cells) - self.r
        Vi = self.snfA.V_inv.to_lists()
        self.kernel_rows = Vi[self.r:]  # kernel coords = these rows applied to a vector
        self.cycle_rows = Vi[: self.r]  # must vanish on cycles
        # B' = d_{n+1} in kernel coordinates
        Bp = [[0] * len(cells_next) for _ in range(self.k)]
        for j, c in enumerate(cells_next):
            bvec = [0] * len(cells)
            for f, coeff in boundary_of(c).items():
                bvec[self.index[f]] = coeff
            col = _matvec(self.kernel_rows, bvec)
            for i in range(self.k):
                Bp[i][j] = col[i]
        self.snfB = smith_normal_form(IntegerMatrix(self.k, len(cells_next), Bp))
        self.r2 = self.snfB.rank
        self.d = [self.snfB.D[i, i] for i in range(self.r2)]
        self.group = HomologyGroup(self.k - self.r2, tuple(d for d in self.d if d > 1))
        # residual generator cycles: V[:, r:] @ U2_inv[:, pos]
        V = self.snfA.V.to_lists()
        kernel_basis_cols = [[V[i][self.r + j] for i in range(len(cells))] for j in range(self.k)]
        U2i = self.snfB.U_inv.to_lists()
        self.gen_positions = [i for i in range(self.r2) if self.d[i] > 1] + list(
            range(self.r2, self.k)
        )
        self.gens_residual: list[Chain] = []
        for pos in self.gen_positions:
            vec = [0] * len(cells)
            for j in range(self.k):
                u = U2i[j][pos]
                if u:
                    for i in range(len(cells)):
                        vec[i] += u * kernel_basis_cols[j][i]
            self.gens_residual.append(
                {cells[i]: vec[i] for i in range(len(cells)) if vec[i]}
            )

    def homology_coords(self, res_chain: Chain) -> list[int]:
        """Coordinates y (length k) of a residual cycle, in the SNF basis."""
        x = [0] * len(self.cells)
        for c, v in res_chain.items():
            x[self.index[c]] = v
        if any(_dot(row, x) for row in self.cycle_rows):
            raise NotACycleError("chain is not a cycle")
        kappa = _matvec(self.kernel_rows, x)
        return _matvec(self.snfB.U.to_lists(), kappa)


def _dot(row: Sequence[int], x: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(row, x) if a and b)


class ComplexHomology:
    """Reduced complex plus per-dimension homology data and transports.

    Cells are renumbered to consecutive integers internally; all public
    chains are keyed by the original cells.
    """

    def __init__(self, cells_by_dim: list[list], boundary: Mapping):
        id_of: dict = {}
        self.cell_of: list = []
        int_cells: list[list[int]] = []
        for cells in cells_by_dim:
            row = []
            for c in cells:
                id_of[c] = len(self.cell_of)
                row.append(len(self.cell_of))
                self.cell_of.append(c)
            int_cells.append(row)
        self.id_of = id_of
        bd_int: dict[int, dict[int, int]] = {}
        for cell, faces in boundary.items():
            ci = id_of.get(cell)
            if ci is None:
                continue
            bd_int[ci] = {
                id_of[f]: coeff for f, coeff in faces.items() if f in id_of
            }
        self._bd = bd_int  # immutable snapshot; the reduction mutates its own copy
        data = ChainComplexData(int_cells, bd_int)
        self.reduced: ReducedComplex = reduce_complex(data)
        cbd = self.reduced.cells_by_dim
        while len(cbd) < 5:
            cbd = cbd + [[]]
        self.dims: list[_DimData] = []
        for n in range(4):
            prev = cbd[n - 1] if n > 0 else []
            self.dims.append(
                _DimData(prev, cbd[n], cbd[n + 1], self.reduced.boundary, n)
            )

    # -- public queries ----------------------------------------------------

    def group(self, n: int) -> HomologyGroup:
        if not 0 <= n <= 3:
            return HomologyGroup(0, ())
        return self.dims[n].group

    def groups(self) -> list[HomologyGroup]:
        return [self.group(n) for n in range(4)]

    def betti(self, n: int) -> int:
        return self.group(n).rank

    def _to_ids(self, chain: Mapping) -> Chain:
        out: Chain = {}
        for c, v in chain.items():
            if v:
                i = self.id_of.get(c)
                if i is None:
                    raise ComplexError(f"cell not in complex: {c}")
                out[i] = v
        return out

    def _to_cells(self, chain: Chain) -> Chain:
        return {self.cell_of[i]: v for i, v in chain.items()}

    def _require_cycle(self, ids: Chain) -> None:
        acc: Chain = {}
        for c, v in ids.items():
            add_scaled(acc, self._bd.get(c, {}), v)
        if acc:
            raise NotACycleError("chain has nonzero boundary")

    def generators(self, n: int) -> list[Chain]:
        """Generator cycles in the original complex (torsion first, then free)."""
        return [
            self._to_cells(self.reduced.include(g, n))
            for g in self.dims[n].gens_residual
        ]

    def free_generators(self, n: int) -> list[Chain]:
        d = self.dims[n]
        n_torsion = len(d.group.torsion)
        return [
            self._to_cells(self.reduced.include(g, n))
            for g in d.gens_residual[n_torsion:]
        ]

    def class_coords(self, chain: Mapping, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(free coordinates, torsion residues) of a cycle's homology class."""
        d = self.dims[n]
        ids = self._to_ids(chain)
        self._require_cycle(ids)
        y = d.homology_coords(self.reduced.project(ids, n))
        free = tuple(y[d.r2:])
        torsion = tuple(y[i] % d.d[i] for i in range(d.r2) if d.d[i] > 1)
        return free, torsion

    def solve_boundary(self, chain: Mapping, n: int):
        """Return a (n+1)-chain w with dw = chain, or None if the class is nonzero."""
        d = self.dims[n]
        ids = self._to_ids(chain)
        self._require_cycle(ids)
        proj, hchain = self.reduced.project_with_homotopy(ids, n)
        y = d.homology_coords(proj)
        for i in range(d.r2):
            if y[i] % d.d[i]:
                return None
        if any(y[d.r2:]):
            return None
        coeffs = [y[i] // d.d[i] for i in range(d.r2)]
        cells_next = self.reduced.cells(n + 1)
        V2 = self.snf_b(n).V.to_lists()
        res_w: Chain = {}
        for j, c in enumerate(cells_next):
            v = sum(V2[j][i] * coeffs[i] for i in range(d.r2) if coeffs[i])
            if v:
                res_w[c] = v
        witness = self.reduced.include(res_w, n + 1)
        add_scaled(witness, hchain, 1)
        return self._to_cells(witness)

    def snf_b(self, n: int) -> SmithDecomposition:
        return self.dims[n].snfB


# -- factories -------------------------------------------------------------


@lru_cache(maxsize=None)
def homology_of(K: SimplicialComplex) -> ComplexHomology:
    cells = [list(K.simplices(d)) for d in range(4)]
    boundary: dict = {}
    for n in range(1, 4):
        boundary.update(boundary_operator(K, n))
    return ComplexHomology(cells, boundary)


@lru_cache(maxsize=None)
def homology_of_pair(K: SimplicialComplex, A: SimplicialComplex) -> ComplexHomology:
    if not K.contains(A):
        raise ComplexError("A is not a subcomplex of K")
    dropped = {s for d in range(4) for s in A.simplices(d)}
    cells = [[s for s in K.simplices(d) if s not in dropped] for d in range(4)]
    boundary: dict = {}
    for n in range(1, 4):
        for cell, faces in boundary_operator(K, n).items():
            if cell not in dropped:
                boundary[cell] = {f: c for f, c in faces.items() if f not in dropped}
    return ComplexHomology(cells, boundary)


# -- spec-level operations -------------------------------------------------


def homology_groups(K: SimplicialComplex) -> list[HomologyGroup]:
    """H_n(K; Z) for n = 0..3."""
    return homology_of(K).groups()


def relative_homology(K: SimplicialComplex, A: SimplicialComplex) -> list[HomologyGroup]:
    """H_n(K, A; Z) for n = 0..3 via the quotient chain complex."""
    return homology_of_pair(K, A).groups()


@dataclass(frozen=True)
class InducedMap:
    """Inclusion-induced map H_n(L) -> H_n(K) on the SNF-fixed bases."""

    matrix: IntegerMatrix  # rows: free basis of H_n(K); cols: generators of H_n(L)
    image_rank: int
    image_is_zero: bool


def induced_map_image(K: SimplicialComplex, L: SimplicialComplex, n: int) -> InducedMap:
    if not K.contains(L):
        raise ComplexError("L is not a subcomplex of K")
    HL = homology_of(L)
    HK = homology_of(K)
    gens = HL.generators(n)
    cols = [HK.class_coords(g, n)[0] for g in gens]
    # exact vanishing test, torsion included: every generator must bound in K
    zero = all(HK.solve_boundary(g, n) is not None for g in gens)
    rows = HK.betti(n)
    M = IntegerMatrix(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])
    rank = smith_normal_form(M).rank if rows and cols else 0
    return InducedMap(M, rank, zero)


@dataclass(frozen=True)
class BoundaryWitness:
    bounds: bool
    chain: Chain | None  # 2-chain with boundary z, when bounds
    obstruction: tuple[tuple[int, ...], tuple[int, ...]] | None  # (free, torsion) class


def is_boundary_witness(K: SimplicialComplex, z: Mapping[Simplex, int]) -> BoundaryWitness:
    """Integer 2-chain bounding the 1-cycle z, or its obstruction class."""
    H = homology_of(K)
    z = {tuple(c): v for c, v in z.items() if v}
    for c in z:
        if len(c) != 2 or not K.has_simplex(c):
            raise ComplexError(f"not an edge of the complex: {c}")
    _check_cycle(K, z)
    w = H.solve_boundary(z, 1)
    if w is None:
        return BoundaryWitness(False, None, H.class_coords(z, 1))
    _verify_boundary(K, w, z)
    return BoundaryWitness(True, w, None)


def _check_cycle(K: SimplicialComplex, z: Mapping) -> None:
    vert: dict = {}
    for (a, b), coeff in z.items():
        vert[a] = vert.get(a, 0) - coeff
        vert[b] = vert.get(b, 0) + coeff
    if any(vert.values()):
        raise NotACycleError("1-chain has nonzero boundary")


def _verify_boundary(K: SimplicialComplex, w: Chain, z: Mapping) -> None:
    out: Chain = {}
    bd2 = boundary_operator(K, 2)
    for tri, coeff in w.items():
        add_scaled(out, {f: c * coeff for f, c in bd2[tri].items()}, 1)
    if out != dict(z):
        raise InternalConsistencyError("boundary witness verification failed")


def betti_numbers(K: SimplicialComplex) -> tuple[int, int, int, int]:
    return tuple(g.rank for g in homology_groups(K))  # type: ignore[return-value]
