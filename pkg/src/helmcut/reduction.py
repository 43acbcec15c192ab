"""Exact reduction of based integer chain complexes.

Elementary reductions (Gaussian elimination on a +-1 incidence) shrink a
chain complex while preserving its integral homology on the nose.  The
sequence of reductions is logged so chains can be transported both ways:

  project:  C(original) -> C(residual)   (chain map)
  include:  C(residual) -> C(original)   (chain map)
  homotopy: id - include.project = d H + H d   (for witness extraction)

Pivots are chosen by a lazy-heap Markowitz rule (least fill-in first), which
makes free-face collapses and coreductions zero-cost and keeps fill-in low
elsewhere.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import heapq
from typing import Hashable, Mapping

Cell = Hashable
Chain = dict  # Cell -> int


def add_scaled(target: Chain, source: Mapping, factor: int) -> None:
    if not factor:
        return
    for cell, coeff in source.items():
        new = target.get(cell, 0) + factor * coeff
        if new:
            target[cell] = new
        else:
            target.pop(cell, None)


class ChainComplexData:
    """Mutable based chain complex with sparse boundary and coboundary."""

    def __init__(self, cells_by_dim: list[list[Cell]], boundary: Mapping[Cell, Mapping[Cell, int]]):
        self.cells_by_dim = [list(c) for c in cells_by_dim]
        self.dim: dict[Cell, int] = {}
        for d, cells in enumerate(self.cells_by_dim):
            for c in cells:
                self.dim[c] = d
        self.bd: dict[Cell, Chain] = {c: {} for c in self.dim}
        self.cb: dict[Cell, Chain] = {c: {} for c in self.dim}
        for cell, faces in boundary.items():
            row = self.bd[cell]
            for face, coeff in faces.items():
                if coeff and face in self.dim:
                    row[face] = row.get(face, 0) + coeff
            for face in [f for f, v in row.items() if v == 0]:
                del row[face]
            for face, coeff in row.items():
                self.cb[face][cell] = coeff


class ReductionRule:
    __slots__ = ("p", "a", "b", "lam", "bd_b", "cb_a")

    def __init__(self, p, a, b, lam, bd_b, cb_a):
        self.p = p          # dim of a; b has dim p + 1
        self.a = a
        self.b = b
        self.lam = lam      # +1 or -1; its own inverse
        self.bd_b = bd_b    # snapshot of boundary of b at removal time
        self.cb_a = cb_a    # snapshot of coboundary of a at removal time


class ReducedComplex:
    """Residual complex plus transport maps to/from the original."""

    def __init__(self, data: ChainComplexData, rules: list[ReductionRule]):
        self._data = data
        self.rules = rules
        alive = set(data.dim)
        self.cells_by_dim = [
            [c for c in cells if c in alive] for cells in data.cells_by_dim
        ]

    def cells(self, dim: int) -> list[Cell]:
        if not 0 <= dim < len(self.cells_by_dim):
            return []
        return self.cells_by_dim[dim]

    def boundary(self, cell: Cell) -> Chain:
        return dict(self._data.bd[cell])

    # -- transport ---------------------------------------------------------

    def project(self, chain: Mapping[Cell, int], dim: int) -> Chain:
        """Push a chain of the original complex into the residual complex."""
        out = {c: v for c, v in chain.items() if v}
        for rule in self.rules:
            if dim == rule.p:
                ca = out.get(rule.a, 0)
                if ca:
                    add_scaled(out, rule.bd_b, -rule.lam * ca)
            elif dim == rule.p + 1:
                out.pop(rule.b, None)
        return out

    def include(self, chain: Mapping[Cell, int], dim: int) -> Chain:
        """Lift a residual chain back to the original complex."""
        out = {c: v for c, v in chain.items() if v}
        for rule in reversed(self.rules):
            if dim == rule.p + 1:
                s = 0
                for e, coeff in rule.cb_a.items():
                    v = out.get(e, 0)
                    if v:
                        s += v * coeff
                if s:
                    new = out.get(rule.b, 0) - rule.lam * s
                    if new:
                        out[rule.b] = new
                    else:
                        out.pop(rule.b, None)
        return out

    def project_with_homotopy(self, chain: Mapping[Cell, int], dim: int) -> tuple[Chain, Chain]:
        """(projection, H(chain)) where id - include.project = d H + H d."""
        out = {c: v for c, v in chain.items() if v}
        collected: list[tuple[int, Cell, int]] = []  # (rule index, b, coeff)
        for i, rule in enumerate(self.rules):
            if dim == rule.p:
                ca = out.get(rule.a, 0)
                if ca:
                    collected.append((i, rule.b, rule.lam * ca))
                    add_scaled(out, rule.bd_b, -rule.lam * ca)
            elif dim == rule.p + 1:
                out.pop(rule.b, None)
        # assemble H(chain) = sum_i include_{<i}( h_i( project_{<i} chain ) )
        acc: Chain = {}
        pos = len(collected) - 1
        for i in range(len(self.rules) - 1, -1, -1):
            rule = self.rules[i]
            if dim + 1 == rule.p + 1:
                s = 0
                for e, coeff in rule.cb_a.items():
                    v = acc.get(e, 0)
                    if v:
                        s += v * coeff
                if s:
                    new = acc.get(rule.b, 0) - rule.lam * s
                    if new:
                        acc[rule.b] = new
                    else:
                        acc.pop(rule.b, None)
            if pos >= 0 and collected[pos][0] == i:
                _, b, coeff = collected[pos]
                new = acc.get(b, 0) + coeff
                if new:
                    acc[b] = new
                else:
                    acc.pop(b, None)
                pos -= 1
        return out, acc


def reduce_complex(data: ChainComplexData) -> ReducedComplex:
    bd, cb, dim = data.bd, data.cb, data.dim
    rules: list[ReductionRule] = []
    # zero-cost pairs (free faces and coreductions) are cascaded on a plain
    # stack; only pairs with genuine fill-in pay for a heap
    stack: list[tuple[Cell, Cell]] = []
    heap: list[tuple[int, Cell, Cell]] = []

    def maybe_free(a: Cell) -> None:
        co = cb[a]
        if len(co) == 1:
            b, coeff = next(iter(co.items()))
            if coeff in (1, -1):
                stack.append((a, b))

    def maybe_core(b: Cell) -> None:
        row = bd[b]
        if len(row) == 1:
            a, coeff = next(iter(row.items()))
            if coeff in (1, -1):
                stack.append((a, b))

    def execute(a: Cell, b: Cell, lam: int) -> None:
        bd_b = dict(bd[b])
        cb_a = dict(cb[a])
        rules.append(ReductionRule(dim[a], a, b, lam, bd_b, cb_a))
        for f in bd[a]:
            del cb[f][a]
            maybe_free(f)
        for f in bd_b:
            if f != a:
                del cb[f][b]
        for e in cb[b]:
            del bd[e][b]
            maybe_core(e)
        # fold boundary of b into the other cofaces of a
        for e, coeff in cb_a.items():
            if e == b:
                continue
            row = bd[e]
            factor = -lam * coeff
            for f, c in bd_b.items():
                if f == a:
                    continue
                new = row.get(f, 0) + factor * c
                if new:
                    row[f] = new
                    cb[f][e] = new
                else:
                    row.pop(f, None)
                    co = cb[f]
                    co.pop(e, None)
                    maybe_free(f)
            row.pop(a, None)
            maybe_core(e)
        for f in bd_b:
            if f != a and f in cb:
                maybe_free(f)
        del bd[a], cb[a], bd[b], cb[b]
        del dim[a], dim[b]

    def cascade() -> None:
        while stack:
            a, b = stack.pop()
            if a not in bd or b not in bd:
                continue
            lam = bd[b].get(a, 0)
            if lam not in (1, -1):
                continue
            if len(cb[a]) != 1 and len(bd[b]) != 1:
                continue
            execute(a, b, lam)

    # phase 1: exhaust all zero-cost reductions
    for b, row in bd.items():
        if row:
            maybe_core(b)
    for a in cb:
        maybe_free(a)
    cascade()

    # phase 2: Markowitz heap on the (much smaller) survivor complex
    def cost(a: Cell, b: Cell) -> int:
        return (len(cb[a]) - 1) * (len(bd[b]) - 1)

    def push_pairs_of(b: Cell) -> None:
        row = bd[b]
        nb = len(row) - 1
        for a, coeff in row.items():
            if coeff in (1, -1):
                heapq.heappush(heap, ((len(cb[a]) - 1) * nb, a, b))

    for b, row in bd.items():
        if row:
            push_pairs_of(b)
    while heap:
        c0, a, b = heapq.heappop(heap)
        if a not in bd or b not in bd:
            continue
        lam = bd[b].get(a, 0)
        if lam not in (1, -1):
            continue
        current = cost(a, b)
        if current > c0:
            heapq.heappush(heap, (current, a, b))
            continue
        cb_b_cells = list(cb[b])
        changed = [e for e in cb[a] if e != b]
        execute(a, b, lam)
        cascade()
        for e in changed:
            if e in bd:
                push_pairs_of(e)
        for e in cb_b_cells:
            if e in bd:
                push_pairs_of(e)
    return ReducedComplex(data, rules)
