"""Link groups and their nilpotent invariants.

Wirtinger presentations from diagrams, abelianization, preferred
longitudes, truncated Magnus expansion, and Milnor mu / mu-bar invariants
computed by rewriting arc generators as meridian words in the free
nilpotent quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .homology import HomologyGroup
from .exact_linalg import IntegerMatrix, smith_normal_form
from .links import DiagramError, LinkDiagram

Word = tuple  # of (generator, ±1) letters


class RewriteDepthError(RuntimeError):
    """Meridian rewriting failed to stabilize within the depth bound."""


# -- Wirtinger presentation ------------------------------------------------


@dataclass(frozen=True)
class WirtingerRelation:
    out: int
    over: int
    eps: int  # crossing sign; the relation is out = over^-eps * in * over^eps
    inn: int

    @property
    def relator(self) -> Word:
        return ((self.out, -1), (self.over, -self.eps), (self.inn, 1), (self.over, self.eps))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[int, ...]
    relators: tuple[Word, ...]
    # diagram bookkeeping (empty for hand-built presentations)
    relations: tuple[WirtingerRelation, ...] = ()
    meridians: tuple[int, ...] = ()  # one generator per link component
    component_of: tuple[tuple[int, int], ...] = ()  # generator -> component index


def _arc_reps(D: LinkDiagram) -> dict[int, int]:
    """Merge PD edge labels across over-passes: the over-strand is unbroken,
    so its two edge labels carry the same group generator.  Representative =
    smallest label in the merged class."""
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for comp in D.components:
        for arc in comp:
            find(arc)
    for k in range(len(D.crossings)):
        o_in, o_out = D.over_direction(k)
        ra, rb = find(o_in), find(o_out)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return {arc: find(arc) for arc in parent}


def wirtinger(D: LinkDiagram) -> GroupPresentation:
    """One generator per (over-)arc, one conjugation relation per crossing:
    g_out = g_over^-sign * g_in * g_over^sign (the exponent pairing that
    keeps longitude Magnus coefficients cyclically consistent with our
    right-handed-crossing-is-positive sign rule).  The meridian of a
    component is the generator of its lowest-labelled arc."""
    rep = _arc_reps(D)
    gens = tuple(sorted(set(rep.values())))
    rels = []
    for k, (a, b, c, d) in enumerate(D.crossings):
        o_in, _ = D.over_direction(k)
        rels.append(WirtingerRelation(rep[c], rep[o_in], D.signs[k], rep[a]))
    meridians = tuple(rep[comp[0]] for comp in D.components)
    comp_of = tuple(
        (rep[arc], i) for i, comp in enumerate(D.components) for arc in comp
    )
    return GroupPresentation(
        gens,
        tuple(r.relator for r in rels),
        tuple(rels),
        meridians,
        tuple(sorted(set(comp_of))),
    )


def abelianize(P: GroupPresentation) -> HomologyGroup:
    """Abelianization of the presented group from the Smith normal form of
    the relator exponent matrix."""
    idx = {g: i for i, g in enumerate(P.generators)}
    rows = []
    for rel in P.relators:
        row = [0] * len(P.generators)
        for g, e in rel:
            row[idx[g]] += e
        rows.append(row)
    if not rows:
        return HomologyGroup(len(P.generators), ())
    snf = smith_normal_form(IntegerMatrix(len(rows), len(P.generators), rows))
    torsion = tuple(d for d in snf.diagonal if d > 1)
    rank = len(P.generators) - snf.rank
    return HomologyGroup(rank, torsion)


def longitude_word(D: LinkDiagram, j: int) -> Word:
    """Preferred (Seifert-framed) longitude of component j, as a word in
    arc generators: the signed over-strand generators met when traversing
    the component from its lowest arc, times meridian^(-writhe)."""
    if not 0 <= j < D.component_count:
        raise DiagramError(f"component index {j} out of range")
    rep = _arc_reps(D)
    comp = D.components[j]
    word: list[tuple[int, int]] = []
    for arc in comp:
        # the arc ends by passing under at some crossing, unless the
        # component never goes under (then the word is empty)
        for k, (a, b, c, d) in enumerate(D.crossings):
            if a == arc:
                o_in, _ = D.over_direction(k)
                word.append((rep[o_in], D.signs[k]))
    w = D.writhes[j]
    meridian = rep[comp[0]]
    word.extend([(meridian, -1 if w > 0 else 1)] * abs(w))
    return tuple(word)


# -- truncated Magnus expansion --------------------------------------------


class MagnusSeries:
    """Integer power series in non-commuting variables z_1..z_n, truncated
    to words of length < q."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: dict[tuple[int, ...], int] | None = None):
        if q < 2:
            raise ValueError("truncation degree must be at least 2")
        self.q = q
        self.terms = {w: c for w, c in (terms or {}).items() if c and len(w) < q}

    @staticmethod
    def one(q: int) -> "MagnusSeries":
        return MagnusSeries(q, {(): 1})

    @staticmethod
    def generator(i: int, q: int, exp: int = 1) -> "MagnusSeries":
        """Expansion of m_i^exp: (1 + z_i)^exp, with the geometric series
        for negative exponents."""
        if exp >= 0:
            from math import comb

            return MagnusSeries(q, {(i,) * k: comb(exp, k) for k in range(min(exp, q - 1) + 1)})
        from math import comb

        n = -exp
        # (1+z)^-n = sum_k (-1)^k C(n+k-1, k) z^k
        return MagnusSeries(
            q, {(i,) * k: (-1) ** k * comb(n + k - 1, k) for k in range(q)}
        )

    def coefficient(self, word: tuple[int, ...]) -> int:
        return self.terms.get(tuple(word), 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, MagnusSeries) and self.q == other.q and self.terms == other.terms

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        q = self.q
        out: dict[tuple[int, ...], int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) < q:
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
        return MagnusSeries(q, out)

    def inverse(self) -> "MagnusSeries":
        if self.constant_term != 1:
            raise ValueError("only series with constant term 1 are inverted")
        n = MagnusSeries(self.q, {w: c for w, c in self.terms.items() if w})
        out = MagnusSeries.one(self.q)
        power = MagnusSeries.one(self.q)
        for k in range(1, self.q):
            power = power * n
            if not power.terms:
                break
            s = -1 if k % 2 else 1
            for w, c in power.terms.items():
                out.terms[w] = out.terms.get(w, 0) + s * c
        out.terms = {w: c for w, c in out.terms.items() if c}
        return out

    def __pow__(self, e: int) -> "MagnusSeries":
        base = self if e >= 0 else self.inverse()
        out = MagnusSeries.one(self.q)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        return "MagnusSeries(" + " + ".join(f"{c}*z{list(w)}" for w, c in items) + ")"


def magnus_expand(word: Word, variable_of: dict[int, int], q: int) -> MagnusSeries:
    """Expand a word in meridian symbols: each letter (g, e) becomes
    (1 + z_{variable_of[g]})^e, multiplied with truncation at degree q."""
    out = MagnusSeries.one(q)
    for g, e in word:
        out = out * MagnusSeries.generator(variable_of[g], q, e)
    return out


# -- Milnor invariants -----------------------------------------------------


def _meridian_series(D: LinkDiagram, q: int, depth_bound: int | None = None):
    """Express every arc generator as a Magnus series in the component
    meridian variables z_1..z_n (components numbered from 1), by iterated
    substitution of the Wirtinger relations truncated at degree q."""
    P = wirtinger(D)
    comp_of = dict(P.component_of)
    series: dict[int, MagnusSeries] = {
        g: MagnusSeries.generator(comp_of[g] + 1, q) for g in P.generators
    }
    # defining relation of each non-meridian generator: the crossing where
    # its arc begins; rewriting order ascending by arc label
    defining: dict[int, WirtingerRelation] = {}
    for rel in P.relations:
        if rel.out not in P.meridians and rel.out not in defining:
            defining[rel.out] = rel
    bound = depth_bound if depth_bound is not None else 2 * q + 4
    for _ in range(bound):
        changed = False
        for g in sorted(defining):
            rel = defining[g]
            o = series[rel.over]
            new = (o ** -rel.eps) * series[rel.inn] * (o ** rel.eps)
            if new != series[g]:
                series[g] = new
                changed = True
        if not changed:
            return P, series
    raise RewriteDepthError(
        f"meridian rewriting did not stabilize within {bound} passes at degree {q}"
    )


@lru_cache(maxsize=None)
def milnor_mu(D: LinkDiagram, I: tuple[int, ...], q: int) -> int:
    """Milnor mu(l_1,...,l_p): the coefficient of z_{l_1}...z_{l_p-1} in the
    Magnus expansion of the longitude of component l_p, with arc generators
    rewritten as meridian words at truncation degree q.

    Components are numbered from 1.  Requires 2 <= p < q.  The raw integer
    depends on fixed conventions (base meridians, rewriting order); only its
    residue mod Delta(I) is an invariant.
    """
    p = len(I)
    if p < 2:
        raise DiagramError("index sequence must have length at least 2")
    if q <= p:
        raise DiagramError(f"truncation degree {q} must exceed the index length {p}")
    n = D.component_count
    for l in I:
        if not 1 <= l <= n:
            raise DiagramError(f"component index {l} out of range 1..{n}")
    _, series = _meridian_series(D, q)
    lp = I[-1]
    word = longitude_word(D, lp - 1)
    s = MagnusSeries.one(q)
    for g, e in word:
        s = s * (series[g] ** e)
    return s.coefficient(tuple(I[:-1]))


def _proper_subsequences(I: tuple[int, ...]):
    """Order-preserving subsequences of I: proper, length >= 2."""
    from itertools import combinations

    p = len(I)
    out = set()
    for r in range(2, p):
        for pos in combinations(range(p), r):
            out.add(tuple(I[i] for i in pos))
    return sorted(out)


def _cyclic_permutations(J: tuple[int, ...]):
    return sorted({J[i:] + J[:i] for i in range(len(J))})


@dataclass(frozen=True)
class MubarValue:
    indices: tuple[int, ...]
    mu: int
    delta: int  # gcd of lower-order mu values; 0 when all vanish
    residue: int  # mu mod delta (mu itself when delta = 0)

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "mu": self.mu,
            "delta": self.delta,
            "mubar": f"{self.residue} mod {self.delta}" if self.delta else str(self.residue),
        }


def milnor_mubar(D: LinkDiagram, I: tuple[int, ...], q: int) -> MubarValue:
    """mu-bar(I) = mu(I) modulo Delta(I), where Delta(I) is the gcd of the
    mu values of all cyclic permutations of proper subsequences of I
    (gcd of the empty set is 0)."""
    I = tuple(I)
    mu = milnor_mu(D, I, q)
    delta = 0
    for J in _proper_subsequences(I):
        for Jc in _cyclic_permutations(J):
            delta = gcd(delta, milnor_mu(D, Jc, q))
    residue = mu % delta if delta else mu
    return MubarValue(I, mu, delta, residue)
