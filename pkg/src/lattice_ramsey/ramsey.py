"""Colorings, monochromatic homothety search, anchored homotheties, and exact small Ramsey values.

Colors are the integers 1..k. A coloring is in canonical form when colors
first appear in increasing order along the canonical element order; every
coloring is a color permutation of exactly one canonical coloring, and the
existence of a monochromatic restricted homothety does not depend on the
color names, so searches only visit canonical colorings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ._parallel import ordered_map
from .errors import ColoringError, InvalidParamsError, NotAdmissibleError, SearchBudgetExceeded, SystemMismatchError
from .homothety import DEFAULT_NODE_BUDGET, HomothetyMap, HomothetySearch
from .lattices import ChainLattice, BooleanLattice, LatticeModel, from_descriptor, sequence_member
from .systems import System, as_system, is_member, recognize_hj

DEFAULT_COLORING_BUDGET = 2**30


@dataclass(frozen=True)
class Coloring:
    lattice: LatticeModel
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ColoringError(f"number of colors must be a positive integer, got {self.k!r}")
        if len(self.colors) != self.lattice.size:
            raise ColoringError(f"coloring has {len(self.colors)} entries, lattice has {self.lattice.size} elements")
        for c in self.colors:
            if isinstance(c, bool) or not isinstance(c, int) or not 1 <= c <= self.k:
                raise ColoringError(f"color {c!r} outside 1..{self.k}")

    def __getitem__(self, a: int) -> int:
        return self.colors[a]

    def canonical(self) -> "Coloring":
        relabel: dict[int, int] = {}
        return Coloring(self.lattice, self.k, tuple(relabel.setdefault(c, len(relabel) + 1) for c in self.colors))

    def to_dict(self) -> dict:
        return {"lattice": self.lattice.descriptor(), "k": self.k, "colors": list(self.colors)}

    @classmethod
    def from_dict(cls, data: dict) -> "Coloring":
        if not isinstance(data, dict) or not {"lattice", "k", "colors"} <= data.keys():
            raise ColoringError("coloring file needs 'lattice', 'k' and 'colors'")
        if not isinstance(data["colors"], list):
            raise ColoringError("'colors' must be a list")
        return cls(from_descriptor(data["lattice"]), data["k"], tuple(data["colors"]))


@dataclass(frozen=True)
class AdmissibleTriple:
    S: frozenset[int]
    p: int
    p2: int

    def validate(self, L: LatticeModel):
        for x in self.S:
            L.check_index(x)
        if self.p not in self.S or self.p2 not in self.S:
            raise NotAdmissibleError("both anchors must lie in S")
        if self.p == self.p2:
            raise NotAdmissibleError("anchors must be distinct")
        if not all(L.leq_u(self.p, x) for x in self.S):
            raise NotAdmissibleError("p must be the minimum of S")

    def to_dict(self, L: LatticeModel) -> dict:
        return {"S": [L.render(x) for x in sorted(self.S)], "p": L.render(self.p), "p_prime": L.render(self.p2)}


@dataclass(frozen=True)
class MonoWitness:
    map: HomothetyMap
    color: int

    def to_dict(self) -> dict:
        return {"witness": self.map.to_dict(), "color": self.color}


def validate_witness(w: MonoWitness, chi: Coloring, system) -> bool:
    return (w.map.codomain == chi.lattice and is_member(system, w.map)
            and all(chi.colors[q] == w.color for q in w.map.images))


def _restricted(system: System, P: LatticeModel, Q: LatticeModel):
    if system is System.HJ and not (isinstance(P, ChainLattice) and isinstance(Q, ChainLattice) and P.t == Q.t):
        raise SystemMismatchError(f"the HJ system needs chain lattices of equal t, got {P!r} -> {Q!r}")


def _accept(system: System, P, Q, images, d) -> HomothetyMap | None:
    f = HomothetyMap(P, Q, images, d)
    if system is System.HJ and not recognize_hj(f):
        return None
    return f


# ---------------------------------------------------------------------------
# monochromatic witnesses
# ---------------------------------------------------------------------------

def find_mono_homothety(n: int, chi: Coloring, system="trivial", budget=DEFAULT_NODE_BUDGET) -> MonoWitness | None:
    """Lexicographically first restricted homothety A(n) -> A(N) with a one-colored image."""
    system = as_system(system)
    Q = chi.lattice
    P = Q.sequence_member(n)
    return _find_mono(P, Q, chi.colors, system, budget)


def _find_mono(P, Q, colors, system, budget) -> MonoWitness | None:
    _restricted(system, P, Q)
    for images, d in HomothetySearch(P, Q, colors=colors, budget=budget).run():
        f = _accept(system, P, Q, images, d)
        if f is not None:
            return MonoWitness(f, colors[images[0]])
    return None


# ---------------------------------------------------------------------------
# admissible triples and anchored homotheties
# ---------------------------------------------------------------------------

def admissible_triples(L: LatticeModel, s: int) -> Iterator[AdmissibleTriple]:
    """Every admissible triple (S; p, p') in L with |S| = s, in canonical order."""
    for S in itertools.combinations(range(L.size), s):
        mins = [p for p in S if all(L.leq_u(p, x) for x in S)]
        if not mins:
            continue
        p = mins[0]
        for p2 in S:
            if p2 != p:
                yield AdmissibleTriple(frozenset(S), p, p2)


def _check_anchors(Q: LatticeModel, q: int, q2: int):
    Q.check_index(q)
    Q.check_index(q2)
    if q == q2 or not Q.leq_u(q, q2):
        raise InvalidParamsError(f"anchors must satisfy q < q' in {Q!r}")


def check_anchored(f: HomothetyMap, triple: AdmissibleTriple, q: int, q2: int, chi: Coloring, system="trivial") -> bool:
    """Is f a restricted lattice homothety with p -> q, p' -> q' and f(S) minus q' one-colored?"""
    system = as_system(system)
    triple.validate(f.domain)
    _check_anchors(f.codomain, q, q2)
    if chi.lattice != f.codomain:
        raise ColoringError("coloring is not over the map's codomain")
    if f.images[triple.p] != q or f.images[triple.p2] != q2:
        return False
    if len({chi.colors[f.images[x]] for x in triple.S if f.images[x] != q2}) > 1:
        return False
    return is_member(system, f)


def find_anchored(P: LatticeModel, triple: AdmissibleTriple, q: int, q2: int, chi: Coloring, system="trivial",
                  budget=DEFAULT_NODE_BUDGET) -> HomothetyMap | None:
    """First anchored restricted homothety P -> chi.lattice for (S; p -> q, p' -> q'), or None."""
    system = as_system(system)
    Q = chi.lattice
    _restricted(system, P, Q)
    c = chi.colors[q]
    same = frozenset(x for x in range(Q.size) if chi.colors[x] == c)
    allowed: list = [None] * P.size
    for x in triple.S:
        allowed[x] = same
    allowed[triple.p] = frozenset({q})
    allowed[triple.p2] = frozenset({q2})
    for images, d in HomothetySearch(P, Q, allowed=allowed, budget=budget).run():
        f = _accept(system, P, Q, images, d)
        if f is not None:
            return f
    return None


def _long_clique_chain(relation: dict[int, set[int]], length: int) -> list[int] | None:
    """A sequence q_1 < ... < q_length with every (q_i, q_j), i < j, in the relation."""
    def grow(chain, cands):
        if len(chain) == length:
            return chain
        for q in sorted(cands):
            found = grow(chain + [q], cands & relation.get(q, set()))
            if found:
                return found
        return None

    for q in sorted(relation):
        found = grow([q], set(relation[q]))
        if found:
            return found
    return None


def canonical_colorings(size: int, k: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Canonical k-colorings of ``size`` elements extending ``prefix``, in lexicographic order."""
    out = list(prefix)
    if len(out) > size:
        return

    def rec(i, top):
        if i == size:
            yield tuple(out)
            return
        for c in range(1, min(top + 1, k) + 1):
            out.append(c)
            yield from rec(i + 1, max(top, c))
            out.pop()

    yield from rec(len(out), max(out, default=0))


def count_canonical_colorings(size: int, k: int) -> int:
    """Sum of Stirling numbers of the second kind S(size, j) for j <= k."""
    row = [1] + [0] * k  # S(0, j)
    for _ in range(size):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, k + 1)]
    return sum(row)


@dataclass
class LPredicateResult:
    holds: bool
    triples: int = 0
    colorings: int = 0
    failure: dict | None = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "triples": self.triples, "colorings": self.colorings, "failure": self.failure}


def check_L_predicate(n: int, s: int, k: int, l: int, N: int, system="trivial", family="boolean",
                      t: int | None = None, budget=DEFAULT_NODE_BUDGET,
                      coloring_budget=DEFAULT_COLORING_BUDGET) -> LPredicateResult:
    """Does A(N) satisfy the defining property of L_n(s, k, l)?

    For every admissible triple (S; p, p') of A(n) with |S| = s and every
    k-coloring of A(N) there must be q_1 < ... < q_l such that each pair
    q_i < q_j carries an anchored restricted homothety.
    """
    system = as_system(system)
    if s < 2 or l < 2 or k < 1 or n < 1 or N < 1:
        raise InvalidParamsError("need s >= 2, l >= 2, k >= 1 and positive arities")
    P = sequence_member(family, n, t)
    Q = sequence_member(family, N, t)
    if s > P.size:
        raise InvalidParamsError(f"|S| = {s} exceeds |A({n})| = {P.size}")
    _restricted(system, P, Q)
    triples = list(admissible_triples(P, s))
    total = count_canonical_colorings(Q.size, k)
    if total > coloring_budget:
        raise SearchBudgetExceeded(f"{total} canonical colorings exceed the budget {coloring_budget}", covered=0.0)
    result = LPredicateResult(holds=True, triples=len(triples), colorings=total)
    pairs = [(a, b) for a in range(Q.size) for b in range(Q.size) if a != b and Q.leq_u(a, b)]
    for ci, colors in enumerate(canonical_colorings(Q.size, k)):
        chi = Coloring(Q, k, colors)
        for triple in triples:
            relation: dict[int, set[int]] = {}
            for a, b in pairs:
                if find_anchored(P, triple, a, b, chi, system, budget) is not None:
                    relation.setdefault(a, set()).add(b)
            if _long_clique_chain(relation, l) is None:
                result.holds = False
                result.failure = {"triple": triple.to_dict(P), "bad_coloring": chi.to_dict(),
                                  "covered": ci / total}
                return result
    return result


# ---------------------------------------------------------------------------
# exact Ramsey values
# ---------------------------------------------------------------------------

def coordinate_automorphisms(L: LatticeModel) -> list[tuple[int, ...]]:
    """Element permutations induced by permuting coordinates (Boolean and chain lattices only)."""
    if isinstance(L, BooleanLattice):
        t, n = 2, L.n
        digits = [tuple(m >> i & 1 for i in range(n)) for m in range(L.size)]
    elif isinstance(L, ChainLattice):
        t, n, digits = L.t, L.n, L.digits
    else:
        raise InvalidParamsError(f"automorphism reduction is only implemented for boolean/chain, not {L.family}")
    weights = [t**i for i in range(n)]
    perms = []
    for sigma in itertools.permutations(range(n)):
        if list(sigma) == list(range(n)):
            continue
        perms.append(tuple(sum(d[sigma[i]] * weights[i] for i in range(n)) for d in digits))
    return perms


def _is_orbit_minimal(colors, perms) -> bool:
    for perm in perms:
        relabel: dict[int, int] = {}
        # the coloring x -> colors[perm[x]] pulled back along the automorphism, canonicalized
        moved = tuple(relabel.setdefault(colors[perm[x]], len(relabel) + 1) for x in range(len(colors)))
        if moved < colors:
            return False
    return True


def _scan_colorings(task):
    P, Q, k, system, prefix, budget, perms = task
    checked = 0
    for colors in canonical_colorings(Q.size, k, prefix):
        if perms and not _is_orbit_minimal(colors, perms):
            continue
        checked += 1
        if _find_mono(P, Q, colors, system, budget) is None:
            return colors, checked
    return None, checked


def _prefixes(size: int, k: int, workers: int) -> list[tuple[int, ...]]:
    if workers <= 1:
        return [()]
    length = 1
    while length < size and count_canonical_colorings(length, k) < 8 * workers:
        length += 1
    return list(canonical_colorings(length, k))


@dataclass
class RamseyResult:
    value: int | None
    status: str  # "exact", "exceeds-cap" or "budget-exceeded"
    lower_bound: int
    levels: list[dict] = field(default_factory=list)

    @property
    def certificates(self) -> list[dict]:
        return [lv for lv in self.levels if lv["verdict"] == "fails"]

    def to_dict(self) -> dict:
        return {"value": self.value, "status": self.status, "lower_bound": self.lower_bound, "levels": self.levels}


def ramsey_number(family: str, system="trivial", n: int = 1, k: int = 2, N_max: int = 3, t: int | None = None,
                  budget=DEFAULT_NODE_BUDGET, coloring_budget=DEFAULT_COLORING_BUDGET, workers: int = 1,
                  automorphisms: bool = False) -> RamseyResult:
    """Smallest N <= N_max such that every k-coloring of A(N) has a monochromatic restricted copy of A(n).

    Every N from n upward is decided on its own; nothing assumes monotonicity.
    A failing N stores the lexicographically first bad canonical coloring.
    """
    system = as_system(system)
    if n < 1 or k < 1 or N_max < 1:
        raise InvalidParamsError("n, k and N_max must be positive")
    P = sequence_member(family, n, t)
    result = RamseyResult(None, "exceeds-cap", n)
    for N in range(n, N_max + 1):
        Q = sequence_member(family, N, t)
        _restricted(system, P, Q)
        total = count_canonical_colorings(Q.size, k)
        if total > coloring_budget:
            result.status = "budget-exceeded"
            result.lower_bound = N
            result.levels.append({"N": N, "verdict": "budget-exceeded", "canonical_colorings": total})
            return result
        perms = coordinate_automorphisms(Q) if automorphisms else []
        tasks = [(P, Q, k, system, pre, budget, perms) for pre in _prefixes(Q.size, k, workers)]
        outcomes = ordered_map(_scan_colorings, tasks, workers)
        bad = next((colors for colors, _ in outcomes if colors is not None), None)
        if bad is None:
            result.value, result.status, result.lower_bound = N, "exact", N
            result.levels.append({"N": N, "verdict": "works", "colorings_checked": sum(c for _, c in outcomes)})
            return result
        result.lower_bound = N + 1
        result.levels.append({"N": N, "verdict": "fails", "bad_coloring": Coloring(Q, k, bad).to_dict()})
    return result


def pigeonhole_bound(family: str, k: int, t: int | None = None, limit: int = 12) -> int | None:
    """First N whose lattice A(N) has a chain of k + 1 elements."""
    for N in range(1, limit + 1):
        if sequence_member(family, N, t).height >= k:
            return N
    return None

