"""Homotheties between graded lattices: representation, verification, composition, enumeration.

A homothety f: P -> Q with scale factor d is an order embedding
(f(p) <= f(p') iff p <= p') that multiplies rank differences by d. A lattice
homothety additionally preserves joins and meets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ._parallel import ordered_map
from .errors import MapShapeError, SearchBudgetExceeded
from .lattices import LatticeModel, ProductLattice, from_descriptor, product_lattice

DEFAULT_NODE_BUDGET = 10**8

SCALE_UNDERDETERMINED = "scale under-determined"


@dataclass(frozen=True)
class HomothetyMap:
    domain: LatticeModel
    codomain: LatticeModel
    images: tuple[int, ...]
    scale: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))

    def __call__(self, p: int) -> int:
        return self.images[p]

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def check_shape(self):
        if len(self.images) != self.domain.size:
            raise MapShapeError(
                f"images has length {len(self.images)}, domain {self.domain!r} has {self.domain.size} elements"
            )
        for q in self.images:
            if isinstance(q, bool) or not isinstance(q, int) or not 0 <= q < self.codomain.size:
                raise MapShapeError(f"image {q!r} is not an element of {self.codomain!r}")
        if isinstance(self.scale, bool) or not isinstance(self.scale, int) or self.scale < 1:
            raise MapShapeError(f"scale factor must be a positive integer, got {self.scale!r}")

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.descriptor(),
            "codomain": self.codomain.descriptor(),
            "scale": self.scale,
            "images": [self.codomain.render(q) for q in self.images],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HomothetyMap":
        try:
            dom = from_descriptor(data["domain"])
            cod = from_descriptor(data["codomain"])
            images = [cod.parse(x) for x in data["images"]]
            scale = data["scale"]
        except (KeyError, TypeError) as exc:
            raise MapShapeError(f"malformed homothety record: {exc}") from None
        f = cls(dom, cod, tuple(images), scale)
        f.check_shape()
        return f


@dataclass
class VerificationReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self, f: HomothetyMap | None = None) -> dict:
        viols = []
        for v in self.violations:
            entry = dict(v)
            if f is not None:
                entry["witness"] = [f.domain.render(p) for p in v["witness"]]
            else:
                entry["witness"] = list(v["witness"])
            viols.append(entry)
        return {"ok": self.ok, "violations": viols, "notes": list(self.notes)}


def identity(L: LatticeModel) -> HomothetyMap:
    return HomothetyMap(L, L, tuple(range(L.size)), 1)


def infer_scale(domain: LatticeModel, codomain: LatticeModel, images: Sequence[int]) -> int | None:
    """The only scale factor a map could have, or None if no positive integer fits.

    A one-element domain has no rank span; 1 is returned by convention.
    """
    if domain.size == 1:
        return 1
    span = codomain.ranks[images[domain.maximum]] - codomain.ranks[images[0]]
    d, rem = divmod(span, domain.height)
    if rem or d < 1:
        return None
    return d


def from_images(domain: LatticeModel, codomain: LatticeModel, images: Sequence[int]) -> HomothetyMap | None:
    """Wrap an images array, inferring its scale; None when no scale can work."""
    d = infer_scale(domain, codomain, images)
    return None if d is None else HomothetyMap(domain, codomain, tuple(images), d)


def verify_homothety(f: HomothetyMap) -> VerificationReport:
    f.check_shape()
    P, Q, img, d = f.domain, f.codomain, f.images, f.scale
    report = VerificationReport(ok=True)
    for p in range(P.size):
        hit = None
        for p2 in range(P.size):
            if P.leq_u(p, p2) != Q.leq_u(img[p], img[p2]):
                hit = (p, p2)
                break
        if hit:
            report.violations.append({"condition": "order-embedding", "witness": hit})
            break
    r0, s0 = Q.ranks[img[0]], P.ranks[0]
    for p in range(1, P.size):
        if Q.ranks[img[p]] - r0 != d * (P.ranks[p] - s0):
            report.violations.append({"condition": "rank-affinity", "witness": (0, p)})
            break
    if P.size == 1:
        report.notes.append(SCALE_UNDERDETERMINED)
    report.ok = not report.violations
    return report


def verify_lattice_homothety(f: HomothetyMap) -> VerificationReport:
    report = verify_homothety(f)
    if not report.ok:
        report.notes.append("join/meet phase skipped")
        return report
    P, Q, img = f.domain, f.codomain, f.images
    for cond, opP, opQ in (("join", P.join_u, Q.join_u), ("meet", P.meet_u, Q.meet_u)):
        hit = None
        for a in range(P.size):
            for b in range(a + 1, P.size):
                if img[opP(a, b)] != opQ(img[a], img[b]):
                    hit = (a, b)
                    break
            if hit:
                break
        if hit:
            report.violations.append({"condition": f"{cond}-preservation", "witness": hit})
    report.ok = not report.violations
    return report


def compose(f: HomothetyMap, g: HomothetyMap) -> HomothetyMap:
    """g after f: p -> g(f(p))."""
    if f.codomain != g.domain:
        raise MapShapeError(f"cannot compose: codomain {f.codomain!r} differs from domain {g.domain!r}")
    return HomothetyMap(f.domain, g.codomain, tuple(g.images[q] for q in f.images), f.scale * g.scale)


def pair_product(f1: HomothetyMap, f2: HomothetyMap) -> HomothetyMap:
    """p -> (f1(p), f2(p)) into the product of the two codomains."""
    if f1.domain != f2.domain:
        raise MapShapeError(f"pair_product needs a shared domain, got {f1.domain!r} and {f2.domain!r}")
    Q = product_lattice(f1.codomain, f2.codomain)
    images = tuple(Q.encode(a, b) for a, b in zip(f1.images, f2.images))
    return HomothetyMap(f1.domain, Q, images, f1.scale + f2.scale)


def projections(Q: ProductLattice, images: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    s2 = Q.right.size
    return tuple(q // s2 for q in images), tuple(q % s2 for q in images)


# ---------------------------------------------------------------------------
# backtracking search
# ---------------------------------------------------------------------------

class HomothetySearch:
    """Depth-first search for lattice homotheties P -> Q.

    Domain elements are assigned in canonical index order (index 0 is the
    minimum), so leaves come out sorted lexicographically by images array.
    Once f(0) is placed, the image of element 1 fixes the scale factor and
    every later element can only land on a single rank level of Q.

    Optional constraints:
      allowed   -- per domain element, a set of permitted images (or None)
      colors    -- codomain coloring; all images must share the color of f(0)
      roots     -- restrict the candidates for f(0)
    """

    def __init__(self, P: LatticeModel, Q: LatticeModel, scale: int | None = None,
                 allowed: Sequence[set | frozenset | None] | None = None,
                 colors: Sequence[int] | None = None, roots: Sequence[int] | None = None,
                 budget: int = DEFAULT_NODE_BUDGET):
        self.P, self.Q = P, Q
        self.scale = scale
        self.allowed = allowed
        self.colors = colors
        self.roots = roots
        self.budget = budget
        self.nodes = 0
        n = P.size
        self.pleq = [[P.leq_u(a, b) for b in range(n)] for a in range(n)]
        # lattice-operation checks, each triggered when its last element is assigned
        self.triples: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                if self.pleq[a][b] or self.pleq[b][a]:
                    continue
                j, m = P.join_u(a, b), P.meet_u(a, b)
                self.triples[max(a, b, j)].append((a, b, j, 0))
                self.triples[max(a, b, m)].append((a, b, m, 1))

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"homothety search exceeded {self.budget} nodes ({self.P!r} -> {self.Q!r})", nodes=self.nodes
            )

    def _root_candidates(self):
        cands = range(self.Q.size) if self.roots is None else self.roots
        if self.P.size > 1:
            # the top of P must fit at least one rank step per level
            lo = self.scale or 1
            limit = self.Q.max_rank - lo * self.P.height
            cands = [q for q in cands if self.Q.ranks[q] <= limit]
        if self.allowed is not None and self.allowed[0] is not None:
            cands = [q for q in cands if q in self.allowed[0]]
        return list(cands)

    def run(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield (images, scale) for every lattice homothety satisfying the constraints."""
        P, Q = self.P, self.Q
        n = P.size
        img = [0] * n
        roots = self._root_candidates()
        if n == 1:
            for q in roots:
                self._tick()
                yield (q,), self.scale or 1
            return
        qranks, pranks = Q.ranks, P.ranks
        qleq, qjoin, qmeet = Q.leq_u, Q.join_u, Q.meet_u
        pleq, triples, allowed, colors = self.pleq, self.triples, self.allowed, self.colors
        gap1 = pranks[1] - pranks[0]
        height = P.height

        def consistent(x, q):
            for y in range(x):
                fy = img[y]
                if pleq[y][x] != qleq(fy, q) or pleq[x][y] != qleq(q, fy):
                    return False
            img[x] = q
            for a, b, c, kind in triples[x]:
                got = qjoin(img[a], img[b]) if kind == 0 else qmeet(img[a], img[b])
                if got != img[c]:
                    return False
            return True

        def extend(x, r0, d, level_colors):
            if x == n:
                yield tuple(img), d
                return
            cands = Q.by_rank.get(r0 + d * (pranks[x] - pranks[0]), ())
            ok_set = allowed[x] if allowed is not None else None
            for q in cands:
                if ok_set is not None and q not in ok_set:
                    continue
                if level_colors is not None and colors[q] != level_colors:
                    continue
                self._tick()
                if consistent(x, q):
                    yield from extend(x + 1, r0, d, level_colors)

        ok1 = allowed[1] if allowed is not None else None
        for q0 in roots:
            self._tick()
            img[0] = q0
            r0 = qranks[q0]
            c0 = colors[q0] if colors is not None else None
            dmax = (Q.max_rank - r0) // height
            for q1 in range(Q.size):
                step = qranks[q1] - r0
                if step <= 0 or step % gap1:
                    continue
                d = step // gap1
                if d > dmax or (self.scale is not None and d != self.scale):
                    continue
                if ok1 is not None and q1 not in ok1:
                    continue
                if c0 is not None and colors[q1] != c0:
                    continue
                self._tick()
                if consistent(1, q1):
                    yield from extend(2, r0, d, c0)


def _subtree(task):
    P, Q, root, scale, budget = task
    s = HomothetySearch(P, Q, scale=scale, roots=[root], budget=budget)
    return list(s.run()), s.nodes


def enumerate_lattice_homotheties(P: LatticeModel, Q: LatticeModel, scale_filter: int | None = None,
                                  budget: int = DEFAULT_NODE_BUDGET, workers: int = 1) -> Iterator[HomothetyMap]:
    """Every lattice homothety P -> Q, once each, in lexicographic order of images.

    With ``workers > 1`` the search tree is split on the image of the minimum
    and the pieces are merged back in root order.
    """
    if workers <= 1:
        for images, d in HomothetySearch(P, Q, scale=scale_filter, budget=budget).run():
            yield HomothetyMap(P, Q, images, d)
        return
    roots = HomothetySearch(P, Q, scale=scale_filter)._root_candidates()
    results = ordered_map(_subtree, [(P, Q, r, scale_filter, budget) for r in roots], workers)
    total = sum(nodes for _, nodes in results)
    if total > budget:
        raise SearchBudgetExceeded(f"homothety search exceeded {budget} nodes ({P!r} -> {Q!r})", nodes=total)
    for found, _ in results:
        for images, d in found:
            yield HomothetyMap(P, Q, images, d)
