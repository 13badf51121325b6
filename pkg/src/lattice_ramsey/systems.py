"""Homothety systems (trivial and HJ), type-HJ maps, and the checks built on them.

A type-HJ map chain_t(n) -> chain_t(N) is determined by pairwise disjoint
coordinate sets S_1..S_n of a common size k and a base point alpha that is
zero on their union:

    a -> a_1 * 1_{S_1} + ... + a_n * 1_{S_n} + alpha

Coordinates are 1-based throughout (sets and rendered digit positions).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .errors import HJFormError, InvalidParamsError, SystemMismatchError
from .homothety import (
    DEFAULT_NODE_BUDGET,
    HomothetyMap,
    compose,
    enumerate_lattice_homotheties,
    from_images,
    identity,
    projections,
    verify_lattice_homothety,
)
from .lattices import ChainLattice, LatticeModel, ProductLattice, sequence_member


class System(str, Enum):
    TRIVIAL = "trivial"
    HJ = "hj"


def as_system(tag) -> System:
    try:
        return System(tag)
    except ValueError:
        raise InvalidParamsError(f"unknown homothety system {tag!r}") from None


@dataclass(frozen=True)
class HJForm:
    t: int
    n: int
    N: int
    sets: tuple[frozenset[int], ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        object.__setattr__(self, "alpha", tuple(self.alpha))

    @property
    def k(self) -> int:
        return len(self.sets[0]) if self.sets else 0

    def validate(self):
        if self.t < 2 or self.n < 1 or self.N < 1:
            raise HJFormError(f"bad dimensions t={self.t}, n={self.n}, N={self.N}")
        if len(self.sets) != self.n:
            raise HJFormError(f"need {self.n} coordinate sets, got {len(self.sets)}")
        if len(self.alpha) != self.N or any(not 0 <= x < self.t for x in self.alpha):
            raise HJFormError(f"alpha must be {self.N} digits in 0..{self.t - 1}")
        seen: set[int] = set()
        for s in self.sets:
            if not s:
                raise HJFormError("coordinate sets must be non-empty")
            if len(s) != self.k:
                raise HJFormError("coordinate sets must all have the same size")
            if any(not 1 <= c <= self.N for c in s):
                raise HJFormError(f"coordinates must lie in 1..{self.N}")
            if seen & s:
                raise HJFormError("coordinate sets overlap")
            seen |= s
        if any(self.alpha[c - 1] for c in seen):
            raise HJFormError("alpha must vanish on the union of the coordinate sets")

    def apply(self, digits) -> list[int]:
        out = list(self.alpha)
        for a, s in zip(digits, self.sets):
            for c in s:
                out[c - 1] += a
        return out

    def to_dict(self) -> dict:
        return {"t": self.t, "n": self.n, "N": self.N,
                "sets": [sorted(s) for s in self.sets], "alpha": list(self.alpha)}

    @classmethod
    def from_dict(cls, data: dict) -> "HJForm":
        try:
            form = cls(data["t"], data["n"], data["N"], tuple(frozenset(s) for s in data["sets"]),
                       tuple(data["alpha"]))
        except (KeyError, TypeError) as exc:
            raise HJFormError(f"malformed HJ form: {exc}") from None
        form.validate()
        return form


def identity_form(t: int, n: int) -> HJForm:
    return HJForm(t, n, n, tuple(frozenset({i}) for i in range(1, n + 1)), (0,) * n)


def hj_to_map(form: HJForm) -> HomothetyMap:
    form.validate()
    P, Q = sequence_member("chain", form.n, form.t), sequence_member("chain", form.N, form.t)
    images = tuple(Q.encode(form.apply(P.digits[a])) for a in range(P.size))
    return HomothetyMap(P, Q, images, form.k)


@dataclass
class Recognition:
    """Outcome of recognize_hj: the form when the map is of type HJ, else why not."""

    form: HJForm | None
    reason: str = ""
    witness: int | None = None

    def __bool__(self):
        return self.form is not None


def _chain_pair(f: HomothetyMap) -> tuple[ChainLattice, ChainLattice]:
    P, Q = f.domain, f.codomain
    if not (isinstance(P, ChainLattice) and isinstance(Q, ChainLattice)):
        raise SystemMismatchError(f"HJ maps live between chain lattices, got {P!r} -> {Q!r}")
    if P.t != Q.t:
        raise SystemMismatchError(f"alphabet sizes differ: {P.t} vs {Q.t}")
    return P, Q


def recognize_hj(f: HomothetyMap) -> Recognition:
    """Reconstruct the unique candidate form from f(0) and f(e_i), then check it everywhere."""
    P, Q = _chain_pair(f)
    alpha = Q.digits[f.images[0]]
    sets = []
    for i in range(P.n):
        e_i = P.weights[i]
        diff = [x - y for x, y in zip(Q.digits[f.images[e_i]], alpha)]
        sets.append(frozenset(c + 1 for c, x in enumerate(diff) if x))
    candidate = HJForm(P.t, P.n, Q.n, tuple(sets), alpha)
    witness = None
    for a in range(P.size):
        if candidate.apply(P.digits[a]) != list(Q.digits[f.images[a]]):
            witness = a
            break
    try:
        candidate.validate()
    except HJFormError as exc:
        return Recognition(None, f"reconstructed form invalid: {exc}", witness)
    if witness is not None:
        return Recognition(None, "map disagrees with its reconstructed form", witness)
    return Recognition(candidate)


def compose_hj(f: HJForm, g: HJForm) -> HJForm:
    """The form of g after f: U_i is the union of g's sets indexed by S_i, base g(alpha)."""
    if f.N != g.n or f.t != g.t:
        raise HJFormError(f"cannot compose forms: {f.t}^{f.N} vs {g.t}^{g.n}")
    U = tuple(frozenset().union(*(g.sets[p - 1] for p in s)) for s in f.sets)
    gamma = tuple(g.apply(f.alpha))
    return HJForm(f.t, f.n, g.N, U, gamma)


def enumerate_hj_forms(t: int, n: int, N: int):
    """Every valid HJ form chain_t(n) -> chain_t(N), generated directly from the definition."""
    coords = range(1, N + 1)
    for k in range(1, N // n + 1):
        for used in itertools.combinations(coords, n * k):
            rest = [c for c in coords if c not in used]
            for assignment in _ordered_splits(used, n, k):
                for vals in itertools.product(range(t), repeat=len(rest)):
                    alpha = [0] * N
                    for c, v in zip(rest, vals):
                        alpha[c - 1] = v
                    yield HJForm(t, n, N, assignment, tuple(alpha))


def _ordered_splits(items, parts, size):
    if parts == 0:
        yield ()
        return
    for first in itertools.combinations(items, size):
        rest = [x for x in items if x not in first]
        for tail in _ordered_splits(rest, parts - 1, size):
            yield (frozenset(first),) + tail


# ---------------------------------------------------------------------------
# membership and axioms
# ---------------------------------------------------------------------------

def is_member(system, f: HomothetyMap) -> bool:
    system = as_system(system)
    if system is System.HJ:
        _chain_pair(f)
    if not verify_lattice_homothety(f).ok:
        return False
    return system is System.TRIVIAL or bool(recognize_hj(f))


def members(system, P: LatticeModel, Q: LatticeModel, budget=DEFAULT_NODE_BUDGET, workers=1) -> list[HomothetyMap]:
    """All restricted lattice homotheties P -> Q, in lexicographic order."""
    system = as_system(system)
    if system is System.HJ:
        if not (isinstance(P, ChainLattice) and isinstance(Q, ChainLattice) and P.t == Q.t):
            raise SystemMismatchError(f"the HJ system needs chain lattices of equal t, got {P!r} -> {Q!r}")
    found = enumerate_lattice_homotheties(P, Q, budget=budget, workers=workers)
    if system is System.TRIVIAL:
        return list(found)
    return [f for f in found if recognize_hj(f)]


@dataclass
class CheckReport:
    ok: bool = True
    counts: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, condition: str, **detail):
        self.ok = False
        self.violations.append({"condition": condition, **detail})

    def bump(self, key, by=1):
        self.counts[key] = self.counts.get(key, 0) + by

    def to_dict(self) -> dict:
        return {"ok": self.ok, "counts": dict(sorted(self.counts.items())),
                "violations": self.violations, "notes": self.notes}


def _check_family(system: System, family: str):
    if system is System.HJ and family != "chain":
        raise SystemMismatchError(f"the HJ system is only defined on chain lattices, not {family!r}")


def check_system_axioms(system, family: str = "chain", t: int | None = None, arity_bound: int = 2,
                        budget=DEFAULT_NODE_BUDGET, workers=1) -> CheckReport:
    """H1 (identities are members) and H2 (members compose to members) up to arity_bound."""
    system = as_system(system)
    _check_family(system, family)
    report = CheckReport()
    seq = {i: sequence_member(family, i, t) for i in range(1, arity_bound + 1)}
    for i, A in seq.items():
        report.bump("H1 checked")
        if not is_member(system, identity(A)):
            report.fail("H1", arity=i)
    H = {(i, j): members(system, seq[i], seq[j], budget, workers) for i in seq for j in seq}
    for (i, j), fs in H.items():
        report.counts[f"members {i}->{j}"] = len(fs)
    for i, j, k in itertools.product(seq, repeat=3):
        for phi in H[(i, j)]:
            for psi in H[(j, k)]:
                report.bump("H2 checked")
                comp = compose(phi, psi)
                if not is_member(system, comp):
                    if not any(v["condition"] == "H2" for v in report.violations):
                        report.fail("H2", arities=[i, j, k], phi=phi.to_dict(), psi=psi.to_dict())
                    else:
                        report.ok = False
    report.notes.append(f"quantifiers truncated at arity {arity_bound}")
    return report


def _sequence_of(L: LatticeModel) -> tuple[str, int | None]:
    return L.family, L.params.get("t")


def sections(embed: HomothetyMap):
    """Yield ("left"|"right", fixed element, section map) for every section of a product map."""
    D = embed.domain
    if not isinstance(D, ProductLattice):
        raise InvalidParamsError("sections need a map out of a product lattice")
    A, B = D.left, D.right
    for p in range(A.size):
        yield "left", p, HomothetyMap(B, embed.codomain, tuple(embed.images[D.encode(p, y)] for y in range(B.size)),
                                      embed.scale)
    for q in range(B.size):
        yield "right", q, HomothetyMap(A, embed.codomain, tuple(embed.images[D.encode(x, q)] for x in range(A.size)),
                                       embed.scale)


def check_compatibility(embed: HomothetyMap, system, i_bound: int = 1,
                        budget=DEFAULT_NODE_BUDGET, workers=1) -> CheckReport:
    """C2 on every section of ``embed``; C1 on every lattice homothety A(i) -> A(m) x A(n), i <= i_bound."""
    system = as_system(system)
    D = embed.domain
    if not isinstance(D, ProductLattice):
        raise InvalidParamsError("compatibility is defined for maps out of a product A(m) x A(n)")
    family, t = _sequence_of(D.left)
    if _sequence_of(D.right) != (family, t) or _sequence_of(embed.codomain) != (family, t):
        raise InvalidParamsError("factors and target must come from the same lattice sequence")
    _check_family(system, family)
    report = CheckReport()

    for side, fixed, sec in sections(embed):
        report.bump("C2 sections checked")
        if not is_member(system, sec):
            if not any(v["condition"] == "C2" for v in report.violations):
                fixed_in = D.left if side == "left" else D.right
                report.fail("C2", fixed_factor=side, fixed=fixed_in.render(fixed), section=sec.to_dict())
            report.ok = False

    for i in range(1, i_bound + 1):
        Ai = sequence_member(family, i, t)
        for h in enumerate_lattice_homotheties(Ai, D, budget=budget, workers=workers):
            report.bump("C1 maps examined")
            im1, im2 = projections(D, h.images)
            g1, g2 = from_images(Ai, D.left, im1), from_images(Ai, D.right, im2)
            if g1 is None or g2 is None or not (is_member(system, g1) and is_member(system, g2)):
                continue
            report.bump("C1 premises met")
            if not is_member(system, compose(h, embed)):
                if not any(v["condition"] == "C1" for v in report.violations):
                    report.fail("C1", arity=i, map=h.to_dict())
                report.ok = False
    report.notes.append(f"C1 quantifier truncated at i <= {i_bound}")
    return report


def check_boolean_rigidity(n: int, N: int, budget=DEFAULT_NODE_BUDGET, workers=1) -> CheckReport:
    """Every lattice homothety chain_2(n) -> chain_2(N) should be of type HJ."""
    if n > N:
        raise InvalidParamsError(f"need n <= N, got n={n}, N={N}")
    report = CheckReport()
    P, Q = sequence_member("chain", n, 2), sequence_member("chain", N, 2)
    for f in enumerate_lattice_homotheties(P, Q, budget=budget, workers=workers):
        report.bump(f"scale {f.scale}: maps")
        if recognize_hj(f):
            report.bump(f"scale {f.scale}: hj")
        else:
            report.bump("rejections")
            if report.ok:
                report.fail("rigidity", map=f.to_dict())
    report.counts.setdefault("rejections", 0)
    return report


def find_non_hj(t: int = 3, n: int = 2, N: int = 4, budget=DEFAULT_NODE_BUDGET, workers=1):
    """First lattice homothety chain_t(n) -> chain_t(N) (lexicographically) that is not of type HJ.

    Returns (map, recognition, number of maps examined) or (None, None, count).
    """
    P, Q = sequence_member("chain", n, t), sequence_member("chain", N, t)
    count = 0
    for f in enumerate_lattice_homotheties(P, Q, budget=budget, workers=workers):
        count += 1
        verdict = recognize_hj(f)
        if not verdict:
            return f, verdict, count
    return None, None, count
