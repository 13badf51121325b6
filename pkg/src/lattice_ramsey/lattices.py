"""Finite graded lattices: Boolean, chain, partition, division, and binary products.

Every lattice stores its elements in a fixed canonical order and is addressed
by integer indices into that order:

* boolean(n): subsets of {1..n} as bitmasks, bit i-1 standing for i; index = mask.
* chain(t, n): maps {1..n} -> {0..t-1} as digit tuples (a_1, ..., a_n);
  index = sum a_i * t**(i-1), so chain(2, n) and boolean(n) index identically.
* partition(n): restricted growth strings in lexicographic order. The single
  block comes first and is the minimum; refinement goes up.
* division(n): divisors as exponent vectors over the sorted prime factors of n,
  in lexicographic order.
* product(L1, L2): pairs (i1, i2) in lexicographic order; index = i1 * |L2| + i2.

Index 0 is always the minimum element.
"""
from __future__ import annotations

import itertools
import json
from functools import cached_property, lru_cache

from .errors import ElementIndexError, InvalidParamsError, SizeLimitError

MAX_SIZE = 10**6
# join/meet/leq tables are precomputed up to this many elements
TABLE_LIMIT = 256

FAMILIES = ("boolean", "chain", "partition", "division", "product")


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as sorted (prime, exponent) pairs."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    c = 2
    while len(primes) < count:
        if all(c % p for p in primes if p * p <= c):
            primes.append(c)
        c += 1
    return primes


def _check_int(name, value, lo):
    if isinstance(value, bool) or not isinstance(value, int) or value < lo:
        raise InvalidParamsError(f"{name} must be an integer >= {lo}, got {value!r}")


def _check_size(size):
    if size > MAX_SIZE:
        raise SizeLimitError(f"lattice would have {size} elements (limit {MAX_SIZE})")


class LatticeModel:
    """A finite graded lattice with canonically indexed elements.

    Subclasses implement the unchecked primitives ``_leq``, ``_join``, ``_meet``
    and the element codecs ``render``/``parse``. Public queries validate indices.
    Instances are immutable after construction.
    """

    family: str = ""

    def __init__(self, params: dict, size: int, ranks: list[int]):
        self.params = dict(params)
        self.size = size
        self.ranks = tuple(ranks)
        self.max_rank = max(self.ranks)
        self._tables = size <= TABLE_LIMIT
        if self._tables:
            rng = range(size)
            self._leq_t = [[self._leq(a, b) for b in rng] for a in rng]
            self._join_t = [[self._join(a, b) for b in rng] for a in rng]
            self._meet_t = [[self._meet(a, b) for b in rng] for a in rng]

    # -- identity -------------------------------------------------------
    def descriptor(self) -> dict:
        return {"family": self.family, "params": dict(self.params)}

    @cached_property
    def key(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, LatticeModel) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({ps})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("key", None)
        return state

    # -- fast unchecked access used by the search code -------------------
    def leq_u(self, a: int, b: int) -> bool:
        return self._leq_t[a][b] if self._tables else self._leq(a, b)

    def join_u(self, a: int, b: int) -> int:
        return self._join_t[a][b] if self._tables else self._join(a, b)

    def meet_u(self, a: int, b: int) -> int:
        return self._meet_t[a][b] if self._tables else self._meet(a, b)

    # -- checked public queries -----------------------------------------
    def check_index(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.size:
            raise ElementIndexError(f"element index {a!r} out of range for {self!r} (size {self.size})")
        return a

    def leq(self, a: int, b: int) -> bool:
        return self.leq_u(self.check_index(a), self.check_index(b))

    def join(self, a: int, b: int) -> int:
        return self.join_u(self.check_index(a), self.check_index(b))

    def meet(self, a: int, b: int) -> int:
        return self.meet_u(self.check_index(a), self.check_index(b))

    def rank(self, a: int) -> int:
        return self.ranks[self.check_index(a)]

    @property
    def minimum(self) -> int:
        return 0

    @cached_property
    def maximum(self) -> int:
        return self.ranks.index(self.max_rank)

    @cached_property
    def by_rank(self) -> dict[int, list[int]]:
        levels: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            levels.setdefault(r, []).append(i)
        return levels

    @property
    def min_rank(self) -> int:
        return self.ranks[0]

    @property
    def height(self) -> int:
        """Length of the longest chain minus one (max rank minus min rank)."""
        return self.max_rank - self.min_rank

    def elements(self) -> list:
        return [self.render(i) for i in range(self.size)]

    def index_of(self, obj) -> int:
        """Index of a rendered element (the inverse of ``render``)."""
        return self.parse(obj)

    # -- sequence membership ----------------------------------------------
    @property
    def arity(self) -> int:
        """Position of this lattice in its family's sequence A(1), A(2), ..."""
        if self.family == "product":
            raise InvalidParamsError("product lattices are not members of a lattice sequence")
        return self.params["n"]

    def sequence_member(self, i: int) -> "LatticeModel":
        """The i-th member of the sequence this lattice belongs to."""
        if self.family == "product":
            raise InvalidParamsError("product lattices are not members of a lattice sequence")
        return sequence_member(self.family, i, t=self.params.get("t"))

    # subclasses
    def _leq(self, a, b):
        raise NotImplementedError

    def _join(self, a, b):
        raise NotImplementedError

    def _meet(self, a, b):
        raise NotImplementedError

    def render(self, a):
        raise NotImplementedError

    def parse(self, obj) -> int:
        raise NotImplementedError


class BooleanLattice(LatticeModel):
    family = "boolean"

    def __init__(self, n: int):
        _check_int("n", n, 1)
        _check_size(2**n)
        self.n = n
        super().__init__({"n": n}, 2**n, [m.bit_count() for m in range(2**n)])

    def _leq(self, a, b):
        return a & ~b == 0

    def _join(self, a, b):
        return a | b

    def _meet(self, a, b):
        return a & b

    def render(self, a):
        a = self.check_index(a)
        return [i + 1 for i in range(self.n) if a >> i & 1]

    def parse(self, obj):
        try:
            items = list(obj)
        except TypeError:
            raise ElementIndexError(f"not a subset: {obj!r}") from None
        mask = 0
        for x in items:
            if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= self.n:
                raise ElementIndexError(f"subset item {x!r} outside 1..{self.n}")
            mask |= 1 << (x - 1)
        return mask


class ChainLattice(LatticeModel):
    family = "chain"

    def __init__(self, t: int, n: int):
        _check_int("t", t, 2)
        _check_int("n", n, 1)
        _check_size(t**n)
        self.t, self.n = t, n
        self.weights = tuple(t**i for i in range(n))
        self.digits = [tuple(i // w % t for w in self.weights) for i in range(t**n)]
        super().__init__({"t": t, "n": n}, t**n, [sum(d) for d in self.digits])

    def encode(self, digits) -> int:
        return sum(a * w for a, w in zip(digits, self.weights))

    def _leq(self, a, b):
        return all(x <= y for x, y in zip(self.digits[a], self.digits[b]))

    def _join(self, a, b):
        return self.encode(max(x, y) for x, y in zip(self.digits[a], self.digits[b]))

    def _meet(self, a, b):
        return self.encode(min(x, y) for x, y in zip(self.digits[a], self.digits[b]))

    def render(self, a):
        return list(self.digits[self.check_index(a)])

    def parse(self, obj):
        try:
            ds = list(obj)
        except TypeError:
            raise ElementIndexError(f"not a digit vector: {obj!r}") from None
        if len(ds) != self.n or any(
            isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.t for x in ds
        ):
            raise ElementIndexError(f"digit vector {obj!r} invalid for chain t={self.t}, n={self.n}")
        return self.encode(ds)


def restricted_growth_strings(n: int):
    """All restricted growth strings of length n, in lexicographic order."""
    def extend(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from extend(prefix, max(top, v))
            prefix.pop()

    yield from extend([0], 0)


def _relabel(labels) -> tuple:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


class PartitionLattice(LatticeModel):
    """Set partitions of {1..n}; p <= q iff q refines p, rank = number of blocks."""

    family = "partition"

    def __init__(self, n: int):
        _check_int("n", n, 1)
        _check_size(bell_number(n))
        self.n = n
        self.rgs = list(restricted_growth_strings(n))
        self.index = {r: i for i, r in enumerate(self.rgs)}
        super().__init__({"n": n}, len(self.rgs), [max(r) + 1 for r in self.rgs])

    def _leq(self, a, b):
        # every block of b sits inside a block of a
        ra, rb = self.rgs[a], self.rgs[b]
        owner: dict[int, int] = {}
        for x, y in zip(ra, rb):
            if owner.setdefault(y, x) != x:
                return False
        return True

    def _join(self, a, b):
        # coarsest common refinement: intersect blocks
        return self.index[_relabel(zip(self.rgs[a], self.rgs[b]))]

    def _meet(self, a, b):
        # finest common coarsening: union-find over both block structures
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for rgs in (self.rgs[a], self.rgs[b]):
            first: dict[int, int] = {}
            for i, lab in enumerate(rgs):
                j = first.setdefault(lab, i)
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        return self.index[_relabel(find(i) for i in range(self.n))]

    def blocks(self, a) -> list[list[int]]:
        rgs = self.rgs[self.check_index(a)]
        out: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
        for i, lab in enumerate(rgs):
            out[lab].append(i + 1)
        return out

    def render(self, a):
        return self.blocks(a)

    def parse(self, obj):
        try:
            blocks = [list(b) for b in obj]
        except TypeError:
            raise ElementIndexError(f"not a block list: {obj!r}") from None
        labels = [None] * self.n
        for bi, block in enumerate(blocks):
            if not block:
                raise ElementIndexError("empty block")
            for x in block:
                if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= self.n or labels[x - 1] is not None:
                    raise ElementIndexError(f"block list {obj!r} is not a partition of 1..{self.n}")
                labels[x - 1] = bi
        if None in labels:
            raise ElementIndexError(f"block list {obj!r} does not cover 1..{self.n}")
        return self.index[_relabel(labels)]


class DivisionLattice(LatticeModel):
    family = "division"

    def __init__(self, n: int):
        _check_int("n", n, 1)
        self.n = n
        self.factors = factorize(n)
        self.primes = tuple(p for p, _ in self.factors)
        bounds = [e for _, e in self.factors]
        size = 1
        for e in bounds:
            size *= e + 1
        _check_size(size)
        self.exponents = list(itertools.product(*(range(e + 1) for e in bounds)))
        self.index = {v: i for i, v in enumerate(self.exponents)}
        self.values = [self._value(v) for v in self.exponents]
        self.value_index = {v: i for i, v in enumerate(self.values)}
        super().__init__({"n": n}, size, [sum(v) for v in self.exponents])

    def _value(self, exps):
        out = 1
        for p, e in zip(self.primes, exps):
            out *= p**e
        return out

    def _leq(self, a, b):
        return all(x <= y for x, y in zip(self.exponents[a], self.exponents[b]))

    def _join(self, a, b):
        return self.index[tuple(max(x, y) for x, y in zip(self.exponents[a], self.exponents[b]))]

    def _meet(self, a, b):
        return self.index[tuple(min(x, y) for x, y in zip(self.exponents[a], self.exponents[b]))]

    def render(self, a):
        return self.values[self.check_index(a)]

    def parse(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, int) or obj not in self.value_index:
            raise ElementIndexError(f"{obj!r} is not a divisor of {self.n}")
        return self.value_index[obj]


class ProductLattice(LatticeModel):
    family = "product"

    def __init__(self, left: LatticeModel, right: LatticeModel):
        _check_size(left.size * right.size)
        self.left, self.right = left, right
        s2 = right.size
        ranks = [left.ranks[i // s2] + right.ranks[i % s2] for i in range(left.size * s2)]
        super().__init__({}, left.size * s2, ranks)

    def descriptor(self):
        return {"family": "product", "params": {"factors": [self.left.descriptor(), self.right.descriptor()]}}

    def __repr__(self):
        return f"product({self.left!r}, {self.right!r})"

    def pair(self, a: int) -> tuple[int, int]:
        return divmod(a, self.right.size)

    def encode(self, a1: int, a2: int) -> int:
        return a1 * self.right.size + a2

    def _leq(self, a, b):
        a1, a2 = divmod(a, self.right.size)
        b1, b2 = divmod(b, self.right.size)
        return self.left.leq_u(a1, b1) and self.right.leq_u(a2, b2)

    def _join(self, a, b):
        a1, a2 = divmod(a, self.right.size)
        b1, b2 = divmod(b, self.right.size)
        return self.encode(self.left.join_u(a1, b1), self.right.join_u(a2, b2))

    def _meet(self, a, b):
        a1, a2 = divmod(a, self.right.size)
        b1, b2 = divmod(b, self.right.size)
        return self.encode(self.left.meet_u(a1, b1), self.right.meet_u(a2, b2))

    def render(self, a):
        a1, a2 = self.pair(self.check_index(a))
        return [self.left.render(a1), self.right.render(a2)]

    def parse(self, obj):
        try:
            o1, o2 = obj
        except (TypeError, ValueError):
            raise ElementIndexError(f"not a pair: {obj!r}") from None
        return self.encode(self.left.parse(o1), self.right.parse(o2))


def _param(params, name):
    if name not in params:
        raise InvalidParamsError(f"missing parameter {name!r}")
    return params[name]


def build_lattice(family: str, params: dict) -> LatticeModel:
    if family == "boolean":
        return BooleanLattice(_param(params, "n"))
    if family == "chain":
        return ChainLattice(_param(params, "t"), _param(params, "n"))
    if family == "partition":
        return PartitionLattice(_param(params, "n"))
    if family == "division":
        return DivisionLattice(_param(params, "n"))
    if family == "product":
        factors = _param(params, "factors")
        if isinstance(factors, (list, tuple)) and len(factors) == 2:
            left, right = (f if isinstance(f, LatticeModel) else from_descriptor(f) for f in factors)
            return ProductLattice(left, right)
        raise InvalidParamsError("product needs exactly two factors")
    raise InvalidParamsError(f"unknown lattice family {family!r}")


def from_descriptor(desc: dict) -> LatticeModel:
    if not isinstance(desc, dict) or "family" not in desc:
        raise InvalidParamsError(f"malformed lattice descriptor: {desc!r}")
    return build_lattice(desc["family"], desc.get("params", {}))


def product_lattice(left: LatticeModel, right: LatticeModel) -> ProductLattice:
    return ProductLattice(left, right)


@lru_cache(maxsize=256)
def sequence_member(family: str, i: int, t: int | None = None) -> LatticeModel:
    """A(i) for the sequence of the given family (chain needs the alphabet size).

    Results are cached; lattices are immutable so sharing them is safe.
    """
    if family == "chain":
        if t is None:
            raise InvalidParamsError("chain sequences need an alphabet size t")
        return ChainLattice(t, i)
    if family in ("boolean", "partition", "division"):
        return build_lattice(family, {"n": i})
    raise InvalidParamsError(f"no lattice sequence for family {family!r}")
