"""Explicit lattice homotheties A(m) x A(n) -> A(N) for each lattice family.

The second factor's ground set is shifted past the first one, so the
combined ground set is {1..m} followed by {m+1..m+n}.
"""
from __future__ import annotations

from .homothety import HomothetyMap
from .lattices import (
    BooleanLattice,
    ChainLattice,
    DivisionLattice,
    PartitionLattice,
    _relabel,
    first_primes,
    product_lattice,
)


def partition_combine(n1: int, n2: int) -> HomothetyMap:
    """(pi, tau) -> pi u tau on the disjoint union of the ground sets."""
    A, B = PartitionLattice(n1), PartitionLattice(n2)
    C = PartitionLattice(n1 + n2)
    dom = product_lattice(A, B)
    images = []
    for a in range(A.size):
        left = A.rgs[a]
        off = max(left) + 1
        for b in range(B.size):
            images.append(C.index[_relabel(left + tuple(off + x for x in B.rgs[b]))])
    return HomothetyMap(dom, C, tuple(images), 1)


def boolean_combine(n1: int, n2: int) -> HomothetyMap:
    """(S, T) -> S u (T shifted by n1)."""
    A, B = BooleanLattice(n1), BooleanLattice(n2)
    C = BooleanLattice(n1 + n2)
    dom = product_lattice(A, B)
    images = tuple(a | (b << n1) for a in range(A.size) for b in range(B.size))
    return HomothetyMap(dom, C, images, 1)


def chain_combine(t: int, n1: int, n2: int) -> HomothetyMap:
    """Concatenate digit vectors: (f, g) -> (f_1..f_n1, g_1..g_n2)."""
    A, B = ChainLattice(t, n1), ChainLattice(t, n2)
    C = ChainLattice(t, n1 + n2)
    dom = product_lattice(A, B)
    images = tuple(a + b * A.size for a in range(A.size) for b in range(B.size))
    return HomothetyMap(dom, C, images, 1)


def division_combine(m: int, n: int) -> tuple[int, HomothetyMap]:
    """Relabel the primes of m and n onto fresh primes 2, 3, 5, ... and multiply.

    Returns the target integer N together with the map D_m x D_n -> D_N.
    """
    A, B = DivisionLattice(m), DivisionLattice(n)
    fresh = first_primes(len(A.factors) + len(B.factors))
    N = 1
    for p, (_, e) in zip(fresh, A.factors + B.factors):
        N *= p**e
    C = DivisionLattice(N)
    # C's primes are exactly `fresh`, in increasing order, so exponent vectors concatenate
    dom = product_lattice(A, B)
    images = tuple(C.index[A.exponents[a] + B.exponents[b]] for a in range(A.size) for b in range(B.size))
    return N, HomothetyMap(dom, C, images, 1)
