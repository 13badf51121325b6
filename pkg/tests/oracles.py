"""Independent brute-force oracles.

Nothing here uses the package's join/meet/rank code or its search engine.
Elements are rebuilt from their rendered form as plain Python objects
(frozensets, tuples, ints) and compared with the textbook orders.
"""
import itertools

from lattice_ramsey.homothety import HomothetyMap, infer_scale, verify_lattice_homothety


def naive_element(L, i):
    fam = L.family
    r = L.render(i)
    if fam == "boolean":
        return frozenset(r)
    if fam == "chain":
        return tuple(r)
    if fam == "partition":
        return frozenset(frozenset(b) for b in r)
    if fam == "division":
        return r
    if fam == "product":
        a, b = divmod(i, L.right.size)
        return (naive_element(L.left, a), naive_element(L.right, b))
    raise ValueError(fam)


def naive_leq(fam, x, y, L=None):
    if fam == "boolean":
        return x <= y
    if fam == "chain":
        return all(a <= b for a, b in zip(x, y))
    if fam == "partition":
        # y refines x
        return all(any(b <= c for c in x) for b in y)
    if fam == "division":
        return y % x == 0
    if fam == "product":
        return naive_leq(L.left.family, x[0], y[0], L.left) and naive_leq(L.right.family, x[1], y[1], L.right)
    raise ValueError(fam)


def naive_rank(fam, x, L=None):
    if fam == "boolean":
        return len(x)
    if fam == "chain":
        return sum(x)
    if fam == "partition":
        return len(x)
    if fam == "division":
        r, p, n = 0, 2, x
        while n > 1:
            while n % p == 0:
                n //= p
                r += 1
            p += 1
        return r
    if fam == "product":
        return naive_rank(L.left.family, x[0], L.left) + naive_rank(L.right.family, x[1], L.right)
    raise ValueError(fam)


class NaivePoset:
    """The lattice rebuilt from rendered elements with textbook orders."""

    def __init__(self, L):
        self.L = L
        self.els = [naive_element(L, i) for i in range(L.size)]
        n = L.size
        self.le = [[naive_leq(L.family, self.els[a], self.els[b], L) for b in range(n)] for a in range(n)]
        self.rank = [naive_rank(L.family, x, L) for x in self.els]

    def lub(self, a, b):
        ups = [c for c in range(self.L.size) if self.le[a][c] and self.le[b][c]]
        least = [c for c in ups if all(self.le[c][d] for d in ups)]
        assert len(least) == 1, "no unique least upper bound"
        return least[0]

    def glb(self, a, b):
        downs = [c for c in range(self.L.size) if self.le[c][a] and self.le[c][b]]
        great = [c for c in downs if all(self.le[d][c] for d in downs)]
        assert len(great) == 1, "no unique greatest lower bound"
        return great[0]

    def covers(self):
        n = self.L.size
        for a in range(n):
            for b in range(n):
                if a != b and self.le[a][b] and not any(
                    c not in (a, b) and self.le[a][c] and self.le[c][b] for c in range(n)
                ):
                    yield a, b


def set_partitions(items):
    """All set partitions of a list, by inserting each item into an existing block or a new one."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_force_lattice_homotheties(P, Q):
    """Filter all |Q|^|P| total maps through verify_lattice_homothety; lexicographic order."""
    found = []
    for images in itertools.product(range(Q.size), repeat=P.size):
        d = infer_scale(P, Q, images)
        if d is None:
            continue
        f = HomothetyMap(P, Q, images, d)
        if verify_lattice_homothety(f).ok:
            found.append(f)
    return found


def find_isomorphism(L1, L2):
    """A bijection preserving order both ways, by trying every permutation (small lattices only)."""
    if L1.size != L2.size:
        return None
    for perm in itertools.permutations(range(L2.size)):
        if all(L1.leq(a, b) == L2.leq(perm[a], perm[b]) for a in range(L1.size) for b in range(L1.size)):
            return perm
    return None


def brute_force_mono(P, Q, colors, system="trivial"):
    """Lexicographically first monochromatic restricted lattice homothety P -> Q, or None.

    Trivial system: every map into a single color class is tried and filtered
    through verify_lattice_homothety. HJ system: every HJ form is generated
    directly from its definition. Neither path touches the backtracking search.
    """
    from lattice_ramsey.systems import enumerate_hj_forms, hj_to_map

    best = None
    if system == "hj":
        for form in enumerate_hj_forms(Q.t, P.n, Q.n):
            f = hj_to_map(form)
            if len({colors[q] for q in f.images}) == 1 and (best is None or f.images < best.images):
                best = f
        return best
    for c in sorted(set(colors)):
        cls = [q for q in range(Q.size) if colors[q] == c]
        for images in itertools.product(cls, repeat=P.size):
            if best is not None and images >= best.images:
                break
            d = infer_scale(P, Q, images)
            if d is None:
                continue
            f = HomothetyMap(P, Q, images, d)
            if verify_lattice_homothety(f).ok:
                best = f
                break
    return best
