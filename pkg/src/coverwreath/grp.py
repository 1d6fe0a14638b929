"""SL_n(q) and its central quotients SL_n(q)/K acting on projective points.

A group element is a tuple of n*n field-element codes, row-major, holding
the canonical representative of its coset modulo the scalar subgroup K:
the lexicographically smallest of the m scalar multiples.  Points are row
vectors with first nonzero coordinate 1 and the group acts on the right,
x -> normalize(x @ g).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from math import gcd, prod

import numpy as np

from . import kernels
from .errors import BudgetExceeded
from .ff import Field

GroupElem = tuple
ProjPoint = tuple

DEFAULT_BUDGET = 2_000_000


def sl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1))


@dataclass
class CayleyGraph:
    """Right Cayley graph of a quotient group in BFS order from the identity.

    ``nbr[g, i]`` is the index of g * s_i; ``parent``/``pgen`` give the BFS
    tree, so element j = element parent[j] * s_{pgen[j]}.
    """

    codes: list
    nbr: np.ndarray
    parent: np.ndarray
    pgen: np.ndarray
    _index: dict | None = dc_field(default=None, repr=False)

    def __len__(self):
        return len(self.codes)

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {c: i for i, c in enumerate(self.codes)}
        return self._index

    @cached_property
    def depth(self) -> np.ndarray:
        depth = np.zeros(len(self.codes), dtype=np.int64)
        for j in range(1, len(self.codes)):
            depth[j] = depth[self.parent[j]] + 1
        return depth

    def word(self, j: int) -> list[int]:
        """Generator indices w with element j = s_{w[0]} * s_{w[1]} * ..."""
        out = []
        while j > 0:
            out.append(int(self.pgen[j]))
            j = int(self.parent[j])
        return out[::-1]


class GroupCtx:
    """SL_n(q)/K where K is the group of m-th root scalars (m | gcd(n, q-1)).

    m == 1 gives SL_n(q) and m == gcd(n, q-1) gives PSL_n(q).
    """

    def __init__(self, field: Field, n: int, m: int = 1):
        if n < 2:
            raise ValueError("dimension must be at least 2")
        self.field = field
        self.n = n
        self.q = field.q
        self.d = gcd(n, field.q - 1)
        if m < 1 or self.d % m:
            raise ValueError(f"kernel order {m} must divide gcd(n, q-1) = {self.d}")
        self.m = m
        self.scalars = self._roots(m)
        self.center = self._roots(self.d)
        self._tables = field.tables() if field.q <= 256 else None
        self.identity = self.canonical(tuple(int(i == j) for i in range(n) for j in range(n)))
        self.generators = sl_generators(self)
        self._cayley: CayleyGraph | None = None

    def _roots(self, m):
        f = self.field
        step = (f.q - 1) // m
        return tuple(sorted(f.pow(f.primitive, j * step) for j in range(m)))

    def __repr__(self):
        name = "SL" if self.m == 1 else ("PSL" if self.m == self.d else f"SL/{self.m}")
        return f"<{name}_{self.n}({self.q})>"

    @property
    def order(self) -> int:
        return sl_order(self.n, self.q) // self.m

    @property
    def is_psl(self) -> bool:
        return self.m == self.d

    def psl(self) -> "GroupCtx":
        return self if self.is_psl else GroupCtx(self.field, self.n, self.d)

    # -- element plumbing ------------------------------------------------------

    def canonical(self, entries) -> GroupElem:
        entries = tuple(entries)
        best = entries
        mul = self.field.mul
        for lam in self.scalars:
            if lam != 1:
                cand = tuple(mul(lam, e) for e in entries)
                if cand < best:
                    best = cand
        return best

    def encode(self, g: GroupElem) -> int:
        code = 0
        for e in g:
            code = code * self.q + e
        return code

    def decode(self, code: int) -> GroupElem:
        out = [0] * (self.n * self.n)
        for i in range(len(out) - 1, -1, -1):
            code, out[i] = divmod(code, self.q)
        return tuple(out)

    def rows(self, g: GroupElem) -> list[list[int]]:
        n = self.n
        return [list(g[i * n:(i + 1) * n]) for i in range(n)]

    def from_rows(self, rows) -> GroupElem:
        return self.canonical(e for row in rows for e in row)

    def diag(self, entries) -> GroupElem:
        n = self.n
        return self.canonical(entries[i] if i == j else 0 for i in range(n) for j in range(n))

    def scalar(self, lam: int) -> GroupElem:
        return self.diag([lam] * self.n)

    def contains(self, g: GroupElem) -> bool:
        """True when g is a canonical matrix of determinant 1."""
        return (len(g) == self.n * self.n and all(0 <= e < self.q for e in g)
                and self.canonical(g) == tuple(g) and det(self, g) == 1)

    @cached_property
    def points(self) -> list[ProjPoint]:
        return proj_points(self)

    @cached_property
    def point_index(self) -> dict:
        return {x: i for i, x in enumerate(self.points)}


def _raw_product(ctx: GroupCtx, a, b) -> list[int]:
    n, q = ctx.n, ctx.q
    out = []
    if ctx._tables is not None:
        addt, mult = ctx._tables
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = addt[acc * q + mult[a[i * n + k] * q + b[k * n + j]]]
                out.append(acc)
        return out
    f = ctx.field
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]))
            out.append(acc)
    return out


def det(ctx: GroupCtx, g) -> int:
    f, n = ctx.field, ctx.n
    a = ctx.rows(g)
    result = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = f.neg(result)
        result = f.mul(result, a[c][c])
        inv = f.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c]:
                factor = f.mul(a[r][c], inv)
                a[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[r], a[c])]
    return result


def sl_generators(ctx: GroupCtx) -> list[GroupElem]:
    """Elementary transvections e_ij(beta), beta in the basis 1, x, ..., x^(k-1)."""
    n, f = ctx.n, ctx.field
    gens = []
    for i, j in product(range(n), repeat=2):
        if i == j:
            continue
        for t in range(f.k):
            beta = f.p**t
            entries = [int(a == b) for a in range(n) for b in range(n)]
            entries[i * n + j] = beta
            gens.append(ctx.canonical(entries))
    return gens


def mul(ctx: GroupCtx, a: GroupElem, b: GroupElem) -> GroupElem:
    return ctx.canonical(_raw_product(ctx, a, b))


def inv(ctx: GroupCtx, a: GroupElem) -> GroupElem:
    """Inverse by Gauss-Jordan elimination, re-canonicalized."""
    f, n = ctx.field, ctx.n
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(ctx.rows(a))]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        s = f.inv(aug[c][c])
        aug[c] = [f.mul(s, x) for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(aug[r], aug[c])]
    return ctx.from_rows(row[n:] for row in aug)


def power(ctx: GroupCtx, a: GroupElem, e: int) -> GroupElem:
    if e < 0:
        a, e = inv(ctx, a), -e
    result, base = ctx.identity, a
    while e:
        if e & 1:
            result = mul(ctx, result, base)
        base = mul(ctx, base, base)
        e >>= 1
    return result


def elem_order_grp(ctx: GroupCtx, a: GroupElem) -> int:
    """Order of a in SL_n(q)/K, by repeated multiplication."""
    a = ctx.canonical(a)
    x, e = a, 1
    limit = ctx.q ** ctx.n
    while x != ctx.identity:
        x = mul(ctx, x, a)
        e += 1
        if e > limit:
            raise AssertionError("element order exceeds q^n; not a group element?")
    return e


def project(ctx_to: GroupCtx, g: GroupElem) -> GroupElem:
    """Image of g under the quotient map to ``ctx_to`` (a coarser quotient)."""
    return ctx_to.canonical(g)


def cayley_graph(ctx: GroupCtx, budget: int = DEFAULT_BUDGET) -> CayleyGraph:
    if ctx.order > budget:
        raise BudgetExceeded(f"{ctx!r} has order {ctx.order} > budget {budget}",
                             needed=ctx.order, budget=budget)
    if ctx._cayley is None:
        if ctx._tables is None:
            raise BudgetExceeded(f"enumeration over GF({ctx.q}) is not supported")
        addt, mult = ctx._tables
        args = ([ctx.encode(g) for g in ctx.generators], ctx.encode(ctx.identity),
                ctx.n, ctx.q, addt, mult, list(ctx.scalars), ctx.order + 1)
        if ctx.q ** (ctx.n * ctx.n) < kernels.MAX_CODE:
            res = kernels.cayley_bfs(*args)
        else:
            from . import _pykernels
            res = _pykernels.cayley_bfs(*args)
        codes, nbr, parent, pgen = res
        if len(codes) != ctx.order:
            raise AssertionError(f"enumerated {len(codes)} elements, expected {ctx.order}")
        k = len(ctx.generators)
        ctx._cayley = CayleyGraph(
            codes=codes,
            nbr=np.asarray(nbr, dtype=np.int64).reshape(len(codes), k),
            parent=np.asarray(parent, dtype=np.int64),
            pgen=np.asarray(pgen, dtype=np.int64),
        )
    return ctx._cayley


def enumerate_elements(ctx: GroupCtx, budget: int = DEFAULT_BUDGET) -> list[GroupElem]:
    """All elements in BFS order (layer, then discovery order)."""
    return [ctx.decode(c) for c in cayley_graph(ctx, budget).codes]


def proj_points(ctx: GroupCtx) -> list[ProjPoint]:
    n, q = ctx.n, ctx.q
    pts = []
    for lead in range(n):
        for tail in product(range(q), repeat=n - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return sorted(pts)


def normalize(ctx: GroupCtx, v) -> ProjPoint:
    f = ctx.field
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    s = f.inv(lead)
    return tuple(f.mul(s, c) for c in v)


def act(ctx: GroupCtx, x: ProjPoint, g: GroupElem) -> ProjPoint:
    """Right action x -> x @ g on projective points."""
    f, n = ctx.field, ctx.n
    v = []
    for j in range(n):
        acc = 0
        for i in range(n):
            if x[i]:
                acc = f.add(acc, f.mul(x[i], g[i * n + j]))
        v.append(acc)
    return normalize(ctx, v)


def point_perm(ctx: GroupCtx, g: GroupElem) -> list[int]:
    """perm[i] = index of act(points[i], g)."""
    idx = ctx.point_index
    return [idx[act(ctx, x, g)] for x in ctx.points]


def fixed_points(ctx: GroupCtx, g: GroupElem) -> list[ProjPoint]:
    return [x for x in ctx.points if act(ctx, x, g) == x]


def _closure(ctx: GroupCtx, gens: list[GroupElem]) -> set:
    seen = {ctx.identity}
    frontier = [ctx.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(ctx, g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def stabilizer_abelianization_order(ctx: GroupCtx, x: ProjPoint,
                                    budget: int = DEFAULT_BUDGET) -> int:
    """|H/H'| for the stabilizer H of the point x."""
    if not ctx.is_psl:
        raise ValueError("stabilizer_abelianization_order expects a PSL context")
    H = [g for g in enumerate_elements(ctx, budget) if act(ctx, x, g) == x]
    gens: list[GroupElem] = []
    span = {ctx.identity}
    for h in H:
        if h not in span:
            gens.append(h)
            span = _closure(ctx, gens)
    comm_gens = []
    for a in gens:
        for b in gens:
            c = mul(ctx, mul(ctx, inv(ctx, a), inv(ctx, b)), mul(ctx, a, b))
            if c != ctx.identity:
                comm_gens.append(c)
    derived = _closure(ctx, comm_gens)
    grew = True
    while grew:
        grew = False
        for a in gens:
            a_inv = inv(ctx, a)
            for c in list(comm_gens):
                conj = mul(ctx, mul(ctx, a_inv, c), a)
                if conj not in derived:
                    comm_gens.append(conj)
                    derived = _closure(ctx, comm_gens)
                    grew = True
    return len(H) // len(derived)
