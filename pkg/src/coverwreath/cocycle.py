"""1-cocycles and H^1 for a matrix group acting on a GF(r)-module.

A right 1-cocycle v : G -> M satisfies v(st) = v(s).t + v(t); it is fixed
by its values on the generators.  Two independent solvers are provided:

* ``z1_generator_method`` walks the Cayley graph, writing each v(g) as a
  linear expression in the generator values and collecting the
  consistency equations of every non-tree edge.
* ``z1_full_oracle`` takes one unknown vector per group element and
  solves the system over all pairs (s, t), without generator words.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import gflinalg as la
from .errors import BudgetExceeded, NotCentralKernel, WrongLabel
from .grp import CayleyGraph, GroupCtx, cayley_graph, mul, point_perm
from .permmod import ModuleSpec, fixed_subspace

ORACLE_BUDGET = 360
ORACLE_MAX_DIM = 64
# entries of a (batch, f, dim) block evaluated at once
_BLOCK = 1 << 21


@dataclass
class Cocycle:
    gen_values: np.ndarray  # (ngens, dim)

    def __eq__(self, other):
        return isinstance(other, Cocycle) and np.array_equal(self.gen_values, other.gen_values)


@dataclass
class CocycleBasis:
    group: GroupCtx | None
    module: ModuleSpec
    gen_values: np.ndarray  # (z1_dim, ngens, dim)
    z1_dim: int
    b1_dim: int
    h1_dim: int
    graph: CayleyGraph | None = None

    def cocycles(self) -> list[Cocycle]:
        return [Cocycle(v) for v in self.gen_values]


def _rows_to_values(rows: np.ndarray, ngens: int, dim: int) -> np.ndarray:
    return rows.reshape(rows.shape[0], ngens, dim)


def b1_dim(module: ModuleSpec) -> int:
    return module.dim - fixed_subspace(module).shape[0]


def b1_basis(module: ModuleSpec) -> list[Cocycle]:
    """Coboundaries s -> w.s - w for w over a complement of the fixed space."""
    from .permmod import _complement

    r = module.r
    fixed = fixed_subspace(module)
    comp = _complement(fixed, module.dim, r) if fixed.size else np.eye(module.dim, dtype=np.int64)
    out = []
    for w in comp:
        vals = np.array([(la.matmul(w, a, r) - w) % r for a in module.action], dtype=np.int64)
        out.append(Cocycle(vals.reshape(module.ngens, module.dim)))
    return out


# -- generator method -----------------------------------------------------------

def _layers(graph: CayleyGraph, limit: int, ngens: int):
    """Per BFS layer and generator, the child indices below ``limit``."""
    depth = graph.depth[:limit]
    pgen = graph.pgen[:limit]
    out = []
    for lvl in range(1, int(depth.max(initial=0)) + 1):
        in_lvl = np.flatnonzero(depth == lvl)
        for i in range(ngens):
            sel = in_lvl[pgen[in_lvl] == i]
            if sel.size:
                out.append((i, sel))
    return out


def _expressions(graph, module, coords, limit):
    """X[g] with v(g) = y @ X[g] for parameters y, for the first ``limit`` elements.

    ``coords`` (f x ngens*dim) maps parameters to generator values.
    """
    r, dim, k = module.r, module.dim, module.ngens
    f = coords.shape[0]
    X = np.zeros((limit, f, dim), dtype=np.int16)
    gen_expr = [coords[:, i * dim:(i + 1) * dim] for i in range(k)]
    step = max(1, _BLOCK // max(1, f * dim))
    for i, sel in _layers(graph, limit, k):
        for lo in range(0, sel.size, step):
            part = sel[lo:lo + step]
            par = graph.parent[part]
            X[part] = (la.matmul(X[par], module.action[i], r) + gen_expr[i]) % r
    return X


def _collect_constraints(graph, module, coords, limit, echelon_cols):
    r, dim, k = module.r, module.dim, module.ngens
    X = _expressions(graph, module, coords, limit)
    f = coords.shape[0]
    ech = la.Echelon(echelon_cols, r)
    step = max(1, _BLOCK // max(1, f * dim))
    idx = np.arange(limit)
    for i in range(k):
        h = graph.nbr[:limit, i]
        tree = (graph.parent[np.minimum(h, len(graph) - 1)] == idx) & (graph.pgen[np.minimum(h, len(graph) - 1)] == i)
        keep = np.flatnonzero((h < limit) & ~tree)
        gen_expr = coords[:, i * dim:(i + 1) * dim]
        for lo in range(0, keep.size, step):
            g = keep[lo:lo + step]
            diff = (X[h[g]] - la.matmul(X[g], module.action[i], r) - gen_expr) % r
            rows = diff.transpose(0, 2, 1).reshape(-1, f)
            rows = rows[rows.any(axis=1)]
            if rows.shape[0]:
                ech.add(rows)
            if ech.rank == f:
                return ech
    return ech


def z1_generator_method(ctx: GroupCtx, module: ModuleSpec, budget: int = 2_000_000) -> CocycleBasis:
    """Z^1 by BFS over the Cayley graph with incremental elimination.

    The solve runs in rounds over growing BFS balls; each round restricts the
    unknowns to the solutions of the previous one.  The last round covers
    every edge of the Cayley graph, so the answer is exact.
    """
    graph = cayley_graph(ctx, budget)
    r, dim, k = module.r, module.dim, module.ngens
    if k != len(ctx.generators):
        raise ValueError("module and group disagree on the number of generators")
    n_el = len(graph)
    unknowns = k * dim
    coords = np.eye(unknowns, dtype=np.int64)
    limits = []
    ball = min(n_el, 2 * unknowns + 64)
    while ball < n_el:
        limits.append(ball)
        ball *= 16
    limits.append(n_el)
    for limit in limits:
        if coords.shape[0] == 0:
            break
        ech = _collect_constraints(graph, module, coords, limit, coords.shape[0])
        coords = la.matmul(ech.nullspace(), coords, r) if ech.rank else coords
    z1 = coords.shape[0]
    if z1:
        coords, _ = la.rref(coords, r)
    b1 = b1_dim(module)
    return CocycleBasis(group=ctx, module=module, gen_values=_rows_to_values(coords, k, dim),
                        z1_dim=z1, b1_dim=b1, h1_dim=z1 - b1, graph=graph)


def evaluate_all(cocycle: Cocycle, module: ModuleSpec, graph: CayleyGraph) -> np.ndarray:
    """v(g) for every element of the graph, as an (order, dim) array."""
    coords = np.asarray(cocycle.gen_values, dtype=np.int64).reshape(1, -1)
    return _expressions(graph, module, coords, len(graph))[:, 0, :].astype(np.int64)


def evaluate(cocycle: Cocycle, module: ModuleSpec, word) -> np.ndarray:
    """v(s_{w0} s_{w1} ...) by folding v(g s) = v(g).s + v(s) along the word."""
    v = np.zeros(module.dim, dtype=np.int64)
    for i in word:
        v = (module.act(v, i) + cocycle.gen_values[i]) % module.r
    return v


def restrict_to_central(cocycle: Cocycle, basis: CocycleBasis, z) -> int:
    """The scalar c with v(z) = c.t, for z generating the central kernel."""
    ctx, module = basis.group, basis.module
    if module.label != "V":
        raise WrongLabel("restriction to the central kernel is read off on V")
    z = tuple(z)
    if not ctx.contains(z) or z == ctx.identity or ctx.psl().canonical(z) != ctx.psl().identity:
        raise NotCentralKernel("z is not a nontrivial element of the central kernel")
    graph = basis.graph if basis.graph is not None else cayley_graph(ctx)
    value = evaluate(cocycle, module, graph.word(graph.index[ctx.encode(z)]))
    for a in module.action:
        if not np.array_equal(la.matmul(value, a, module.r), value):
            raise AssertionError("v(z) is not fixed by the group")
    if np.any(value != value[0]):
        raise AssertionError("v(z) is not a multiple of t")
    return int(value[0])


# -- full-system oracle -----------------------------------------------------------

class _SparseSolver:
    """Gaussian elimination over GF(r) on sparse rows {var: coeff}.

    Each pivot variable is kept fully reduced as a combination of free
    variables, so the system is always in reduced echelon form.
    """

    def __init__(self, r: int, key):
        self.r = r
        self.key = key
        self.expr: dict[int, dict[int, int]] = {}
        self.users: dict[int, set[int]] = {}

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        r = self.r
        out: dict[int, int] = {}
        for var, c in row.items():
            sub = self.expr.get(var)
            if sub is None:
                out[var] = (out.get(var, 0) + c) % r
            else:
                for fv, cc in sub.items():
                    out[fv] = (out.get(fv, 0) + c * cc) % r
        return {v: c for v, c in out.items() if c}

    def add(self, row: dict[int, int]) -> bool:
        red = self.reduce(row)
        if not red:
            return False
        r = self.r
        piv = max(red, key=self.key)
        scale = (-pow(red[piv], r - 2, r)) % r
        new = {v: c * scale % r for v, c in red.items() if v != piv}
        for user in self.users.pop(piv, ()):
            e = self.expr[user]
            c = e.pop(piv)
            for v, cc in new.items():
                val = (e.get(v, 0) + c * cc) % r
                if val:
                    e[v] = val
                    self.users.setdefault(v, set()).add(user)
                else:
                    e.pop(v, None)
                    self.users.get(v, set()).discard(user)
        self.expr[piv] = new
        for v in new:
            self.users.setdefault(v, set()).add(piv)
        return True


def z1_full_oracle(ctx: GroupCtx, elements, module: ModuleSpec, budget: int = ORACLE_BUDGET,
                   seed: int = 0) -> CocycleBasis:
    """Z^1 from the system v(st) = v(s).t + v(t) over all pairs of elements.

    Unknowns are the |G|*dim coordinates of v.  A sparse elimination over the
    pairs (s, t) with t in a seeded random sample gives a candidate solution
    space; then every pair is checked and violated equations are added until
    all |G|^2 equations hold.  Generator words are never used.
    """
    elements = [tuple(g) for g in elements]
    n_el, dim, r = len(elements), module.dim, module.r
    if n_el > budget or dim > ORACLE_MAX_DIM:
        raise BudgetExceeded(f"oracle limited to |G| <= {budget}, dim <= {ORACLE_MAX_DIM}",
                             needed=n_el, budget=budget)
    index = {g: i for i, g in enumerate(elements)}
    table = np.array([[index[mul(ctx, s, t)] for t in elements] for s in elements], dtype=np.int64)
    mats = np.array([module.element_matrix(point_perm(ctx, g)) for g in elements], dtype=np.int64)

    rng = random.Random(seed)
    sample = rng.sample(range(n_el), min(n_el, 4))
    preferred = set(sample)
    solver = _SparseSolver(r, key=lambda var: (var // dim not in preferred, var))
    for t in sample:
        At = mats[t]
        for s in range(n_el):
            st = table[s, t]
            for j in range(dim):
                row: dict[int, int] = {}
                row[st * dim + j] = 1
                for i in np.flatnonzero(At[:, j]):
                    var = s * dim + int(i)
                    row[var] = (row.get(var, 0) - int(At[i, j])) % r
                var = t * dim + j
                row[var] = (row.get(var, 0) - 1) % r
                solver.add({v: c for v, c in row.items() if c})

    total = n_el * dim
    free = [v for v in range(total) if v not in solver.expr]
    col = {v: a for a, v in enumerate(free)}
    expr = np.zeros((total, len(free)), dtype=np.int64)
    for v in range(total):
        if v in col:
            expr[v, col[v]] = 1
        else:
            for fv, c in solver.expr[v].items():
                expr[v, col[fv]] = c

    # every pair (s, t): Y[st] - Y[s] A_t - Y[t] must vanish on the parameters
    while expr.shape[1]:
        f = expr.shape[1]
        Yt = expr.reshape(n_el, dim, f).transpose(0, 2, 1)  # (G, f, dim)
        ech = la.Echelon(f, r)
        for t in range(n_el):
            res = (Yt[table[:, t]] - la.matmul(Yt, mats[t], r) - Yt[t]) % r
            rows = res.transpose(0, 2, 1).reshape(-1, f)
            rows = rows[rows.any(axis=1)]
            if rows.shape[0]:
                ech.add(rows)
        if ech.rank == 0:
            break
        expr = la.matmul(expr, ech.nullspace().T, r)

    z1 = expr.shape[1]
    Y = expr.reshape(n_el, dim, z1)
    gens = [index[g] for g in ctx.generators if g in index]
    gen_values = np.zeros((z1, len(gens), dim), dtype=np.int64)
    for a in range(z1):
        gen_values[a] = Y[gens, :, a]
    if z1:
        flat, _ = la.rref(gen_values.reshape(z1, -1), r)
        gen_values = flat.reshape(z1, len(gens), dim)

    # H^0 over all elements rather than the generators
    eye = np.eye(dim, dtype=np.int64)
    fixed = la.left_nullspace(np.hstack([(m - eye) % r for m in mats]), r)
    b1 = dim - fixed.shape[0]
    return CocycleBasis(group=ctx, module=module, gen_values=gen_values,
                        z1_dim=z1, b1_dim=b1, h1_dim=z1 - b1)
