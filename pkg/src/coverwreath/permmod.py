"""The permutation module V over GF(r) on projective points and its relatives.

Vectors are rows and groups act on the right, so a module is a list of
dim x dim matrices over GF(r), one per group generator, with v -> v @ A.

    V      permutation module, basis = ctx.points in order
    I      trivial line spanned by t = sum of all points
    V0     augmentation submodule (coordinate sum 0), basis e_i - e_0
    VmodI  V / I
    U      V0 / I
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import gflinalg as la
from .errors import InvalidR, NotInvariant, WrongLabel
from .ff import is_prime
from .grp import GroupCtx, point_perm

LABELS = ("V", "V0", "VmodI", "U", "I-trivial")


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    r: int
    dim: int
    action: tuple = field(repr=False)
    label: str = "V"
    # rows of this module's basis in the parent module (submodules), or rows
    # of the chosen complement (quotients); None for V and I
    basis: np.ndarray | None = field(default=None, repr=False)
    # maps the permutation matrix of any group element on V to its matrix
    # here; lets callers act by arbitrary elements without generator words
    from_perm: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.r >= 256:
            raise ValueError("modules are over GF(r) with r < 256")

    @property
    def ngens(self) -> int:
        return len(self.action)

    def act(self, v: np.ndarray, i: int) -> np.ndarray:
        return la.matmul(np.asarray(v), self.action[i], self.r)

    def act_word(self, v: np.ndarray, word) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.r
        for i in word:
            v = self.act(v, i)
        return v

    def element_matrix(self, perm) -> np.ndarray:
        """Matrix of the element whose action on points is ``perm``."""
        if self.from_perm is None:
            raise ValueError(f"module {self.label} has no element-level action")
        return self.from_perm(perm_matrix(perm))

    def word_matrix(self, word) -> np.ndarray:
        m = np.eye(self.dim, dtype=np.int64)
        for i in word:
            m = la.matmul(m, self.action[i], self.r)
        return m


def perm_matrix(perm) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=np.int64)
    m[np.arange(n), perm] = 1
    return m


def _check_r(ctx: GroupCtx, r: int):
    if not is_prime(r) or ctx.d % r:
        raise InvalidR(f"r = {r} must be a prime dividing gcd(n, q-1) = {ctx.d}")


def module_V(ctx: GroupCtx, r: int) -> ModuleSpec:
    """Permutation module on ctx.points; any central quotient acts the same way."""
    _check_r(ctx, r)
    action = tuple(perm_matrix(point_perm(ctx, g)) for g in ctx.generators)
    return ModuleSpec(r=r, dim=len(ctx.points), action=action, label="V", from_perm=lambda m: m)


def trivial_module(ctx: GroupCtx, r: int) -> ModuleSpec:
    _check_r(ctx, r)
    one = np.ones((1, 1), dtype=np.int64)
    return ModuleSpec(r=r, dim=1, action=tuple(one for _ in ctx.generators), label="I-trivial",
                      from_perm=lambda m: one)


def t_vector(spec: ModuleSpec) -> np.ndarray:
    if spec.label != "V":
        raise WrongLabel(f"t is defined on V, not {spec.label}")
    return np.ones(spec.dim, dtype=np.int64)


def submodule_V0(spec: ModuleSpec) -> ModuleSpec:
    if spec.label != "V":
        raise WrongLabel(f"V0 is a submodule of V, not of {spec.label}")
    n, r = spec.dim, spec.r
    basis = np.zeros((n - 1, n), dtype=np.int64)
    basis[:, 0] = r - 1
    basis[np.arange(n - 1), np.arange(1, n)] = 1
    # sum_{i>=1} w_i (e_i - e_0) has coordinates w[1:]
    def restrict(a):
        return la.matmul(basis, a, r)[:, 1:]

    parent = spec.from_perm
    return ModuleSpec(r=r, dim=n - 1, action=tuple(restrict(a) for a in spec.action), label="V0",
                      basis=basis, from_perm=None if parent is None else lambda m: restrict(parent(m)))


def in_V0(v: np.ndarray) -> np.ndarray:
    """Coordinates of an augmentation-zero vector of V in the V0 basis."""
    return np.asarray(v, dtype=np.int64)[1:]


def _complement(sub: np.ndarray, dim: int, r: int) -> np.ndarray:
    """Standard basis vectors greedily appended to ``sub`` while rank grows."""
    echelon = la.Echelon(dim, r)
    echelon.add(sub)
    chosen = []
    for i in range(dim):
        e = np.zeros((1, dim), dtype=np.int64)
        e[0, i] = 1
        if echelon.add(e):
            chosen.append(i)
        if echelon.rank == dim:
            break
    comp = np.zeros((len(chosen), dim), dtype=np.int64)
    comp[np.arange(len(chosen)), chosen] = 1
    return comp


def quotient(spec: ModuleSpec, sub_basis, label: str | None = None) -> ModuleSpec:
    """Quotient by an invariant subspace, using a greedy standard complement."""
    r, dim = spec.r, spec.dim
    sub = np.atleast_2d(np.asarray(sub_basis, dtype=np.int64)) % r
    k = sub.shape[0]
    if la.rank(sub, r) != k:
        raise ValueError("sub_basis is not linearly independent")
    comp = _complement(sub, dim, r)
    full = np.vstack([sub, comp])
    full_inv = la.inverse(full, r)
    for a in spec.action:
        if la.matmul(la.matmul(sub, a, r), full_inv, r)[:, k:].any():
            raise NotInvariant("a generator moves the subspace outside itself")

    def induced(a):
        return la.matmul(la.matmul(comp, a, r), full_inv, r)[:, k:]

    if label is None:
        label = {"V": "VmodI", "V0": "U"}.get(spec.label, spec.label + "/sub")
    parent = spec.from_perm
    return ModuleSpec(r=r, dim=dim - k, action=tuple(induced(a) for a in spec.action), label=label,
                      basis=comp, from_perm=None if parent is None else lambda m: induced(parent(m)))


def fixed_subspace(spec: ModuleSpec) -> np.ndarray:
    """Basis rows of the vectors fixed by every generator (H^0)."""
    if spec.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(spec.dim, dtype=np.int64)
    if not spec.action:
        return eye
    stacked = np.hstack([(a - eye) % spec.r for a in spec.action])
    return la.left_nullspace(stacked, spec.r)


def standard_modules(ctx: GroupCtx, r: int) -> dict[str, ModuleSpec]:
    """V, I, V0, V/I and U for one group context."""
    V = module_V(ctx, r)
    V0 = submodule_V0(V)
    t = t_vector(V)
    return {
        "V": V,
        "I": trivial_module(ctx, r),
        "V0": V0,
        "VmodI": quotient(V, [t], label="VmodI"),
        "U": quotient(V0, [in_V0(t)], label="U"),
    }
