"""Does the nonsplit cover Z_r.PSL_n(q) embed in Z_r wr PSL_n(q)?

Three routes answer the question independently:

* ``arithmetic_decide``: r does not divide (q-1)/gcd(n, q-1).
* ``construct_embedding``: find a 1-cocycle of the cover S = SL_n(q)/K with
  values in the permutation module V that is nonzero on the central kernel,
  and turn it into a homomorphism S -> V x| G checked on every edge of the
  Cayley graph.
* ``obstruction_witness``: the diagonal element diag(a, ..., a, a^(1-n))
  with |a| = r*gcd(n, q-1) has order r^2 in S, its image has order r and
  fixes a point, which rules out any embedding.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cocycle import CocycleBasis, restrict_to_central, z1_generator_method
from .errors import BudgetExceeded, InvalidInstance, WitnessCheckFailed
from .ff import Field, element_of_order, is_prime, prime_power
from .grp import GroupCtx, act, cayley_graph, mul, point_perm, power, project
from .permmod import fixed_subspace, module_V, standard_modules

ROUTE_BUDGET = 100_000
HIGH_BUDGET = 2_000_000
BUDGET_ENV = "COVERWREATH_BUDGET"


# (n, q, r) instances exercised by the sweep --suite flag and the acceptance tests
SUITE = ((2, 5, 2), (2, 7, 2), (2, 9, 2), (2, 11, 2), (2, 13, 2),
         (3, 4, 3), (3, 7, 3), (3, 19, 3), (4, 5, 2), (4, 9, 2))


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV, "").strip()
    return int(raw) if raw else ROUTE_BUDGET


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    q: int
    r: int

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def k(self) -> int:
        return prime_power(self.q)[1]

    @property
    def d(self) -> int:
        return gcd(self.n, self.q - 1)

    @property
    def simple_regime(self) -> bool:
        return (self.n, self.q) not in ((2, 2), (2, 3))

    def __str__(self):
        return f"({self.n},{self.q},{self.r})"


def make_instance(n: int, q: int, r: int) -> ProblemInstance:
    if n < 2:
        raise InvalidInstance(f"n = {n} must be at least 2")
    if prime_power(q) is None:
        raise InvalidInstance(f"q = {q} is not a prime power")
    if not is_prime(r):
        raise InvalidInstance(f"r = {r} is not prime")
    d = gcd(n, q - 1)
    if d % r:
        raise InvalidInstance(f"r = {r} does not divide gcd(n, q-1) = {d}")
    return ProblemInstance(n, q, r)


def _check(inst: ProblemInstance) -> ProblemInstance:
    return make_instance(inst.n, inst.q, inst.r)


def arithmetic_decide(inst: ProblemInstance) -> bool:
    inst = _check(inst)
    return ((inst.q - 1) // inst.d) % inst.r != 0


# -- the cover ----------------------------------------------------------------------

@dataclass
class Cover:
    instance: ProblemInstance
    S: GroupCtx
    G: GroupCtx
    z: tuple

    def project(self, s) -> tuple:
        return project(self.G, s)


def build_cover(inst: ProblemInstance) -> Cover:
    inst = _check(inst)
    f = Field(inst.p, inst.k)
    S = GroupCtx(f, inst.n, inst.d // inst.r)
    G = GroupCtx(f, inst.n, inst.d)
    z = S.scalar(element_of_order(f, inst.d))
    return Cover(inst, S, G, z)


# -- wreath product V x| G -----------------------------------------------------------

@dataclass(frozen=True)
class WreathElem:
    vec: tuple
    grp: tuple


def wreath_identity(G: GroupCtx, r: int) -> WreathElem:
    return WreathElem((0,) * len(G.points), G.identity)


def wreath_mul(G: GroupCtx, r: int, a: WreathElem, b: WreathElem) -> WreathElem:
    """(v, g)(w, h) = (v.h + w, gh)."""
    perm = point_perm(G, b.grp)
    moved = [0] * len(a.vec)
    for x, c in enumerate(a.vec):
        moved[perm[x]] = c
    vec = tuple((c + w) % r for c, w in zip(moved, b.vec))
    return WreathElem(vec, mul(G, a.grp, b.grp))


# -- constructive route ----------------------------------------------------------------

@dataclass
class EmbeddingCertificate:
    instance: ProblemInstance
    generators: list          # cover generators s_i
    images: list              # WreathElem per generator
    z: tuple
    central_image: WreathElem
    coefficient: int
    transcript: dict = field(default_factory=dict)


@dataclass
class NotFound:
    """No cocycle of the cover is nonzero on the central kernel."""

    instance: ProblemInstance
    z1_dim: int
    h1_dim: int

    def __bool__(self):
        return False


def closure_check(cover: Cover, vectors, budget: int = HIGH_BUDGET):
    """Check psi(g) psi(s_i) = psi(g s_i) for every element g and generator s_i.

    ``vectors[i]`` is the V-part of psi(s_i); psi(g) is built along the BFS
    tree.  Returns (identities checked, psi(z) vector, first failure or None).
    """
    S, G, r = cover.S, cover.G, cover.instance.r
    graph = cayley_graph(S, budget)
    vectors = np.asarray(vectors, dtype=np.int64) % r
    perms = [np.asarray(point_perm(G, project(G, s)), dtype=np.int64) for s in S.generators]
    n_el, npts = len(graph), len(G.points)
    psi = np.zeros((n_el, npts), dtype=np.int64)
    for j in range(1, n_el):
        par, i = graph.parent[j], graph.pgen[j]
        moved = np.empty(npts, dtype=np.int64)
        moved[perms[i]] = psi[par]
        psi[j] = (moved + vectors[i]) % r
    checked = 0
    for i, perm in enumerate(perms):
        moved = np.empty_like(psi)
        moved[:, perm] = psi
        lhs = (moved + vectors[i]) % r
        rhs = psi[graph.nbr[:, i]]
        bad = np.flatnonzero((lhs != rhs).any(axis=1))
        if bad.size:
            g = int(bad[0])
            return checked + g, None, (
                f"closure identity psi(g)*psi(s_{i}) = psi(g*s_{i}) fails at element #{g} "
                f"(word {graph.word(g)})")
        checked += n_el
    z_vec = psi[graph.index[S.encode(cover.z)]]
    return checked, z_vec, None


def construct_embedding(inst: ProblemInstance, budget: int | None = None):
    """EmbeddingCertificate, or NotFound when every cocycle vanishes on z."""
    budget = default_budget() if budget is None else budget
    cover = build_cover(inst)
    S, G, r = cover.S, cover.G, inst.r
    if S.order > budget:
        raise BudgetExceeded(f"cover of order {S.order} exceeds budget {budget}",
                             needed=S.order, budget=budget)
    V = module_V(S, r)
    basis: CocycleBasis = z1_generator_method(S, V, budget)
    chosen, coeff = None, 0
    for cocycle in basis.cocycles():
        coeff = restrict_to_central(cocycle, basis, cover.z)
        if coeff:
            chosen = cocycle
            break
    if chosen is None:
        return NotFound(inst, basis.z1_dim, basis.h1_dim)
    vectors = chosen.gen_values
    checked, z_vec, failure = closure_check(cover, vectors, budget)
    if failure:
        raise AssertionError(f"constructed embedding failed verification: {failure}")
    t = np.full(len(G.points), coeff, dtype=np.int64)
    if not np.array_equal(z_vec, t):
        raise AssertionError("psi(z) is not the chosen multiple of t")
    images = [WreathElem(tuple(int(c) for c in v), cover.project(s))
              for v, s in zip(vectors, S.generators)]
    return EmbeddingCertificate(
        instance=inst,
        generators=list(S.generators),
        images=images,
        z=cover.z,
        central_image=WreathElem(tuple(int(c) for c in t), G.identity),
        coefficient=int(coeff),
        transcript={"group_order": S.order,
                    "closure_identities": checked,
                    "z1_dim": basis.z1_dim, "h1_dim": basis.h1_dim,
                    "points": len(G.points)},
    )


# -- obstruction route -------------------------------------------------------------------

@dataclass
class ObstructionCertificate:
    instance: ProblemInstance
    a: int
    s: tuple
    g: tuple
    order_s: int
    order_g: int
    fixed_point: tuple


def _has_order(ctx: GroupCtx, x, order: int, prime: int) -> bool:
    """|x| == order, for order a power of ``prime``."""
    return power(ctx, x, order) == ctx.identity and power(ctx, x, order // prime) != ctx.identity


def obstruction_check(inst: ProblemInstance, s, cover: Cover | None = None) -> bool:
    """True iff |s| = r^2, its image g has order r, and g fixes a point."""
    cover = cover or build_cover(inst)
    r = inst.r
    s = cover.S.canonical(s)
    if not _has_order(cover.S, s, r * r, r):
        return False
    g = cover.project(s)
    if not _has_order(cover.G, g, r, r):
        return False
    return _fixed_point(cover.G, g) is not None


def _fixed_point(G: GroupCtx, g):
    e1 = (1,) + (0,) * (G.n - 1)
    if act(G, e1, g) == e1:
        return e1
    return next((x for x in G.points if act(G, x, g) == x), None)


def obstruction_witness(inst: ProblemInstance) -> ObstructionCertificate | None:
    """The diagonal witness when r | (q-1)/d; None otherwise.  No enumeration."""
    inst = _check(inst)
    if ((inst.q - 1) // inst.d) % inst.r:
        return None
    cover = build_cover(inst)
    f, n, r = cover.S.field, inst.n, inst.r
    a = element_of_order(f, r * inst.d)
    s = cover.S.diag([a] * (n - 1) + [f.pow(a, 1 - n)])
    g = cover.project(s)
    if not _has_order(cover.S, s, r * r, r):
        raise WitnessCheckFailed(f"witness s does not have order {r * r}")
    if not _has_order(cover.G, g, r, r):
        raise WitnessCheckFailed(f"image g does not have order {r}")
    x = _fixed_point(cover.G, g)
    if x is None:
        raise WitnessCheckFailed("image g has no fixed point")
    return ObstructionCertificate(inst, a, s, g, r * r, r, x)


# -- cohomology report ---------------------------------------------------------------------

@dataclass
class CohomologyReport:
    instance: ProblemInstance
    group_order: int
    h0: dict
    h1: dict
    kerphi_dim: int
    predicted_embedding: bool
    identities: dict          # name -> True / False / None (skipped)
    seconds: float = 0.0

    @property
    def violations(self) -> list[str]:
        return [name for name, ok in self.identities.items() if ok is False]

    def as_dict(self) -> dict:
        return {"instance": vars(self.instance), "group_order": self.group_order,
                "h0": self.h0, "h1": self.h1, "kerphi_dim": self.kerphi_dim,
                "predicted_embedding": self.predicted_embedding,
                "identities": self.identities, "violations": self.violations}


def cohomology_report(inst: ProblemInstance, budget: int | None = None) -> CohomologyReport:
    """H^0 and H^1 dimensions of V, I, V0, V/I, U for G = PSL_n(q) and the
    exact-sequence identities linking them.  V/I is the module written V^0."""
    budget = default_budget() if budget is None else budget
    start = time.perf_counter()
    cover = build_cover(inst)
    G, r = cover.G, inst.r
    if G.order > budget:
        raise BudgetExceeded(f"group of order {G.order} exceeds budget {budget}",
                             needed=G.order, budget=budget)
    mods = standard_modules(G, r)
    h0 = {name: int(fixed_subspace(m).shape[0]) for name, m in mods.items()}
    h1 = {name: z1_generator_method(G, m, budget).h1_dim for name, m in mods.items()}
    kerphi = h1["VmodI"] - h1["V"]
    divides = ((inst.q - 1) // inst.d) % r == 0
    identities = {
        "h1(I) = 0": h1["I"] == 0,
        "h0(V/I) = 0": h0["VmodI"] == 0,
        "h0(I) = 1": h0["I"] == 1,
        "h1(V/I) = h1(U) - 1": h1["VmodI"] == h1["U"] - 1,
        "kerphi_dim in {0,1}": kerphi in (0, 1),
        "h1(V) = [r | (q-1)/d]": h1["V"] == int(divides),
    }
    if not inst.simple_regime:
        # these rest on G being perfect
        identities = {k: (v if k == "h0(I) = 1" else None) for k, v in identities.items()}
    return CohomologyReport(inst, G.order, h0, h1, kerphi, kerphi >= 1, identities,
                            time.perf_counter() - start)


# -- cross validation ------------------------------------------------------------------------

@dataclass
class Verdict:
    instance: ProblemInstance
    arithmetic: bool
    routes: dict                   # route -> "ran" | "skipped: ..."
    constructed: bool | None       # certificate found / NotFound / not run
    witness: bool                  # obstruction certificate produced
    cohomology: bool | None        # predicted embedding, None if not run or non-simple
    status: str
    diagnostics: list
    seconds: dict

    @property
    def consistent(self) -> bool:
        return self.status == "CONSISTENT"

    def as_dict(self) -> dict:
        return {"instance": vars(self.instance), "arithmetic": self.arithmetic,
                "routes": self.routes, "constructed": self.constructed,
                "witness": self.witness, "cohomology": self.cohomology,
                "status": self.status, "diagnostics": self.diagnostics,
                "seconds": {k: round(v, 3) for k, v in self.seconds.items()}}


ROUTES = ("arithmetic", "witness", "construct", "cohomology")


def cross_validate(inst: ProblemInstance, budget: int | None = None,
                   routes=ROUTES) -> Verdict:
    """Run the selected routes and fold their answers into one verdict.

    The arithmetic criterion always runs since every other route is
    compared against it.
    """
    budget = default_budget() if budget is None else budget
    inst = _check(inst)
    unknown = set(routes) - set(ROUTES)
    if unknown:
        raise ValueError(f"unknown routes {sorted(unknown)}; choose from {ROUTES}")
    seconds, ran, diag = {}, {}, []

    t0 = time.perf_counter()
    arith = arithmetic_decide(inst)
    seconds["arithmetic"] = time.perf_counter() - t0
    ran["arithmetic"] = "ran"

    witness = None
    if "witness" in routes:
        t0 = time.perf_counter()
        witness = obstruction_witness(inst)
        seconds["witness"] = time.perf_counter() - t0
        ran["witness"] = "ran"
    else:
        ran["witness"] = "not selected"

    constructed = None
    if "construct" in routes:
        t0 = time.perf_counter()
        try:
            result = construct_embedding(inst, budget)
        except BudgetExceeded as exc:
            ran["construct"] = f"skipped: {exc}"
        else:
            ran["construct"] = "ran"
            constructed = isinstance(result, EmbeddingCertificate)
        seconds["construct"] = time.perf_counter() - t0
    else:
        ran["construct"] = "not selected"

    cohom = None
    if "cohomology" in routes:
        t0 = time.perf_counter()
        try:
            report = cohomology_report(inst, budget)
        except BudgetExceeded as exc:
            ran["cohomology"] = f"skipped: {exc}"
        else:
            ran["cohomology"] = "ran"
            if report.violations:
                diag.append(f"cohomology identities violated: {report.violations}")
            if inst.simple_regime:
                cohom = report.predicted_embedding
            else:
                ran["cohomology"] = "ran (identities skipped: G not simple)"
        seconds["cohomology"] = time.perf_counter() - t0
    else:
        ran["cohomology"] = "not selected"

    if arith:
        if witness is not None:
            diag.append("criterion says embed but an obstruction witness exists")
        if constructed is False:
            diag.append("criterion says embed but no cocycle is nonzero on the kernel")
    else:
        if witness is None and "witness" in routes:
            diag.append("criterion says no embedding but no obstruction witness was built")
        if constructed is True:
            diag.append("criterion says no embedding but an embedding was constructed")
    if constructed is True and witness is not None:
        diag.append("embedding and obstruction certificates coexist")
    if cohom is not None and cohom != arith:
        diag.append(f"cohomology predicts embedding={cohom}, criterion says {arith}")

    status = "INCONSISTENT" if diag else "CONSISTENT"
    return Verdict(inst, arith, ran, constructed, witness is not None, cohom,
                   status, diag, seconds)
