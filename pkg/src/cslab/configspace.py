"""Discrete configuration spaces of point clouds.

Models the space of distinct n-tuples of a finite epsilon-connected
sample of a planar set: nodes are ordered tuples of distinct point
indices, edges move one coordinate at a time between epsilon-close
points.  On top of that: connected components, the right symmetric-group
action on components (transitivity, isotropy, freeness), per-component
index graphs from near-coincidences, and the aggregated regime report
naming the admissible preserver families.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from .divdiff import RegularityVerdict, regularity_verdict
from .domains import SpectralDomain
from .errors import (
    BudgetExceededError,
    CsLabError,
    DimensionMismatchError,
    ModelResolutionError,
)
from .frames import Permutation

__all__ = [
    "PointCloud",
    "ConfigComplex",
    "ComponentDecomposition",
    "ComponentAction",
    "CnGraph",
    "RegimeReport",
    "perfectness_check",
    "build_config_complex",
    "components",
    "sn_action_on_components",
    "cn_graph",
    "has_n_cycle",
    "hypothesis_report",
]

NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class PointCloud:
    """A finite sample of a planar set.

    epsilon is the connectivity radius (which points count as neighbors),
    delta the collision threshold (which tuple entries count as
    coincident), both in the same length units as the points.
    """

    points: np.ndarray
    epsilon: float
    delta: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size == 0:
            raise CsLabError("empty cloud")
        if self.epsilon <= 0 or self.delta <= 0:
            raise CsLabError("epsilon and delta must be positive")
        if pts.size > 1:
            d = np.abs(pts[:, None] - pts[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() == 0.0:
                raise CsLabError("cloud points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.size

    def to_json(self) -> dict:
        return {
            "points": [[z.real, z.imag] for z in self.points],
            "epsilon": self.epsilon,
            "delta": self.delta,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointCloud":
        pts = [complex(x, y) for x, y in obj["points"]]
        return cls(np.asarray(pts), float(obj["epsilon"]), float(obj["delta"]))

    def domain(self) -> SpectralDomain:
        return SpectralDomain.from_cloud(self.points, self.epsilon)


@dataclass(frozen=True)
class PerfectnessResult:
    perfect: bool
    offenders: tuple  # point indices with no epsilon-neighbor


def perfectness_check(cloud: PointCloud) -> PerfectnessResult:
    """Discrete cluster-point proxy: every point must have another point
    within epsilon."""
    pts = cloud.points
    if pts.size == 1:
        return PerfectnessResult(False, (0,))
    d = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(d, np.inf)
    bad = np.nonzero(d.min(axis=1) > cloud.epsilon)[0]
    return PerfectnessResult(bad.size == 0, tuple(int(i) for i in bad))


@dataclass
class ConfigComplex:
    """Nodes are ordered n-tuples of distinct point indices, enumerated
    lexicographically; an edge moves exactly one coordinate between
    epsilon-close points while keeping the tuple distinct."""

    cloud: PointCloud
    n: int
    nodes: np.ndarray  # (N, n) int16, lexicographic order
    codes: np.ndarray  # (N,) base-m codes, ascending

    @property
    def m(self) -> int:
        return self.cloud.m

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    def _powers(self) -> np.ndarray:
        return self.m ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    def code_of(self, tup) -> int:
        return int(np.dot(np.asarray(tup, dtype=np.int64), self._powers()))

    def edge_batches(self):
        """Yield (src_codes, dst_codes) arrays, one orientation per edge."""
        pts = self.cloud.points
        m = self.m
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        pow_ = self._powers()
        for q in range(m):
            nbrs = [p for p in range(q) if d[p, q] <= self.cloud.epsilon]
            if not nbrs:
                continue
            contains_q = (self.nodes == q).any(axis=1)
            free = ~contains_q
            for p in nbrs:
                for c in range(self.n):
                    mask = free & (self.nodes[:, c] == p)
                    if not mask.any():
                        continue
                    src = self.codes[mask]
                    yield src, src + (q - p) * pow_[c]


def build_config_complex(cloud: PointCloud, n: int, budget: int = NODE_BUDGET) -> ConfigComplex:
    """Enumerate the discrete n-th configuration space of the cloud.

    Node count is m!/(m-n)!; refuses to build past the budget.
    """
    if n < 2:
        raise CsLabError("need n >= 2")
    m = cloud.m
    if n > m:
        raise CsLabError("more tuple slots than cloud points")
    count = math.perm(m, n)
    if count > budget:
        raise BudgetExceededError(
            f"{count} nodes exceed the budget of {budget}; shrink the cloud or n"
        )
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(m), n)),
        dtype=np.int16,
        count=count * n,
    )
    nodes = flat.reshape(count, n)
    pow_ = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = nodes.astype(np.int64) @ pow_
    return ConfigComplex(cloud=cloud, n=n, nodes=nodes, codes=codes)


@dataclass
class ComponentDecomposition:
    """Connected components of a ConfigComplex.

    Component ids are contiguous from 0, ordered by each component's
    smallest node in the lexicographic enumeration; that smallest node
    is the component's representative.
    """

    complex: ConfigComplex
    component_id: np.ndarray  # (N,) int
    component_count: int
    representatives: tuple  # tuple of index tuples

    def component_of(self, tup) -> int:
        code = self.complex.code_of(tup)
        idx = int(np.searchsorted(self.complex.codes, code))
        if idx >= self.complex.codes.size or self.complex.codes[idx] != code:
            raise CsLabError(f"tuple {tuple(tup)} is not a node (repeated index?)")
        return int(self.component_id[idx])

    def nodes_of(self, comp: int) -> np.ndarray:
        return self.complex.nodes[self.component_id == comp]


def components(cc: ConfigComplex) -> ComponentDecomposition:
    """Union the one-coordinate moves into connected components with a
    deterministic canonical labeling."""
    rows, cols = [], []
    for src, dst in cc.edge_batches():
        rows.append(src)
        cols.append(dst)
    total = cc.m**cc.n
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = np.empty(0, dtype=np.int64)
        c = np.empty(0, dtype=np.int64)
    g = sp.coo_matrix(
        (np.ones(r.size, dtype=np.int8), (r, c)), shape=(total, total)
    )
    _, labels_all = _cc(g, directed=False)
    labels = labels_all[cc.codes]
    # canonical relabel: order of first occurrence along the lexicographic
    # node enumeration == order of each component's smallest node
    uniq, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    comp_id = rank[inverse]
    reps = tuple(
        tuple(int(x) for x in cc.nodes[first[order[k]]]) for k in range(order.size)
    )
    return ComponentDecomposition(
        complex=cc,
        component_id=comp_id.astype(np.int32),
        component_count=int(order.size),
        representatives=reps,
    )


@dataclass
class ComponentAction:
    """The right S_n-action on components, tabulated on adjacent
    transpositions, with transitivity/isotropy/freeness verdicts."""

    n: int
    generator_table: np.ndarray  # (component_count, n-1)
    transitive: bool
    isotropy: tuple  # per component: tuple of Permutation
    free: bool

    @property
    def isotropy_orders(self) -> tuple:
        return tuple(len(g) for g in self.isotropy)


def _act_tuple(tup, theta: Permutation):
    return tuple(tup[theta(i)] for i in range(theta.n))


def sn_action_on_components(
    decomp: ComponentDecomposition, consistency_samples: int = 1000
) -> ComponentAction:
    """Compute the induced action on components and its invariants.

    The generator table is built from representatives and cross-checked
    on up to consistency_samples nodes per component and generator; a
    mismatch means the cloud is too coarse to carry a well-defined
    action and raises ModelResolutionError.  Isotropy groups are found
    by brute force over all n! permutations (n <= 6).
    """
    cc = decomp.complex
    n = cc.n
    if n > 6:
        raise CsLabError("isotropy brute force is limited to n <= 6")
    ncomp = decomp.component_count
    gens = [Permutation.transposition(n, i, i + 1) for i in range(n - 1)]
    table = np.empty((ncomp, n - 1), dtype=np.int64)
    for comp, rep in enumerate(decomp.representatives):
        for g, theta in enumerate(gens):
            table[comp, g] = decomp.component_of(_act_tuple(rep, theta))
    # consistency: every node of the component must map into the same image
    pow_ = cc._powers()
    for comp in range(ncomp):
        nodes = decomp.nodes_of(comp)
        if nodes.shape[0] > consistency_samples:
            step = nodes.shape[0] // consistency_samples
            nodes = nodes[::step][:consistency_samples]
        for g, theta in enumerate(gens):
            imgs = nodes[:, list(theta.images)]
            codes = imgs.astype(np.int64) @ pow_
            idx = np.searchsorted(cc.codes, codes)
            got = np.unique(decomp.component_id[idx])
            if got.size != 1 or got[0] != table[comp, g]:
                raise ModelResolutionError(
                    "inconsistent induced action: refine the cloud "
                    "(smaller epsilon or more points)"
                )
    _check_transposition_relations(table, n)
    # transitivity: orbit of component 0 under the generators
    seen = {0}
    frontier = [0]
    while frontier:
        comp = frontier.pop()
        for g in range(n - 1):
            img = int(table[comp, g])
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    transitive = len(seen) == ncomp
    isotropy = []
    for comp, rep in enumerate(decomp.representatives):
        stab = tuple(
            theta
            for theta in Permutation.all(n)
            if decomp.component_of(_act_tuple(rep, theta)) == comp
        )
        isotropy.append(stab)
    free = all(len(stab) == 1 for stab in isotropy)
    return ComponentAction(
        n=n,
        generator_table=table,
        transitive=transitive,
        isotropy=tuple(isotropy),
        free=free,
    )


def _check_transposition_relations(table: np.ndarray, n: int) -> None:
    """Adjacent transpositions must satisfy s_i^2 = id, the braid
    relation, and distant commutation, as maps on components."""

    def apply(g, comps):
        return table[comps, g]

    comps = np.arange(table.shape[0])
    for i in range(n - 1):
        if not np.array_equal(apply(i, apply(i, comps)), comps):
            raise ModelResolutionError("generator is not an involution on components")
        for j in range(n - 1):
            lhs = apply(i, apply(j, comps))
            rhs = apply(j, apply(i, comps))
            if abs(i - j) >= 2 and not np.array_equal(lhs, rhs):
                raise ModelResolutionError("distant generators fail to commute")
            if abs(i - j) == 1:
                braid_l = apply(i, apply(j, apply(i, comps)))
                braid_r = apply(j, apply(i, apply(j, comps)))
                if not np.array_equal(braid_l, braid_r):
                    raise ModelResolutionError("braid relation fails on components")


@dataclass(frozen=True)
class CnGraph:
    """Loop-free undirected graph on tuple indices {0..n-1}."""

    n: int
    edges: frozenset  # of frozenset({i, j})

    def has_edge(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": sorted(sorted(e) for e in self.edges),
        }


def cn_graph(decomp: ComponentDecomposition, component_id: int, cloud: PointCloud) -> CnGraph:
    """Index graph of a component: {i, j} is an edge iff some tuple in
    the component has its i-th and j-th point values within delta.

    This is the discrete shadow of the closure condition: a tuple with
    coincident entries i, j lies in the closure of both the component
    and its (i j)-translate.
    """
    n = decomp.complex.n
    nodes = decomp.nodes_of(component_id)
    if nodes.shape[0] == 0:
        raise CsLabError(f"no such component: {component_id}")
    pts = cloud.points
    d = np.abs(pts[:, None] - pts[None, :])
    edges = set()
    for i, j in itertools.combinations(range(n), 2):
        if (d[nodes[:, i], nodes[:, j]] <= cloud.delta).any():
            edges.add(frozenset((i, j)))
    return CnGraph(n=n, edges=frozenset(edges))


def has_n_cycle(g: CnGraph) -> bool:
    """Whether a cycle through all n vertices exists (brute force, n <= 8)."""
    n = g.n
    if n > 8:
        raise CsLabError("Hamiltonian brute force is limited to n <= 8")
    if n < 3:
        return False
    adj = {i: {j for j in range(n) if g.has_edge(i, j)} for i in range(n)}
    for perm in itertools.permutations(range(1, n)):
        path = (0,) + perm
        if all(path[k + 1] in adj[path[k]] for k in range(n - 1)) and path[0] in adj[path[-1]]:
            return True
    return False


# ---------------------------------------------------------------------------
# Regime report


@dataclass(frozen=True)
class RegimeReport:
    """Joint verdict: connectivity hypotheses of the classification
    theorems plus the regularity class of conjugation, naming the
    admissible preserver families per operator class."""

    n: int
    perfect: bool
    offenders: tuple
    component_count: int
    transitive: bool
    free: bool
    isotropy_orders: tuple
    gamma_cycles: tuple  # per component: bool
    all_gamma_have_n_cycle: bool
    regularity: RegularityVerdict
    hypotheses_hold: bool
    theorems_applicable: bool
    admissible: dict
    warnings: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "perfect": self.perfect,
            "offenders": list(self.offenders),
            "component_count": self.component_count,
            "transitive": self.transitive,
            "free": self.free,
            "isotropy_orders": list(self.isotropy_orders),
            "gamma_cycles": list(self.gamma_cycles),
            "all_gamma_have_n_cycle": self.all_gamma_have_n_cycle,
            "regularity": self.regularity.to_json(),
            "hypotheses_hold": self.hypotheses_hold,
            "theorems_applicable": self.theorems_applicable,
            "admissible": self.admissible,
            "warnings": list(self.warnings),
            "heuristic": True,
        }


_BASE_FAMILIES = ["conjugation", "transpose_conjugation"]


def admissible_families(verdict: str) -> dict:
    """Preserver families per operator class, given the regularity
    verdict: the exotic preserver joins the semisimple class unless the
    verdict is not_B, and its continuous extension joins the general
    class only for verdict C."""
    fam = {
        "normal": list(_BASE_FAMILIES),
        "semisimple": list(_BASE_FAMILIES),
        "general": list(_BASE_FAMILIES),
    }
    if verdict in ("B_not_C", "C"):
        fam["semisimple"].append("exotic")
    if verdict == "C":
        fam["general"].append("extended_exotic")
    return fam


def hypothesis_report(
    cloud: PointCloud,
    n: int,
    seed: int = 0,
    domain: SpectralDomain | None = None,
    budget: int = NODE_BUDGET,
) -> RegimeReport:
    """Check the shared connectivity hypotheses on the cloud's discrete
    configuration space, probe the regularity of conjugation, and name
    the admissible preserver families.

    A parametric domain may be supplied for the regularity probes;
    otherwise the cloud itself is probed at its own resolution.
    The report is heuristic throughout.
    """
    warnings = []
    if n < 3:
        warnings.append("n < 3 is outside the regime of the classification theorems")
    perf = perfectness_check(cloud)
    cc = build_config_complex(cloud, n, budget=budget)
    decomp = components(cc)
    action = sn_action_on_components(decomp)
    cycles = tuple(
        has_n_cycle(cn_graph(decomp, comp, cloud)) for comp in range(decomp.component_count)
    )
    all_cycles = all(cycles) and bool(cycles)
    X = domain if domain is not None else cloud.domain()
    if X.kind == "cloud":
        warnings.append(
            "regularity probed on the discrete cloud at its own resolution "
            "(epsilon-neighbor cluster proxy)"
        )
        gaps = np.abs(cloud.points[:, None] - cloud.points[None, :])
        np.fill_diagonal(gaps, np.inf)
        rmin = float(gaps.min())
        radii = tuple(r for r in (8 * rmin, 4 * rmin, 2 * rmin) if r > 0)
        verdict = regularity_verdict(X, n, seed=seed, radii=radii)
    else:
        verdict = regularity_verdict(X, n, seed=seed)
    hyp = perf.perfect and action.transitive and (not action.free) and all_cycles
    applicable = hyp and n >= 3
    if not applicable:
        warnings.append("classification theorems not applicable to this input")
        admissible = {}
    else:
        admissible = admissible_families(verdict.verdict)
    return RegimeReport(
        n=n,
        perfect=perf.perfect,
        offenders=perf.offenders,
        component_count=decomp.component_count,
        transitive=action.transitive,
        free=action.free,
        isotropy_orders=action.isotropy_orders,
        gamma_cycles=cycles,
        all_gamma_have_n_cycle=all_cycles,
        regularity=verdict,
        hypotheses_hold=hyp,
        theorems_applicable=applicable,
        admissible=admissible,
        warnings=tuple(warnings),
    )
