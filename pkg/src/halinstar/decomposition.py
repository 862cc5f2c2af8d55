"""Per-vertex star decomposition driving the tree coloring.

For every non-root vertex v with parent w and incident edges
(vw, vv1, ..., vvp) in counterclockwise order, the child edges split into

* all red, when d(w) + d(v) - 1 - k <= 0, else
* red  = {vv1} + {vvm, ..., vvp} with m = d(w) + d(v) - 1 - k + 2,
  blue = {vv2, ..., vv(m-1)}.

Under the modified rotation ``sigma`` (vv1 shifted after vvp) the red edges
together with the parent edge occupy one contiguous arc, and the blue edges
sit directly after the parent edge.  ``rho`` measures counterclockwise
distance between incident edges in that rotation; the blue-edge rule and the
cycle list restriction both forbid the colors on the half-window of edges
closest (in rho) to a given pendant edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core import EdgeId, HalinInstance, DerivedParams, TREE
from .errors import InternalInvariantError


def lp_optimum(theta, delta) -> Fraction:
    """Optimum of max{x1 + x2/2, x1/2 + x2} s.t. x1 + x2 <= theta, 0 <= x1, x2 <= delta.

    Returns the exact rational (theta + delta) / 2.  The counting bounds the
    decomposition asserts are floor-evaluations of this program at
    (x1, x2) = (d(parent), d(v)).
    """
    theta, delta = Fraction(theta), Fraction(delta)
    if not 0 < delta <= theta <= 2 * delta:
        raise ValueError(f"need 0 < delta <= theta <= 2*delta, got delta={delta}, theta={theta}")
    return (theta + delta) / 2


@dataclass(frozen=True)
class FullStar:
    """The child edges of a vertex, ordered counterclockwise."""

    center: int
    parent_edge: Optional[EdgeId]
    edges: tuple[EdgeId, ...]


def full_star(instance: HalinInstance, v: int) -> FullStar:
    tree = instance.tree
    return FullStar(center=v, parent_edge=tree.parent_edge(v), edges=tree.child_edges(v))


def sigma_order(instance: HalinInstance, v: int) -> tuple[EdgeId, ...]:
    """Tree-edge rotation at v used by all rho computations.

    Root: the natural child order.  Non-root: parent edge first, then children
    2..p, then child 1 (the shift that makes the red arc contiguous).
    """
    tree = instance.tree
    kids = tree.child_edges(v)
    if v == tree.root:
        return kids
    pe = tree.parent_edge(v)
    return (pe,) + kids[1:] + kids[:1]


def rho(sigma: tuple[EdgeId, ...], e1: EdgeId, e2: EdgeId) -> int:
    """1 + number of edges strictly between e1 and e2 counterclockwise.

    Satisfies rho(e1, e2) + rho(e2, e1) == len(sigma) for distinct incident
    edges.
    """
    if e1 == e2:
        raise ValueError("rho needs two distinct edges")
    try:
        i, j = sigma.index(e1), sigma.index(e2)
    except ValueError:
        raise ValueError(f"edge not in rotation: {e1.key()} / {e2.key()}")
    return (j - i) % len(sigma)


def half_window_colors(sigma: tuple[EdgeId, ...], edge: EdgeId, coloring: Mapping[EdgeId, int]) -> set[int]:
    """Colors on the floor(d/2) edges nearest to `edge` from the low-rho side.

    These are exactly the edges f with rho(f, edge) <= floor(d/2); blue edges
    below a vertex and cycle edges at its pendant leaves must avoid them.
    """
    d = len(sigma)
    t = sigma.index(edge)
    out: set[int] = set()
    for j in range(1, d // 2 + 1):
        c = coloring.get(sigma[(t - j) % d])
        if c is not None:
            out.add(c)
    return out


@dataclass(frozen=True)
class VertexDecomposition:
    center: int
    red: tuple[EdgeId, ...]
    blue: tuple[EdgeId, ...]
    m_index: Optional[int]  # present only when blue edges exist
    sigma: tuple[EdgeId, ...]
    blue_count: int

    def describe(self) -> str:
        m = "-" if self.m_index is None else str(self.m_index)
        red = " ".join(e.key() for e in self.red) or "-"
        blue = " ".join(e.key() for e in self.blue) or "-"
        return f"v={self.center} m={m} red=[{red}] blue=[{blue}]"


@dataclass(frozen=True)
class StarDecomposition:
    k: int
    mode: str
    per_vertex: dict[int, VertexDecomposition]  # every non-root vertex


def decompose(instance: HalinInstance, params: DerivedParams, mode: str) -> StarDecomposition:
    """Red/blue split of every non-root full star for the given mode's k.

    Raises InternalInvariantError if a counting bound fails; on a valid
    instance with k taken from `params` that indicates a bug.
    """
    tree = instance.tree
    k = params.k_for_mode(mode)
    per_vertex: dict[int, VertexDecomposition] = {}
    for v in range(tree.n):
        if v == tree.root:
            continue
        kids = tree.child_edges(v)
        p = len(kids)
        dv, dw = tree.degree(v), tree.degree(tree.parent[v])
        excess = dw + dv - 1 - k
        if excess <= 0:
            red, blue, m = kids, (), None
        else:
            m = excess + 2
            red = kids[:1] + kids[m - 1:]
            blue = kids[1:m - 1]
        b_v = len(blue)
        # Floor-evaluations of the max-programming optimum; both must hold
        # whenever k >= floor((theta + delta) / 2).
        if dw + (dv - 1) - dv // 2 > k:
            raise InternalInvariantError(
                f"d(parent) + d(v) - 1 - floor(d(v)/2) <= k failed at v={v}: {dw}+{dv - 1}-{dv // 2} > {k}"
            )
        if b_v > dv // 2:
            raise InternalInvariantError(f"blue count bound b_v <= floor(d(v)/2) failed at v={v}: {b_v} > {dv // 2}")
        if dv + dw // 2 > k:
            raise InternalInvariantError(
                f"d(v) + floor(d(parent)/2) <= k failed at v={v}: {dv}+{dw // 2} > {k}"
            )
        per_vertex[v] = VertexDecomposition(
            center=v, red=red, blue=blue, m_index=m, sigma=sigma_order(instance, v), blue_count=b_v
        )
    return StarDecomposition(k=k, mode=mode, per_vertex=per_vertex)


@dataclass(frozen=True)
class BadPairIndex:
    """Pendant tree edges whose leaves are cycle-adjacent across two stars.

    Symmetric; every pendant edge has at most two partners (one per cycle
    side), and non-pendant edges have none.
    """

    partners: dict[EdgeId, tuple[EdgeId, ...]]

    def of(self, e: EdgeId) -> tuple[EdgeId, ...]:
        return self.partners.get(e, ())


def bad_pairs(instance: HalinInstance) -> BadPairIndex:
    """Index the bad pairs of a Halin instance.

    A cycle edge uv contributes the pair (u-parent(u), v-parent(v)) exactly
    when the two leaves have distinct parents; leaves sharing a parent sit in
    one full star and are excluded.
    """
    if instance.mode == TREE or instance.cycle is None:
        raise ValueError("bad pairs need a cycle")
    tree = instance.tree
    partners: dict[EdgeId, list[EdgeId]] = {}
    for ce in instance.cycle_edges:
        u, v = ce.u, ce.v
        if tree.parent[u] == tree.parent[v]:
            continue
        eu, ev = instance.pendant_edge(u), instance.pendant_edge(v)
        partners.setdefault(eu, []).append(ev)
        partners.setdefault(ev, []).append(eu)
    return BadPairIndex(partners={e: tuple(ps) for e, ps in partners.items()})
