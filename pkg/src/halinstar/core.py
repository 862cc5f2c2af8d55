"""Graph model: plane-embedded rooted trees, the leaf cycle, and file formats.

A plane tree is a rooted tree whose child lists are ordered counterclockwise;
this rotation system is the combinatorial form of a plane embedding.  A Halin
instance adds a cycle through the leaves which, for planarity, must visit them
in depth-first order (up to rotation and reflection).  Three modes are
supported:

* ``generalized`` -- any tree with max degree >= 3 plus the leaf cycle,
* ``complete``    -- additionally all leaves at one depth and no degree-2
  vertices,
* ``tree``        -- the bare tree, no cycle.

Canonical text format (``#`` starts a comment, blank lines ignored)::

    tree <n> <root>
    <v>: <c1> <c2> ... <cp>    # one line per internal vertex, children ccw
    cycle: <l1> <l2> ... <lm>  # omitted in tree mode
    mode: generalized|complete|tree

Color lists and colorings are JSON objects keyed by edge: ``"u-v"`` for the
tree edge from parent u to child v, ``"u~v"`` for the cycle edge between
consecutive leaves u and v.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import ParseError

GENERALIZED = "generalized"
COMPLETE = "complete"
TREE = "tree"
MODES = (GENERALIZED, COMPLETE, TREE)
HALIN_MODES = (GENERALIZED, COMPLETE)


class EdgeId(NamedTuple):
    """Canonical edge identifier.

    Tree edges are stored as (parent, child); cycle edges as consecutive
    leaves in the stored cycle order (including the wrap-around pair).
    """

    kind: str  # "tree" or "cycle"
    u: int
    v: int

    def key(self) -> str:
        sep = "-" if self.kind == "tree" else "~"
        return f"{self.u}{sep}{self.v}"

    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)


def tree_edge(parent: int, child: int) -> EdgeId:
    return EdgeId("tree", parent, child)


def cycle_edge(u: int, v: int) -> EdgeId:
    return EdgeId("cycle", u, v)


@dataclass(frozen=True)
class PlaneTree:
    """Rooted tree with counterclockwise child order per vertex."""

    n: int
    root: int
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def from_children(cls, n: int, root: int, children: Mapping[int, Iterable[int]]) -> "PlaneTree":
        """Build and structurally check a plane tree.

        Raises ValueError on out-of-range ids, duplicate children, multiple
        parents, or vertices unreachable from the root.
        """
        if n < 2:
            raise ValueError("tree needs at least 2 vertices")
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range")
        table: list[tuple[int, ...]] = [()] * n
        seen_child: set[int] = set()
        for v, kids in children.items():
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            kids = tuple(kids)
            for c in kids:
                if not 0 <= c < n:
                    raise ValueError(f"child {c} out of range")
                if c == v:
                    raise ValueError(f"vertex {v} lists itself as a child")
                if c == root:
                    raise ValueError(f"root {root} listed as a child of {v}")
                if c in seen_child:
                    raise ValueError(f"duplicate child {c}")
                seen_child.add(c)
            table[v] = kids
        if len(seen_child) != n - 1:
            missing = sorted(set(range(n)) - seen_child - {root})
            raise ValueError(f"vertices with no parent: {missing}")
        tree = cls(n=n, root=root, children=tuple(table))
        # Parent slots all filled and counted, so only an unreachable cycle of
        # non-root vertices could remain; a root walk detects it.
        reach = 1
        stack = [root]
        while stack:
            for c in tree.children[stack.pop()]:
                reach += 1
                stack.append(c)
        if reach != n:
            raise ValueError("child lists contain a cycle detached from the root")
        return tree

    @cached_property
    def parent(self) -> tuple[Optional[int], ...]:
        par: list[Optional[int]] = [None] * self.n
        for v, kids in enumerate(self.children):
            for c in kids:
                par[c] = v
        return tuple(par)

    def degree(self, v: int) -> int:
        d = len(self.children[v])
        return d if v == self.root else d + 1

    @cached_property
    def delta(self) -> int:
        return max(self.degree(v) for v in range(self.n))

    @cached_property
    def theta(self) -> int:
        """Max over tree edges of the endpoint degree sum (Ore-degree)."""
        return max(self.degree(p) + self.degree(c) for p, c in ((self.parent[v], v) for v in range(self.n)) if p is not None)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        depth = [0] * self.n
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self.children[v]:
                depth[c] = depth[v] + 1
                stack.append(c)
        return tuple(depth)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.children[v])

    @cached_property
    def dfs_leaf_order(self) -> tuple[int, ...]:
        """Leaves in depth-first order respecting child order.

        This is the order in which the leaf cycle must visit them (up to
        rotation and reflection) for the cycle to bound the outer face.
        """
        out: list[int] = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            if not self.children[v]:
                out.append(v)
            else:
                stack.extend(reversed(self.children[v]))
        return tuple(out)

    @cached_property
    def tree_edges(self) -> tuple[EdgeId, ...]:
        """All tree edges as (parent, child), in depth-first order."""
        out: list[EdgeId] = []
        stack = list(reversed(self.children[self.root]))
        while stack:
            v = stack.pop()
            out.append(tree_edge(self.parent[v], v))
            stack.extend(reversed(self.children[v]))
        return tuple(out)

    def parent_edge(self, v: int) -> Optional[EdgeId]:
        p = self.parent[v]
        return None if p is None else tree_edge(p, v)

    def child_edges(self, v: int) -> tuple[EdgeId, ...]:
        return tuple(tree_edge(v, c) for c in self.children[v])


@dataclass(frozen=True)
class HalinInstance:
    """A plane tree plus (outside tree mode) the cycle through its leaves."""

    tree: PlaneTree
    cycle: Optional[tuple[int, ...]]
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == TREE and self.cycle is not None:
            raise ValueError("tree mode takes no cycle")
        if self.mode != TREE and self.cycle is None:
            raise ValueError(f"{self.mode} mode requires a cycle")

    @cached_property
    def cycle_edges(self) -> tuple[EdgeId, ...]:
        if self.cycle is None:
            return ()
        cyc = self.cycle
        return tuple(cycle_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))

    @cached_property
    def all_edges(self) -> tuple[EdgeId, ...]:
        return self.tree.tree_edges + self.cycle_edges

    @cached_property
    def incidence(self) -> dict[int, tuple[EdgeId, ...]]:
        """Edges of the whole instance incident to each vertex."""
        inc: dict[int, list[EdgeId]] = {v: [] for v in range(self.tree.n)}
        for e in self.all_edges:
            inc[e.u].append(e)
            inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def cycle_neighbors(self) -> dict[int, tuple[int, int]]:
        """For each leaf on the cycle, its (previous, next) cycle neighbors."""
        if self.cycle is None:
            return {}
        cyc = self.cycle
        m = len(cyc)
        return {cyc[i]: (cyc[i - 1], cyc[(i + 1) % m]) for i in range(m)}

    def pendant_edge(self, leaf: int) -> EdgeId:
        """The single tree edge at a leaf."""
        e = self.tree.parent_edge(leaf)
        if e is None or self.tree.children[leaf]:
            raise ValueError(f"vertex {leaf} is not a leaf")
        return e


@dataclass(frozen=True)
class DerivedParams:
    """Degree-derived quantities and the three list-size thresholds."""

    delta: int
    theta: int
    k_halin: int
    k_complete: int
    k_tree: int

    def k_for_mode(self, mode: str) -> int:
        if mode == GENERALIZED:
            return self.k_halin
        if mode == COMPLETE:
            return self.k_complete
        if mode == TREE:
            return self.k_tree
        raise ValueError(f"unknown mode {mode!r}")


def derive_params(instance: HalinInstance) -> DerivedParams:
    """Compute delta, theta and the per-mode thresholds from tree degrees only."""
    tree = instance.tree
    delta, theta = tree.delta, tree.theta
    base = (theta + delta) // 2
    return DerivedParams(
        delta=delta,
        theta=theta,
        k_halin=max(base, 2 * (delta // 2) + 7),
        k_complete=max(base, 2 * (delta // 2) + 6),
        k_tree=base,
    )


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        if self.ok and not self.warnings:
            return "valid"
        parts = [f"error: {e}" for e in self.errors] + [f"warning: {w}" for w in self.warnings]
        return "\n".join(parts)


def _cyclic_variants(seq: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    m = len(seq)
    for base in (seq, tuple(reversed(seq))):
        for i in range(m):
            yield base[i:] + base[:i]


def validate(instance: HalinInstance) -> ValidationReport:
    """Report every violated instance invariant; never raises.

    In Halin modes a length-5 cycle is flagged as a warning: the coloring
    guarantee excludes it, but the instance itself is well formed.
    """
    tree = instance.tree
    errors: list[str] = []
    warnings: list[str] = []
    if instance.mode in HALIN_MODES:
        if tree.delta < 3:
            errors.append(f"max tree degree is {tree.delta}, need >= 3")
        cyc = instance.cycle
        leaves = set(tree.leaves)
        if len(cyc) < 3:
            errors.append(f"cycle has {len(cyc)} vertices, need >= 3")
        if len(set(cyc)) != len(cyc):
            errors.append("cycle repeats a vertex")
        elif set(cyc) != leaves:
            errors.append("cycle must cover exactly the leaves of the tree")
        elif cyc not in set(_cyclic_variants(tree.dfs_leaf_order)):
            errors.append("cycle order disagrees with the depth-first leaf order (not the outer face boundary)")
        max_deg_vertices = [v for v in range(tree.n) if tree.degree(v) == tree.delta]
        if tree.root != min(max_deg_vertices):
            errors.append(
                f"root must be the smallest-id vertex of maximum tree degree (expected {min(max_deg_vertices)}, got {tree.root})"
            )
        if cyc is not None and len(cyc) == 5:
            warnings.append("cycle length is 5: outside the coloring guarantee")
    if instance.mode == COMPLETE:
        depths = {tree.depths[v] for v in tree.leaves}
        if len(depths) > 1:
            errors.append(f"complete mode needs all leaves at one depth, found depths {sorted(depths)}")
        deg2 = [v for v in range(tree.n) if tree.degree(v) == 2]
        if deg2:
            errors.append(f"complete mode forbids degree-2 vertices, found {deg2}")
    return ValidationReport(errors=tuple(errors), warnings=tuple(warnings))


# ---------------------------------------------------------------------------
# Canonical text format
# ---------------------------------------------------------------------------

def serialize_instance(instance: HalinInstance) -> str:
    tree = instance.tree
    lines = [f"tree {tree.n} {tree.root}"]
    for v in range(tree.n):
        if tree.children[v]:
            lines.append(f"{v}: " + " ".join(str(c) for c in tree.children[v]))
    if instance.cycle is not None:
        lines.append("cycle: " + " ".join(str(u) for u in instance.cycle))
    lines.append(f"mode: {instance.mode}")
    return "\n".join(lines) + "\n"


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {tok!r}", line)


def parse_instance(text: str) -> HalinInstance:
    """Parse the canonical format, rejecting malformed input with a line number."""
    header = None
    children: dict[int, list[int]] = {}
    child_lines: dict[int, int] = {}
    cycle: Optional[tuple[int, ...]] = None
    mode: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if header is None:
            parts = stripped.split()
            if len(parts) != 3 or parts[0] != "tree":
                raise ParseError("expected header 'tree <n> <root>'", lineno)
            header = (_int(parts[1], lineno, "n"), _int(parts[2], lineno, "root"), lineno)
            continue
        if stripped.startswith("cycle:"):
            if cycle is not None:
                raise ParseError("duplicate cycle line", lineno)
            if mode is not None:
                raise ParseError("cycle line must precede the mode line", lineno)
            toks = stripped[len("cycle:"):].split()
            if not toks:
                raise ParseError("empty cycle", lineno)
            cycle = tuple(_int(t, lineno, "cycle vertex") for t in toks)
            cycle_line = lineno
            continue
        if stripped.startswith("mode:"):
            if mode is not None:
                raise ParseError("duplicate mode line", lineno)
            mode = stripped[len("mode:"):].strip()
            if mode not in MODES:
                raise ParseError(f"mode must be one of {'|'.join(MODES)}, got {mode!r}", lineno)
            continue
        if mode is not None or cycle is not None:
            raise ParseError("vertex lines must precede cycle and mode lines", lineno)
        head, sep, rest = stripped.partition(":")
        if not sep:
            raise ParseError("expected '<v>: children...', 'cycle: ...' or 'mode: ...'", lineno)
        v = _int(head.strip(), lineno, "vertex")
        if v in children:
            raise ParseError(f"vertex {v} listed twice", lineno)
        kids = [_int(t, lineno, "child") for t in rest.split()]
        if not kids:
            raise ParseError(f"vertex {v} has an empty child list", lineno)
        children[v] = kids
        child_lines[v] = lineno
    if header is None:
        raise ParseError("empty document: missing 'tree <n> <root>' header")
    if mode is None:
        raise ParseError("missing 'mode:' line")
    n, root, header_line = header
    try:
        tree = PlaneTree.from_children(n, root, children)
    except ValueError as exc:
        raise ParseError(str(exc), header_line)
    if mode == TREE:
        if cycle is not None:
            raise ParseError("tree mode takes no cycle", cycle_line)
        return HalinInstance(tree=tree, cycle=None, mode=mode)
    if cycle is None:
        raise ParseError(f"{mode} mode requires a cycle line", header_line)
    leaves = set(tree.leaves)
    if len(set(cycle)) != len(cycle):
        raise ParseError("cycle repeats a vertex", cycle_line)
    if not set(cycle) <= leaves:
        bad = sorted(set(cycle) - leaves)
        raise ParseError(f"cycle visits non-leaf vertices {bad}", cycle_line)
    if set(cycle) != leaves:
        raise ParseError("cycle must cover all leaves", cycle_line)
    return HalinInstance(tree=tree, cycle=cycle, mode=mode)


# ---------------------------------------------------------------------------
# Lists / coloring documents (JSON keyed by edge)
# ---------------------------------------------------------------------------

def edge_from_key(instance: HalinInstance, key: str) -> EdgeId:
    """Resolve an edge key, accepting either endpoint order."""
    sep = "-" if "-" in key else "~" if "~" in key else None
    if sep is None:
        raise ParseError(f"edge key {key!r} needs a '-' (tree) or '~' (cycle) separator")
    a_s, _, b_s = key.partition(sep)
    try:
        a, b = int(a_s), int(b_s)
    except ValueError:
        raise ParseError(f"edge key {key!r} is not a pair of integers")
    tree = instance.tree
    if sep == "-":
        if 0 <= b < tree.n and tree.parent[b] == a:
            return tree_edge(a, b)
        if 0 <= a < tree.n and tree.parent[a] == b:
            return tree_edge(b, a)
        raise ParseError(f"{key!r} is not a tree edge of this instance")
    for e in instance.cycle_edges:
        if {e.u, e.v} == {a, b}:
            return e
    raise ParseError(f"{key!r} is not a cycle edge of this instance")


def parse_lists(text: str, instance: HalinInstance, require_complete: bool = True) -> dict[EdgeId, tuple[int, ...]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"lists document is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ParseError("lists document must be a JSON object")
    out: dict[EdgeId, tuple[int, ...]] = {}
    for key, val in doc.items():
        e = edge_from_key(instance, key)
        if e in out:
            raise ParseError(f"edge {key!r} listed twice")
        if not isinstance(val, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in val):
            raise ParseError(f"list for {key!r} must be an array of integers")
        if any(c < 0 for c in val):
            raise ParseError(f"list for {key!r} contains a negative color")
        out[e] = tuple(sorted(set(val)))
    if require_complete:
        missing = [e for e in instance.all_edges if e not in out]
        if missing:
            raise ParseError(f"no list for edge {missing[0].key()}" + (f" (+{len(missing) - 1} more)" if len(missing) > 1 else ""))
    return out


def serialize_lists(instance: HalinInstance, lists: Mapping[EdgeId, Iterable[int]]) -> str:
    doc = {e.key(): sorted(lists[e]) for e in instance.all_edges if e in lists}
    return json.dumps(doc, indent=1) + "\n"


def parse_coloring(text: str, instance: HalinInstance, require_complete: bool = True) -> dict[EdgeId, int]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"coloring document is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ParseError("coloring document must be a JSON object")
    out: dict[EdgeId, int] = {}
    for key, val in doc.items():
        e = edge_from_key(instance, key)
        if e in out:
            raise ParseError(f"edge {key!r} colored twice")
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ParseError(f"color for {key!r} must be a non-negative integer")
        out[e] = val
    if require_complete:
        missing = [e for e in instance.all_edges if e not in out]
        if missing:
            raise ParseError(f"no color for edge {missing[0].key()}" + (f" (+{len(missing) - 1} more)" if len(missing) > 1 else ""))
    return out


def serialize_coloring(instance: HalinInstance, coloring: Mapping[EdgeId, int]) -> str:
    doc = {e.key(): coloring[e] for e in instance.all_edges if e in coloring}
    return json.dumps(doc, indent=1) + "\n"


def to_dot(instance: HalinInstance, coloring: Optional[Mapping[EdgeId, int]] = None) -> str:
    """DOT rendering: solid tree edges, dashed cycle edges, colors as labels."""
    lines = ["graph halin {", "  node [shape=circle, fontsize=10];"]
    for e in instance.all_edges:
        attrs = ["style=dashed"] if e.kind == "cycle" else []
        if coloring is not None and e in coloring:
            attrs.append(f'label="{coloring[e]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {e.u} -- {e.v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
