"""Coupling maps, minimum-height spanning trees, and tree addressing."""
import json
from collections import deque
from dataclasses import dataclass, field
from importlib import resources

HOST2_VALUES = ("a", "b", "either")
PRESETS = {"aspen-like": "aspen_like.json"}


class TopologyError(ValueError):
    """Invalid coupling map, node subset, or tree request."""


@dataclass(frozen=True)
class CouplingMap:
    """Undirected connected graph; ``edges[(a, b)]`` (``a < b``) is the host2 tag.

    ``host2`` names the endpoint whose transmon is excited to |2> by the
    native interaction on that edge (``"a"``, ``"b"``) or ``"either"``.
    """

    n: int
    edges: dict = field(hash=False)

    def __post_init__(self):
        adj = {v: [] for v in range(self.n)}
        for (a, b), host in self.edges.items():
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, v):
        return self._adj[v]

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def host2_node(self, u, v):
        """Node hosting level |2> on edge ``{u, v}``, or ``None`` for "either"."""
        a, b = min(u, v), max(u, v)
        try:
            host = self.edges[(a, b)]
        except KeyError:
            raise TopologyError(f"({u}, {v}) is not an edge of the coupling map") from None
        return {"a": a, "b": b, "either": None}[host]

    def to_doc(self):
        return {
            "n": self.n,
            "edges": [{"a": a, "b": b, "host2": h} for (a, b), h in sorted(self.edges.items())],
        }

    def dumps(self):
        return json.dumps(self.to_doc(), indent=2) + "\n"


def _components(nodes, neighbors):
    nodes = set(nodes)
    seen, comps = set(), []
    for start in sorted(nodes):
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in neighbors(v):
                if w in nodes and w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def parse_coupling(doc):
    """Build a validated :class:`CouplingMap` from JSON text or a decoded dict."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise TopologyError(f"coupling map is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise TopologyError("coupling map must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise TopologyError(f"field 'n': expected a positive integer, got {n!r}")
    raw = doc.get("edges")
    if not isinstance(raw, list):
        raise TopologyError("field 'edges': expected a list")
    edges = {}
    for i, e in enumerate(raw):
        where = f"edges[{i}]"
        if not isinstance(e, dict):
            raise TopologyError(f"{where}: expected an object")
        a, b, host = e.get("a"), e.get("b"), e.get("host2", "either")
        for name, v in (("a", a), ("b", b)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise TopologyError(f"{where}.{name}: expected an index in [0, {n}), got {v!r}")
        if a == b:
            raise TopologyError(f"{where}: self edge on {a}")
        if host not in HOST2_VALUES:
            raise TopologyError(f"{where}.host2: expected one of {HOST2_VALUES}, got {host!r}")
        if a > b:
            a, b = b, a
            host = {"a": "b", "b": "a"}.get(host, host)
        if (a, b) in edges:
            raise TopologyError(f"{where}: duplicate edge ({a}, {b})")
        edges[(a, b)] = host
    cmap = CouplingMap(n, edges)
    comps = _components(range(n), cmap.neighbors)
    if len(comps) > 1:
        raise TopologyError(f"coupling map is disconnected: components {comps}")
    return cmap


def load_coupling(path_or_preset):
    """Read a coupling map file, or a shipped preset by name (e.g. ``aspen-like``)."""
    if path_or_preset in PRESETS:
        text = resources.files("qutrit_toffoli").joinpath("data", PRESETS[path_or_preset]).read_text()
    else:
        with open(path_or_preset) as fh:
            text = fh.read()
    return parse_coupling(text)


def aspen_like():
    return load_coupling("aspen-like")


@dataclass
class RootedTree:
    root: int
    children: dict  # node -> ordered list of children

    def __post_init__(self):
        self.children = {v: list(cs) for v, cs in self.children.items()}
        parent = {self.root: None}
        order = [self.root]
        for v in order:
            self.children.setdefault(v, [])
            for c in self.children[v]:
                if c in parent:
                    raise TopologyError(f"node {c} appears twice in the tree")
                parent[c] = v
                order.append(c)
        stray = set(self.children) - set(parent)
        if stray:
            raise TopologyError(f"nodes {sorted(stray)} are not reachable from the root")
        self.parent = parent
        self._bfs = order

    @property
    def nodes(self):
        return tuple(sorted(self.parent))

    @property
    def size(self):
        return len(self.parent)

    def depth(self, v):
        d = 0
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    @property
    def height(self):
        return max(self.depth(v) for v in self.parent)

    def address(self, v):
        parts = []
        while self.parent[v] is not None:
            p = self.parent[v]
            parts.append(str(self.children[p].index(v) + 1))
            v = p
        return "|".join(["1"] + parts[::-1])

    def edges(self):
        return [(self.parent[v], v) for v in self._bfs if self.parent[v] is not None]

    def internal_nodes(self):
        """Nodes with children in BFS order."""
        return [v for v in self._bfs if self.children[v]]

    def with_children(self, children):
        return RootedTree(self.root, children)

    def to_dot(self):
        lines = ["digraph tree {"]
        for v in self._bfs:
            lines.append(f'  q{v} [label="{self.address(v)}"];')
        for p, c in self.edges():
            lines.append(f"  q{p} -> q{c};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bfs_tree(cmap, nodes, root):
    nodes = set(nodes)
    children = {root: []}
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in cmap.neighbors(v):
            if w in nodes and w not in seen:
                seen.add(w)
                children[v].append(w)
                children[w] = []
                queue.append(w)
    if seen != nodes:
        raise TopologyError(f"nodes {sorted(nodes - seen)} are not connected to {root}")
    return RootedTree(root, children)


def eccentricities(cmap, nodes):
    return {v: _bfs_tree(cmap, nodes, v).height for v in sorted(nodes)}


def min_height_tree(cmap, nodes=None, root=None):
    """Breadth-first spanning tree of the induced subgraph on ``nodes``.

    Without ``root``, the root is the smallest-index node of minimum
    eccentricity, which minimizes the height over all spanning trees.
    """
    nodes = set(range(cmap.n)) if nodes is None else {int(v) for v in nodes}
    if not nodes:
        raise TopologyError("empty node subset")
    bad = sorted(v for v in nodes if not 0 <= v < cmap.n)
    if bad:
        raise TopologyError(f"nodes {bad} out of range for n={cmap.n}")
    comps = _components(nodes, cmap.neighbors)
    if len(comps) > 1:
        raise TopologyError(f"node subset is disconnected: components {comps}")
    if root is None:
        ecc = eccentricities(cmap, nodes)
        root = min(ecc, key=lambda v: (ecc[v], v))
    elif root not in nodes:
        raise TopologyError(f"root {root} is not in the node subset")
    return _bfs_tree(cmap, nodes, root)


def edge_variant(cmap, parent, child):
    """iSWAP core for ``U`` on tree edge ``parent -> child``: ``"02"`` or ``"20"``.

    ``"20"`` when the parent is the edge's level-2 host, ``"02"`` otherwise.
    """
    host = cmap.host2_node(parent, child)
    return "20" if host == parent else "02"


def random_coupling_map(n, rng, extra_edge_prob=0.25):
    """Connected random map: a random spanning tree plus extra edges, random host2 tags.

    ``rng`` is a :class:`random.Random`.
    """
    order = list(range(n))
    rng.shuffle(order)
    pairs = set()
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        pairs.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in pairs and rng.random() < extra_edge_prob:
                pairs.add((a, b))
    edges = {e: rng.choice(HOST2_VALUES) for e in sorted(pairs)}
    return CouplingMap(n, edges)
