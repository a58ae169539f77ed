"""C^{N-1}Z / C^{N-1}X circuits from a rooted tree: fold, basic step, unfold."""
import json
import math
from dataclasses import asdict, dataclass, field, replace

from .gates import GateSpec, ISWAP_CORED
from .linalg import ContractError
from .topology import RootedTree, TopologyError, edge_variant


@dataclass(frozen=True)
class CircuitOp:
    spec: GateSpec
    targets: tuple
    layer: int = 0

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(set(targets)) != len(targets):
            raise ContractError(f"duplicate targets {targets}")
        if len(targets) != self.spec.arity:
            raise ContractError(f"{self.spec.kind} takes {self.spec.arity} targets, got {targets}")


@dataclass(frozen=True)
class SynthStats:
    two_qutrit_count: int = 0
    iswap_count: int = 0
    cz_count: int = 0
    depth_layers: int = 0
    tree_height: int = 0
    native_iswap_equivalent: int = 0


@dataclass
class Circuit:
    n: int
    ops: list
    kind: str = "cnz"
    target: int | None = None
    qutrits: tuple = ()
    tree: RootedTree | None = None
    stats: SynthStats = field(default_factory=SynthStats)

    def __post_init__(self):
        if not self.qutrits:
            self.qutrits = tuple(range(self.n))
        self.qutrits = tuple(sorted(self.qutrits))

    def with_ops(self, ops):
        """Same circuit metadata over a new (rescheduled) op list."""
        c = replace(self, ops=schedule(ops))
        c.stats = stats_of(c)
        return c

    def compact(self):
        """Relabel the active qutrits to ``0..k-1`` and drop idle ones."""
        pos = {q: i for i, q in enumerate(self.qutrits)}
        ops = [CircuitOp(op.spec, tuple(pos[t] for t in op.targets), op.layer) for op in self.ops]
        target = None if self.target is None else pos[self.target]
        tree = None
        if self.tree is not None:
            tree = RootedTree(pos[self.tree.root],
                              {pos[v]: [pos[c] for c in cs] for v, cs in self.tree.children.items()})
        return Circuit(len(self.qutrits), ops, self.kind, target, (), tree, self.stats)


def _u(parent, child, cmap, dagger=False):
    core = edge_variant(cmap, parent, child)
    return CircuitOp(GateSpec(f"u{core}" + ("dg" if dagger else "")), (parent, child))


def _address_key(tree, v):
    return tuple(int(p) for p in tree.address(v).split("|"))


def fold_order(tree):
    """Non-root internal nodes, deepest level first, address order within a level."""
    inner = [v for v in tree.internal_nodes() if v != tree.root]
    return sorted(inner, key=lambda v: (-tree.depth(v), _address_key(tree, v)))


def _cnz_ops(tree, cmap):
    if tree.size < 2:
        raise TopologyError("C^{N-1}Z needs a tree with at least two nodes")
    for p, c in tree.edges():
        if not cmap.has_edge(p, c):
            raise TopologyError(f"tree edge ({p}, {c}) is not in the coupling map")
    folding = [_u(s, c, cmap) for s in fold_order(tree) for c in tree.children[s]]
    root = tree.root
    kids = tree.children[root]
    head = [_u(root, c, cmap) for c in kids[:-1]]
    basic = head + [CircuitOp(GateSpec("cz"), (root, kids[-1]))]
    basic += [_u(op.targets[0], op.targets[1], cmap, dagger=True) for op in reversed(head)]
    unfolding = [_u(op.targets[0], op.targets[1], cmap, dagger=True) for op in reversed(folding)]
    return folding + basic + unfolding


def _finish(cmap, tree, ops, kind, target=None):
    c = Circuit(cmap.n, schedule(ops), kind, target, tree.nodes, tree)
    c.stats = stats_of(c)
    return c


def synth_cnz(tree, cmap):
    """Decompose C^{N-1}Z over the tree's nodes into ``2N - 3`` two-qutrit gates."""
    return _finish(cmap, tree, _cnz_ops(tree, cmap), "cnz")


# R01y(phi) is a real rotation by phi on the 01 block, so the pair below
# conjugates Z into X on the target with no global phase.
BASIS_CHANGE_IN = GateSpec("r01y", (-math.pi / 4,))
BASIS_CHANGE_OUT = GateSpec("r01y", (math.pi / 4,))


def synth_cnx(tree, cmap, target):
    """C^{N-1}X with ``target`` flipped: the C^{N-1}Z circuit in a basis change."""
    if target not in tree.parent:
        raise TopologyError(f"target {target} is not a tree node")
    ops = [CircuitOp(BASIS_CHANGE_IN, (target,))]
    ops += _cnz_ops(tree, cmap)
    ops.append(CircuitOp(BASIS_CHANGE_OUT, (target,)))
    return _finish(cmap, tree, ops, "cnx", target)


def schedule(ops):
    """Greedy as-soon-as-possible layering that keeps per-qutrit order."""
    ready = {}
    out = []
    for op in ops:
        layer = max((ready.get(t, 0) for t in op.targets), default=0)
        for t in op.targets:
            ready[t] = layer + 1
        out.append(CircuitOp(op.spec, op.targets, layer))
    return out


def stats_of(circuit):
    ops = circuit.ops
    iswaps = sum(op.spec.kind in ISWAP_CORED for op in ops)
    czs = sum(op.spec.kind == "cz" for op in ops)
    two = sum(op.spec.is_two_qutrit for op in ops)
    depth = len({op.layer for op in ops if op.spec.is_two_qutrit})
    height = circuit.tree.height if circuit.tree is not None else circuit.stats.tree_height
    return SynthStats(two, iswaps, czs, depth, height, iswaps + 2 * czs)


def _native(kind, targets):
    """Native-gate sequence for one logical op (R rotations, Ph, iSWAP)."""
    pi = math.pi

    def x01(q):
        return [CircuitOp(GateSpec("r01x", (pi / 2,)), (q,)),
                CircuitOp(GateSpec("ph", (pi / 2, pi / 2, 0.0)), (q,))]

    def x02(q):
        return [CircuitOp(GateSpec("r02x", (pi,)), (q,)),
                CircuitOp(GateSpec("ph", (0.0, 0.0, pi)), (q,))]

    if kind in ("x01", "x02"):
        return (x01 if kind == "x01" else x02)(targets[0])
    if kind == "cz":
        return [CircuitOp(GateSpec("iswap02", (0.0,)), targets)] * 2
    if kind not in ("u02", "u20", "u02dg", "u20dg"):
        return None
    i, j = targets
    if kind.startswith("u02"):
        core = [CircuitOp(GateSpec("iswap02", (0.0,)), (i, j))]
    else:
        core = x02(i) + x02(j) + [CircuitOp(GateSpec("iswap20", (0.0,)), (i, j))] + x02(i) + x02(j)
    if not kind.endswith("dg"):
        return x01(j) + core
    inv = []
    for op in reversed(core):
        if op.spec.kind.startswith("iswap"):
            inv.append(CircuitOp(GateSpec(op.spec.kind, (-pi,)), op.targets))
        else:
            inv.append(CircuitOp(op.spec.inverse(), op.targets))
    return inv + x01(j)


def lower_to_native(circuit):
    """Rewrite logical permutation gates into R / Ph / iSWAP natives.

    CZ becomes two iSWAP^02(0), which agrees with CZ on every input that has
    no |2> on its operands; the synthesized circuits only feed CZ such inputs.
    """
    ops = []
    for op in circuit.ops:
        seq = _native(op.spec.kind, op.targets)
        ops.extend(seq if seq is not None else [op])
    return circuit.with_ops(ops)


def circuit_to_doc(circuit):
    doc = {
        "n": circuit.n,
        "kind": circuit.kind,
        "qutrits": list(circuit.qutrits),
        "ops": [
            {"gate": op.spec.kind, "targets": list(op.targets),
             "params": list(op.spec.params), "layer": op.layer}
            for op in circuit.ops
        ],
        "stats": asdict(circuit.stats),
    }
    if circuit.target is not None:
        doc["target"] = circuit.target
    if circuit.tree is not None:
        doc["tree"] = {"root": circuit.tree.root,
                       "children": {str(v): cs for v, cs in sorted(circuit.tree.children.items())}}
    return doc


def dumps(circuit):
    return json.dumps(circuit_to_doc(circuit), indent=2) + "\n"


class CircuitFormatError(ValueError):
    pass


def circuit_from_doc(doc):
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise CircuitFormatError(f"circuit file is not valid JSON: {exc}") from None
    try:
        n = doc["n"]
        kind = doc.get("kind", "cnz")
        if kind not in ("cnz", "cnx"):
            raise CircuitFormatError(f"field 'kind': expected 'cnz' or 'cnx', got {kind!r}")
        ops = []
        for i, o in enumerate(doc["ops"]):
            try:
                spec = GateSpec(o["gate"], tuple(o.get("params", ())))
                op = CircuitOp(spec, tuple(o["targets"]), int(o.get("layer", 0)))
            except (ContractError, KeyError, TypeError) as exc:
                raise CircuitFormatError(f"ops[{i}]: {exc}") from None
            if any(not 0 <= t < n for t in op.targets):
                raise CircuitFormatError(f"ops[{i}].targets: {list(op.targets)} out of range for n={n}")
            ops.append(op)
        tree = None
        if "tree" in doc:
            t = doc["tree"]
            tree = RootedTree(int(t["root"]), {int(v): cs for v, cs in t["children"].items()})
        target = doc.get("target")
        if kind == "cnx" and target is None:
            raise CircuitFormatError("field 'target': required for kind 'cnx'")
        stats = SynthStats(**doc["stats"]) if "stats" in doc else SynthStats()
    except (KeyError, TypeError) as exc:
        raise CircuitFormatError(f"malformed circuit file: missing or bad field {exc}") from None
    c = Circuit(n, ops, kind, target, tuple(doc.get("qutrits", ())), tree, stats)
    c.stats = stats_of(c)
    return c


loads = circuit_from_doc
