"""Command-line front end: ``qutrit-toffoli {synth,verify,stats,export-tree}``.

Exit codes: 0 success / verification pass, 1 verification failure,
2 usage, parse or validation error.
"""
import argparse
import os
import sys

from . import sim, synth
from .linalg import ContractError
from .topology import TopologyError, load_coupling, min_height_tree
from .verify import DEFAULT_TOLERANCE, verify_circuit


class UsageError(Exception):
    pass


def _nodes(text):
    if text == "all":
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--nodes: expected 'all' or a comma-separated index list, got {text!r}") from None


def _root(text):
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--root: expected 'auto' or an index, got {text!r}") from None


def _tree(args):
    try:
        cmap = load_coupling(args.topology)
    except OSError as exc:
        raise UsageError(f"--topology: cannot read {args.topology!r}: {exc.strerror}") from None
    except TopologyError as exc:
        raise UsageError(f"--topology: {exc}") from None
    try:
        tree = min_height_tree(cmap, _nodes(args.nodes), _root(args.root))
    except TopologyError as exc:
        raise UsageError(f"--nodes/--root: {exc}") from None
    return cmap, tree


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _stats_line(c):
    s = c.stats
    return (f"N={len(c.qutrits)} two-qutrit={s.two_qutrit_count} iswap={s.iswap_count} "
            f"cz={s.cz_count} depth={s.depth_layers} height={s.tree_height}")


def _load_circuit(path):
    try:
        with open(path) as fh:
            return synth.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"--circuit: cannot read {path!r}: {exc.strerror}") from None
    except (synth.CircuitFormatError, TopologyError, ContractError) as exc:
        raise UsageError(f"--circuit: {exc}") from None


def cmd_synth(args):
    cmap, tree = _tree(args)
    if args.gate == "cnx":
        if args.target is None:
            raise UsageError("--target: required with --gate cnx")
        if args.target not in tree.parent:
            raise UsageError(f"--target: {args.target} is not one of the selected nodes")
        circ = synth.synth_cnx(tree, cmap, args.target)
    else:
        if args.target is not None:
            raise UsageError("--target: only valid with --gate cnx")
        circ = synth.synth_cnz(tree, cmap)
    if args.native:
        circ = synth.lower_to_native(circ)
    _write(args.out, synth.dumps(circ))
    print(_stats_line(circ), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


def _dump_trace(circ, path):
    c = circ.compact()
    lines = [f"# qutrits {' '.join(str(q) for q in circ.qutrits)}"]
    try:
        for idx in sim.qubit_inputs(c.n):
            path_, events = sim.run_basis(c, idx)
            lines.append(f"# input {''.join(map(str, sim.digits_of(int(idx), c.n)))}")
            lines.extend(ev.line() for ev in events)
    except sim.BackendMismatch as exc:
        print(f"trace unavailable: {exc}", file=sys.stderr)
        return
    _write(path, "\n".join(lines) + "\n")


def cmd_verify(args):
    if args.tolerance <= 0:
        raise UsageError("--tolerance: must be positive")
    circ = _load_circuit(args.circuit)
    report = verify_circuit(circ, args.tolerance, jobs=args.jobs)
    if args.report:
        _write(args.report, report.dumps())
    if args.trace:
        _dump_trace(circ, args.trace)
    status = "PASS" if report.phase_table_ok else "FAIL"
    print(f"{status} kind={report.kind} N={report.n} inputs={report.inputs_checked} "
          f"max_amplitude_error={report.max_amplitude_error:.3g} "
          f"max_leakage={report.max_leakage:.3g}")
    for inp, exp, got in report.violations:
        print(f"  violation: input {inp} expected {exp} got {got}")
    return 0 if report.phase_table_ok else 1


def cmd_stats(args):
    print(_stats_line(_load_circuit(args.circuit)))
    return 0


def cmd_export_tree(args):
    _, tree = _tree(args)
    _write(args.out, tree.to_dot())
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="qutrit-toffoli", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def tree_flags(sp):
        sp.add_argument("--topology", required=True,
                        help="coupling-map JSON file or preset name (aspen-like)")
        sp.add_argument("--nodes", default="all", help="'all' or comma-separated qutrit indices")
        sp.add_argument("--root", default="auto", help="'auto' or a qutrit index")

    s = sub.add_parser("synth", help="synthesize a C^{N-1}Z / C^{N-1}X circuit")
    tree_flags(s)
    s.add_argument("--gate", choices=("cnz", "cnx"), default="cnz")
    s.add_argument("--target", type=int, help="target qutrit for cnx")
    s.add_argument("--native", action="store_true", help="lower to R / Ph / iSWAP natives")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="verify a circuit file against the ideal gate")
    v.add_argument("--circuit", required=True)
    v.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    v.add_argument("--report", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--trace", nargs="?", const="-", help="dump per-gate digit transitions")
    v.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    v.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="print gate counts of a circuit file")
    st.add_argument("--circuit", required=True)
    st.set_defaults(func=cmd_stats)

    e = sub.add_parser("export-tree", help="write the selected spanning tree as DOT")
    tree_flags(e)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_export_tree)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
