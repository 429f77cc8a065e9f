"""Command-line interface: ``ffdist <subcommand> ...``.

Exit status is 0 on success, 1 when a computation or input error occurs
and 2 for usage errors.
"""

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .diagram import ADJ_A, ADJ_B, CAP, EXT, INDEL_A, INDEL_B, build_ffr, cap
from .engines import ENGINES, ORACLE, compute_distance
from .errors import FFDistError, TooLarge
from .exact import Limits, ffd_exact
from .decomposition import induce, SiblingSet
from .genome import genome_stats, parse_genomes, render_genomes
from .ilp import UNWEIGHTED, WEIGHTED, build_ilp, emit_lp
from .numbers import format_decimal, parse_decimal
from .phylo import neighbor_joining, pairwise_matrix, parse_phylip, reroot_outgroup, write_newick, write_phylip
from .simgen import SimParams, simulate_pair
from .similarity import apply_threshold, parse_similarities


class UsageError(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FFDistError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _threshold(text):
    try:
        x = parse_decimal(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold {text!r}") from None
    if not 0 <= x <= 1:
        raise argparse.ArgumentTypeError("threshold must lie in [0, 1]")
    return x


def _pair_inputs(args):
    genomes_a = parse_genomes(_read(args.a))
    if args.b is None:
        if len(genomes_a) != 2:
            raise FFDistError(f"{args.a} must hold exactly two genomes when -b is omitted")
        a, b = genomes_a
    else:
        genomes_b = parse_genomes(_read(args.b))
        if len(genomes_a) != 1 or len(genomes_b) != 1:
            raise FFDistError("-a and -b files must each hold exactly one genome")
        a, b = genomes_a[0], genomes_b[0]
    g = parse_similarities(_read(args.s), a, b)
    return a, b, apply_threshold(g, args.x)


def _limits(args):
    return Limits(args.max_edges, args.max_caps, args.max_free)


def _mode(args):
    return UNWEIGHTED if args.unweighted else WEIGHTED


def cmd_distance(args):
    a, b, g = _pair_inputs(args)
    r = compute_distance(a, b, g, _mode(args), args.engine, _limits(args), args.solver_cmd, args.timeout)
    lines = [f"distance\t{format_decimal(r.distance)}", f"matching\t{len(r.matching)}"]
    lines += [f"pair\t{x}\t{y}" for x, y in r.matching]
    print("\n".join(lines))


def cmd_emit_lp(args):
    a, b, g = _pair_inputs(args)
    _write(args.output, emit_lp(build_ilp(cap(build_ffr(a, b, g)), _mode(args))))


def cmd_matrix(args):
    genomes = parse_genomes(_read(args.g))
    names = [g.name for g in genomes]
    if len(set(names)) != len(names):
        raise FFDistError("genome names must be distinct")
    by_name = {g.name: g for g in genomes}
    simdir = Path(args.s)
    sims = {}
    for i, x in enumerate(sorted(names)):
        for y in sorted(names)[i + 1:]:
            for first, second in ((x, y), (y, x)):
                path = simdir / f"{first}__{second}.tsv"
                if path.exists():
                    sims[(first, second)] = parse_similarities(_read(path), by_name[first], by_name[second])
                    break
    m = pairwise_matrix(
        genomes, sims, args.x, _mode(args), args.engine, _limits(args), args.solver_cmd, args.timeout, args.jobs
    )
    _write(args.output, write_phylip(m))


def cmd_tree(args):
    m = parse_phylip(_read(args.m))
    t = neighbor_joining(m)
    if args.outgroup:
        t = reroot_outgroup(t, args.outgroup)
    _write(args.output, write_newick(t) + "\n")


def cmd_simulate(args):
    params = SimParams(
        markers=args.markers,
        chromosomes=args.chromosomes,
        circular_fraction=args.circular,
        dcj=args.dcj,
        indels=args.indels,
        duplications=args.dups,
        noise=args.noise,
        name_a=args.name_a,
        name_b=args.name_b,
    )
    a, b, tsv = simulate_pair(params, args.seed)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    (out / "genomes.gen").write_text(render_genomes([a, b]))
    (out / f"{a.name}__{b.name}.tsv").write_text(tsv)
    print(f"wrote {out / 'genomes.gen'} and {out / f'{a.name}__{b.name}.tsv'}")


def cmd_diagram_stats(args):
    a, b, g = _pair_inputs(args)
    d = build_ffr(a, b, g)
    dc = cap(d)
    lines = []
    for label, genome in (("A", a), ("B", b)):
        markers, kappa, circ, telo = genome_stats(genome)
        lines.append(f"genome.{label}\t{genome.name}\tmarkers={markers}\tlinear={kappa}\tcircular={circ}\ttelomeres={telo}")
    lines.append(f"similarity_edges\t{len(g)}")
    for label, diag in (("ffr", d), ("capped", dc)):
        lines.append(f"{label}.vertices\t{len(diag.vertices)}")
        for kind in (ADJ_A, ADJ_B, EXT, INDEL_A, INDEL_B, CAP):
            lines.append(f"{label}.edges.{kind}\t{diag.count(kind)}")
    lines.append(f"p_star\t{dc.p_star}")
    try:
        r = ffd_exact(a, b, g, _limits(args))
    except TooLarge:
        lines.append("optimum\tskipped: instance exceeds the oracle limits")
    else:
        q = induce(dc, SiblingSet.from_matching(dc, r.matching), r.capping)
        lines.append(f"optimum.distance\t{format_decimal(r.distance)}")
        for kind, count in sorted(q.kinds().items()):
            lines.append(f"optimum.components.{kind}\t{count}")
        lines.append(f"optimum.transitions\t{q.transitions}")
    print("\n".join(lines))
    if args.dump:
        _write(args.dump, dc.dump())


def build_parser():
    p = argparse.ArgumentParser(prog="ffdist", description="Family-free DCJ-indel distances.")
    sub = p.add_subparsers(dest="command", required=True)

    def pair_args(sp):
        sp.add_argument("-a", required=True, help="genome file for A (or both genomes when -b is omitted)")
        sp.add_argument("-b", help="genome file for B")
        sp.add_argument("-s", required=True, help="similarity TSV (idA, idB, sigma)")
        sp.add_argument("-x", type=_threshold, default=Fraction(0), help="cutting threshold (default 0)")

    def solve_args(sp):
        sp.add_argument("--unweighted", action="store_true", help="maximal matchings, no weights")
        sp.add_argument("--engine", choices=ENGINES, default=ORACLE)
        sp.add_argument("--solver-cmd", default=os.environ.get("FFDIST_SOLVER_CMD"),
                        help="external solver template with {input} and {output}")
        sp.add_argument("--timeout", type=float,
                        default=float(os.environ["FFDIST_SOLVER_TIMEOUT"]) if os.environ.get("FFDIST_SOLVER_TIMEOUT") else None)
        sp.add_argument("--max-edges", type=int, default=Limits.max_edges)
        sp.add_argument("--max-caps", type=int, default=Limits.max_caps)
        sp.add_argument("--max-free", type=int, default=Limits.max_free)

    sp = sub.add_parser("distance", help="distance of one genome pair")
    pair_args(sp)
    solve_args(sp)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("emit-lp", help="write the integer program as CPLEX LP text")
    pair_args(sp)
    sp.add_argument("--unweighted", action="store_true")
    sp.add_argument("-o", "--output", help="output path (default stdout)")
    sp.set_defaults(func=cmd_emit_lp)

    sp = sub.add_parser("matrix", help="PHYLIP distance matrix over a genome collection")
    sp.add_argument("-g", required=True, help="genome file with all taxa")
    sp.add_argument("-s", required=True, help="directory of <A>__<B>.tsv similarity files")
    sp.add_argument("-x", type=_threshold, default=Fraction(0))
    sp.add_argument("-o", "--output")
    sp.add_argument("--jobs", type=int, default=1)
    solve_args(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("tree", help="Neighbor-Joining tree from a PHYLIP matrix")
    sp.add_argument("-m", required=True)
    sp.add_argument("-outgroup", "--outgroup", dest="outgroup")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("simulate", help="generate a genome pair and its similarities")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--markers", type=int, default=10)
    sp.add_argument("--chromosomes", type=int, default=1)
    sp.add_argument("--circular", type=float, default=0.0, help="probability that a chromosome is circular")
    sp.add_argument("--dcj", type=int, default=0)
    sp.add_argument("--indels", type=int, default=0)
    sp.add_argument("--dups", type=int, default=0)
    sp.add_argument("--noise", type=float, default=0.0)
    sp.add_argument("--name-a", default="A")
    sp.add_argument("--name-b", default="B")
    sp.add_argument("-o", "--output", required=True, help="output directory")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("diagram-stats", help="vertex, edge and component counts")
    pair_args(sp)
    sp.add_argument("--dump", help="also write the capped diagram listing to this path")
    sp.add_argument("--max-edges", type=int, default=Limits.max_edges)
    sp.add_argument("--max-caps", type=int, default=Limits.max_caps)
    sp.add_argument("--max-free", type=int, default=Limits.max_free)
    sp.set_defaults(func=cmd_diagram_stats)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except FFDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
