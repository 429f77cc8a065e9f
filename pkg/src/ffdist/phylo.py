"""Distance matrices, Neighbor-Joining, Newick and PHYLIP text."""

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .engines import ORACLE, compute_distance
from .errors import InvalidMatrix, MissingSimilarities, ModelBug, ParseError, TooLarge
from .exact import Limits
from .ilp import WEIGHTED
from .numbers import format_decimal
from .similarity import apply_threshold


@dataclass(frozen=True)
class DistanceMatrix:
    taxa: tuple
    d: tuple

    def __post_init__(self):
        taxa = tuple(self.taxa)
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.d)
        n = len(taxa)
        if len(set(taxa)) != n:
            raise InvalidMatrix("taxon names must be distinct")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidMatrix(f"expected a {n}x{n} matrix")
        for i in range(n):
            if rows[i][i] != 0:
                raise InvalidMatrix(f"non-zero diagonal for {taxa[i]}")
            for j in range(n):
                if rows[i][j] < 0:
                    raise InvalidMatrix(f"negative distance between {taxa[i]} and {taxa[j]}")
                if rows[i][j] != rows[j][i]:
                    raise InvalidMatrix(f"asymmetric entry for {taxa[i]} and {taxa[j]}")
        object.__setattr__(self, "taxa", taxa)
        object.__setattr__(self, "d", rows)

    def __len__(self):
        return len(self.taxa)

    def get(self, a, b):
        return self.d[self.taxa.index(a)][self.taxa.index(b)]


# -- pairwise distances -------------------------------------------------------


def _pair_task(args):
    a, b, g, x, mode, engine, limits, solver_cmd, timeout = args
    try:
        return compute_distance(a, b, apply_threshold(g, x), mode, engine, limits, solver_cmd, timeout).distance
    except TooLarge as exc:
        raise TooLarge(f"pair ({a.name}, {b.name}): {exc}") from None


def lookup_similarities(similarities, a, b):
    """Graph for ``(a, b)``, transposing a stored ``(b, a)`` graph if needed."""
    if (a.name, b.name) in similarities:
        return similarities[(a.name, b.name)]
    if (b.name, a.name) in similarities:
        return similarities[(b.name, a.name)].transposed()
    raise MissingSimilarities(f"no similarity table for pair ({a.name}, {b.name})")


def pairwise_matrix(genomes, similarities, x, mode=WEIGHTED, engine=ORACLE, limits=Limits(),
                    solver_cmd=None, timeout=None, jobs=1, check_symmetry=True):
    """Distance for every unordered pair of ``genomes``.

    ``similarities`` maps ``(nameA, nameB)`` to a similarity graph for
    either orientation.  The first pair is also computed with the genomes
    swapped as a consistency check.
    """
    genomes = list(genomes)
    n = len(genomes)
    pairs = list(combinations(range(n), 2))
    tasks = []
    for i, j in pairs:
        g = lookup_similarities(similarities, genomes[i], genomes[j])
        tasks.append((genomes[i], genomes[j], g, x, mode, engine, limits, solver_cmd, timeout))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_pair_task, tasks))
    else:
        values = [_pair_task(t) for t in tasks]
    if check_symmetry and tasks:
        a, b, g = tasks[0][:3]
        swapped = _pair_task((b, a, g.transposed()) + tasks[0][3:])
        if swapped != values[0]:
            raise ModelBug(f"distance of ({a.name}, {b.name}) depends on the order of the genomes")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in zip(pairs, values):
        rows[i][j] = rows[j][i] = v
    return DistanceMatrix(tuple(g.name for g in genomes), tuple(map(tuple, rows)))


# -- trees ------------------------------------------------------------------


@dataclass
class Node:
    name: str = None
    children: list = field(default_factory=list)  # [(Node, Fraction), ...]

    def is_leaf(self):
        return not self.children


@dataclass
class Tree:
    root: Node

    def leaves(self):
        out = []

        def walk(node):
            if node.is_leaf():
                out.append(node.name)
            for child, _ in node.children:
                walk(child)

        walk(self.root)
        return out

    def _graph(self):
        adj, names = {}, {}

        def walk(node):
            adj.setdefault(id(node), [])
            names[id(node)] = node.name if node.is_leaf() else None
            for child, length in node.children:
                walk(child)
                adj[id(node)].append((id(child), length))
                adj[id(child)].append((id(node), length))

        walk(self.root)
        return adj, names

    def path_lengths(self):
        """``{(a, b): length}`` for every ordered pair of distinct leaves."""
        adj, names = self._graph()
        leaves = {k: v for k, v in names.items() if v is not None}
        out = {}
        for start, name in leaves.items():
            stack, seen = [(start, Fraction(0))], {start}
            while stack:
                v, dist = stack.pop()
                if v != start and v in leaves:
                    out[(name, leaves[v])] = dist
                for w, length in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append((w, dist + length))
        return out

    def splits(self):
        """Non-trivial bipartitions, each as the side not holding the first leaf."""
        all_leaves = frozenset(self.leaves())
        anchor = min(all_leaves) if all_leaves else None
        out = set()

        def walk(node):
            below = frozenset([node.name]) if node.is_leaf() else frozenset()
            for child, _ in node.children:
                below |= walk(child)
            side = below if anchor not in below else all_leaves - below
            if 1 < len(side) < len(all_leaves) - 1:
                out.add(side)
            return below

        walk(self.root)
        return out


def _clamp(li, lj):
    # a negative length becomes 0 and its deficit moves to the sister edge
    if li < 0:
        return Fraction(0), lj + li
    if lj < 0:
        return li + lj, Fraction(0)
    return li, lj


def neighbor_joining(m):
    """Saitou-Nei Neighbor-Joining in exact arithmetic.

    Ties in the Q criterion go to the lowest ``(i, j)`` index pair.  The
    joined node takes the slot of ``i``.  The last three nodes meet at a
    trifurcating root.
    """
    n = len(m.taxa)
    if n == 0:
        raise InvalidMatrix("empty matrix")
    nodes = [Node(t) for t in m.taxa]
    if n == 1:
        return Tree(nodes[0])
    if n == 2:
        half = m.d[0][1] / 2
        return Tree(Node(None, [(nodes[0], half), (nodes[1], half)]))
    d = [list(row) for row in m.d]
    while len(nodes) > 3:
        k = len(nodes)
        r = [sum(row) for row in d]
        best = None
        for i in range(k):
            for j in range(i + 1, k):
                q = (k - 2) * d[i][j] - r[i] - r[j]
                if best is None or q < best[0]:
                    best = (q, i, j)
        _, i, j = best
        li = d[i][j] / 2 + (r[i] - r[j]) / (2 * (k - 2))
        li, lj = _clamp(li, d[i][j] - li)
        joined = Node(None, [(nodes[i], li), (nodes[j], lj)])
        new = [(d[i][t] + d[j][t] - d[i][j]) / 2 for t in range(k)]
        for t in range(k):
            d[i][t] = d[t][i] = new[t]
        d[i][i] = Fraction(0)
        nodes[i] = joined
        del nodes[j]
        del d[j]
        for row in d:
            del row[j]
    la = (d[0][1] + d[0][2] - d[1][2]) / 2
    lb = d[0][1] - la
    lc = d[0][2] - la
    la, lb = _clamp(la, lb)
    lb, lc = _clamp(lb, lc)
    return Tree(Node(None, [(nodes[0], la), (nodes[1], lb), (nodes[2], lc)]))


def reroot_outgroup(t, outgroup):
    """Root ``t`` at the midpoint of the pendant edge of leaf ``outgroup``."""
    adj, names = t._graph()
    nodes = {}

    def collect(node):
        nodes[id(node)] = node
        for child, _ in node.children:
            collect(child)

    collect(t.root)
    leaf = next((k for k, v in names.items() if v == outgroup), None)
    if leaf is None:
        raise InvalidMatrix(f"outgroup {outgroup!r} is not a taxon")
    if len(adj[leaf]) != 1:
        return t
    parent, length = adj[leaf][0]

    def build(v, came_from):
        kids = [(build(w, v), ln) for w, ln in adj[v] if w != came_from]
        return Node(names[v] if not kids else None, kids)

    half = length / 2
    return Tree(Node(None, [(Node(outgroup), half), (build(parent, leaf), length - half)]))


# -- Newick ---------------------------------------------------------------------

_NEWICK_META = re.compile(r"[\s()\[\]':;,]")


def _quote(name):
    if name is None:
        return ""
    if _NEWICK_META.search(name) or name == "":
        return "'" + name.replace("'", "''") + "'"
    return name


def write_newick(t):
    def render(node):
        if node.is_leaf():
            return _quote(node.name)
        inner = ",".join(f"{render(c)}:{format_decimal(ln)}" for c, ln in node.children)
        return f"({inner}){_quote(node.name)}"

    return render(t.root) + ";"


def parse_newick(text):
    text = text.strip()
    pos = 0

    def peek():
        return text[pos] if pos < len(text) else ""

    def name():
        nonlocal pos
        if peek() == "'":
            pos += 1
            out = []
            while True:
                if pos >= len(text):
                    raise ParseError("unterminated quoted name")
                ch = text[pos]
                if ch == "'":
                    if text[pos + 1:pos + 2] == "'":
                        out.append("'")
                        pos += 2
                        continue
                    pos += 1
                    return "".join(out)
                out.append(ch)
                pos += 1
        start = pos
        while pos < len(text) and text[pos] not in "():;,":
            pos += 1
        raw = text[start:pos].strip()
        return raw or None

    def length():
        nonlocal pos
        if peek() != ":":
            return Fraction(0)
        pos += 1
        start = pos
        while pos < len(text) and text[pos] not in "(),;":
            pos += 1
        try:
            return Fraction(text[start:pos].strip())
        except ValueError:
            raise ParseError(f"bad branch length {text[start:pos]!r}") from None

    def subtree():
        nonlocal pos
        if peek() == "(":
            pos += 1
            kids = []
            while True:
                child = subtree()
                kids.append((child, length()))
                if peek() == ",":
                    pos += 1
                    continue
                if peek() == ")":
                    pos += 1
                    break
                raise ParseError(f"unexpected {peek()!r} at offset {pos}")
            return Node(name(), kids)
        return Node(name())

    root = subtree()
    if peek() != ";" or pos != len(text) - 1:
        raise ParseError("Newick text must end with ';'")
    return Tree(root)


# -- PHYLIP -------------------------------------------------------------------


def write_phylip(m):
    lines = [str(len(m.taxa))]
    for name, row in zip(m.taxa, m.d):
        if not name or re.search(r"\s", name):
            raise InvalidMatrix(f"taxon name {name!r} cannot be written in PHYLIP")
        lines.append(" ".join([name] + [format_decimal(v) for v in row]))
    return "\n".join(lines) + "\n"


def parse_phylip(text):
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise ParseError("empty PHYLIP file")
    try:
        n = int(lines[0].split()[0])
    except ValueError:
        raise ParseError("first line must hold the taxon count", 1) from None
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    taxa, rows = [], []
    for k, line in enumerate(lines[1:], 2):
        parts = line.split()
        if len(parts) != n + 1:
            raise ParseError(f"expected a name and {n} values", k)
        taxa.append(parts[0])
        try:
            rows.append(tuple(Fraction(v) for v in parts[1:]))
        except ValueError:
            raise ParseError("non-numeric distance", k) from None
    return DistanceMatrix(tuple(taxa), tuple(rows))
