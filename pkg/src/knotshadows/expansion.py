"""Shadow enumeration by expanding simple planar graphs.

Every shadow reduces to a simple embedded planar graph of maximum degree 4
by deleting loops and surplus parallel edges (:func:`reduce_to_simple`).  The
pipeline here runs that in reverse.  A seed graph is prepared (a loop is
added at every degree-1 vertex) and the ways to restore degree 4 everywhere
are described by 0/1 variables:

* ``l[v]``   add a loop at a degree-2 vertex (E1),
* ``d[e]``   double a cycle edge into a bigon (E2),
* ``c[e]``   double a cut edge, as a bigon (E2) or not (E3),
* ``p[u,w]`` join two degree-2 vertices lying on the same two faces by a
  pair of edges, one through each face (E4).

Each vertex must end with degree 4 and two ``p`` pairs whose endpoints
interleave along their shared face cannot both be used.  The solutions are
found by branch and bound and realized as rotation systems.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Iterator, Sequence

from .isomorphism import Pdstor
from .pdcode import PdCode, PdCodeError, from_darts, genus
from .shadows import hopf, twist

__all__ = [
    "EmbeddedGraph",
    "Expansion",
    "Variable",
    "ConstraintSystem",
    "ParityViolation",
    "InfeasibleSeed",
    "ExpansionGenusError",
    "graph_from_rotation",
    "graph_from_darts",
    "embedded_canonical_key",
    "reduce_to_simple",
    "prepare_graph",
    "find_bridges",
    "build_constraints",
    "solve_branch_and_bound",
    "apply_expansions",
    "expand_seed",
    "expansion_enumerate",
    "planar_embeddings",
    "simple_planar_seeds",
    "seeds_from_shadows",
]


class ParityViolation(PdCodeError):
    pass


class InfeasibleSeed(ValueError):
    pass


class ExpansionGenusError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# embedded graphs as rotation systems on darts


@dataclass
class EmbeddedGraph:
    """A connected embedded multigraph.

    ``rot[v]`` lists the darts at ``v`` counterclockwise and ``mate[d]`` is the
    other end of dart ``d``'s edge (a loop pairs two darts of one vertex).
    """

    rot: list[list[int]]
    mate: dict[int, int]
    vert: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.vert:
            self.vert = {d: v for v, ds in enumerate(self.rot) for d in ds}

    @property
    def n(self) -> int:
        return len(self.rot)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def copy(self) -> "EmbeddedGraph":
        return EmbeddedGraph([list(r) for r in self.rot], dict(self.mate), dict(self.vert))

    def next_dart(self, d: int) -> int:
        """Counterclockwise successor of ``d`` around its vertex."""
        r = self.rot[self.vert[d]]
        return r[(r.index(d) + 1) % len(r)]

    def edges(self) -> list[tuple[int, int]]:
        """Each edge once, as ``(d, mate[d])`` with ``d < mate[d]``."""
        return sorted((d, m) for d, m in self.mate.items() if d < m)

    def faces(self) -> list[list[int]]:
        """Face orbits of ``d -> next(mate(d))``."""
        seen = set()
        out = []
        for v in range(self.n):
            for d0 in self.rot[v]:
                if d0 in seen:
                    continue
                orbit = []
                d = d0
                while d not in seen:
                    seen.add(d)
                    orbit.append(d)
                    d = self.next_dart(self.mate[d])
                out.append(orbit)
        return out

    def genus(self) -> int:
        if not self.mate:
            return 0
        chi = self.n - len(self.mate) // 2 + len(self.faces())
        return (2 - chi) // 2

    def neighbour_rotation(self) -> list[list[int]]:
        return [[self.vert[self.mate[d]] for d in ds] for ds in self.rot]

    def to_darts(self) -> list[int]:
        """Dart involution ``4*v + s`` of a 4-regular graph."""
        pos = {}
        for v, ds in enumerate(self.rot):
            if len(ds) != 4:
                raise ValueError(f"vertex {v} has degree {len(ds)}")
            for s, d in enumerate(ds):
                pos[d] = 4 * v + s
        return [pos[self.mate[d]] for ds in self.rot for d in ds]


def graph_from_rotation(rot: Sequence[Sequence[int]]) -> EmbeddedGraph:
    """Embedded simple graph from counterclockwise neighbour lists."""
    ids = {}
    darts = []
    for u, nbrs in enumerate(rot):
        row = []
        for w in nbrs:
            ids[(u, w)] = len(ids)
            row.append(ids[(u, w)])
        darts.append(row)
    mate = {}
    for (u, w), d in ids.items():
        if (w, u) not in ids:
            raise ValueError(f"edge {u}-{w} is listed at one end only")
        mate[d] = ids[(w, u)]
    return EmbeddedGraph(darts, mate)


def graph_from_darts(alpha: Sequence[int]) -> EmbeddedGraph:
    n = len(alpha) // 4
    return EmbeddedGraph([[4 * v + s for s in range(4)] for v in range(n)],
                         {d: alpha[d] for d in range(4 * n)})


def embedded_canonical_key(g: EmbeddedGraph) -> tuple:
    """Complete invariant of a connected embedded graph up to reflection."""
    if not g.mate:
        return (g.n,)
    pos = {d: (v, i) for v, ds in enumerate(g.rot) for i, d in enumerate(ds)}
    best = None
    for v0, ds in enumerate(g.rot):
        for i0 in range(len(ds)):
            for step in (1, -1):
                num = {v0: 0}
                base = {v0: i0}
                order = [v0]
                code = []
                k = 0
                while k < len(order):
                    v = order[k]
                    r = g.rot[v]
                    deg = len(r)
                    code.append(deg)
                    for j in range(deg):
                        d = r[(base[v] + step * j) % deg]
                        w, iw = pos[g.mate[d]]
                        if w not in num:
                            num[w] = len(order)
                            base[w] = iw
                            order.append(w)
                        code.append(num[w])
                        code.append((iw - base[w]) * step % len(g.rot[w]))
                    k += 1
                code = tuple(code)
                if best is None or code < best:
                    best = code
    return best


# ---------------------------------------------------------------------------
# reduction of a shadow to its simple graph


@dataclass(frozen=True)
class Move:
    kind: str  # "E1", "E2", "E3", "E4" or "hopf"
    vertices: tuple[int, ...]


def reduce_to_simple(
    shadow: PdCode | Sequence[int], rng: random.Random | None = None
) -> tuple[EmbeddedGraph, list[Move]]:
    """Delete loops and surplus parallel edges, returning the simple graph and trace.

    Darts keep their slot positions, so "adjacent" and "opposite" refer to
    the four slots of the original crossing.  ``rng`` shuffles the order in
    which the local reductions are applied; the result does not depend on it.
    """
    alpha = shadow.darts if isinstance(shadow, PdCode) else tuple(shadow)
    n = len(alpha) // 4
    steps = []
    groups: dict[tuple[int, int], list[int]] = {}
    for d in range(4 * n):
        p = alpha[d]
        if d > p:
            continue
        v, w = d >> 2, p >> 2
        if v == w:
            if (p - d) % 2 == 0:
                raise ParityViolation(f"loop at opposite slots of crossing {v}")
            steps.append(("loop", (d, p)))
        else:
            groups.setdefault((v, w), []).append(d)
    for (v, w), ds in groups.items():
        if len(ds) > 1:
            steps.append(("multi", (v, w, tuple(ds))))
    if rng is not None:
        rng.shuffle(steps)
    removed: set[int] = set()
    trace: list[Move] = []
    for kind, data in steps:
        if kind == "loop":
            removed.update(data)
            trace.append(Move("E1", (data[0] >> 2,)))
            continue
        v, w, ds = data
        remove = _reduce_multi(alpha, v, w, ds, trace)
        for d in remove:
            removed.add(d)
            removed.add(alpha[d])
    rot = []
    for v in range(n):
        rot.append([d for d in range(4 * v, 4 * v + 4) if d not in removed])
    mate = {d: alpha[d] for ds in rot for d in ds}
    return EmbeddedGraph(rot, mate), trace


def _reduce_multi(alpha, v, w, ds, trace) -> list[int]:
    k = len(ds)
    sv = {d: d & 3 for d in ds}
    sw = {d: alpha[d] & 3 for d in ds}
    if k == 4:
        trace.append(Move("hopf", (v, w)))
        return list(ds[1:])
    if k == 3:
        for a, b in itertools.combinations(ds, 2):
            if (sv[a] - sv[b]) % 4 == 2:
                if (sw[a] - sw[b]) % 4 != 2:
                    raise ParityViolation(f"triple edge {v}-{w} is not symmetric")
                trace.append(Move("E4", (v, w)))
                return [a, b]
        raise ParityViolation(f"triple edge {v}-{w} has no opposite pair")
    a, b = ds
    dv = (sv[b] - sv[a]) % 4
    dw = (sw[b] - sw[a]) % 4
    if dv == 2:
        if dw != 2:
            raise ParityViolation(f"double edge {v}-{w}: opposite at one end only")
        trace.append(Move("E4", (v, w)))
        return [a, b]
    if dw == 2:
        raise ParityViolation(f"double edge {v}-{w}: opposite at one end only")
    # adjacent at both ends: a bigon if the order flips, a separating pair otherwise
    trace.append(Move("E2" if dv != dw else "E3", (v, w)))
    return [b]


# ---------------------------------------------------------------------------
# preparation and constraints


def prepare_graph(seed: EmbeddedGraph) -> EmbeddedGraph:
    """Add a loop at every degree-1 vertex."""
    g = seed.copy()
    nxt = max(g.mate, default=-1) + 1
    for v in range(g.n):
        if len(g.rot[v]) == 1:
            a, b = nxt, nxt + 1
            nxt += 2
            g.rot[v] += [a, b]
            g.mate[a], g.mate[b] = b, a
            g.vert[a] = g.vert[b] = v
    return g


def find_bridges(g: EmbeddedGraph) -> set[tuple[int, int]]:
    """Cut edges, as ``(d, mate[d])`` with ``d < mate[d]`` (iterative Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = set()
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, None, iter(g.rot[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for d in it:
                m = g.mate[d]
                if via is not None and d == via:
                    continue
                w = g.vert[m]
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, m, iter(g.rot[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    d = g.mate[via]
                    bridges.add((min(d, via), max(d, via)))
    return bridges


@dataclass(frozen=True)
class Variable:
    kind: str  # "l", "d", "c" or "p"
    target: tuple  # (v,) for l, (dart, mate) for d/c, (u, w) for p
    weights: tuple[tuple[int, int], ...]  # (vertex, degree added)


@dataclass
class ConstraintSystem:
    graph: EmbeddedGraph
    variables: list[Variable]
    need: list[int]  # missing degree per vertex
    conflicts: dict[int, set[int]]  # variable index -> interleaved p variables
    corners: dict[int, dict[int, int]]  # degree-2 vertex -> {face: dart opening the corner}


def build_constraints(g: EmbeddedGraph) -> ConstraintSystem:
    """Variables in the order l, d, c, p, each in dictionary order."""
    deg = [len(r) for r in g.rot]
    face_of = {}
    fs = g.faces()
    for f, orbit in enumerate(fs):
        for d in orbit:
            face_of[d] = f
    loops = {d for d, m in g.mate.items() if g.vert[d] == g.vert[m]}
    bridges = find_bridges(g)

    lv = [Variable("l", (v,), ((v, 2),)) for v in range(g.n) if deg[v] == 2]
    dv, cv = [], []
    for d, m in g.edges():
        if d in loops:
            continue
        u, w = g.vert[d], g.vert[m]
        if deg[u] < 4 and deg[w] < 4:
            var = Variable("c" if (d, m) in bridges else "d", (d, m), ((u, 1), (w, 1)))
            (cv if (d, m) in bridges else dv).append(var)
    dv.sort(key=lambda x: sorted((g.vert[x.target[0]], g.vert[x.target[1]])))
    cv.sort(key=lambda x: sorted((g.vert[x.target[0]], g.vert[x.target[1]])))

    # corner (d, next(d)) at vertex v lies on the face through next(d)
    corners: dict[int, dict[int, int]] = {}
    for v in range(g.n):
        if deg[v] == 2:
            cs = {}
            for d in g.rot[v]:
                cs[face_of[g.next_dart(d)]] = d
            if len(cs) == 2:
                corners[v] = cs
    pv = []
    for u, w in itertools.combinations(sorted(corners), 2):
        if set(corners[u]) == set(corners[w]):
            pv.append(Variable("p", (u, w), ((u, 2), (w, 2))))
    variables = lv + dv + cv + pv

    # interleaving along the first of the two shared faces
    position = {}
    for f, orbit in enumerate(fs):
        for i, d in enumerate(orbit):
            position[(f, g.vert[d])] = i
    conflicts: dict[int, set[int]] = {}
    base = len(lv) + len(dv) + len(cv)
    for i, j in itertools.combinations(range(len(pv)), 2):
        a, b = pv[i].target, pv[j].target
        if set(a) & set(b) or set(corners[a[0]]) != set(corners[b[0]]):
            continue
        f = min(corners[a[0]])
        pa = sorted(position[(f, x)] for x in a)
        inside = [pa[0] < position[(f, x)] < pa[1] for x in b]
        if inside[0] != inside[1]:
            conflicts.setdefault(base + i, set()).add(base + j)
            conflicts.setdefault(base + j, set()).add(base + i)
    need = [4 - x for x in deg]
    return ConstraintSystem(g, variables, need, conflicts, corners)


def solve_branch_and_bound(system: ConstraintSystem) -> list[tuple[int, ...]]:
    """All 0/1 assignments meeting the degree equations and linking constraints.

    Variables are fixed in order, 0 before 1; a branch is cut as soon as a
    vertex is over-full or can no longer reach degree 4.
    """
    variables = system.variables
    nvar = len(variables)
    need = list(system.need)
    if any(x < 0 for x in need):
        return []
    avail = [0] * len(need)
    for var in variables:
        for v, wgt in var.weights:
            avail[v] += wgt
    if any(need[v] > avail[v] for v in range(len(need))):
        return []
    conflicts = system.conflicts
    values = [0] * nvar
    out: list[tuple[int, ...]] = []

    def rec(i):
        if i == nvar:
            if not any(need):
                out.append(tuple(values))
            return
        var = variables[i]
        # value 0
        for v, wgt in var.weights:
            avail[v] -= wgt
        if all(need[v] <= avail[v] for v, _ in var.weights):
            values[i] = 0
            rec(i + 1)
        # value 1
        ok = all(need[v] >= wgt for v, wgt in var.weights) and not any(
            values[j] for j in conflicts.get(i, ()) if j < i
        )
        if ok:
            for v, wgt in var.weights:
                need[v] -= wgt
            values[i] = 1
            rec(i + 1)
            values[i] = 0
            for v, wgt in var.weights:
                need[v] += wgt
        for v, wgt in var.weights:
            avail[v] += wgt

    rec(0)
    return out


# ---------------------------------------------------------------------------
# realizing solutions


@dataclass(frozen=True)
class Expansion:
    solution: tuple[int, ...]
    choices: tuple[int, ...]
    shadow: PdCode


def apply_expansions(system: ConstraintSystem, solution: Sequence[int]) -> Iterator[Expansion]:
    """Every shadow realizing ``solution``.

    Loops at degree-2 vertices can sit in either corner and doubled cut edges
    can form a bigon or not, so one solution fans out into several shadows.
    """
    g = system.graph
    chosen = [var for var, x in zip(system.variables, solution) if x]
    branching = [var for var in chosen if var.kind in ("l", "c")]
    for choices in itertools.product((0, 1), repeat=len(branching)):
        pick = dict(zip(branching, choices))
        # insertions per corner, keyed by the dart opening it
        after: dict[int, list[int]] = {}
        before: dict[int, list[int]] = {}
        mate = dict(g.mate)
        nxt = max(mate, default=-1) + 1

        def new_pair():
            nonlocal nxt
            a, b = nxt, nxt + 1
            nxt += 2
            mate[a], mate[b] = b, a
            return a, b

        for var in chosen:
            if var.kind == "l":
                v = var.target[0]
                d = g.rot[v][pick[var]]
                a, b = new_pair()
                after.setdefault(d, []).extend((a, b))
            elif var.kind in ("d", "c"):
                x, y = var.target
                a, b = new_pair()
                after.setdefault(x, []).append(a)
                if var.kind == "c" and pick[var]:
                    after.setdefault(y, []).append(b)  # E3
                else:
                    prev = _prev_dart(g, y)
                    before.setdefault(prev, []).append(b)  # E2
            else:
                u, w = var.target
                for f in sorted(system.corners[u]):
                    a, b = new_pair()
                    after.setdefault(system.corners[u][f], []).append(a)
                    after.setdefault(system.corners[w][f], []).append(b)
        rot = []
        for v in range(g.n):
            row = []
            for d in g.rot[v]:
                row.append(d)
                row.extend(after.get(d, ()))
                row.extend(before.get(d, ()))
            rot.append(row)
        h = EmbeddedGraph(rot, mate)
        code = from_darts(h.to_darts())
        if genus(code) != 0:
            raise ExpansionGenusError(f"expansion {solution}/{choices} is not planar")
        yield Expansion(tuple(solution), choices, code)


def _prev_dart(g: EmbeddedGraph, d: int) -> int:
    r = g.rot[g.vert[d]]
    return r[(r.index(d) - 1) % len(r)]


def expand_seed(seed: EmbeddedGraph) -> Pdstor:
    """All shadows whose simple graph is ``seed``, deduplicated."""
    store = Pdstor()
    if seed.n == 1 and not seed.mate:
        store.add(twist())
        return store
    if seed.n == 2 and len(seed.mate) == 2:
        store.add(hopf())
    system = build_constraints(prepare_graph(seed))
    for sol in solve_branch_and_bound(system):
        for ex in apply_expansions(system, sol):
            store.add(ex.shadow)
    return store


def expansion_enumerate(n: int, seeds: Iterable[EmbeddedGraph] | None = None) -> Pdstor:
    """All ``n``-crossing shadows, one seed graph at a time.

    Shadows from different seeds reduce to different simple graphs, so the
    per-seed stores are concatenated without cross-checks.
    """
    if seeds is None:
        seeds = simple_planar_seeds(n)
    out = Pdstor()
    for seed in seeds:
        for key, code in expand_seed(seed)._keys.items():
            out.add_unchecked(code, key)
    return out


# ---------------------------------------------------------------------------
# seed graphs


def planar_embeddings(rot_lists: Sequence[Sequence[int]]) -> list[EmbeddedGraph]:
    """Genus-0 rotation systems of a connected simple graph, up to reflection.

    ``rot_lists[v]`` lists the neighbours of ``v`` in any order.
    """
    n = len(rot_lists)
    choices = []
    for nbrs in rot_lists:
        nbrs = list(nbrs)
        if len(nbrs) <= 2:
            choices.append([nbrs])
        else:
            first, rest = nbrs[0], nbrs[1:]
            choices.append([[first, *p] for p in itertools.permutations(rest)])
    m = sum(len(x) for x in rot_lists) // 2
    faces_needed = 2 - n + m
    seen = set()
    out = []
    for combo in itertools.product(*choices):
        g = graph_from_rotation(combo)
        if len(g.faces()) != faces_needed and m > 0:
            continue
        key = embedded_canonical_key(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def _embedding_count(rot_lists) -> int:
    total = 1
    for nbrs in rot_lists:
        total *= factorial(max(len(nbrs) - 1, 0))
    return total


def simple_planar_seeds(n: int) -> list[EmbeddedGraph]:
    """Connected simple planar embedded graphs with ``n`` vertices and degree <= 4.

    Abstract graphs come from the networkx graph atlas (up to 7 vertices);
    each graph's planar rotation systems are enumerated and deduplicated.
    """
    import networkx as nx

    if n > 7:
        raise ValueError("the graph atlas only covers graphs with at most 7 vertices")
    if n == 1:
        return [EmbeddedGraph([[]], {})]
    seeds = []
    for gr in nx.graph_atlas_g():
        if gr.number_of_nodes() != n or not nx.is_connected(gr):
            continue
        if max(d for _, d in gr.degree()) > 4:
            continue
        if not nx.check_planarity(gr)[0]:
            continue
        nodes = sorted(gr.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        rot_lists = [[idx[w] for w in sorted(gr.neighbors(v))] for v in nodes]
        seeds.extend(planar_embeddings(rot_lists))
    return seeds


def seeds_from_shadows(shadows: Iterable[PdCode]) -> list[EmbeddedGraph]:
    """Distinct simple graphs obtained by reducing the given shadows."""
    seen = {}
    for s in shadows:
        g, _ = reduce_to_simple(s)
        g = graph_from_rotation(g.neighbour_rotation())
        key = embedded_canonical_key(g)
        seen.setdefault(key, g)
    return list(seen.values())
