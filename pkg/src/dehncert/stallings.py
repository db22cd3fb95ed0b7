"""Folded subgroup graphs and the queries the certificate search needs.

A finitely generated subgroup of a free group is represented by its
folded core graph: basepoint loops spell exactly the subgroup
elements.  On top of membership this module can rewrite a member over
a reduced basis, put any word into its minimal double coset form with
explicit witnesses, and verify malnormality with a conjugator witness
on failure.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .nielsen import signed_family
from .words import (
    Word,
    free_reduce,
    inverse,
    is_reduced,
    letter_key,
)


class CoreGraph:
    """Folded core graph with vertices 0..n-1 and basepoint 0.

    Vertex labels are canonical: breadth-first discovery order from
    the basepoint with edges taken in letter order, so two structurally
    equal graphs compare equal.  Immutable after construction.
    """

    __slots__ = ("_maps", "_key")

    def __init__(self, maps):
        self._maps = tuple(dict(d) for d in maps)
        self._key = tuple(tuple(sorted(d.items())) for d in self._maps)

    @property
    def basepoint(self) -> int:
        return 0

    @property
    def vertex_count(self) -> int:
        return len(self._maps)

    def step(self, v: int, s: int):
        return self._maps[v].get(s)

    def trace(self, word, start: int | None = None):
        """Endpoint of the path labeled by word, or None if it dies."""
        v = self.basepoint if start is None else start
        for s in word:
            v = self._maps[v].get(s)
            if v is None:
                return None
        return v

    def degree(self, v: int) -> int:
        return len(self._maps[v])

    def letters(self, v: int):
        return sorted(self._maps[v], key=letter_key)

    def edges(self):
        for u, m in enumerate(self._maps):
            for s, v in sorted(m.items()):
                if s > 0:
                    yield u, s, v

    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    def __eq__(self, other):
        return isinstance(other, CoreGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"CoreGraph({self.vertex_count} vertices, {self.edge_count()} edges)"

    def as_dict(self, alphabet) -> dict:
        return {
            "vertices": self.vertex_count,
            "basepoint": self.basepoint,
            "edges": [
                [u, v, alphabet.format((s,))] for u, s, v in self.edges()
            ],
        }


def build_core(words) -> CoreGraph:
    """Fold a wedge of loops into the core graph of the subgroup.

    Every generator must be freely reduced; empty generators are
    ignored.  Degree one vertices other than the basepoint are pruned
    after folding, and the result is canonically relabeled.
    """
    words = [tuple(w) for w in words]
    for w in words:
        assert is_reduced(w), "generators must be freely reduced"

    # wedge of loops at vertex 0, multi-edges allowed until folded
    adj: list[dict] = [{}]

    def add_edge(u, s, v):
        adj[u].setdefault(s, set()).add(v)
        adj[v].setdefault(-s, set()).add(u)

    for w in words:
        prev = 0
        for i, s in enumerate(w):
            if i == len(w) - 1:
                nxt = 0
            else:
                adj.append({})
                nxt = len(adj) - 1
            add_edge(prev, s, nxt)
            prev = nxt

    parent = list(range(len(adj)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    queue = deque(range(len(adj)))
    while queue:
        v = find(queue.popleft())
        for s in list(adj[v]):
            targets = {find(t) for t in adj[v].get(s, ())}
            adj[v][s] = targets
            if len(targets) < 2:
                continue
            keep, fold = sorted(targets)[:2]
            parent[fold] = keep
            for s2, ts in adj[fold].items():
                adj[keep].setdefault(s2, set()).update(ts)
            adj[fold] = {}
            queue.append(keep)
            queue.append(v)
            break

    base = find(0)
    maps = {}
    for v in range(len(adj)):
        if find(v) != v:
            continue
        maps[v] = {}
        for s, ts in adj[v].items():
            roots = {find(t) for t in ts}
            assert len(roots) <= 1
            if roots:
                maps[v][s] = roots.pop()

    # prune hanging trees: the basepoint is the only vertex allowed
    # degree below two
    pruned = True
    while pruned:
        pruned = False
        for v in list(maps):
            if v != base and len(maps[v]) == 1:
                ((s, t),) = maps[v].items()
                del maps[v]
                del maps[t][-s]
                pruned = True

    # canonical relabel by breadth-first order, letters sorted
    order = {base: 0}
    bfs = deque([base])
    while bfs:
        v = bfs.popleft()
        for s in sorted(maps[v], key=letter_key):
            t = maps[v][s]
            if t not in order:
                order[t] = len(order)
                bfs.append(t)
    assert len(order) == len(maps), "core graph is connected"
    out = [dict() for _ in order]
    for v, m in maps.items():
        out[order[v]] = {s: order[t] for s, t in m.items()}
    return CoreGraph(out)


def is_member(graph: CoreGraph, x) -> bool:
    """Whether x lies in the subgroup the graph represents."""
    return graph.trace(free_reduce(x)) == graph.basepoint


def shortest_labels(graph: CoreGraph):
    """Shortlex-least path label from the basepoint to every vertex."""
    labels = {graph.basepoint: ()}
    bfs = deque([graph.basepoint])
    while bfs:
        v = bfs.popleft()
        for s in graph.letters(v):
            t = graph.step(v, s)
            if t not in labels:
                labels[t] = labels[v] + (s,)
                bfs.append(t)
    return labels


def express_in_basis(graph: CoreGraph, words, x):
    """Rewrite a member of the subgroup over a reduced basis.

    Returns the unique reduced combination (a sequence of signed
    family elements) whose product is x; `nielsen.reduce_combination`
    replays it back to x.  The decoder walks x left to right: each
    factor must absorb the pending cancelled block, contribute a
    nonempty stem that matches x literally, and leave the next block
    pending.  Over a reduced basis that structure is forced, so the
    search backtracks only past dead ends.

    Raises ValueError if x is not a member.
    """
    x = free_reduce(x)
    if not is_member(graph, x):
        raise ValueError("not a member of the subgroup")
    fam = signed_family(words)
    dead = set()

    def search(pos, pending, prev):
        if pos == len(x) and not pending:
            return []
        key = (pos, pending, prev)
        if key in dead:
            return None
        for v in fam:
            if prev is not None and v == inverse(prev):
                continue
            k = len(pending)
            if len(v) <= k or v[:k] != inverse(pending):
                continue
            rest = v[k:]
            for twig_len in range(len(rest)):
                stem = rest[: len(rest) - twig_len]
                if x[pos : pos + len(stem)] != stem:
                    continue
                tail = search(pos + len(stem), rest[len(rest) - twig_len :], v)
                if tail is not None:
                    return [v] + tail
        dead.add(key)
        return None

    combo = search(0, (), None)
    if combo is None:
        raise ValueError("member admits no combination over the given basis")
    return combo


def _suffix_endpoints(graph: CoreGraph, x):
    """Vertex from which each suffix x[k:] runs into the basepoint.

    Folded graphs are backward deterministic, so each suffix has at
    most one such vertex; entries are None where the trace dies.
    """
    out = [None] * (len(x) + 1)
    v = graph.basepoint
    out[len(x)] = v
    for k in range(len(x) - 1, -1, -1):
        v = graph.step(v, -x[k]) if v is not None else None
        out[k] = v
    return out


def _prefix_endpoints(graph: CoreGraph, x):
    out = [None] * (len(x) + 1)
    v = graph.basepoint
    out[0] = v
    for j, s in enumerate(x):
        v = graph.step(v, s) if v is not None else None
        out[j + 1] = v
    return out


def _seam_pairs(graph: CoreGraph, seeds):
    """All vertex pairs reachable from the seeds by a common word.

    seeds maps (p, q) to (cut, word) bookkeeping; the result extends
    it to everything reachable by synchronized steps, keeping the
    first (breadth-first, letter ordered) discovery for witnesses.
    """
    reach = dict(seeds)
    bfs = deque(seeds)
    while bfs:
        p, q = bfs.popleft()
        cut, word = reach[(p, q)]
        for s in graph.letters(p):
            pt = graph.step(p, s)
            qt = graph.step(q, s)
            if qt is None or (pt, qt) in reach:
                continue
            reach[(pt, qt)] = (cut, word + (s,))
            bfs.append((pt, qt))
    return reach


def w_free_normal_form(graph: CoreGraph, x):
    """Minimal double coset form of x: (core, left witness, right witness).

    core has minimal length among all elements g x h with g and h in
    the subgroup, shortlex least among those; the witnesses satisfy
    x = left * core * right in the free group, with both in the
    subgroup.

    The search runs over a layered automaton whose accepted words are
    exactly the double coset elements: a prefix read inside the graph
    from the basepoint, an optional middle block x[j:k] entered where
    the traced prefix of x ends and left where the traced suffix
    starts, or a seam jump between two vertices reachable from some
    (prefix endpoint, suffix endpoint) pair by a common cancelled
    word.  Cheapest accepted word first, ties broken shortlex.
    """
    x = free_reduce(x)
    base = graph.basepoint
    pre = _prefix_endpoints(graph, x)
    suf = _suffix_endpoints(graph, x)
    seeds = {}
    for c in range(len(x) + 1):
        if pre[c] is not None and suf[c] is not None:
            key = (pre[c], suf[c])
            if key not in seeds:
                seeds[key] = (c, ())
    seam = _seam_pairs(graph, seeds)

    # states: ("L", vertex) reading the prefix, ("M", j) inside x,
    # ("R", vertex) reading the suffix; epsilon moves do the splicing
    def sort_key(word):
        return (len(word), tuple(letter_key(s) for s in word))

    start = ("L", base)
    best = {}
    counter = 0
    heap = [((0, ()), counter, start, ((), None, None, None))]
    # info: (prefix word A, middle cut j, middle exit k or seam, suffix word B)
    while heap:
        (cost, lex), _, state, info = heapq.heappop(heap)
        if state in best:
            continue
        best[state] = (cost, lex, info)
        a_word, entry, seam_info, b_word = info

        def push(nstate, ninfo, nword):
            nonlocal counter
            counter += 1
            heapq.heappush(
                heap, ((len(nword), tuple(letter_key(s) for s in nword)), counter, nstate, ninfo)
            )

        word = _assemble(x, info)
        kind, at = state
        if kind == "L":
            for j in range(len(x) + 1):
                if pre[j] == at and ("M", j) not in best:
                    push(("M", j), (a_word, j, None, ()), word)
            for (p, q), (c, qword) in seam.items():
                if p == at and ("R", q) not in best:
                    push(("R", q), (a_word, None, (c, qword), ()), word)
            for s in graph.letters(at):
                t = graph.step(at, s)
                if ("L", t) not in best:
                    push(("L", t), (a_word + (s,), None, None, None), word + (s,))
        elif kind == "M":
            j = entry
            k = at
            if suf[k] is not None and ("R", suf[k]) not in best:
                push(("R", suf[k]), (a_word, j, k, ()), word)
            if k < len(x) and ("M", k + 1) not in best:
                push(("M", k + 1), (a_word, j, None, ()), word + (x[k],))
        else:
            if at == base:
                return _extract(graph, x, info)
            for s in graph.letters(at):
                t = graph.step(at, s)
                if ("R", t) not in best:
                    push(("R", t), (a_word, entry, seam_info, b_word + (s,)), word + (s,))
    raise AssertionError("unreachable: x itself is always accepted")


def _assemble(x, info):
    a_word, entry, exit_or_seam, b_word = info
    middle = ()
    if entry is not None and isinstance(exit_or_seam, int):
        middle = x[entry:exit_or_seam]
    elif entry is not None and exit_or_seam is None:
        middle = ()
    out = a_word + middle
    if b_word is not None:
        out = out + (b_word if isinstance(b_word, tuple) else ())
    return out


def _extract(graph, x, info):
    a_word, entry, exit_or_seam, b_word = info
    if entry is not None:
        j, k = entry, exit_or_seam
        core = a_word + x[j:k] + b_word
        left = free_reduce(x[:j] + inverse(a_word))
        right = free_reduce(inverse(b_word) + x[k:])
    else:
        c, qword = exit_or_seam
        core = a_word + b_word
        left = free_reduce(x[:c] + qword + inverse(a_word))
        right = free_reduce(inverse(b_word) + inverse(qword) + x[c:])
    assert is_member(graph, left) and is_member(graph, right)
    assert free_reduce(left + core + right) == x
    return core, left, right


@dataclass(frozen=True)
class MalnormalityResult:
    """Outcome of the malnormality test; truthy when malnormal."""

    ok: bool
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_malnormal(graph: CoreGraph) -> MalnormalityResult:
    """Fiber product malnormality test with a conjugator witness.

    The subgroup is malnormal exactly when every component of the
    pairwise product graph that touches no diagonal vertex is a tree.
    A cycle in an off diagonal component yields a conjugator outside
    the subgroup whose conjugate intersects it nontrivially; the
    shortlex least such conjugator over all offending components is
    returned as the witness.
    """
    n = graph.vertex_count
    labels = shortest_labels(graph)

    parent = list(range(n * n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    edge_count = [0] * (n * n)
    for p in range(n):
        for q in range(n):
            for s in graph.letters(p):
                if s < 0:
                    continue
                pt, qt = graph.step(p, s), graph.step(q, s)
                if qt is None:
                    continue
                union(p * n + q, pt * n + qt)
                edge_count[p * n + q] += 1

    comp_edges = {}
    comp_vertices = {}
    diagonal = set()
    for p in range(n):
        for q in range(n):
            root = find(p * n + q)
            comp_edges[root] = comp_edges.get(root, 0) + edge_count[p * n + q]
            comp_vertices[root] = comp_vertices.get(root, 0) + 1
            if p == q:
                diagonal.add(root)

    witness = None
    for p in range(n):
        for q in range(n):
            root = find(p * n + q)
            if root in diagonal or comp_edges[root] < comp_vertices[root]:
                continue
            g = free_reduce(labels[p] + inverse(labels[q]))
            if witness is None or (len(g), tuple(map(letter_key, g))) < (
                len(witness),
                tuple(map(letter_key, witness)),
            ):
                witness = g
    if witness is None:
        return MalnormalityResult(True)
    assert not is_member(graph, witness)
    return MalnormalityResult(False, witness)
