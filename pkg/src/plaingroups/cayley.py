"""Radius-bounded balls of the directed Cayley graph, and brute-force checks on them.

Vertices are normal-form words, so every geometric statement can be replayed
through reduction. Because normal forms are the shortest representatives,
the ball of radius r is exactly the set of irreducible words of length <= r.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import LemmaViolation, OutOfBall, PreconditionFailed, SizeBudgetExceeded
from .groups import GroupStatus, group_status, inverse_word
from .system import EMPTY, RewritingSystem, Word

DEFAULT_MAX_VERTICES = 10**6


def _key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


@dataclass
class CayleyBall:
    system: RewritingSystem
    radius: int
    vertices: list[Word]
    """In BFS discovery order; ``vertices[0]`` is the root (empty word)."""
    index: dict[Word, int]
    out: list[list[tuple[int, int]]]
    """out[v] = [(label, target), ...] sorted by label."""
    status: GroupStatus
    _reverse: list[list[int]] | None = field(default=None, repr=False)

    @property
    def root(self) -> Word:
        return EMPTY

    @property
    def edges(self) -> list[tuple[Word, Word, int]]:
        return [
            (self.vertices[v], self.vertices[t], x) for v, succ in enumerate(self.out) for x, t in succ
        ]

    def has_edge(self, g: Word, h: Word) -> bool:
        t = self.index[h]
        return any(target == t for _, target in self.out[self.index[g]])

    def reverse(self) -> list[list[int]]:
        if self._reverse is None:
            rev: list[list[int]] = [[] for _ in self.vertices]
            for v, succ in enumerate(self.out):
                for _, t in succ:
                    rev[t].append(v)
            self._reverse = rev
        return self._reverse

    def distances_from(self, v: int) -> list[int]:
        return _bfs([[t for _, t in succ] for succ in self.out], v)

    def distances_to(self, v: int) -> list[int]:
        return _bfs(self.reverse(), v)


def _bfs(adj: list[list[int]], start: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for t in adj[v]:
            if dist[t] < 0:
                dist[t] = dist[v] + 1
                queue.append(t)
    return dist


@dataclass(frozen=True)
class Dipath:
    vertices: tuple[Word, ...]
    labels: tuple[int, ...]


def build_ball(
    system: RewritingSystem,
    radius: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    status: GroupStatus | None = None,
) -> CayleyBall:
    if not (system.flags.monadic and system.flags.normalized):
        raise PreconditionFailed("normalized monadic system")
    if status is None:
        status = group_status(system)
    vertices: list[Word] = [EMPTY]
    index: dict[Word, int] = {EMPTY: 0}
    out: list[list[tuple[int, int]]] = [[]]
    v = 0
    while v < len(vertices):
        word = vertices[v]
        for x in range(system.size):
            target = system.normal_form(word + (x,))
            if len(target) > radius:
                continue
            t = index.get(target)
            if t is None:
                if len(vertices) >= max_vertices:
                    raise SizeBudgetExceeded(max_vertices)
                t = index[target] = len(vertices)
                vertices.append(target)
                out.append([])
            out[v].append((x, t))
        v += 1
    return CayleyBall(system, radius, vertices, index, out, status)


def _require(ball: CayleyBall, *words: Word) -> None:
    for w in words:
        if tuple(w) not in ball.index:
            raise OutOfBall(f"{ball.system.format_word(w, '1')} is not a ball vertex")


def geodesic(ball: CayleyBall, g: Word, h: Word) -> Dipath:
    """The unique shortest dipath from ``g`` to ``h``.

    Every shortest path is counted; more than one raises LemmaViolation.
    """
    g, h = tuple(g), tuple(h)
    _require(ball, g, h)
    if ball.status.is_group != "yes":
        raise PreconditionFailed("group")
    sys = ball.system
    span = len(sys.normal_form(inverse_word(sys, ball.status, g) + h))
    if span + max(len(g), len(h)) > ball.radius:
        raise OutOfBall("geodesic may leave the ball")
    start, goal = ball.index[g], ball.index[h]
    dist = {start: 0}
    count = {start: 1}
    parent: dict[int, tuple[int, int]] = {}
    layer = [start]
    while layer and goal not in dist:
        nxt = []
        for v in layer:
            for x, t in ball.out[v]:
                if t not in dist:
                    dist[t] = dist[v] + 1
                    count[t] = count[v]
                    parent[t] = (v, x)
                    nxt.append(t)
                elif dist[t] == dist[v] + 1:
                    count[t] += count[v]
        layer = nxt
    if goal not in dist:
        raise OutOfBall("target unreachable inside the ball")
    if count[goal] > 1:
        raise LemmaViolation(f"{count[goal]} geodesics between the same vertices")
    path, labels = [goal], []
    while path[-1] != start:
        v, x = parent[path[-1]]
        labels.append(x)
        path.append(v)
    path.reverse()
    labels.reverse()
    if len(labels) != span:
        raise LemmaViolation("geodesic length differs from the normal form of g⁻¹h")
    return Dipath(tuple(ball.vertices[v] for v in path), tuple(labels))


@dataclass(frozen=True)
class ConfinementReport:
    geodesic: Dipath
    max_len: int
    paths_checked: int


def check_path_confinement(
    ball: CayleyBall, g: Word, h: Word, max_len: int | None = None
) -> ConfinementReport:
    """Every dipath from g to h must visit the geodesic's vertices in order.

    Enumerates all dipaths of length <= max_len inside the ball.
    """
    g, h = tuple(g), tuple(h)
    if g == h:
        raise PreconditionFailed("g != h")
    geo = geodesic(ball, g, h)
    if max_len is None:
        max_len = len(geo.labels) + 2 * ball.system.max_lhs_len
    targets = [ball.index[v] for v in geo.vertices]
    goal = targets[-1]
    to_goal = ball.distances_to(goal)
    checked = 0
    # stack entries: (vertex, steps taken, geodesic vertices matched so far)
    stack = [(targets[0], 0, 1)]
    while stack:
        v, steps, matched = stack.pop()
        if v == goal:
            checked += 1
            if matched != len(targets):
                raise LemmaViolation(
                    f"a dipath of length {steps} skips geodesic vertex "
                    f"{ball.system.format_word(ball.vertices[targets[matched]], '1')}"
                )
        if steps == max_len:
            continue
        for _, t in ball.out[v]:
            d = to_goal[t]
            if d < 0 or steps + 1 + d > max_len:
                continue
            m = matched + 1 if matched < len(targets) and t == targets[matched] else matched
            stack.append((t, steps + 1, m))
    return ConfinementReport(geo, max_len, checked)


def immediate_dominators(adj: list[list[int]], root: int) -> list[int]:
    """Immediate dominator of every vertex reachable from ``root`` (-1 elsewhere).

    Iterative algorithm of Cooper, Harvey and Kennedy over reverse postorder.
    """
    n = len(adj)
    order: list[int] = []
    seen = [False] * n
    seen[root] = True
    stack = [(root, iter(adj[root]))]
    while stack:
        v, it = stack[-1]
        for t in it:
            if not seen[t]:
                seen[t] = True
                stack.append((t, iter(adj[t])))
                break
        else:
            stack.pop()
            order.append(v)
    order.reverse()
    rpo = {v: i for i, v in enumerate(order)}
    preds: list[list[int]] = [[] for _ in range(n)]
    for v in order:
        for t in adj[v]:
            preds[t].append(v)
    idom = [-1] * n
    idom[root] = root

    def intersect(a: int, b: int) -> int:
        while a != b:
            while rpo[a] > rpo[b]:
                a = idom[a]
            while rpo[b] > rpo[a]:
                b = idom[b]
        return a

    changed = True
    while changed:
        changed = False
        for v in order[1:]:
            new = -1
            for p in preds[v]:
                if idom[p] < 0:
                    continue
                new = p if new < 0 else intersect(p, new)
            if idom[v] != new:
                idom[v] = new
                changed = True
    return idom


@dataclass(frozen=True)
class SingleEdgeReport:
    unseparated_pairs: int
    """Ordered pairs g != h that no third vertex separates (all must be edges)."""
    roots: int


def check_single_edge(ball: CayleyBall) -> SingleEdgeReport:
    """Two internally disjoint dipaths g -> h force a single edge g -> h.

    For non-adjacent g, h two such paths exist exactly when no third vertex
    separates them, i.e. when g is h's immediate dominator from root g.
    """
    adj = [[t for _, t in succ] for succ in ball.out]
    pairs = 0
    for g in range(len(ball.vertices)):
        idom = immediate_dominators(adj, g)
        direct = set(adj[g])
        for h, d in enumerate(idom):
            if h == g or d != g:
                continue
            if h not in direct:
                raise LemmaViolation(
                    "disjoint dipaths without a direct edge: "
                    f"{ball.system.format_word(ball.vertices[g], '1')} -> "
                    f"{ball.system.format_word(ball.vertices[h], '1')}"
                )
            pairs += 1
    return SingleEdgeReport(pairs, len(ball.vertices))


def check_simple_graph(ball: CayleyBall) -> None:
    """No loops, no multi-edges, no letter equal to 1, distinct letters distinct."""
    sys = ball.system
    letters = [sys.normal_form((x,)) for x in range(sys.size)]
    if any(w == EMPTY for w in letters):
        raise LemmaViolation("a letter represents the identity")
    if len(set(letters)) != len(letters):
        raise LemmaViolation("two letters represent the same element")
    for v, succ in enumerate(ball.out):
        targets = [t for _, t in succ]
        if v in targets:
            raise LemmaViolation("loop in Cayley graph")
        if len(set(targets)) != len(targets):
            raise LemmaViolation("multi-edge in Cayley graph")


def multiplication_table(ball: CayleyBall, max_len: int) -> dict[Word, dict[Word, Word]]:
    sys = ball.system
    elements = [v for v in ball.vertices if len(v) <= max_len]
    table: dict[Word, dict[Word, Word]] = {}
    for u in elements:
        row = table[u] = {}
        for v in elements:
            w = sys.normal_form(u + v)
            if w not in ball.index:
                raise OutOfBall(f"product {sys.format_word(w, '1')} leaves the ball")
            row[v] = w
    return table


def ball_order(ball: CayleyBall, word: Word, max_order: int) -> int | None:
    """Order of ``word`` found by walking its label from the root until returning.

    None when the walk leaves the ball or no cycle closes within ``max_order``.
    """
    v = 0
    for n in range(1, max_order + 1):
        for x in word:
            nxt = next((t for label, t in ball.out[v] if label == x), None)
            if nxt is None:
                return None
            v = nxt
        if v == 0:
            return n
    return None


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(ball: CayleyBall) -> str:
    sys = ball.system
    names = [_dot_id(sys.format_word(v, "1")) for v in ball.vertices]
    lines = ["digraph cayley {"]
    lines += [f"  {n};" for n in names]
    edges = sorted(
        ((_key(ball.vertices[v]), _key(ball.vertices[t]), x, v, t) for v, succ in enumerate(ball.out) for x, t in succ)
    )
    for _, _, x, v, t in edges:
        lines.append(f"  {names[v]} -> {names[t]} [label={_dot_id(sys.alphabet[x])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
