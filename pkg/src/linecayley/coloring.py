"""Proper colorings of the line Cayley graphs.

The layered coloring (one class per level of the last coordinate, skewed
along any connection-set vector) always uses exactly q colors, and any chosen
line gives a q-clique, so the chromatic number of a nonempty instance is q
without search.  Backtracking and exhaustive partition enumeration exist as
independent oracles for small instances.
"""

from dataclasses import dataclass

from .errors import BudgetExceeded, EnumerationLimitExceeded
from .field import decode, encode, inv_mod, vec_add, vec_scale


@dataclass(frozen=True)
class Coloring:
    num_colors: int
    class_of: tuple

    def classes(self):
        """Color classes as sorted id lists, ordered by smallest member."""
        groups = {}
        for v, c in enumerate(self.class_of):
            groups.setdefault(c, []).append(v)
        return sorted(groups.values(), key=lambda g: g[0])

    def class_sizes(self):
        return [len(c) for c in self.classes()]

    def to_json_dict(self):
        return {"num_colors": self.num_colors, "classes": self.classes()}

    @classmethod
    def from_json_dict(cls, d):
        classes = d["classes"]
        size = sum(len(c) for c in classes)
        class_of = [None] * size
        for i, cl in enumerate(classes):
            for v in cl:
                class_of[v] = i
        if any(c is None for c in class_of):
            raise ValueError("classes do not cover a contiguous vertex range")
        return cls(int(d["num_colors"]), tuple(class_of))


def coloring_from_classes(classes, num_vertices, num_colors=None):
    class_of = [None] * num_vertices
    for i, cl in enumerate(classes):
        for v in cl:
            if class_of[v] is not None:
                raise ValueError("classes overlap")
            class_of[v] = i
    if any(c is None for c in class_of):
        raise ValueError("classes do not cover every vertex")
    return Coloring(num_colors or len(classes), tuple(class_of))


def coset_coloring(g, v=None):
    """Color x by the level of its last coordinate relative to v.

    Class lam consists of the points with x[n-1] = lam * v[n-1]; these are the
    translates of the hyperplane {x[n-1] = 0} along v, each independent
    because the connection set avoids that hyperplane.
    """
    s = g.connection
    if v is None:
        if not s.members:
            raise ValueError("empty connection set; pass an explicit vector")
        v = min(s.members, key=lambda w: encode(w, g.q))
    else:
        v = tuple(a % g.q for a in v)
        if v not in s.members:
            raise ValueError("vector is not in the connection set")
    winv = inv_mod(v[-1], g.q)
    class_of = tuple(
        decode(i, g.q, g.n)[-1] * winv % g.q for i in range(g.num_vertices)
    )
    return Coloring(g.q, class_of)


def is_proper(g, coloring):
    if len(coloring.class_of) != g.num_vertices or None in coloring.class_of:
        raise ValueError("coloring does not cover every vertex")
    class_of = coloring.class_of
    for s in g._half:
        table = g.shift_table(s)
        for u in range(g.num_vertices):
            if class_of[u] == class_of[table[u]]:
                return False
    return True


def line_clique(g, line, w=None):
    """The q-clique {lam * line + w : lam in F_q} for a chosen line.

    w must lie in the hyperplane x[n-1] = 0; the translates over all such w
    partition the vertex set into q^(n-1) cliques.
    """
    line = tuple(int(a) % g.q for a in line)
    if line not in g.connection.lines:
        raise ValueError("line was not chosen in the connection set")
    if w is None:
        w = (0,) * g.n
    else:
        w = tuple(int(a) % g.q for a in w)
    if w[-1] != 0:
        raise ValueError("translation vector must have last coordinate 0")
    return tuple(
        sorted(
            encode(vec_add(vec_scale(lam, line, g.q), w, g.q), g.q)
            for lam in range(g.q)
        )
    )


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    exact: bool
    coloring: Coloring
    clique: tuple
    nodes: int

    @property
    def value(self):
        return self.lower if self.exact else None


def _greedy_coloring(adj, order):
    class_of = [None] * len(adj)
    used = 0
    for v in order:
        taken = {class_of[w] for w in _bits(adj[v]) if class_of[w] is not None}
        c = 0
        while c in taken:
            c += 1
        class_of[v] = c
        used = max(used, c + 1)
    return used, class_of


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _try_color(adj, k, budget):
    """Find a proper k-coloring by backtracking, or prove none exists.

    Returns (status, class_of, nodes) with status one of "found", "none",
    "exhausted".  Vertices are picked by decreasing saturation, ties by id;
    a fresh color is only tried once per node to break color symmetry.
    """
    n = len(adj)
    class_of = [None] * n
    neighbor_colors = [set() for _ in range(n)]
    nodes = 0

    def pick():
        best = None
        for v in range(n):
            if class_of[v] is None:
                key = -len(neighbor_colors[v])
                if best is None or key < best[0]:
                    best = (key, v)
        return None if best is None else best[1]

    def assign(v, c):
        class_of[v] = c
        touched = []
        for w in _bits(adj[v]):
            if class_of[w] is None and c not in neighbor_colors[w]:
                neighbor_colors[w].add(c)
                touched.append(w)
        return touched

    def unassign(v, c, touched):
        class_of[v] = None
        for w in touched:
            neighbor_colors[w].discard(c)

    def solve(used):
        nonlocal nodes
        v = pick()
        if v is None:
            return True
        limit = min(k, used + 1)
        for c in range(limit):
            if c in neighbor_colors[v]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("coloring search budget exhausted")
            touched = assign(v, c)
            if solve(max(used, c + 1)):
                return True
            unassign(v, c, touched)
        return False

    try:
        ok = solve(0)
    except BudgetExceeded:
        return "exhausted", None, nodes
    return ("found", class_of, nodes) if ok else ("none", None, nodes)


def exact_chromatic_number(g, budget=10 ** 6, use_structure=True):
    """Chromatic number with witnesses.

    With use_structure the chosen-line clique (lower bound q) and the layered
    coloring (upper bound q) settle every nonempty instance without search.
    Without it, plain backtracking runs per candidate color count; if the
    budget runs out the result carries proven bounds and exact=False.
    """
    q = g.q
    if not g.connection.lines:
        coloring = Coloring(1, (0,) * g.num_vertices)
        return ChromaticResult(1, 1, True, coloring, (), 0)
    if use_structure:
        clique = tuple(sorted(line_clique(g, g.connection.lines[0])))
        coloring = coset_coloring(g)
        return ChromaticResult(q, q, True, coloring, clique, 0)
    adj = g.adjacency_masks()
    order = sorted(range(g.num_vertices))
    greedy_used, greedy_classes = _greedy_coloring(adj, order)
    total_nodes = 0
    k = 1
    while k <= greedy_used:
        status, class_of, nodes = _try_color(adj, k, budget - total_nodes)
        total_nodes += nodes
        if status == "found":
            return ChromaticResult(
                k, k, True, Coloring(k, tuple(class_of)), (), total_nodes
            )
        if status == "exhausted":
            return ChromaticResult(
                k,
                greedy_used,
                False,
                Coloring(greedy_used, tuple(greedy_classes)),
                (),
                total_nodes,
            )
        k += 1
    raise AssertionError("greedy coloring bound was not reachable")


def enumerate_proper_partitions(g, max_classes=None, limit=10 ** 6):
    """Yield every proper partition into at most max_classes classes once.

    Partitions are canonical: vertex 0 opens class 0 and new classes appear
    in first-use order, so relabelings of the same partition are not
    repeated.  Raises when more than limit partitions would be yielded.
    """
    if max_classes is None:
        max_classes = g.q
    adj = g.adjacency_masks()
    n = g.num_vertices
    class_of = [None] * n
    class_masks = []
    yielded = 0

    def rec(v):
        nonlocal yielded
        if v == n:
            yielded += 1
            if yielded > limit:
                raise EnumerationLimitExceeded(
                    f"more than {limit} proper partitions"
                )
            yield Coloring(len(class_masks), tuple(class_of))
            return
        for c in range(len(class_masks)):
            if class_masks[c] & adj[v]:
                continue
            class_of[v] = c
            class_masks[c] |= 1 << v
            yield from rec(v + 1)
            class_masks[c] ^= 1 << v
        if len(class_masks) < max_classes:
            class_of[v] = len(class_masks)
            class_masks.append(1 << v)
            yield from rec(v + 1)
            class_masks.pop()
        class_of[v] = None

    yield from rec(0)


def plus_zero_recolor(coloring):
    """Move vertex 0 into a fresh singleton class.

    Properness is preserved; the class count grows by one.
    """
    class_of = list(coloring.class_of)
    class_of[0] = coloring.num_colors
    return Coloring(coloring.num_colors + 1, tuple(class_of))
