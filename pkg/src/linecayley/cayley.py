"""Connection sets sampled from unions of lines, and their Cayley graphs."""

import random

from .errors import InvariantViolation
from .field import decode, encode, require_odd_prime, vec_add, vec_scale, vec_sub
from .geometry import line_points, line_universe, proj_rep


class ConnectionSet:
    """The symmetric set S = union of chosen punctured lines.

    Membership is exposed both as a set of vectors and as a bitmap over
    vertex ids, so adjacency tests cost one lookup.
    """

    def __init__(self, q, n, lines):
        require_odd_prime(q)
        if n < 2:
            raise ValueError("dimension must be at least 2")
        self.q = q
        self.n = n
        canonical = []
        seen = set()
        for line in lines:
            line = tuple(int(a) % q for a in line)
            if len(line) != n:
                raise ValueError(f"line {line} has wrong dimension")
            rep = proj_rep(line, q)
            if rep[-1] == 0:
                raise ValueError(
                    f"line {line} lies inside the hyperplane x[{n - 1}] = 0"
                )
            if rep in seen:
                raise ValueError(f"duplicate line {line}")
            seen.add(rep)
            canonical.append(rep)
        self.lines = tuple(sorted(canonical))
        members = set()
        for rep in self.lines:
            members.update(line_points(rep, q))
        self.members = frozenset(members)
        bitmap = bytearray(q ** n)
        for v in members:
            bitmap[encode(v, q)] = 1
        self._bitmap = bytes(bitmap)
        self._validate()

    @classmethod
    def sample(cls, q, n, p=0.5, seed=None):
        """Include each admissible line independently with probability p.

        All randomness comes from the seed; decisions are made in the
        canonical enumeration order of the line universe, so a given seed
        reproduces the same set on any platform.
        """
        require_odd_prime(q)
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if not 0 <= p <= 1:
            raise ValueError(f"probability {p} out of range [0, 1]")
        if seed is None:
            raise ValueError("seed is required for sampling")
        rng = random.Random(seed)
        chosen = [rep for rep in line_universe(q, n) if rng.random() < p]
        return cls(q, n, chosen)

    def _validate(self):
        q, members = self.q, self.members
        if (0,) * self.n in members:
            raise InvariantViolation("connection set contains 0")
        if len(members) != (q - 1) * len(self.lines):
            raise InvariantViolation("chosen lines overlap")
        for v in members:
            if v[-1] == 0:
                raise InvariantViolation("connection set meets the excluded hyperplane")
            for lam in range(2, q):
                if vec_scale(lam, v, q) not in members:
                    raise InvariantViolation("connection set not closed under scalars")
        # scalar closure with lam = q-1 gives inverse closure, checked anyway
        for v in members:
            if tuple(-a % q for a in v) not in members:
                raise InvariantViolation("connection set not inverse-closed")

    @property
    def element_count(self):
        return len(self.members)

    def contains_vector(self, v):
        return tuple(a % self.q for a in v) in self.members

    def contains_id(self, i):
        return bool(self._bitmap[i])

    def to_json_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "lines": [list(rep) for rep in self.lines],
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(int(d["q"]), int(d["n"]), [tuple(line) for line in d["lines"]])


def sample_connection_set(q, n, p=0.5, seed=None):
    return ConnectionSet.sample(q, n, p, seed)


def connection_from_lines(q, n, lines):
    return ConnectionSet(q, n, lines)


class CayleyGraph:
    """Graph on F_q^n with u ~ v iff u - v lies in the connection set."""

    def __init__(self, connection):
        self.connection = connection
        self.q = connection.q
        self.n = connection.n
        self.num_vertices = self.q ** self.n
        self.degree = connection.element_count
        self._members = sorted(connection.members)
        # one vector per {s, -s} pair, for edge scans without double counting
        self._half = [
            s
            for s in self._members
            if encode(s, self.q) < encode(tuple(-a % self.q for a in s), self.q)
        ]
        self._adj_masks = None

    @property
    def num_edges(self):
        return self.num_vertices * self.degree // 2

    def _check_id(self, i):
        if not 0 <= i < self.num_vertices:
            raise ValueError(f"vertex id {i} out of range")

    def is_edge(self, u, v):
        self._check_id(u)
        self._check_id(v)
        diff = vec_sub(decode(u, self.q, self.n), decode(v, self.q, self.n), self.q)
        return self.connection.contains_id(encode(diff, self.q))

    def neighbors(self, v):
        self._check_id(v)
        x = decode(v, self.q, self.n)
        return sorted(encode(vec_add(x, s, self.q), self.q) for s in self._members)

    def half_shift_ids(self):
        """Vertex ids of one representative per inverse pair of the connection set."""
        return [encode(s, self.q) for s in self._half]

    def shift_table(self, s):
        """Permutation i -> id(decode(i) + s), as a list."""
        q, n = self.q, self.n
        return [encode(vec_add(decode(i, q, n), s, q), q) for i in range(self.num_vertices)]

    def adjacency_masks(self):
        """Per-vertex neighbor bitmasks (built once, then cached)."""
        if self._adj_masks is None:
            masks = [0] * self.num_vertices
            for s in self._members:
                table = self.shift_table(s)
                for u in range(self.num_vertices):
                    masks[u] |= 1 << table[u]
            self._adj_masks = masks
        return self._adj_masks

    def write_dimacs(self, fh):
        """DIMACS edge format, vertices 1-indexed."""
        fh.write(f"p edge {self.num_vertices} {self.num_edges}\n")
        written = 0
        for s in self._half:
            table = self.shift_table(s)
            for u in range(self.num_vertices):
                fh.write(f"e {u + 1} {table[u] + 1}\n")
                written += 1
        if written != self.num_edges:
            raise InvariantViolation("edge count mismatch in export")


def build_graph(connection):
    return CayleyGraph(connection)
