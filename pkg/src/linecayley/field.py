"""Exact arithmetic over a prime field F_q, fixed-length vectors, and n x n matrices.

Vectors are plain tuples of ints in [0, q); matrices are tuples of row tuples.
Everything is immutable and already reduced mod q, so values can be compared,
hashed and shared freely.  Only prime moduli are supported.
"""

import itertools

from .errors import BudgetExceeded

DEFAULT_GL_BUDGET = 10 ** 5


def is_prime(q):
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def require_prime(q):
    if not is_prime(q):
        raise ValueError(f"modulus must be a prime, got {q}")


def require_odd_prime(q):
    require_prime(q)
    if q == 2:
        raise ValueError("modulus must be an odd prime, got 2")


def inv_mod(a, q):
    """Multiplicative inverse of a nonzero residue mod the prime q."""
    if a % q == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {q}")
    return pow(a, -1, q)


def primitive_root(q):
    """Smallest positive generator of the multiplicative group mod the prime q."""
    require_prime(q)
    if q == 2:
        return 1
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = x * g % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root found mod {q}")  # unreachable for prime q


# ---------------------------------------------------------------------------
# vectors


def vec_add(u, v, q):
    return tuple((a + b) % q for a, b in zip(u, v))


def vec_sub(u, v, q):
    return tuple((a - b) % q for a, b in zip(u, v))


def vec_neg(u, q):
    return tuple(-a % q for a in u)


def vec_scale(c, u, q):
    return tuple(c * a % q for a in u)


def vec_dot(u, v, q):
    return sum(a * b for a, b in zip(u, v)) % q


def zero_vector(n):
    return (0,) * n


def encode(v, q):
    """Vertex id of a vector: coordinate 0 is the least significant base-q digit."""
    i = 0
    for a in reversed(v):
        if not 0 <= a < q:
            raise ValueError(f"coordinate {a} out of range [0, {q})")
        i = i * q + a
    return i


def decode(i, q, n):
    """Inverse of encode; valid for i in [0, q**n)."""
    if not 0 <= i < q ** n:
        raise ValueError(f"vertex id {i} out of range [0, {q ** n})")
    coords = []
    for _ in range(n):
        i, r = divmod(i, q)
        coords.append(r)
    return tuple(coords)


def all_vectors(q, n):
    """All vectors of F_q^n in vertex-id order."""
    return (decode(i, q, n) for i in range(q ** n))


# ---------------------------------------------------------------------------
# matrices (row major, square unless noted)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def scalar_matrix(lam, n, q):
    lam %= q
    return tuple(tuple(lam if i == j else 0 for j in range(n)) for i in range(n))


def is_scalar_matrix(m):
    n = len(m)
    lam = m[0][0]
    return all(m[i][j] == (lam if i == j else 0) for i in range(n) for j in range(n))


def mat_apply(m, v, q):
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in m)


def mat_mul(a, b, q):
    n = len(a)
    cols = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % q for col in cols) for row in a
    )


def mat_sub_scalar(m, lam, q):
    """m - lam * identity, reduced mod q."""
    n = len(m)
    return tuple(
        tuple((m[i][j] - (lam if i == j else 0)) % q for j in range(n))
        for i in range(n)
    )


def _rref(rows, q):
    """Reduced row echelon form; returns (reduced nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] % q:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = inv_mod(mat[r][c], q)
        mat[r] = [x * inv % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % q:
                f = mat[i][c]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, q):
    """Rank of a matrix given as an iterable of rows (need not be square)."""
    return len(_rref(rows, q)[1])


def kernel(m, q):
    """Basis of the right kernel {x : m x = 0}, as vectors of length ncols."""
    rows = [tuple(r) for r in m]
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = _rref(rows, q)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f] % q
        basis.append(tuple(v))
    return basis


def mat_inverse(m, q):
    n = len(m)
    aug = [list(m[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, n):
            if aug[i][c] % q:
                pivot = i
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = inv_mod(aug[r][c], q)
        aug[r] = [x * inv % q for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % q:
                f = aug[i][c]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in aug)


def gaussian_binomial_1(d, q):
    """Number of 1-dimensional subspaces of a d-dimensional space over F_q."""
    if d < 0:
        raise ValueError("dimension must be non-negative")
    if d == 0:
        return 0
    return (q ** d - 1) // (q - 1)


def gl_order(q, n):
    """Order of the group of invertible n x n matrices over F_q."""
    qn = q ** n
    order = 1
    for i in range(n):
        order *= qn - q ** i
    return order


def enumerate_gl(q, n, budget=DEFAULT_GL_BUDGET):
    """Yield every invertible n x n matrix over F_q exactly once.

    The full q**(n*n) candidate space is scanned, so a budget guards against
    accidentally huge enumerations.
    """
    total = q ** (n * n)
    if total > budget:
        raise BudgetExceeded(
            f"GL({n},{q}) enumeration scans {total} matrices, budget is {budget}"
        )
    for flat in itertools.product(range(q), repeat=n * n):
        m = tuple(flat[i * n:(i + 1) * n] for i in range(n))
        if rank(m, q) == n:
            yield m
