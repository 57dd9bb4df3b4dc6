"""Distinguishing-coloring verdicts for the line Cayley graphs.

A coloring is distinguishing when no non-trivial automorphism fixes every
color class.  The question "does the distinguishing chromatic number exceed
q" is decided exhaustively at tiny scale and structurally (hyperplane-coset
partitions always admit a translation witness) at larger ones.
"""

from dataclasses import dataclass

from .cayley import build_graph
from .coloring import coset_coloring, enumerate_proper_partitions, is_proper, plus_zero_recolor
from .field import decode, encode, vec_add, vec_dot
from .geometry import (
    affine_hyperplane_form,
    affine_lines_spanned,
    common_hyperplane_normal,
    direction_count_threshold,
    directions_determined,
)
from .permgroup import fixing_subgroup_of_partition, identity_perm, scalar_perm


@dataclass
class DistinguishingReport:
    distinguishing: bool
    fixing_order: int
    witness: tuple | None

    def to_json_dict(self):
        d = {
            "distinguishing": self.distinguishing,
            "fixing_order": str(self.fixing_order),
        }
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def _as_group(aut):
    # accept either a bare group or a search result carrying one
    group = getattr(aut, "group", aut)
    if getattr(aut, "complete", True) is False:
        raise ValueError("automorphism group is incomplete; raise the node budget")
    return group


def is_distinguishing(coloring, aut):
    """Report whether only the identity fixes every color class."""
    return is_distinguishing_from_classes(coloring.classes(), aut)


def _class_fixing_witness(graph, group, coloring):
    """Cheapest non-trivial automorphism fixing every class, if any.

    Tries translations by vertex id, then scalings, then falls back to the
    full fixing subgroup of the partition.
    """
    labels = coloring.class_of
    q, n = graph.q, graph.n
    for sid in range(1, graph.num_vertices):
        perm = graph.shift_table(decode(sid, q, n))
        if all(labels[perm[x]] == labels[x] for x in range(len(labels))):
            return perm
    for lam in range(2, q):
        perm = scalar_perm(q, n, lam)
        if all(labels[perm[x]] == labels[x] for x in range(len(labels))):
            return perm
    report = is_distinguishing_from_classes(coloring.classes(), group)
    return report.witness


def is_distinguishing_from_classes(classes, aut):
    group = _as_group(aut)
    fixing = fixing_subgroup_of_partition(group, classes)
    order = fixing.order()
    witness = None
    if order > 1:
        ident = identity_perm(group.degree)
        for p in fixing.elements():
            if p != ident:
                witness = p
                break
    return DistinguishingReport(order == 1, order, witness)


@dataclass
class ExceedsVerdict:
    exceeds: bool
    partitions: int
    pairs: list
    failing: object


def chi_D_exceeds_q_small(graph, aut, limit=10**6):
    """Exhaustive verdict: does every proper partition into at most q classes
    admit a non-trivial class-fixing automorphism?

    True exactly when no proper q-coloring is distinguishing.  Feasible only
    when the partition enumeration is tiny.
    """
    if not graph.connection.lines:
        raise ValueError("not applicable: the empty graph is properly 1-colorable")
    group = _as_group(aut)
    pairs = []
    count = 0
    for coloring in enumerate_proper_partitions(graph, max_classes=graph.q, limit=limit):
        count += 1
        witness = _class_fixing_witness(graph, group, coloring)
        if witness is None:
            return ExceedsVerdict(False, count, pairs, coloring)
        pairs.append((coloring, witness))
    return ExceedsVerdict(True, count, pairs, None)


def chi_D_upper_certificate(graph, aut):
    """The q+1 coloring that splits 0 off its coset class, when it certifies.

    Returns the coloring if it is proper and distinguishing for the given
    automorphism group, else None.
    """
    if not graph.connection.lines:
        raise ValueError("empty connection set has no coset coloring")
    group = _as_group(aut)
    cert = plus_zero_recolor(coset_coloring(graph))
    if not is_proper(graph, cert):
        return None
    report = is_distinguishing(cert, group)
    return cert if report.distinguishing else None


def translation_fixing_witnesses(coloring, q, n):
    """Nonzero translations fixing every class of a hyperplane-coset partition.

    Empty when the classes are not the cosets of a single linear hyperplane.
    Each returned vector is checked constructively against the labels.
    """
    classes = coloring.classes()
    normal = common_hyperplane_normal(classes, q, n)
    if normal is None:
        return []
    labels = coloring.class_of
    witnesses = []
    for wid in range(1, q**n):
        w = decode(wid, q, n)
        if vec_dot(normal, w, q) != 0:
            continue
        if all(
            labels[encode(vec_add(decode(x, q, n), w, q), q)] == labels[x]
            for x in range(q**n)
        ):
            witnesses.append(w)
    return witnesses


def hyperplane_class_analysis(coloring, connection):
    """Per-class geometry of a proper q-coloring.

    For each class: its size, whether it is an affine hyperplane, how many
    directions it determines versus the cone threshold, and the independence
    identity (determined directions never meet the projected connection set).
    Also reports the literal count lines_spanned + |S| against the geometric
    series 1 + q + ... + q^(n-1), both sides stated without interpretation.
    """
    q, n = connection.q, connection.n
    graph = build_graph(connection)
    if coloring.num_colors != q:
        raise ValueError(f"coloring must use exactly {q} colors")
    if len(coloring.class_of) != graph.num_vertices:
        raise ValueError("coloring does not cover the vertex set")
    if not is_proper(graph, coloring):
        raise ValueError("coloring is not proper")
    proj_s = set(connection.lines)
    series = (q**n - 1) // (q - 1)
    threshold = direction_count_threshold(q, n) if n >= 3 else None
    classes = coloring.classes()
    out = []
    for cls in classes:
        points = [decode(i, q, n) for i in cls]
        form = affine_hyperplane_form(points, q, n)
        dirs = directions_determined(points, q) if len(points) >= 2 else set()
        spanned = affine_lines_spanned(points, q)
        entry = {
            "size": len(points),
            "is_affine_hyperplane": form is not None,
            "normal": list(form[0]) if form else None,
            "offset": form[1] if form else None,
            "directions": len(dirs),
            "direction_threshold": threshold,
            "within_threshold": (len(dirs) <= threshold) if threshold is not None else None,
            "independent_directions": not (dirs & proj_s),
            "lines_spanned": spanned,
            "literal_lhs": spanned + len(connection.members),
            "literal_rhs": series,
        }
        out.append(entry)
    report = {"q": q, "n": n, "classes": out}
    normal = common_hyperplane_normal(classes, q, n)
    if normal is not None:
        labels = coloring.class_of
        scalar_fixes = True
        for lam in range(2, q):
            p = scalar_perm(q, n, lam)
            if any(labels[p[x]] != labels[x] for x in range(len(labels))):
                scalar_fixes = False
                break
        report["common_normal"] = list(normal)
        report["scalar_fixes_all_classes"] = scalar_fixes
        if not scalar_fixes:
            report["note"] = (
                "scaling maps fix only the class containing 0; "
                "translations inside the common hyperplane fix every class"
            )
    return report
