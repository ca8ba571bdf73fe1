"""Facet certification for projection-lifted inequalities.

A witness is a k-partition of the vertices touched by the walk cliques plus
the leftover "outside" vertices. The condition checkers test the structural
requirements under which every level form of a lifted cut defines a facet of
its level face; the dimension oracle verifies such claims exactly on small
graphs by enumerating stable sets and computing affine ranks over rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph, mask_of
from .lifting import Inequality, LiftedCut, clique_inequality
from .mwss import enumerate_stable_sets
from .projection import ProjectionTrace

ORACLE_LIMIT = 16


@dataclass
class FacetWitness:
    k: int
    classes: tuple
    hyperedges: tuple
    outside: tuple
    representative: tuple = None

    @classmethod
    def build(cls, n, k, classes, hyperedges, representative=None):
        classes = tuple(tuple(sorted(c)) for c in classes)
        hyperedges = tuple(tuple(sorted(w)) for w in hyperedges)
        if len(classes) != k:
            raise ValueError("expected %d classes, got %d" % (k, len(classes)))
        union = set()
        for w in hyperedges:
            union.update(w)
        seen = set()
        for c in classes:
            if seen & set(c):
                raise ValueError("classes overlap")
            seen.update(c)
        if seen != union:
            raise ValueError("classes must cover exactly the clique union")
        outside = tuple(v for v in range(n) if v not in seen)
        rep = None
        if representative is not None:
            rep = tuple(sorted(representative))
            for i, c in enumerate(classes):
                want = 1 if i < k - 1 else 0
                if len(set(rep) & set(c)) != want:
                    raise ValueError("representative must pick one vertex per "
                                     "class except the last")
            if len(rep) != k - 1:
                raise ValueError("representative has stray vertices")
        return cls(k, classes, hyperedges, outside, rep)

    def to_payload(self):
        payload = {"k": self.k, "classes": [list(c) for c in self.classes]}
        if self.representative is not None:
            payload["representative"] = list(self.representative)
        return payload


def witness_from_trace(trace: ProjectionTrace, classes,
                       representative=None) -> FacetWitness:
    return FacetWitness.build(trace.base.n, len(classes), classes,
                              trace.cliques, representative)


@dataclass
class DimensionCertificate:
    affine_dim: int
    witness_points: list


def _restricted(trace, witness, t):
    """Level-t view: classes cut down to the first t cliques' union, outside
    widened to everything not yet touched."""
    union = set()
    for w in trace.cliques[:t]:
        union.update(w)
    classes = [tuple(v for v in c if v in union) for c in witness.classes]
    outside = [v for v in range(trace.base.n) if v not in union]
    return classes, outside


def check_interWV(witness: FacetWitness, t: int) -> bool:
    """Each of the first t cliques meets every class exactly once."""
    for w in witness.hyperedges[:t]:
        if len(w) != witness.k:
            return False
        for c in witness.classes:
            if len(set(w) & set(c)) != 1:
                return False
    return True


def check_condition_I(trace: ProjectionTrace, witness: FacetWitness,
                      t: int) -> bool:
    """W_t has k vertices and the level-t classes are stable in the graph the
    t-th projection was performed on."""
    if len(trace.cliques[t - 1]) != witness.k:
        return False
    g = trace.graph_at(t - 1)
    classes, _ = _restricted(trace, witness, t)
    for c in classes:
        for u, v in combinations(c, 2):
            if g.has_edge(u, v):
                return False
    return True


def check_strong_hypertree(witness: FacetWitness, t: int = None) -> bool:
    """Backtracking elimination: repeatedly remove a vertex that lies in a
    single clique sharing exactly k-1 vertices with another clique, together
    with that clique, until one clique covering everything remains."""
    edges = witness.hyperedges if t is None else witness.hyperedges[:t]
    if not edges:
        return True
    k = witness.k
    start = frozenset(frozenset(w) for w in edges)
    verts = frozenset(v for w in edges for v in w)
    memo = {}

    def solve(vs, es):
        key = (vs, es)
        if key in memo:
            return memo[key]
        if len(es) == 1:
            result = next(iter(es)) == vs
        else:
            result = False
            for wi in es:
                rest = es - {wi}
                if not any(len(wi & wj) == k - 1 for wj in rest):
                    continue
                covered = frozenset(v for w in rest for v in w)
                private = wi - covered
                if len(private) != 1:
                    continue
                if solve(vs - private, rest):
                    result = True
                    break
        memo[key] = result
        return result

    return solve(verts, start)


def check_condition_III(trace: ProjectionTrace, witness: FacetWitness,
                        t: int) -> bool:
    """Every vertex outside the first t cliques has some class none of whose
    members neighbor it in the graph of the t-th projection."""
    g = trace.graph_at(t - 1)
    classes, outside = _restricted(trace, witness, t)
    for w in outside:
        if not any(all(not g.has_edge(w, v) for v in c) for c in classes):
            return False
    return True


def _tree_adjacent(cliques, k, a, b):
    return len(set(cliques[a]) & set(cliques[b])) == k - 1


def condition_iv_holds_for(trace: ProjectionTrace, witness: FacetWitness,
                           v: int, w: int, i: int) -> bool:
    """The two-branch routing for a single (class vertex v, outside vertex w)
    pair of class i: either vw is an original edge, or some clique W_t
    containing v has a tree-neighbor W_t' not containing v with a class-i
    vertex already adjacent to w when step t' was performed, with W_t a
    clique of that same graph."""
    g = trace.base
    if g.has_edge(v, w):
        return True
    cliques = trace.cliques
    k = witness.k
    vi = set(witness.classes[i])
    for t in range(1, trace.r + 1):
        wt = cliques[t - 1]
        if v not in wt:
            continue
        for tp in range(1, trace.r + 1):
            if tp == t or not _tree_adjacent(cliques, k, t - 1, tp - 1):
                continue
            if v in cliques[tp - 1]:
                continue
            gp = trace.graph_at(tp - 1)
            if not gp.is_clique(wt):
                continue
            if any(vp in vi and gp.has_edge(vp, w) for vp in cliques[tp - 1]):
                return True
    return False


def check_condition_IV(trace: ProjectionTrace, witness: FacetWitness) -> bool:
    """Every final-graph edge from an outside vertex into one of the first
    k-1 classes must be routable per pair."""
    gr = trace.final_graph
    for i in range(witness.k - 1):
        for w in witness.outside:
            for v in witness.classes[i]:
                if gr.has_edge(v, w):
                    if not condition_iv_holds_for(trace, witness, v, w, i):
                        return False
    return True


def check_condition_V(trace: ProjectionTrace, witness: FacetWitness) -> bool:
    """No vertex of the last class touches an outside vertex in the final
    projected graph."""
    gr = trace.final_graph
    for v in witness.classes[-1]:
        if any(gr.has_edge(v, w) for w in witness.outside):
            return False
    return True


def check_seed(trace: ProjectionTrace, witness: FacetWitness, seed) -> bool:
    """The seed must be a maximal clique of the final graph avoiding the last
    class entirely."""
    gr = trace.final_graph
    if not seed or not gr.is_clique(seed):
        return False
    if set(seed) & set(witness.classes[-1]):
        return False
    smask = mask_of(seed)
    for v in range(gr.n):
        if not smask >> v & 1 and gr.adj[v] & smask == smask:
            return False
    return True


def _affine_basis(points):
    """Exact affine rank of 0/1 points with the spanning subset used."""
    if not points:
        return -1, []
    base = points[0]
    chosen = [base]
    rows = []
    pivots = []
    for p in points[1:]:
        vec = [Fraction(a - b) for a, b in zip(p, base)]
        for row, piv in zip(rows, pivots):
            if vec[piv]:
                f = vec[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
        piv = next((j for j, a in enumerate(vec) if a), None)
        if piv is None:
            continue
        inv = vec[piv]
        rows.append([a / inv for a in vec])
        pivots.append(piv)
        chosen.append(p)
    return len(rows), chosen


def face_dimension(g: Graph, equalities) -> DimensionCertificate:
    """Affine dimension of the stable sets satisfying every given inequality
    at equality, by full enumeration; -1 when the face is empty."""
    if g.n > ORACLE_LIMIT:
        raise ValueError("face_dimension enumerates; n must be <= %d"
                         % ORACLE_LIMIT)
    points = []
    for mask in enumerate_stable_sets(g):
        vec = tuple(mask >> v & 1 for v in range(g.n))
        if all(ineq.value(vec) == ineq.rhs for ineq in equalities):
            points.append(vec)
    dim, chosen = _affine_basis(points)
    return DimensionCertificate(dim, chosen)


def _face_masks(g, cliques):
    """Stable sets meeting each of the given cliques exactly once."""
    cmasks = [mask_of(w) for w in cliques]
    return [mask for mask in enumerate_stable_sets(g)
            if all((mask & cm).bit_count() == 1 for cm in cmasks)]


def assert_facet_of_Ft(trace: ProjectionTrace, witness: FacetWitness,
                       seed, cut: LiftedCut, t: int) -> bool:
    """Exact check that the level-t form of the cut defines a facet of the
    level-t face: its tight set must lose exactly one affine dimension."""
    if cut.level_form(trace.r) != clique_inequality(seed):
        raise ValueError("cut was not seeded by the given clique")
    equalities = [clique_inequality(w) for w in trace.cliques[:t]]
    whole = face_dimension(trace.base, equalities)
    tight = face_dimension(trace.base, equalities + [cut.level_form(t)])
    return tight.affine_dim == whole.affine_dim - 1


def verify_class_equality(g: Graph, trace: ProjectionTrace,
                          witness: FacetWitness, t: int) -> bool:
    """On every integral point of the level-t face, all members of a class
    take the same value. The classes are taken as given, so pass a witness
    restricted to the level being checked."""
    for mask in _face_masks(g, trace.cliques[:t]):
        for c in witness.classes:
            if len({mask >> v & 1 for v in c}) > 1:
                return False
    return True


def verify_isomorphism(g: Graph, trace: ProjectionTrace,
                       witness: FacetWitness, representative=None) -> bool:
    """Check the face of the full walk is a copy of the stable set polytope
    of the final graph induced on outside vertices plus one representative
    per class except the last, by building both maps and confirming they are
    mutually inverse bijections on integral points."""
    rep = representative if representative is not None \
        else witness.representative
    if rep is None:
        raise ValueError("no representative set given")
    witness = FacetWitness.build(g.n, witness.k, witness.classes,
                                 witness.hyperedges, rep)
    rep = witness.representative
    k = witness.k
    gr = trace.final_graph
    keep = sorted(set(witness.outside) | set(rep))
    sub, back = gr.induced_subgraph(keep)
    pos = {orig: idx for idx, orig in enumerate(back)}
    sub_points = set(enumerate_stable_sets(sub))
    face = _face_masks(g, trace.cliques)
    if len(face) != len(sub_points):
        return False
    reps = []
    for c in witness.classes[:-1]:
        reps.append((set(rep) & set(c)).pop())
    images = set()
    for mask in face:
        for c in witness.classes:
            if len({mask >> v & 1 for v in c}) > 1:
                return False
        y = 0
        for w in witness.outside:
            y |= (mask >> w & 1) << pos[w]
        for rv in reps:
            y |= (mask >> rv & 1) << pos[rv]
        if y not in sub_points or y in images:
            return False
        images.add(y)
        # rebuild the face point from its image and insist it round-trips
        total = sum(y >> pos[rv] & 1 for rv in reps)
        if total > 1:
            return False
        rebuilt = 0
        for w in witness.outside:
            rebuilt |= (y >> pos[w] & 1) << w
        for rv, c in zip(reps, witness.classes):
            bit = y >> pos[rv] & 1
            for v in c:
                rebuilt |= bit << v
        for v in witness.classes[-1]:
            rebuilt |= (1 - total) << v
        if rebuilt != mask:
            return False
    return images == sub_points


def condition_report(trace: ProjectionTrace, witness: FacetWitness,
                     seed=None) -> dict:
    """Per-condition verdicts over the full walk."""
    r = trace.r
    ts = range(1, r + 1)
    report = {
        "interWV": all(check_interWV(witness, t) for t in ts),
        "I": all(check_condition_I(trace, witness, t) for t in ts),
        "II": all(check_strong_hypertree(witness, t) for t in ts),
        "III": all(check_condition_III(trace, witness, t) for t in ts),
        "IV": check_condition_IV(trace, witness),
        "V": check_condition_V(trace, witness),
    }
    if seed is not None:
        report["seed"] = check_seed(trace, witness, seed)
    return report


@dataclass
class FacetReport:
    conditions: dict
    predicted: bool
    dim_face: int
    dim_tight: int
    facet: bool
    agrees: bool


def facet_report(trace: ProjectionTrace, witness: FacetWitness,
                 cut: LiftedCut, t: int, seed=None) -> FacetReport:
    conditions = condition_report(trace, witness,
                                  seed if seed is not None else cut.seed)
    predicted = all(conditions.values())
    equalities = [clique_inequality(w) for w in trace.cliques[:t]]
    whole = face_dimension(trace.base, equalities)
    tight = face_dimension(trace.base, equalities + [cut.level_form(t)])
    facet = tight.affine_dim == whole.affine_dim - 1
    return FacetReport(conditions, predicted, whole.affine_dim,
                       tight.affine_dim, facet,
                       facet if predicted else True)


def find_witnesses(trace: ProjectionTrace, seed=None, max_k: int = 3):
    """Exhaustive witness search: all class labelings where every walk clique
    meets every class exactly once, filtered by the full condition set."""
    if trace.r == 0:
        return []
    sizes = {len(w) for w in trace.cliques}
    if len(sizes) != 1:
        return []
    k = sizes.pop()
    if k > max_k:
        return []
    universe = sorted({v for w in trace.cliques for v in w})
    holding = {v: [w for w in trace.cliques if v in w] for v in universe}
    found = []

    def dfs(idx, assign):
        if idx == len(universe):
            classes = [[v for v in universe if assign[v] == i]
                       for i in range(k)]
            witness = witness_from_trace(trace, classes)
            report = condition_report(trace, witness, seed)
            if all(report.values()):
                found.append(witness)
            return
        v = universe[idx]
        for color in range(k):
            clash = any(assign.get(u) == color
                        for w in holding[v] for u in w if u != v)
            if clash:
                continue
            assign[v] = color
            dfs(idx + 1, assign)
            del assign[v]

    dfs(0, {})
    return found
