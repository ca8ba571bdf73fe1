"""Inequalities over stable set polytopes and their sequential lifting.

A lift starts from a clique inequality on the last graph of a projection
trace and walks the trace backwards; at step t the running inequality f_t
gains a multiple of (x(W_t) - 1), with the factor chosen so the result stays
valid one level down. Two factor rules are provided: the basic rule solves a
plain stable set problem on the projected graph, the strengthened rule solves
a side-constrained one on the base graph.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from .graph import Graph, bits, mask_of
from .mwss import (
    ConstrainedMwssQuery,
    enumerate_stable_sets,
    max_weight_stable_set,
    solve_constrained,
)
from .projection import ProjectionTrace, trace_from_json, trace_to_json

EPS = 1e-9


class LiftingAborted(RuntimeError):
    """A factor solve ran out of budget; the candidate cut is dropped."""


class Inequality:
    """Sparse form of sum(coeffs[v] * x_v) <= rhs; zero coefficients vanish."""

    def __init__(self, coeffs, rhs):
        self.coeffs = {v: c for v, c in dict(coeffs).items() if c != 0}
        self.rhs = rhs

    def key(self):
        return (tuple(sorted(self.coeffs.items())), self.rhs)

    def __eq__(self, other):
        return isinstance(other, Inequality) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Inequality(%s)" % self.to_text()

    @property
    def support(self):
        return tuple(sorted(self.coeffs))

    def as_weights(self, n: int):
        w = [0] * n
        for v, c in self.coeffs.items():
            w[v] = c
        return w

    def value(self, point) -> float:
        return sum(c * point[v] for v, c in self.coeffs.items())

    def violation(self, point) -> float:
        return self.value(point) - self.rhs

    def add_step(self, w, lam) -> Inequality:
        """f + lam * (x(w) - 1): coefficients go up by lam on w, rhs by lam."""
        coeffs = dict(self.coeffs)
        for v in w:
            coeffs[v] = coeffs.get(v, 0) + lam
        return Inequality(coeffs, self.rhs + lam)

    def normalized(self) -> Inequality:
        """Divide through by the gcd when everything is integral."""
        values = list(self.coeffs.values()) + [self.rhs]
        if not self.coeffs or not all(isinstance(c, int) for c in values):
            return self
        g = 0
        for c in values:
            g = math.gcd(g, abs(c))
        if g <= 1:
            return self
        return Inequality({v: c // g for v, c in self.coeffs.items()}, self.rhs // g)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0 <= %s" % (self.rhs,)
        parts = []
        for v in self.support:
            c = self.coeffs[v]
            term = "x%d" % v if abs(c) == 1 else "%s*x%d" % (abs(c), v)
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return "%s <= %s" % (" ".join(parts), self.rhs)

    def to_json(self) -> str:
        return json.dumps({"coeffs": {str(v): c for v, c in sorted(self.coeffs.items())},
                           "rhs": self.rhs})

    @classmethod
    def from_json(cls, text: str) -> Inequality:
        payload = json.loads(text)
        return cls({int(v): c for v, c in payload["coeffs"].items()}, payload["rhs"])


def clique_inequality(w) -> Inequality:
    if not w:
        raise ValueError("empty clique inequality")
    return Inequality({v: 1 for v in w}, 1)


def lift_once(ineq: Inequality, w, lam) -> Inequality:
    """Single published lifting step: coefficients drop by lam on w and the
    right side drops by lam, so lam = 0 leaves the inequality alone and
    negative factors raise both sides."""
    coeffs = dict(ineq.coeffs)
    for v in w:
        coeffs[v] = coeffs.get(v, 0) - lam
    return Inequality(coeffs, ineq.rhs - lam)


@dataclass
class LiftedCut:
    """A fully lifted inequality plus everything needed to replay it."""

    inequality: Inequality
    trace: ProjectionTrace
    seed: tuple
    factors: tuple
    procedure: str

    def level_form(self, t: int) -> Inequality:
        """The running inequality f_t, replayed from the seed."""
        if not (0 <= t <= self.trace.r):
            raise IndexError("no level %d in a %d step lift" % (t, self.trace.r))
        f = clique_inequality(self.seed)
        for j in range(self.trace.r, t, -1):
            f = f.add_step(self.trace.cliques[j - 1], self.factors[j - 1])
        return f


def _resolve_seed(trace, seed, lift_from):
    if lift_from is not None:
        if seed is not None:
            raise ValueError("pass either seed or lift_from, not both")
        if not (0 <= lift_from < trace.r):
            raise IndexError("lift_from %d out of range" % lift_from)
        return trace.prefix(lift_from), trace.cliques[lift_from]
    if seed is None:
        raise ValueError("a seed clique is required")
    return trace, tuple(sorted(seed))


class _Deadline:
    def __init__(self, seconds):
        self.at = None if seconds is None else time.monotonic() + seconds

    def remaining(self):
        if self.at is None:
            return None
        left = self.at - time.monotonic()
        if left <= 0:
            raise LiftingAborted("lifting time budget exhausted")
        return left


def basic_lift(trace: ProjectionTrace, seed=None, lift_from=None,
               time_budget=None) -> LiftedCut:
    """Lift with factors solved on the projected graphs: at step t, maximize
    f_t over stable sets of graph_at(t-1) that avoid W_t, and move by the gap
    to the right side. Nonpositive coefficients are dropped inside the solver;
    stable sets are closed under removal, so the optimum is unchanged."""
    trace, seed = _resolve_seed(trace, seed, lift_from)
    g_final = trace.final_graph
    if not seed or not g_final.is_clique(seed):
        raise ValueError("seed %r is not a clique of the final graph" % (seed,))
    deadline = _Deadline(time_budget)
    f = clique_inequality(seed)
    factors = []
    for t in range(trace.r, 0, -1):
        w = trace.cliques[t - 1]
        g = trace.graph_at(t - 1)
        res = max_weight_stable_set(
            g, f.as_weights(g.n),
            within=g.full_mask & ~mask_of(w),
            time_budget=deadline.remaining())
        if not res.proven_optimal:
            raise LiftingAborted("factor solve at step %d timed out" % t)
        lam = res.best_value - f.rhs
        factors.append(lam)
        f = f.add_step(w, lam)
    factors.reverse()
    return LiftedCut(f, trace, seed, tuple(factors), "basic")


def strengthened_lift(trace: ProjectionTrace, seed=None, lift_from=None,
                      time_budget=None) -> LiftedCut:
    """Lift with factors solved on the base graph under side constraints: at
    step t, maximize f_t over stable sets of the base graph that meet each of
    W_1 .. W_{t-1} exactly once and avoid W_t. An empty feasible region
    contributes factor 0."""
    trace, seed = _resolve_seed(trace, seed, lift_from)
    g_final = trace.final_graph
    if not seed or not g_final.is_clique(seed):
        raise ValueError("seed %r is not a clique of the final graph" % (seed,))
    deadline = _Deadline(time_budget)
    base = trace.base
    f = clique_inequality(seed)
    factors = []
    for t in range(trace.r, 0, -1):
        query = ConstrainedMwssQuery(
            base, f.as_weights(base.n),
            cover_cliques=trace.cliques[:t - 1],
            avoid_cliques=(trace.cliques[t - 1],),
            time_budget=deadline.remaining(),
            reference=trace.graph_at(t - 1))
        res = solve_constrained(query)
        if not res.proven_optimal:
            raise LiftingAborted("factor solve at step %d timed out" % t)
        lam = 0 if res.infeasible else res.best_value - f.rhs
        factors.append(lam)
        f = f.add_step(trace.cliques[t - 1], lam)
    factors.reverse()
    return LiftedCut(f, trace, seed, tuple(factors), "strengthened")


def cut_to_json(cut: LiftedCut) -> str:
    """Serialize a lifted cut with everything needed to replay it."""
    payload = {
        "inequality": {"coeffs": {str(v): c for v, c in
                                  sorted(cut.inequality.coeffs.items())},
                       "rhs": cut.inequality.rhs},
        "trace": json.loads(trace_to_json(cut.trace)),
        "seed": list(cut.seed),
        "factors": list(cut.factors),
        "procedure": cut.procedure,
    }
    return json.dumps(payload, indent=1)


def cut_from_json(text: str) -> LiftedCut:
    """Rebuild a lifted cut from its JSON form. The stored inequality is
    taken at face value; replay_consistent() tells whether it still matches
    the seed and factors."""
    payload = json.loads(text)
    ineq = Inequality({int(v): c for v, c in
                       payload["inequality"]["coeffs"].items()},
                      payload["inequality"]["rhs"])
    trace = trace_from_json(json.dumps(payload["trace"]))
    return LiftedCut(ineq, trace, tuple(payload["seed"]),
                     tuple(payload["factors"]), payload["procedure"])


def replay_consistent(cut: LiftedCut) -> bool:
    """Whether the stored inequality equals the one its seed and factors
    reproduce; False flags a tampered or stale file."""
    if len(cut.factors) != cut.trace.r:
        return False
    replayed = cut.level_form(0)
    return (replayed.coeffs == cut.inequality.coeffs
            and replayed.rhs == cut.inequality.rhs)


@dataclass
class ValidityReport:
    valid: bool
    lhs_max: float
    witness: tuple


def check_validity(g: Graph, ineq: Inequality, time_budget=None,
                   enumerate_limit: int = 18) -> ValidityReport:
    """Exact validity of ineq over the stable sets of g. Small positive
    supports are enumerated outright, larger ones go to branch and bound;
    either way the reported witness attains lhs_max."""
    pos = [v for v in ineq.support if ineq.coeffs[v] > 0]
    if len(pos) <= enumerate_limit:
        sub, back = g.induced_subgraph(pos)
        weights = [ineq.coeffs[back[i]] for i in range(sub.n)]
        lhs_max, best = 0, ()
        for s in enumerate_stable_sets(sub):
            val = sum(weights[i] for i in bits(s))
            if val > lhs_max:
                lhs_max, best = val, tuple(back[i] for i in bits(s))
        return ValidityReport(lhs_max <= ineq.rhs + EPS, lhs_max, best)
    res = max_weight_stable_set(g, ineq.as_weights(g.n),
                                time_budget=time_budget)
    if not res.proven_optimal:
        raise LiftingAborted("validity check timed out")
    return ValidityReport(res.best_value <= ineq.rhs + EPS,
                          res.best_value, res.best_set)


@dataclass
class StrengthReport:
    rhs_basic: int
    rhs_strengthened: int
    alpha_basic: float
    alpha_strengthened: float
    support_contained: bool
    last_factor_dominated: bool


def strength_report(basic: LiftedCut, strengthened: LiftedCut) -> StrengthReport:
    """Compare a paired basic/strengthened lift of the same trace and seed:
    restricted to either cut's support, the best weighted stable set of the
    base graph sits between the two right hand sides."""
    if basic.trace is not strengthened.trace and basic.trace != strengthened.trace:
        raise ValueError("cuts come from different traces")
    if tuple(basic.seed) != tuple(strengthened.seed):
        raise ValueError("cuts come from different seeds")
    g = basic.trace.base
    out = []
    for cut in (basic, strengthened):
        res = max_weight_stable_set(g, cut.inequality.as_weights(g.n))
        out.append(res.best_value)
    hb = set(basic.inequality.support)
    hs = set(strengthened.inequality.support)
    # only the last factor is comparable: both procedures maximize the seed
    # inequality there, and the side-constrained region is the smaller one
    dominated = (not basic.factors
                 or strengthened.factors[-1] <= basic.factors[-1])
    return StrengthReport(
        rhs_basic=basic.inequality.rhs,
        rhs_strengthened=strengthened.inequality.rhs,
        alpha_basic=out[0],
        alpha_strengthened=out[1],
        support_contained=hs <= hb,
        last_factor_dominated=dominated,
    )
