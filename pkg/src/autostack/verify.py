"""Bounded-ball verification of structures against element oracles.

Every check returns a :class:`CheckResult`; failures carry concrete
counterexamples (normal forms, letters, stacking values) that reproduce the
problem.  Properties that are global in nature ((F3), coverage of normal
forms) are checked on the ball, and edges leaving the ball are reported as
coverage notes rather than failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable

from . import automata as fa
from .errors import AutostackError
from .oracles import ball_enumerate
from .stacking import RespectingStructure, verify_split
from .words import format_word, invert

Key = Hashable
MAX_COUNTEREXAMPLES = 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexamples: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "passed": self.passed,
                "counterexamples": self.counterexamples, "notes": self.notes}

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        notes = ", ".join(f"{k}={v}" for k, v in self.notes.items())
        lines = [f"[{status}] {self.name}" + (f" ({notes})" if notes else "")]
        for c in self.counterexamples[:5]:
            lines.append(f"    counterexample: {json.dumps(c, ensure_ascii=False)}")
        return "\n".join(lines)


@dataclass
class VerificationReport:
    structure: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def to_json(self):
        return {"structure": self.structure, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        head = f"verification of {self.structure or 'structure'}: {'PASS' if self.ok else 'FAIL'}"
        return "\n".join([head] + [c.to_text() for c in self.checks])


def _base(s):
    return s.base if isinstance(s, RespectingStructure) else s


class BallContext:
    """Ball elements with cached normal forms, acceptor states and stacking values."""

    def __init__(self, s, oracle, r: int):
        self.s = s
        self.base = _base(s)
        self.oracle = oracle
        self.r = r
        self.ball = ball_enumerate(oracle, s.alphabet, r)
        self._nf: dict = {}
        self._phi: dict = {}

    def nf(self, key: Key):
        if key not in self._nf:
            self._nf[key] = self.s.normal_form(self.ball[key])
        return self._nf[key]

    def raw_phi(self, y, a):
        """Stacking value without the bound check; exceptions are returned, not raised."""
        k = (y, a)
        if k not in self._phi:
            base = self.base
            try:
                state = base.nf.run(y)
                self._phi[k] = tuple(base.stacking.evaluate(base, y, state, a))
            except (AutostackError, KeyError, ValueError) as exc:
                self._phi[k] = exc
        return self._phi[k]

    def edges(self):
        for key in self.ball:
            for a in self.s.alphabet:
                yield key, a


def _edge(y, a, value=None, **extra):
    out = {"y": format_word(y), "letter": a}
    if value is not None:
        out["phi"] = value if isinstance(value, str) else format_word(value)
    out.update(extra)
    return out


def _cap(lst, item):
    if len(lst) < MAX_COUNTEREXAMPLES:
        lst.append(item)


def check_f1(s, oracle, r: int, ctx: BallContext | None = None) -> CheckResult:
    """Each ball edge's stacking path has length ≤ K and the edge's endpoints."""
    ctx = ctx or BallContext(s, oracle, r)
    bad: list = []
    edges = 0
    for key, a in ctx.edges():
        y = ctx.nf(key)
        value = ctx.raw_phi(y, a)
        edges += 1
        if isinstance(value, Exception):
            _cap(bad, _edge(y, a, repr(value), reason="evaluation error"))
            continue
        if len(value) > s.bound:
            _cap(bad, _edge(y, a, value, reason=f"length {len(value)} exceeds K = {s.bound}"))
        if oracle.eval(value, key) != oracle.multiply(key, a):
            _cap(bad, _edge(y, a, value, reason="wrong endpoint"))
    return CheckResult("F1 bounded paths with correct endpoints", not bad, bad,
                       {"radius": r, "edges": edges})


def check_f2(s, oracle, r: int, ctx: BallContext | None = None) -> CheckResult:
    """Tree edges are fixed by the stacking map."""
    ctx = ctx or BallContext(s, oracle, r)
    bad: list = []
    tree = 0
    for key, a in ctx.edges():
        y = ctx.nf(key)
        if not s.in_tree(y, a):
            continue
        tree += 1
        value = ctx.raw_phi(y, a)
        if value != (a,):
            _cap(bad, _edge(y, a, value if not isinstance(value, Exception) else repr(value),
                            reason="tree edge not fixed"))
    return CheckResult("F2 tree edges fixed", not bad, bad, {"radius": r, "tree_edges": tree})


def check_f3_acyclic(s, oracle, r: int, ctx: BallContext | None = None) -> CheckResult:
    """No cycle among non-tree ball edges under 'lies on the flow path of'."""
    ctx = ctx or BallContext(s, oracle, r)
    nodes = []
    succ: dict = {}
    escaping = 0
    for key, a in ctx.edges():
        y = ctx.nf(key)
        if s.in_tree(y, a):
            continue
        nodes.append((key, a))
    node_set = set(nodes)
    for key, a in nodes:
        value = ctx.raw_phi(ctx.nf(key), a)
        out = []
        if not isinstance(value, Exception):
            g = key
            for b in value:
                if g not in ctx.ball:
                    escaping += 1
                elif (g, b) in node_set:
                    out.append((g, b))
                g = ctx.oracle.multiply(g, b)
        succ[(key, a)] = out
    cycle = _find_cycle(nodes, succ)
    bad = []
    if cycle:
        bad.append({"cycle": [_edge(ctx.nf(k), a) for k, a in cycle]})
    return CheckResult("F3 flow acyclic on ball", not bad, bad,
                       {"radius": r, "non_tree_edges": len(nodes), "escaping_steps": escaping})


def _find_cycle(nodes, succ):
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {n: WHITE for n in nodes}
    for root in nodes:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                path.pop()
                continue
            if colour[nxt] == GREY:
                return path[path.index(nxt):]
            if colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def check_uniqueness(s, oracle, r: int, n: int, ctx: BallContext | None = None) -> CheckResult:
    """Normal forms up to length n are pairwise distinct elements and cover the ball."""
    nfs = s.enumerate_normal_forms(n)
    seen: dict = {}
    bad: list = []
    for w in nfs:
        k = oracle.eval(w)
        if k in seen:
            _cap(bad, {"first": format_word(seen[k]), "second": format_word(w),
                       "reason": "two normal forms for one element"})
        else:
            seen[k] = w
    ctx = ctx or BallContext(s, oracle, r)
    missing = 0
    for key in ctx.ball:
        try:
            y = ctx.nf(key)
        except AutostackError as exc:
            _cap(bad, {"element": format_word(ctx.ball[key]), "reason": repr(exc)})
            continue
        if len(y) <= n and seen.get(key) != y:
            _cap(bad, {"element": format_word(ctx.ball[key]), "normal_form": format_word(y),
                       "reason": "solver output not the enumerated normal form"})
        if key not in seen:
            missing += 1
    complete = n >= r * s.bound
    if complete and missing:
        _cap(bad, {"reason": f"{missing} ball elements have no normal form of length ≤ {n}"})
    return CheckResult("normal forms unique", not bad, bad,
                       {"radius": r, "max_length": n, "normal_forms": len(nfs),
                        "ball_elements_beyond_length": missing, "coverage_condition_met": complete})


def check_prefix_closed(s) -> CheckResult:
    bad = []
    if not s.nf.accepts(()):
        bad.append({"reason": "empty word not a normal form"})
    if not s.nf.is_prefix_closed():
        live = s.nf.coreachable()
        bad.append({"reason": "a live state is not accepting",
                    "states": sorted(q for q in live if q not in s.nf.accept)})
    return CheckResult("normal forms prefix-closed", not bad, bad)


def check_respecting(rs: RespectingStructure, oracle, member: Callable[[Key], bool], r: int,
                     ctx: BallContext | None = None) -> CheckResult:
    """Factorisation, subgroup closure and H-translation invariance on the ball."""
    ctx = ctx or BallContext(rs, oracle, r)
    bad: list = []
    try:
        verify_split(rs)
    except AutostackError as exc:
        _cap(bad, {"reason": f"factorisation: {exc}"})
    B = rs.subgroup_alphabet
    subgroup = [k for k in ctx.ball if member(k)]
    for key in subgroup:
        y = ctx.nf(key)
        if any(x not in B for x in y):
            _cap(bad, {"element": format_word(y), "reason": "subgroup element normal form leaves B*"})
        for b in B:
            value = ctx.raw_phi(y, b)
            if isinstance(value, Exception) or any(x not in B for x in value):
                _cap(bad, _edge(y, b, value if not isinstance(value, Exception) else repr(value),
                                reason="subgroup closure"))
    compared = 0
    for key, a in ctx.edges():
        if a in B and member(key):
            continue
        g = ctx.nf(key)
        value = ctx.raw_phi(g, a)
        for hk in subgroup:
            hg = ctx.oracle.eval(ctx.ball[key], hk)
            if hg not in ctx.ball:
                continue
            compared += 1
            other = ctx.raw_phi(ctx.nf(hg), a)
            if other != value:
                _cap(bad, _edge(ctx.nf(hg), a, other if not isinstance(other, Exception) else repr(other),
                                reason="H-translation invariance",
                                untranslated=format_word(g)))
    return CheckResult("respecting subgroup", not bad, bad,
                       {"radius": r, "subgroup_elements": len(subgroup), "translations": compared})


def check_coset_fellow_traveler(data, oracle, member: Callable[[Key], bool],
                                max_len: int = 5) -> CheckResult:
    """Transversal pairs ending within distance 1 modulo H fellow travel within K_ft.

    Distances come from a ball of radius K_ft + 1 over C: a prefix pair whose
    difference lies outside it violates the property.
    """
    C = data.g_alphabet
    K = data.fellow_constant
    dist = {k: len(w) for k, w in ball_enumerate(oracle, C, K).items()}
    words = fa.enumerate_upto(data.transversal, max_len, C.letters)
    ends = [(w, oracle.eval(w)) for w in words]
    bad: list = []
    pairs = 0
    for v, vk in ends:
        for step in [()] + [(c,) for c in C]:
            target = oracle.eval(step, vk)
            for w, _ in ends:
                # h = v·step·w⁻¹ must lie in H
                hk = oracle.eval(invert(w, C), target)
                if not member(hk):
                    continue
                pairs += 1
                for i in range(max(len(v), len(w)) + 1):
                    # d(v(i), h·w(i)) = |v(i)⁻¹ · h · w(i)| with h = v·step·w⁻¹
                    diff = oracle.eval(invert(v[:i], C) + v + step + invert(w, C) + w[:i])
                    if dist.get(diff, K + 1) > K:
                        _cap(bad, {"v": format_word(v), "w": format_word(w),
                                   "step": format_word(step), "prefix_length": i,
                                   "reason": f"prefixes more than {K} apart"})
                        break
    return CheckResult("coset fellow traveler", not bad, bad,
                       {"max_length": max_len, "pairs": pairs, "constant": K})


def run_all(s, oracle, r: int, n: int, member: Callable[[Key], bool] | None = None,
            name: str | None = None) -> VerificationReport:
    """Every applicable check on a radius-r ball and normal forms up to length n."""
    report = VerificationReport(name if name is not None else (s.name or ""))
    ctx = BallContext(s, oracle, r)
    report.add(check_prefix_closed(s))
    report.add(check_f1(s, oracle, r, ctx))
    report.add(check_f2(s, oracle, r, ctx))
    report.add(check_f3_acyclic(s, oracle, r, ctx))
    report.add(check_uniqueness(s, oracle, r, n, ctx))
    if isinstance(s, RespectingStructure) and member is not None:
        report.add(check_respecting(s, oracle, member, r, ctx))
    return report


def multiplier_pairs(data, oracle, h: Key, c: str, max_len: int) -> set:
    """All (x, y) ∈ L × L with |x|, |y| ≤ max_len and x·c = h·y, by direct search."""
    C = data.g_alphabet
    words = fa.enumerate_upto(data.transversal, max_len, C.letters)
    by_key = {oracle.eval(w): w for w in words}
    h_word = tuple(data.ball[h])
    out = set()
    for x in words:
        target = oracle.eval(invert(h_word, C) + x + (c,))
        y = by_key.get(target)
        if y is not None:
            out.add((x, y))
    return out

