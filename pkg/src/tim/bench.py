"""Timing helpers for the scaling checks and scripts."""

from __future__ import annotations

import math
import statistics
import time
from itertools import product

from tim.analysis import analyze, analyze_text
from tim.corpus import mystery_problem, od_domain, od_problem, rocket_problem, text
from tim.oracle import ground_actions, relaxed_reachable
from tim.pddl import parse_domain, parse_problem


def median_time(fn, repeats: int = 5) -> float:
    out = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def loglog_slope(xs, ys) -> float:
    slope, _ = statistics.linear_regression([math.log(x) for x in xs], [math.log(y) for y in ys])
    return slope


def od_timings(ns, repeats: int = 5) -> list[tuple[int, float]]:
    """Analysis time (parsing excluded) for the swap-pair domain with n schemas.

    Each schema brings its own predicate pair, so properties grow with n.
    """
    out = []
    for n in ns:
        d, p = parse_domain(od_domain(n, pairs=n)), parse_problem(od_problem(n, pairs=n))
        out.append((n, median_time(lambda: analyze(d, p), repeats)))
    return out


def mystery_sizes(k: int) -> dict:
    return dict(foods=4 * k, pains=2 * k, pleasures=k, provinces=2 * k, planets=k + 1, seed=k)


def mystery_timings(ks, repeats: int = 5) -> list[tuple[int, float]]:
    """(problem plus domain bytes, parse and analysis time) for growing mystery problems."""
    dom = text("mystery", "domain")
    out = []
    for k in ks:
        prob = mystery_problem(**mystery_sizes(k))
        size = len(dom) + len(prob)
        out.append((size, median_time(lambda: analyze_text(dom, prob), repeats)))
    return out


def rocket_instance_counts(p: int) -> dict:
    """Ground operator counts for the rocket domain with p packages.

    typed: bindings legal under the inferred parameter types that also
    occur in the delete-relaxed plan graph; legal: type-legal bindings;
    static: bindings consistent with the static initial facts.
    """
    d, pr = parse_domain(text("rocket", "domain")), parse_problem(rocket_problem(p))
    a = analyze(d, pr)
    legal = set()
    for t in a.typed:
        doms = [a.problem.objects if t.param(x).types is None else a.members(t.param(x).types)
                for x in t.schema.params]
        legal |= {(t.schema.name, b) for b in product(*doms)}
    static = ground_actions(a.domain, a.problem)
    _, fired = relaxed_reachable(static, a.problem.init)
    reached = {(x.name, x.args) for x in fired}
    return {"typed": len(legal & reached), "legal": len(legal), "static": len(static),
            "all": sum(len(a.problem.objects) ** len(s.params) for s in a.domain.schemas)}
