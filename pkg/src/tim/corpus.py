"""Bundled example domains and generators for scaled problem families."""

from __future__ import annotations

import random
from importlib import resources

from tim.pddl import DomainModel, ProblemModel, parse_domain, parse_problem

NAMES = (
    "rocket-mini", "rocket", "od", "blocks", "gripper", "lightswitch",
    "postpone", "abstract", "tyre", "mystery", "logistics",
)


def text(name: str, part: str) -> str:
    return resources.files("tim").joinpath("corpus", f"{name}-{part}.pddl").read_text()


def path(name: str, part: str):
    return resources.files("tim").joinpath("corpus", f"{name}-{part}.pddl")


def load(name: str) -> tuple[DomainModel, ProblemModel]:
    return parse_domain(text(name, "domain")), parse_problem(text(name, "problem"))


def rocket_problem(p: int) -> str:
    pkgs = [f"package{i}" for i in range(1, p + 1)]
    init = ["(at rocket london)", "(fuelled rocket)", "(container rocket)", "(loc london)", "(loc paris)"]
    init += [f"(obj {x})" for x in pkgs] + [f"(at {x} london)" for x in pkgs]
    goal = " ".join(f"(at {x} paris)" for x in pkgs)
    return (f"(define (problem rocket-{p}) (:domain rocket)\n"
            f"  (:objects rocket {' '.join(pkgs)} london paris)\n"
            f"  (:init {' '.join(init)})\n  (:goal (and {goal})))\n")


def od_domain(n: int, pairs: int = 20) -> str:
    """The swap-pair test domain with ``n`` schemas over max(n, pairs) predicate pairs."""
    preds = " ".join(f"(p{i} ?x ?y) (q{i} ?x ?y)" for i in range(1, max(n, pairs) + 1))
    acts = []
    for i in range(1, n + 1):
        acts.append(
            f"  (:action o{i}\n    :parameters (?x ?y ?z)\n"
            f"    :precondition (and (p{i} ?x ?y) (q{i} ?x ?z))\n"
            f"    :effect (and (not (p{i} ?x ?y)) (not (q{i} ?x ?z)) (p{i} ?x ?z) (q{i} ?x ?y)))")
    return f"(define (domain od)\n  (:predicates {preds})\n" + "\n".join(acts) + ")\n"


def od_problem(n: int, pairs: int = 20) -> str:
    init = " ".join(f"(p{i} a b) (q{i} a c)" for i in range(1, max(n, pairs) + 1))
    return f"(define (problem op) (:domain od) (:objects a b c)\n  (:init {init})\n  (:goal (and (p1 a c) (q1 a b))))\n"


def gripper_problem(balls: int, rooms: int = 2) -> str:
    rs = [f"room{i}" for i in range(1, rooms + 1)]
    bs = [f"ball{i}" for i in range(1, balls + 1)]
    init = [f"(room {r})" for r in rs] + [f"(ball {b})" for b in bs]
    init += ["(gripper left)", "(gripper right)", "(free left)", "(free right)", f"(at_robot {rs[0]})"]
    init += [f"(at {b} {rs[0]})" for b in bs]
    goal = " ".join(f"(at {b} {rs[-1]})" for b in bs)
    return (f"(define (problem gripper-{balls}) (:domain gripper-strips)\n"
            f"  (:objects {' '.join(rs + bs)} left right)\n"
            f"  (:init {' '.join(init)})\n  (:goal (and {goal})))\n")


def mystery_problem(foods: int, pains: int, pleasures: int, provinces: int, planets: int,
                    seed: int = 0) -> str:
    """A random but well-formed problem for the disguised transport domain."""
    rng = random.Random(seed)
    fs = [f"food{i}" for i in range(foods)]
    cs = [f"pain{i}" for i in range(pains)]
    vs = [f"pleasure{i}" for i in range(pleasures)]
    ps = [f"province{i}" for i in range(provinces)]
    ss = [f"planet{i}" for i in range(planets)]
    init = [f"(food {x})" for x in fs] + [f"(pain {x})" for x in cs]
    init += [f"(pleasure {x})" for x in vs] + [f"(province {x})" for x in ps] + [f"(planet {x})" for x in ss]
    edges = {(fs[i], fs[(i + 1) % foods]) for i in range(foods)}
    for _ in range(foods):
        a, b = rng.sample(fs, 2)
        edges.add((a, b))
    edges |= {(b, a) for a, b in edges}
    init += [f"(eats {a} {b})" for a, b in sorted(edges)]
    init += [f"(attacks {a} {b})" for a, b in zip(ps, ps[1:])]
    init += [f"(orbits {a} {b})" for a, b in zip(ss[1:], ss)]
    init += [f"(locale {f} {rng.choice(ps)})" for f in fs]
    init += [f"(harmony {v} {rng.choice(ss)})" for v in vs]
    init += [f"(craves {x} {rng.choice(fs)})" for x in vs + cs]
    goal = f"(craves {cs[0]} {fs[-1]})" if cs else f"(craves {vs[0]} {fs[-1]})"
    body = "\n    ".join(" ".join(init[i:i + 6]) for i in range(0, len(init), 6))
    return (f"(define (problem mystery-{seed}) (:domain mystery-strips)\n"
            f"  (:objects {' '.join(fs + cs + vs + ps + ss)})\n"
            f"  (:init\n    {body})\n  (:goal (and {goal})))\n")
