"""Brute-force homomorphism counting into small symmetric groups.

Permutations on k symbols are tuples of length k.  Words act left to right:
the image of u*v is image(u) followed by image(v), i.e.
compose(a, b)[x] = b[a[x]].

The search assigns generator images one at a time along a statically planned
order.  A generator that occurs exactly once in a relator whose other
generators are already assigned is *determined*: its image is solved for
directly instead of enumerated.  Relators are verified as soon as all their
generators have images.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidParameter
from .words import GroupMap, Presentation, Word

Permutation = tuple[int, ...]


def identity_perm(k: int) -> Permutation:
    return tuple(range(k))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a then b."""
    return tuple(b[x] for x in a)


def invert_perm(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def word_image(w: Word, assignment) -> Permutation:
    """Image of a word; assignment maps 1-based generator index to Permutation."""
    if not w:
        raise ValueError("cannot infer symbol count from the empty word "
                         "without an assignment")
    k = len(assignment[abs(w[0])])
    out = identity_perm(k)
    for x in w:
        p = assignment[abs(x)]
        out = compose(out, p if x > 0 else invert_perm(p))
    return out


@dataclass(frozen=True)
class HomCountReport:
    symbols: int
    total: int
    surjective: int | None = None


def _word_image_partial(w: Word, images, k: int) -> Permutation:
    out = identity_perm(k)
    for x in w:
        p = images[abs(x) - 1]
        out = compose(out, p if x > 0 else invert_perm(p))
    return out


def _build_plan(p: Presentation):
    """Static assignment plan: list of steps, each either
    ("enum", g, checks) or ("det", g, relator, position, checks),
    with g a 0-based generator index and checks a list of relator indices
    that become fully assigned at that step (the solving relator excluded).
    """
    ngen = len(p.generators)
    gens_of = [sorted({abs(x) - 1 for x in r}) for r in p.relators]
    occurrences = [[sum(1 for x in r if abs(x) - 1 == g) for g in range(ngen)]
                   for r in p.relators]
    assigned: set[int] = set()
    checked: set[int] = set()
    plan = []
    while len(assigned) < ngen:
        det = None
        for ri, gens in enumerate(gens_of):
            if ri in checked:
                continue
            missing = [g for g in gens if g not in assigned]
            if len(missing) == 1 and occurrences[ri][missing[0]] == 1:
                key = (len(p.relators[ri]), missing[0], ri)
                if det is None or key < det:
                    det = key
        if det is not None:
            _, g, ri = det
            pos = next(i for i, x in enumerate(p.relators[ri])
                       if abs(x) - 1 == g)
            assigned.add(g)
            checked.add(ri)
            checks = [rj for rj, gj in enumerate(gens_of)
                      if rj not in checked and gj
                      and all(x in assigned for x in gj)]
            checked.update(checks)
            plan.append(("det", g, ri, pos, checks))
        else:
            best = None
            for g in range(ngen):
                if g in assigned:
                    continue
                completes = sum(1 for ri, gens in enumerate(gens_of)
                                if ri not in checked and gens
                                and all(x in assigned or x == g for x in gens))
                key = (-completes, g)
                if best is None or key < best:
                    best = key
            g = best[1]
            assigned.add(g)
            checks = [rj for rj, gj in enumerate(gens_of)
                      if rj not in checked and gj
                      and all(x in assigned for x in gj)]
            checked.update(checks)
            plan.append(("enum", g, checks))
    empty_ok = all(r for r in p.relators)  # empty relators always hold
    return plan, empty_ok


def _solve_determined(relator: Word, pos: int, images, k: int) -> Permutation:
    """Solve u * g^s * v = id for the image of g."""
    u = _word_image_partial(relator[:pos], images, k)
    v = _word_image_partial(relator[pos + 1:], images, k)
    x = compose(invert_perm(u), invert_perm(v))
    return x if relator[pos] > 0 else invert_perm(x)


def iter_homs(p: Presentation, k: int, budget: int = 10**9):
    """Yield every relator-respecting assignment (tuple of Permutations,
    aligned with p.generators)."""
    if not 2 <= k <= 5:
        raise InvalidParameter("symbol count must be between 2 and 5")
    perms = list(itertools.permutations(range(k)))
    plan, _ = _build_plan(p)
    ngen = len(p.generators)
    images: list[Permutation | None] = [None] * ngen
    nodes = 0

    def ok(checks) -> bool:
        ident = identity_perm(k)
        for ri in checks:
            if _word_image_partial(p.relators[ri], images, k) != ident:
                return False
        return True

    def rec(step: int):
        nonlocal nodes
        if step == len(plan):
            yield tuple(images)
            return
        kind = plan[step][0]
        if kind == "det":
            _, g, ri, pos, checks = plan[step]
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exceeded")
            images[g] = _solve_determined(p.relators[ri], pos, images, k)
            if ok(checks):
                yield from rec(step + 1)
            images[g] = None
        else:
            _, g, checks = plan[step]
            for perm in perms:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(f"node budget {budget} exceeded")
                images[g] = perm
                if ok(checks):
                    yield from rec(step + 1)
            images[g] = None

    if ngen == 0:
        yield ()
        return
    yield from rec(0)


def count_homs(p: Presentation, k: int, budget: int = 10**9,
               count_surjective: bool = False) -> HomCountReport:
    """Exact number of homomorphisms into the symmetric group on k symbols."""
    total = 0
    surj = 0
    for images in iter_homs(p, k, budget):
        total += 1
        if count_surjective:
            if _generates_sym(images, k):
                surj += 1
    return HomCountReport(k, total, surj if count_surjective else None)


def _generates_sym(perms, k: int) -> bool:
    import math
    seen = {identity_perm(k)}
    frontier = list(seen)
    gens = [p for p in perms]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen) == math.factorial(k)


@dataclass(frozen=True)
class TrivialityWitness:
    symbols: int
    relator_index: int
    assignment: tuple[Permutation, ...]
    image: Permutation


@dataclass(frozen=True)
class TrivialityReport:
    passed: bool
    homs_checked: dict[int, int]
    witnesses: tuple[TrivialityWitness, ...]


def relator_triviality_check(m: GroupMap, kmax: int,
                             budget: int = 10**9) -> TrivialityReport:
    """Necessary condition for a GroupMap to be a homomorphism.

    For every homomorphism of the target into S_k (k <= kmax), every source
    relator's image word must evaluate to the identity.
    """
    if not 2 <= kmax <= 5:
        raise InvalidParameter("kmax must be between 2 and 5")
    relator_images = [m.apply(r) for r in m.source.relators]
    witnesses = []
    homs_checked = {}
    for k in range(2, kmax + 1):
        ident = identity_perm(k)
        count = 0
        for images in iter_homs(m.target, k, budget):
            count += 1
            for ri, w in enumerate(relator_images):
                if not w:
                    continue
                got = _word_image_partial(w, images, k)
                if got != ident:
                    witnesses.append(TrivialityWitness(k, ri, images, got))
        homs_checked[k] = count
    return TrivialityReport(not witnesses, homs_checked, tuple(witnesses))
