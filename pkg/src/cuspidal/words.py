"""Free-group words and finitely presented groups.

Words are tuples of nonzero signed integers: letter ``+k`` is the k-th
generator (1-based), ``-k`` its inverse.  Every word is kept freely reduced;
the empty tuple is the identity.  Presentations store their relators in a
canonical cyclic form (cyclically reduced, lexicographically least rotation
among the relator and its inverse) so that duplicate detection is stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import NoDefiningRelator

Word = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


def reduce_word(letters) -> Word:
    """Freely reduce a letter sequence (cancel adjacent x, -x pairs)."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator reference")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(w1: Word, w2: Word) -> Word:
    """Freely reduced concatenation."""
    out = list(w1)
    for x in w2:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def conjugate(w: Word, by: Word) -> Word:
    """by^-1 * w * by, freely reduced."""
    return multiply(multiply(invert(by), w), by)


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    out: Word = ()
    for _ in range(n):
        out = multiply(out, w)
    return out


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v (global convention)."""
    return multiply(multiply(multiply(invert(u), invert(v)), u), v)


def cyclic_reduce(w: Word) -> Word:
    w = reduce_word(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def cyclic_normal_form(w: Word) -> Word:
    """Cyclic reduction, then least rotation among the word and its inverse."""
    w = cyclic_reduce(w)
    if not w:
        return w
    candidates = []
    for u in (w, invert(w)):
        for i in range(len(u)):
            candidates.append(u[i:] + u[:i])
    return min(candidates)


@dataclass(frozen=True)
class Presentation:
    """A finitely presented group: generator names plus relator words.

    Relators are normalized to cyclic normal form on construction.  Instances
    are immutable; all operations return new presentations.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __init__(self, generators, relators):
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise ValueError("duplicate generator names")
        for name in generators:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name: {name!r}")
        norm = []
        g = len(generators)
        for r in relators:
            r = cyclic_normal_form(reduce_word(r))
            for x in r:
                if not 1 <= abs(x) <= g:
                    raise ValueError(f"relator letter {x} out of range")
            norm.append(r)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(norm))

    def generator_index(self, name: str) -> int:
        """1-based index of a generator name."""
        return self.generators.index(name) + 1

    def word(self, text: str) -> Word:
        """Parse a whitespace-separated word, tokens ``name`` or ``name^-1``."""
        return parse_word(text, self.generators)

    def __repr__(self):
        return (f"Presentation({len(self.generators)} generators, "
                f"{len(self.relators)} relators)")


def parse_word(text: str, generators) -> Word:
    index = {name: i + 1 for i, name in enumerate(generators)}
    letters = []
    for tok in text.split():
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        else:
            name, sign = tok, 1
        if name not in index:
            raise ValueError(f"unknown generator: {name!r}")
        letters.append(sign * index[name])
    return reduce_word(letters)


def format_word(w: Word, generators) -> str:
    toks = []
    for x in w:
        name = generators[abs(x) - 1]
        toks.append(name if x > 0 else name + "^-1")
    return " ".join(toks)


def format_presentation(p: Presentation) -> str:
    """Bit-exact text format: a ``gens:`` line then one relator per line."""
    lines = ["gens: " + " ".join(p.generators)]
    lines.extend(format_word(r, p.generators) for r in p.relators)
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("gens:"):
        raise ValueError("presentation text must start with a 'gens:' line")
    generators = lines[0][len("gens:"):].split()
    relators = [parse_word(ln, generators) for ln in lines[1:]]
    return Presentation(generators, relators)


def presentation_to_json(p: Presentation) -> str:
    doc = {"generators": list(p.generators),
           "relators": [list(r) for r in p.relators]}
    return json.dumps(doc, sort_keys=True)


def presentation_from_json(text: str) -> Presentation:
    doc = json.loads(text)
    return Presentation(doc["generators"], [tuple(r) for r in doc["relators"]])


@dataclass(frozen=True)
class GroupMap:
    """A candidate homomorphism: an image word per source generator.

    Well-definedness is not checked here; it is probed by the verification
    operations (abelianization comparison, relator triviality in finite
    quotients).
    """

    source: Presentation
    target: Presentation
    images: tuple[Word, ...]  # aligned with source.generators

    def apply(self, w: Word) -> Word:
        out: Word = ()
        for x in w:
            img = self.images[abs(x) - 1]
            out = multiply(out, img if x > 0 else invert(img))
        return out


def _substitute(w: Word, g: int, defining: Word) -> Word:
    """Replace every occurrence of generator g (1-based) by `defining`."""
    inv = invert(defining)
    out: list[int] = []
    for x in w:
        repl = defining if x == g else inv if x == -g else (x,)
        for y in repl:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def _drop_generator(w: Word, g: int) -> Word:
    """Reindex letters after removal of generator g; g must not occur."""
    out = []
    for x in w:
        a = abs(x)
        assert a != g
        out.append(x if a < g else (a - 1) * (1 if x > 0 else -1))
    return tuple(out)


def _find_defining_relator(p: Presentation, g: int, defining: Word):
    """Index of a relator equal (cyclically, up to inversion) to g*defining^-1."""
    target = cyclic_normal_form(multiply((g,), invert(defining)))
    for i, r in enumerate(p.relators):
        if r == target:
            return i
    return None


def tietze_eliminate(p: Presentation, gen: str, defining: Word) -> Presentation:
    """Eliminate a generator via a defining relator.

    `defining` is a word over p not containing `gen`; some relator must be
    cyclically equivalent to gen*defining^-1 (up to inversion).  That relator
    is consumed and every other occurrence of gen replaced by `defining`.
    """
    g = p.generator_index(gen)
    if any(abs(x) == g for x in defining):
        raise NoDefiningRelator(f"defining word contains {gen!r}")
    idx = _find_defining_relator(p, g, defining)
    if idx is None:
        raise NoDefiningRelator(f"no relator defines {gen!r} as the given word")
    gens = p.generators[:g - 1] + p.generators[g:]
    relators = []
    for i, r in enumerate(p.relators):
        if i == idx:
            continue
        relators.append(_drop_generator(_substitute(r, g, defining), g))
    return Presentation(gens, relators)


def _tidy(generators, relators):
    """Drop empty and duplicate relators (canonical forms compared)."""
    seen = set()
    out = []
    for r in relators:
        r = cyclic_normal_form(r)
        if not r or r in seen:
            continue
        seen.add(r)
        out.append(r)
    return out


def _elimination_candidate(generators, relators):
    """Best (relator index, 1-based generator) pair for a Tietze elimination.

    A generator qualifies if it occurs exactly once in some relator.  Priority:
    shortest relator first, then lowest generator index, then relator index.
    """
    best = None
    for ri, r in enumerate(relators):
        counts: dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for g, c in counts.items():
            if c == 1:
                key = (len(r), g, ri)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best[2], best[1]


def simplify(p: Presentation, budget: int) -> Presentation:
    """Deterministic Tietze simplification driver.

    Each step eliminates one generator that occurs exactly once in some
    relator; empty and duplicate relators are dropped between steps.  At most
    `budget` eliminations are performed; the generator count never increases.
    """
    q, _ = simplify_with_map(p, budget)
    return q


def simplify_with_map(p: Presentation, budget: int):
    """Like simplify, but also returns each original generator's image word."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    generators = list(p.generators)
    relators = _tidy(generators, list(p.relators))
    images: list[Word] = [(i + 1,) for i in range(len(generators))]
    steps = 0
    while steps < budget:
        cand = _elimination_candidate(generators, relators)
        if cand is None:
            break
        ri, g = cand
        r = relators[ri]
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[pos:] + r[:pos]
        if rot[0] < 0:
            rot = invert(rot)
            rot = rot[-1:] + rot[:-1]
        # rot = g * w, so g is defined by w^-1
        defining = invert(rot[1:])
        del relators[ri]
        relators = [_drop_generator(_substitute(w, g, defining), g)
                    for w in relators]
        images = [_drop_generator(_substitute(w, g, defining), g)
                  for w in images]
        del generators[g - 1]
        relators = _tidy(generators, relators)
        steps += 1
    result = Presentation(generators, relators)
    return result, {name: img for name, img in zip(p.generators, images)}
