"""Constructors for the concrete presentations under study and the maps
between them.

Conventions, fixed globally:
  * [u, v] = u^-1 v^-1 u v;
  * a relation written X = Y is stored as the relator X * Y^-1;
  * epsilon generators are named eps_i_j, the line-arrangement group uses
    e, l0, l1, l2, the 9-cuspidal comparison presentation g2, g00, ..., g11.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (AbelianStructure, IntegerMatrix, abelianization,
                      invariant_factors, relator_matrix, smith_normal_form)
from .errors import InvalidParameter
from .homcount import TrivialityReport, count_homs, relator_triviality_check
from .rewriting import AbelianTarget, subgroup_presentation
from .words import (GroupMap, Presentation, Word, commutator, invert,
                    multiply, power, simplify, simplify_with_map,
                    tietze_eliminate)


def presentation_G_raw() -> Presentation:
    """The line-and-conic arrangement group, as read off the real picture:
    five generators, the eight monodromy relations plus the projective one.

    The common value of e1 = e2 is written with e1 in the other relators.
    """
    gens = ("e1", "e2", "l0", "l1", "l2")
    e1, e2, l0, l1, l2 = ((1,), (2,), (3,), (4,), (5,))
    e = e1
    conj_e = multiply(multiply(e, l1), invert(e))  # e l1 e^-1
    l1_e_l1 = multiply(multiply(invert(l1), e), l1)  # l1^-1 e l1
    relators = [
        multiply(e1, invert(e2)),                                    # i2
        commutator(conj_e, l2),                                      # i1
        multiply(power(multiply(l1, e), 2),
                 invert(power(multiply(e, l1), 2))),                 # i3
        multiply(power(multiply(l2, e), 2),
                 invert(power(multiply(e, l2), 2))),                 # i4
        commutator(conj_e, l0),                                      # i5
        multiply(power(multiply(l0, l1_e_l1), 2),
                 invert(power(multiply(l1_e_l1, l0), 2))),           # i6
        multiply(multiply(multiply(invert(l0), l1_e_l1), l0),
                 invert(multiply(multiply(l2, e), invert(l2)))),     # i7
        commutator(l2, multiply(multiply(l1_e_l1, l0),
                                invert(l1_e_l1))),                   # i8
        multiply(multiply(multiply(l2, power(e, 2)), l1), l0),       # projective
    ]
    return Presentation(gens, relators)


def presentation_G() -> Presentation:
    """The simplified arrangement group on e, l1, l2."""
    gens = ("e", "l1", "l2")
    e, l1, l2 = ((1,), (2,), (3,))
    conj_e = multiply(multiply(e, l1), invert(e))
    relators = [
        commutator(conj_e, l2),
        multiply(power(multiply(l1, e), 2), invert(power(multiply(e, l1), 2))),
        multiply(power(multiply(l2, e), 2), invert(power(multiply(e, l2), 2))),
        multiply(power(multiply(multiply(l1, l2), e), 2),
                 invert(power(multiply(e, multiply(l1, l2)), 2))),
    ]
    return Presentation(gens, relators)


def eps_name(i: int, j: int) -> str:
    return f"eps_{i}_{j}"


def presentation_pi1(n: int) -> Presentation:
    """The curve-complement group on n^2 generators eps_i_j (indices mod n):
    two conjugation-recurrence families plus one long relator of 2n letters.
    """
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    gens = tuple(eps_name(i, j) for i in range(n) for j in range(n))
    idx = {(i, j): i * n + j + 1 for i in range(n) for j in range(n)}
    relators = []
    for i in range(n):
        for j in range(n):
            # eps_{i+2,j} = eps_{i+1,j}^-1 eps_{i,j} eps_{i+1,j}
            a, b, c = idx[(i + 2) % n, j], idx[(i + 1) % n, j], idx[i, j]
            relators.append((a, -b, -c, b))
            # eps_{i,j+2} = eps_{i,j+1}^-1 eps_{i,j} eps_{i,j+1}
            a, b, c = idx[i, (j + 2) % n], idx[i, (j + 1) % n], idx[i, j]
            relators.append((a, -b, -c, b))
    long_rel = []
    for k in range(n):
        long_rel.append(idx[k, k])
        long_rel.append(idx[k, (k + 1) % n])
    relators.append(tuple(long_rel))
    return Presentation(gens, relators)


def long_relator(n: int) -> Word:
    """The 2n-letter product relator of presentation_pi1(n): the letters
    eps_k_k, eps_k_{k+1} for k = 0..n-1, indices mod n."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    return tuple(i * n + j + 1 for k in range(n)
                 for (i, j) in ((k, k), (k, (k + 1) % n)))


def _reduced_words(n: int) -> dict:
    """Words over (eps_0_0, eps_0_1, eps_1_0, eps_1_1) for every eps_i_j,
    obtained by expanding the recurrences, j-direction first."""
    w: dict[tuple[int, int], Word] = {
        (0, 0): (1,), (0, 1): (2,), (1, 0): (3,), (1, 1): (4,)}
    from .words import conjugate
    for i in (0, 1):
        for j in range(2, n):
            w[i, j] = conjugate(w[i, j - 2], w[i, j - 1])
    for i in range(2, n):
        for j in range(n):
            w[i, j] = conjugate(w[i - 2, j], w[i - 1, j])
    return w


def presentation_pi1_reduced(n: int) -> Presentation:
    """The same group on the four generators eps_i_j, i,j in {0,1}.

    Every relator of the full presentation is expanded through the recurrence
    words; the relators that served as definitions reduce to nothing and the
    wrap-around and cross-consistency ones survive.
    """
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    w = _reduced_words(n)
    from .words import conjugate
    relators = []
    for i in range(n):
        for j in range(n):
            relators.append(multiply(
                w[(i + 2) % n, j],
                invert(conjugate(w[i, j], w[(i + 1) % n, j]))))
            relators.append(multiply(
                w[i, (j + 2) % n],
                invert(conjugate(w[i, j], w[i, (j + 1) % n]))))
    long_rel: Word = ()
    for k in range(n):
        long_rel = multiply(long_rel, w[k, k])
        long_rel = multiply(long_rel, w[k, (k + 1) % n])
    relators.append(long_rel)
    gens = (eps_name(0, 0), eps_name(0, 1), eps_name(1, 0), eps_name(1, 1))
    return Presentation(gens, relators)


def derive_pi1_via_rs(n: int, *, simplify_budget: int = 10_000,
                      line_meridian_mode: str = "post") -> Presentation:
    """Independent derivation of the curve group: Reidemeister-Schreier on
    the arrangement group along (Z/n)^2, quotienting by the line meridian
    powers l1^n, l2^n and (l2 e^2 l1)^-n, then Tietze simplification."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    p = presentation_G()
    target = AbelianTarget(moduli=(n, n), generators=p.generators,
                           images=((0, 0), (1, 0), (0, 1)))
    e, l1, l2 = ((1,), (2,), (3,))
    l0 = invert(multiply(multiply(l2, power(e, 2)), l1))
    extras = [power(l1, n), power(l2, n), power(l0, n)]
    result = subgroup_presentation(
        p, target, extras, generator_order=("l1", "l2", "e"),
        simplify_budget=simplify_budget, line_meridian_mode=line_meridian_mode)
    # any surviving l1_i_j generators are eliminable by their commutator
    # rewrites; a second simplification pass consumes stragglers
    while any(name.startswith("l1_") for name in result.generators):
        before = len(result.generators)
        result = simplify(result, simplify_budget)
        if len(result.generators) == before:
            break
    return result


def presentation_zariski3(variant: str = "corrected") -> Presentation:
    """The comparison presentation for the 9-cuspidal sextic: braid relations
    g2 g_ij g2 = g_ij g2 g_ij for i,j in {0,1,2} with the index-2 entries
    expanded through the substitution table.

    "stated" keeps the table verbatim: g22 = g21 g20 g21^-1, nine relators,
    nothing else.  Its abelianization is Z (every braid relator only equates
    generators there), so it cannot present the curve group as it stands.

    "corrected" repairs the single defective table entry -- g22 conjugates
    g00, not g20; with the verbatim entry the pulled-back (2,2) braid
    relation fails in the curve group while all eight others hold -- and
    closes the presentation projectively with two more relators: the image
    of the 2n-letter product relator, and the identification of g00 with the
    image of eps_11 (eps_01^-1 eps_00 eps_01) eps_11^-1.  The result has
    abelianization Z/6 and matches the reduced curve presentation on the
    whole invariant battery.
    """
    if variant not in ("stated", "corrected"):
        raise InvalidParameter(f"unknown variant: {variant!r}")
    gens = ("g2", "g00", "g01", "g10", "g11")
    g2: Word = (1,)
    table: dict[tuple[int, int], Word] = {
        (0, 0): (2,), (0, 1): (3,), (1, 0): (4,), (1, 1): (5,)}

    def conj(a: Word, by: Word) -> Word:  # by * a * by^-1, as in the table
        return multiply(multiply(by, a), invert(by))

    table[2, 0] = conj(table[0, 0], table[1, 0])
    table[2, 1] = conj(table[1, 0], table[1, 1])
    table[0, 2] = conj(table[0, 0], table[0, 1])
    table[1, 2] = conj(table[1, 0], table[1, 1])
    if variant == "stated":
        table[2, 2] = conj(table[2, 0], table[2, 1])
    else:
        table[2, 2] = conj(table[0, 0], table[2, 1])
    relators = []
    for i in range(3):
        for j in range(3):
            gij = table[i, j]
            lhs = multiply(multiply(g2, gij), g2)
            rhs = multiply(multiply(gij, g2), gij)
            relators.append(multiply(lhs, invert(rhs)))
    if variant == "corrected":
        relators.extend(_zariski3_completion())
    return Presentation(gens, relators)


def _zariski3_completion() -> list[Word]:
    """The two closing relators of the corrected comparison presentation:
    the image of the reduced product relator under the candidate map, and
    g00^-1 times the image of eps_11 (eps_01^-1 eps_00 eps_01) eps_11^-1."""
    source = presentation_pi1_reduced(3)
    g2, g00, g01, g10, g11 = ((1,), (2,), (3,), (4,), (5,))
    images = {
        eps_name(0, 0): multiply(multiply(g2, g11), invert(g2)),
        eps_name(1, 0): g2,
        eps_name(0, 1): g10,
        eps_name(1, 1): multiply(multiply(g2, g01), invert(g2)),
    }

    def apply(w: Word) -> Word:
        out: Word = ()
        for x in w:
            img = images[source.generators[abs(x) - 1]]
            out = multiply(out, img if x > 0 else invert(img))
        return out

    w = _reduced_words(3)
    product: Word = ()
    for k in range(3):
        product = multiply(product, w[k, k])
        product = multiply(product, w[k, (k + 1) % 3])
    e00 = (source.generator_index(eps_name(0, 0)),)
    e01 = (source.generator_index(eps_name(0, 1)),)
    e11 = (source.generator_index(eps_name(1, 1)),)
    inner = multiply(multiply(invert(e01), e00), e01)
    fifth = multiply(multiply(e11, inner), invert(e11))
    return [apply(product), multiply(apply(fifth), invert(g00))]


def zariski_iso_candidate(variant: str = "corrected") -> GroupMap:
    """The candidate isomorphism from the reduced curve presentation (n = 3)
    to the comparison presentation."""
    source = presentation_pi1_reduced(3)
    target = presentation_zariski3(variant)
    g2, g01, g10, g11 = ((1,), (3,), (4,), (5,))
    images = {
        eps_name(0, 0): multiply(multiply(g2, g11), invert(g2)),
        eps_name(1, 0): g2,
        eps_name(0, 1): g10,
        eps_name(1, 1): multiply(multiply(g2, g01), invert(g2)),
    }
    return GroupMap(source, target,
                    tuple(images[name] for name in source.generators))


def zariski_aux_datum(variant: str = "corrected"):
    """The fifth displayed correspondence, kept as a consistency datum:
    (source word eps_11 * eps_00^{01} * eps_11^-1, target word g00)."""
    source = presentation_pi1_reduced(3)
    e00 = (source.generator_index(eps_name(0, 0)),)
    e01 = (source.generator_index(eps_name(0, 1)),)
    e11 = (source.generator_index(eps_name(1, 1)),)
    conj = multiply(multiply(invert(e01), e00), e01)  # eps_00^{01}
    src = multiply(multiply(e11, conj), invert(e11))
    return src, (2,)  # g00 in the target


def presentation_oka(n: int) -> Presentation:
    """The free product Z/2 * Z/n."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    return Presentation(("a", "b"), [(1, 1), (2,) * n])


def oka_quotient(n: int, *, simplify_budget: int = 10_000):
    """Quotient of the curve group by eps_i_j = eps_i_0, with the canonical
    map tracked through simplification.  Returns (GroupMap, Presentation)."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    p = presentation_pi1(n)
    idx = {(i, j): i * n + j + 1 for i in range(n) for j in range(n)}
    relators = list(p.relators)
    for i in range(n):
        for j in range(1, n):
            relators.append((idx[i, j], -idx[i, 0]))
    raw = Presentation(p.generators, relators)
    quotient, image_map = simplify_with_map(raw, simplify_budget)
    images = tuple(image_map[name] for name in p.generators)
    return GroupMap(p, quotient, images), quotient


@dataclass(frozen=True)
class MapCheckReport:
    source_h1: AbelianStructure
    target_h1: AbelianStructure
    h1_well_defined: bool
    h1_surjective: bool
    h1_isomorphism: bool
    triviality: TrivialityReport
    hom_counts: tuple[tuple[int, int, int], ...]  # (k, source, target)

    @property
    def consistent_with_isomorphism(self) -> bool:
        return (self.h1_isomorphism and self.triviality.passed
                and all(a == b for _, a, b in self.hom_counts))


def _in_row_lattice(vector, matrix: IntegerMatrix) -> bool:
    """Is the vector an integer combination of the matrix rows?"""
    d, _, v = smith_normal_form(matrix)
    # row lattice of m = row lattice of D*V^-1; v in L  <=>  v*V in rows(D)
    w = [sum(vector[i] * v.data[i][j] for i in range(matrix.cols))
         for j in range(matrix.cols)]
    n = min(matrix.rows, matrix.cols)
    for j in range(matrix.cols):
        dj = d.data[j][j] if j < n else 0
        if dj == 0:
            if w[j] != 0:
                return False
        elif w[j] % dj != 0:
            return False
    return True


def exponent_vector(w: Word, ngen: int) -> list[int]:
    out = [0] * ngen
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


def map_check(m: GroupMap, kmax: int = 3, budget: int = 10**9,
              check_triviality: bool = True) -> MapCheckReport:
    """Necessary-condition battery for a GroupMap: the induced map on H1,
    relator triviality in symmetric-group quotients, and hom-count agreement.
    """
    ngen_t = len(m.target.generators)
    src_h1 = abelianization(m.source)
    tgt_h1 = abelianization(m.target)
    rt = relator_matrix(m.target)
    well_defined = all(
        _in_row_lattice(exponent_vector(m.apply(r), ngen_t), rt)
        for r in m.source.relators)
    image_rows = [exponent_vector(img, ngen_t) for img in m.images]
    stacked = IntegerMatrix.from_rows(image_rows + [row for row in rt.data]
                                      ) if (image_rows or rt.rows) else \
        IntegerMatrix(0, ngen_t)
    facs = invariant_factors(stacked)
    surjective = len(facs) == ngen_t and all(d == 1 for d in facs)
    iso = surjective and src_h1 == tgt_h1
    if check_triviality:
        triviality = relator_triviality_check(m, kmax, budget)
    else:
        triviality = TrivialityReport(True, {}, ())
    hom_counts = tuple(
        (k, count_homs(m.source, k, budget).total,
         count_homs(m.target, k, budget).total)
        for k in range(2, kmax + 1))
    return MapCheckReport(src_h1, tgt_h1, well_defined, surjective, iso,
                          triviality, hom_counts)
