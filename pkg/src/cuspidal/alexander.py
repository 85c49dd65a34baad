"""Laurent polynomials over Z, Fox calculus, and Alexander polynomials via
elementary-ideal gcds.

The meridian specialization sends generator x to t^weight(x); every weight
defaults to 1, since all generators of the curve presentations are meridians
of the same curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd as int_gcd

from .errors import InvalidParameter
from .words import Presentation, Word


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial: coefficients from exponent `low` upward.
    Canonical: first and last coefficients nonzero, or coeffs empty (zero).
    """

    low: int
    coeffs: tuple[int, ...]

    def __init__(self, low: int = 0, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            low += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            low = 0
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls(0, ())

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls(0, (1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1):
        return cls(exponent, (coefficient,))

    @classmethod
    def from_coefficients(cls, coeffs, low: int = 0):
        return cls(low, coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Highest exponent; raises on the zero polynomial."""
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    def is_unit(self) -> bool:
        """Units of Z[t, t^-1] are +-t^k."""
        return len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        low = min(self.low, other.low)
        high = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (high - low)
        for i, c in enumerate(self.coeffs):
            out[self.low - low + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - low + i] += c
        return LaurentPolynomial(low, out)

    def __neg__(self):
        return LaurentPolynomial(self.low, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return LaurentPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPolynomial(self.low + other.low, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only defined for units")
        out = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        return LaurentPolynomial(self.low + k, self.coeffs)

    def unit_inverse(self) -> "LaurentPolynomial":
        if not self.is_unit():
            raise ValueError("not a unit")
        return LaurentPolynomial(-self.low, (self.coeffs[0],))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, c)
        return g

    def primitive_part(self) -> "LaurentPolynomial":
        if self.is_zero:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return LaurentPolynomial(self.low, tuple(c // g for c in self.coeffs))

    def normalized(self) -> "LaurentPolynomial":
        """Strip the t^k unit (set low = 0) and make the leading coefficient
        positive."""
        if self.is_zero:
            return self
        coeffs = self.coeffs
        if coeffs[-1] < 0:
            coeffs = tuple(-c for c in coeffs)
        return LaurentPolynomial(0, coeffs)

    def divides(self, other: "LaurentPolynomial") -> bool:
        if self.is_zero:
            return other.is_zero
        q = divide_exact(other, self)
        return q is not None

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.low + i
            if e == 0:
                terms.append(f"{c}")
            elif e == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{e}")
        return " + ".join(terms)


def divide_exact(a: LaurentPolynomial, b: LaurentPolynomial):
    """a / b in Z[t, t^-1] if the division is exact, else None."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return LaurentPolynomial.zero()
    ra = list(a.coeffs)
    rb = list(b.coeffs)
    if len(ra) < len(rb):
        return None
    q = [0] * (len(ra) - len(rb) + 1)
    for i in range(len(q) - 1, -1, -1):
        lead = ra[i + len(rb) - 1]
        if lead % rb[-1]:
            return None
        c = lead // rb[-1]
        q[i] = c
        if c:
            for j, bc in enumerate(rb):
                ra[i + j] -= c * bc
    if any(ra):
        return None
    return LaurentPolynomial(a.low - b.low, q)


def _poly_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of dense integer polynomial coefficient lists."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j, bc in enumerate(b):
            a[shift + j] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a if any(a) else []


def laurent_gcd(a: LaurentPolynomial, b: LaurentPolynomial):
    """Gcd in Z[t, t^-1] (defined up to units): gcd of contents times the
    primitive gcd, computed by a primitive Euclidean remainder sequence."""
    if a.is_zero:
        return b.normalized()
    if b.is_zero:
        return a.normalized()
    content = int_gcd(a.content(), b.content())
    pa = list(a.primitive_part().coeffs)
    pb = list(b.primitive_part().coeffs)
    while pb:
        r = _poly_pseudo_rem(pa, pb)
        # make the remainder primitive to keep coefficients small
        g = 0
        for c in r:
            g = int_gcd(g, c)
        if g > 1:
            r = [c // g for c in r]
        pa, pb = pb, r
    prim = LaurentPolynomial(0, pa).primitive_part()
    return (prim * LaurentPolynomial(0, (content,))).normalized()


def fox_derivative(w: Word, g: int, weights) -> LaurentPolynomial:
    """Fox derivative of a word by generator g (1-based), specialized at the
    meridian map x -> t^weights[x].

    Satisfies d(x)/dx = 1, d(x^-1)/dx = -t^-w(x), and the product rule
    d(uv)/dx = du/dx + phi(u)*dv/dx with phi(u) = t^(weighted exponent sum).
    """
    terms: dict[int, int] = {}
    exp = 0
    for x in w:
        a = abs(x)
        wt = weights[a]
        if x > 0:
            if a == g:
                terms[exp] = terms.get(exp, 0) + 1
            exp += wt
        else:
            exp -= wt
            if a == g:
                terms[exp] = terms.get(exp, 0) - 1
    if not terms:
        return LaurentPolynomial.zero()
    low = min(terms)
    high = max(terms)
    coeffs = [terms.get(e, 0) for e in range(low, high + 1)]
    return LaurentPolynomial(low, coeffs)


def default_weights(p: Presentation) -> dict[int, int]:
    return {i + 1: 1 for i in range(len(p.generators))}


class AlexanderMatrix:
    """Fox-derivative matrix of a presentation: rows are relators, columns
    generators."""

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0


def alexander_matrix(p: Presentation, weights=None) -> AlexanderMatrix:
    if weights is None:
        weights = default_weights(p)
    ngen = len(p.generators)
    return AlexanderMatrix(
        [[fox_derivative(r, g, weights) for g in range(1, ngen + 1)]
         for r in p.relators])


def _det(rows) -> LaurentPolynomial:
    """Cofactor-expansion determinant of a small Laurent-polynomial matrix."""
    n = len(rows)
    if n == 0:
        return LaurentPolynomial.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = LaurentPolynomial.zero()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = a * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _unit_reduce(rows, size):
    """Sound pre-reduction: a unit entry lets us clear its column, delete its
    row and column, and lower the minor size by one (the presented module is
    unchanged and elementary ideals are indexed by corank)."""
    rows = [row[:] for row in rows]
    while size > 0:
        rows = [row for row in rows if any(not e.is_zero for e in row)]
        pivot = None
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if e.is_unit():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = rows[i][j].unit_inverse()
        prow = rows[i]
        for k, row in enumerate(rows):
            if k == i or row[j].is_zero:
                continue
            factor = row[j] * inv
            rows[k] = [row[c] - factor * prow[c] for c in range(len(row))]
        rows = [[row[c] for c in range(len(row)) if c != j]
                for k, row in enumerate(rows) if k != i]
        size -= 1
    return rows, size


def elementary_ideal_gcd(m: AlexanderMatrix, corank: int) -> LaurentPolynomial:
    """Gcd of all (cols - corank)-sized minors, normalized (no t^k factor,
    positive leading coefficient).  Zero if all minors vanish."""
    size = m.cols - corank
    if size < 1:
        raise InvalidParameter("corank leaves no minors to take")
    # deduplicate rows; duplicates contribute only repeated or zero minors
    seen = set()
    rows = []
    for row in m.entries:
        key = tuple((e.low, e.coeffs) for e in row)
        if key in seen or all(e.is_zero for e in row):
            continue
        seen.add(key)
        rows.append(row)
    rows, size = _unit_reduce(rows, size)
    if size == 0:
        return LaurentPolynomial.one()
    if len(rows) < size or (rows and len(rows[0]) < size):
        return LaurentPolynomial.zero()
    ncols = len(rows[0])
    acc = LaurentPolynomial.zero()
    for col_subset in combinations(range(ncols), size):
        for row_subset in combinations(range(len(rows)), size):
            sub = [[rows[i][j] for j in col_subset] for i in row_subset]
            d = _det(sub)
            if d.is_zero:
                continue
            acc = laurent_gcd(acc, d)
            if acc.is_unit():
                return acc.normalized()
    return acc.normalized()


def alexander_polynomial(p: Presentation, strip_t_minus_1: int = 2):
    """First-elementary-ideal gcd of the Fox matrix under the all-meridians
    map, with up to `strip_t_minus_1` factors of (t - 1) removed.

    Returns (polynomial, number of (t - 1) factors stripped).
    """
    m = alexander_matrix(p)
    g = elementary_ideal_gcd(m, corank=1)
    t_minus_1 = LaurentPolynomial(0, (-1, 1))
    stripped = 0
    while stripped < strip_t_minus_1 and not g.is_zero and not g.is_unit():
        q = divide_exact(g, t_minus_1)
        if q is None:
            break
        g = q
        stripped += 1
    return g.normalized(), stripped


def cyclotomic_target(n: int) -> LaurentPolynomial:
    """The expected curve Alexander polynomial for odd n:
    (t^{n-1} - t^{n-2} + ... + t^2 - t + 1)^3."""
    if n < 3 or n % 2 == 0:
        raise InvalidParameter("n must be odd and >= 3")
    return cyclotomic_base(n) ** 3


def cyclotomic_base(n: int) -> LaurentPolynomial:
    """t^{n-1} - t^{n-2} + ... - t + 1 (alternating signs, n odd)."""
    if n < 3 or n % 2 == 0:
        raise InvalidParameter("n must be odd and >= 3")
    coeffs = [(-1) ** k for k in range(n)]
    return LaurentPolynomial(0, coeffs)
