"""Exact finite-field verification of the curve geometry.

The curve of interest is F_n = f(x^n, y^n, z^n) with
f = x^2 + y^2 + z^2 + 2(xz - xy + yz).  Working over a prime field with
p = 1 mod 2n puts the needed 2n-th roots of unity in the field, so the 3n
singular points have exact coordinates and linear-system ranks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import (InvalidParameter, NotSingular, RankDeficiencySuspect,
                     SplittingFailure, VerificationFailure)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the ranges used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """F_p with a precomputed primitive root of the multiplicative group."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidParameter(f"{p} is not prime")
        self.p = p
        self.primitive_root = self._find_primitive_root()

    def _find_primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        factors = _factorize(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise VerificationFailure("no primitive root found")  # unreachable

    def inv(self, a: int) -> int:
        return pow(a % self.p, self.p - 2, self.p)

    def nth_roots_of(self, n: int, value: int) -> list[int]:
        """All solutions of w^n = value, via the primitive root."""
        p = self.p
        if (p - 1) % n:
            raise InvalidParameter(f"field lacks full {n}-th roots")
        g = self.primitive_root
        value %= p
        # discrete log of value by scan; fields here are small enough
        acc, k = 1, 0
        while acc != value:
            acc = acc * g % p
            k += 1
            if k >= p:
                raise InvalidParameter("value is zero or not in the group")
        if k % _gcd(n, p - 1):
            return []
        step = (p - 1) // n
        base = (k // n) % (p - 1)
        return sorted({pow(g, base + i * step, p) for i in range(n)})

    def __repr__(self):
        return f"PrimeField({self.p})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def choose_prime(n: int, minimum: int = 2, *, mod4: bool = False) -> PrimeField:
    """Smallest prime p >= minimum with p = 1 mod 2n (and 1 mod 4 on request),
    so F_p contains the 2n-th roots of unity."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    p = max(minimum, 3)
    while p < 2**31:
        if p % (2 * n) == 1 and (not mod4 or p % 4 == 1) and is_prime(p):
            return PrimeField(p)
        p += 1
    raise VerificationFailure("no admissible prime below 2^31")


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^2(F_p), normalized so the first nonzero coordinate is 1."""

    coords: tuple[int, int, int]
    p: int

    def __init__(self, coords, field: PrimeField):
        c = [x % field.p for x in coords]
        if not any(c):
            raise InvalidParameter("all coordinates zero")
        first = next(i for i, x in enumerate(c) if x)
        scale = field.inv(c[first])
        c = tuple(x * scale % field.p for x in c)
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "p", field.p)


def graded_lex_monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree d, graded-lex with x > y > z."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return out


class TernaryForm:
    """Homogeneous ternary form over a prime field, stored as a coefficient
    per graded-lex monomial."""

    def __init__(self, degree: int, field: PrimeField, coeffs=None):
        self.degree = degree
        self.field = field
        self.monomials = graded_lex_monomials(degree)
        if coeffs is None:
            self.coeffs = {m: 0 for m in self.monomials}
        elif isinstance(coeffs, dict):
            self.coeffs = {m: coeffs.get(m, 0) % field.p
                           for m in self.monomials}
        else:
            self.coeffs = {m: c % field.p
                           for m, c in zip(self.monomials, coeffs)}

    def evaluate(self, pt) -> int:
        coords = pt.coords if isinstance(pt, ProjectivePoint) else pt
        p = self.field.p
        total = 0
        for (a, b, c), coef in self.coeffs.items():
            if coef:
                total += coef * pow(coords[0], a, p) * pow(coords[1], b, p) \
                    * pow(coords[2], c, p)
        return total % p

    def partial(self, var: int) -> "TernaryForm":
        out: dict[tuple[int, int, int], int] = {}
        for mono, coef in self.coeffs.items():
            e = mono[var]
            if coef and e:
                new = list(mono)
                new[var] = e - 1
                key = tuple(new)
                out[key] = (out.get(key, 0) + coef * e) % self.field.p
        return TernaryForm(self.degree - 1, self.field, out)

    def multiply(self, other: "TernaryForm") -> "TernaryForm":
        out: dict[tuple[int, int, int], int] = {}
        p = self.field.p
        for m1, c1 in self.coeffs.items():
            if not c1:
                continue
            for m2, c2 in other.coeffs.items():
                if not c2:
                    continue
                key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[key] = (out.get(key, 0) + c1 * c2) % p
        return TernaryForm(self.degree + other.degree, self.field, out)

    def coefficient_vector(self) -> list[int]:
        return [self.coeffs[m] for m in self.monomials]


def curve_form(n: int, field: PrimeField) -> TernaryForm:
    """F_n = f(x^n, y^n, z^n), a degree-2n form."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    coeffs = {
        (2 * n, 0, 0): 1, (0, 2 * n, 0): 1, (0, 0, 2 * n): 1,
        (n, 0, n): 2, (n, n, 0): -2, (0, n, n): 2,
    }
    return TernaryForm(2 * n, field, coeffs)


def oka_form(n: int, field: PrimeField) -> TernaryForm:
    """(y^n - z^n)^2 + (x^2 - y^2)^n, for documentation-level construction."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    yz = TernaryForm(n, field, {(0, n, 0): 1, (0, 0, n): -1})
    out = yz.multiply(yz)
    xy = TernaryForm(2, field, {(2, 0, 0): 1, (0, 2, 0): -1})
    acc = TernaryForm(0, field, {(0, 0, 0): 1})
    for _ in range(n):
        acc = acc.multiply(xy)
    total = {m: (out.coeffs.get(m, 0) + acc.coeffs.get(m, 0)) % field.p
             for m in graded_lex_monomials(2 * n)}
    return TernaryForm(2 * n, field, total)


def singular_points(n: int, field: PrimeField) -> list[ProjectivePoint]:
    """The 3n singular points: [0:1:w], [1:0:w] with w^n = -1 and [1:w:0]
    with w^n = 1.  Each is verified to kill F_n and its gradient."""
    p = field.p
    if (p - 1) % (2 * n):
        raise InvalidParameter("field lacks primitive 2n-th roots of unity")
    g = field.primitive_root
    r = pow(g, (p - 1) // (2 * n), p)  # primitive 2n-th root of unity
    roots_plus = sorted({pow(r, 2 * k, p) for k in range(n)})    # w^n = 1
    roots_minus = sorted({pow(r, 2 * k + 1, p) for k in range(n)})  # w^n = -1
    if len(roots_plus) != n or len(roots_minus) != n:
        raise VerificationFailure("root counts wrong; prime unsuitable")
    pts = [ProjectivePoint((0, 1, w), field) for w in roots_minus]
    pts += [ProjectivePoint((1, 0, w), field) for w in roots_minus]
    pts += [ProjectivePoint((1, w, 0), field) for w in roots_plus]
    form = curve_form(n, field)
    partials = [form.partial(v) for v in range(3)]
    for pt in pts:
        if form.evaluate(pt) or any(d.evaluate(pt) for d in partials):
            raise VerificationFailure(f"constructed point {pt} not singular")
    return pts


def all_projective_points(field: PrimeField):
    p = field.p
    for y in range(p):
        for z in range(p):
            yield ProjectivePoint((1, y, z), field)
    for z in range(p):
        yield ProjectivePoint((0, 1, z), field)
    yield ProjectivePoint((0, 0, 1), field)


def singular_points_scan(n: int, field: PrimeField) -> list[ProjectivePoint]:
    """Exhaustive-scan oracle over all of P^2(F_p)."""
    form = curve_form(n, field)
    partials = [form.partial(v) for v in range(3)]
    return [pt for pt in all_projective_points(field)
            if form.evaluate(pt) == 0
            and all(d.evaluate(pt) == 0 for d in partials)]


def tangent_cone_rank(pt: ProjectivePoint, n: int, field: PrimeField) -> int:
    """Rank of the Hessian quadratic form of F_n at a singular point, in the
    affine chart at the point's first unit coordinate: 1 for a double-line
    tangent cone (A_{n-1}, n >= 3), 2 for a node (n = 2)."""
    form = curve_form(n, field)
    partials = [form.partial(v) for v in range(3)]
    if any(d.evaluate(pt) for d in partials):
        raise NotSingular(f"{pt} is not a singular point")
    chart = next(i for i, x in enumerate(pt.coords) if x == 1)
    others = [v for v in range(3) if v != chart]
    p = field.p
    h = [[partials[u].partial(v).evaluate(pt) % p for v in others]
         for u in others]
    if not any(h[i][j] for i in range(2) for j in range(2)):
        return 0
    det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]) % p
    return 2 if det else 1


def _rank_mod_p(matrix: list[list[int]], p: int) -> int:
    m = [row[:] for row in matrix]
    rank = 0
    col = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SuperabundanceReport:
    n: int
    prime: int
    rank: int
    h0: int   # dim of degree-(n-1) curves through the singular points
    s: int    # superabundance: h0 minus the expected dimension


def superabundance(n: int, field: PrimeField) -> SuperabundanceReport:
    """Superabundance of the linear system of degree-(n-1) curves through the
    3n singular points: s = 3n - rank of the evaluation matrix."""
    if n < 3 or n % 2 == 0:
        raise InvalidParameter("n must be odd and >= 3")
    pts = singular_points(n, field)
    monos = graded_lex_monomials(n - 1)
    p = field.p
    matrix = []
    for pt in pts:
        x, y, z = pt.coords
        matrix.append([pow(x, a, p) * pow(y, b, p) * pow(z, c, p) % p
                       for (a, b, c) in monos])
    r = _rank_mod_p(matrix, p)
    ncols = len(monos)
    return SuperabundanceReport(n, p, r, ncols - r, 3 * n - r)


def superabundance_multi(n: int, primes=None) -> SuperabundanceReport:
    """Run over three admissible primes >= 10^4 and require agreement."""
    if primes is None:
        primes = []
        minimum = 10_000
        while len(primes) < 3:
            f = choose_prime(n, minimum)
            primes.append(f.p)
            minimum = f.p + 1
    reports = [superabundance(n, PrimeField(p)) for p in primes]
    if len({(r.s, r.h0, r.rank) for r in reports}) != 1:
        raise RankDeficiencySuspect(
            f"superabundance disagrees across primes: {reports}")
    return reports[0]


def milnor_ratio(n: int) -> Fraction:
    """Sum of Milnor numbers over the degree squared: 3n(n-1) / (2n)^2,
    exactly 3(n-1)/(4n); tends to 3/4."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    return Fraction(3 * n * (n - 1), (2 * n) ** 2)


@dataclass(frozen=True)
class SplittingReport:
    prime: int
    linear_forms: tuple[tuple[int, int, int], ...]
    intersection_points: tuple[tuple[int, int, int], ...]


def _normalized_linear_forms(field: PrimeField):
    p = field.p
    for a, b, c in product(range(p), repeat=3):
        coeffs = (a, b, c)
        if not any(coeffs):
            continue
        if next(x for x in coeffs if x) != 1:
            continue
        yield coeffs


def _form_vanishes_on_line(form: TernaryForm, line, field: PrimeField) -> bool:
    # parametrize the line {ax + by + cz = 0} and test all its points
    a, b, c = line
    p = field.p
    pts = []
    for pt in all_projective_points(field):
        x, y, z = pt.coords
        if (a * x + b * y + c * z) % p == 0:
            pts.append(pt)
    return all(form.evaluate(pt) == 0 for pt in pts)


def splitting_check_n2(field: PrimeField) -> SplittingReport:
    """Check that F_2 splits into 4 distinct linear forms over F_p
    (p = 1 mod 4) meeting in 6 distinct points."""
    p = field.p
    if p % 4 != 1:
        raise InvalidParameter("p must be 1 mod 4")
    form = curve_form(2, field)
    lines = [ln for ln in _normalized_linear_forms(field)
             if _form_vanishes_on_line(form, ln, field)]
    if len(lines) != 4:
        raise SplittingFailure(f"expected 4 linear factors, found {len(lines)}")
    prod_form = TernaryForm(0, field, {(0, 0, 0): 1})
    for a, b, c in lines:
        prod_form = prod_form.multiply(
            TernaryForm(1, field, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}))
    # the product must equal F_2 up to a scalar
    scale = None
    for m in graded_lex_monomials(4):
        fc = form.coeffs[m]
        pc = prod_form.coeffs[m]
        if fc == 0 and pc == 0:
            continue
        if fc == 0 or pc == 0:
            raise SplittingFailure("factor product has wrong support")
        ratio = fc * field.inv(pc) % p
        if scale is None:
            scale = ratio
        elif scale != ratio:
            raise SplittingFailure("factor product does not match F_2")
    points = set()
    for l1, l2 in combinations(lines, 2):
        pt = _line_intersection(l1, l2, field)
        points.add(pt.coords)
    if len(points) != 6:
        raise SplittingFailure(
            f"expected 6 distinct intersection points, found {len(points)}")
    return SplittingReport(p, tuple(lines), tuple(sorted(points)))


def _line_intersection(l1, l2, field: PrimeField) -> ProjectivePoint:
    # cross product of the coefficient vectors
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    x = b1 * c2 - c1 * b2
    y = c1 * a2 - a1 * c2
    z = a1 * b2 - b1 * a2
    return ProjectivePoint((x, y, z), field)
