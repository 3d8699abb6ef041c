"""
Dense univariate polynomials with exact coefficients.

A Poly is a coefficient tuple in ascending order plus a ring tag:
field=None means integer (or Fraction) coefficients, field=Fq means the
coefficients are ints encoding elements of that finite field (see
ffield).  All algorithms are exact; there is no floating point.

Factorization over F_q is the classical three-stage pipeline:
squarefree decomposition, distinct-degree splitting, then a randomized
equal-degree split (odd q) driven by an explicit seed.  The factor list
is sorted canonically so output never depends on the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as int_gcd, isqrt, prod

from .ffield import Fq, get_field


class Poly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: Fq | None = None):
        if field is not None:
            # canonical codes pass through; out-of-range ints are read as
            # integer images (relevant for negatives over extension fields)
            coeffs = [int(c) if 0 <= c < field.q else field.from_int(int(c))
                      for c in coeffs]
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.field = field

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_int_coeffs(coeffs, field: Fq | None = None) -> "Poly":
        """Reduce integer coefficients into the target ring."""
        if field is None:
            return Poly(coeffs)
        return Poly([field.from_int(c) if isinstance(c, int) else c for c in coeffs], field)

    @staticmethod
    def x(field=None) -> "Poly":
        return Poly([0, 1], field)

    @staticmethod
    def constant(c, field=None) -> "Poly":
        return Poly([c], field)

    # -- basics ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __repr__(self):
        tag = "" if self.field is None else f" over {self.field}"
        return f"Poly({list(self.coeffs)}{tag})"

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.coeffs == other.coeffs
                and self.field == other.field)

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def _same_ring(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.field)
        if self.field != other.field:
            raise ValueError("mixed coefficient rings")
        return other

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._same_ring(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if F is None:
            for i, c in enumerate(b):
                out[i] = out[i] + c
        else:
            for i, c in enumerate(b):
                out[i] = F.add(out[i], c)
        return Poly(out, F)

    def __neg__(self):
        F = self.field
        if F is None:
            return Poly([-c for c in self.coeffs], None)
        return Poly([F.neg(c) for c in self.coeffs], F)

    def __sub__(self, other):
        return self + (-self._same_ring(other))

    def __mul__(self, other):
        other = self._same_ring(other)
        if self.is_zero() or other.is_zero():
            return Poly([], self.field)
        F = self.field
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        if F is None:
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
        elif F.e == 1:
            p = F.p
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            out = [c % p for c in out]
        else:
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(out, F)

    def scale(self, c):
        """Multiply by a ring constant."""
        F = self.field
        if F is None:
            return Poly([c * a for a in self.coeffs], None)
        return Poly([F.mul(c, a) for a in self.coeffs], F)

    def __pow__(self, n: int):
        result = Poly([1], self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other):
        """Quotient and remainder.  Over field=None the division must be
        by a polynomial whose leading coefficient divides exactly at
        every step (use Fractions otherwise)."""
        other = self._same_ring(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly([], F), Poly(a, F)
        q = [0] * (len(a) - db)
        if F is None:
            lead = b[-1]
            for i in range(len(a) - 1, db - 1, -1):
                if a[i]:
                    if isinstance(a[i], Fraction) or isinstance(lead, Fraction) \
                       or a[i] % lead == 0:
                        c = Fraction(a[i], lead) if lead != 1 else a[i]
                        if isinstance(c, Fraction) and c.denominator == 1:
                            c = c.numerator
                    else:
                        c = Fraction(a[i], lead)
                    q[i - db] = c
                    for j in range(db + 1):
                        a[i - db + j] = a[i - db + j] - c * b[j]
        else:
            inv = F.inv(b[-1])
            for i in range(len(a) - 1, db - 1, -1):
                if a[i]:
                    c = F.mul(a[i], inv)
                    q[i - db] = c
                    for j in range(db + 1):
                        a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
        return Poly(q, F), Poly(a[:db], F)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        """Division asserting a zero remainder."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    # -- calculus and evaluation ------------------------------------------

    def derivative(self):
        F = self.field
        if self.degree <= 0:
            return Poly([], F)
        if F is None:
            out = [i * c for i, c in enumerate(self.coeffs)][1:]
        else:
            out = [F.mul(i % F.p, c) for i, c in enumerate(self.coeffs)][1:]
        return Poly(out, F)

    def __call__(self, x):
        """Evaluate (Horner).  x is a ring element of the same ring."""
        F = self.field
        acc = 0
        if F is None:
            for c in reversed(self.coeffs):
                acc = acc * x + c
        else:
            if isinstance(x, int) and x < 0:
                x %= F.q if F.e == 1 else F.p  # negative int stands for -|x| in F_p
            for c in reversed(self.coeffs):
                acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_int(self, n: int):
        """Evaluate at the image of the integer n (field coefficients)."""
        F = self.field
        if F is None:
            return self(n)
        return self(F.from_int(n))

    def monic(self):
        if self.is_zero():
            return self
        F = self.field
        if F is None:
            lead = self.coeffs[-1]
            if lead == 1:
                return self
            out = [Fraction(c, lead) for c in self.coeffs]
            out = [c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
                   for c in out]
            return Poly(out, None)
        return self.scale(F.inv(self.lc))

    def reverse(self):
        """T^deg * f(1/T)."""
        return Poly(list(reversed(self.coeffs)), self.field)

    def shift_compose(self, a):
        """f(T + a) for a field/ring constant a."""
        F = self.field
        out = Poly([], F)
        for c in reversed(self.coeffs):
            out = out * Poly([a, 1], F) + Poly([c], F)
        return out

    def map_field(self, G: Fq, embed=None):
        """Re-interpret coefficients in the field G.

        embed maps a coefficient of self into G; defaults to the prime
        subfield embedding (valid when self.field is a prime field of
        the same characteristic, or field=None with integer coeffs).
        """
        if embed is None:
            embed = lambda c: c % G.p
        return Poly([embed(c) for c in self.coeffs], G)

    # -- gcd -------------------------------------------------------------

    def gcd(self, other):
        """Monic gcd over a field; over ℚ via Fractions when field=None."""
        a, b = self, self._same_ring(other)
        if a.field is None:
            a = Poly([Fraction(c) for c in a.coeffs])
            b = Poly([Fraction(c) for c in b.coeffs])
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def is_squarefree(self) -> bool:
        d = self.derivative()
        if d.is_zero():
            return self.degree == 0
        return self.gcd(d).degree == 0


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------


def _resultant_field(f: Poly, g: Poly):
    """Resultant over a finite field via the Euclidean scheme."""
    F = f.field
    if f.degree < 0 or g.degree < 0:
        return 0
    res = 1
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return F.mul(res, F.pow(b.coeffs[0], da))
        r = a % b
        dr = r.degree
        if r.is_zero():
            return 0
        # res(a, b) = (-1)^(da*db) lc(b)^(da-dr) res(b, r)
        sign_flip = (da * db) % 2 == 1
        res = F.mul(res, F.pow(b.lc, da - dr))
        if sign_flip:
            res = F.neg(res)
        a, b = b, r


_RES_PRIMES: list[int] = []


def _res_primes(count):
    global _RES_PRIMES
    cand = _RES_PRIMES[-1] + 2 if _RES_PRIMES else (1 << 30) + 3
    while len(_RES_PRIMES) < count:
        while True:
            is_p = all(cand % d for d in range(3, isqrt(cand) + 1, 2))
            if is_p:
                break
            cand += 2
        _RES_PRIMES.append(cand)
        cand += 2
    return _RES_PRIMES[:count]


def _resultant_mod(fc, gc, p):
    """Resultant of integer coefficient lists mod p (Euclidean)."""
    a = [c % p for c in fc]
    b = [c % p for c in gc]

    def deg(u):
        i = len(u) - 1
        while i >= 0 and not u[i]:
            i -= 1
        return i

    da, db = deg(a), deg(b)
    a, b = a[:da + 1], b[:db + 1]
    if da < 0 or db < 0:
        return 0
    res = 1
    while True:
        if db == 0:
            return (res * pow(b[0], da, p)) % p
        # remainder of a modulo b
        inv = pow(b[db], p - 2, p)
        r = list(a)
        for i in range(da, db - 1, -1):
            c = (r[i] * inv) % p
            if c:
                r[i] = 0
                for j in range(db):
                    r[i - db + j] = (r[i - db + j] - c * b[j]) % p
        dr = deg(r)
        if dr < 0:
            return 0
        r = r[:dr + 1]
        if (da * db) % 2 == 1:
            res = (-res) % p
        res = (res * pow(b[db], da - dr, p)) % p
        a, b, da, db = b, r, db, dr


def _resultant_int(f: Poly, g: Poly) -> int:
    """Exact integer resultant via CRT over 30-bit primes."""
    fc, gc = list(f.coeffs), list(g.coeffs)
    if not fc or not gc:
        return 0
    # Hadamard-style bound: prod of 2-norms
    nf = isqrt(sum(c * c for c in fc)) + 1
    ng = isqrt(sum(c * c for c in gc)) + 1
    bound = 2 * (nf ** len(gc)) * (ng ** len(fc)) + 1
    need = 1
    primes = []
    modulus = 1
    k = 0
    while modulus < bound:
        k += 8
        primes = _res_primes(k)
        modulus = prod(primes)
    residues = []
    used = []
    for p in primes:
        if fc[-1] % p == 0 or gc[-1] % p == 0:
            continue  # degree would drop; skip this prime
        residues.append(_resultant_mod(fc, gc, p))
        used.append(p)
    modulus = prod(used)
    if modulus < bound:
        # pathological: leading coeffs hit every prime; extend
        extra = _res_primes(k + 16)[k:]
        for p in extra:
            if fc[-1] % p == 0 or gc[-1] % p == 0:
                continue
            residues.append(_resultant_mod(fc, gc, p))
            used.append(p)
            modulus = prod(used)
            if modulus >= bound:
                break
    # CRT
    x = 0
    for r, p in zip(residues, used):
        m = modulus // p
        x = (x + r * m * pow(m, -1, p)) % modulus
    if x > modulus // 2:
        x -= modulus
    return x


def resultant(f: Poly, g: Poly):
    """Exact resultant of two polynomials over the same ring."""
    if f.field is not None:
        return _resultant_field(f, g)
    if any(isinstance(c, Fraction) for c in f.coeffs + g.coeffs):
        # clear denominators: res(af, bg) = a^deg g b^deg f res(f, g)
        df, dg = f.degree, g.degree
        cf = 1
        for c in f.coeffs:
            cf = cf * Fraction(c).denominator // int_gcd(cf, Fraction(c).denominator)
        cg = 1
        for c in g.coeffs:
            cg = cg * Fraction(c).denominator // int_gcd(cg, Fraction(c).denominator)
        fi = Poly([int(Fraction(c) * cf) for c in f.coeffs])
        gi = Poly([int(Fraction(c) * cg) for c in g.coeffs])
        r = _resultant_int(fi, gi)
        return Fraction(r, cf ** dg * cg ** df)
    return _resultant_int(f, g)


def discriminant(f: Poly):
    """disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)."""
    if f.is_zero():
        raise ValueError("discriminant of the zero polynomial")
    d = f.degree
    if d == 0:
        raise ValueError("discriminant of a constant")
    fp = f.derivative()
    if fp.is_zero():
        return 0
    r = resultant(f, fp)
    F = f.field
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    if F is None:
        val = Fraction(r, f.lc) if not isinstance(r, Fraction) else r / f.lc
        val = sign * val
        if isinstance(val, Fraction) and val.denominator == 1:
            return val.numerator
        return val
    val = F.div(r, f.lc)
    return F.neg(val) if sign < 0 else val


def disc_and_resultant(f: Poly, g: Poly):
    """(Res(f,g), disc(f)) as exact scalars."""
    return resultant(f, g), discriminant(f)


# ---------------------------------------------------------------------------
# Factorization over F_q
# ---------------------------------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    """For f(x) = g(x^p), return g (coefficientwise p-th roots)."""
    F = f.field
    p = F.p
    out = []
    for i in range(0, len(f.coeffs), p):
        # p-th root in F_q is c -> c^(q/p)
        out.append(F.pow(f.coeffs[i], F.q // p))
    return Poly(out, F)


def squarefree_decomposition(f: Poly):
    """List of (squarefree monic g, multiplicity m) with f = lc * prod g^m."""
    F = f.field
    assert F is not None
    f = f.monic()
    out = []

    def rec(g, mult):
        if g.degree == 0:
            return
        d = g.derivative()
        if d.is_zero():
            rec(_pth_root(g), mult * F.p)
            return
        c = g.gcd(d)
        w = g.exact_div(c)
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w.exact_div(y)
            if z.degree > 0:
                out.append((z, mult * i))
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree > 0:
            rec(c, mult)

    rec(f, 1)
    # merge duplicates (possible through the p-th power branch)
    merged = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    return sorted(merged.items(), key=lambda t: (t[1], t[0].degree, t[0].coeffs))


def _pow_mod(base: Poly, n: int, mod: Poly) -> Poly:
    result = Poly([1], base.field)
    base = base % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        n >>= 1
        if n:
            base = (base * base) % mod
    return result


def distinct_degree_split(f: Poly):
    """For squarefree monic f: list of (d, product of irreducible factors
    of degree d), ascending in d, skipping trivial entries."""
    F = f.field
    q = F.q
    out = []
    x = Poly.x(F)
    frob = x % f
    rest = f
    d = 0
    while rest.degree > 0:
        d += 1
        if rest.degree < 2 * d:
            out.append((rest.degree, rest))
            break
        frob = _pow_mod(frob, q, rest if d == 1 else rest)
        g = rest.gcd(frob - x)
        if g.degree > 0:
            out.append((d, g))
            rest = rest.exact_div(g)
            frob = frob % rest
    return out


def factor_degrees(f: Poly):
    """Sorted degree multiset of the irreducible factors of f (with
    multiplicity), computed by distinct-degree splitting only."""
    out = []
    for g, m in squarefree_decomposition(f):
        for d, block in distinct_degree_split(g):
            out.extend([d] * ((block.degree // d) * m))
    return sorted(out)


def _equal_degree_split(f: Poly, d: int, rng: random.Random):
    """Cantor–Zassenhaus split of a squarefree product of degree-d
    irreducibles over F_q, q odd."""
    F = f.field
    if f.degree == d:
        return [f]
    q = F.q
    exponent = (q ** d - 1) // 2
    while True:
        r = Poly([rng.randrange(q) for _ in range(f.degree)], F)
        if r.degree < 1:
            continue
        g = f.gcd(r)
        if 0 < g.degree < f.degree:
            pieces = [g, f.exact_div(g)]
        else:
            h = _pow_mod(r, exponent, f) - Poly([1], F)
            g = f.gcd(h)
            if 0 < g.degree < f.degree:
                pieces = [g, f.exact_div(g)]
            else:
                continue
        out = []
        for piece in pieces:
            out.extend(_equal_degree_split(piece, d, rng))
        return out


def factor(f: Poly, seed: int = 0):
    """Complete factorization over F_q.

    Returns (unit, [(irreducible monic Poly, multiplicity), ...]) with the
    factor list sorted canonically by (degree, coefficient tuple); the
    product of factors times the unit reproduces f exactly.
    """
    if f.field is None:
        raise ValueError("factor requires finite-field coefficients")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc
    if f.degree == 0:
        return unit, []
    rng = random.Random(seed)
    factors = []
    for g, m in squarefree_decomposition(f):
        for d, block in distinct_degree_split(g):
            if block.degree == d:
                factors.append((block, m))
            else:
                for piece in _equal_degree_split(block, d, rng):
                    factors.append((piece, m))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return unit, factors


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over F_q."""
    if f.field is None:
        raise ValueError("is_irreducible requires finite-field coefficients")
    if f.degree < 1:
        raise ValueError("constant polynomial")
    F = f.field
    n = f.degree
    if n == 1:
        return True
    f = f.monic()
    q = F.q
    x = Poly.x(F)
    # x^(q^k) mod f for k = 1..n by repeated q-th powering
    frob = x % f
    powers = {}
    for k in range(1, n + 1):
        frob = _pow_mod(frob, q, f)
        powers[k] = frob
    if powers[n] != x % f:
        return False
    from .ffield import _prime_factors
    for r in set(_prime_factors(n)):
        if f.gcd(powers[n // r] - x).degree > 0:
            return False
    return True


def poly_from_string(s: str, field: Fq | None = None) -> Poly:
    """Parse the comma-separated ascending coefficient format, e.g.
    "1,-3,1" for 1 - 3T + T^2."""
    coeffs = [int(tok.strip()) for tok in s.split(",")]
    return Poly.from_int_coeffs(coeffs, field)


def poly_to_string(f: Poly) -> str:
    return ",".join(str(c) for c in f.coeffs)
