"""
Reciprocal polynomials and their trace forms.

A monic polynomial f of even degree 2n is reciprocal when
T^{2n} f(1/T) = f(T); its roots come in pairs a, 1/a and f can be
written uniquely as f(T) = T^n h(T + 1/T) for a monic h of degree n
(the trace form; roots of h are the sums a + 1/a).  This module
implements:

  * strip      - remove the linear factors forced by the functional
                 equation of a degree-N polynomial, leaving a monic-by-
                 construction reciprocal core of even degree;
  * to_trace_form / trace_lift - the exact transform in both directions;
  * disc_identity - disc(f) = h(2) h(-2) disc(h)^2
                  = (-1)^n f(1) f(-1) disc(h)^2, all sides computed
                 independently;
  * classify_H / in_F_class - the six factorization-pattern classes of
                 trace forms used by the Galois classifier;
  * count_irreducible_classes - exact counts of irreducible degree-m
                 polynomials bucketed by the square classes of h(2), h(-2).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceededError, NotReciprocalError
from .ffield import Fq, get_field, SquareClass, SQUARE, NONSQUARE, ZERO_CLASS
from .poly import Poly, factor_degrees, is_irreducible


# ---------------------------------------------------------------------------
# Stripping and trace forms
# ---------------------------------------------------------------------------


@dataclass
class StrippedPoly:
    f: Poly          # reciprocal core, even degree 2n
    removed: str     # "", "1-T", "1+T", or "1-T^2"
    epsilon: int     # sign in T^N P(1/T) = eps P(T)
    original_degree: int

    @property
    def n(self) -> int:
        return self.f.degree // 2


def _negate(c, F):
    return -c if F is None else F.neg(c)


def reciprocal_sign(P: Poly):
    """eps with T^N P(1/T) = eps P(T), or None."""
    rev = list(reversed(P.coeffs))
    fwd = list(P.coeffs)
    if rev == fwd:
        return 1
    F = P.field
    if rev == [_negate(c, F) for c in fwd]:
        return -1
    return None


def strip(P: Poly) -> StrippedPoly:
    """Remove the linear factors forced by the functional equation.

    N odd: divide by (1 + eps*T).  N even and eps = -1: divide by
    (1 - T^2).  N even and eps = 1: unchanged.  Divisions are exact by
    construction; a failure means P was not reciprocal.
    """
    N = P.degree
    if N <= 2:
        raise ValueError("degree must exceed 2")
    eps = reciprocal_sign(P)
    if eps is None:
        raise NotReciprocalError(f"no sign satisfies the functional equation: {P}")
    F = P.field
    if N % 2 == 1:
        # the forced root is -eps; divide by the monic factor T + eps
        # so the core stays monic
        div = Poly([eps, 1], F)
        removed = "1+T" if eps == 1 else "1-T"
    elif eps == -1:
        div = Poly([-1, 0, 1], F)
        removed = "1-T^2"
    else:
        return StrippedPoly(P, "", 1, N)
    q, r = P.divmod(div)
    if not r.is_zero():
        raise NotReciprocalError("forced linear factor does not divide exactly")
    return StrippedPoly(q, removed, eps, N)


@dataclass
class TraceForm:
    h: Poly


def _basis_poly(n: int, k: int, F) -> Poly:
    """T^(n-k) (T^2+1)^k, the expansion of T^n (T+1/T)^k."""
    return Poly([0] * (n - k) + [1], F) * (Poly([1, 0, 1], F) ** k)


def to_trace_form(f: Poly) -> TraceForm:
    """The unique monic h of degree n with f(T) = T^n h(T + 1/T).

    Solved by exact triangular elimination against the basis
    T^(n-k)(T^2+1)^k, top degree first.
    """
    if f.is_zero() or f.degree % 2 != 0 or f.degree < 2:
        raise NotReciprocalError("need even degree >= 2")
    if not f.is_monic():
        raise NotReciprocalError("trace form requires a monic polynomial")
    if reciprocal_sign(f) != 1:
        raise NotReciprocalError("not reciprocal with sign +1")
    F = f.field
    if F is not None and F.p == 2:
        raise ValueError("characteristic 2 unsupported")
    n = f.degree // 2
    residual = f
    hc = [0] * (n + 1)
    for k in range(n, -1, -1):
        coeffs = residual.coeffs
        c = coeffs[n + k] if n + k < len(coeffs) else 0
        hc[k] = c
        if c:
            residual = residual - _basis_poly(n, k, F).scale(c)
    if not residual.is_zero():
        raise NotReciprocalError("no exact trace form (non-reciprocal input)")
    return TraceForm(Poly(hc, F))


def trace_lift(h: Poly) -> Poly:
    """f(T) = T^n h(T + 1/T) expanded exactly."""
    F = h.field
    n = h.degree
    out = Poly([], F)
    for k, c in enumerate(h.coeffs):
        if c:
            out = out + _basis_poly(n, k, F).scale(c)
    return out


def disc_identity(f: Poly):
    """Both printed forms of the discriminant identity.

    Returns (lhs, rhs, cross) where lhs = disc(f),
    rhs = h(2) h(-2) disc(h)^2 and cross = (-1)^n f(1) f(-1) disc(h)^2.
    """
    from .poly import discriminant

    h = to_trace_form(f).h
    F = f.field
    n = h.degree
    lhs = discriminant(f)
    dh = discriminant(h) if h.degree >= 1 else (1 if F is None else 1)
    if F is None:
        rhs = h(2) * h(-2) * dh * dh
        cross = (-1) ** n * f(1) * f(-1) * dh * dh
    else:
        rhs = F.mul(F.mul(h.eval_int(2), h.eval_int(-2)), F.mul(dh, dh))
        cross = F.mul(F.mul(f.eval_int(1), f.eval_int(-1)), F.mul(dh, dh))
        if n % 2 == 1:
            cross = F.neg(cross)
    return lhs, rhs, cross


# ---------------------------------------------------------------------------
# The six factorization classes
# ---------------------------------------------------------------------------


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def in_P_n(h: Poly) -> bool:
    """Membership in the base set: monic, separable, h(2) h(-2) != 0."""
    if not h.is_monic() or h.degree < 1:
        return False
    if h.eval_int(2) == 0 or h.eval_int(-2) == 0:
        return False
    return h.is_squarefree()


def classes_from_degrees(hdeg, fdeg) -> set:
    """Class indices from the factor degree multisets of h and its lift.

    Assumes the base-set conditions already hold (h monic separable
    with h(2) h(-2) != 0).
    """
    hdeg = sorted(hdeg)
    fdeg = sorted(fdeg)
    n = sum(hdeg)
    if n == 1:
        out = {1, 2, 3, 4, 5}
        if fdeg == [2]:
            out.add(6)
        return out
    out = set()
    if hdeg == [n]:
        out.add(1)
    if any(_is_prime_int(d) and 2 * d > n for d in hdeg):
        out.add(2)
    if hdeg.count(2) == 1 and all(d % 2 == 1 for d in hdeg if d != 2):
        out.add(3)
    f_quads = fdeg.count(2)
    f_rest_odd = all(d % 2 == 1 for d in fdeg if d != 2)
    if all(d % 2 == 1 for d in hdeg) and f_quads in (1, 2) and f_rest_odd:
        out.add(4)
    evens = sum(1 for d in hdeg + fdeg if d % 2 == 0)
    if evens % 2 == 1:
        out.add(5)
    if f_quads == 1 and f_rest_odd:
        out.add(6)
    return out


def classify_H(h: Poly) -> set:
    """The set of class indices i in {1..6} with h in H_{n,i}.

    Empty when h fails the base-set conditions (separability or a
    boundary zero).  Decided from the factor degree multisets of h and
    of its lift f = T^n h(T+1/T).
    """
    if h.field is None:
        raise ValueError("classify_H works over a finite field")
    if not in_P_n(h):
        return set()
    f = trace_lift(h)
    return classes_from_degrees(factor_degrees(h), factor_degrees(f))


def in_F_class(f: Poly, i: int, alpha: SquareClass, beta: SquareClass) -> bool:
    """Membership of f in the class F_{2n,i}^{alpha,beta}.

    Requires f = T^n h(T+1/T) with h in H_{n,i}, boundary values
    f(1), f(-1) nonzero with the prescribed square classes, and at most
    eight irreducible factors in f.
    """
    F = f.field
    if F is None:
        raise ValueError("in_F_class works over a finite field")
    if f.degree % 2 != 0 or not f.is_monic():
        return False
    try:
        h = to_trace_form(f).h
    except NotReciprocalError:
        return False
    if i not in classify_H(h):
        return False
    if F.square_class(f.eval_int(1)) != alpha:
        return False
    if F.square_class(f.eval_int(-1)) != beta:
        return False
    return len(factor_degrees(f)) <= 8


# ---------------------------------------------------------------------------
# Counting irreducible polynomials by boundary square classes
# ---------------------------------------------------------------------------


@dataclass
class IrreducibleCountTable:
    q: int
    m: int
    counts: dict                 # (alpha.tag, beta.tag) -> exact count
    deviations: dict             # same keys -> |4m*count - q^m|
    modulus: tuple | None        # extension modulus used, if any
    total: int = 0

    def __post_init__(self):
        self.total = sum(self.counts.values())


_BUCKETS = [("Square", "Square"), ("Square", "NonSquare"),
            ("NonSquare", "Square"), ("NonSquare", "NonSquare")]


def _count_m1(F: Fq):
    counts = {k: 0 for k in _BUCKETS}
    two = F.from_int(2)
    for z in F.elements():
        u = F.sub(two, z)
        v = F.sub(F.neg(two), z)
        if u == 0 or v == 0:
            continue
        key = (F.square_class(u).tag, F.square_class(v).tag)
        counts[key] += 1
    return counts


def _field_log_table(B: Fq):
    """(codes, log) arrays for the big field via numpy blocked powering.

    codes[i] is the int encoding of g^i; log is the inverse table with
    log[0] unused.
    """
    p, em, Q = B.p, B.e, B.q
    g = B.generator()
    # multiplication-by-g as a matrix over F_p acting on digit vectors
    M = np.zeros((em, em), dtype=np.int64)
    for j in range(em):
        col = B.to_vector(B.mul(g, p ** j))
        M[:, j] = col
    block = 1024
    # first `block` powers, sequentially
    V = np.zeros((em, block), dtype=np.int64)
    v = np.zeros(em, dtype=np.int64)
    v[0] = 1
    for i in range(block):
        V[:, i] = v
        v = (M @ v) % p
    # multiplication by g^block, by squaring
    Mb = np.eye(em, dtype=np.int64)
    base = M.copy()
    nn = block
    while nn:
        if nn & 1:
            Mb = (Mb @ base) % p
        nn >>= 1
        if nn:
            base = (base @ base) % p
    nblocks = (Q - 1 + block - 1) // block
    digits = np.zeros((em, nblocks * block), dtype=np.int64)
    cur = V
    for b in range(nblocks):
        digits[:, b * block:(b + 1) * block] = cur
        cur = (Mb @ cur) % p
    digits = digits[:, :Q - 1]
    weights = np.array([p ** j for j in range(em)], dtype=np.int64)
    codes = (weights @ digits)
    log = np.zeros(Q, dtype=np.int64)
    log[codes] = np.arange(Q - 1, dtype=np.int64)
    return codes, log


def _shift_codes(B: Fq, all_codes, c0: int):
    """Codes of (c0 - z) for every z given by all_codes, vectorized."""
    p, em = B.p, B.e
    z = all_codes.copy()
    out = np.zeros_like(all_codes)
    mult = 1
    base = B.to_vector(c0)
    for j in range(em):
        digit = (base[j] - z % p) % p
        out += digit * mult
        z //= p
        mult *= p
    return out


def count_irreducible_classes(q: int, m: int, budget: int = 10 ** 6) -> IrreducibleCountTable:
    """Exact bucket counts of monic irreducible degree-m h over F_q with
    h(2) h(-2) != 0, keyed by the square classes of (h(2), h(-2)).

    The enumeration runs over field elements: each irreducible h
    corresponds to an orbit of m primitive elements z of F_{q^m}, and
    h(2) = N(2 - z), h(-2) = N(-2 - z) (norms down to F_q).  The norm of
    an element is a square in F_q exactly when the element is a square
    in the big field, decided by discrete-log parity.
    """
    if q ** m > budget:
        raise BudgetExceededError(f"q^m = {q ** m} exceeds budget {budget}")
    from .ffield import _prime_factors, _is_prime

    # q = p^e
    p = next(r for r in _prime_factors(q))
    e = 0
    qq = q
    while qq > 1:
        qq //= p
        e += 1
    if p ** e != q or p == 2:
        raise ValueError("q must be an odd prime power")
    F = get_field(p, e)
    if m == 1:
        counts = _count_m1(F)
        devs = {k: abs(4 * 1 * c - q) for k, c in counts.items()}
        return IrreducibleCountTable(q, m, counts, devs, F.modulus)

    B = get_field(p, e * m)
    Q = B.q
    codes, log = _field_log_table(B)
    all_codes = np.arange(1, Q, dtype=np.int64)      # nonzero elements
    logs = log[all_codes]
    # z generates F_{q^m} over F_q iff z lies in no proper subfield
    # F_{q^d}; the nonzero part of F_{q^d} is the subgroup of index
    # (Q-1)/(q^d-1)
    full = np.ones(Q - 1, dtype=bool)
    md = m
    for r in set(_prime_factors(m)):
        d = m // r
        idx = (Q - 1) // (q ** d - 1)
        full &= (logs % idx) != 0
    # boundary values 2 - z and -2 - z
    u = _shift_codes(B, all_codes, B.from_int(2))
    v = _shift_codes(B, all_codes, B.from_int(-2))
    ok = full & (u != 0) & (v != 0)
    usq = (log[u[ok]] % 2) == 0
    vsq = (log[v[ok]] % 2) == 0
    raw = {
        ("Square", "Square"): int(np.count_nonzero(usq & vsq)),
        ("Square", "NonSquare"): int(np.count_nonzero(usq & ~vsq)),
        ("NonSquare", "Square"): int(np.count_nonzero(~usq & vsq)),
        ("NonSquare", "NonSquare"): int(np.count_nonzero(~usq & ~vsq)),
    }
    counts = {}
    for k, c in raw.items():
        assert c % m == 0, "orbit counts must divide evenly"
        counts[k] = c // m
    devs = {k: abs(4 * m * c - q ** m) for k, c in counts.items()}
    return IrreducibleCountTable(q, m, counts, devs, B.modulus)


def count_irreducible_classes_direct(q: int, m: int) -> dict:
    """Independent oracle: enumerate all monic degree-m polynomials over
    F_q directly, test irreducibility, and bucket.  Exponential in m;
    intended for cross-checks on small cells."""
    from .ffield import _prime_factors

    p = next(r for r in _prime_factors(q))
    e = 0
    qq = q
    while qq > 1:
        qq //= p
        e += 1
    F = get_field(p, e)
    counts = {k: 0 for k in _BUCKETS}
    for code in range(q ** m):
        c = code
        coeffs = []
        for _ in range(m):
            coeffs.append(c % q)
            c //= q
        h = Poly(coeffs + [1], F)
        a, b = h.eval_int(2), h.eval_int(-2)
        if a == 0 or b == 0:
            continue
        if not is_irreducible(h):
            continue
        counts[(F.square_class(a).tag, F.square_class(b).tag)] += 1
    return counts
