"""
Galois-group classifier for reciprocal polynomials over Q.

Given a reciprocal P of degree N > 2, the classifier strips the forced
linear factors, reduces the core f modulo increasing odd primes, sorts
the reductions into the six factorization classes, and certifies the
Galois group of the splitting field as a full hyperoctahedral group
W_{2n} (or its index-two subgroup W_{2n}^+) once witnesses of classes
1..5 are found.  The W vs W^+ split is decided by an exact perfect
square test on disc(f); an i=6 witness forces the full group.

The companion validator compares the joint factorization statistics of
(h mod l, f mod l) over many primes against the exact conjugacy-class
statistics of the claimed group, via total-variation distance.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import NotReciprocalError, NotSeparableError
from .poly import Poly, discriminant
from .recpoly import (strip, to_trace_form, classify_H, classes_from_degrees,
                      StrippedPoly)
from .signedperm import class_statistics


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------


def primes_up_to(bound: int):
    """All primes <= bound (numpy sieve)."""
    if bound < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(bound + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(bound ** 0.5) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return np.nonzero(mask)[0].astype(np.int64)


# ---------------------------------------------------------------------------
# Batched distinct-degree factorization over many primes at once
# ---------------------------------------------------------------------------
#
# The expensive part of scanning thousands of primes is the Frobenius
# power x^l mod f.  Coefficients for all primes are kept in one int64
# matrix (one row per prime, with that row's modulus), so the
# square-and-multiply runs vectorized across every prime at once.  The
# cheap gcd chains that read off the factor degrees stay per-row.


# Inputs stay reduced below their row modulus m < 2^17, so products fit
# in int64 with room to accumulate ~2^16 terms before reducing; the
# helpers defer the % to one pass per call.


def _vec_polymul(A, B, m):
    """Row-wise product of polynomial coefficient matrices mod m."""
    P, da = A.shape
    db = B.shape[1]
    out = np.zeros((P, da + db - 1), dtype=np.int64)
    for i in range(da):
        out[:, i:i + db] += A[:, i:i + 1] * B
    out %= m[:, None]
    return out


def _vec_polymod(A, F, m):
    """Row-wise remainder of A modulo the monic row polynomials F."""
    d = F.shape[1] - 1
    A = A.copy()
    for i in range(A.shape[1] - 1, d - 1, -1):
        c = A[:, i] % m
        A[:, i - d:i] -= c[:, None] * F[:, :d]
    out = A[:, :max(d, 1)] % m[:, None]
    return out


def _batch_frobenius_chains(C, primes, kmax):
    """x^(l^k) mod f for k = 1..kmax, all rows at once.

    C: (P, d+1) monic row polynomials; returns (kmax, P, d).
    """
    P, dp1 = C.shape
    d = dp1 - 1
    m = primes
    # r = x^l mod f by square-and-multiply over the bits of each row's l
    r = np.zeros((P, d), dtype=np.int64)
    r[:, 0] = 1
    maxbits = int(primes.max()).bit_length()
    for k in range(maxbits - 1, -1, -1):
        r = _vec_polymod(_vec_polymul(r, r, m), C, m)
        bit = ((primes >> k) & 1).astype(bool)
        if bit.any():
            shifted = np.zeros((P, d + 1), dtype=np.int64)
            shifted[:, 1:] = r
            shifted = _vec_polymod(shifted, C, m)
            r = np.where(bit[:, None], shifted, r)
    # matrix of the Frobenius endomorphism: row i is x^(i*l) mod f
    mat = np.zeros((d, P, d), dtype=np.int64)
    mat[0, :, 0] = 1
    if d > 1:
        mat[1] = r
    for i in range(2, d):
        mat[i] = _vec_polymod(_vec_polymul(mat[i - 1], r, m), C, m)
    # chains: s_{k+1} = Frobenius(s_k), linear in the coefficients
    out = np.zeros((kmax, P, d), dtype=np.int64)
    s = r
    for k in range(kmax):
        out[k] = s
        if k + 1 < kmax:
            s = np.einsum("pi,ipj->pj", s, mat) % m[:, None]
    return out


# -- tiny per-row helpers on int-list polynomials mod l ---------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _row_mod(a, b, ell):
    """Remainder of a modulo b over F_l (b nonzero)."""
    a = [c % ell for c in a]
    _trim(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, ell)
    while len(a) - 1 >= db:
        c = (a[-1] * inv) % ell
        shift = len(a) - 1 - db
        if c:
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - c * b[j]) % ell
        a.pop()
        _trim(a)
    return a


def _row_gcd(a, b, ell):
    a = _trim([c % ell for c in list(a)])
    b = _trim([c % ell for c in list(b)])
    while b:
        # a %= b, in place
        db = len(b) - 1
        inv = pow(b[-1], -1, ell)
        while len(a) > db:
            c = (a[-1] * inv) % ell
            if c:
                off = len(a) - 1 - db
                for j in range(db):
                    a[off + j] = (a[off + j] - c * b[j]) % ell
            a.pop()
            _trim(a)
        a, b = b, a
    if a:
        inv = pow(a[-1], -1, ell)
        a = [(c * inv) % ell for c in a]
    return a


def _row_exact_div(a, b, ell):
    """Quotient a / b over F_l, assuming exact divisibility."""
    a = [c % ell for c in list(a)]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, ell)
    for i in range(len(out) - 1, -1, -1):
        c = (a[i + len(b) - 1] * inv) % ell
        out[i] = c
        if c:
            for j in range(len(b)):
                a[i + j] = (a[i + j] - c * b[j]) % ell
    return out


def batch_factor_degrees(int_coeffs, primes):
    """Factor degree multisets of one integer polynomial mod many primes.

    Returns a list parallel to primes; entry is the sorted tuple of
    irreducible factor degrees with multiplicity, or None when the
    reduction is degenerate (leading coefficient vanishes or the
    reduction is not squarefree).
    """
    primes = np.asarray(primes, dtype=np.int64)
    d = len(int_coeffs) - 1
    if d < 1:
        raise ValueError("need positive degree")
    results: list = [None] * len(primes)
    lc = int_coeffs[-1]
    # degenerate primes: vanishing leading coefficient, or a repeated
    # factor mod l (equivalent to l dividing the integer discriminant)
    disc = discriminant(Poly(int_coeffs))
    good = np.array([lc % int(ell) != 0 and
                     (disc.numerator if isinstance(disc, Fraction)
                      else disc) % int(ell) != 0
                     for ell in primes])
    # monic reductions
    C = np.zeros((len(primes), d + 1), dtype=np.int64)
    for idx, ell in enumerate(primes):
        ell = int(ell)
        if not good[idx]:
            continue
        inv = pow(lc % ell, -1, ell)
        C[idx] = [(c * inv) % ell for c in int_coeffs]
    gidx = np.nonzero(good)[0]
    if len(gidx) == 0:
        return results
    kmax = d // 2
    if kmax >= 1:
        chains = _batch_frobenius_chains(C[gidx], primes[gidx], kmax)
    for pos, idx in enumerate(gidx):
        ell = int(primes[idx])
        rem = [int(c) for c in C[idx]]
        degs = []
        for k in range(1, kmax + 1):
            if 2 * k > len(rem) - 1:
                break
            s = [int(c) for c in chains[k - 1, pos]]
            s[1] = (s[1] - 1) % ell  # x^(l^k) - x
            if len(rem) - 1 < d:
                s = _row_mod(s, rem, ell)
            g = _row_gcd(s, rem, ell)
            dg = len(g) - 1
            if dg > 0:
                degs.extend([k] * (dg // k))
                rem = _row_exact_div(rem, g, ell)
        if len(rem) - 1 > 0:
            degs.append(len(rem) - 1)
        results[idx] = tuple(sorted(degs))
    return results


# ---------------------------------------------------------------------------
# Rational input handling
# ---------------------------------------------------------------------------


def _as_fracs(poly: Poly):
    if poly.field is not None:
        raise ValueError("expected a polynomial over Q")
    return [Fraction(c) for c in poly.coeffs]


def _monic_over_q(poly: Poly) -> Poly:
    cs = _as_fracs(poly)
    lc = cs[-1]
    return Poly([c / lc for c in cs])


def _clear_denominators(poly: Poly):
    """(integer coefficient list, common denominator) of a Q-polynomial."""
    cs = _as_fracs(poly)
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in cs], den


def _reduce_mod(int_coeffs, den, ell, field):
    inv = pow(den % ell, -1, ell)
    return Poly([(c * inv) % ell for c in int_coeffs], field)


def is_perfect_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


# ---------------------------------------------------------------------------
# K field
# ---------------------------------------------------------------------------


@dataclass
class KField:
    radicand: int            # K = Q(sqrt(radicand))
    is_rational: bool
    squarefree_part: int | None = None   # None when factoring gave up
    fully_factored: bool = True

    def __repr__(self):
        if self.is_rational:
            return "Q"
        if self.squarefree_part is not None:
            return f"Q(sqrt({self.squarefree_part}))"
        return f"Q(sqrt({self.radicand}))"


def _squarefree_part(n: int, trial_bound: int = 10 ** 6):
    """(squarefree part, fully_factored) by trial division."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d <= trial_bound and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                out *= d
        d += 1
    if n > 1:
        if math.isqrt(n) ** 2 == n:
            return sign * out, True
        if n <= trial_bound * trial_bound:
            # remaining cofactor is prime
            return sign * out * n, True
        return sign * out * n, False
    return sign * out, True


def compute_K(P: Poly) -> KField:
    """K = Q(sqrt((-1)^(N/2) P(1) P(-1))) for even-degree P over Q.

    The radicand is normalized to an integer of the same square class;
    is_rational is an exact perfect-square decision.
    """
    cs = _as_fracs(P)
    N = len(cs) - 1
    if N % 2 != 0 or N < 2:
        raise ValueError("need even degree")
    p1 = sum(cs)
    pm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(cs))
    if p1 == 0 or pm1 == 0:
        raise ValueError("P(1) and P(-1) must be nonzero")
    m = Fraction(-1) ** (N // 2) * p1 * pm1
    # integer of the same square class
    m_int = m.numerator * m.denominator
    rational = is_perfect_square(m)
    sf, full = _squarefree_part(m_int)
    return KField(radicand=m_int, is_rational=rational,
                  squarefree_part=sf if full else None, fully_factored=full)


def group_constraint(N: int, eps: int, k_rational: bool | None = None) -> str:
    """Ambient group name for degree N and functional-equation sign eps."""
    if N <= 2:
        raise ValueError("need N > 2")
    if N % 2 == 1:
        return f"W{N - 1}"
    if eps == -1:
        return f"W{N - 2}"
    if k_rational is None:
        return f"W{N}"
    return f"W{N}+" if k_rational else f"W{N}"


# ---------------------------------------------------------------------------
# Classifier
# ---------------------------------------------------------------------------


@dataclass
class GaloisCertificate:
    input_coeffs: list
    N: int
    epsilon: int
    stripped_coeffs: list            # monic core f over Q, as Fractions
    n: int
    claimed_group: str | None
    witnesses: dict                  # class index -> first witness prime
    disc_is_square: bool | None
    K: KField | None
    status: str                      # "Certified" | "Inconclusive" | "Rejected"
    reason: str = ""
    prime_budget: int = 0
    normalization: str = "monic over Q; denominators cleared per prime"


def _witness_classes_mod(fmod: Poly, budget8: int = 8):
    """Class indices i with fmod in the i-th family over its field."""
    if not fmod.is_squarefree():
        return set()
    if fmod.eval_int(1) == 0 or fmod.eval_int(-1) == 0:
        return set()
    try:
        h = to_trace_form(fmod).h
    except NotReciprocalError:
        return set()
    from .poly import factor_degrees
    if len(factor_degrees(fmod)) > budget8:
        return set()
    return classify_H(h)


def classify(P: Poly, prime_budget: int = 10 ** 4) -> GaloisCertificate:
    """Certify the Galois group of a reciprocal polynomial over Q.

    Scans odd primes in increasing order; for each good prime the core
    f is reduced and sorted into the factorization classes.  Witnesses
    for classes 1..5 certify the group as W_{2n} or W_{2n}^+; the split
    is decided by the parity of disc(f) as an exact square (even N,
    eps=1) or by an additional class-6 witness (odd N or eps=-1).
    Exhausting the budget yields status "Inconclusive", never an error.
    """
    cs = _as_fracs(P)
    N = len(cs) - 1
    if N <= 2:
        raise ValueError("need degree > 2")
    Pm = _monic_over_q(P)
    sp = strip(Pm)   # raises NotReciprocalError when no sign works
    f = sp.f
    n = f.degree // 2

    def reject(reason):
        return GaloisCertificate(
            input_coeffs=list(P.coeffs), N=N, epsilon=sp.epsilon,
            stripped_coeffs=list(f.coeffs), n=n, claimed_group=None,
            witnesses={}, disc_is_square=None, K=None,
            status="Rejected", reason=reason, prime_budget=prime_budget)

    if f.degree < 2:
        return reject("stripped core is constant")
    f1 = f(1)
    fm1 = f(-1)
    if f1 == 0 or fm1 == 0:
        return reject("boundary root: f(1) f(-1) = 0")
    fd = f.gcd(f.derivative())
    if fd.degree != 0:
        raise NotSeparableError("stripped core has a repeated factor")

    K = compute_K(f)
    disc_f = discriminant(f)
    disc_sq = is_perfect_square(Fraction(disc_f))

    h = to_trace_form(f).h
    int_f, den_f = _clear_denominators(f)
    int_h, den_h = _clear_denominators(h)
    bad_num = abs(f1.numerator * fm1.numerator) * den_f * den_h
    witnesses: dict = {}
    needed = {1, 2, 3, 4, 5}
    even_plus = (N % 2 == 0 and sp.epsilon == 1)
    want6 = not even_plus
    primes = primes_up_to(prime_budget)
    primes = primes[primes > 2]
    chunk = 256
    for start in range(0, len(primes), chunk):
        block = primes[start:start + chunk]
        keep = np.array([bad_num % int(ell) != 0 for ell in block])
        block = block[keep]
        if len(block) == 0:
            continue
        ftypes = batch_factor_degrees(int_f, block)
        htypes = batch_factor_degrees(int_h, block)
        done = False
        for ell, ft, ht in zip(block, ftypes, htypes):
            if ft is None or ht is None or len(ft) > 8:
                continue
            for i in classes_from_degrees(ht, ft):
                if i not in witnesses:
                    witnesses[i] = int(ell)
            if needed <= set(witnesses) and (not want6 or 6 in witnesses):
                done = True
                break
        if done:
            break

    cert = GaloisCertificate(
        input_coeffs=list(P.coeffs), N=N, epsilon=sp.epsilon,
        stripped_coeffs=list(f.coeffs), n=n, claimed_group=None,
        witnesses=witnesses, disc_is_square=disc_sq, K=K,
        status="Inconclusive", reason="", prime_budget=prime_budget)

    if not needed <= set(witnesses):
        cert.reason = "missing witnesses for classes " + str(
            sorted(needed - set(witnesses)))
        return cert
    if even_plus:
        # an i=6 witness would force disc(f) to be a nonsquare
        if disc_sq:
            assert 6 not in witnesses
            cert.witnesses = {i: witnesses[i] for i in sorted(witnesses)
                              if i != 6}
            cert.claimed_group = f"W{2 * n}+"
        else:
            cert.claimed_group = f"W{2 * n}"
        cert.status = "Certified"
        return cert
    if 6 in witnesses:
        cert.claimed_group = f"W{2 * n}"
        cert.status = "Certified"
        return cert
    cert.reason = "missing the class-6 witness for the full group"
    return cert


# ---------------------------------------------------------------------------
# Chebotarev-style validation
# ---------------------------------------------------------------------------


@dataclass
class ChebotarevReport:
    claimed: str
    n: int
    primes_used: int
    tv_distance: float
    tolerance: float
    passed: bool
    empirical: dict = dc_field(repr=False, default_factory=dict)
    predicted: dict = dc_field(repr=False, default_factory=dict)


def chebotarev_validate(f: Poly, claimed: str, prime_bound: int = 10 ** 5,
                        tolerance: float = 0.05) -> ChebotarevReport:
    """Compare mod-l factorization statistics of f with the claimed group.

    For each good prime l <= prime_bound the joint factor degree type
    (degrees of h mod l, degrees of f mod l) is tabulated; the
    dictionary degrees-of-f <-> cycle type on the 2n signed symbols and
    degrees-of-h <-> cycle type on the n pairs turns the exact group
    statistics into a predicted distribution.  The report carries the
    total-variation distance and a pass/fail against the tolerance.
    """
    if not (claimed.startswith("W") or claimed.endswith("+")):
        raise ValueError(f"unrecognized group name {claimed!r}")
    plus = claimed.endswith("+")
    two_n = int(claimed.rstrip("+")[1:])
    if two_n % 2 != 0:
        raise ValueError("group symbol must have even index")
    n = two_n // 2
    fm = _monic_over_q(f)
    if fm.degree != 2 * n:
        raise ValueError("degree of f does not match the claimed group")
    h = to_trace_form(fm).h
    int_f, den_f = _clear_denominators(fm)
    int_h, den_h = _clear_denominators(h)
    primes = primes_up_to(prime_bound)
    primes = primes[primes > 2]
    ok = np.array([den_f % int(l) != 0 and den_h % int(l) != 0
                   for l in primes])
    primes = primes[ok]
    ftypes = batch_factor_degrees(int_f, primes)
    htypes = batch_factor_degrees(int_h, primes)
    counts = Counter()
    used = 0
    for ft, ht in zip(ftypes, htypes):
        if ft is None or ht is None:
            continue
        counts[(ft, ht)] += 1
        used += 1
    if used < 100:
        raise ValueError(f"only {used} good primes below {prime_bound}")
    stats = class_statistics(n, plus)
    predicted = Counter()
    for (ctx, ctp, _e1), freq in stats.items():
        predicted[(tuple(sorted(ctx)), tuple(sorted(ctp)))] += freq
    empirical = {key: Fraction(c, used) for key, c in counts.items()}
    keys = set(empirical) | set(predicted)
    tv = float(sum(abs(empirical.get(k, Fraction(0)) - predicted.get(k, Fraction(0)))
                   for k in keys)) / 2.0
    return ChebotarevReport(
        claimed=claimed, n=n, primes_used=used, tv_distance=tv,
        tolerance=tolerance, passed=tv <= tolerance,
        empirical={k: empirical[k] for k in sorted(empirical)},
        predicted={k: predicted[k] for k in sorted(predicted)},
    )
