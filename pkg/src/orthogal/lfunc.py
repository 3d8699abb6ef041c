"""
Elliptic curves over F_q(t): Kodaira fibers, conductor invariants,
quadratic twists, and L-functions by fiber point counting.

A curve is stored in short Weierstrass form y^2 = x^3 + A x + B with
A, B in F_q[t] and p >= 5, so every place (including infinity, via the
substitution t = 1/s) is classified by the valuation of (c4, Delta)
after a quadratic-twist minimality step.  Each Kodaira symbol carries a
table row (f_v, gamma_v, b_v) feeding the degree N_d, the discriminant
factor D_d and the bound term B of the twist family.

The L-function of a twist is assembled from fiber point counts over the
extension fields F_{q^{nk}}: the power sums S_k of the inverse roots
enter log L = sum S_k T^k / k, the series is exponentiated to integer
coefficients, and the polynomial is completed through its functional
equation T^N P(1/T) = eps P(T).  Everything is exact integer
arithmetic; a numeric inverse-root check is offered separately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .errors import BudgetExceededError
from .ffield import Fq, get_field, conway_like_modulus
from .galclass import classify, _squarefree_part, is_perfect_square
from .poly import Poly, discriminant, factor

#: Sentinel naming the place at infinity (uniformizer 1/t).
INFINITY = "infinity"


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


class FqTCurve:
    """y^2 = x^3 + A x + B with A, B in F_q[t], p >= 5, Delta != 0."""

    __slots__ = ("field", "A", "B")

    def __init__(self, field: Fq, A: Poly, B: Poly):
        if field.p < 5:
            raise ValueError("characteristic must be at least 5")
        if A.field != field or B.field != field:
            raise ValueError("coefficients must live over the given field")
        self.field = field
        self.A = A
        self.B = B
        if self.delta().is_zero():
            raise ValueError("singular model: Delta = 0")

    @staticmethod
    def from_coeff_lists(field: Fq, A, B) -> "FqTCurve":
        return FqTCurve(field, Poly.from_int_coeffs(A, field),
                        Poly.from_int_coeffs(B, field))

    @staticmethod
    def from_a_invariants(field: Fq, a1, a2, a3, a4, a6) -> "FqTCurve":
        """Convert long Weierstrass a-invariants (polynomials over F_q)
        to the short model y^2 = x^3 - 27 c4 x - 54 c6 (iso over F_q(t),
        valid since p >= 5)."""
        a1, a2, a3, a4, a6 = (c if isinstance(c, Poly)
                              else Poly.from_int_coeffs(c, field)
                              for c in (a1, a2, a3, a4, a6))
        b2 = a1 * a1 + a2.scale(field.from_int(4))
        b4 = a4.scale(field.from_int(2)) + a1 * a3
        b6 = a3 * a3 + a6.scale(field.from_int(4))
        c4 = b2 * b2 - b4.scale(field.from_int(24))
        c6 = -(b2 * b2 * b2) + (b2 * b4).scale(field.from_int(36)) \
            - b6.scale(field.from_int(216))
        return FqTCurve(field, c4.scale(field.from_int(-27)),
                        c6.scale(field.from_int(-54)))

    def c4(self) -> Poly:
        return self.A.scale(self.field.from_int(-48))

    def c6(self) -> Poly:
        return self.B.scale(self.field.from_int(-864))

    def delta(self) -> Poly:
        F = self.field
        return (self.A ** 3).scale(F.from_int(-64)) \
            + (self.B * self.B).scale(F.from_int(-432))

    def j_is_nonconstant(self) -> bool:
        """Exact test: j = c4^3 / Delta reduces to a nonconstant
        rational function."""
        num = self.c4() ** 3
        den = self.delta()
        if num.is_zero():
            return False
        g = num.gcd(den)
        return (num.degree - g.degree > 0) or (den.degree - g.degree > 0)

    def __repr__(self):
        return (f"FqTCurve(q={self.field.q}, A={list(self.A.coeffs)}, "
                f"B={list(self.B.coeffs)})")


def quadratic_twist(E: FqTCurve, u: Poly,
                    check_squarefree: bool = True) -> FqTCurve:
    """The twist y^2 = x^3 + A u^2 x + B u^3."""
    if u.field != E.field:
        u = _embed_poly(u, E.field)
    if u.is_zero():
        raise ValueError("twist by zero")
    if check_squarefree and u.degree >= 1 and not u.is_squarefree():
        raise ValueError("twist parameter must be squarefree")
    return FqTCurve(E.field, E.A * u * u, E.B * u * u * u)


# ---------------------------------------------------------------------------
# Kodaira symbols and the invariant table
# ---------------------------------------------------------------------------


def kodaira_table_row(symbol: str):
    """(f_v, gamma_v, b_v) for a Kodaira symbol such as "I0", "I3",
    "II", "I2*", "IV*"."""
    fixed = {
        "I0": (0, 1, 0),
        "II": (2, 1, 1),
        "III": (2, 1, 1),
        "IV": (2, 3, 1),
        "I0*": (2, 1, 0),
        "IV*": (2, 3, 1),
        "III*": (2, 1, 1),
        "II*": (2, 1, 1),
    }
    if symbol in fixed:
        return fixed[symbol]
    star = symbol.endswith("*")
    core = symbol[:-1] if star else symbol
    if core.startswith("I") and core[1:].isdigit():
        n = int(core[1:])
        if n >= 1:
            if star:
                return (2, 2 // gcd(2, n), 1)
            return (1, n // gcd(2, n), 0)
    raise ValueError(f"unknown Kodaira symbol {symbol!r}")


def _symbol_from_valuations(vc4: int, vdelta: int) -> str:
    """Kodaira symbol from the valuations of (c4, Delta) at a place
    where the model is minimal (residue characteristic >= 5)."""
    if vdelta == 0:
        return "I0"
    if vc4 == 0:
        return f"I{vdelta}"
    if vdelta == 2:
        return "II"
    if vdelta == 3:
        return "III"
    if vdelta == 4:
        return "IV"
    if vdelta == 6:
        return "I0*"
    if vc4 == 2 and vdelta > 6:
        return f"I{vdelta - 6}*"
    if vdelta == 8:
        return "IV*"
    if vdelta == 9:
        return "III*"
    if vdelta == 10:
        return "II*"
    raise ValueError(f"no symbol for valuations (c4, Delta) = "
                     f"({vc4}, {vdelta}); model not minimal?")


@dataclass
class PlaceData:
    """Local data of a curve at one place of F_q(t)."""
    place: object              # monic irreducible Poly, or INFINITY
    degree: int
    kodaira: str
    f_v: int
    gamma_v: int
    b_v: int
    a_v: int


_BIG = 10 ** 9   # valuation of the zero polynomial


def _valuation(f: Poly, pi: Poly) -> int:
    if f.is_zero():
        return _BIG
    v = 0
    while True:
        q, r = f.divmod(pi)
        if not r.is_zero():
            return v
        f = q
        v += 1


def _minimalize_at(A: Poly, B: Poly, pi: Poly):
    """Divide out pi^4 | A, pi^6 | B while the model is non-minimal."""
    while _valuation(A, pi) >= 4 and _valuation(B, pi) >= 6:
        A = A.exact_div(pi ** 4)
        B = B.exact_div(pi ** 6)
    return A, B


def _infinity_model(E: FqTCurve):
    """Short model over F_q[s] around s = 0 after the substitution
    t = 1/s: A_s = s^{4M} A(1/s), B_s = s^{6M} B(1/s)."""
    F = E.field
    da = max(E.A.degree, 0)
    db = max(E.B.degree, 0)
    M = max(-(-da // 4), -(-db // 6))
    ca = [0] * (4 * M + 1)
    for i, c in enumerate(E.A.coeffs):
        ca[4 * M - i] = c
    cb = [0] * (6 * M + 1)
    for i, c in enumerate(E.B.coeffs):
        cb[6 * M - i] = c
    return Poly(ca, F), Poly(cb, F)


def _place_data(field: Fq, A: Poly, B: Poly, pi: Poly, label) -> PlaceData:
    """Local classification at the monic irreducible pi, for a model
    already minimal at pi."""
    c4 = A.scale(field.from_int(-48))
    c6 = B.scale(field.from_int(-864))
    delta = (A ** 3).scale(field.from_int(-64)) \
        + (B * B).scale(field.from_int(-432))
    vc4 = _valuation(c4, pi)
    vdelta = _valuation(delta, pi)
    symbol = _symbol_from_valuations(vc4, vdelta)
    f_v, gamma_v, b_v = kodaira_table_row(symbol)
    if symbol == "I0":
        kv, t0 = _residue_field_and_root(field, pi)
        a_v = int(_fiber_traces(kv, [_embed_poly(A, kv)(t0)],
                                [_embed_poly(B, kv)(t0)])[0])
    elif symbol.startswith("I") and not symbol.endswith("*"):
        kv, t0 = _residue_field_and_root(field, pi)
        val = _embed_poly(c6, kv)(t0)
        a_v = kv.square_class(kv.neg(val)).sign
    else:
        a_v = 0
    return PlaceData(place=label, degree=pi.degree, kodaira=symbol,
                     f_v=f_v, gamma_v=gamma_v, b_v=b_v, a_v=a_v)


def kodaira_at(E: FqTCurve, place) -> PlaceData:
    """Local data at a finite place (a monic irreducible polynomial) or
    at INFINITY (handled through t = 1/s and re-minimalization)."""
    F = E.field
    if place == INFINITY:
        As, Bs = _infinity_model(E)
        s = Poly.x(F)
        As, Bs = _minimalize_at(As, Bs, s)
        return _place_data(F, As, Bs, s, INFINITY)
    pi = place
    if not isinstance(pi, Poly) or pi.field != F:
        raise ValueError("finite place must be a polynomial over the "
                         "curve's field")
    if not pi.is_monic() or pi.degree < 1:
        raise ValueError("finite place must be monic of positive degree")
    A, B = _minimalize_at(E.A, E.B, pi)
    return _place_data(F, A, B, pi, pi)


def _finite_minimal(E: FqTCurve):
    """(A, B) minimal at every finite place, plus PlaceData for each
    finite bad place of the minimal model."""
    A, B = E.A, E.B
    delta = (A ** 3).scale(E.field.from_int(-64)) \
        + (B * B).scale(E.field.from_int(-432))
    _, facs = factor(delta)
    for pi, mult in facs:
        if mult >= 12:
            A, B = _minimalize_at(A, B, pi)
    delta = (A ** 3).scale(E.field.from_int(-64)) \
        + (B * B).scale(E.field.from_int(-432))
    places = []
    for pi, _mult in facs:
        if (delta % pi).is_zero():
            places.append(_place_data(E.field, A, B, pi, pi))
    return A, B, places


def finite_bad_places(E: FqTCurve):
    """PlaceData for every finite place of bad reduction (of the
    globally minimal finite model)."""
    return _finite_minimal(E)[2]


def bad_modulus(E: FqTCurve) -> Poly:
    """Monic squarefree m(t) whose irreducible factors are the finite
    bad places."""
    out = Poly([1], E.field)
    for pd in finite_bad_places(E):
        out = out * pd.place
    return out


def invariants_Nd_Dd_B(E: FqTCurve, d: int):
    """(N_d, D_d, B): degree of the twist family's L-polynomials, the
    square-class factor, and the bound term.

    N_d = f_inf(E twisted by t^d) + sum over finite bad v of
    f_v(E) deg v - 4 + 2d; D_d multiplies gamma_inf of the t^d twist by
    the gamma_v^{deg v}; B sums b_v deg v over the finite places.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    td = Poly([0] * d + [1], E.field)
    inf = kodaira_at(quadratic_twist(E, td, check_squarefree=False), INFINITY)
    fps = finite_bad_places(E)
    Nd = inf.f_v + sum(pd.f_v * pd.degree for pd in fps) - 4 + 2 * d
    Dd = inf.gamma_v * prod(pd.gamma_v ** pd.degree for pd in fps)
    B = sum(pd.b_v * pd.degree for pd in fps)
    return Nd, Dd, B


# ---------------------------------------------------------------------------
# Vectorized finite-field tables, embeddings and fiber counting
# ---------------------------------------------------------------------------


_VT_CACHE: dict = {}
_EMB_CACHE: dict = {}


class _FieldTables:
    """Numpy log/exp/digit tables for one field, powering the vectorized
    point counts."""

    def __init__(self, F: Fq):
        F.build_logs()
        q = F.q
        self.F = F
        self.q = q
        exp = np.array(F._exp, dtype=np.int64)
        self.EXP2 = np.concatenate([exp, exp])   # index by lu+lv directly
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.LOG = log
        chi = np.zeros(q, dtype=np.int64)
        chi[exp] = np.where(np.arange(q - 1) % 2 == 0, 1, -1)
        self.CHI = chi
        # digitwise base-p addition has no carries, so the low and high
        # digit blocks add independently through two small tables
        if F.e == 1:
            self.PH = None
        else:
            h = F.e // 2
            self.PH = F.p ** h
            self.LOADD = self._block_add_table(F.p, h)
            self.HIADD = self._block_add_table(F.p, F.e - h)

    @staticmethod
    def _block_add_table(p: int, ndig: int) -> np.ndarray:
        n = p ** ndig
        codes = np.arange(n)
        out = np.zeros((n, n), dtype=np.int64)
        scale = 1
        for _ in range(ndig):
            da = (codes // scale) % p
            s = (da[:, None] + da[None, :]) % p
            out += scale * s
            scale *= p
        return out

    def mul(self, u, v):
        u, v = np.broadcast_arrays(np.asarray(u), np.asarray(v))
        lu = self.LOG[u]
        lv = self.LOG[v]
        out = np.zeros(u.shape, dtype=np.int64)
        nz = (lu >= 0) & (lv >= 0)
        out[nz] = self.EXP2[lu[nz] + lv[nz]]
        return out

    def add(self, u, v):
        u = np.asarray(u)
        v = np.asarray(v)
        if self.PH is None:
            return (u + v) % self.F.p
        ph = self.PH
        return (self.LOADD[u % ph, v % ph]
                + ph * self.HIADD[u // ph, v // ph])

    def eval_poly(self, f: Poly, ts):
        """Horner evaluation of a polynomial over this field at an
        array of element codes."""
        acc = np.zeros(ts.shape, dtype=np.int64)
        for c in reversed(f.coeffs):
            acc = self.add(self.mul(acc, ts), int(c))
        return acc


def _tables(F: Fq) -> _FieldTables:
    key = (F.p, F.e)
    if key not in _VT_CACHE:
        _VT_CACHE[key] = _FieldTables(F)
    return _VT_CACHE[key]


def _embedding_table(Fs: Fq, Fb: Fq) -> np.ndarray:
    """Lookup table for the field embedding F_{p^a} -> F_{p^{ab}}
    (deterministic: the subfield generator maps to the least root of
    its minimal polynomial)."""
    key = (Fs.p, Fs.e, Fb.e)
    if key in _EMB_CACHE:
        return _EMB_CACHE[key]
    if Fs.p != Fb.p or Fb.e % Fs.e != 0:
        raise ValueError("no embedding between these fields")
    if Fs.e == 1 or Fs.e == Fb.e:
        emb = np.arange(Fs.q, dtype=np.int64)
    else:
        T = _tables(Fb)
        mod = Poly(list(conway_like_modulus(Fs.p, Fs.e)), Fb)
        vals = T.eval_poly(mod, np.arange(Fb.q))
        roots = np.nonzero(vals == 0)[0]
        if len(roots) == 0:
            raise RuntimeError("modulus has no root in the big field")
        rho = int(roots[0])
        powers = [1]
        for _ in range(Fs.e - 1):
            powers.append(Fb.mul(powers[-1], rho))
        emb = np.zeros(Fs.q, dtype=np.int64)
        for x in range(Fs.q):
            digits = Fs.to_vector(x)
            acc = 0
            for c, rp in zip(digits, powers):
                acc = Fb.add(acc, Fb.mul(c % Fb.p, rp))
            emb[x] = acc
    _EMB_CACHE[key] = emb
    return emb


def _embed_poly(f: Poly, G: Fq) -> Poly:
    """Map a polynomial into an overfield (or the integers into any
    field)."""
    if f.field is None:
        return Poly.from_int_coeffs(list(f.coeffs), G)
    if f.field == G:
        return f
    emb = _embedding_table(f.field, G)
    return Poly([int(emb[c]) for c in f.coeffs], G)


def _residue_field_and_root(F: Fq, pi: Poly):
    """The residue field of F_q[t]/(pi) as F_{q^r}, together with the
    canonical (least-code) root of pi there."""
    r = pi.degree
    if r == 1:
        t0 = F.neg(F.mul(pi.coeffs[0], F.inv(pi.coeffs[1])))
        return F, t0
    kv = get_field(F.p, F.e * r)
    T = _tables(kv)
    vals = T.eval_poly(_embed_poly(pi, kv), np.arange(kv.q))
    roots = np.nonzero(vals == 0)[0]
    if len(roots) == 0:
        raise ValueError("place polynomial is not irreducible")
    return kv, int(roots[0])


def _fiber_traces(F: Fq, a_codes, b_codes) -> np.ndarray:
    """Traces -sum_x chi(x^3 + a x + b) over F for paired arrays of
    curve constants (the Frobenius trace of each fiber)."""
    T = _tables(F)
    xs = np.arange(F.q)
    x3 = T.mul(T.mul(xs, xs), xs)
    a_codes = np.asarray(a_codes, dtype=np.int64)
    b_codes = np.asarray(b_codes, dtype=np.int64)
    out = np.empty(len(a_codes), dtype=np.int64)
    chunk = max(1, 8_000_000 // F.q)
    for s in range(0, len(a_codes), chunk):
        A = a_codes[s:s + chunk, None]
        B = b_codes[s:s + chunk, None]
        rhs = T.add(T.add(x3[None, :], T.mul(A, xs[None, :])), B)
        out[s:s + chunk] = -T.CHI[rhs].sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# L-functions
# ---------------------------------------------------------------------------


@dataclass
class LPolynomial:
    """L(T) in Z[T] with its degree, root number and base size Q = q^n."""
    coeffs: tuple              # ascending, length N_d + 1
    N_d: int
    epsilon: int
    Q: int

    def p_u(self):
        """Coefficients of P(T) = L(T/Q) over the rationals."""
        return [Fraction(c, self.Q ** j) for j, c in enumerate(self.coeffs)]

    def functional_equation_holds(self) -> bool:
        N, Q, e = self.N_d, self.Q, self.epsilon
        return all(self.coeffs[N - j] == e * Q ** (N - 2 * j) * self.coeffs[j]
                   for j in range(N + 1))

    def inverse_root_abs_error(self) -> float:
        """max | Q*|root| - 1 | over the roots of L (numeric layer)."""
        if self.N_d == 0:
            return 0.0
        roots = np.roots(list(reversed(self.coeffs)))
        return float(np.max(np.abs(self.Q * np.abs(roots) - 1.0)))


def _extension_field(FQ: Fq, k: int) -> Fq:
    if k == 1:
        return FQ
    return get_field(FQ.p, FQ.e * k)


def _grouped_traces(F: Fq, Av, Bv) -> np.ndarray:
    """Per-fiber traces of nonsingular fibers (a, b), counting one
    representative per isomorphism class: fibers sharing a j-invariant
    are quadratic twists (a, b) = (c^2 a0, c^3 b0) of each other, so
    their traces differ only by the sign chi(c)."""
    T = _tables(F)
    m = F.q - 1
    Av = np.asarray(Av, dtype=np.int64)
    Bv = np.asarray(Bv, dtype=np.int64)
    la = T.LOG[Av]
    lb = T.LOG[Bv]
    out = np.zeros(len(Av), dtype=np.int64)
    rep_a: list = []
    rep_b: list = []
    groups: list = []           # (member indices, member signs)
    # j = 0 (a = 0): twists are classified by the sextic class of b
    sel = la < 0
    if sel.any():
        idxs = np.nonzero(sel)[0]
        cls = lb[idxs] % 6
        for c in np.unique(cls):
            members = idxs[cls == c]
            rep_a.append(0)
            rep_b.append(int(Bv[members[0]]))
            groups.append((members, np.ones(len(members), dtype=np.int64)))
    # j = 1728 (b = 0): quartic classes of a
    sel = (lb < 0) & (la >= 0)
    if sel.any():
        idxs = np.nonzero(sel)[0]
        cls = la[idxs] % 4
        for c in np.unique(cls):
            members = idxs[cls == c]
            rep_a.append(int(Av[members[0]]))
            rep_b.append(0)
            groups.append((members, np.ones(len(members), dtype=np.int64)))
    # generic j: group by a^3 / (4a^3 + 27b^2) and twist from the rep
    gen = (la >= 0) & (lb >= 0)
    if gen.any():
        idxs = np.nonzero(gen)[0]
        lag, lbg = la[idxs], lb[idxs]
        a3 = T.EXP2[(3 * lag) % m]
        w = T.add(T.mul(int(F.from_int(4)), a3),
                  T.mul(int(F.from_int(27)), T.EXP2[(2 * lbg) % m]))
        jcode = T.EXP2[(T.LOG[a3] + (m - T.LOG[w])) % m]
        order = np.argsort(jcode, kind="stable")
        jo = jcode[order]
        starts = np.nonzero(np.concatenate(([True], jo[1:] != jo[:-1])))[0]
        ends = np.concatenate((starts[1:], [len(jo)]))
        for s, e in zip(starts, ends):
            grp = order[s:e]
            r = grp[0]
            # twist scalar c = (b/b0) * (a0/a); chi(c) from log parity
            lc = (lbg[grp] - lbg[r] + lag[r] - lag[grp]) % m
            signs = np.where(lc % 2 == 0, 1, -1).astype(np.int64)
            rep_a.append(int(Av[idxs[r]]))
            rep_b.append(int(Bv[idxs[r]]))
            groups.append((idxs[grp], signs))
    traces = _fiber_traces(F, rep_a, rep_b)
    for tr, (members, signs) in zip(traces, groups):
        out[members] = int(tr) * signs
    return out


_BASE_TRACES: dict = {}


def _base_fiber_traces(FQ: Fq, k: int, Am: Poly, Bm: Poly,
                       Dm: Poly) -> np.ndarray:
    """Traces of all fibers t0 in F_{q^{nk}} of a finite-minimal model,
    zero at the singular fibers; cached per (model, level)."""
    key = (FQ.p, FQ.e, tuple(Am.coeffs), tuple(Bm.coeffs), k)
    if key in _BASE_TRACES:
        return _BASE_TRACES[key]
    Fk = _extension_field(FQ, k)
    T = _tables(Fk)
    ts = np.arange(Fk.q)
    Dv = T.eval_poly(_embed_poly(Dm, Fk), ts)
    good = Dv != 0
    Av = T.eval_poly(_embed_poly(Am, Fk), ts)[good]
    Bv = T.eval_poly(_embed_poly(Bm, Fk), ts)[good]
    tr = np.zeros(Fk.q, dtype=np.int64)
    tr[good] = _grouped_traces(Fk, Av, Bv)
    _BASE_TRACES[key] = tr
    return tr


def _power_sum(FQ: Fq, k: int, Am: Poly, Bm: Poly, Dm: Poly,
               finite_places, inf_pd: PlaceData, inf_consts,
               u: Poly | None = None) -> int:
    """S_k: the sum of the k-th Frobenius trace contributions over all
    fibers of P^1(F_{q^{nk}}).

    When u is given, (Am, Bm, Dm) describe the untwisted base model and
    the good-fiber traces are its cached traces flipped by chi(u(t0));
    finite_places must then already carry the twisted local data.
    """
    Fk = _extension_field(FQ, k)
    T = _tables(Fk)
    tr = _base_fiber_traces(FQ, k, Am, Bm, Dm)
    if u is None:
        S = int(tr.sum())
    else:
        uv = T.eval_poly(_embed_poly(u, Fk), np.arange(Fk.q))
        # chi(u(t0)) = 0 at roots of u, which are additive for the twist
        S = int((tr * T.CHI[uv]).sum())
    for pd in finite_places:
        r = pd.degree
        if k % r == 0 and pd.kodaira != "I0" and not pd.kodaira.endswith("*") \
                and pd.kodaira not in ("II", "III", "IV"):
            S += r * pd.a_v ** (k // r)
    sym = inf_pd.kodaira
    if sym == "I0":
        a, b = inf_consts
        emb = _embedding_table(FQ, Fk)
        S += int(_fiber_traces(Fk, [int(emb[a])], [int(emb[b])])[0])
    elif sym.startswith("I") and not sym.endswith("*"):
        S += inf_pd.a_v ** k
    return S


def _twisted_places(FQ: Fq, places0, u: Poly):
    """Local data of the twist by u, assuming u is squarefree and
    coprime to the base curve's bad places: base places keep their
    symbol with the multiplicative traces flipped by chi(u(t0)), and
    each root of u becomes an I0* place."""
    out = []
    for pd in places0:
        sym = pd.kodaira
        if sym != "I0" and sym.startswith("I") and not sym.endswith("*"):
            kv, t0 = _residue_field_and_root(FQ, pd.place)
            s = kv.square_class(_embed_poly(u, kv)(t0)).sign
            out.append(PlaceData(place=pd.place, degree=pd.degree,
                                 kodaira=sym, f_v=pd.f_v,
                                 gamma_v=pd.gamma_v, b_v=pd.b_v,
                                 a_v=s * pd.a_v))
        else:
            out.append(pd)
    _, ufacs = factor(u)
    for rho, _mult in ufacs:
        f_v, gamma_v, b_v = kodaira_table_row("I0*")
        out.append(PlaceData(place=rho, degree=rho.degree, kodaira="I0*",
                             f_v=f_v, gamma_v=gamma_v, b_v=b_v, a_v=0))
    return out


def l_function(E: FqTCurve, u: Poly | None = None, n: int = 1,
               budget: int = 10 ** 9, full: bool = False) -> LPolynomial:
    """L(T) of the quadratic twist of E by u over F_{q^n}(t).

    Fiber point counts over F_{q^{nk}} give the power sums S_k; the
    exponential of sum S_k T^k / k yields the first coefficients and
    the functional equation supplies the rest.  With full=True every
    coefficient is counted directly (no completion), which is slower
    but independent of the functional equation.

    Twists coprime to the bad places share one cached set of base-model
    fiber traces, so a whole twist family costs little more than a
    single count per level.
    """
    F = E.field
    if n < 1:
        raise ValueError("n must be >= 1")
    FQ = F if n == 1 else get_field(F.p, F.e * n)
    if FQ.e > 1 and FQ.q <= 2048:
        FQ.build_tables()
    Q = FQ.q
    A = _embed_poly(E.A, FQ)
    B = _embed_poly(E.B, FQ)
    Ebase = FqTCurve(FQ, A, B)
    if u is not None:
        u = _embed_poly(u, FQ)
        Eu = quadratic_twist(Ebase, u)
    else:
        Eu = Ebase
    Am0, Bm0, places0 = _finite_minimal(Ebase)
    fast = u is not None and all(u.gcd(pd.place).degree == 0
                                 for pd in places0)
    if fast:
        Am, Bm = Am0, Bm0
        finite_places = _twisted_places(FQ, places0, u)
        u_count = u
    elif u is None:
        Am, Bm, finite_places = Am0, Bm0, places0
        u_count = None
    else:
        Am, Bm, finite_places = _finite_minimal(Eu)
        u_count = None
    inf_pd = kodaira_at(Eu, INFINITY)
    inf_consts = None
    if inf_pd.kodaira == "I0":
        As, Bs = _minimalize_at(*_infinity_model(Eu), Poly.x(FQ))
        inf_consts = (As(0), Bs(0))
    N = inf_pd.f_v + sum(pd.f_v * pd.degree for pd in finite_places) - 4
    if N < 0:
        raise ValueError("conductor degree below 4; constant j part?")
    Dm = (Am ** 3).scale(FQ.from_int(-64)) + (Bm * Bm).scale(FQ.from_int(-432))

    S: list[int] = []          # S[k-1] = power sum at level k
    b: list[int] = [1]         # L coefficients so far

    def extend_to(m):
        while len(S) < m:
            k = len(S) + 1
            if Q ** (2 * k) > budget:
                raise BudgetExceededError(
                    f"level {k} fiber count needs Q^(2k) = {Q ** (2 * k)} "
                    f"> budget {budget}")
            S.append(_power_sum(FQ, k, Am, Bm, Dm, finite_places,
                                inf_pd, inf_consts, u=u_count))
            j = len(b)
            tot = sum(S[i - 1] * b[j - i] for i in range(1, j + 1))
            if tot % j != 0:
                raise ArithmeticError("non-integer L coefficient")
            b.append(tot // j)

    if N == 0:
        return LPolynomial(coeffs=(1,), N_d=0, epsilon=1, Q=Q)

    m = N if full else -(-N // 2)
    extend_to(m)
    eps = None
    while eps is None:
        for j in range(len(b)):
            jj = N - j
            if 0 <= jj < len(b) and b[j] != 0:
                val = Fraction(b[jj]) / (Fraction(b[j])
                                         * Fraction(Q) ** (N - 2 * j))
                if val == 1:
                    eps = 1
                elif val == -1:
                    eps = -1
                else:
                    raise ArithmeticError("functional equation inconsistency")
                break
        if eps is None:
            if len(b) > N:
                raise ArithmeticError("cannot determine the root number")
            extend_to(len(S) + 1)

    coeffs: list = [None] * (N + 1)
    for j, v in enumerate(b[:N + 1]):
        coeffs[j] = v
    for j in range(min(len(b), N + 1)):
        jj = N - j
        want = eps * b[j] * Fraction(Q) ** (N - 2 * j)
        if want.denominator != 1:
            raise ArithmeticError("functional equation inconsistency")
        want = want.numerator
        if coeffs[jj] is None:
            coeffs[jj] = want
        elif coeffs[jj] != want:
            raise ArithmeticError("functional equation inconsistency")
    if any(c is None for c in coeffs):
        raise ArithmeticError("incomplete coefficient recovery")
    out = LPolynomial(coeffs=tuple(int(c) for c in coeffs), N_d=N,
                      epsilon=eps, Q=Q)
    if not out.functional_equation_holds():
        raise ArithmeticError("functional equation fails on the "
                              "assembled polynomial")
    return out


# ---------------------------------------------------------------------------
# Twist families and surveys
# ---------------------------------------------------------------------------


def enumerate_twists(E: FqTCurve, d: int, n: int = 1):
    """All squarefree u of degree d over F_{q^n} coprime to the finite
    bad places of E (the parameter space of the twist family)."""
    F = E.field
    FQ = F if n == 1 else get_field(F.p, F.e * n)
    if FQ.e > 1 and FQ.q <= 2048:
        FQ.build_tables()
    m = _embed_poly(bad_modulus(E), FQ)
    out = []
    for code in range(FQ.q ** d):
        cs = []
        c = code
        for _ in range(d):
            cs.append(c % FQ.q)
            c //= FQ.q
        for lead in range(1, FQ.q):
            u = Poly(cs + [lead], FQ)
            if not u.is_squarefree():
                continue
            if m.degree > 0 and u.gcd(m).degree > 0:
                continue
            out.append(u)
    return out


@dataclass
class TwistRecord:
    u_coeffs: tuple
    epsilon: int
    target: str
    status: str
    claimed: str | None
    match: bool


@dataclass
class SurveyReport:
    q: int
    n: int
    d: int
    N_d: int
    D_d: int
    B: int
    hypotheses_hold: bool
    family_size: int
    sampled: int
    delta_hat: Fraction
    confusion: dict
    epsilon_counts: dict
    square_class_constant: bool | None
    square_class_values: tuple
    expected_square_class: int | None
    records: list = dc_field(repr=False, default_factory=list)


def twist_target_group(N_d: int, epsilon: int, D_d: int) -> str:
    """The predicted Galois group of one twist's P_u."""
    if N_d % 2 == 1:
        return f"W{N_d - 1}"
    if epsilon == -1:
        return f"W{N_d - 2}"
    plus = is_perfect_square(Fraction((-1) ** (N_d // 2) * D_d))
    return f"W{N_d}+" if plus else f"W{N_d}"


def survey_delta(E: FqTCurve, d: int, n: int = 1, sample: int | None = None,
                 seed: int = 0, prime_budget: int = 10 ** 4,
                 budget: int = 10 ** 9) -> SurveyReport:
    """Classify the L-polynomials of a twist family and report the
    fraction matching the predicted group.

    For each u (all of the family, or a seeded sample): compute L and
    its root number, classify P_u(T) = L(T/q^n), and compare with the
    four-case target.  Also checks that the square class of
    (-1)^{N/2} disc(P_u) is constant over the eps=+1 twists and equal
    to the square class of (-1)^{N/2} D_d.
    """
    Nd, Dd, Bsum = invariants_Nd_Dd_B(E, d)
    if Nd < 3:
        raise ValueError("family degree N_d below 3")
    has_star = any(pd.kodaira == "I0*" for pd in finite_bad_places(E))
    hypotheses = (Nd >= max(6 * Bsum, 3)) and (d >= 2 or has_star)
    us = enumerate_twists(E, d, n)
    if not us:
        raise ValueError("empty twist family")
    family_size = len(us)
    if sample is not None and sample < len(us):
        us = random.Random(seed).sample(us, sample)
    records = []
    confusion: dict = {}
    eps_counts = {1: 0, -1: 0}
    sq_values = set()
    expected_sf = None
    if Nd % 2 == 0:
        expected_sf = _squarefree_part((-1) ** (Nd // 2) * Dd)[0]
    matches = 0
    for u in us:
        L = l_function(E, u, n=n, budget=budget)
        if L.N_d != Nd:
            raise ArithmeticError(f"degree {L.N_d} != N_d = {Nd} "
                                  f"for u = {list(u.coeffs)}")
        eps_counts[L.epsilon] += 1
        target = twist_target_group(Nd, L.epsilon, Dd)
        cert = classify(Poly(L.p_u()), prime_budget=prime_budget)
        match = (cert.status == "Certified" and cert.claimed_group == target)
        matches += match
        outcome = cert.claimed_group if cert.status == "Certified" \
            else cert.status
        confusion[(target, outcome)] = confusion.get((target, outcome), 0) + 1
        records.append(TwistRecord(
            u_coeffs=tuple(int(c) for c in u.coeffs), epsilon=L.epsilon,
            target=target, status=cert.status,
            claimed=cert.claimed_group, match=match))
        if Nd % 2 == 0 and L.epsilon == 1:
            disc = discriminant(Poly(L.p_u()))
            disc = Fraction(disc)
            if disc != 0:
                val = Fraction((-1) ** (Nd // 2)) * disc
                sq_values.add(
                    _squarefree_part(val.numerator * val.denominator)[0])
    sq_constant = None
    if Nd % 2 == 0:
        sq_constant = len(sq_values) <= 1 and (
            not sq_values or sq_values == {expected_sf})
    return SurveyReport(
        q=E.field.q, n=n, d=d, N_d=Nd, D_d=Dd, B=Bsum,
        hypotheses_hold=hypotheses, family_size=family_size,
        sampled=len(us), delta_hat=Fraction(matches, len(us)),
        confusion=confusion, epsilon_counts=eps_counts,
        square_class_constant=sq_constant,
        square_class_values=tuple(sorted(sq_values)),
        expected_square_class=expected_sf, records=records)
