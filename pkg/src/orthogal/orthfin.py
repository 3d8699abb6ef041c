"""
Orthogonal groups of diagonal quadratic forms over F_q (q odd).

An OrthSpace is a diagonal Gram matrix over F_q; up to isomorphism a
space is determined by (q, dimension, discriminant square class).  The
module provides spinor norms (fast characteristic-polynomial path with
a reflection-factorization fallback), brute-force enumeration of O(V)
for tiny spaces, exact conjugacy-class proportions for prescribed
characteristic polynomials, and the per-coset class densities that
drive the sieve experiments.

Enumeration is restricted to prime q so matrices can live in numpy
arrays; everything else works over any odd prime power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
import random

import numpy as np

from .errors import BudgetExceededError, NotSeparableError
from .ffield import Fq, get_field, SquareClass, SQUARE, NONSQUARE, ZERO_CLASS
from .poly import Poly, factor
from .recpoly import to_trace_form, classify_H, trace_lift, reciprocal_sign


class OrthSpace:
    """Orthogonal space over F_q with a diagonal Gram matrix."""

    def __init__(self, field: Fq, gram):
        if field.p == 2:
            raise ValueError("characteristic 2 not supported")
        gram = tuple(g if 0 <= g < field.q else field.from_int(g) for g in gram)
        if any(g == 0 for g in gram):
            raise ValueError("Gram diagonal entries must be nonzero")
        self.field = field
        self.gram = gram
        self.N = len(gram)

    @staticmethod
    def canonical(field: Fq, N: int, disc: SquareClass) -> "OrthSpace":
        """Representative space (1, ..., 1, d) of the given discriminant."""
        if disc == ZERO_CLASS:
            raise ValueError("discriminant cannot be zero")
        d = 1 if disc == SQUARE else _least_nonsquare(field)
        return OrthSpace(field, (1,) * (N - 1) + (d,))

    @property
    def q(self) -> int:
        return self.field.q

    def disc(self) -> SquareClass:
        F = self.field
        prod = 1
        for g in self.gram:
            prod = F.mul(prod, g)
        return F.square_class(prod)

    def is_split(self) -> bool:
        """Even-dimensional V is split iff disc = class((-1)^(N/2))."""
        if self.N % 2 != 0:
            raise ValueError("split/non-split applies to even dimension")
        F = self.field
        target = F.square_class(F.pow(F.from_int(-1), self.N // 2))
        return self.disc() == target

    def inner(self, x, y):
        F = self.field
        acc = 0
        for g, xi, yi in zip(self.gram, x, y):
            acc = F.add(acc, F.mul(g, F.mul(xi, yi)))
        return acc

    def order_O(self) -> int:
        """|O(V)| from the classical order formulas."""
        q, N = self.q, self.N
        if N == 1:
            return 2
        if N % 2 == 1:
            n = (N - 1) // 2
            out = 2 * q ** (n * n)
            for i in range(1, n + 1):
                out *= q ** (2 * i) - 1
            return out
        n = N // 2
        sgn = 1 if self.is_split() else -1
        out = 2 * q ** (n * (n - 1)) * (q ** n - sgn)
        for i in range(1, n):
            out *= q ** (2 * i) - 1
        return out

    def __repr__(self):
        return f"OrthSpace(q={self.q}, gram={self.gram})"


def _least_nonsquare(F: Fq) -> int:
    for a in range(2, F.q):
        if F.square_class(a) == NONSQUARE:
            return a
    raise RuntimeError("no nonsquare found")  # unreachable for q > 1


@dataclass(frozen=True)
class CosetLabel:
    det: int                 # +1 or -1
    spin: SquareClass        # Square or NonSquare

    def __post_init__(self):
        assert self.det in (1, -1)
        assert self.spin in (SQUARE, NONSQUARE)


ALL_COSETS = [CosetLabel(d, s) for d in (1, -1) for s in (SQUARE, NONSQUARE)]


class OrthElem:
    """An element of O(V), stored as a row-major tuple matrix acting on
    column vectors."""

    __slots__ = ("matrix", "space")

    def __init__(self, matrix, space: OrthSpace, check: bool = True):
        self.matrix = tuple(tuple(row) for row in matrix)
        self.space = space
        if check and not _is_orthogonal(self.matrix, space):
            raise ValueError("matrix does not preserve the form")

    def __eq__(self, other):
        return isinstance(other, OrthElem) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other):
        F = self.space.field
        N = self.space.N
        a, b = self.matrix, other.matrix
        out = [[0] * N for _ in range(N)]
        for i in range(N):
            for j in range(N):
                acc = 0
                for k in range(N):
                    acc = F.add(acc, F.mul(a[i][k], b[k][j]))
                out[i][j] = acc
        return OrthElem(out, self.space, check=False)

    def apply(self, x):
        F = self.space.field
        return tuple(
            _dot(F, row, x) for row in self.matrix
        )

    def det(self) -> int:
        """Determinant as +1 or -1."""
        F = self.space.field
        d = _det_field(self.matrix, F)
        if d == 1:
            return 1
        if d == F.from_int(-1):
            return -1
        raise ValueError("orthogonal matrix with det not +-1")

    def char_reciprocal(self) -> Poly:
        """P(T) = det(I - A T)."""
        F = self.space.field
        N = self.space.N
        # coefficient of T^k is (-1)^k * (sum of principal k x k minors)
        coeffs = [1]
        for k in range(1, N + 1):
            s = 0
            for subset in _k_subsets(N, k):
                sub = [[self.matrix[i][j] for j in subset] for i in subset]
                s = F.add(s, _det_field(sub, F))
            if k % 2 == 1:
                s = F.neg(s)
            coeffs.append(s)
        return Poly(coeffs, F)


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def _k_subsets(n, k):
    from itertools import combinations
    return combinations(range(n), k)


def _is_orthogonal(m, V: OrthSpace) -> bool:
    F = V.field
    N = V.N
    for i in range(N):
        col_i = [m[r][i] for r in range(N)]
        for j in range(i, N):
            col_j = [m[r][j] for r in range(N)]
            want = V.gram[i] if i == j else 0
            if V.inner(col_i, col_j) != want:
                return False
    return True


def _det_field(m, F: Fq):
    """Determinant over F_q by elimination (small matrices)."""
    n = len(m)
    a = [list(row) for row in m]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = F.neg(det)
        det = F.mul(det, a[col][col])
        inv = F.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col]:
                c = F.mul(a[r][col], inv)
                for cc in range(col, n):
                    a[r][cc] = F.sub(a[r][cc], F.mul(c, a[col][cc]))
    return det


def identity_elem(V: OrthSpace) -> OrthElem:
    N = V.N
    return OrthElem([[1 if i == j else 0 for j in range(N)] for i in range(N)],
                    V, check=False)


def reflection(V: OrthSpace, v) -> OrthElem:
    """The reflection r_v: x -> x - 2 <x,v>/<v,v> v.  Needs <v,v> != 0."""
    F = V.field
    vv = V.inner(v, v)
    if vv == 0:
        raise ValueError("reflection vector must be anisotropic")
    N = V.N
    c = F.mul(F.from_int(2), F.inv(vv))
    out = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            # <e_j, v> = gram[j] v_j
            t = F.mul(c, F.mul(v[i], F.mul(V.gram[j], v[j])))
            out[i][j] = F.sub(1 if i == j else 0, t)
    return OrthElem(out, V, check=False)


# ---------------------------------------------------------------------------
# Spinor norm
# ---------------------------------------------------------------------------


def _reflection_factorization_spin(A: OrthElem):
    """Spinor norm via an explicit reflection factorization.

    Processes the orthogonal basis vectors in order; each step composes
    with one or two reflections that move A e_k to e_k while fixing the
    previously handled basis vectors.  The product of the <v,v> of the
    used reflection vectors represents the spinor norm; the parity of
    their number is the determinant.
    """
    V = A.space
    F = V.field
    N = V.N
    cur = A
    spin_rep = 1
    count = 0
    for k in range(N):
        e_k = tuple(1 if i == k else 0 for i in range(N))
        y = cur.apply(e_k)
        if y == e_k:
            continue
        w = tuple(F.sub(yi, xi) for yi, xi in zip(y, e_k))
        ww = V.inner(w, w)
        if ww != 0:
            r = reflection(V, w)
            cur = r * cur
            spin_rep = F.mul(spin_rep, ww)
            count += 1
        else:
            u = tuple(F.add(yi, xi) for yi, xi in zip(y, e_k))
            uu = V.inner(u, u)
            r_u = reflection(V, u)
            r_x = reflection(V, e_k)
            cur = r_x * (r_u * cur)
            spin_rep = F.mul(spin_rep, F.mul(uu, V.inner(e_k, e_k)))
            count += 2
    if cur != identity_elem(V):
        raise RuntimeError("reflection factorization failed")
    return F.square_class(spin_rep) if spin_rep else SQUARE, (-1) ** count


def spinor_norm(A: OrthElem) -> SquareClass:
    """Spinor norm of A as a square class.

    Fast path: when P(-1) = det(I + A) != 0, spin(A) = class(2^N P(-1)).
    Otherwise falls back to the reflection factorization.
    """
    V = A.space
    F = V.field
    N = V.N
    m = A.matrix
    iplus = [[F.add(1 if i == j else 0, m[i][j]) for j in range(N)] for i in range(N)]
    d = _det_field(iplus, F)
    if d != 0:
        return F.square_class(F.mul(F.pow(F.from_int(2), N), d))
    spin, _ = _reflection_factorization_spin(A)
    return spin


def coset_label(A: OrthElem) -> CosetLabel:
    return CosetLabel(A.det(), spinor_norm(A))


# ---------------------------------------------------------------------------
# Brute-force enumeration (prime q)
# ---------------------------------------------------------------------------


class GroupTable:
    """Result of enumerate_O: all elements of O(V) as a numpy stack.

    mats has shape (|O(V)|, N, N) with entries in range(p).  Derived
    per-element arrays (determinants, characteristic polynomials,
    spinor norms) are computed lazily and cached.
    """

    def __init__(self, V: OrthSpace, mats: np.ndarray):
        self.V = V
        self.mats = mats
        self._dets = None
        self._charpolys = None
        self._spins = None

    def __len__(self):
        return len(self.mats)

    def elements(self):
        for m in self.mats:
            yield OrthElem(m.tolist(), self.V, check=False)

    # -- batched derived data -------------------------------------------

    def dets(self) -> np.ndarray:
        """Array of determinants as +1/-1 ints."""
        if self._dets is None:
            p = self.V.q
            d = _batch_det(self.mats, p)
            out = np.where(d == 1, 1, -1)
            assert np.all((d == 1) | (d == p - 1))
            self._dets = out
        return self._dets

    def charpolys(self) -> np.ndarray:
        """Array (|G|, N+1) of coefficients of det(I - A T), ascending."""
        if self._charpolys is None:
            p = self.V.q
            N = self.V.N
            G = self.mats
            out = np.zeros((len(G), N + 1), dtype=np.int64)
            out[:, 0] = 1
            for k in range(1, N + 1):
                s = np.zeros(len(G), dtype=np.int64)
                for subset in _k_subsets(N, k):
                    idx = np.array(subset)
                    sub = G[:, idx[:, None], idx[None, :]]
                    s = (s + _batch_det(sub, p)) % p
                if k % 2 == 1:
                    s = (-s) % p
                out[:, k] = s
            self._charpolys = out
        return self._charpolys

    def spins(self) -> np.ndarray:
        """Array of spinor norms as +1 (square) / -1 (nonsquare)."""
        if self._spins is None:
            p = self.V.q
            N = self.V.N
            G = self.mats
            F = self.V.field
            sq = np.zeros(p, dtype=np.int64)
            for a in range(1, p):
                sq[a] = 1 if F.square_class(a) == SQUARE else -1
            two_n = pow(2, N, p)

            def fast_path(stack):
                iplus = (stack + np.eye(N, dtype=np.int64)[None, :, :]) % p
                d = _batch_det(iplus, p)
                return sq[(two_n * d) % p], d == 0

            out, bad = fast_path(G)
            # det(I+A) = 0: multiply by a reflection of known norm class
            # and retry, using spin(A r_v) = spin(A) class(<v,v>)
            stream = _candidate_reflection_vectors(self.V)
            for _ in range(6):
                idx = np.nonzero(bad)[0]
                if len(idx) == 0:
                    break
                try:
                    v = next(stream)
                except StopIteration:
                    break
                vv = 1 if F.square_class(self.V.inner(v, v)) == SQUARE else -1
                R = np.array(reflection(self.V, v).matrix, dtype=np.int64)
                prod = np.einsum("fij,jk->fik", G[idx], R) % p
                vals, still = fast_path(prod)
                out[idx] = vals * vv
                nxt = np.zeros(len(G), dtype=bool)
                nxt[idx[still]] = True
                bad = nxt
            # anything still degenerate: exact reflection factorization
            for i in np.nonzero(bad)[0]:
                A = OrthElem(G[i].tolist(), self.V, check=False)
                spin, _ = _reflection_factorization_spin(A)
                out[i] = 1 if spin == SQUARE else -1
            self._spins = out
        return self._spins


def _batch_det(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of small matrices (n <= 5) by
    cofactor expansion."""
    n = mats.shape[-1]
    if n == 1:
        return mats[..., 0, 0] % p
    if n == 2:
        return (mats[..., 0, 0] * mats[..., 1, 1]
                - mats[..., 0, 1] * mats[..., 1, 0]) % p
    acc = np.zeros(mats.shape[:-2], dtype=np.int64)
    cols = list(range(n))
    for j in range(n):
        rest = cols[:j] + cols[j + 1:]
        minor = mats[..., 1:, :][..., :, rest]
        term = (mats[..., 0, j] * _batch_det(minor, p)) % p
        acc = (acc + ((-1) ** j) * term) % p
    return acc % p


def _candidate_reflection_vectors(V: OrthSpace):
    """Deterministic stream of anisotropic vectors used as generators."""
    N = V.N
    q = V.q
    # basis vectors, pair sums/differences, then the full vector space
    basic = []
    for i in range(N):
        v = [0] * N
        v[i] = 1
        basic.append(tuple(v))
    for i in range(N):
        for j in range(i + 1, N):
            for c in range(1, q):
                v = [0] * N
                v[i] = 1
                v[j] = c
                basic.append(tuple(v))
    seen = set(basic)

    def full_stream():
        for vec in iter_product(range(q), repeat=N):
            if vec not in seen and any(vec):
                yield vec

    for v in basic:
        if V.inner(v, v) != 0:
            yield v
    for v in full_stream():
        if V.inner(v, v) != 0:
            yield v


def enumerate_O(V: OrthSpace, budget: int = 2 * 10 ** 6) -> GroupTable:
    """All of O(V) by breadth-first closure over reflections.

    Reflections generate O(V); the closure starts from a deterministic
    prefix of the reflection list and keeps adding further reflections
    until the classical order formula is met, so the result is provably
    complete.  Prime q only (matrices are numpy arrays mod p).
    """
    if V.field.e != 1:
        raise ValueError("enumeration requires prime q")
    if V.N < 1:
        raise ValueError("dimension must be >= 1")
    target = V.order_O()
    if target > budget:
        raise BudgetExceededError(f"|O(V)| = {target} exceeds budget {budget}")
    p = V.q
    N = V.N
    if V.N == 1:
        mats = np.array([[[1]], [[p - 1]]], dtype=np.int64)
        return GroupTable(V, mats)

    gen_stream = _candidate_reflection_vectors(V)
    gens = []
    for _ in range(2 * N + 2):
        try:
            gens.append(np.array(reflection(V, next(gen_stream)).matrix,
                                 dtype=np.int64))
        except StopIteration:
            break

    def closure(generators):
        eye = np.eye(N, dtype=np.int64)
        seen = {eye.tobytes()}
        mats = [eye]
        frontier = eye[None, :, :]
        gstack = np.stack(generators)
        while len(frontier):
            # frontier x generators in one shot
            prod = np.einsum("fij,gjk->fgik", frontier, gstack) % p
            prod = prod.reshape(-1, N, N)
            new = []
            for m in prod:
                key = m.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(m)
            if not new:
                break
            frontier = np.stack(new)
            mats.extend(new)
            if len(mats) > target:
                raise RuntimeError("closure exceeded the group order")
        return mats

    while True:
        mats = closure(gens)
        if len(mats) == target:
            break
        # generated a proper subgroup: add more reflections
        added = 0
        while added < 4:
            try:
                v = next(gen_stream)
            except StopIteration:
                raise RuntimeError("ran out of reflections before closing")
            gens.append(np.array(reflection(V, v).matrix, dtype=np.int64))
            added += 1
    return GroupTable(V, np.stack(mats))


# ---------------------------------------------------------------------------
# Exact conjugacy-class proportions
# ---------------------------------------------------------------------------


def _e_signs_and_degrees(f: Poly):
    """Per irreducible factor h_i of the trace form of f: (deg h_i, e_i)
    with e_i = +1 iff h_i(2) h_i(-2) is a square."""
    F = f.field
    h = to_trace_form(f).h
    if h.degree >= 1 and not h.is_squarefree():
        raise NotSeparableError("trace form is not separable")
    unit, factors = factor(h)
    out = []
    for hi, m in factors:
        assert m == 1
        val = F.mul(hi.eval_int(2), hi.eval_int(-2))
        sc = F.square_class(val)
        if sc == ZERO_CLASS:
            raise ValueError("boundary zero in a factor")
        out.append((hi.degree, 1 if sc == SQUARE else -1))
    return out


def _base_product(q: int, pairs) -> Fraction:
    """q^(-n) prod (1 - e_i / q^(d_i))^(-1), exactly."""
    n = sum(d for d, _ in pairs)
    val = Fraction(1, q ** n)
    for d, e in pairs:
        val *= Fraction(q ** d, q ** d - e)
    return val


@dataclass
class ClassData:
    proportion: Fraction     # |C| / |O(V)|
    det: int
    spin: SquareClass | None  # None only for the summed two-beta case


def _check_f(f: Poly):
    if not f.is_monic() or f.degree % 2 != 0 or f.degree < 2:
        raise ValueError("need a monic reciprocal polynomial of even degree")
    if reciprocal_sign(f) != 1:
        raise ValueError("polynomial is not reciprocal")
    if not f.is_squarefree():
        raise NotSeparableError("f must be separable")
    if f.eval_int(1) == 0 or f.eval_int(-1) == 0:
        raise ValueError("f(1) and f(-1) must be nonzero")


def class_proportion(V: OrthSpace, f: Poly, case: str,
                     beta: SquareClass | None = None,
                     eps: int | None = None) -> ClassData:
    """Exact |C| / |O(V)| for the conjugacy class with the prescribed
    characteristic polynomial, together with the forced (det, spin).

    case "even":  N = 2n, char poly f; zero proportion when
                  disc(V) != class(f(1) f(-1)).
    case "even2": N = 2n+2, char poly (1-T^2) f, spinor class beta
                  (beta=None sums over both choices).
    case "odd":   N = 2n+1, char poly (1 - eps T) f.
    """
    F = V.field
    if f.field != F:
        raise ValueError("field mismatch")
    _check_f(f)
    n = f.degree // 2
    pairs = _e_signs_and_degrees(f)
    base = _base_product(V.q, pairs)
    f1 = F.square_class(f.eval_int(1))
    fm1 = F.square_class(f.eval_int(-1))
    if case == "even":
        if V.N != 2 * n:
            raise ValueError("dimension mismatch")
        if V.disc() != f1 * fm1:
            return ClassData(Fraction(0), 1, fm1)
        return ClassData(base, 1, fm1)
    if case == "even2":
        if V.N != 2 * n + 2:
            raise ValueError("dimension mismatch")
        if beta is None:
            return ClassData(base / 2, -1, None)
        return ClassData(base / 4, -1, beta)
    if case == "odd":
        if V.N != 2 * n + 1:
            raise ValueError("dimension mismatch")
        if eps not in (1, -1):
            raise ValueError("eps must be +-1")
        spin = fm1 if eps == 1 else f1 * V.disc()
        return ClassData(base / 2, eps, spin)
    raise ValueError(f"unknown case {case!r}")


# ---------------------------------------------------------------------------
# Per-coset class densities
# ---------------------------------------------------------------------------


def _monic_polys(F: Fq, deg: int):
    for code in range(F.q ** deg):
        c = code
        coeffs = []
        for _ in range(deg):
            coeffs.append(c % F.q)
            c //= F.q
        yield Poly(coeffs + [1], F)


def _qualifying_f(F: Fq, n: int, i: int):
    """All f = T^n h(T+1/T) with h in H_{n,i} and at most eight
    irreducible factors in f, by enumeration of trace forms."""
    from .poly import factor_degrees
    for h in _monic_polys(F, n):
        if i not in classify_H(h):
            continue
        f = trace_lift(h)
        if len(factor_degrees(f)) > 8:
            continue
        yield f


def c_i_density(V: OrthSpace, kappa: CosetLabel, i: int,
                budget: int = 10 ** 6) -> Fraction:
    """|C_i(kappa)| / |kappa| exactly, by summing class proportions over
    the qualifying polynomials.

    The coset kappa has det = eps and spinor class delta; membership in
    C_i is decided by the stripped characteristic polynomial lying in
    the i-th class family, with the C_6 = kappa convention when N is
    even and eps = 1.
    """
    N = V.N
    F = V.field
    q = V.q
    if N <= 2 or q < 5:
        raise ValueError("need N > 2 and q >= 5")
    if not 1 <= i <= 6:
        raise ValueError("class index out of range")
    eps, delta = kappa.det, kappa.spin
    if N % 2 == 0 and eps == 1 and i == 6:
        return Fraction(1)
    if N % 2 == 1:
        n = (N - 1) // 2
    elif eps == -1:
        n = (N - 2) // 2
    else:
        n = N // 2
    if q ** n > budget:
        raise BudgetExceededError(f"{q}^{n} trace forms exceed budget")
    total = Fraction(0)
    # |kappa| = |O(V)| / 4 for N >= 3, q > 3
    for f in _qualifying_f(F, n, i):
        if N % 2 == 1:
            cd = class_proportion(V, f, "odd", eps=eps)
            if cd.spin == delta:
                total += 4 * cd.proportion
        elif eps == -1:
            cd = class_proportion(V, f, "even2", beta=delta)
            total += 4 * cd.proportion
        else:
            cd = class_proportion(V, f, "even")
            if cd.spin == delta and cd.proportion:
                total += 4 * cd.proportion
    return total


# ---------------------------------------------------------------------------
# Seeded random elements
# ---------------------------------------------------------------------------


def random_element(V: OrthSpace, seed: int,
                   label: CosetLabel | None = None) -> OrthElem:
    """Deterministic pseudorandom element: a product of 4N random
    reflections, optionally steered into a requested coset by a final
    multiplication with fixed reflections."""
    rng = random.Random(seed)
    F = V.field
    N = V.N
    out = identity_elem(V)
    count = 0
    while count < 4 * N:
        v = tuple(rng.randrange(F.q) for _ in range(N))
        if not any(v) or V.inner(v, v) == 0:
            continue
        out = out * reflection(V, v)
        count += 1
    if label is not None:
        sq_vec, ns_vec = _spin_adjusters(V)
        cur_det = out.det()
        cur_spin = spinor_norm(out)
        if cur_det != label.det:
            # one reflection flips det; pick its spin class to make the
            # remaining spin correction possible in pairs
            vec = sq_vec if (cur_spin == label.spin) else ns_vec
            out = out * reflection(V, vec)
            cur_spin = spinor_norm(out)
        if cur_spin != label.spin:
            out = out * reflection(V, sq_vec) * reflection(V, ns_vec)
    return out


def _spin_adjusters(V: OrthSpace):
    """A square-norm and a nonsquare-norm anisotropic vector."""
    sq_vec = ns_vec = None
    for v in _candidate_reflection_vectors(V):
        sc = V.field.square_class(V.inner(v, v))
        if sc == SQUARE and sq_vec is None:
            sq_vec = v
        elif sc == NONSQUARE and ns_vec is None:
            ns_vec = v
        if sq_vec is not None and ns_vec is not None:
            return sq_vec, ns_vec
    raise RuntimeError("could not find both spin classes among reflections")
