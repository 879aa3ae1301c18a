"""Finite fields F_{p^k} with k <= 4, plus field-generic linear algebra and
univariate polynomial tools.

Field elements are plain ints 0..q-1: the base-p digits of an element are
the coefficients of its polynomial expression in the extension generator.
Constants 0..p-1 therefore mean the same thing in F_p and in every
extension F_{p^k}, which is what lets a representation sampled over F_p be
re-read over an extension without translation.

The matrix and polynomial helpers are generic over a small field protocol
(attributes `zero`, `one`; methods add/sub/neg/mul/inv/sample): they work
for GF instances and for PolyExt towers alike.  Matrices are lists of row
lists; polynomials are tuples of coefficients in ascending degree order
with no trailing zeros, () being the zero polynomial.
"""

from __future__ import annotations

from typing import Iterable, Sequence

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 cap used here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class GF:
    """The field with q = p**k elements, p prime, 1 <= k <= 4.

    For k > 1 the modulus is the minimal monic irreducible of degree k
    over F_p, "minimal" meaning smallest integer encoding sum(c_i p^i) of
    the non-leading coefficients -- a deterministic choice recomputed at
    construction, so equal (p, k) always gives the same field tables.
    """

    TABLE_LIMIT = 1 << 16

    def __init__(self, p: int, k: int = 1) -> None:
        if not is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        if p >= 1 << 31:
            raise ValueError(f"prime {p} too large (need p < 2^31)")
        if not 1 <= k <= 4:
            raise ValueError(f"extension degree {k} out of range 1..4")
        self.p = p
        self.k = k
        self.q = p**k
        self.zero = 0
        self.one = 1 % self.q
        self.modulus: tuple[int, ...] | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if k > 1:
            self.modulus = _min_irreducible(p, k)
            if self.q <= self.TABLE_LIMIT:
                self._build_tables()

    # -- element arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (p - a) % p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((p - a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow_(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def embed_int(self, n: int) -> int:
        """The image of the integer n, landing in the prime subfield."""
        return n % self.p

    def decode(self, a: int) -> tuple[int, ...]:
        """Base-p digits of a, least significant first, length k."""
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def encode(self, digits: Sequence[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d % self.p
        return out

    def elements(self) -> range:
        return range(self.q)

    def sample(self, rng) -> int:
        return rng.randrange(self.q)

    # -- internals -----------------------------------------------------------

    def _mul_poly(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da = self.decode(a)
        db = self.decode(b)
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        # reduce by the monic modulus, highest degree first
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = conv[i] % p
            if c:
                for j in range(k):
                    conv[i - k + j] -= c * mod[j]
            conv[i] = 0
        return self.encode([conv[i] % p for i in range(k)])

    def _build_tables(self) -> None:
        g = self._find_generator()
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, g)
        if x != 1:
            raise AssertionError("generator order mismatch")
        self._exp = exp
        self._log = log

    def _find_generator(self) -> int:
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self._pow_poly(g, (self.q - 1) // f) != 1 for f in factors):
                return g
        raise AssertionError("no multiplicative generator found")

    def _pow_poly(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._mul_poly(out, a)
            a = self._mul_poly(a, a)
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF):
            return NotImplemented
        return (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p},{self.k})"


def _prime_factors(n: int) -> list[int]:
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


def _min_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest-encoding monic irreducible of degree k over F_p.

    Returned as the full ascending coefficient tuple (c_0..c_{k-1}, 1).
    """
    base = GF(p)
    for tail in range(p**k):
        digits = []
        t = tail
        for _ in range(k):
            digits.append(t % p)
            t //= p
        f = tuple(digits) + (1,)
        if _is_irreducible(base, f):
            return f
    raise AssertionError(f"no irreducible of degree {k} over F_{p}")


def _is_irreducible(F: GF, f: tuple[int, ...]) -> bool:
    # f monic of degree k >= 1 over the prime field F: irreducible iff
    # x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1 for prime l | k.
    k = len(f) - 1
    x = (0, 1)
    if poly_powmod(F, x, F.q**k, f) != poly_mod(F, x, f):
        return False
    for ell in _prime_factors(k):
        h = poly_powmod(F, x, F.q ** (k // ell), f)
        if poly_deg(poly_gcd(F, poly_sub(F, h, x), f)) > 0:
            return False
    return True


class PolyExt:
    """Field extension base[x]/(modulus) for an arbitrary base field object.

    Elements are tuples of base-field elements of length deg(modulus).
    The modulus must be monic and irreducible over the base; callers are
    trusted on irreducibility (this class exists for residue fields of
    factors already certified irreducible).  Towers compose: the base may
    itself be a PolyExt.
    """

    def __init__(self, base, modulus: tuple) -> None:
        if len(modulus) < 3 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 2")
        self.base = base
        self.modulus = tuple(modulus)
        self.k = len(modulus) - 1
        self.q = base.q**self.k
        self.zero = (base.zero,) * self.k
        self.one = (base.one,) + (base.zero,) * (self.k - 1)

    def embed(self, a) -> tuple:
        """Lift a base-field element into the extension."""
        return (a,) + (self.base.zero,) * (self.k - 1)

    def embed_int(self, n: int) -> tuple:
        return self.embed(self.base.embed_int(n))

    def add(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        k = self.k
        conv = [B.zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if x != B.zero:
                for j, y in enumerate(b):
                    conv[i + j] = B.add(conv[i + j], B.mul(x, y))
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = conv[i]
            if c != B.zero:
                for j in range(k):
                    conv[i - k + j] = B.sub(conv[i - k + j], B.mul(c, mod[j]))
                conv[i] = B.zero
        return tuple(conv[:k])

    def inv(self, a: tuple):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_extgcd(self.base, poly_trim(self.base, a), self.modulus)
        # g is a nonzero constant since the modulus is irreducible
        c = self.base.inv(g[0])
        lifted = tuple(self.base.mul(c, x) for x in s)
        return lifted + (self.base.zero,) * (self.k - len(lifted))

    def div(self, a: tuple, b: tuple) -> tuple:
        return self.mul(a, self.inv(b))

    def pow_(self, a: tuple, e: int) -> tuple:
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def sample(self, rng) -> tuple:
        return tuple(self.base.sample(rng) for _ in range(self.k))

    def generator(self) -> tuple:
        """The class of x, a root of the modulus."""
        g = [self.base.zero] * self.k
        g[1] = self.base.one
        return tuple(g)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyExt):
            return NotImplemented
        return self.base == other.base and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("PolyExt", self.base, self.modulus))

    def __repr__(self) -> str:
        return f"PolyExt({self.base!r}, deg {self.k})"


# -- matrices over a generic field -------------------------------------------


def mat_identity(F, n: int) -> list[list]:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_mul(F, A: list[list], B: list[list]) -> list[list]:
    if A and B and len(A[0]) != len(B):
        raise ValueError("matrix shape mismatch")
    n, m = len(A), len(B[0]) if B else 0
    out = [[F.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k, a in enumerate(Ai):
            if a != F.zero:
                Bk = B[k]
                Oi = out[i]
                for j in range(m):
                    Oi[j] = F.add(Oi[j], F.mul(a, Bk[j]))
    return out


def mat_vec(F, A: list[list], v: list) -> list:
    out = []
    for row in A:
        s = F.zero
        for a, x in zip(row, v):
            if a != F.zero and x != F.zero:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def mat_rref(F, A: list[list]) -> tuple[list[list], tuple[int, ...]]:
    """Reduced row echelon form (new matrix) and its pivot columns."""
    M = [list(row) for row in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if M[i][c] != F.zero), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != F.zero:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, tuple(pivots)


def mat_rank(F, A: list[list]) -> int:
    return len(mat_rref(F, A)[1])


def mat_det(F, A: list[list]):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return F.one  # empty determinant convention
    M = [list(row) for row in A]
    det = F.one
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c] != F.zero), None)
        if pr is None:
            return F.zero
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            det = F.neg(det)
        pivot = M[c][c]
        det = F.mul(det, pivot)
        inv = F.inv(pivot)
        for i in range(c + 1, n):
            if M[i][c] != F.zero:
                f = F.mul(inv, M[i][c])
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return det


def mat_kernel(F, A: list[list], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel {v : A v = 0}."""
    if not A:
        n = ncols or 0
        return [row[:] for row in mat_identity(F, n)]
    n = len(A[0])
    R, pivots = mat_rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def echelon_complete(F, rows: list[list], n: int) -> list[list]:
    """Extend independent echelon rows to a full basis of F^n.

    Appends standard basis vectors at the non-pivot columns; the returned
    list starts with the given rows.
    """
    R, pivots = mat_rref(F, rows) if rows else ([], ())
    if rows and len(pivots) != len(rows):
        raise ValueError("rows are not linearly independent")
    out = [list(r) for r in rows]
    for c in range(n):
        if c not in pivots:
            v = [F.zero] * n
            v[c] = F.one
            out.append(v)
    return out


def mat_inv(F, A: list[list]) -> list[list]:
    n = len(A)
    aug = [list(A[i]) + mat_identity(F, n)[i] for i in range(n)]
    R, pivots = mat_rref(F, aug)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


# -- univariate polynomials over a generic field ------------------------------


def poly_trim(F, cs: Iterable) -> tuple:
    out = list(cs)
    while out and out[-1] == F.zero:
        out.pop()
    return tuple(out)


def poly_deg(f: tuple) -> int:
    return len(f) - 1  # zero polynomial gets -1


def poly_add(F, f: tuple, g: tuple) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return poly_trim(F, out)


def poly_neg(F, f: tuple) -> tuple:
    return tuple(F.neg(c) for c in f)


def poly_sub(F, f: tuple, g: tuple) -> tuple:
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F, c, f: tuple) -> tuple:
    if c == F.zero:
        return ()
    return poly_trim(F, [F.mul(c, x) for x in f])


def poly_mul(F, f: tuple, g: tuple) -> tuple:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != F.zero:
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_divmod(F, f: tuple, g: tuple) -> tuple[tuple, tuple]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    rem = list(f)
    glead = F.inv(g[-1])
    dg = len(g) - 1
    quo = [F.zero] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = rem[i]
        if c != F.zero:
            c = F.mul(c, glead)
            quo[i - dg] = c
            for j in range(dg + 1):
                rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(c, g[j]))
    return poly_trim(F, quo), poly_trim(F, rem)


def poly_mod(F, f: tuple, g: tuple) -> tuple:
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f: tuple) -> tuple:
    if not f:
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F, f: tuple, g: tuple) -> tuple:
    while g:
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_extgcd(F, f: tuple, g: tuple) -> tuple[tuple, tuple, tuple]:
    """(d, s, t) with s f + t g = d; d is not normalized to monic."""
    r0, r1 = f, g
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    return r0, s0, t0


def poly_eval(F, f: tuple, x):
    out = F.zero
    for c in reversed(f):
        out = F.add(F.mul(out, x), c)
    return out


def poly_deriv(F, f: tuple) -> tuple:
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.embed_int(i), f[i]))
    return poly_trim(F, out)


def poly_powmod(F, f: tuple, e: int, m: tuple) -> tuple:
    out = poly_mod(F, (F.one,), m)
    f = poly_mod(F, f, m)
    while e:
        if e & 1:
            out = poly_mod(F, poly_mul(F, out, f), m)
        f = poly_mod(F, poly_mul(F, f, f), m)
        e >>= 1
    return out


def _char_of(F) -> int:
    while isinstance(F, PolyExt):
        F = F.base
    return F.p


def _pth_root_poly(F, f: tuple) -> tuple:
    # f = g(x^p) in characteristic p; recover g by inverting Frobenius on
    # the coefficients (a -> a^(q/p) since a^q = a).
    p = _char_of(F)
    out = []
    for i in range(0, len(f), p):
        out.append(F.pow_(f[i], F.q // p))
    return poly_trim(F, out)


def poly_radical(F, f: tuple) -> tuple:
    """Product of the distinct monic irreducible factors of f."""
    f = poly_monic(F, f)
    if poly_deg(f) <= 0:
        return (F.one,)
    d = poly_deriv(F, f)
    if not d:
        return poly_radical(F, _pth_root_poly(F, f))
    g = poly_gcd(F, f, d)
    w = poly_divmod(F, f, g)[0]  # distinct factors with exponent not 0 mod p
    r = g
    while True:
        c = poly_gcd(F, r, w)
        if poly_deg(c) <= 0:
            break
        r = poly_divmod(F, r, c)[0]
    # r now holds exactly the factors with exponent divisible by p
    if poly_deg(r) <= 0:
        return w
    return poly_mul(F, w, poly_radical(F, _pth_root_poly(F, r)))


def distinct_degree_factorization(F, f: tuple) -> list[tuple[int, tuple]]:
    """Split a monic squarefree f into (degree d, product of its degree-d
    irreducible factors) pairs, ascending in d."""
    out = []
    x = (F.zero, F.one)
    h = poly_mod(F, x, f)
    d = 0
    while poly_deg(f) > 0:
        d += 1
        if 2 * d > poly_deg(f):
            out.append((poly_deg(f), f))
            break
        h = poly_powmod(F, h, F.q, f)
        g = poly_gcd(F, poly_sub(F, h, poly_mod(F, x, f)), f)
        if poly_deg(g) > 0:
            out.append((d, g))
            f = poly_divmod(F, f, g)[0]
            h = poly_mod(F, h, f)
    return out


def poly_roots(F, f: tuple, rng=None) -> list:
    """All roots of f in F, with multiplicity stripped.

    Small fields are scanned; larger ones use the standard random splitting
    of the linear-factor part (odd characteristic only, which is all this
    package samples from).
    """
    f = poly_monic(F, poly_radical(F, f))
    if poly_deg(f) <= 0:
        return []
    if isinstance(F, GF) and F.q <= 4096:
        return [x for x in F.elements() if poly_eval(F, f, x) == F.zero]
    x = (F.zero, F.one)
    xq = poly_powmod(F, x, F.q, f)
    lin = poly_gcd(F, poly_sub(F, xq, x), f)
    if poly_deg(lin) <= 0:
        return []
    if _char_of(F) == 2:
        raise NotImplementedError("root splitting over large even fields")
    import random as _random

    rng = rng or _random.Random(0x5EED)
    roots: list = []
    _split_linear(F, lin, rng, roots)
    return roots


def _split_linear(F, f: tuple, rng, out: list) -> None:
    # f is monic, a product of distinct linear factors
    d = poly_deg(f)
    if d == 0:
        return
    if d == 1:
        out.append(F.neg(f[0]))
        return
    e = (F.q - 1) // 2
    while True:
        shift = F.sample(rng)
        base = (shift, F.one)  # x + shift
        h = poly_powmod(F, base, e, f)
        g = poly_gcd(F, poly_sub(F, h, (F.one,)), f)
        if 0 < poly_deg(g) < d:
            _split_linear(F, g, rng, out)
            _split_linear(F, poly_divmod(F, f, g)[0], rng, out)
            return
