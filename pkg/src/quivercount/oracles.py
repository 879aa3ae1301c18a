"""Ground-truth oracles for the counting formulas.

Three independent checks live here: exhaustive enumeration of
subrepresentations of an explicit representation over a small finite
field, seeded sampling with modal voting (a general representation's
fiber cardinality shows up as the majority count across random samples),
and a determinant-rank estimator for the weight-space dimension.  The
basis verifier ties them together: it extracts the subrepresentations of
one sample with explicit bases, forms the quotients, and checks that the
evaluation matrix of the attached semi-invariants is diagonal.

Instances whose Grassmannian point count exceeds the enumeration budget
are refused, with one carve-out: two-vertex instances whose source
carries a single line admit exact counting by elimination (resultants
plus root extraction), which is how the six-subrepresentation instance
stays checkable over large fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .counting import NonzeroPairingError, count_subreps, si_dimension
from .ffield import (
    GF,
    echelon_complete,
    mat_inv,
    mat_rref,
    mat_vec,
    poly_deg,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_neg,
    poly_radical,
    poly_roots,
    poly_sub,
    poly_trim,
)
from .quiver import FFRep, Quiver, check_dimvector, euler_form, random_rep, semiinvariant_cv


class BudgetExceededError(RuntimeError):
    """Instance too large to enumerate: names the offending point count."""

    def __init__(self, points: int, budget: int):
        super().__init__(
            f"enumeration budget exceeded: {points} subspace tuples, budget {budget}"
        )
        self.points = points
        self.budget = budget


class DegenerateSampleError(RuntimeError):
    """The sampled representation has a positive-dimensional family of
    subrepresentations (or the elimination could not separate one); its
    rational count is not a meaningful vote."""


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-space over a q-element
    field, as an exact integer."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    num = den = 1
    for i in range(1, r + 1):
        num *= q ** (n - i + 1) - 1
        den *= q**i - 1
    assert num % den == 0
    return num // den


# -- subspace enumeration ------------------------------------------------------


def _span_rows(F, rows: list) -> tuple[list, tuple[int, ...]]:
    """Reduced row basis (zero rows dropped) and its pivot columns."""
    if not rows:
        return [], ()
    R, pivots = mat_rref(F, [list(r) for r in rows])
    return [R[i] for i in range(len(pivots))], pivots


def _rref_bases(F, n: int, d: int):
    """Yield one reduced-echelon basis per d-dimensional subspace of F^n."""
    if d == 0:
        yield []
        return
    for pivots in itertools.combinations(range(n), d):
        free = [
            (r, c)
            for r in range(d)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for values in itertools.product(F.elements(), repeat=len(free)):
            rows = [[F.zero] * n for _ in range(d)]
            for r in range(d):
                rows[r][pivots[r]] = F.one
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield rows


def _lift_bases(F, srows: list, pivots: tuple[int, ...], n: int, d: int):
    """Yield a basis for every d-dimensional subspace of F^n containing the
    span of srows, by enumerating subspaces of the quotient in the
    coordinates of the non-pivot columns."""
    s = len(srows)
    nonpivot = [c for c in range(n) if c not in pivots]
    for qrows in _rref_bases(F, n - s, d - s):
        rows = [list(r) for r in srows]
        for qr in qrows:
            v = [F.zero] * n
            for c, val in zip(nonpivot, qr):
                v[c] = val
            rows.append(v)
        yield rows


def _raw_point_count(Q: Quiver, alpha, beta, q: int) -> int:
    total = 1
    for x in range(Q.nvertices):
        total *= gaussian_binomial(alpha[x], beta[x], q)
    return total


def _dfs_subreps(Q: Quiver, V: FFRep, beta, collect: bool):
    F = V.field
    alpha = V.dim
    topo = Q.topo_order
    in_arrows = [[] for _ in range(Q.nvertices)]
    for a, (t, h) in enumerate(Q.arrows):
        in_arrows[h].append(a)

    bases: list = [None] * Q.nvertices
    found: list = []
    count = 0

    def rec(i: int) -> None:
        nonlocal count
        if i == len(topo):
            count += 1
            if collect:
                found.append(tuple(tuple(tuple(r) for r in bases[x]) for x in range(Q.nvertices)))
            return
        x = topo[i]
        images = []
        for a in in_arrows[x]:
            t = Q.arrows[a][0]
            A = V.mat(a)
            for w in bases[t]:
                images.append(mat_vec(F, A, list(w)))
        srows, pivots = _span_rows(F, images)
        if len(srows) > beta[x]:
            return
        for W in _lift_bases(F, srows, pivots, alpha[x], beta[x]):
            bases[x] = W
            rec(i + 1)
        bases[x] = None

    rec(0)
    return count, found


def enumerate_subreps(Q: Quiver, V: FFRep, beta, budget: int = 10**7) -> int:
    """Count beta-dimensional subrepresentations of the explicit V by
    direct traversal: at each vertex (in topological order) the span of
    the incoming images is computed and only subspaces containing it are
    enumerated."""
    beta = check_dimvector(Q, beta)
    alpha = V.dim
    if any(b > a for b, a in zip(beta, alpha)):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    points = _raw_point_count(Q, alpha, beta, V.field.q)
    if points > budget:
        raise BudgetExceededError(points, budget)
    return _dfs_subreps(Q, V, beta, collect=False)[0]


def list_subreps(Q: Quiver, V: FFRep, beta, budget: int = 10**7) -> tuple:
    """Like enumerate_subreps but returns the subrepresentations themselves
    as tuples of per-vertex row bases, in traversal order."""
    beta = check_dimvector(Q, beta)
    alpha = V.dim
    if any(b > a for b, a in zip(beta, alpha)):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    points = _raw_point_count(Q, alpha, beta, V.field.q)
    if points > budget:
        raise BudgetExceededError(points, budget)
    return tuple(_dfs_subreps(Q, V, beta, collect=True)[1])


# -- elimination fast path -----------------------------------------------------
#
# Two-vertex shape: all arrows from a source carrying a line (beta = 1,
# alpha <= 3) into one target.  A line spanned by v is part of a
# subrepresentation iff the m image vectors A_1 v .. A_m v span at most
# beta(tgt) dimensions, i.e. all (b+1)-minors of the n_tgt x m matrix
# [A_1 v | ... | A_m v] vanish.  Charts on the projective space of lines
# turn this into systems in <= 2 variables, solved by resultants and
# root extraction; each solution line contributes one choice of target
# subspace per completion of its image span.

_MAX_MINOR = 4  # permutation expansion of minors up to this size


def _kronecker_form(Q: Quiver, beta, alpha):
    """(src, tgt) when the elimination solver applies, else None."""
    if Q.nvertices != 2 or not Q.arrows:
        return None
    t0, h0 = Q.arrows[0]
    if any((t, h) != (t0, h0) for t, h in Q.arrows):
        return None
    src, tgt = t0, h0
    if beta[src] != 1 or not 1 <= alpha[src] <= 3:
        return None
    b = beta[tgt]
    if b + 1 > _MAX_MINOR:
        return None
    if len(Q.arrows) <= b and alpha[src] > 1:
        return None  # rank condition vacuous on a whole projective space
    return src, tgt


# bivariate polynomials: dict mapping (i, j) -> coefficient, for s^i t^j


def _mp_add(F, f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = F.add(out.get(e, F.zero), c)
        if v == F.zero:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _mp_mul(F, f: dict, g: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in f.items():
        for (i2, j2), c2 in g.items():
            e = (i1 + i2, j1 + j2)
            v = F.add(out.get(e, F.zero), F.mul(c1, c2))
            if v == F.zero:
                out.pop(e, None)
            else:
                out[e] = v
    return out


def _mp_neg(F, f: dict) -> dict:
    return {e: F.neg(c) for e, c in f.items()}


def _minor_polys(F, mats, chart: list[dict], b: int) -> list[dict]:
    """All (b+1)-minors of [A_1 v | ... | A_m v] with v given by the chart
    (one bivariate polynomial per coordinate)."""
    m = len(mats)
    n_tgt = len(mats[0])
    cols = []
    for A in mats:
        col = []
        for r in range(n_tgt):
            entry: dict = {}
            for c, coord in enumerate(chart):
                a = A[r][c]
                if a == F.zero:
                    continue
                entry = _mp_add(F, entry, {e: F.mul(a, cc) for e, cc in coord.items()})
            col.append(entry)
        cols.append(col)
    r = b + 1
    minors = []
    for rows_idx in itertools.combinations(range(n_tgt), r):
        for cols_idx in itertools.combinations(range(m), r):
            det: dict = {}
            for perm in itertools.permutations(range(r)):
                term = {(0, 0): F.one}
                for i in range(r):
                    term = _mp_mul(F, term, cols[cols_idx[perm[i]]][rows_idx[i]])
                inversions = sum(
                    1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j]
                )
                if inversions % 2:
                    term = _mp_neg(F, term)
                det = _mp_add(F, det, term)
            minors.append(det)
    return minors


def _mp_deg_t(f: dict) -> int:
    return max((j for (_, j) in f), default=-1)


def _mp_to_t_coeffs(F, f: dict) -> list[tuple]:
    """Coefficients of t^0..t^deg as univariate polynomials in s."""
    dt = _mp_deg_t(f)
    out = []
    for j in range(dt + 1):
        ds = max((i for (i, jj) in f if jj == j), default=-1)
        cs = [f.get((i, j), F.zero) for i in range(ds + 1)]
        out.append(poly_trim(F, cs))
    return out


def _mp_to_s_poly(F, f: dict) -> tuple:
    assert _mp_deg_t(f) <= 0
    ds = max((i for (i, _) in f), default=-1)
    return poly_trim(F, [f.get((i, 0), F.zero) for i in range(ds + 1)])


def _bareiss_det_polys(F, M: list[list[tuple]]) -> tuple:
    """Determinant of a matrix of univariate polynomials, fraction-free."""
    n = len(M)
    if n == 0:
        return (F.one,)
    M = [row[:] for row in M]
    denom = (F.one,)
    sign = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if poly_deg(M[i][k]) >= 0), None)
        if piv is None:
            return ()
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(
                    F, poly_mul(F, M[i][j], M[k][k]), poly_mul(F, M[i][k], M[k][j])
                )
                quo, rem = poly_divmod(F, num, denom)
                assert not rem, "Bareiss division must be exact"
                M[i][j] = quo
            M[i][k] = ()
        denom = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else poly_neg(F, det)


def _resultant_t(F, f: list[tuple], g: list[tuple]) -> tuple:
    """Resultant of two polynomials in t with coefficients in F[s],
    given as coefficient lists (ascending in t)."""
    m = len(f) - 1
    n = len(g) - 1
    assert m >= 1 and n >= 1
    size = m + n
    rows = []
    fd = list(reversed(f))  # descending
    gd = list(reversed(g))
    for i in range(n):
        rows.append([()] * i + fd + [()] * (n - 1 - i))
    for i in range(m):
        rows.append([()] * i + gd + [()] * (m - 1 - i))
    assert all(len(r) == size for r in rows)
    return _bareiss_det_polys(F, rows)


def _solve_univariate(F, polys: list[dict], fixed: list, var_index: int):
    """Points of a chart with one free variable: common roots of the
    specialized minors.  Returns point list or raises on a free line."""
    uni = []
    for f in polys:
        if not f:
            continue
        # the free variable may be stored in either slot; normalize to s
        g = {(i + j, 0): c for (i, j), c in f.items()}
        uni.append(_mp_to_s_poly(F, g))
    if not uni:
        raise DegenerateSampleError("every minor vanishes on a whole chart line")
    u = uni[0]
    for g in uni[1:]:
        u = poly_gcd(F, u, g)
        if poly_deg(u) <= 0:
            return []
    pts = []
    for root in poly_roots(F, u):
        v = list(fixed)
        v[var_index] = root
        pts.append(tuple(v))
    return pts


def _solve_bivariate(F, minors: list[dict]):
    """Points (s, t) where all minors vanish; both coordinates free."""
    nonzero = [f for f in minors if f]
    if not nonzero:
        raise DegenerateSampleError("every minor vanishes identically on a chart plane")
    with_t = [f for f in nonzero if _mp_deg_t(f) >= 1]
    s_only = [_mp_to_s_poly(F, f) for f in nonzero if _mp_deg_t(f) == 0]
    if not with_t:
        # conditions restrict s alone: any common root leaves t free
        u = s_only[0]
        for g in s_only[1:]:
            u = poly_gcd(F, u, g)
        if poly_deg(u) <= 0:
            return []
        raise DegenerateSampleError("solution set contains a vertical line")
    candidates = None
    for base in sorted(with_t, key=_mp_deg_t):
        fb = _mp_to_t_coeffs(F, base)
        collected = list(s_only)
        ok = True
        for other in with_t:
            if other is base:
                continue
            res = _resultant_t(F, fb, _mp_to_t_coeffs(F, other))
            if not res:
                ok = False
                break
            collected.append(res)
        if not ok:
            continue
        if not collected:
            # a single bivariate condition cuts out a curve
            raise DegenerateSampleError("a single minor constraint leaves a curve")
        u = collected[0]
        for g in collected[1:]:
            u = poly_gcd(F, u, g)
            if poly_deg(u) <= 0:
                return []
        if poly_deg(u) >= 1:
            candidates = u
            break
        return []
    if candidates is None:
        raise DegenerateSampleError("resultants vanish for every base choice")
    pts = []
    for s0 in poly_roots(F, poly_radical(F, candidates)):
        specialized = []
        any_nonzero = False
        for f in nonzero:
            coeffs = _mp_to_t_coeffs(F, f)
            g = poly_trim(F, [poly_eval(F, c, s0) for c in coeffs])
            if g:
                any_nonzero = True
                specialized.append(g)
        if not any_nonzero:
            raise DegenerateSampleError("solution set contains a vertical line")
        u = specialized[0]
        for g in specialized[1:]:
            u = poly_gcd(F, u, g)
            if poly_deg(u) <= 0:
                break
        if poly_deg(u) <= 0:
            continue
        for t0 in poly_roots(F, u):
            pts.append((s0, t0))
    return pts


def _kronecker_lines(F, mats, n_src: int, b: int) -> list[tuple]:
    """All lines (chart-normalized spanning vectors) whose image span has
    dimension at most b, by chartwise elimination."""
    one, zero = F.one, F.zero
    n_tgt = len(mats[0])
    if len(mats) <= b or n_tgt <= b:
        # rank condition holds everywhere
        if n_src == 1:
            return [(one,)]
        raise DegenerateSampleError("rank condition vacuous on the whole line space")
    points: list[tuple] = []
    const = lambda c: {(0, 0): c} if c != zero else {}
    var_s = {(1, 0): one}
    var_t = {(0, 1): one}

    if n_src == 1:
        minors = _minor_polys(F, mats, [const(one)], b)
        if all(_mp_is_zero(f) for f in minors):
            points.append((one,))
        return points

    if n_src == 2:
        minors = _minor_polys(F, mats, [const(one), var_t], b)
        if all(not f for f in minors):
            raise DegenerateSampleError("every minor vanishes identically on a chart line")
        points.extend(_solve_univariate(F, minors, [one, None], 1))
        minors = _minor_polys(F, mats, [const(zero), const(one)], b)
        if all(not f for f in minors):
            points.append((zero, one))
        return points

    # n_src == 3
    minors = _minor_polys(F, mats, [const(one), var_s, var_t], b)
    for s0, t0 in _solve_bivariate(F, minors):
        points.append((one, s0, t0))
    minors = _minor_polys(F, mats, [const(zero), const(one), var_t], b)
    if all(not f for f in minors):
        raise DegenerateSampleError("every minor vanishes identically on a chart line")
    points.extend(_solve_univariate(F, minors, [zero, one, None], 2))
    minors = _minor_polys(F, mats, [const(zero), const(zero), const(one)], b)
    if all(not f for f in minors):
        points.append((zero, zero, one))
    return points


def _mp_is_zero(f: dict) -> bool:
    return not f


def _kronecker_count(Q: Quiver, V: FFRep, beta, src: int, tgt: int) -> int:
    F = V.field
    mats = [V.mat(a) for a in range(len(Q.arrows))]
    b = beta[tgt]
    total = 0
    for v in _kronecker_lines(F, mats, V.dim[src], b):
        srows, _ = _span_rows(F, [mat_vec(F, A, list(v)) for A in mats])
        s = len(srows)
        assert s <= b
        total += gaussian_binomial(V.dim[tgt] - s, b - s, F.q)
    return total


def _kronecker_list(Q: Quiver, V: FFRep, beta, src: int, tgt: int) -> list:
    F = V.field
    mats = [V.mat(a) for a in range(len(Q.arrows))]
    b = beta[tgt]
    out = []
    for v in _kronecker_lines(F, mats, V.dim[src], b):
        srows, pivots = _span_rows(F, [mat_vec(F, A, list(v)) for A in mats])
        for W in _lift_bases(F, srows, pivots, V.dim[tgt], b):
            per_vertex = [None, None]
            per_vertex[src] = (tuple(v),)
            per_vertex[tgt] = tuple(tuple(r) for r in W)
            out.append(tuple(per_vertex))
    return out


# -- sampling oracle -----------------------------------------------------------


@dataclass(frozen=True)
class SubrepCount:
    """Outcome of the sampling plan: per-trial counts over each extension
    and the modal vote across trials (taken at the largest extension)."""

    q: int
    extension_degree: int
    trials: int
    seed: int
    method: str  # 'enumerate' or 'solve'
    per_trial: tuple[tuple[int | None, ...], ...]
    tally: dict
    degenerate: int
    modal: int | None
    inconclusive: bool

    @property
    def count(self) -> int | None:
        return self.modal


def sampled_subrep_count(
    Q: Quiver,
    beta,
    alpha,
    q: int,
    max_ext_degree: int = 2,
    trials: int = 10,
    seed: int = 0,
    budget: int = 10**7,
) -> SubrepCount:
    """Sample representations over F_q and count their beta-dimensional
    subrepresentations over F_{q^j} for j up to max_ext_degree.

    The count recorded for a trial is the one at the largest extension;
    the modal count across trials is the oracle's estimate of the general
    fiber cardinality.  A tie for the mode is reported as inconclusive
    rather than resolved arbitrarily.
    """
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    if any(g < 0 for g in gamma):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    pairing = euler_form(Q, beta, gamma)
    if pairing != 0:
        raise NonzeroPairingError(
            f"nonzero Euler pairing {pairing}: the sampling oracle needs a finite fiber"
        )
    if not 1 <= max_ext_degree <= 4:
        raise ValueError("extension degree must be between 1 and 4")
    if trials < 1:
        raise ValueError("at least one trial required")
    base = GF(q)  # validates primality

    points = _raw_point_count(Q, alpha, beta, q**max_ext_degree)
    if points <= budget:
        method = "enumerate"
    else:
        kf = _kronecker_form(Q, beta, alpha)
        if kf is None:
            raise BudgetExceededError(points, budget)
        method = "solve"

    fields = {j: GF(q, j) for j in range(1, max_ext_degree + 1)}
    fields[1] = base
    per_trial = []
    for i in range(trials):
        V1 = random_rep(Q, alpha, base, seed * 1000003 + i)
        counts: list[int | None] = []
        for j in range(1, max_ext_degree + 1):
            Fj = fields[j]
            Vj = FFRep(Q, Fj, alpha, V1.mats)
            try:
                if method == "enumerate":
                    counts.append(enumerate_subreps(Q, Vj, beta, budget))
                else:
                    src, tgt = _kronecker_form(Q, beta, alpha)
                    counts.append(_kronecker_count(Q, Vj, beta, src, tgt))
            except DegenerateSampleError:
                counts.append(None)
        per_trial.append(tuple(counts))

    finals = [t[-1] for t in per_trial]
    tally: dict = {}
    for c in finals:
        if c is not None:
            tally[c] = tally.get(c, 0) + 1
    degenerate = sum(1 for c in finals if c is None)
    modal: int | None = None
    inconclusive = False
    if tally:
        best = max(tally.values())
        leaders = [c for c, n in tally.items() if n == best]
        if len(leaders) == 1:
            modal = leaders[0]
        else:
            inconclusive = True
    else:
        inconclusive = True
    return SubrepCount(
        q=q,
        extension_degree=max_ext_degree,
        trials=trials,
        seed=seed,
        method=method,
        per_trial=tuple(per_trial),
        tally=tally,
        degenerate=degenerate,
        modal=modal,
        inconclusive=inconclusive,
    )


# -- determinant rank oracle ---------------------------------------------------


def si_rank_oracle(
    Q: Quiver,
    beta,
    gamma,
    nv: int | None = None,
    nw: int | None = None,
    field: GF | None = None,
    seed: int = 0,
) -> int:
    """Rank of the evaluation matrix [c^{V_i}(W_j)] on random samples.

    The determinants c^V span the weight space, so the rank is at most
    its dimension, with equality for generic samples; the default sample
    sizes add a margin above the claimed dimension (which is used for
    sizing only, never for the rank itself).
    """
    beta = check_dimvector(Q, beta)
    gamma = check_dimvector(Q, gamma)
    if euler_form(Q, beta, gamma) != 0:
        raise NonzeroPairingError(
            f"nonzero Euler pairing {euler_form(Q, beta, gamma)}: c^V is not defined"
        )
    if field is None:
        field = GF(101)
    if nv is None or nw is None:
        suggested = si_dimension(Q, beta, tuple(b + g for b, g in zip(beta, gamma))) + 4
        nv = nv or suggested
        nw = nw or suggested
    vs = [random_rep(Q, beta, field, seed * 1000003 + i) for i in range(nv)]
    ws = [random_rep(Q, gamma, field, seed * 1000003 + nv + i) for i in range(nw)]
    E = [[semiinvariant_cv(Q, v, w) for w in ws] for v in vs]
    _, pivots = mat_rref(field, E)
    return len(pivots)


# -- basis verification --------------------------------------------------------


@dataclass(frozen=True)
class BasisReport:
    """Outcome of the dual-basis check on one instance."""

    passed: bool
    inconclusive: bool
    reason: str
    k: int | None
    n_expected: int
    m_expected: int
    extension_degree: int | None
    samples_tried: int
    seed: int
    matrix: tuple | None = None


def _subrep_quotient_pair(Q: Quiver, V: FFRep, beta, sub_bases):
    """Restrict V to a subrepresentation and form the quotient, by
    completing each subspace basis to a basis of the ambient space.

    In the completed basis every arrow matrix is block triangular (upper
    left: restriction, lower right: quotient); the vanishing of the lower
    left block is asserted, being the subrepresentation condition."""
    F = V.field
    alpha = V.dim
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    T = []
    Tinv = []
    for x in range(Q.nvertices):
        rows = [list(r) for r in sub_bases[x]]
        full = echelon_complete(F, rows, alpha[x])
        tx = [[full[r][c] for r in range(alpha[x])] for c in range(alpha[x])]
        T.append(tx)
        Tinv.append(mat_inv(F, tx))
    sub_mats = []
    quot_mats = []
    for a, (t, h) in enumerate(Q.arrows):
        A = V.mat(a)
        # change of basis: columns of T are the new basis vectors
        AT = [[None] * alpha[t] for _ in range(alpha[h])]
        for r in range(alpha[h]):
            for c in range(alpha[t]):
                acc = F.zero
                for k in range(alpha[t]):
                    acc = F.add(acc, F.mul(A[r][k], T[t][k][c]))
                AT[r][c] = acc
        Ap = [[None] * alpha[t] for _ in range(alpha[h])]
        for r in range(alpha[h]):
            for c in range(alpha[t]):
                acc = F.zero
                for k in range(alpha[h]):
                    acc = F.add(acc, F.mul(Tinv[h][r][k], AT[k][c]))
                Ap[r][c] = acc
        for r in range(beta[h], alpha[h]):
            for c in range(beta[t]):
                assert Ap[r][c] == F.zero, "not actually a subrepresentation"
        sub_mats.append(tuple(tuple(Ap[r][c] for c in range(beta[t])) for r in range(beta[h])))
        quot_mats.append(
            tuple(tuple(Ap[r][c] for c in range(beta[t], alpha[t])) for r in range(beta[h], alpha[h]))
        )
    sub = FFRep(Q, F, beta, tuple(sub_mats))
    quot = FFRep(Q, F, gamma, tuple(quot_mats))
    return sub, quot


def verify_determinant_basis(
    Q: Quiver,
    beta,
    alpha,
    field: GF,
    seed: int = 0,
    max_ext_degree: int = 4,
    max_samples: int = 20,
    budget: int = 10**7,
) -> BasisReport:
    """Check that the semi-invariants attached to the subrepresentations
    of one general sample form a basis of the weight space.

    Samples V over the base field until some extension F_{q^j} sees
    exactly N rational subrepresentations, then forms all quotients
    V/V_i and the evaluation matrix E[i][j] = c^{V_i}(V/V_j).  Passing
    means E is diagonal with nonzero diagonal and the count k of
    subrepresentations equals the weight-space dimension: k independent
    semi-invariants in a k-dimensional space.  Off-diagonal entries
    vanish for every sample (V_i maps nontrivially to V/V_j); a zero
    diagonal entry marks a non-generic sample, which is retried.
    """
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    if not isinstance(field, GF) or field.k != 1:
        raise ValueError("base field must be a prime field (extensions are built internally)")
    n_expected = count_subreps(Q, beta, alpha)
    m_expected = si_dimension(Q, beta, alpha)

    kf = _kronecker_form(Q, beta, alpha)
    samples_tried = 0
    for s in range(max_samples):
        samples_tried = s + 1
        V1 = random_rep(Q, alpha, field, seed * 1000003 + s)
        for j in range(1, max_ext_degree + 1):
            Fj = GF(field.p, j) if j > 1 else field
            Vj = FFRep(Q, Fj, alpha, V1.mats)
            points = _raw_point_count(Q, alpha, beta, Fj.q)
            try:
                if points <= budget:
                    subs = list_subreps(Q, Vj, beta, budget)
                elif kf is not None:
                    subs = tuple(_kronecker_list(Q, Vj, beta, *kf))
                else:
                    return BasisReport(
                        passed=False,
                        inconclusive=True,
                        reason=f"enumeration budget exceeded ({points} points) and no solver applies",
                        k=None,
                        n_expected=n_expected,
                        m_expected=m_expected,
                        extension_degree=None,
                        samples_tried=samples_tried,
                        seed=seed,
                    )
            except DegenerateSampleError:
                continue
            if len(subs) != n_expected:
                continue
            pairs = [_subrep_quotient_pair(Q, Vj, beta, sb) for sb in subs]
            k = len(pairs)
            E = [
                [semiinvariant_cv(Q, pairs[i][0], pairs[jj][1]) for jj in range(k)]
                for i in range(k)
            ]
            off_ok = all(
                E[i][jj] == Fj.zero for i in range(k) for jj in range(k) if i != jj
            )
            diag_ok = all(E[i][i] != Fj.zero for i in range(k))
            if not off_ok:
                return BasisReport(
                    passed=False,
                    inconclusive=False,
                    reason="nonzero off-diagonal evaluation (orthogonality violated)",
                    k=k,
                    n_expected=n_expected,
                    m_expected=m_expected,
                    extension_degree=j,
                    samples_tried=samples_tried,
                    seed=seed,
                    matrix=tuple(tuple(row) for row in E),
                )
            if not diag_ok:
                break  # non-generic sample; try the next seed
            if k != m_expected:
                return BasisReport(
                    passed=False,
                    inconclusive=False,
                    reason=f"{k} subrepresentations but weight space has dimension {m_expected}",
                    k=k,
                    n_expected=n_expected,
                    m_expected=m_expected,
                    extension_degree=j,
                    samples_tried=samples_tried,
                    seed=seed,
                    matrix=tuple(tuple(row) for row in E),
                )
            return BasisReport(
                passed=True,
                inconclusive=False,
                reason="",
                k=k,
                n_expected=n_expected,
                m_expected=m_expected,
                extension_degree=j,
                samples_tried=samples_tried,
                seed=seed,
                matrix=tuple(tuple(row) for row in E),
            )
    return BasisReport(
        passed=False,
        inconclusive=True,
        reason="no sample with exactly N rational subrepresentations and nonzero diagonal",
        k=None,
        n_expected=n_expected,
        m_expected=m_expected,
        extension_degree=None,
        samples_tried=samples_tried,
        seed=seed,
    )
