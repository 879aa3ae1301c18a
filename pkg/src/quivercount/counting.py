"""Subrepresentation counts and semi-invariant weight-space dimensions.

Both central quantities are sums over arrow labelings: each arrow a
carries a partition inside the beta(ta) x gamma(ha) rectangle, and each
vertex contributes a Schur-functor multiplicity.  The subrepresentation
count N uses symmetric-side functors with target the full gamma(x)^beta(x)
rectangle; the weight-space dimension M uses exterior powers, evaluated
here through conjugate partitions so the two computations share nothing
but the LR kernel.  A third, labeling-free route expands the product of
Grassmannian classes directly (fiber_class) and decomposes the locus of
subrepresentations of a general representation by cohomology class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lr import LREngine, SchubertElement, rectangle_partition
from .partitions import Rectangle, complement, conjugate, fits, partition, partitions_in_rectangle, size
from .quiver import Quiver, check_dimvector, euler_form


class NonzeroPairingError(ValueError):
    """Counting requested where the Euler pairing of (beta, gamma) is not 0."""


class NegativePairingError(ValueError):
    """Fiber decomposition requested where the pairing is negative, so the
    locus of subrepresentations of a general representation is empty."""


def weight_of(Q: Quiver, beta) -> tuple[int, ...]:
    """The character attached to beta: sigma(x) = beta(x) - sum of beta(ta)
    over arrows a with head x.  Entries are routinely negative."""
    beta = check_dimvector(Q, beta)
    sigma = list(beta)
    for t, h in Q.arrows:
        sigma[h] -= beta[t]
    return tuple(sigma)


def _check_counting_pre(Q: Quiver, beta, alpha) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    if any(g < 0 for g in gamma):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    pairing = euler_form(Q, beta, gamma)
    if pairing < 0:
        raise NegativePairingError(
            f"negative Euler pairing {pairing}: a general representation has no"
            f" subrepresentations of dimension {beta}"
        )
    if pairing != 0:
        raise NonzeroPairingError(
            f"nonzero Euler pairing {pairing}; use fiber-class for the full decomposition"
        )
    return beta, alpha, gamma


# -- labeled sums -------------------------------------------------------------


def _vertex_factor_n(engine: LREngine, beta_x: int, gamma_x: int, out_parts, in_parts, extra) -> int:
    """Multiplicity of the full rectangle Schur functor at one vertex.

    Tail arrows contribute their own partitions, head arrows the
    complements inside beta(ta) x gamma(x); `extra` adds fixed partitions
    (used by the covariant generalization, symmetric-side convention)."""
    target = (gamma_x,) * beta_x if gamma_x else ()
    factors = sorted(out_parts + in_parts + extra)
    return engine.tensor_multiplicity(target, factors)


def _vertex_factor_m(engine: LREngine, beta_x: int, gamma_x: int, out_parts, in_parts, extra) -> int:
    """Exterior-power analogue, evaluated through conjugate partitions.

    mult(wedge^(gamma^beta); (x) wedge^lambda) equals the symmetric-side
    multiplicity after conjugating the target and every factor, which is
    what makes the weight-space dimension share only the LR kernel with
    the subrepresentation count."""
    target = (beta_x,) * gamma_x if beta_x else ()
    factors = sorted([conjugate(p) for p in out_parts + in_parts + extra])
    return engine.tensor_multiplicity(target, factors)


def _greedy_arrow_order(Q: Quiver, rect_sizes: list[int]) -> list[int]:
    # prefer arrows that finish off a vertex (so its factor prunes early),
    # then arrows with fewer candidate partitions
    remaining = [0] * Q.nvertices
    for t, h in Q.arrows:
        remaining[t] += 1
        remaining[h] += 1
    left = set(range(len(Q.arrows)))
    order = []
    while left:
        def key(a: int):
            t, h = Q.arrows[a]
            completes = (remaining[t] == 1) + (remaining[h] == 1)
            return (-completes, rect_sizes[a], a)

        best = min(left, key=key)
        left.remove(best)
        order.append(best)
        t, h = Q.arrows[best]
        remaining[t] -= 1
        remaining[h] -= 1
    return order


def _labeled_sum(
    Q: Quiver,
    beta,
    gamma,
    engine: LREngine,
    vertex_factor,
    extra=None,
    collect: bool = False,
):
    """Sum over arrow labelings of the product of per-vertex multiplicities.

    Returns (total, labelings_examined, breakdown).  `extra` optionally
    assigns one additional fixed partition per vertex (the covariant
    labeling); its size is subtracted from the vertex degree target.
    Breakdown entries, when collected, list nonzero summands in canonical
    order: arrows by index, partitions in graded-lex order per arrow.
    """
    n = Q.nvertices
    narrows = len(Q.arrows)
    extra = extra or [() for _ in range(n)]

    arrow_rects = [Rectangle(beta[t], gamma[h]) for t, h in Q.arrows]
    arrow_parts = [partitions_in_rectangle(r) for r in arrow_rects]

    # degree targets: the vertex factor can only be nonzero when the arrow
    # contributions fill the rectangle minus the extra partition exactly
    target = [beta[x] * gamma[x] - size(extra[x]) for x in range(n)]
    if any(t < 0 for t in target):
        return 0, 0, ()

    incident_left = [0] * n
    max_add = [0] * n  # largest possible remaining contribution per vertex
    for a, (t, h) in enumerate(Q.arrows):
        incident_left[t] += 1
        incident_left[h] += 1
        cap = arrow_rects[a].rows * arrow_rects[a].cols
        max_add[t] += cap
        max_add[h] += cap

    base = 1
    for x in range(n):
        if incident_left[x] == 0:
            f = vertex_factor(engine, beta[x], gamma[x], [], [], [extra[x]] if extra[x] else [])
            if target[x] != 0 or f == 0:
                return 0, 0, ()
            base *= f

    order = _greedy_arrow_order(Q, [len(p) for p in arrow_parts])
    assigned: list[tuple[int, ...] | None] = [None] * narrows
    cur = [0] * n  # accumulated degree at each vertex
    examined = 0
    total = 0
    breakdown = [] if collect else None

    def factor_at(x: int) -> int:
        outs = [assigned[a] for a in range(narrows) if Q.arrows[a][0] == x]
        ins = [
            complement(assigned[a], arrow_rects[a])
            for a in range(narrows)
            if Q.arrows[a][1] == x
        ]
        return vertex_factor(engine, beta[x], gamma[x], outs, ins, [extra[x]] if extra[x] else [])

    def rec(i: int, product: int) -> None:
        nonlocal examined, total
        if i == narrows:
            examined += 1
            total += product
            if collect and product:
                breakdown.append((tuple(assigned), product))
            return
        a = order[i]
        t, h = Q.arrows[a]
        rect = arrow_rects[a]
        cap = rect.rows * rect.cols
        for lam in arrow_parts[a]:
            s = size(lam)
            dt = s  # tail sees the partition itself
            dh = cap - s  # head sees the complement
            ok = True
            cur[t] += dt
            cur[h] += dh
            incident_left[t] -= 1
            incident_left[h] -= 1
            max_add[t] -= cap
            max_add[h] -= cap
            assigned[a] = lam
            prod2 = product
            for x in (t, h):
                if cur[x] > target[x] or cur[x] + max_add[x] < target[x]:
                    ok = False
                    break
            if ok:
                for x in (t, h):
                    if incident_left[x] == 0:
                        if cur[x] != target[x]:
                            ok = False
                            break
                        f = factor_at(x)
                        if f == 0:
                            ok = False
                            break
                        prod2 *= f
            if ok:
                rec(i + 1, prod2)
            assigned[a] = None
            cur[t] -= dt
            cur[h] -= dh
            incident_left[t] += 1
            incident_left[h] += 1
            max_add[t] += cap
            max_add[h] += cap
        return

    rec(0, base)

    if collect:
        index_of = [
            {lam: i for i, lam in enumerate(parts)} for parts in arrow_parts
        ]
        breakdown.sort(key=lambda entry: tuple(index_of[a][entry[0][a]] for a in range(narrows)))
        return total, examined, tuple(breakdown)
    return total, examined, ()


def count_subreps_detailed(
    Q: Quiver, beta, alpha, engine: LREngine | None = None, breakdown: bool = False
) -> tuple[int, int, tuple]:
    """(N, labelings examined, optional nonzero-summand breakdown)."""
    beta, alpha, gamma = _check_counting_pre(Q, beta, alpha)
    engine = engine or LREngine()
    return _labeled_sum(Q, beta, gamma, engine, _vertex_factor_n, collect=breakdown)


def count_subreps(Q: Quiver, beta, alpha, engine: LREngine | None = None) -> int:
    """Number of beta-dimensional subrepresentations of a general
    alpha-dimensional representation (finite exactly when the Euler
    pairing of beta with alpha - beta vanishes, which is required)."""
    return count_subreps_detailed(Q, beta, alpha, engine)[0]


def si_dimension_detailed(
    Q: Quiver, beta, alpha, engine: LREngine | None = None, breakdown: bool = False
) -> tuple[int, int, tuple]:
    beta, alpha, gamma = _check_counting_pre(Q, beta, alpha)
    engine = engine or LREngine()
    return _labeled_sum(Q, beta, gamma, engine, _vertex_factor_m, collect=breakdown)


def si_dimension(Q: Quiver, beta, alpha, engine: LREngine | None = None) -> int:
    """Dimension of the space of semi-invariants on Rep(Q, alpha - beta)
    of weight sigma = weight_of(Q, beta)."""
    return si_dimension_detailed(Q, beta, alpha, engine)[0]


# -- fiber class --------------------------------------------------------------


@dataclass(frozen=True)
class FiberClass:
    """Decomposition of the class of the subrepresentation locus.

    coeffs maps a per-vertex partition tuple mu (each inside its vertex
    rectangle) to a positive coefficient; the underlying cohomology term
    is the product over vertices of the class complementary to mu(x).
    """

    ambients: tuple[Rectangle, ...]
    coeffs: dict[tuple[tuple[int, ...], ...], int]

    def __post_init__(self) -> None:
        for key, c in self.coeffs.items():
            if c <= 0:
                raise ValueError("fiber class stores positive coefficients only")
            for mu_x, rect in zip(key, self.ambients):
                if not fits(mu_x, rect):
                    raise ValueError(f"key entry {mu_x} outside rectangle {rect}")

    def coefficient(self, key: tuple[tuple[int, ...], ...]) -> int:
        return self.coeffs.get(tuple(partition(p) for p in key), 0)

    def sorted_items(self):
        return sorted(self.coeffs.items())


def fiber_class(Q: Quiver, beta, alpha, engine: LREngine | None = None) -> FiberClass:
    """Expand the product over arrows of sum_lambda [lambda]_ta [comp]_ha
    inside the tensor product of the per-vertex Grassmannian rings.

    Keys are complement tuples: the stored key mu has mu(x) complementary
    (in the vertex rectangle) to the partition whose class appears, so a
    zero pairing leaves the single all-empty key with coefficient N.
    """
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    if any(g < 0 for g in gamma):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    pairing = euler_form(Q, beta, gamma)
    if pairing < 0:
        raise NegativePairingError(
            f"Euler pairing {pairing} < 0: generic fiber is empty, no class to decompose"
        )
    engine = engine or LREngine()
    n = Q.nvertices
    ambients = tuple(Rectangle(beta[x], gamma[x]) for x in range(n))
    bounds = [rectangle_partition(r) for r in ambients]

    empty_key = tuple(() for _ in range(n))
    state: dict[tuple[tuple[int, ...], ...], int] = {empty_key: 1}
    for a, (t, h) in enumerate(Q.arrows):
        rect = Rectangle(beta[t], gamma[h])
        nxt: dict[tuple[tuple[int, ...], ...], int] = {}
        for key, coeff in state.items():
            for lam in partitions_in_rectangle(rect):
                lbar = complement(lam, rect)
                for nu_t, c_t in engine.expand(key[t], lam, bounds[t]):
                    for nu_h, c_h in engine.expand(key[h], lbar, bounds[h]):
                        k2 = list(key)
                        k2[t] = nu_t
                        k2[h] = nu_h
                        k2 = tuple(k2)
                        nxt[k2] = nxt.get(k2, 0) + coeff * c_t * c_h
        state = {k: v for k, v in nxt.items() if v}
        if not state:
            break

    coeffs: dict[tuple[tuple[int, ...], ...], int] = {}
    for key, c in state.items():
        mu = tuple(complement(key[x], ambients[x]) for x in range(n))
        if sum(size(p) for p in mu) != pairing:
            raise AssertionError("fiber class term of wrong codimension")
        coeffs[mu] = c
    return FiberClass(ambients, coeffs)


# -- verification and instance builders ---------------------------------------


@dataclass(frozen=True)
class CountReport:
    """Both counts computed by their separate routes, plus context."""

    beta: tuple[int, ...]
    alpha: tuple[int, ...]
    euler_pairing: int
    n_value: int
    m_value: int
    n_labelings: int
    m_labelings: int
    n_breakdown: tuple = ()

    @property
    def passed(self) -> bool:
        return self.n_value == self.m_value


def verify_counts(
    Q: Quiver, beta, alpha, engine: LREngine | None = None, breakdown: bool = False
) -> CountReport:
    """Compute the subrepresentation count and the weight-space dimension
    independently and report whether they agree."""
    beta, alpha, gamma = _check_counting_pre(Q, beta, alpha)
    engine = engine or LREngine()
    n, nlab, nbr = _labeled_sum(Q, beta, gamma, engine, _vertex_factor_n, collect=breakdown)
    m, mlab, _ = _labeled_sum(Q, beta, gamma, engine, _vertex_factor_m)
    return CountReport(
        beta=beta,
        alpha=alpha,
        euler_pairing=euler_form(Q, beta, gamma),
        n_value=n,
        m_value=m,
        n_labelings=nlab,
        m_labelings=mlab,
        n_breakdown=nbr,
    )


def triple_flag_instance(
    lam, mu, nu, r: int, n: int, engine: LREngine | None = None
) -> tuple[Quiver, tuple[int, ...], tuple[int, ...], int]:
    """Three flags meeting a central n-dimensional space.

    Builds the quiver with three arms of n-1 vertices each, arrows
    oriented inward, alpha increasing 1..n-1 along each arm with n at the
    center, and beta jumping at the positions prescribed by the three
    partitions.  The returned expected value is the LR coefficient
    c_{lam,mu}^{complement of nu}, which the subrepresentation count must
    reproduce.
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    rect = Rectangle(r, n - r)
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    for p in (lam, mu, nu):
        if not fits(p, rect):
            raise ValueError(f"partition {p} does not fit in {r}x{n-r}")
    if size(lam) + size(mu) + size(nu) != r * (n - r):
        raise ValueError(
            f"sizes {size(lam)}+{size(mu)}+{size(nu)} != r(n-r) = {r*(n-r)}"
        )
    engine = engine or LREngine()

    arm_len = n - 1
    nverts = 3 * arm_len + 1
    center = 3 * arm_len
    arrows = []
    for arm in range(3):
        base = arm * arm_len
        for j in range(arm_len - 1):
            arrows.append((base + j, base + j + 1))
        if arm_len:
            arrows.append((base + arm_len - 1, center))
    Q = Quiver(nverts, tuple(arrows))

    alpha = [0] * nverts
    beta = [0] * nverts
    for arm, p in enumerate((lam, mu, nu)):
        padded = list(p) + [0] * (r - len(p))
        base = arm * arm_len
        for j in range(1, n):
            alpha[base + j - 1] = j
            # beta jumps where the flag steps: count indices i with
            # n - r - p_i + i <= j
            beta[base + j - 1] = sum(1 for i in range(1, r + 1) if n - r - padded[i - 1] + i <= j)
    alpha[center] = n
    beta[center] = r

    expected = engine.lr_coefficient(lam, mu, complement(nu, rect))
    return Q, tuple(beta), tuple(alpha), expected


# -- suite generators ----------------------------------------------------------


def random_instance(
    rng: random.Random,
    max_verts: int = 4,
    max_arrows: int = 4,
    max_dim: int = 3,
    min_arrows: int = 0,
    require_zero_pairing: bool = True,
    max_tries: int = 100000,
):
    """Seeded random (quiver, beta, alpha) with vanishing Euler pairing of
    beta against alpha - beta.

    Pure rejection sampling almost always lands on degenerate instances
    (beta or gamma zero wherever arrows touch), so after drawing gamma we
    try to repair a single coordinate: the pairing is linear in gamma(y)
    with coefficient sigma(y), so any vertex with sigma(y) dividing the
    defect gives an exact fix.
    """
    def draw(lo_weight: float) -> int:
        # zeros allowed but downweighted, else whole arrow components go dead
        if rng.random() < lo_weight:
            return 0
        return rng.randint(1, max_dim)

    lo_nv = 2 if min_arrows > 0 else 1
    for _ in range(max_tries):
        nv = rng.randint(lo_nv, max_verts)
        arrows = []
        for _ in range(rng.randint(min_arrows, max_arrows)):
            for _ in range(20):
                t = rng.randrange(nv)
                h = rng.randrange(nv)
                if t != h:
                    break
            else:
                continue
            if t > h:
                t, h = h, t
            arrows.append((t, h))
        Q = Quiver(nv, tuple(arrows))
        beta = [draw(0.2) for _ in range(nv)]
        gamma = [draw(0.2) for _ in range(nv)]
        if not require_zero_pairing:
            return Q, tuple(beta), tuple(b + g for b, g in zip(beta, gamma))
        pairing = euler_form(Q, tuple(beta), tuple(gamma))
        if pairing != 0:
            # linear in each single coordinate, so look for one whose
            # coefficient divides the defect and lands back in range
            sigma = weight_of(Q, tuple(beta))
            tau = [
                gamma[y] - sum(gamma[h] for t, h in Q.arrows if t == y)
                for y in range(nv)
            ]
            choices = [(0, y) for y in range(nv)] + [(1, y) for y in range(nv)]
            rng.shuffle(choices)
            for side, y in choices:
                coeff = sigma[y] if side == 0 else tau[y]
                if coeff == 0 or pairing % coeff != 0:
                    continue
                vec = gamma if side == 0 else beta
                fixed = vec[y] - pairing // coeff
                if 0 <= fixed <= max_dim:
                    vec[y] = fixed
                    pairing = 0
                    break
            if pairing != 0:
                continue
        alpha = tuple(b + g for b, g in zip(beta, gamma))
        return Q, tuple(beta), alpha
    raise RuntimeError("no instance found within the rejection budget")


def random_zero_triple(
    rng: random.Random,
    max_verts: int = 3,
    max_arrows: int = 3,
    max_dim: int = 2,
    max_tries: int = 1000000,
):
    """Seeded (quiver, beta, gamma, delta) with all three pairwise Euler
    pairings zero, for the multiplicativity identity."""
    for _ in range(max_tries):
        nv = rng.randint(1, max_verts)
        arrows = []
        for _ in range(rng.randint(0, max_arrows)):
            t = rng.randrange(nv)
            h = rng.randrange(nv)
            if t == h:
                continue
            if t > h:
                t, h = h, t
            arrows.append((t, h))
        Q = Quiver(nv, tuple(arrows))
        beta = tuple(rng.randint(0, max_dim) for _ in range(nv))
        gamma = tuple(rng.randint(0, max_dim) for _ in range(nv))
        delta = tuple(rng.randint(0, max_dim) for _ in range(nv))
        if euler_form(Q, beta, gamma) != 0:
            continue
        if euler_form(Q, beta, delta) != 0:
            continue
        if euler_form(Q, gamma, delta) != 0:
            continue
        return Q, beta, gamma, delta
    raise RuntimeError("no triple found within the rejection budget")
