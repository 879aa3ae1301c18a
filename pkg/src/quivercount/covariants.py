"""Covariant components of the subrepresentation locus.

When the Euler pairing of beta with gamma = alpha - beta is positive, the
locus of beta-dimensional subrepresentations of a general representation
is no longer finite but decomposes into pieces indexed by per-vertex
partition tuples mu (the keys of fiber_class).  Each piece is counted two
ways here: by rebuilding it as an honest finite counting problem on an
enlarged quiver with one flag arm per vertex (covariant_count), and by
the labeled sum over the original quiver with one extra exterior-power
factor per vertex (covariant_multiplicity).  The two must agree with each
other and with the fiber_class coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import _labeled_sum, _vertex_factor_m
from .lr import LREngine
from .partitions import Rectangle, complement, fits, partition, size
from .quiver import Quiver, check_dimvector, euler_form


def exponent_profile(mu_x, beta_x: int, gamma_x: int) -> tuple[int, ...]:
    """Multiplicities (b_1, ..., b_{gamma_x}) where b_j counts parts equal
    to gamma_x - j + 1 in the complement of mu_x inside beta_x x gamma_x."""
    mu_x = partition(mu_x)
    rect = Rectangle(beta_x, gamma_x)
    if not fits(mu_x, rect):
        raise ValueError(f"{mu_x} does not fit in {rect}")
    comp = complement(mu_x, rect)
    return tuple(sum(1 for p in comp if p == gamma_x - j + 1) for j in range(1, gamma_x + 1))


def _normalize_mu(Q: Quiver, beta, gamma, mu) -> tuple[tuple[int, ...], ...]:
    if len(mu) != Q.nvertices:
        raise ValueError(f"mu has {len(mu)} entries, quiver has {Q.nvertices} vertices")
    out = []
    for x in range(Q.nvertices):
        p = partition(mu[x])
        if not fits(p, Rectangle(beta[x], gamma[x])):
            raise ValueError(
                f"mu({x}) = {p} does not fit in {beta[x]}x{gamma[x]}"
            )
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class HatInstance:
    """Flag-arm enlargement of a counting instance.

    Original vertices keep their ids; vertex x grows an arm of gamma(x)
    new vertices chained away from it, listed in arm_vertices[x].  The
    instance always has zero Euler pairing, so its subrepresentation
    count is finite.
    """

    quiver: Quiver
    beta: tuple[int, ...]
    alpha: tuple[int, ...]
    arm_vertices: tuple[tuple[int, ...], ...]


def build_hat(Q: Quiver, beta, alpha, mu) -> HatInstance:
    """Enlarge (Q, beta, alpha) by one flag arm per vertex according to mu.

    Arm vertex i (1-based) of x gets gamma-part gamma(x) - i + 1 and
    beta-part b_1 + ... + b_{gamma(x)-i+1} from the exponent profile of
    mu(x); equivalently the arm carries the conjugate of the complement
    of mu(x).  The pairing of the enlarged beta with its gamma drops to
    zero exactly because the mu sizes exhaust the original pairing.
    """
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    if any(g < 0 for g in gamma):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    mu = _normalize_mu(Q, beta, gamma, mu)
    pairing = euler_form(Q, beta, gamma)
    total = sum(size(p) for p in mu)
    if total != pairing:
        raise ValueError(
            f"mu sizes sum to {total}, Euler pairing is {pairing}; the piece is empty or ill-posed"
        )

    n = Q.nvertices
    arrows = list(Q.arrows)
    hat_beta = list(beta)
    hat_gamma = list(gamma)
    arm_vertices = []
    nxt = n
    for x in range(n):
        profile = exponent_profile(mu[x], beta[x], gamma[x])
        arm = []
        prev = x
        for i in range(1, gamma[x] + 1):
            arm.append(nxt)
            arrows.append((prev, nxt))
            hat_beta.append(sum(profile[: gamma[x] - i + 1]))
            hat_gamma.append(gamma[x] - i + 1)
            prev = nxt
            nxt += 1
        arm_vertices.append(tuple(arm))

    hatQ = Quiver(nxt, tuple(arrows))
    hat_beta = tuple(hat_beta)
    hat_alpha = tuple(b + g for b, g in zip(hat_beta, hat_gamma))
    if euler_form(hatQ, hat_beta, tuple(hat_gamma)) != 0:
        raise AssertionError("arm enlargement failed to cancel the pairing")
    return HatInstance(hatQ, hat_beta, hat_alpha, tuple(arm_vertices))


def covariant_count(Q: Quiver, beta, alpha, mu, engine: LREngine | None = None) -> int:
    """Points of the mu-piece, counted as plain subrepresentations of a
    general representation of the arm-enlarged quiver."""
    from .counting import count_subreps

    hat = build_hat(Q, beta, alpha, mu)
    return count_subreps(hat.quiver, hat.beta, hat.alpha, engine)


def covariant_multiplicity(Q: Quiver, beta, alpha, mu, engine: LREngine | None = None) -> int:
    """Dimension of the weight space with one extra exterior power per
    vertex, computed by the labeled sum over the original quiver."""
    beta = check_dimvector(Q, beta)
    alpha = check_dimvector(Q, alpha)
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    if any(g < 0 for g in gamma):
        raise ValueError(f"beta {beta} does not fit inside alpha {alpha}")
    mu = _normalize_mu(Q, beta, gamma, mu)
    pairing = euler_form(Q, beta, gamma)
    total = sum(size(p) for p in mu)
    if total != pairing:
        raise ValueError(
            f"mu sizes sum to {total}, Euler pairing is {pairing}; the piece is empty or ill-posed"
        )
    engine = engine or LREngine()
    value, _, _ = _labeled_sum(Q, beta, gamma, engine, _vertex_factor_m, extra=list(mu))
    return value
