"""Quivers, dimension vectors, finite-field representations, and the
determinantal pairing between a representation and a candidate quotient.

The map underlying everything here sends a tuple of per-vertex linear maps
phi to the per-arrow tuple W(a) phi(ta) - phi(ha) V(a).  Its kernel is the
space of homomorphisms V -> W, its cokernel the extension space, and when
the matrix is square its determinant c^V(W) is the semi-invariant this
package counts with.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ffield import GF, mat_det, mat_kernel, mat_rank


class NonSquarePairingError(ValueError):
    """Raised when a determinant is requested but d^V_W is not square."""


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph without oriented cycles.

    Arrows are (tail, head) pairs of vertex indices.  Loops are rejected:
    a loop is an oriented cycle of length one.
    """

    nvertices: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.nvertices < 0:
            raise ValueError("negative vertex count")
        object.__setattr__(self, "arrows", tuple((int(t), int(h)) for t, h in self.arrows))
        for t, h in self.arrows:
            if not (0 <= t < self.nvertices and 0 <= h < self.nvertices):
                raise ValueError(f"arrow ({t},{h}) out of range for {self.nvertices} vertices")
            if t == h:
                raise ValueError(f"loop at vertex {t} not allowed")
        object.__setattr__(self, "_topo", self._toposort())

    def _toposort(self) -> tuple[int, ...]:
        indeg = [0] * self.nvertices
        for _, h in self.arrows:
            indeg[h] += 1
        ready = [x for x in range(self.nvertices) if indeg[x] == 0]
        order: list[int] = []
        while ready:
            x = ready.pop()
            order.append(x)
            for t, h in self.arrows:
                if t == x:
                    indeg[h] -= 1
                    if indeg[h] == 0:
                        ready.append(h)
        if len(order) != self.nvertices:
            raise ValueError("quiver contains an oriented cycle")
        return tuple(order)

    @property
    def topo_order(self) -> tuple[int, ...]:
        return self._topo  # type: ignore[attr-defined]

    def arrows_out(self, x: int) -> list[int]:
        return [i for i, (t, _) in enumerate(self.arrows) if t == x]

    def arrows_in(self, x: int) -> list[int]:
        return [i for i, (_, h) in enumerate(self.arrows) if h == x]


def check_dimvector(Q: Quiver, vec, signed: bool = False) -> tuple[int, ...]:
    v = tuple(int(x) for x in vec)
    if len(v) != Q.nvertices:
        raise ValueError(f"dimension vector {v} has length {len(v)}, quiver has {Q.nvertices} vertices")
    if not signed and any(x < 0 for x in v):
        raise ValueError(f"negative entry in dimension vector {v}")
    return v


def euler_form(Q: Quiver, a, b) -> int:
    """Sum of a(x)b(x) over vertices minus a(ta)b(ha) over arrows."""
    a = check_dimvector(Q, a, signed=True)
    b = check_dimvector(Q, b, signed=True)
    total = sum(x * y for x, y in zip(a, b))
    for t, h in Q.arrows:
        total -= a[t] * b[h]
    return total


@dataclass(frozen=True)
class FFRep:
    """A finite-field representation: one matrix per arrow.

    mats[i] has shape dim[ha] x dim[ta] for arrow i = (ta, ha); rows are
    tuples of field elements.
    """

    quiver: Quiver
    field: GF
    dim: tuple[int, ...]
    mats: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dim", check_dimvector(self.quiver, self.dim))
        if len(self.mats) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        frozen = []
        for i, (t, h) in enumerate(self.quiver.arrows):
            m = tuple(tuple(row) for row in self.mats[i])
            if len(m) != self.dim[h] or any(len(row) != self.dim[t] for row in m):
                raise ValueError(
                    f"arrow {i}: matrix shape {len(m)}x{len(m[0]) if m else 0}"
                    f" does not match {self.dim[h]}x{self.dim[t]}"
                )
            frozen.append(m)
        object.__setattr__(self, "mats", tuple(frozen))

    def mat(self, arrow: int) -> list[list[int]]:
        return [list(row) for row in self.mats[arrow]]


def random_rep(Q: Quiver, dim, field: GF, seed: int) -> FFRep:
    """Uniformly random representation from a seeded generator.

    The same (quiver, dim, field, seed) always produces the same matrices;
    entries are drawn arrow by arrow, row-major.
    """
    dim = check_dimvector(Q, dim)
    rng = random.Random(seed)
    mats = []
    for t, h in Q.arrows:
        mats.append(tuple(tuple(field.sample(rng) for _ in range(dim[t])) for _ in range(dim[h])))
    return FFRep(Q, field, dim, tuple(mats))


def _check_pair(Q: Quiver, V: FFRep, W: FFRep) -> None:
    if V.quiver is not Q and V.quiver != Q:
        raise ValueError("V lives on a different quiver")
    if W.quiver is not Q and W.quiver != Q:
        raise ValueError("W lives on a different quiver")
    if V.field != W.field:
        raise ValueError(f"field mismatch: {V.field} vs {W.field}")


def build_dvw(Q: Quiver, V: FFRep, W: FFRep) -> list[list[int]]:
    """Matrix of phi -> (W(a) phi(ta) - phi(ha) V(a)) over all arrows.

    Domain: direct sum over vertices x of Hom(V(x), W(x)); the basis is
    matrix units of each gamma(x)-by-beta(x) block, vertex index first,
    column-major inside the block.  Codomain: direct sum over arrows of
    Hom(V(ta), W(ha)), arrow index first, column-major inside.  This
    ordering is fixed so determinants are reproducible, not only ranks.
    """
    _check_pair(Q, V, W)
    F = V.field
    beta, gamma = V.dim, W.dim

    dom_offsets = []
    off = 0
    for x in range(Q.nvertices):
        dom_offsets.append(off)
        off += beta[x] * gamma[x]
    ncols = off

    cod_offsets = []
    off = 0
    for t, h in Q.arrows:
        cod_offsets.append(off)
        off += beta[t] * gamma[h]
    nrows = off

    M = [[F.zero] * ncols for _ in range(nrows)]
    for x in range(Q.nvertices):
        for c in range(beta[x]):
            for r in range(gamma[x]):
                col = dom_offsets[x] + c * gamma[x] + r  # unit E_rc at vertex x
                for a, (t, h) in enumerate(Q.arrows):
                    if t == x:
                        # W(a) E_rc has column c equal to column r of W(a)
                        Wa = W.mats[a]
                        for i in range(gamma[h]):
                            v = Wa[i][r]
                            if v != F.zero:
                                M[cod_offsets[a] + c * gamma[h] + i][col] = F.add(
                                    M[cod_offsets[a] + c * gamma[h] + i][col], v
                                )
                    if h == x:
                        # -(E_rc V(a)) has row r equal to minus row c of V(a)
                        Va = V.mats[a]
                        for j in range(beta[t]):
                            v = Va[c][j]
                            if v != F.zero:
                                M[cod_offsets[a] + j * gamma[h] + r][col] = F.sub(
                                    M[cod_offsets[a] + j * gamma[h] + r][col], v
                                )
    return M


def hom_ext_dims(Q: Quiver, V: FFRep, W: FFRep) -> tuple[int, int]:
    """(dim Hom(V,W), dim Ext(V,W)) as nullity and corank of d^V_W."""
    M = build_dvw(Q, V, W)
    ncols = sum(V.dim[x] * W.dim[x] for x in range(Q.nvertices))
    nrows = len(M)
    rank = mat_rank(V.field, M) if M and ncols else 0
    hom = ncols - rank
    ext = nrows - rank
    if hom - ext != euler_form(Q, V.dim, W.dim):
        raise AssertionError("Euler identity violated; pairing code is broken")
    return hom, ext


def semiinvariant_cv(Q: Quiver, V: FFRep, W: FFRep) -> int:
    """det d^V_W; defined exactly when the pairing of the dimension
    vectors vanishes, and zero iff V maps nontrivially to W."""
    _check_pair(Q, V, W)
    pairing = euler_form(Q, V.dim, W.dim)
    if pairing != 0:
        raise NonSquarePairingError(
            f"d^V_W is not square: euler pairing is {pairing}, need 0"
        )
    M = build_dvw(Q, V, W)
    return mat_det(V.field, M)
