"""Littlewood-Richardson engine.

Computes LR coefficients by direct backtracking over skew tableaux,
iterated tensor multiplicities of Schur functors with containment pruning,
and products of Schubert classes truncated to a rectangle.  All counts are
plain Python ints (arbitrary precision).

Memoization tables live on an engine instance, not in module globals.
Instances may be shared between threads: under CPython the tables are
plain dicts updated atomically, so concurrent read-compute is safe (the
worst case is duplicated work, never a wrong value).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import Rectangle, contains, fits, partition, size


@dataclass
class SchubertElement:
    """Integer combination of Schubert classes in one Grassmannian factor.

    Keys fit inside `ambient`; zero coefficients are never stored.
    """

    ambient: Rectangle
    coeffs: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for lam, c in self.coeffs.items():
            if not fits(lam, self.ambient):
                raise ValueError(f"class {lam} outside ambient {self.ambient}")
            if c == 0:
                raise ValueError(f"zero coefficient stored for {lam}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchubertElement):
            return NotImplemented
        return self.ambient == other.ambient and self.coeffs == other.coeffs


def schubert_class(ambient: Rectangle, lam: tuple[int, ...]) -> SchubertElement:
    """The single class [lam], or the zero element if lam falls outside."""
    lam = partition(lam)
    if not fits(lam, ambient):
        return SchubertElement(ambient, {})
    return SchubertElement(ambient, {lam: 1})


class LREngine:
    """Littlewood-Richardson kernel with per-instance memo tables."""

    def __init__(self) -> None:
        self._lr_memo: dict[tuple, int] = {}
        self._expand_memo: dict[tuple, tuple] = {}
        self._tensor_memo: dict[tuple, int] = {}

    # -- LR coefficients ---------------------------------------------------

    def lr_coefficient(
        self,
        lam: tuple[int, ...],
        mu: tuple[int, ...],
        nu: tuple[int, ...],
    ) -> int:
        """c_{lam,mu}^{nu}: LR skew tableaux of shape nu/lam and content mu.

        Zero whenever |lam| + |mu| != |nu| or lam (or mu) is not contained
        in nu.
        """
        lam, mu, nu = partition(lam), partition(mu), partition(nu)
        if size(lam) + size(mu) != size(nu):
            return 0
        if not (contains(nu, lam) and contains(nu, mu)):
            return 0
        key = (lam, mu, nu)
        cached = self._lr_memo.get(key)
        if cached is not None:
            return cached
        val = self._count_lr_tableaux(lam, mu, nu)
        self._lr_memo[key] = val
        return val

    @staticmethod
    def _count_lr_tableaux(
        lam: tuple[int, ...],
        mu: tuple[int, ...],
        nu: tuple[int, ...],
    ) -> int:
        """Backtracking count of fillings of nu/lam with content mu.

        Cells are visited in reverse reading order (rows top to bottom,
        right to left inside a row) so the lattice-word condition can be
        enforced incrementally: placing value v keeps every prefix with
        count(v) <= count(v-1).
        """
        nrows = len(nu)
        inner = list(lam) + [0] * (nrows - len(lam))
        nvals = len(mu)
        counts = [0] * (nvals + 1)  # counts[v] = placed so far, 1-based
        need = list(mu)
        # grid[r][c] holds the entry at (r, c); inner cells stay 0
        grid = [[0] * nu[r] for r in range(nrows)]

        cells = []
        for r in range(nrows):
            for c in range(nu[r] - 1, inner[r] - 1, -1):
                cells.append((r, c))

        total = 0

        def place(i: int) -> None:
            nonlocal total
            if i == len(cells):
                total += 1
                return
            r, c = cells[i]
            # weakly increasing along the row: bounded by the cell at the
            # right (already placed); strictly increasing down columns.
            hi = grid[r][c + 1] if c + 1 < nu[r] else nvals
            above = grid[r - 1][c] if r > 0 and c < nu[r - 1] else 0
            lo = above + 1
            for v in range(lo, hi + 1):
                if need[v - 1] == 0:
                    continue
                if v > 1 and counts[v] + 1 > counts[v - 1]:
                    continue
                counts[v] += 1
                need[v - 1] -= 1
                grid[r][c] = v
                place(i + 1)
                grid[r][c] = 0
                counts[v] -= 1
                need[v - 1] += 1

        place(0)
        return total

    # -- products and multiplicities ---------------------------------------

    def expand(
        self,
        lam: tuple[int, ...],
        mu: tuple[int, ...],
        bound: tuple[int, ...],
    ) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Expansion of S^lam (x) S^mu, keeping only shapes inside `bound`.

        Returns ((nu, c_{lam,mu}^{nu}), ...) over partitions nu contained in
        the bounding partition, with nonzero coefficients only.
        """
        key = (lam, mu, bound)
        cached = self._expand_memo.get(key)
        if cached is not None:
            return cached
        total = size(lam) + size(mu)
        out = []
        for nu in self._shapes_between(lam, bound, total):
            c = self.lr_coefficient(lam, mu, nu)
            if c:
                out.append((nu, c))
        result = tuple(out)
        self._expand_memo[key] = result
        return result

    @staticmethod
    def _shapes_between(
        inner: tuple[int, ...],
        outer: tuple[int, ...],
        total: int,
    ):
        """Partitions nu with inner <= nu <= outer (as diagrams), |nu| = total."""
        if not contains(outer, inner) or total > size(outer):
            return
        nrows = len(outer)
        lo = list(inner) + [0] * (nrows - len(inner))
        # suffix maxima for feasibility pruning
        suffix_hi = [0] * (nrows + 1)
        for r in range(nrows - 1, -1, -1):
            suffix_hi[r] = suffix_hi[r + 1] + outer[r]
        suffix_lo = [0] * (nrows + 1)
        for r in range(nrows - 1, -1, -1):
            suffix_lo[r] = suffix_lo[r + 1] + lo[r]

        row_vals: list[int] = []

        def rec(r: int, remaining: int, prev: int):
            if r == nrows:
                if remaining == 0:
                    yield partition(row_vals)
                return
            hi = min(outer[r], prev, remaining - suffix_lo[r + 1])
            for v in range(lo[r], hi + 1):
                rest = remaining - v
                if rest > min(suffix_hi[r + 1], v * (nrows - r - 1)):
                    continue
                row_vals.append(v)
                yield from rec(r + 1, rest, v)
                row_vals.pop()

        yield from rec(0, total, total)

    def tensor_multiplicity(
        self,
        target: tuple[int, ...],
        factors: list[tuple[int, ...]],
    ) -> int:
        """Multiplicity of S^target in S^{f_0} (x) ... (x) S^{f_{k-1}}.

        Folds left to right, pruning every intermediate shape not contained
        in target.  The empty factor list is the trivial functor.
        """
        target = partition(target)
        factors = [partition(f) for f in factors]
        if sum(size(f) for f in factors) != size(target):
            return 0
        key = (target, tuple(factors))
        cached = self._tensor_memo.get(key)
        if cached is not None:
            return cached
        state: dict[tuple[int, ...], int] = {(): 1}
        for f in factors:
            nxt: dict[tuple[int, ...], int] = {}
            for cur, coeff in state.items():
                for nu, c in self.expand(cur, f, target):
                    nxt[nu] = nxt.get(nu, 0) + coeff * c
            state = nxt
            if not state:
                break
        val = state.get(target, 0)
        self._tensor_memo[key] = val
        return val

    def schubert_multiply(self, a: SchubertElement, b: SchubertElement) -> SchubertElement:
        """Product in the cohomology of one Grassmannian.

        Classes outside the ambient rectangle are discarded.
        """
        if a.ambient != b.ambient:
            raise ValueError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
        rect = a.ambient
        bound = rectangle_partition(rect)
        out: dict[tuple[int, ...], int] = {}
        for lam, ca in a.coeffs.items():
            for mu, cb in b.coeffs.items():
                for nu, c in self.expand(lam, mu, bound):
                    v = out.get(nu, 0) + ca * cb * c
                    if v:
                        out[nu] = v
                    else:
                        out.pop(nu, None)
        return SchubertElement(rect, out)

    # -- independent oracle -------------------------------------------------

    def schur_polynomial(
        self, lam: tuple[int, ...], nvars: int
    ) -> dict[tuple[int, ...], int]:
        """Monomial expansion of the Schur polynomial s_lam(x_1..x_nvars).

        Enumerates semistandard tableaux directly; intended as a slow
        independent check of the LR expansion, hence the small-variable cap.
        """
        lam = partition(lam)
        if nvars < len(lam):
            raise ValueError(f"need nvars >= {len(lam)} for shape {lam}")
        if nvars > 8:
            raise ValueError("schur_polynomial capped at 8 variables")
        out: dict[tuple[int, ...], int] = {}
        if not lam:
            out[(0,) * nvars] = 1
            return out
        nrows = len(lam)
        grid = [[0] * lam[r] for r in range(nrows)]
        expo = [0] * nvars

        cells = [(r, c) for r in range(nrows) for c in range(lam[r])]

        def rec(i: int) -> None:
            if i == len(cells):
                key = tuple(expo)
                out[key] = out.get(key, 0) + 1
                return
            r, c = cells[i]
            left = grid[r][c - 1] if c > 0 else 1
            above = grid[r - 1][c] if r > 0 else 0
            for v in range(max(left, above + 1), nvars + 1):
                grid[r][c] = v
                expo[v - 1] += 1
                rec(i + 1)
                expo[v - 1] -= 1
            grid[r][c] = 0

        rec(0)
        return out


def rectangle_partition(rect: Rectangle) -> tuple[int, ...]:
    """The full-rectangle partition (cols repeated rows times)."""
    if rect.cols == 0:
        return ()
    return (rect.cols,) * rect.rows
