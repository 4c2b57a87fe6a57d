"""Integer matrices, Smith normal form, and abelianizations.

Entries are Python ints throughout: SNF intermediates overflow any fixed
word size, so arbitrary precision is not optional here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    def __init__(self, entries: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = len(entries)
        if rows:
            width = len(entries[0])
        else:
            width = cols if cols is not None else 0
        if cols is not None and rows and width != cols:
            raise ValueError("explicit column count disagrees with row width")
        if cols is not None:
            width = cols if not rows else width
        frozen = tuple(tuple(int(x) for x in row) for row in entries)
        for row in frozen:
            if len(row) != width:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", frozen)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", width)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        return self.entries[idx[0]][idx[1]]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        data = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ]
        return IntMatrix(data, cols=other.cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    diag: tuple[int, ...]
    rank: int
    u: Optional[IntMatrix] = None
    v: Optional[IntMatrix] = None


def smith_normal_form(a: IntMatrix, want_transforms: bool = False) -> SNFResult:
    """Diagonalize over Z with the divisibility chain d1 | d2 | ...

    Pivot is the smallest nonzero absolute value, ties broken row-major.
    When requested, unimodular U (rows x rows) and V (cols x cols) with
    N = U*A*V are returned.
    """
    m, n = a.rows, a.cols
    d = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_transforms else None
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_transforms else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        drow, srow = d[dst], d[src]
        for j in range(n):
            drow[j] += c * srow[j]
        if u is not None:
            urow, usrc = u[dst], u[src]
            for j in range(m):
                urow[j] += c * usrc[j]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        if v is not None:
            for row in v:
                row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pivot = find_pivot(t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            if d[t][t] < 0:
                negate_row(t)
            p = d[t][t]
            # clear column t, then row t, with floor-division remainders
            dirty = False
            for i in range(m):
                if i != t and d[i][t] != 0:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t] != 0:
                        dirty = True
            for j in range(n):
                if j != t and d[t][j] != 0:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j] != 0:
                        dirty = True
            if dirty:
                pivot = find_pivot(t)
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
                continue
            # pivot must divide everything below-right for the chain
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1

    diag = tuple(d[i][i] for i in range(min(m, n)))
    rank = sum(1 for x in diag if x != 0)
    if want_transforms:
        return SNFResult(diag, rank, IntMatrix(u), IntMatrix(v))
    return SNFResult(diag, rank)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors in a divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for k, d in enumerate(self.torsion):
            if d <= 1:
                raise ValueError("torsion factors must exceed 1")
            if k and self.torsion[k] % self.torsion[k - 1] != 0:
                raise ValueError("torsion factors must form a divisibility chain")

    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out


def format_abelian(group: AbelianGroup) -> str:
    parts = [f"Z^{group.free_rank}"]
    parts.extend(f"Z/{d}" for d in group.torsion)
    return " + ".join(parts)


def abelianization(pres) -> AbelianGroup:
    """Structure of G^ab from the Smith normal form of the exponent matrix."""
    rows = pres.exponent_rows()
    a = IntMatrix(rows, cols=pres.g)
    snf = smith_normal_form(a)
    torsion = tuple(d for d in snf.diag[: snf.rank] if d > 1)
    return AbelianGroup(free_rank=pres.g - snf.rank, torsion=torsion)


def is_cyclic(group: AbelianGroup) -> bool:
    """True iff the group is Z, finite cyclic, or trivial."""
    if group.free_rank == 0:
        return len(group.torsion) <= 1
    return group.free_rank == 1 and not group.torsion


def hadamard_torsion_bound(pres) -> int:
    """l^r with l the longest relator: an upper bound for |Tor(G^ab)|."""
    if not pres.relators:
        raise ValueError("need at least one relator")
    l = max(len(w) for w in pres.relators)
    return l ** len(pres.relators)
