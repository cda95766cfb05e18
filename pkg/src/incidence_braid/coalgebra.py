"""Incidence coalgebra of a finite poset and exact sparse linear maps on its tensor powers.

Index conventions used throughout the package:

* The basis Y of D lists pairs (a, b), a <= b, sorted by (index of a, index of b).
* A basis tensor y1 (x) ... (x) yk sits at i1*|Y|^(k-1) + ... + ik (row-major).
* Matrices act on column vectors: rows are outputs, columns are inputs.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .poset import Poset


class IntervalBasis:
    def __init__(self, poset: Poset):
        self.poset = poset
        self.pairs: list[tuple[str, str]] = poset.pairs()
        self.index: dict[tuple[str, str], int] = {p: i for i, p in enumerate(self.pairs)}

    def __len__(self):
        return len(self.pairs)

    def check(self, pair) -> tuple[str, str]:
        pair = tuple(pair)
        if pair not in self.index:
            raise ValueError(f"{pair} is not an interval of the poset")
        return pair

    def tensor_index(self, *pairs) -> int:
        n = len(self.pairs)
        k = 0
        for p in pairs:
            k = k * n + self.index[self.check(p)]
        return k

    def tensor_pairs(self, index: int, power: int) -> tuple[tuple[str, str], ...]:
        n = len(self.pairs)
        out = []
        for _ in range(power):
            index, i = divmod(index, n)
            out.append(self.pairs[i])
        return tuple(reversed(out))

    def height(self, pair) -> int:
        return self.poset.height(*pair)


def delta(basis: IntervalBasis, pair) -> list[tuple[tuple[str, str], tuple[str, str]]]:
    """Comultiplication: (a,b) -> sum over c in [a,b] of (a,c) (x) (c,b)."""
    a, b = basis.check(pair)
    return [((a, c), (c, b)) for c in basis.poset.interval(a, b)]


def epsilon(basis: IntervalBasis, pair) -> int:
    a, b = basis.check(pair)
    return 1 if a == b else 0


def group_likes(basis: IntervalBasis) -> list[tuple[str, str]]:
    return [(a, a) for a in basis.poset.elements]


class LinearMap:
    """Sparse square-or-rectangular matrix over an exact field.

    ``cols[j]`` maps row index to a nonzero scalar. ``shape`` is (rows, cols).
    """

    __slots__ = ("shape", "cols")

    def __init__(self, shape: tuple[int, int], cols: dict[int, dict[int, object]] | None = None):
        self.shape = shape
        self.cols = {}
        for j, col in (cols or {}).items():
            col = {i: v for i, v in col.items() if v}
            if col:
                self.cols[j] = col

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> LinearMap:
        return cls((n, n), {i: {i: one} for i in range(n)})

    @classmethod
    def from_dense(cls, rows) -> LinearMap:
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        cols: dict[int, dict[int, object]] = {}
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("ragged matrix")
            for j, v in enumerate(r):
                if v:
                    cols.setdefault(j, {})[i] = v
        return cls((m, n), cols)

    def to_dense(self, zero=0) -> list[list]:
        m, n = self.shape
        out = [[zero] * n for _ in range(m)]
        for j, col in self.cols.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def entry(self, i: int, j: int, zero=0):
        return self.cols.get(j, {}).get(i, zero)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def transpose(self) -> LinearMap:
        cols: dict[int, dict[int, object]] = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                cols.setdefault(i, {})[j] = v
        return LinearMap((self.shape[1], self.shape[0]), cols)

    def apply(self, vec: dict[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for j, x in vec.items():
            for i, v in self.cols.get(j, {}).items():
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: LinearMap) -> LinearMap:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        cols = {j: self.apply(col) for j, col in other.cols.items()}
        return LinearMap((self.shape[0], other.shape[1]), cols)

    def _combine(self, other: LinearMap, sign: int) -> LinearMap:
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = cols.setdefault(j, {})
            for i, v in col.items():
                tgt[i] = tgt.get(i, 0) + sign * v
        return LinearMap(self.shape, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.shape == other.shape and self.cols == other.cols

    def is_zero(self) -> bool:
        return not self.cols

    def first_nonzero(self):
        """(row, col, value) of the nonzero entry with the smallest (col, row), or None."""
        if not self.cols:
            return None
        j = min(self.cols)
        i = min(self.cols[j])
        return i, j, self.cols[j][i]

    def kron(self, other: LinearMap) -> LinearMap:
        (m1, n1), (m2, n2) = self.shape, other.shape
        cols: dict[int, dict[int, object]] = {}
        for j1, c1 in self.cols.items():
            for j2, c2 in other.cols.items():
                cols[j1 * n2 + j2] = {i1 * m2 + i2: v1 * v2
                                      for i1, v1 in c1.items() for i2, v2 in c2.items()}
        return LinearMap((m1 * m2, n1 * n2), cols)

    def kron_apply(self, other: LinearMap, vec: dict[int, object]) -> dict[int, object]:
        """(self (x) other) applied to ``vec`` without forming the Kronecker product."""
        (m1, n1), (m2, n2) = self.shape, other.shape
        out: dict[int, object] = {}
        for j, x in vec.items():
            c1 = self.cols.get(j // n2)
            c2 = other.cols.get(j % n2)
            if not c1 or not c2:
                continue
            for i1, v1 in c1.items():
                w = v1 * x
                base = i1 * m2
                for i2, v2 in c2.items():
                    i = base + i2
                    out[i] = out.get(i, 0) + w * v2
        return {i: v for i, v in out.items() if v}

    def rank(self) -> int:
        return len(_eliminate(self))

    def is_invertible(self) -> bool:
        return self.shape[0] == self.shape[1] and self.rank() == self.shape[0]

    def inverse(self) -> LinearMap:
        """Exact inverse by Gauss-Jordan on the row dictionaries."""
        n = self.shape[0]
        if self.shape[1] != n:
            raise ValueError("only square matrices can be inverted")
        rows = _rows(self)
        one = _one_like(self)
        aug = [{} for _ in range(n)]
        for i in range(n):
            aug[i][n + i] = one
            aug[i].update(rows.get(i, {}))
        pivots = _eliminate_rows(aug, limit=n, reduce=True)
        if len(pivots) != n:
            raise ZeroDivisionError("matrix is singular")
        cols: dict[int, dict[int, object]] = {}
        for col, row in pivots.items():
            for j, v in row.items():
                if j >= n:
                    cols.setdefault(j - n, {})[col] = v
        return LinearMap((n, n), cols)

    def __repr__(self):
        return f"LinearMap({self.shape[0]}x{self.shape[1]}, nnz={self.nnz()})"


def _one_like(m: LinearMap):
    for col in m.cols.values():
        for v in col.values():
            return v ** 0
    return Fraction(1)


def _rows(m: LinearMap) -> dict[int, dict[int, object]]:
    rows: dict[int, dict[int, object]] = {}
    for j, col in m.cols.items():
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return rows


def _eliminate(m: LinearMap) -> dict[int, dict]:
    return _eliminate_rows([dict(r) for r in _rows(m).values()], limit=m.shape[1])


def _eliminate_rows(rows: list[dict], limit: int, reduce: bool = False) -> dict[int, dict]:
    """Sparse row reduction; pivots only in columns < ``limit``.

    Returns {pivot column: normalized pivot row}. With ``reduce`` the result is
    fully reduced (Gauss-Jordan), which :meth:`LinearMap.inverse` needs.
    """
    pivots: dict[int, dict] = {}
    pending = [r for r in rows if r]
    while pending:
        # sparsest row first keeps fill-in low
        pending.sort(key=len)
        row = pending.pop(0)
        cands = [j for j in row if j < limit]
        if not cands:
            continue
        col = min(cands, key=lambda j: (sum(1 for r in pending if j in r), j))
        inv = 1 / row[col]
        row = {j: v * inv for j, v in row.items()}
        nxt = []
        for r in pending:
            f = r.get(col)
            if f:
                for j, v in row.items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        pending = nxt
        if reduce:
            for prow in pivots.values():
                f = prow.get(col)
                if f:
                    for j, v in row.items():
                        w = prow.get(j, 0) - f * v
                        if w:
                            prow[j] = w
                        else:
                            prow.pop(j, None)
        pivots[col] = row
    return pivots


def tensor_lift(m: LinearMap, position: str, n: int) -> LinearMap:
    """m (x) id (position "12") or id (x) m (position "23"), with id of size n."""
    if m.shape != (n * n, n * n):
        raise ValueError("tensor_lift expects a map on D (x) D")
    ident = LinearMap.identity(n, _one_like(m))
    if position == "12":
        return m.kron(ident)
    if position == "23":
        return ident.kron(m)
    raise ValueError("position must be '12' or '23'")


def flip_map(n: int, one=Fraction(1)) -> LinearMap:
    return LinearMap((n * n, n * n), {i * n + j: {j * n + i: one} for i in range(n) for j in range(n)})


def compose(*maps: LinearMap) -> LinearMap:
    """compose(f, g, h) = f @ g @ h."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


def delta_map(basis: IntervalBasis, power: int = 1, one=Fraction(1)) -> LinearMap:
    """Comultiplication of D^(x)power as a map into D^(x)2power.

    For power 2 the output is ordered (a,p)(x)(c,q)(x)(p,b)(x)(q,d), the comultiplication
    of the tensor product coalgebra D (x) D.
    """
    n = len(basis)
    if power == 1:
        cols = {basis.index[y]: {basis.tensor_index(u, v): one for u, v in delta(basis, y)}
                for y in basis.pairs}
        return LinearMap((n * n, n), cols)
    if power == 2:
        cols = {}
        for y1, y2 in product(basis.pairs, repeat=2):
            col = {}
            for (u1, v1), (u2, v2) in product(delta(basis, y1), delta(basis, y2)):
                col[basis.tensor_index(u1, u2, v1, v2)] = one
            cols[basis.tensor_index(y1, y2)] = col
        return LinearMap((n ** 4, n * n), cols)
    raise ValueError("power must be 1 or 2")


def epsilon_map(basis: IntervalBasis, one=Fraction(1)) -> LinearMap:
    """Counit as a 1 x |Y| matrix."""
    return LinearMap((1, len(basis)), {basis.index[(a, a)]: {0: one} for a in basis.poset.elements})
