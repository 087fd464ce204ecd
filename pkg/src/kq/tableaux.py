"""Young diagram combinatorics.

Partitions, skew shapes and semistandard (skew) tableaux, reverse words
and the lattice-word condition, Littlewood-Richardson numbers by direct
tableau enumeration, Pieri rules, dimensions of irreducible GL(n)
representations by the hook-content formula, the closed-form list of
irreducible constituents of a two-row skew shape, and skew Young
symmetrizers acting on tensor words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import FormalLinComb


class NotContainedError(ValueError):
    """The inner partition is not (strictly) contained in the outer one."""


class LengthMismatchError(ValueError):
    """A tensor word does not match the number of boxes of a shape."""


class Partition:
    """A weakly decreasing tuple of non-negative integers.

    Trailing zeros are trimmed on construction, so (2, 1) and (2, 1, 0)
    compare equal.  Instances are immutable and hashable.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int] = ()):
        p = tuple(int(x) for x in parts)
        if any(x < 0 for x in p):
            raise ValueError(f"negative part in {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"{p} is not weakly decreasing")
        while p and p[-1] == 0:
            p = p[:-1]
        object.__setattr__(self, "_parts", p)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def coerce(cls, value) -> "Partition":
        return value if isinstance(value, Partition) else cls(value)

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    def part(self, i: int) -> int:
        """The i-th part (0-based), with implicit zero padding."""
        return self._parts[i] if i < len(self._parts) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        return self._parts + (0,) * (length - len(self._parts))

    @property
    def size(self) -> int:
        return sum(self._parts)

    @property
    def num_rows(self) -> int:
        return len(self._parts)

    def contains(self, other: "Partition") -> bool:
        other = Partition.coerce(other)
        return all(other.part(i) <= self.part(i) for i in range(other.num_rows))

    def conjugate(self) -> "Partition":
        if not self._parts:
            return Partition()
        return Partition([sum(1 for p in self._parts if p > j) for j in range(self._parts[0])])

    def cells(self) -> list[tuple[int, int]]:
        """All boxes (row, col), 0-based, in reading order."""
        return [(i, j) for i, p in enumerate(self._parts) for j in range(p)]

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts == other._parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"Partition{self._parts}"

    def to_json(self, min_len: int = 0) -> list[int]:
        return list(self.padded(max(min_len, len(self._parts))))


def contains(lam, mu) -> bool:
    """True iff lam_i <= mu_i for all i (zero padding on the right)."""
    return Partition.coerce(mu).contains(Partition.coerce(lam))


class SkewShape:
    """The boxes of `outer` not in `inner` (both partitions, inner ⊆ outer)."""

    __slots__ = ("inner", "outer")

    def __init__(self, inner, outer):
        inner = Partition.coerce(inner)
        outer = Partition.coerce(outer)
        if not outer.contains(inner):
            raise NotContainedError(f"{inner} is not contained in {outer}")
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)

    def __setattr__(self, name, value):
        raise AttributeError("SkewShape is immutable")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    @property
    def num_rows(self) -> int:
        return self.outer.num_rows

    def row_bounds(self) -> list[tuple[int, int]]:
        """Per row, the half-open column range [inner_r, outer_r)."""
        return [(self.inner.part(r), self.outer.part(r)) for r in range(self.num_rows)]

    def cells(self) -> list[tuple[int, int]]:
        """Boxes (row, col), 0-based, in reading order (rows, left to right)."""
        return [(r, c) for r, (lo, hi) in enumerate(self.row_bounds()) for c in range(lo, hi)]

    def __eq__(self, other) -> bool:
        if isinstance(other, SkewShape):
            return self.inner == other.inner and self.outer == other.outer
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.inner, self.outer))

    def __repr__(self) -> str:
        return f"SkewShape({self.inner.parts}/{self.outer.parts})"

    def to_json(self) -> dict:
        return {"inner": self.inner.to_json(), "outer": self.outer.to_json()}


class SkewTableau:
    """A semistandard filling of a skew shape.

    Rows are weakly increasing left to right, columns strictly increasing
    top to bottom.  The filling is stored row by row, covering only the
    boxes of the shape.
    """

    __slots__ = ("shape", "rows")

    def __init__(self, shape: SkewShape, rows: Sequence[Sequence[int]], check: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "rows", rows)
        if check:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("SkewTableau is immutable")

    def _validate(self):
        bounds = self.shape.row_bounds()
        if len(self.rows) != len(bounds):
            raise ValueError("row count mismatch")
        for r, ((lo, hi), row) in enumerate(zip(bounds, self.rows)):
            if len(row) != hi - lo:
                raise ValueError(f"row {r} has wrong length")
            if any(x < 1 for x in row):
                raise ValueError("entries must be positive")
            if any(row[k] > row[k + 1] for k in range(len(row) - 1)):
                raise ValueError(f"row {r} is not weakly increasing")
        for r in range(1, len(bounds)):
            lo, hi = bounds[r]
            lo_up, hi_up = bounds[r - 1]
            for c in range(max(lo, lo_up), min(hi, hi_up)):
                if self.entry(r, c) <= self.entry(r - 1, c):
                    raise ValueError(f"column {c} is not strictly increasing")

    def entry(self, r: int, c: int) -> int:
        lo, hi = self.shape.row_bounds()[r]
        if not (lo <= c < hi):
            raise IndexError((r, c))
        return self.rows[r][c - lo]

    def content(self) -> tuple[int, ...]:
        """Multiplicity vector: content[i] counts the entry i+1."""
        flat = [x for row in self.rows for x in row]
        if not flat:
            return ()
        counts = [0] * max(flat)
        for x in flat:
            counts[x - 1] += 1
        return tuple(counts)

    def reverse_word(self) -> tuple[int, ...]:
        """Rows top to bottom, each read right to left."""
        return tuple(x for row in self.rows for x in reversed(row))

    def __eq__(self, other) -> bool:
        if isinstance(other, SkewTableau):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        lines = []
        for (lo, _), row in zip(self.shape.row_bounds(), self.rows):
            lines.append("." * lo + "".join(str(x) for x in row))
        return "SkewTableau(" + "|".join(lines) + ")"


def reverse_word(t: SkewTableau) -> tuple[int, ...]:
    return t.reverse_word()


def is_lattice_word(word: Sequence[int]) -> bool:
    """Every prefix has at least as many i's as (i+1)'s, for all i >= 1."""
    counts: dict[int, int] = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
        if x > 1 and counts[x] > counts.get(x - 1, 0):
            return False
    return True


def enumerate_ssyt(shape: SkewShape, max_entry: int) -> list[SkewTableau]:
    """All semistandard fillings with entries in {1..max_entry}.

    Boxes are filled in reading order with backtracking; the output order
    is therefore deterministic (lexicographic in the reading word).
    """
    if max_entry < 1:
        raise ValueError("max_entry must be at least 1")
    bounds = shape.row_bounds()
    cells = shape.cells()
    if not cells:
        return [SkewTableau(shape, [() for _ in bounds], check=False)]
    filling: dict[tuple[int, int], int] = {}
    out: list[SkewTableau] = []

    def emit():
        rows = [tuple(filling[(r, c)] for c in range(lo, hi)) for r, (lo, hi) in enumerate(bounds)]
        out.append(SkewTableau(shape, rows, check=False))

    def fill(k: int):
        if k == len(cells):
            emit()
            return
        r, c = cells[k]
        lo = 1
        if (r, c - 1) in filling:
            lo = filling[(r, c - 1)]
        if (r - 1, c) in filling:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, max_entry + 1):
            filling[(r, c)] = v
            fill(k + 1)
        filling.pop((r, c), None)

    fill(0)
    return out


def _lr_fillings(shape: SkewShape, content: tuple[int, ...]) -> int:
    """Count semistandard fillings of `shape` with the given content whose
    reverse word is a lattice word.

    Boxes are filled in reverse-word order (rows top to bottom, right to
    left) so both the lattice condition and the row condition prune early.
    """
    bounds = shape.row_bounds()
    order = [(r, c) for r, (lo, hi) in enumerate(bounds) for c in range(hi - 1, lo - 1, -1)]
    remaining = list(content)
    filling: dict[tuple[int, int], int] = {}
    count = 0

    def fill(k: int, prefix_counts: list[int]):
        nonlocal count
        if k == len(order):
            count += 1
            return
        r, c = order[k]
        hi_val = len(content)
        right = filling.get((r, c + 1))
        if right is not None:
            hi_val = min(hi_val, right)
        above = filling.get((r - 1, c))
        lo_val = above + 1 if above is not None else 1
        for v in range(lo_val, hi_val + 1):
            if remaining[v - 1] == 0:
                continue
            if v > 1 and prefix_counts[v - 1] + 1 > prefix_counts[v - 2]:
                continue  # lattice condition would fail
            filling[(r, c)] = v
            remaining[v - 1] -= 1
            prefix_counts[v - 1] += 1
            fill(k + 1, prefix_counts)
            prefix_counts[v - 1] -= 1
            remaining[v - 1] += 1
            del filling[(r, c)]

    fill(0, [0] * len(content))
    return count


def lr_number(lam, gam, mu) -> int:
    """The Littlewood-Richardson number: semistandard skew tableaux of
    shape mu/lam and content gam whose reverse word is a lattice word.

    Returns 0 whenever lam is not contained in mu or the box counts do
    not balance.
    """
    lam, gam, mu = Partition.coerce(lam), Partition.coerce(gam), Partition.coerce(mu)
    if not mu.contains(lam):
        return 0
    if lam.size + gam.size != mu.size:
        return 0
    shape = SkewShape(lam, mu)
    if shape.size == 0:
        return 1 if gam.size == 0 else 0
    return _lr_fillings(shape, gam.parts)


def skew_decomposition(shape: SkewShape) -> list[tuple[Partition, int]]:
    """Constituents (gamma, multiplicity) of the skew shape.

    Enumerates all lattice fillings of the shape; the content of each is
    automatically a partition.  Entries never exceed the row index of
    their box, so the number of rows of the outer shape bounds them.
    """
    d = shape.size
    if d == 0:
        return [(Partition(), 1)]
    max_entry = shape.num_rows
    counts: dict[tuple[int, ...], int] = {}
    for gam in _partitions_of(d, max_parts=max_entry):
        m = _lr_fillings(shape, gam)
        if m:
            counts[gam] = m
    out = [(Partition(g), m) for g, m in counts.items()]
    out.sort(key=lambda pair: pair[0].parts)
    return out


def _partitions_of(d: int, max_parts: int, cap: int | None = None) -> list[tuple[int, ...]]:
    if d == 0:
        return [()]
    if max_parts == 0:
        return []
    cap = d if cap is None else min(cap, d)
    out = []
    for first in range(cap, 0, -1):
        for rest in _partitions_of(d - first, max_parts - 1, first):
            out.append((first,) + rest)
    return out


def pieri_row(lam, m: int, max_rows: int) -> list[Partition]:
    """Partitions with at most max_rows rows obtained by adding m boxes to
    lam, no two in the same column."""
    return _pieri(Partition.coerce(lam), m, max_rows, same="column")


def pieri_col(lam, m: int, max_rows: int) -> list[Partition]:
    """Analogue of pieri_row with no two new boxes in the same row."""
    return _pieri(Partition.coerce(lam), m, max_rows, same="row")


def _pieri(lam: Partition, m: int, max_rows: int, same: str) -> list[Partition]:
    if m < 0:
        raise ValueError("cannot add a negative number of boxes")
    base = lam.padded(max_rows)
    if len(lam.parts) > max_rows:
        raise ValueError(f"{lam} has more than {max_rows} rows")
    results = set()
    if same == "column":
        # distribute m boxes over rows, at most (row above's old length - own
        # old length) extra per row except the first; the "no two in a column"
        # condition is new_r <= old_{r-1}
        for comp in itertools.product(range(m + 1), repeat=max_rows):
            if sum(comp) != m:
                continue
            new = tuple(base[r] + comp[r] for r in range(max_rows))
            if any(new[r] < new[r + 1] for r in range(max_rows - 1)):
                continue
            if any(r > 0 and new[r] > base[r - 1] for r in range(max_rows)):
                continue
            results.add(new)
    else:
        # no two new boxes in the same row: each row gains 0 or 1 box
        for comp in itertools.product((0, 1), repeat=max_rows):
            if sum(comp) != m:
                continue
            new = tuple(base[r] + comp[r] for r in range(max_rows))
            if any(new[r] < new[r + 1] for r in range(max_rows - 1)):
                continue
            results.add(new)
    return sorted((Partition(p) for p in results), key=lambda p: p.padded(max_rows))


def gl_dimension(gam, n: int) -> int:
    """Dimension of the irreducible GL(n) representation of highest weight
    gam, by the hook-content formula: prod over cells of (n + j - i) / hook."""
    gam = Partition.coerce(gam)
    if gam.num_rows > n:
        raise ValueError(f"{gam} has more than {n} rows")
    conj = gam.conjugate()
    num = 1
    den = 1
    for (i, j) in gam.cells():
        num *= n + j - i
        den *= (gam.part(i) - j) + (conj.part(j) - i) - 1
    dim = Fraction(num, den)
    assert dim.denominator == 1
    return int(dim)


def gamma_set(lam, mu) -> list[Partition]:
    """Constituents of the two-row skew shape mu/lam, in closed form.

    After shifting so the inner second row is zero, with m1, m2 the row
    differences, the list runs from (max{m1,m2}, min{m1,m2}) in steps of
    (+1, -1) down to (m1+m2, 0) when the rows of the skew shape do not
    overlap, and stops at the overlap-forced lower bound otherwise.  The
    enumeration in skew_decomposition is the test oracle for this.
    """
    lam, mu = Partition.coerce(lam), Partition.coerce(mu)
    if lam.num_rows > 2 or mu.num_rows > 2:
        raise ValueError("two-row partitions only")
    if not (mu.contains(lam) and mu != lam):
        raise NotContainedError(f"{lam} is not strictly contained in {mu}")
    l1, l2 = lam.padded(2)
    u1, u2 = mu.padded(2)
    m1, m2 = u1 - l1, u2 - l2
    # shift so the inner partition has second row zero
    s1, s2 = u1 - l2, u2 - l2
    start = (max(m1, m2), min(m1, m2))
    if u2 <= l1:
        stop2 = 0
    else:
        stop2 = s2 - (l1 - l2)  # forced count of 2s in the overlap columns
    out = []
    a, b = start
    while b >= stop2:
        out.append(Partition((a, b)))
        a, b = a + 1, b - 1
    return out


def hom_dim(lam, mu, n: int) -> int:
    """Total dimension of the constituents of the two-row skew shape mu/lam
    as GL(n) representations."""
    return sum(gl_dimension(g, n) for g in gamma_set(lam, mu))


@lru_cache(maxsize=None)
def _group_permutations(groups: tuple[tuple[int, ...], ...], d: int) -> tuple[tuple[int, ...], ...]:
    """All permutations of {0..d-1} preserving each group (as slot sets)."""
    perms = []
    per_group = [list(itertools.permutations(g)) for g in groups]
    for combo in itertools.product(*per_group):
        sigma = list(range(d))
        for g, img in zip(groups, combo):
            for slot, target in zip(g, img):
                sigma[slot] = target
        perms.append(tuple(sigma))
    return tuple(perms)


def _perm_sign(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    sign = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def young_symmetrizer_image(shape: SkewShape, word) -> FormalLinComb:
    """Apply the skew Young symmetrizer to a tensor word.

    Word slots correspond to the boxes of the shape in reading order
    (left to right, top to bottom).  The result is the signed column
    anti-symmetrization of the row symmetrization: sum over permutations
    preserving each row, then signed sum over permutations preserving
    each column, acting by (w . sigma)[k] = w[sigma(k)].
    """
    if not isinstance(word, FormalLinComb):
        word = FormalLinComb.term(tuple(word))
    cells = shape.cells()
    d = len(cells)
    for w in word.keys():
        if len(w) != d:
            raise LengthMismatchError(f"word {w} has {len(w)} letters; shape has {d} boxes")
    slot_of = {cell: k for k, cell in enumerate(cells)}
    nrows = shape.num_rows
    ncols = shape.outer.part(0) if shape.outer.parts else 0
    row_groups = tuple(
        tuple(slot_of[(r, c)] for c in range(*shape.row_bounds()[r]))
        for r in range(nrows)
    )
    col_groups = tuple(
        tuple(slot_of[(r, c)] for r in range(nrows) if (r, c) in slot_of)
        for c in range(ncols)
    )
    row_perms = _group_permutations(tuple(g for g in row_groups if len(g) > 1), d)
    col_perms = _group_permutations(tuple(g for g in col_groups if len(g) > 1), d)

    symmetrized: dict[tuple, Fraction] = {}
    for w, coeff in word.items():
        for sigma in row_perms:
            key = tuple(w[sigma[k]] for k in range(d))
            symmetrized[key] = symmetrized.get(key, Fraction(0)) + coeff
    result: dict[tuple, Fraction] = {}
    for w, coeff in symmetrized.items():
        for tau in col_perms:
            key = tuple(w[tau[k]] for k in range(d))
            c = coeff * _perm_sign(tau)
            result[key] = result.get(key, Fraction(0)) + c
    return FormalLinComb(result)
