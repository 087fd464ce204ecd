"""Fibers of the summand bundles over a point of Gr(n,2).

A point is a canonical full-rank 2 x n rational matrix.  Over it, each
two-row weight lam carries a fiber of dimension lam1 - lam2 + 1 with the
standard monomial basis: lam2 wedge factors (b2 ^ b1) followed by a
degree lam1 - lam2 monomial in b1, b2.  This module builds the banded
matrices of the two elementary maps (append a section to the symmetric
part; sum over wedge pairings with a section), provides a symbolic
evaluator that derives the same matrices directly from the definitions
(the test oracle for the banded formulas), and composes them along the
horizontal-then-vertical staircase between two weights.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .linalg import FormalLinComb, RatMatrix, rat, rat_to_json
from .tableaux import NotContainedError, Partition, hom_dim


class RankDeficientError(ValueError):
    """A 2 x n matrix of rank below two cannot represent a point."""


class InvalidRankError(ValueError):
    """The wedge-pairing map needs a fiber of dimension at least two."""


class OutOfYoungError(ValueError):
    """A weight stepped outside the ambient staircase of weights."""


class BadWordLengthError(ValueError):
    """A column word does not match the number of staircase steps."""


def in_young(lam, n: int) -> bool:
    """True iff lam fits in the two-row staircase for Gr(n,2)."""
    lam = Partition.coerce(lam)
    if lam.num_rows > 2:
        return False
    return lam.part(0) <= n - 2


def fiber_dim(lam) -> int:
    lam = Partition.coerce(lam)
    return lam.part(0) - lam.part(1) + 1


class GrPoint:
    """A point of Gr(n,2) in canonical reduced form.

    The matrix is 2 x n of rank 2 and carries the 2 x 2 identity at its
    leftmost linearly independent column pair.  Use reduce_point to
    canonicalize an arbitrary full-rank matrix.
    """

    __slots__ = ("n", "matrix", "pivot_cols")

    def __init__(self, matrix: RatMatrix):
        if matrix.rows != 2:
            raise ValueError("a point is a 2 x n matrix")
        n = matrix.cols
        if n < 4:
            raise ValueError("need n >= 4")
        piv = _leftmost_pivot_pair(matrix)
        if piv is None:
            raise RankDeficientError("matrix has rank below 2")
        block = matrix.take_columns(piv)
        if block != RatMatrix.identity(2):
            raise ValueError("matrix is not in canonical reduced form; use reduce_point")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "pivot_cols", piv)

    def __setattr__(self, name, value):
        raise AttributeError("GrPoint is immutable")

    def column(self, rho: int) -> tuple[Fraction, Fraction]:
        """Column rho (1-based) as the coordinate pair of the section."""
        if not (1 <= rho <= self.n):
            raise IndexError(rho)
        return (self.matrix[0, rho - 1], self.matrix[1, rho - 1])

    def __eq__(self, other) -> bool:
        if isinstance(other, GrPoint):
            return self.matrix == other.matrix
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"GrPoint(n={self.n}, pivots={self.pivot_cols})"

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": self.matrix.to_json()["entries"]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "GrPoint":
        m = RatMatrix(obj["matrix"])
        if "n" in obj and obj["n"] != m.cols:
            raise ValueError("declared n does not match the matrix")
        return reduce_point(m)


def _leftmost_pivot_pair(m: RatMatrix) -> tuple[int, int] | None:
    c1 = None
    for j in range(m.cols):
        if m[0, j] or m[1, j]:
            c1 = j
            break
    if c1 is None:
        return None
    for j in range(c1 + 1, m.cols):
        det = m[0, c1] * m[1, j] - m[1, c1] * m[0, j]
        if det:
            return (c1, j)
    return None


def reduce_point(m: RatMatrix) -> GrPoint:
    """Canonicalize a full-rank 2 x n matrix by the left GL(2) action.

    The unique row-equivalent matrix carrying the identity at the
    leftmost independent column pair is returned; the map is idempotent
    and invariant under invertible row operations.
    """
    if m.rows != 2:
        raise ValueError("a point is a 2 x n matrix")
    piv = _leftmost_pivot_pair(m)
    if piv is None:
        raise RankDeficientError("matrix has rank below 2")
    block = m.take_columns(piv)
    return GrPoint(block.invert() * m)


def f_matrix(k: int, x: Sequence) -> RatMatrix:
    """The (k+1) x k matrix of the symmetric-append map on a fiber of
    dimension k, for a section with coordinates x = (x1, x2):
    x1 on the diagonal, x2 on the subdiagonal."""
    if k < 1:
        raise ValueError("fiber dimension must be at least 1")
    x1, x2 = (rat(v) for v in x)
    zero = Fraction(0)
    rows = []
    for u in range(k + 1):
        row = [zero] * k
        if u < k:
            row[u] = x1
        if u >= 1:
            row[u - 1] = x2
        rows.append(row)
    return RatMatrix(rows)


def g_matrix(k: int, x: Sequence) -> RatMatrix:
    """The (k-1) x k matrix of the wedge-pairing map on a fiber of
    dimension k >= 2: row u carries -(k-u) x2 on the diagonal and u x1
    on the superdiagonal (1-based)."""
    if k < 2:
        raise InvalidRankError("wedge-pairing map needs fiber dimension >= 2")
    x1, x2 = (rat(v) for v in x)
    zero = Fraction(0)
    rows = []
    for u in range(1, k):
        row = [zero] * k
        row[u - 1] = -(k - u) * x2
        row[u] = u * x1
        rows.append(row)
    return RatMatrix(rows)


class FiberTensor:
    """An element of the fiber at a two-row weight, in normal form.

    Terms live over the monomial basis indexed by j = 0 .. lam1 - lam2,
    where j counts the b2 factors of the symmetric part.  Wedge factors
    are expanded immediately, so the exchange relations hold by
    construction.
    """

    __slots__ = ("lam", "terms")

    def __init__(self, lam, terms: FormalLinComb | Mapping = ()):
        lam = Partition.coerce(lam)
        if lam.num_rows > 2:
            raise ValueError("two-row weights only")
        if not isinstance(terms, FormalLinComb):
            terms = FormalLinComb(terms)
        top = lam.part(0) - lam.part(1)
        for j in terms.keys():
            if not (0 <= j <= top):
                raise ValueError(f"basis index {j} out of range for {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("FiberTensor is immutable")

    @classmethod
    def basis(cls, lam, j: int) -> "FiberTensor":
        return cls(lam, FormalLinComb.term(j))

    def dim(self) -> int:
        return fiber_dim(self.lam)

    def coeff(self, j: int) -> Fraction:
        return self.terms.coeff(j)

    def as_vector(self) -> RatMatrix:
        return RatMatrix.column([self.terms.coeff(j) for j in range(self.dim())])

    def __eq__(self, other) -> bool:
        if isinstance(other, FiberTensor):
            return self.lam == other.lam and self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"p[{j}]*{rat_to_json(c)}" for j, c in sorted(self.terms.items()))
        return f"FiberTensor({self.lam.parts}: {body or '0'})"


def section_apply(kind: str, lam, rho: int, y: GrPoint, t: FiberTensor) -> FiberTensor:
    """Apply the elementary map of the given kind ('f' or 'g') for column
    rho of the point to a fiber element at lam, symbolically.

    'f' appends the section to the symmetric part of each monomial; 'g'
    sums over ways of pairing one symmetric variable with the section
    into a new wedge factor, which is then expanded over the fiber
    basis.  Both derive the matrix entries from the definitions rather
    than from the banded formulas.
    """
    lam = Partition.coerce(lam)
    if t.lam != lam:
        raise ValueError("fiber element is not at the given weight")
    if kind not in ("f", "g"):
        raise ValueError("kind must be 'f' or 'g'")
    step = (1, 0) if kind == "f" else (0, 1)
    l1, l2 = lam.padded(2)
    target = (l1 + step[0], l2 + step[1])
    if target[0] < target[1] or not in_young(Partition(target), y.n) or not in_young(lam, y.n):
        raise OutOfYoungError(f"{lam.parts} -> {target} leaves the weight staircase")
    x1, x2 = y.column(rho)
    top = l1 - l2
    out: dict[int, Fraction] = {}

    def bump(j: int, c: Fraction):
        if c:
            out[j] = out.get(j, Fraction(0)) + c

    for j, c in t.terms.items():
        a = top - j  # b1 exponent of the monomial
        if kind == "f":
            # (b1^a b2^j) * (x1 b1 + x2 b2)
            bump(j, c * x1)
            bump(j + 1, c * x2)
        else:
            # pair each symmetric variable with the section:
            #   b1 ^ (x1 b1 + x2 b2) = -x2 (b2 ^ b1),  a choices
            #   b2 ^ (x1 b1 + x2 b2) = +x1 (b2 ^ b1),  j choices
            bump(j, -c * a * x2)
            bump(j - 1, c * j * x1)
    return FiberTensor(Partition(target), FormalLinComb(out.items()))


def section_matrix(kind: str, lam, rho: int, y: GrPoint) -> RatMatrix:
    """Assemble the matrix of the elementary map column by column from
    section_apply; the independent oracle for f_matrix / g_matrix."""
    lam = Partition.coerce(lam)
    k = fiber_dim(lam)
    cols = [section_apply(kind, lam, rho, y, FiberTensor.basis(lam, j)).as_vector() for j in range(k)]
    return RatMatrix.hstack(cols)


def staircase(lam, mu) -> list[Partition]:
    """The unique increasing weight path from lam to mu through
    (mu1, lam2): all horizontal steps first, then all vertical steps."""
    lam, mu = Partition.coerce(lam), Partition.coerce(mu)
    if not (mu.contains(lam) and mu != lam):
        raise NotContainedError(f"{lam.parts} is not strictly contained in {mu.parts}")
    l1, l2 = lam.padded(2)
    u1, u2 = mu.padded(2)
    seq = [Partition((l1 + k, l2)) for k in range(u1 - l1 + 1)]
    seq += [Partition((u1, l2 + k)) for k in range(1, u2 - l2 + 1)]
    return seq


def theta_compose(lam, mu, word: Sequence[int], y: GrPoint) -> RatMatrix:
    """Product of the banded matrices along the staircase from lam to mu,
    one column index per step, consumed left to right (first letters feed
    the horizontal steps).  Shape: fiber dim at mu by fiber dim at lam."""
    lam, mu = Partition.coerce(lam), Partition.coerce(mu)
    if not (in_young(lam, y.n) and in_young(mu, y.n)):
        raise OutOfYoungError("weights must lie in the ambient staircase")
    seq = staircase(lam, mu)
    if len(word) != len(seq) - 1:
        raise BadWordLengthError(f"need {len(seq) - 1} columns, got {len(word)}")
    result = RatMatrix.identity(fiber_dim(lam))
    for tau, nxt, rho in zip(seq, seq[1:], word):
        k = fiber_dim(tau)
        x = y.column(rho)
        step = f_matrix(k, x) if nxt.part(0) > tau.part(0) else g_matrix(k, x)
        result = step * result
    return result


def sample_point(n: int, seed, bound: int = 9) -> GrPoint:
    """Deterministic canonical point with small integer coordinates,
    for evaluation-rank sweeps (integer arithmetic keeps them fast)."""
    rng = random.Random(f"sample:{n}:{seed}")
    rows = [[0] * n, [0] * n]
    rows[0][0] = rows[1][1] = 1
    for j in range(2, n):
        for i in range(2):
            rows[i][j] = rng.randint(-bound, bound)
    return GrPoint(RatMatrix(rows))


def _insert_int_row(echelon: list[tuple[int, list[int]]], row: list[int]) -> bool:
    """Reduce an integer row against an echelon (sorted by pivot) and add
    it when independent; exact over the rationals since rows are only
    ever rescaled."""
    for p, prow in echelon:
        v = row[p]
        if v:
            lead = prow[p]
            row = [lead * x - v * y for x, y in zip(row, prow)]
            g = 0
            for x in row:
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                row = [x // g for x in row]
    pivot = next((i for i, x in enumerate(row) if x), None)
    if pivot is None:
        return False
    echelon.append((pivot, row))
    echelon.sort(key=lambda t: t[0])
    return True


def surjectivity_rank(n: int, lam, mu, samples: int, seed) -> dict:
    """Evaluation rank of the staircase composition map.

    Stacks the entries of the composed matrices over all column words
    and `samples` seeded points, and compares the rank of the resulting
    word-space-to-entries map with the total dimension of the target
    constituents.  Equality certifies that compositions of elementary
    maps span the whole graded piece.
    """
    lam, mu = Partition.coerce(lam), Partition.coerce(mu)
    seq = staircase(lam, mu)
    length = len(seq) - 1
    n_words = n**length
    points = [sample_point(n, f"{seed}:{s}") for s in range(samples)]
    d_mu, d_lam = fiber_dim(mu), fiber_dim(lam)

    # theta matrices for every word, sharing products over common prefixes
    thetas: list[list[RatMatrix]] = [[] for _ in points]

    def descend(level: int, partials: list[RatMatrix]):
        if level == length:
            for s, m in enumerate(partials):
                thetas[s].append(m)
            return
        tau, nxt = seq[level], seq[level + 1]
        k = fiber_dim(tau)
        horizontal = nxt.part(0) > tau.part(0)
        for rho in range(1, n + 1):
            steps = [
                f_matrix(k, y.column(rho)) if horizontal else g_matrix(k, y.column(rho))
                for y in points
            ]
            descend(level + 1, [st * m for st, m in zip(steps, partials)])

    descend(0, [RatMatrix.identity(d_lam) for _ in points])

    echelon: list[tuple[int, list[int]]] = []
    rank = 0
    for s in range(len(points)):
        for i in range(d_mu):
            for j in range(d_lam):
                row = [int(thetas[s][w][i, j]) for w in range(n_words)]
                if any(row) and _insert_int_row(echelon, row):
                    rank += 1
        if rank == n_words:
            break
    expected = hom_dim(lam, mu, n)
    return {
        "lam": list(lam.padded(2)),
        "mu": list(mu.padded(2)),
        "words": n_words,
        "samples": samples,
        "rank": rank,
        "hom_dim": expected,
        "ok": rank == expected,
    }
