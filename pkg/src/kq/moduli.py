"""Quiver representations attached to points of Gr(n,2).

A representation assigns to every arrow of the tilting quiver a rational
matrix of the shape forced by the vertex dimensions (the fiber dimension
lam1 - lam2 + 1 at each weight lam).  A point embeds by placing the two
banded matrices on the arrows; stability of a representation is the
full-rank condition on the concatenated incoming matrices at every
non-source vertex, and the relation families must evaluate to zero.

Reconstruction inverts the embedding: given any stable representation
satisfying the relations, a single sweep through the vertices in degree
order normalizes the per-vertex bases.  The point is read off the
incoming matrices at the first weight; at every later vertex the actual
incoming concatenation differs from the canonical one by a left factor,
which is solved from the leftmost invertible column block and undone.
The sweep both recovers the point and certifies membership in the image
(exact equality of every normalized matrix with the canonical one).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .fibers import GrPoint, f_matrix, g_matrix, reduce_point
from .linalg import RatMatrix, SingularMatrixError
from .quiver import Arrow, Path, RelationElement, build_quiver, relation_sets, vertex_key

SOURCE = (0, 0)


class SingularGaugeError(ValueError):
    """A per-vertex change of basis must be invertible."""


class NotStableError(ValueError):
    """Some concatenated incoming matrix fails the full-rank test."""


class RelationsViolatedError(ValueError):
    """Some relation family does not evaluate to zero."""


class NotInImageError(ValueError):
    """A stable relation-satisfying input could not be normalized onto an
    embedded point (should not happen for genuine moduli points)."""


class SourceVertexError(ValueError):
    """The source vertex has no incoming arrows to assemble."""


class QuiverRep:
    """Matrices on every arrow of the tilting quiver for Gr(n,2)."""

    def __init__(self, n: int, matrices: Mapping[Arrow, RatMatrix]):
        q = build_quiver(n)
        mats = {}
        for a in q.arrows:
            m = matrices.get(a)
            if m is None:
                raise ValueError(f"missing matrix for {a}")
            k = q.vertex_dim(a.tail)
            expect = (k + 1, k) if a.direction == 1 else (k - 1, k)
            if m.shape != expect:
                raise ValueError(f"matrix for {a} has shape {m.shape}, expected {expect}")
            mats[a] = m
        self.n = n
        self.quiver = q
        self.matrices = mats

    def matrix(self, a: Arrow) -> RatMatrix:
        return self.matrices[a]

    def path_matrix(self, p: Path) -> RatMatrix:
        """Product of the arrow matrices, rightmost factor first."""
        if not p.arrows:
            raise ValueError("empty path has no endpoint data")
        m = self.matrices[p.arrows[0]]
        for a in p.arrows[1:]:
            m = self.matrices[a] * m
        return m

    def __eq__(self, other) -> bool:
        if isinstance(other, QuiverRep):
            return self.n == other.n and self.matrices == other.matrices
        return NotImplemented

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "arrows": [dict(a.to_json(), matrix=self.matrices[a].to_json()) for a in self.quiver.arrows],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "QuiverRep":
        n = int(obj["n"])
        q = build_quiver(n)
        mats = {}
        for rec in obj["arrows"]:
            tail = tuple(rec["tail"])
            head = tuple(rec["head"])
            direction = 1 if head[0] == tail[0] + 1 else 2
            a = Arrow(tail, head, direction, int(rec["rho"]))
            mats[a] = RatMatrix.from_json(rec["matrix"])
        return cls(n, mats)


class GaugeElement:
    """An invertible change of basis at every vertex."""

    def __init__(self, n: int, blocks: Mapping[tuple[int, int], RatMatrix]):
        q = build_quiver(n)
        out = {}
        for v in q.vertices:
            b = blocks.get(v)
            if b is None:
                raise ValueError(f"missing block at {v}")
            d = q.vertex_dim(v)
            if b.shape != (d, d):
                raise ValueError(f"block at {v} has shape {b.shape}, expected {(d, d)}")
            if b.rank() < d:
                raise SingularGaugeError(f"block at {v} is singular")
            out[v] = b
        self.n = n
        self.blocks = out

    @classmethod
    def identity(cls, n: int) -> "GaugeElement":
        q = build_quiver(n)
        return cls(n, {v: RatMatrix.identity(q.vertex_dim(v)) for v in q.vertices})

    def inverse(self) -> "GaugeElement":
        return GaugeElement(self.n, {v: b.invert() for v, b in self.blocks.items()})

    def compose(self, other: "GaugeElement") -> "GaugeElement":
        """The gauge acting as `self` after `other`."""
        if self.n != other.n:
            raise ValueError("sizes differ")
        return GaugeElement(self.n, {v: self.blocks[v] * other.blocks[v] for v in self.blocks})

    def __eq__(self, other) -> bool:
        if isinstance(other, GaugeElement):
            return self.n == other.n and self.blocks == other.blocks
        return NotImplemented

    def to_json(self) -> dict:
        q = build_quiver(self.n)
        return {
            "n": self.n,
            "blocks": [{"vertex": list(v), "matrix": self.blocks[v].to_json()} for v in q.vertices],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GaugeElement":
        n = int(obj["n"])
        return cls(n, {tuple(rec["vertex"]): RatMatrix.from_json(rec["matrix"]) for rec in obj["blocks"]})


@dataclass(frozen=True)
class VertexStability:
    vertex: tuple[int, int]
    expected_dim: int
    shape: tuple[int, int]
    rank: int
    ok: bool

    def to_json(self) -> dict:
        return {
            "vertex": list(self.vertex),
            "expected_dim": self.expected_dim,
            "shape": list(self.shape),
            "rank": self.rank,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class StabilityReport:
    entries: tuple[VertexStability, ...]
    ok: bool

    def to_json(self) -> dict:
        return {"vertices": [e.to_json() for e in self.entries], "ok": self.ok}


@dataclass(frozen=True)
class RelationViolation:
    relation: RelationElement
    residual: RatMatrix

    def to_json(self) -> dict:
        return {"relation": self.relation.to_json(), "residual": self.residual.to_json()}


def embed(y: GrPoint) -> QuiverRep:
    """The representation of a point: the banded append matrix on every
    horizontal arrow and the banded wedge-pairing matrix on every
    vertical arrow, fed by the arrow's column of the point."""
    q = build_quiver(y.n)
    mats = {}
    for a in q.arrows:
        k = q.vertex_dim(a.tail)
        x = y.column(a.rho)
        mats[a] = f_matrix(k, x) if a.direction == 1 else g_matrix(k, x)
    return QuiverRep(y.n, mats)


def assemble_W(rep: QuiverRep, v) -> RatMatrix:
    """Concatenate the matrices of all arrows with head at v: horizontal
    blocks first (column index ascending), then vertical blocks."""
    v = tuple(v)
    incoming = rep.quiver.arrows_into(v)
    if not incoming:
        raise SourceVertexError(f"{v} has no incoming arrows")
    ordered = sorted(incoming, key=lambda a: (a.direction, a.rho))
    return RatMatrix.hstack([rep.matrices[a] for a in ordered])


def check_stability(rep: QuiverRep) -> StabilityReport:
    """Full-rank test of the assembled incoming matrix at every
    non-source vertex; failures are report entries, not exceptions."""
    entries = []
    for v in rep.quiver.vertices:
        if v == SOURCE:
            continue
        w = assemble_W(rep, v)
        d = rep.quiver.vertex_dim(v)
        r = w.rank()
        entries.append(VertexStability(v, d, w.shape, r, r == d))
    return StabilityReport(tuple(entries), all(e.ok for e in entries))


def evaluate_relation(rep: QuiverRep, rel: RelationElement) -> RatMatrix:
    """The matrix value of a relation element on the representation."""
    d_head = rep.quiver.vertex_dim(rel.head)
    d_tail = rep.quiver.vertex_dim(rel.tail)
    acc = RatMatrix.zeros(d_head, d_tail)
    for p, c in rel.terms.items():
        acc = acc + rep.path_matrix(p).scale(c)
    return acc


def check_relations(rep: QuiverRep) -> list[RelationViolation]:
    """Evaluate every relation family; return the nonzero residuals."""
    out = []
    for rel in relation_sets(rep.quiver):
        residual = evaluate_relation(rep, rel)
        if not residual.is_zero():
            out.append(RelationViolation(rel, residual))
    return out


def scramble(rep: QuiverRep, g: GaugeElement) -> QuiverRep:
    """Change basis at every vertex: each arrow matrix M becomes
    g_head M g_tail^{-1}.  Stability ranks and relation satisfaction
    are preserved."""
    if g.n != rep.n:
        raise ValueError("sizes differ")
    inv = {v: b.invert() for v, b in g.blocks.items()}
    mats = {a: g.blocks[a.head] * m * inv[a.tail] for a, m in rep.matrices.items()}
    return QuiverRep(rep.n, mats)


def _leftmost_invertible_block(m: RatMatrix) -> list[int]:
    """Greedy leftmost column set carrying an invertible square block."""
    d = m.rows
    chosen: list[int] = []
    rank = 0
    for j in range(m.cols):
        trial = chosen + [j]
        if m.take_columns(trial).rank() > rank:
            chosen = trial
            rank += 1
            if rank == d:
                return chosen
    return chosen


def reconstruct(rep: QuiverRep) -> tuple[GrPoint, GaugeElement]:
    """Recover the point and the gauge from a stable relation-satisfying
    representation, so that scramble(embed(point), gauge) == rep exactly.

    Sweep: the incoming matrix at the first weight is canonicalized to
    read off the point; every later vertex (in degree order, so tails
    are already normalized) differs from the canonical embedding by a
    left factor, solved from the leftmost invertible column block of the
    canonical incoming matrix.  After its correction a vertex must match
    the canonical matrices exactly; any mismatch means the input is not
    a point of the moduli space.
    """
    violations = check_relations(rep)
    if violations:
        raise RelationsViolatedError(f"{len(violations)} relation(s) violated")
    stability = check_stability(rep)
    if not stability.ok:
        bad = [e.vertex for e in stability.entries if not e.ok]
        raise NotStableError(f"rank-deficient at {bad}")

    q = rep.quiver
    work = dict(rep.matrices)
    corrections: dict[tuple[int, int], RatMatrix] = {SOURCE: RatMatrix.identity(1)}

    def apply_correction(v: tuple[int, int], c: RatMatrix):
        corrections[v] = c
        c_inv = c.invert()
        for a in q.arrows_into(v):
            work[a] = c * work[a]
        for a in q.arrows_from(v):
            work[a] = work[a] * c_inv

    def assembled(v: tuple[int, int]) -> RatMatrix:
        ordered = sorted(q.arrows_into(v), key=lambda a: (a.direction, a.rho))
        return RatMatrix.hstack([work[a] for a in ordered])

    first = (1, 0)
    w_first = assembled(first)
    point = reduce_point(w_first)
    pivot_block = w_first.take_columns(point.pivot_cols)
    apply_correction(first, pivot_block.invert())

    canonical = embed(point)
    for v in sorted(q.vertices, key=vertex_key):
        if v in corrections:
            continue
        ordered = sorted(q.arrows_into(v), key=lambda a: (a.direction, a.rho))
        canon = RatMatrix.hstack([canonical.matrices[a] for a in ordered])
        actual = assembled(v)
        cols = _leftmost_invertible_block(canon)
        b_canon = canon.take_columns(cols)
        b_actual = actual.take_columns(cols)
        try:
            factor = b_actual * b_canon.invert()
            apply_correction(v, factor.invert())
        except SingularMatrixError as exc:
            raise NotInImageError(f"no invertible block match at {v}") from exc
        if assembled(v) != canon:
            raise NotInImageError(f"normalized matrices at {v} do not match the embedding")

    for a in q.arrows:
        if work[a] != canonical.matrices[a]:
            raise NotInImageError(f"normalized matrix at {a} does not match the embedding")

    gauge = GaugeElement(rep.n, {v: corrections[v].invert() for v in q.vertices})
    return point, gauge


def random_point(n: int, seed) -> GrPoint:
    """Deterministic canonical point: identity in the first two columns,
    entries p/q with |p| <= 99 and 1 <= q <= 99 elsewhere."""
    if n < 4:
        raise ValueError("need n >= 4")
    rng = random.Random(f"point:{n}:{seed}")
    rows = [[0] * n, [0] * n]
    rows[0][0] = rows[1][1] = 1
    for j in range(2, n):
        for i in range(2):
            rows[i][j] = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
    return GrPoint(RatMatrix(rows))


def random_gauge(n: int, seed) -> GaugeElement:
    """Deterministic invertible change of basis at every vertex; singular
    draws are resampled."""
    q = build_quiver(n)
    rng = random.Random(f"gauge:{n}:{seed}")
    blocks = {}
    for v in q.vertices:
        d = q.vertex_dim(v)
        while True:
            b = RatMatrix([[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)])
            if b.rank() == d:
                blocks[v] = b
                break
    return GaugeElement(n, blocks)
