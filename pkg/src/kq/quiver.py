"""The tilting quiver of Gr(n,2), its relation ideal, and graded dimensions.

Vertices are the two-row weights fitting in the (n-2) x 2 staircase; for
every pair (lam, lam + e_i) of adjacent vertices there are n parallel
arrows, one per column index.  The relation ideal is generated in path
degree two by four coefficient families (commuting horizontal pairs,
commuting vertical pairs, anticommuting pairs through a diagonal vertex,
and a three-term exchange around each square).  Graded slices of the
ideal are computed by exact sparse elimination over the monomial path
basis, extending lower-degree slices one arrow at a time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

from .linalg import rat, rat_to_json
from .tableaux import Partition, hom_dim

DEFAULT_MAX_PATHS = 10**6


class BadNError(ValueError):
    """The construction is defined for n >= 4 only."""


class PathSpaceTooLargeError(RuntimeError):
    """A graded path space exceeds the configured size guardrail."""


def max_paths_limit() -> int:
    raw = os.environ.get("KQ_MAX_PATHS")
    if raw is None:
        return DEFAULT_MAX_PATHS
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"KQ_MAX_PATHS must be an integer, got {raw!r}") from exc


@dataclass(frozen=True, order=True)
class Arrow:
    """One of the n parallel arrows lam -> lam + e_direction."""

    tail: tuple[int, int]
    head: tuple[int, int]
    direction: int  # 1 horizontal, 2 vertical
    rho: int  # column index, 1-based

    def __post_init__(self):
        expect = list(self.tail)
        expect[self.direction - 1] += 1
        if tuple(expect) != self.head:
            raise ValueError("head must be tail + e_direction")

    def to_json(self) -> dict:
        return {"tail": list(self.tail), "head": list(self.head), "rho": self.rho}


def vertex_key(v: tuple[int, int]) -> tuple[int, int]:
    """Sort key for vertices: total boxes, then second row."""
    return (v[0] + v[1], v[1])


class Path:
    """A composable sequence of arrows, stored tail first.

    Consecutive arrows satisfy head(arrows[t]) = tail(arrows[t+1]); the
    algebraic composition convention is right to left, i.e. arrows[0] is
    the rightmost factor of the product.
    """

    __slots__ = ("arrows",)

    def __init__(self, arrows: Iterable[Arrow] = ()):
        arrows = tuple(arrows)
        for a, b in zip(arrows, arrows[1:]):
            if a.head != b.tail:
                raise ValueError("arrows do not compose")
        object.__setattr__(self, "arrows", arrows)

    def __setattr__(self, name, value):
        raise AttributeError("Path is immutable")

    @property
    def tail(self) -> tuple[int, int] | None:
        return self.arrows[0].tail if self.arrows else None

    @property
    def head(self) -> tuple[int, int] | None:
        return self.arrows[-1].head if self.arrows else None

    def __len__(self) -> int:
        return len(self.arrows)

    def extend_left(self, a: Arrow) -> "Path":
        """Postcompose with an arrow at the head."""
        return Path(self.arrows + (a,))

    def extend_right(self, a: Arrow) -> "Path":
        """Precompose with an arrow at the tail."""
        return Path((a,) + self.arrows)

    def __eq__(self, other) -> bool:
        if isinstance(other, Path):
            return self.arrows == other.arrows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.arrows)

    def __repr__(self) -> str:
        if not self.arrows:
            return "Path(e)"
        legs = [f"{'f' if a.direction == 1 else 'g'}{a.rho}@{a.tail}" for a in self.arrows]
        return "Path(" + " then ".join(legs) + ")"

    def to_json(self) -> dict:
        return {"order": "right_to_left", "arrows": [a.to_json() for a in self.arrows]}


class RelationElement:
    """A rational combination of parallel paths that maps to zero."""

    __slots__ = ("tail", "head", "terms", "family", "indices")

    def __init__(self, tail, head, terms: Mapping[Path, Fraction], family: str = "", indices=()):
        tail, head = tuple(tail), tuple(head)
        clean = {}
        for p, c in terms.items():
            if p.tail != tail or p.head != head:
                raise ValueError("all paths must share the relation's endpoints")
            c = rat(c)
            if c:
                clean[p] = c
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "indices", tuple(indices))

    def __setattr__(self, name, value):
        raise AttributeError("RelationElement is immutable")

    def __repr__(self) -> str:
        return f"RelationElement({self.family}{self.indices} {self.tail}->{self.head}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {
            "tail": list(self.tail),
            "head": list(self.head),
            "family": self.family,
            "indices": list(self.indices),
            "terms": [
                {"coeff": rat_to_json(c), "path": p.to_json()}
                for p, c in sorted(self.terms.items(), key=lambda kv: kv[0].arrows)
            ],
        }


class TiltingQuiver:
    """The quiver with two-row staircase vertices and n parallel arrows
    between each adjacent pair."""

    def __init__(self, n: int):
        if n < 4:
            raise BadNError("need n >= 4")
        self.n = n
        cols = n - 2
        self.vertices = sorted(
            ((a, b) for a in range(cols + 1) for b in range(a + 1)), key=vertex_key
        )
        vset = set(self.vertices)
        arrows = []
        for v in self.vertices:
            for direction in (1, 2):
                head = (v[0] + 1, v[1]) if direction == 1 else (v[0], v[1] + 1)
                if head[0] >= head[1] and head in vset:
                    for rho in range(1, n + 1):
                        arrows.append(Arrow(v, head, direction, rho))
        arrows.sort(key=lambda a: (vertex_key(a.tail), a.direction, a.rho))
        self.arrows = arrows
        self._out: dict[tuple[int, int], list[Arrow]] = {v: [] for v in self.vertices}
        self._in: dict[tuple[int, int], list[Arrow]] = {v: [] for v in self.vertices}
        for a in arrows:
            self._out[a.tail].append(a)
            self._in[a.head].append(a)
        self._ideal_cache: dict = {}

    def arrows_from(self, v) -> list[Arrow]:
        return self._out[tuple(v)]

    def arrows_into(self, v) -> list[Arrow]:
        return self._in[tuple(v)]

    def arrow(self, tail, direction: int, rho: int) -> Arrow:
        tail = tuple(tail)
        head = (tail[0] + 1, tail[1]) if direction == 1 else (tail[0], tail[1] + 1)
        return Arrow(tail, head, direction, rho)

    def vertex_dim(self, v) -> int:
        v = tuple(v)
        return v[0] - v[1] + 1

    def has_vertex(self, v) -> bool:
        return tuple(v) in self._out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [list(v) for v in self.vertices],
            "dims": [self.vertex_dim(v) for v in self.vertices],
            "arrows": [a.to_json() for a in self.arrows],
        }


@lru_cache(maxsize=None)
def build_quiver(n: int) -> TiltingQuiver:
    return TiltingQuiver(n)


def p2_pairs(q: TiltingQuiver) -> list[tuple[tuple[int, int], tuple[int, int], str]]:
    """Vertex pairs two path steps apart, with their relation family:
    'ff' two horizontal, 'gg' two vertical, 'diag' through a diagonal
    vertex, 'square' around a square."""
    vset = set(q.vertices)
    out = []
    for lam in q.vertices:
        l1, l2 = lam
        candidates = (
            ((l1 + 2, l2), "ff"),
            ((l1, l2 + 2), "gg"),
            ((l1 + 1, l2 + 1), "diag" if l1 == l2 else "square"),
        )
        for mu, fam in candidates:
            if mu[0] >= mu[1] and mu in vset:
                out.append((lam, mu, fam))
    out.sort(key=lambda t: (vertex_key(t[0]), vertex_key(t[1])))
    return out


def square_coefficients(lam) -> tuple[int, int, int]:
    """Coefficients (on: wedge-after-append path, append-after-wedge with
    swapped columns, append-after-wedge) of the square relation at lam."""
    d = lam[0] - lam[1]
    return (d, -(d + 1), 1)


def relation_set_for(q: TiltingQuiver, lam, mu) -> list[RelationElement]:
    """The basis of degree-two relations from lam to mu (empty if the
    pair is not two steps apart)."""
    lam, mu = tuple(lam), tuple(mu)
    fam = None
    for a, b, f in p2_pairs(q):
        if (a, b) == (lam, mu):
            fam = f
            break
    if fam is None:
        return []
    n = q.n
    out = []
    if fam == "ff":
        nu = (lam[0] + 1, lam[1])
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                p_ij = Path((q.arrow(lam, 1, i), q.arrow(nu, 1, j)))
                p_ji = Path((q.arrow(lam, 1, j), q.arrow(nu, 1, i)))
                out.append(RelationElement(lam, mu, {p_ij: 1, p_ji: -1}, fam, (i, j)))
    elif fam == "gg":
        nu = (lam[0], lam[1] + 1)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                p_ij = Path((q.arrow(lam, 2, i), q.arrow(nu, 2, j)))
                p_ji = Path((q.arrow(lam, 2, j), q.arrow(nu, 2, i)))
                out.append(RelationElement(lam, mu, {p_ij: 1, p_ji: -1}, fam, (i, j)))
    elif fam == "diag":
        nu = (lam[0] + 1, lam[1])
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                p_ij = Path((q.arrow(lam, 1, i), q.arrow(nu, 2, j)))
                if i == j:
                    terms = {p_ij: 2}
                else:
                    p_ji = Path((q.arrow(lam, 1, j), q.arrow(nu, 2, i)))
                    terms = {p_ij: 1, p_ji: 1}
                out.append(RelationElement(lam, mu, terms, fam, (i, j)))
    else:
        nu = (lam[0] + 1, lam[1])
        delta = (lam[0], lam[1] + 1)
        c_gf, c_fg_swapped, c_fg = square_coefficients(lam)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                gf = Path((q.arrow(lam, 1, i), q.arrow(nu, 2, j)))
                fg_swapped = Path((q.arrow(lam, 2, j), q.arrow(delta, 1, i)))
                fg = Path((q.arrow(lam, 2, i), q.arrow(delta, 1, j)))
                terms: dict[Path, Fraction] = {}
                for p, c in ((gf, c_gf), (fg_swapped, c_fg_swapped), (fg, c_fg)):
                    terms[p] = terms.get(p, 0) + c
                out.append(RelationElement(lam, mu, terms, fam, (i, j)))
    return out


def relation_sets(q: TiltingQuiver) -> list[RelationElement]:
    """All degree-two relation basis elements of the quiver."""
    out = []
    for lam, mu, _ in p2_pairs(q):
        out.extend(relation_set_for(q, lam, mu))
    return out


def enumerate_routes(q: TiltingQuiver, lam, mu) -> list[tuple[int, ...]]:
    """All direction strings of monotone vertex walks lam -> mu."""
    lam, mu = tuple(lam), tuple(mu)
    if not (q.has_vertex(lam) and q.has_vertex(mu)):
        raise ValueError("endpoints must be quiver vertices")
    routes = []

    def walk(v, trail):
        if v == mu:
            routes.append(tuple(trail))
            return
        for direction, head in ((1, (v[0] + 1, v[1])), (2, (v[0], v[1] + 1))):
            if head[0] <= mu[0] and head[1] <= mu[1] and head[0] >= head[1] and q.has_vertex(head):
                trail.append(direction)
                walk(head, trail)
                trail.pop()

    if mu[0] >= lam[0] and mu[1] >= lam[1]:
        walk(lam, [])
    return routes


def path_count(q: TiltingQuiver, lam, mu) -> int:
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu:
        return 1
    length = (mu[0] - lam[0]) + (mu[1] - lam[1])
    return len(enumerate_routes(q, lam, mu)) * q.n**length


def enumerate_paths(q: TiltingQuiver, lam, mu) -> list[Path]:
    """All monomial paths lam -> mu, grouped by route, columns in
    lexicographic order; subject to the path-space guardrail."""
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu:
        return [Path()]
    count = path_count(q, lam, mu)
    limit = max_paths_limit()
    if count > limit:
        raise PathSpaceTooLargeError(
            f"{count} paths from {lam} to {mu} exceeds the guardrail of {limit}; "
            "set KQ_MAX_PATHS to override"
        )
    out = []
    for route in enumerate_routes(q, lam, mu):
        partial = [([], lam)]
        for direction in route:
            nxt = []
            for arrows, v in partial:
                head = (v[0] + 1, v[1]) if direction == 1 else (v[0], v[1] + 1)
                for rho in range(1, q.n + 1):
                    nxt.append((arrows + [Arrow(v, head, direction, rho)], head))
            partial = nxt
        out.extend(Path(arrows) for arrows, _ in partial)
    return out


class SparseEchelon:
    """Row echelon structure for sparse integer vectors over column
    indices; rows are scale-normalized (content one, positive pivot), so
    the reduction is exact over the rationals."""

    def __init__(self):
        self.pivot_rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def insert(self, vec: Mapping[int, int]) -> bool:
        """Reduce vec against the echelon; add it if independent."""
        v = {c: x for c, x in vec.items() if x}
        steps = 0
        while v:
            p = min(v)
            row = self.pivot_rows.get(p)
            if row is None:
                v = self._normalized(v)
                if v[p] < 0:
                    v = {c: -x for c, x in v.items()}
                self.pivot_rows[p] = v
                return True
            a, b = v[p], row[p]
            v = {c: b * x for c, x in v.items()}
            for c, x in row.items():
                s = v.get(c, 0) - a * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
            steps += 1
            if steps % 8 == 0 and v:
                v = self._normalized(v)  # keep coefficient growth in check
        return False

    @staticmethod
    def _normalized(v: dict[int, int]) -> dict[int, int]:
        g = 0
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return v
        return {c: x // g for c, x in v.items()} if g > 1 else v

    def basis(self) -> list[dict[int, int]]:
        return [self.pivot_rows[p] for p in sorted(self.pivot_rows)]


def _ideal_slice(q: TiltingQuiver, lam, mu) -> tuple[SparseEchelon, list[Path], dict[Path, int]]:
    """Echelon basis of the graded slice of the relation ideal between
    two vertices, over the monomial path basis.

    Built lazily by degree: the degree-two slices are the relation
    bases themselves; longer slices are spanned by lower slices extended
    by a single arrow at the head or at the tail.
    """
    lam, mu = tuple(lam), tuple(mu)
    key = (lam, mu)
    if key in q._ideal_cache:
        return q._ideal_cache[key]
    paths = enumerate_paths(q, lam, mu)
    index = {p: i for i, p in enumerate(paths)}
    ech = SparseEchelon()
    length = (mu[0] - lam[0]) + (mu[1] - lam[1])
    if length == 2:
        for rel in relation_set_for(q, lam, mu):
            vec = {}
            for p, c in rel.terms.items():
                assert c.denominator == 1
                vec[index[p]] = vec.get(index[p], 0) + int(c)
            ech.insert(vec)
    elif length > 2:
        for a in q.arrows_into(mu):
            if not (lam[0] <= a.tail[0] and lam[1] <= a.tail[1]):
                continue
            sub_ech, sub_paths, _ = _ideal_slice(q, lam, a.tail)
            for row in sub_ech.basis():
                ech.insert({index[sub_paths[c].extend_left(a)]: x for c, x in row.items()})
        for a in q.arrows_from(lam):
            if not (a.head[0] <= mu[0] and a.head[1] <= mu[1]):
                continue
            sub_ech, sub_paths, _ = _ideal_slice(q, a.head, mu)
            for row in sub_ech.basis():
                ech.insert({index[sub_paths[c].extend_right(a)]: x for c, x in row.items()})
    q._ideal_cache[key] = (ech, paths, index)
    return q._ideal_cache[key]


def graded_ideal_dim(q: TiltingQuiver, lam, mu) -> int:
    """Dimension of the slice of the relation ideal between two vertices."""
    ech, _, _ = _ideal_slice(q, lam, mu)
    return ech.rank


def graded_ideal_basis(q: TiltingQuiver, lam, mu) -> tuple[list[dict[int, int]], list[Path]]:
    """Echelon basis vectors (sparse, over path indices) and the path list."""
    ech, paths, _ = _ideal_slice(q, lam, mu)
    return ech.basis(), paths


def quotient_dim(q: TiltingQuiver, lam, mu) -> int:
    """Dimension of the path space modulo the relation ideal."""
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu:
        return 1
    return path_count(q, lam, mu) - graded_ideal_dim(q, lam, mu)


def containment_pairs(q: TiltingQuiver, max_degree: int, min_degree: int = 1) -> list[tuple]:
    """All vertex pairs lam < mu with min_degree <= |mu| - |lam| <= max_degree."""
    out = []
    for lam in q.vertices:
        for mu in q.vertices:
            d = (mu[0] - lam[0]) + (mu[1] - lam[1])
            if mu[0] >= lam[0] and mu[1] >= lam[1] and min_degree <= d <= max_degree:
                out.append((lam, mu))
    out.sort(key=lambda t: (vertex_key(t[0]), vertex_key(t[1])))
    return out


def kernel_report(q: TiltingQuiver, lam, mu) -> dict:
    """Compare the quotient of the path space by the relation ideal with
    the dimension of the target space of graded maps."""
    lam, mu = tuple(lam), tuple(mu)
    paths = path_count(q, lam, mu)
    ideal = graded_ideal_dim(q, lam, mu)
    quot = paths - ideal
    hom = hom_dim(Partition(lam), Partition(mu), q.n)
    return {
        "lam": list(lam),
        "mu": list(mu),
        "paths": paths,
        "ideal_dim": ideal,
        "quotient_dim": quot,
        "hom_dim": hom,
        "ok": quot == hom,
    }
