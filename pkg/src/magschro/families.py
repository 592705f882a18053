"""Built-in graph families, finite and infinite, driven by weight expressions.

A family spec names a shape (``path-nat``, ``path``, ``cycle``, ``star``,
``binary-tree``) and supplies expressions in the vertex index ``n`` for the
vertex weight ``w``, the edge weight ``a``, the potential ``W`` and the
minorant ``q``.  Finite shapes are materialized as explicit graphs; the
half-line ``path-nat`` stays lazy and is only ever explored through metric
or hop windows.

Edge weights are indexed by the smaller endpoint of an edge, so on a path
``a(n)`` is the weight of the edge between ``n`` and ``n + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import GraphStructureError, InputError, UnknownVertexError
from .exprlang import compile_text
from .graphs import EdgeData, ExplicitGraph, OrientedEdge, VertexData, WeightedGraph

_RECORD_CACHE_CAP = 1 << 17


@dataclass(frozen=True)
class FamilySpec:
    family: str
    size: Optional[int] = None
    w: str = "1"
    a: str = "1"
    W: str = "0"
    q: str = "1"


class PathRayGraph(WeightedGraph):
    """Lazy half-line graph on the positive integers with edges n ~ n + 1."""

    degree_bound = 2
    is_finite = False
    #: the metric along the unique ray reduces to a one-dimensional series,
    #: which completeness diagnostics can classify exactly
    is_metric_ray = True

    def __init__(self, spec: FamilySpec):
        super().__init__()
        self.spec = spec
        self._w = compile_text(spec.w)
        self._a = compile_text(spec.a)
        self._W = compile_text(spec.W)
        self._q = compile_text(spec.q)
        self._records = {}
        self._edge_weights = {}
        self._sample_check()

    def _sample_check(self):
        samples = list(range(1, 33)) + [1 << k for k in range(6, 21)]
        for n in samples:
            w, q, a = self._w(n), self._q(n), self._a(n)
            if not w > 0:
                raise InputError(f"family {self.spec.family!r}: w({n}) = {w} is not positive")
            if q < 1:
                raise InputError(f"family {self.spec.family!r}: q({n}) = {q} is below 1")
            if not a > 0:
                raise InputError(f"family {self.spec.family!r}: a({n}) = {a} is not positive")

    def has_vertex(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 1

    def vertex(self, x) -> VertexData:
        rec = self._records.get(x)
        if rec is not None:
            return rec
        if not self.has_vertex(x):
            raise UnknownVertexError(x)
        w, q = self._w(x), self._q(x)
        if not w > 0:
            raise GraphStructureError(f"w({x}) = {w} is not positive")
        if q < 1:
            raise GraphStructureError(f"q({x}) = {q} is below 1")
        rec = VertexData(w, self._W(x), q)
        if len(self._records) >= _RECORD_CACHE_CAP:
            self._records.clear()
        self._records[x] = rec
        return rec

    def _edge_weight(self, lo: int) -> float:
        a = self._edge_weights.get(lo)
        if a is None:
            a = self._a(lo)
            if not a > 0:
                raise GraphStructureError(f"a({lo}) = {a} is not positive")
            if len(self._edge_weights) >= _RECORD_CACHE_CAP:
                self._edge_weights.clear()
            self._edge_weights[lo] = a
        return a

    def neighbors(self, x):
        if not self.has_vertex(x):
            raise UnknownVertexError(x)
        out = []
        if x > 1:
            out.append((OrientedEdge(x, x - 1), EdgeData(self._edge_weight(x - 1), 1.0)))
        out.append((OrientedEdge(x, x + 1), EdgeData(self._edge_weight(x), 1.0)))
        return out

    def edge_data(self, e) -> EdgeData:
        o, t = e
        if not (self.has_vertex(o) and self.has_vertex(t) and abs(o - t) == 1):
            raise InputError(f"no edge {o!r} -> {t!r}")
        return EdgeData(self._edge_weight(min(o, t)), 1.0)


def _finite_family(spec: FamilySpec) -> ExplicitGraph:
    size = spec.size
    if size is None:
        raise InputError(f"family {spec.family!r} requires a size")
    minimum = {"path": 2, "cycle": 3, "star": 2, "binary-tree": 2}[spec.family]
    if size < minimum:
        raise InputError(f"family {spec.family!r} requires size >= {minimum}")

    w = compile_text(spec.w)
    a = compile_text(spec.a)
    W = compile_text(spec.W)
    q = compile_text(spec.q)

    if spec.family == "path":
        pairs = [(n, n + 1) for n in range(1, size)]
    elif spec.family == "cycle":
        pairs = [(n, n + 1) for n in range(1, size)] + [(1, size)]
    elif spec.family == "star":
        pairs = [(1, leaf) for leaf in range(2, size + 1)]
    else:  # binary-tree, heap-shaped ids
        pairs = [(k, child) for k in range(1, size + 1)
                 for child in (2 * k, 2 * k + 1) if child <= size]

    vertices = {}
    for n in range(1, size + 1):
        wn, qn = w(n), q(n)
        if not wn > 0:
            raise InputError(f"family {spec.family!r}: w({n}) = {wn} is not positive")
        if qn < 1:
            raise InputError(f"family {spec.family!r}: q({n}) = {qn} is below 1")
        vertices[n] = VertexData(wn, W(n), qn)
    edges = {}
    for (u, v) in pairs:
        an = a(min(u, v))
        if not an > 0:
            raise InputError(f"family {spec.family!r}: a({min(u, v)}) = {an} is not positive")
        edges[(u, v)] = EdgeData(an, 1.0)
    return ExplicitGraph(vertices, edges)


def make_family(spec) -> WeightedGraph:
    """Build a graph from a family spec (or an equivalent mapping)."""
    if isinstance(spec, Mapping):
        spec = FamilySpec(**spec)
    if spec.family == "path-nat":
        return PathRayGraph(spec)
    if spec.family in ("path", "cycle", "star", "binary-tree"):
        return _finite_family(spec)
    raise InputError(f"unknown family {spec.family!r}")


def quadratic_well_ray() -> PathRayGraph:
    """Half-line with unit weights, W(n) = -n^2 and minorant q(n) = n^2.

    The minorant-weighted metric accumulates edge lengths 1/(n + 1), a
    divergent series, so the space is metrically complete even though the
    potential makes the operator unbounded below.  This is the package's
    built-in reference scenario.
    """
    return PathRayGraph(FamilySpec("path-nat", w="1", a="1", W="-(n^2)", q="n^2"))
