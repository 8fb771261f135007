"""Named matroids and the subspaces, partitions and maps attached to them.

Every matroid here is also available as a JSON spec (``SPECS``), so the CLI
can refer to it as ``@name``.
"""

from __future__ import annotations

from .fields import FieldSpec, Q
from .matroid import Matroid, Partition, uniform
from .specio import build, canonical
from .subspace import Subspace
from .weakmap import WeakMap

FAT_TRIANGLE_EDGES = [[1, 2], [1, 2], [2, 3], [2, 3], [3, 1], [3, 1]]
PYRAMID_EDGES = [[1, 2], [2, 3], [3, 4], [4, 1], [1, 5], [2, 5], [3, 5], [4, 5]]
# K5 with the edges ordered so that the first 7 and first 9 give the two subgraphs of the chain
K5_EDGES = [[3, 2], [2, 4], [5, 4], [3, 5], [3, 1], [1, 4], [2, 5], [5, 1], [1, 2], [3, 4]]
B3_COLUMNS = [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1],
              [1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1]]

SPECS: dict[str, dict] = {
    "fat-triangle": {"kind": "graph", "vertices": 3, "edges": FAT_TRIANGLE_EDGES},
    "x-graph": {"kind": "expr", "op": "dual",
                "args": [{"kind": "graph", "vertices": 3, "edges": FAT_TRIANGLE_EDGES}]},
    "pyramid": {"kind": "graph", "vertices": 5, "edges": PYRAMID_EDGES},
    "pyramid-minus-3": {"kind": "expr", "op": "delete", "elements": [3],
                        "args": [{"kind": "graph", "vertices": 5, "edges": PYRAMID_EDGES}]},
    "k5-7": {"kind": "graph", "vertices": 5, "edges": K5_EDGES[:7]},
    "k5-9": {"kind": "graph", "vertices": 5, "edges": K5_EDGES[:9]},
    "k5": {"kind": "graph", "vertices": 5, "edges": K5_EDGES},
    "b3-doubled": {"kind": "matrix", "field": "Q", "columns": B3_COLUMNS},
    "b3": {"kind": "expr", "op": "simplify",
           "args": [{"kind": "matrix", "field": "Q", "columns": B3_COLUMNS}]},
    "u23": {"kind": "uniform", "rank": 2, "n": 3},
    "u34": {"kind": "uniform", "rank": 3, "n": 4},
    "free4": {"kind": "uniform", "rank": 4, "n": 4},
}
SPECS = {name: canonical(spec) for name, spec in SPECS.items()}


def get(name: str) -> Matroid:
    if name not in SPECS:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(SPECS))}")
    return build(SPECS[name])


def fat_triangle() -> Matroid:
    return get("fat-triangle")


def x_graph() -> Matroid:
    return get("x-graph")


def pyramid() -> Matroid:
    return get("pyramid")


def b3_doubled() -> Matroid:
    return get("b3-doubled")


def uniform_examples() -> list[Matroid]:
    return [uniform(rank, n) for rank, n in ((2, 4), (2, 5), (3, 5), (3, 6))]


FAT_TRIANGLE_R0 = Partition.parse("12|34|56")
X_GRAPH_R2 = [Partition.parse(s) for s in ("1|2|3456", "3|4|1256", "5|6|1234", "12|34|56")]
B3_MULTINET = Partition.parse("1,2,11,12|3,4,9,10|5,6,7,8")
PYRAMID_SIGMA = [5, 6, 7, 8, 4, 1, 2, 3]
PYRAMID_COVER = [(1, 5, 6), (2, 6, 7), (3, 7, 8), (4, 5, 8)]
PYRAMID_COVER_WIDE = [(1, 2, 3, 4), (1, 5, 6), (3, 7, 8)]
# the edge labelling map from the pyramid onto U_{3,4}
PYRAMID_LABELS = [0, 1, 2, 3, 4, 4, 1, 2, 3]
# images of the generators of A(U_{3,4}) under Phi*: sums of three edges
PYRAMID_PHI_GENERATORS = [(2, 5, 8), (3, 5, 6), (4, 6, 7), (1, 7, 8)]


def pyramid_labeling() -> WeakMap:
    return WeakMap(pyramid(), uniform(3, 4), PYRAMID_LABELS)


def _pyramid_w(a, b, c, d):
    return [a, b, c, d, b + c, c + d, d + a, a + b]


def _pyramid_p(a, b, c, d):
    return [c + d, d + a, a + b, b + c, a, b, c, d]


def pyramid_singular(fld: FieldSpec = Q) -> Subspace:
    """{(a,b,c,d,b+c,c+d,d+a,a+b) : a+b+c+d = 0}."""
    return Subspace.span([_pyramid_w(1, 0, 0, -1), _pyramid_w(0, 1, 0, -1), _pyramid_w(0, 0, 1, -1)], 8, fld)


def pyramid_cover_space(fld: FieldSpec = Q) -> Subspace:
    """{(c+d,d+a,a+b,b+c,a,b,c,d) : a+b+c+d = 0}."""
    return Subspace.span([_pyramid_p(1, 0, 0, -1), _pyramid_p(0, 1, 0, -1), _pyramid_p(0, 0, 1, -1)], 8, fld)


def pyramid_phi_basis() -> list[list[int]]:
    """Phi*(e_s - e_4) for s = 1, 2, 3, as vectors in k^8."""
    gens = []
    for edges in PYRAMID_PHI_GENERATORS:
        gens.append([1 if i in edges else 0 for i in range(1, 9)])
    return [[a - b for a, b in zip(gens[s], gens[3])] for s in range(3)]


def delres_subspace(n: int, fld: FieldSpec = Q) -> Subspace:
    """{(-a, a, b, -b, -c, c, 0, ..., 0)} in k^n."""
    rows = [[-1, 1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, -1, 1]]
    return Subspace.span([r + [0] * (n - 6) for r in rows], n, fld)


def pyramid_minus_3_printed(fld: FieldSpec = Q) -> Subspace:
    """{(-a-b, b, 0, a, b, a, -a, -b)} in k^8, coordinates as printed."""
    return Subspace.span([[-1, 0, 0, 1, 0, 1, -1, 0], [-1, 1, 0, 0, 1, 0, 0, -1]], 8, fld)


def pyramid_minus_3_swapped(fld: FieldSpec = Q) -> Subspace:
    """The printed subspace with coordinates 7 and 8 exchanged."""
    return pyramid_minus_3_printed(fld).permute([1, 2, 3, 4, 5, 6, 8, 7])
