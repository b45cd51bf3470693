"""Finite transformation semigroups on a fixed point set: closure from
generating maps, Green's relations, kernel, and the completely-simple test.

Elements are self-maps of {0..degree-1} stored as image tuples (not
necessarily injective).  Composition follows the same convention as
permutations: ``x compose y`` applies y first.  For semigroups of at most
``MEMO_LIMIT`` elements the full Cayley table is materialized once; all
ideal computations are then integer table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckError, ResourceLimitError, ValidationError

FiberMap = tuple[int, ...]

CLOSURE_CAP = 10**5
MEMO_LIMIT = 4096


def map_compose(x: FiberMap, y: FiberMap) -> FiberMap:
    """x after y."""
    return tuple(x[y[i]] for i in range(len(x)))


def is_idempotent_map(x: FiberMap) -> bool:
    return map_compose(x, x) == x


class TransformationSemigroup:
    """A composition-closed set of self-maps with deterministic element order."""

    def __init__(self, degree: int, elements: tuple[FiberMap, ...],
                 generators: tuple[FiberMap, ...]):
        self.degree = degree
        self.elements = elements  # sorted
        self.generators = generators
        self.index = {x: i for i, x in enumerate(elements)}
        self.contains_identity = tuple(range(degree)) in self.index
        n = len(elements)
        if n <= MEMO_LIMIT:
            self.table: list[list[int]] | None = [
                [self.index[map_compose(x, y)] for y in elements] for x in elements
            ]
        else:
            self.table = None

    @property
    def size(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TransformationSemigroup)
                and self.degree == other.degree and self.elements == other.elements)

    def __contains__(self, x: FiberMap) -> bool:
        return x in self.index

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return self.table[i][j]
        return self.index[map_compose(self.elements[i], self.elements[j])]

    def idempotent_indices(self) -> list[int]:
        return [i for i in range(self.size) if self.mul(i, i) == i]


def semigroup_closure(gens: list[FiberMap] | tuple[FiberMap, ...],
                      degree: int | None = None, cap: int = CLOSURE_CAP) -> TransformationSemigroup:
    """Smallest composition-closed set of maps containing ``gens``."""
    gens = [tuple(g) for g in gens]
    if not gens and degree is None:
        raise ValidationError("closure of an empty generator list needs an explicit degree")
    if degree is None:
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise ValidationError(f"map acts on {len(g)} points, expected {degree}")
        if any(not 0 <= v < degree for v in g):
            raise ValidationError(f"map {g} has out-of-range images")
    elements = set(gens)
    frontier = list(elements)
    while frontier:
        new = []
        for g in gens:
            for x in frontier:
                for y in (map_compose(g, x), map_compose(x, g)):
                    if y not in elements:
                        elements.add(y)
                        new.append(y)
                        if len(elements) > cap:
                            raise ResourceLimitError(
                                f"semigroup closure exceeded cap of {cap} elements")
        frontier = new
    return TransformationSemigroup(degree, tuple(sorted(elements)), tuple(sorted(set(gens))))


@dataclass(frozen=True)
class GreenStructure:
    """Partitions of element indices by Green's relations, plus idempotents
    and the kernel (minimal two-sided ideal)."""

    l_classes: tuple[tuple[int, ...], ...]
    r_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    d_classes: tuple[tuple[int, ...], ...]
    idempotents: tuple[int, ...]
    kernel: tuple[int, ...]

    def summary(self) -> dict:
        def shape(classes):
            sizes: dict[int, int] = {}
            for c in classes:
                sizes[len(c)] = sizes.get(len(c), 0) + 1
            return {"count": len(classes), "sizes": {str(k): v for k, v in sorted(sizes.items())}}
        return {
            "l_classes": shape(self.l_classes),
            "r_classes": shape(self.r_classes),
            "h_classes": shape(self.h_classes),
            "d_classes": shape(self.d_classes),
            "idempotents": len(self.idempotents),
            "kernel_size": len(self.kernel),
        }


def green_structure(sg: TransformationSemigroup) -> GreenStructure:
    """Compute principal ideals for every element and partition by equality.

    Two-sided principal ideals are assembled as unions of right ideals over a
    left ideal, so everything stays linear in the number of (left, right)
    ideal pairs already computed.
    """
    n = sg.size
    rng = range(n)
    left = [frozenset({i} | {sg.mul(s, i) for s in rng}) for i in rng]
    right = [frozenset({i} | {sg.mul(i, s) for s in rng}) for i in rng]

    def group_by(keys):
        buckets: dict[object, list[int]] = {}
        for i in rng:
            buckets.setdefault(keys[i], []).append(i)
        return tuple(tuple(b) for b in sorted(buckets.values()))

    l_classes = group_by(left)
    r_classes = group_by(right)
    h_classes = group_by([(left[i], right[i]) for i in rng])

    # D = join of L and R: union-find merging each element's L- and R-class
    parent = list(rng)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for cls in l_classes + r_classes:
        for i in cls[1:]:
            union(cls[0], i)
    d_buckets: dict[int, list[int]] = {}
    for i in rng:
        d_buckets.setdefault(find(i), []).append(i)
    d_classes = tuple(tuple(b) for b in sorted(d_buckets.values()))

    idempotents = tuple(sg.idempotent_indices())

    two_sided = []
    for i in rng:
        ideal: set[int] = set()
        for j in left[i]:
            ideal |= right[j]
        two_sided.append(frozenset(ideal))
    kernel: frozenset[int] = two_sided[0]
    for ideal in two_sided[1:]:
        kernel &= ideal
    if not kernel:
        raise InternalCheckError("finite semigroup without a kernel; ideal computation is broken")
    return GreenStructure(l_classes, r_classes, h_classes, d_classes,
                          idempotents, tuple(sorted(kernel)))


def is_completely_simple(sg: TransformationSemigroup,
                         green: GreenStructure | None = None) -> bool:
    """Finite case: simple (kernel is everything) plus an idempotent."""
    green = green or green_structure(sg)
    return len(green.kernel) == sg.size and bool(green.idempotents)


def semigroup_to_json(sg: TransformationSemigroup,
                      point_labels: tuple[str, ...] | None = None,
                      green: GreenStructure | None = None) -> dict:
    """JSON form: point labels, element image arrays, generator indices, and
    the Green partition summary."""
    labels = point_labels or tuple(str(i) for i in range(sg.degree))
    if len(labels) != sg.degree:
        raise ValidationError("one label per point is required")
    green = green or green_structure(sg)
    return {
        "points": list(labels),
        "elements": [list(x) for x in sg.elements],
        "generators": [sg.index[g] for g in sg.generators],
        "contains_identity": sg.contains_identity,
        "green": green.summary(),
    }
