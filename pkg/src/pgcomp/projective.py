"""Finite projective spaces P(d, GF(s)) under the cyclic point labeling.

P(d, GF(s)) is realized inside the extension field GF(s^(d+1)): the points
are the classes of nonzero elements modulo multiplication by GF(s)*, and
point i stands for the class of g^i where g generates GF(s^(d+1))*.  With
n = (s^(d+1)-1)/(s-1) points, the class of g^e is e mod n, so multiplying
by g acts on point labels as +1 mod n (the cyclic collineation), and the
Frobenius x -> x^p acts as multiplication of labels by p mod n.

Subspaces are canonicalized as sorted point tuples; equality is set
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fields import FieldError, FieldSpec, field_new, is_prime

MAX_SUBSPACES = 1 << 22


class GeometryError(ValueError):
    """Invalid geometry construction or degenerate query."""


def phi(n: int, l: int, s: int) -> int:
    """Number of l-dimensional projective subspaces of P(n, GF(s)).

    phi(n, l, s) = [(s^(n+1)-1)(s^n-1)...(s^(n-l+1)-1)] /
                   [(s-1)(s^2-1)...(s^(l+1)-1)], evaluated exactly.
    """
    if not (0 <= l <= n):
        raise GeometryError(f"need 0 <= l <= n, got l={l}, n={n}")
    if s < 2:
        raise GeometryError(f"field order must be >= 2, got {s}")
    num = 1
    den = 1
    for i in range(l + 1):
        num *= s ** (n + 1 - i) - 1
        den *= s ** (i + 1) - 1
    q, r = divmod(num, den)
    if r:
        raise AssertionError("subspace count formula did not divide exactly")
    return q


def prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p^k with p prime, else raise."""
    if q < 2:
        raise GeometryError(f"{q} is not a prime power")
    p = q
    f = 2
    while f * f <= p:
        if p % f == 0:
            p = f
            break
        f += 1
    k = 0
    v = q
    while v % p == 0 and v > 1:
        v //= p
        k += 1
    if v != 1 or not is_prime(p):
        raise GeometryError(f"{q} is not a prime power")
    return p, k


@dataclass(frozen=True)
class Subspace:
    """A projective subspace as its canonical (sorted) point set."""

    dim: int
    points: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(self.points)) != self.points:
            raise GeometryError("subspace points must be sorted")

    def __contains__(self, point: int) -> bool:
        return point in self.points

    def __len__(self) -> int:
        return len(self.points)


def incident(sub1: Subspace, sub2: Subspace) -> bool:
    """True iff the lower-dimensional subspace is contained in the other."""
    lo, hi = (sub1, sub2) if sub1.dim <= sub2.dim else (sub2, sub1)
    return set(lo.points) <= set(hi.points)


class ProjectiveSpace:
    """P(d, GF(s)) with enumerated subspace tables for selected dimensions."""

    def __init__(self, d: int, base: FieldSpec, dims: set[int] | None = None):
        if d < 1:
            raise GeometryError("projective dimension must be >= 1")
        self.d = d
        self.base = base
        self.s = base.order
        self.n = phi(d, 0, self.s)
        if phi(d, 1, self.s) > MAX_SUBSPACES:
            raise GeometryError("subspace tables would exceed the memory bound")
        # the ambient field GF(s^(d+1)); its generator fixes all point labels
        self.field = field_new(base.p, base.k * (d + 1))
        self._exp = self.field.exp_table
        self._log = self.field.log_table
        self._scalar_exps = [t * self.n for t in range(self.s - 1)]
        self._tables: dict[int, list[Subspace]] = {}
        self._index: dict[int, dict[tuple[int, ...], int]] = {}
        if dims is None:
            dims = {0, 1}
        bad = [l for l in dims if not 0 <= l <= d]
        if bad:
            raise GeometryError(f"requested dims {bad} outside [0, {d}]")
        for l in sorted(dims):
            self._tables[l] = self._enumerate(l)
            self._index[l] = {sub.points: i for i, sub in enumerate(self._tables[l])}

    # -- point/vector helpers -------------------------------------------

    def _class_of(self, coeffs: tuple[int, ...]) -> int:
        return self._log[coeffs] % self.n

    def _add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.field.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _line_points(self, i: int, j: int) -> tuple[int, ...]:
        vi = self._exp[i]
        pts = {i, j}
        for t in self._scalar_exps:
            v = self._add(vi, self._exp[(j + t) % (self.field.order - 1)])
            if any(v):
                pts.add(self._class_of(v))
        return tuple(sorted(pts))

    def _span_points(self, gens: list[int]) -> tuple[int, ...]:
        """All points in the projective span of the given points."""
        vecs = [self._exp[g] for g in gens]
        zero = (0,) * self.field.k
        combos = [zero]
        for v in vecs:
            new = list(combos)
            for t in self._scalar_exps:
                vt = self._exp[t] if t else None
                scaled = v if t == 0 else self._mul_coeff(v, t)
                new.extend(self._add(c, scaled) for c in combos)
            combos = new
        pts = {self._class_of(c) for c in combos if any(c)}
        return tuple(sorted(pts))

    def _mul_coeff(self, coeffs: tuple[int, ...], t: int) -> tuple[int, ...]:
        e = self._log[coeffs]
        return self._exp[(e + t) % (self.field.order - 1)]

    # -- enumeration ------------------------------------------------------

    def _enumerate(self, l: int) -> list[Subspace]:
        if l == 0:
            subs = [Subspace(0, (i,)) for i in range(self.n)]
        elif l == self.d:
            subs = [Subspace(l, tuple(range(self.n)))]
        elif l == 1:
            subs = self._enumerate_lines()
        elif l == 2:
            subs = self._enumerate_planes()
        else:
            raise GeometryError(f"enumeration for dimension {l} not supported")
        expect = phi(self.d, l, self.s)
        if len(subs) != expect:
            raise AssertionError(f"enumerated {len(subs)} {l}-subspaces, "
                                 f"expected {expect}")
        return subs

    def _enumerate_lines(self) -> list[Subspace]:
        if self.d == 2:
            # the cyclic collineation is transitive on lines of a plane, so
            # the line set is the shift family of any one line
            base = set(self._line_points(0, 1))
            fam = {tuple(sorted((x + k) % self.n for x in base))
                   for k in range(self.n)}
            if len(fam) != self.n:
                raise AssertionError("line shift family collapsed")
            return [Subspace(1, pts) for pts in sorted(fam)]
        seen = set()
        for i in range(self.n):
            for j in range(i + 1, self.n):
                seen.add(self._line_points(i, j))
        return [Subspace(1, pts) for pts in sorted(seen)]

    def _enumerate_planes(self) -> list[Subspace]:
        seen = set()
        for line in self._tables.get(1) or self._enumerate_lines():
            onl = set(line.points)
            for x in range(self.n):
                if x not in onl:
                    seen.add(self._span_points([line.points[0], line.points[1], x]))
        return [Subspace(2, pts) for pts in sorted(seen)]

    # -- queries ----------------------------------------------------------

    def subspaces(self, l: int) -> list[Subspace]:
        if l not in self._tables:
            self._tables[l] = self._enumerate(l)
            self._index[l] = {s.points: i for i, s in enumerate(self._tables[l])}
        return self._tables[l]

    def subspace_id(self, sub: Subspace) -> int:
        return self._index[sub.dim][sub.points]

    def line_through(self, i: int, j: int) -> Subspace:
        if i == j:
            raise GeometryError(f"no unique line through coincident points ({i},{i})")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise GeometryError("point index out of range")
        return Subspace(1, self._line_points(i, j))

    def plane_through(self, i: int, j: int, k: int) -> Subspace:
        if len({i, j, k}) != 3:
            raise GeometryError("plane_through requires three distinct points")
        if k in self._line_points(i, j):
            raise GeometryError(f"points ({i},{j},{k}) are collinear")
        return Subspace(2, self._span_points([i, j, k]))

    def meet_of_lines(self, l1: Subspace, l2: Subspace) -> int | None:
        if l1.dim != 1 or l2.dim != 1:
            raise GeometryError("meet_of_lines expects two lines")
        if l1.points == l2.points:
            raise GeometryError("meet of a line with itself is degenerate")
        common = set(l1.points) & set(l2.points)
        if not common:
            return None
        if len(common) > 1:
            raise AssertionError("distinct lines share more than one point")
        return common.pop()

    def lines_through_point(self, i: int) -> list[Subspace]:
        return [l for l in self.subspaces(1) if i in l.points]

    def subspaces_containing(self, sub: Subspace, l: int) -> list[Subspace]:
        pts = set(sub.points)
        return [s for s in self.subspaces(l) if pts <= set(s.points)]


def build_space(d: int, spec: FieldSpec, dims: set[int]) -> ProjectiveSpace:
    """Construct P(d, GF(s)) with subspace tables for the requested dims."""
    return ProjectiveSpace(d, spec, dims)


# base lines anchoring the process labeling of P(2, GF(p)); see
# cyclic_line_labels.  The n=13 entry pins the published 13-process layout.
_BASE_LINE_ANCHORS: dict[int, tuple[int, ...]] = {
    13: (2, 6, 7, 9),
}


@lru_cache(maxsize=None)
def plane_for_order(q: int) -> ProjectiveSpace:
    """P(2, GF(q)) for a prime power q, with points and lines enumerated."""
    p, k = prime_power(q)
    return ProjectiveSpace(2, field_new(p, k), dims={0, 1})


def cyclic_line_labels(space: ProjectiveSpace) -> list[tuple[int, ...]]:
    """Index the lines of a projective plane so that line k = base + k mod n.

    The line set of P(2, GF(q)) under the cyclic labeling is the shift
    family of a single base line.  The base is pinned per order where a
    published layout exists; otherwise it is the lexicographically smallest
    shift that avoids point 0, so that no point ever lies on the line of
    the same index.
    """
    if space.d != 2:
        raise GeometryError("cyclic line labels are defined for planes only")
    n = space.n
    fam = {l.points for l in space.subspaces(1)}
    anchor = _BASE_LINE_ANCHORS.get(n)
    if anchor is None:
        candidates = sorted(pts for pts in fam if 0 not in pts)
        anchor = candidates[0]
    if anchor not in fam:
        raise AssertionError(f"anchor line {anchor} is not a line of this plane")
    labels = [tuple(sorted((x + k) % n for x in anchor)) for k in range(n)]
    if set(labels) != fam:
        raise AssertionError("anchored shifts do not reproduce the line set")
    return labels
