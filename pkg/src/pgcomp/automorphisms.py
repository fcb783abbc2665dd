"""Shift and Frobenius collineations of P(4, GF(2)) and the plane-line matchings.

Under the cyclic point labeling, the Frobenius map x -> x^2 doubles point
indices mod 31 and the shift (multiplication by the field generator)
increments them mod 31.  Composites act as i -> 2^b * i + a, shift applied
after Frobenius.  The 31 * 5 composites act simply transitively on both the
155 lines and the 155 planes, which is what makes the seven matching
patterns below well defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .projective import GeometryError, ProjectiveSpace, Subspace


@dataclass(frozen=True)
class Automorphism:
    """The collineation i -> (i * mult^frob + shift) mod n."""

    shift: int
    frob: int
    n: int = 31
    mult: int = 2

    def apply_point(self, i: int) -> int:
        return (i * pow(self.mult, self.frob, self.n) + self.shift) % self.n

    def apply(self, sub: Subspace) -> Subspace:
        return Subspace(sub.dim, tuple(sorted(self.apply_point(p)
                                              for p in sub.points)))


def all_automorphisms(space: ProjectiveSpace) -> list[Automorphism]:
    """All shift^a ∘ frob^b composites, b varying slowest."""
    n = space.n
    d1 = space.d + 1
    return [Automorphism(a, b, n, space.base.p)
            for b in range(d1) for a in range(n)]


def apply(auto: Automorphism, sub: Subspace) -> Subspace:
    return auto.apply(sub)


def orbit(space: ProjectiveSpace, seed: Subspace) -> set[Subspace]:
    """Closure of a subspace under every composite automorphism."""
    return {g.apply(seed) for g in all_automorphisms(space)}


@dataclass(frozen=True)
class MatchingPattern:
    """A bijection between planes and contained lines (or its inverse).

    forward maps the canonical point tuple of each domain subspace to its
    image; inverse is the reverse dictionary.
    """

    q: int
    forward: dict[tuple[int, ...], tuple[int, ...]] = field(hash=False)
    inverse: dict[tuple[int, ...], tuple[int, ...]] = field(hash=False)
    inverted: bool = False

    def image(self, sub: Subspace) -> Subspace:
        dim = 1 if not self.inverted else 2
        try:
            pts = self.forward[sub.points]
        except KeyError:
            raise GeometryError(f"{sub.points} not in the matching domain") from None
        return Subspace(dim, pts)

    def preimage(self, sub: Subspace) -> Subspace:
        dim = 2 if not self.inverted else 1
        pts = self.inverse[sub.points]
        return Subspace(dim, pts)


def build_matching(space: ProjectiveSpace, q: int,
                   seed_plane: Subspace, seed_line: Subspace) -> MatchingPattern:
    """Matching S_q generated by sweeping the seed pair through every composite.

    Every plane shift^a(frob^b(seed_plane)) maps to the like-transformed
    line.  Construction aborts if the orbit misses any plane or the result
    fails to be a containment-respecting bijection.
    """
    if not set(seed_line.points) <= set(seed_plane.points):
        raise GeometryError("seed line must lie in the seed plane")
    forward: dict[tuple[int, ...], tuple[int, ...]] = {}
    for g in all_automorphisms(space):
        plane = g.apply(seed_plane).points
        line = g.apply(seed_line).points
        prev = forward.get(plane)
        if prev is not None and prev != line:
            raise GeometryError("seed pair is not equivariantly consistent")
        forward[plane] = line
    nplanes = len(space.subspaces(2))
    if len(forward) != nplanes:
        raise GeometryError(f"seed orbit covers {len(forward)} of {nplanes} planes")
    if len(set(forward.values())) != nplanes:
        raise GeometryError("matching is not injective")
    for plane, line in forward.items():
        if not set(line) <= set(plane):
            raise GeometryError("matched line escapes its plane")
    inverse = {line: plane for plane, line in forward.items()}
    return MatchingPattern(q, forward, inverse)


def lines_of_plane(space: ProjectiveSpace, plane: Subspace) -> list[Subspace]:
    """The lines contained in a plane, canonically sorted."""
    pts = plane.points
    seen = set()
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            seen.add(space.line_through(pts[a], pts[b]).points)
    return [Subspace(1, p) for p in sorted(seen)]


def build_all_matchings(space: ProjectiveSpace) -> list[MatchingPattern]:
    """The seven matchings S_1..S_7 from the canonical seed plane.

    S_1 pairs the plane spanned by points 0, 1, 2 with the line through
    0 and 1; S_2..S_7 use the remaining six lines of that plane in
    canonical (sorted) order.
    """
    seed_line = space.line_through(0, 1)
    seed_plane = space.plane_through(0, 1, 2)
    others = [l for l in lines_of_plane(space, seed_plane)
              if l.points != seed_line.points]
    seeds = [seed_line] + others
    return [build_matching(space, q + 1, seed_plane, line)
            for q, line in enumerate(seeds)]


def invert(m: MatchingPattern) -> MatchingPattern:
    """The inverse matching, mapping each line back to its matched plane."""
    return MatchingPattern(m.q, dict(m.inverse), dict(m.forward),
                           inverted=not m.inverted)
