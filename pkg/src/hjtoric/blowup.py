"""(p, q)-weighted blowups of a smooth point, resolved two independent ways.

A weighted blowup with coprime weights p > q >= 1 removes a small ellipsoid
E(q, p) and collapses its boundary, producing an exceptional curve through
two new quotient points of orders p and q.  Two routes compute the resolved
intersection lattice:

* the vertex route resolves each new corner of the moment polygon with a
  negative continued fraction: the order-p corner from p/(p - q), the
  order-q corner from q/k with k = q - p mod q, joined by the proper
  transform E~ of the exceptional curve with E~^2 = -1;

* the multiplicity route realizes the same surface by a sequence of ordinary
  corner cuts of the quadrant, with multiplicities produced by the Euclidean
  algorithm on (p, q) and cut labels walking the Stern-Brocot mediants from
  (1, 1) to (q, p).

``cross_check`` verifies that the two routes build isomorphic lattices; the
sum of squared multiplicities always equals p*q (each multiplicity-m cut
removes m^2 half-unit triangles of the p*q-area corner being excised).

Both chains of a config are stored with class index 1 adjacent to E~ (the
expansions above read from the opposite, axis-adjacent end; reversing an
expansion of m/k gives the expansion of m/k' with kk' = 1 mod m, so either
orientation carries the same data).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, StructureError
from .hj import hj_expand
from .homology import (
    IntersectionLattice,
    blow_down,
    blow_up_at,
    empty_lattice,
    lattice_from_parts,
)
from .lattice2d import Point, Vec, corner_cut, quadrant
from .resolution import Chain, chain_from_terms

log = logging.getLogger(__name__)


def _require_weights(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise DomainError(f"weights must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise DomainError(f"weights ({p}, {q}) must be coprime")
    if p <= q and not (p == q == 1):
        raise DomainError(f"weights need p > q (or p = q = 1), got ({p}, {q})")


@dataclass(frozen=True)
class BlowupConfig:
    """The resolved picture of a (p, q)-weighted blowup of a smooth point.

    ``chain_p`` resolves the order-p point, ``chain_q`` the order-q point;
    both are oriented so their first class is the one meeting the
    exceptional class E~.  ``size`` scales the symplectic area of E~.
    """

    p: int
    q: int
    size: Fraction
    chain_p: Chain
    chain_q: Chain
    exceptional_label: str

    @property
    def chain_labels(self) -> tuple[str, ...]:
        return self.chain_p.labels + self.chain_q.labels

    @property
    def class_labels(self) -> tuple[str, ...]:
        return (self.exceptional_label,) + self.chain_labels

    def lattice(self) -> IntersectionLattice:
        labels = self.class_labels
        selfs = {self.exceptional_label: -1}
        pairs: dict[tuple[str, str], int] = {}
        for chain in (self.chain_p, self.chain_q):
            ls = chain.labels
            for i, s in enumerate(chain.self_intersections):
                selfs[ls[i]] = s
                if i + 1 < len(ls):
                    pairs[(ls[i], ls[i + 1])] = 1
            if ls:
                pairs[(self.exceptional_label, ls[0])] = 1
        return lattice_from_parts(labels, pairs, selfs)

    def to_json(self) -> dict:
        # chains are reported from the axis end (the continued-fraction
        # reading order); the lattice block carries the actual wiring
        return {
            "p": self.p,
            "q": self.q,
            "chain_p": list(reversed(self.chain_p.self_intersections)),
            "chain_q": list(reversed(self.chain_q.self_intersections)),
            "lattice": self.lattice().to_json(),
        }


def fulton_config(
    p: int,
    q: int,
    size: Fraction | int = 1,
    label_prefix: str = "",
    at_order: int = 1,
) -> BlowupConfig:
    """Resolved lattice of the (p, q)-weighted blowup via the vertex route.

    The order-p corner resolves by the expansion of p/(p - q) and the
    order-q corner by the expansion of q/k with k = q - p mod q (empty for
    q = 1); E~ meets the last class of each expansion, so the stored chains
    are the reversed expansions.  Blowing up *at* an orbifold point
    (``at_order > 1``) is not supported.
    """
    _require_weights(p, q)
    if at_order != 1:
        raise NotImplementedError(
            "unsupported: weighted blowup at an orbifold point (order "
            f"{at_order} > 1) is an open problem"
        )
    size = Fraction(size)
    if size <= 0:
        raise DomainError(f"size must be positive, got {size}")
    if p == 1:
        terms_p: tuple[int, ...] = ()
    else:
        terms_p = hj_expand(p, p - q).terms
    if q == 1:
        terms_q: tuple[int, ...] = ()
    else:
        terms_q = hj_expand(q, (q - p) % q).terms
    chain_p = chain_from_terms(reversed(terms_p), prefix=f"{label_prefix}Zp")
    chain_q = chain_from_terms(reversed(terms_q), prefix=f"{label_prefix}Zq")
    return BlowupConfig(p, q, size, chain_p, chain_q, f"{label_prefix}E~")


@dataclass(frozen=True)
class McDuffSequence:
    """Multiplicities and cut labels realizing the blowup by ordinary cuts.

    ``multiplicities`` lists q_1 repeated a_1 times, q_2 repeated a_2 times,
    and so on, where q_1 = q and q_{i+1} = q_{i-1} - a_i * q_i (the Euclidean
    algorithm on (p, q), q_0 = p), stopping when the remainder vanishes.
    ``cut_directions`` are the corresponding cut labels (a, b), the negated
    outward conormal of each new edge; the last is always (q, p).
    """

    p: int
    q: int
    multiplicities: tuple[int, ...]
    cut_directions: tuple[Vec, ...]

    def __len__(self) -> int:
        return len(self.multiplicities)


def _euclid_blocks(p: int, q: int) -> tuple[list[int], list[int]]:
    """Block sizes a_i and values q_i of the multiplicity recursion."""
    blocks: list[int] = []
    values: list[int] = []
    prev, cur = p, q
    while cur > 0:
        a, rem = divmod(prev, cur)
        blocks.append(a)
        values.append(cur)
        prev, cur = cur, rem
    return blocks, values


def _replay_cuts(q: int, p: int, visit):
    """Drive the corner-cut replay on the quadrant.

    Cuts alternate in blocks: within a block the cut happens at the vertex
    between an "up" edge U and a "down" edge D; odd blocks slide the cut
    downward (the new edge replaces U), even blocks upward (it replaces D).
    Initially U is the vertical axis and D the horizontal axis.  ``visit``
    is called as visit(step, up_label, down_label) before each cut; labels
    'V'/'H' mark the axes and integers the earlier cuts.  Cut sizes shrink
    geometrically (each a quarter of the previous, so later cuts always fit
    inside earlier edges) and are pre-scaled to integers to keep all vertex
    coordinates integral.  Returns the list of cut labels (a, b) = negated
    new-edge conormals.
    """
    blocks, _ = _euclid_blocks(p, q)
    total = sum(blocks)
    poly = quadrant()
    edge_ids: list[object] = ["V", "H"]  # parallel to poly's edge indices
    up: object = "V"
    down: object = "H"
    labels: list[Vec] = []
    step = 0
    for bi, a in enumerate(blocks):
        for _ in range(a):
            iu = edge_ids.index(up)
            idn = edge_ids.index(down)
            if idn != iu + 1:
                raise StructureError("cut site edges are not adjacent")
            if visit is not None:
                visit(step, up, down)
            poly = corner_cut(poly, iu, 4 ** (total - 1 - step))
            edge_ids.insert(iu + 1, step)
            n = poly.conormal(iu + 1)
            labels.append((-n[0], -n[1]))
            if bi % 2 == 0:
                up = step
            else:
                down = step
            step += 1
    return labels


def mcduff_sequence(q: int, p: int) -> McDuffSequence:
    """Multiplicity sequence and cut labels for weights (q, p), p > q.

    For (4, 7) this is multiplicities (4, 3, 1, 1, 1) and cuts
    (1, 1), (1, 2), (2, 3), (3, 5), (4, 7).
    """
    _require_weights(p, q)
    blocks, values = _euclid_blocks(p, q)
    multiplicities = tuple(v for a, v in zip(blocks, values) for _ in range(a))
    labels = _replay_cuts(q, p, None)
    if labels and labels[-1] != (q, p):
        raise StructureError(f"cut replay ended at {labels[-1]}, expected {(q, p)}")
    return McDuffSequence(p, q, multiplicities, tuple(labels))


def _lattice_visitor(label_prefix: str):
    """Visitor turning each cut into a blowup at the flanking intersection.

    Axis edges carry no class, earlier cut edges do.
    """
    holder = {"lat": empty_lattice()}

    def visit(step, upl, downl):
        touched = [f"{label_prefix}e{i + 1}" for i in (upl, downl) if isinstance(i, int)]
        holder["lat"] = blow_up_at(holder["lat"], touched, f"{label_prefix}e{step + 1}")

    return visit, holder


def mcduff_lattice(q: int, p: int, label_prefix: str = "") -> IntersectionLattice:
    """Intersection lattice of the cut replay, one class per cut."""
    _require_weights(p, q)
    visit, holder = _lattice_visitor(label_prefix)
    _replay_cuts(q, p, visit)
    return holder["lat"]


def cut_chords(q: int, p: int, unit: Fraction | int = 1) -> list[tuple[Vec, Point, Point]]:
    """Exact chord geometry of the cut cascade, cut i sized by multiplicity i.

    Returns (label, start, end) per cut, in cut order.  With these sizes
    intermediate edges shrink to points and the last chord is the hypotenuse
    from (0, q*unit) to (p*unit, 0), the boundary of the excised corner; this
    is the picture usually drawn for the resolution diagram.
    """
    _require_weights(p, q)
    unit = Fraction(unit)
    seq = mcduff_sequence(q, p)
    blocks, _ = _euclid_blocks(p, q)
    chords: list[tuple[Vec, Point, Point]] = []
    zero = Fraction(0)
    # flanking edges of the current cut vertex: near endpoint (the vertex
    # itself) plus the primitive direction leading away from it
    up_near = (zero, zero)
    up_dir = (Fraction(0), Fraction(1))  # vertical axis
    down_near = (zero, zero)
    down_dir = (Fraction(1), Fraction(0))  # horizontal axis
    i = 0
    for bi, a in enumerate(blocks):
        for _ in range(a):
            s = seq.multiplicities[i] * unit
            a_pt = (up_near[0] + s * up_dir[0], up_near[1] + s * up_dir[1])
            b_pt = (down_near[0] + s * down_dir[0], down_near[1] + s * down_dir[1])
            chords.append((seq.cut_directions[i], a_pt, b_pt))
            if bi % 2 == 0:
                # next cut sits at b_pt: the chord is its new up flank and
                # the old down edge continues past it
                up_near, down_near = b_pt, b_pt
                up_dir = ((a_pt[0] - b_pt[0]) / s, (a_pt[1] - b_pt[1]) / s)
            else:
                up_near, down_near = a_pt, a_pt
                down_dir = ((b_pt[0] - a_pt[0]) / s, (b_pt[1] - a_pt[1]) / s)
            i += 1
    return chords


def _path_profile(lat: IntersectionLattice) -> list[tuple[int, int]] | None:
    """(self-intersection, c1) along the path, or None if not a path graph."""
    n = len(lat)
    if n == 0:
        return []
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            v = lat.pairing[i][j]
            if v == 0:
                continue
            if v != 1:
                return None
            adj[i].append(j)
            adj[j].append(i)
    degs = [len(adj[i]) for i in range(n)]
    if any(d > 2 for d in degs):
        return None
    if n == 1:
        start = 0
    else:
        ends = [i for i in range(n) if degs[i] == 1]
        if len(ends) != 2:
            return None
        start = min(ends)
    order = [start]
    prev = None
    while len(order) < n:
        nxts = [j for j in adj[order[-1]] if j != prev]
        if len(nxts) != 1:
            return None
        prev = order[-1]
        order.append(nxts[0])
    return [(lat.pairing[i][i], lat.c1[i]) for i in order]


def lattices_isomorphic_as_chains(a: IntersectionLattice, b: IntersectionLattice) -> bool:
    """Permutation isomorphism test for path-shaped lattices."""
    pa, pb = _path_profile(a), _path_profile(b)
    if pa is None or pb is None:
        return False
    return pa == pb or pa == list(reversed(pb))


def cross_check(p: int, q: int) -> bool:
    """Whether the vertex route and the cut replay agree for weights (p, q).

    True iff the replay has exactly |chain_p| + |chain_q| + 1 cuts and its
    lattice is isomorphic to the vertex-route lattice by a permutation
    matching self-intersections and pairings.  A False return means an
    internal inconsistency, not a bad input.
    """
    cfg = fulton_config(p, q)
    blocks, _ = _euclid_blocks(p, q)
    if sum(blocks) != len(cfg.class_labels):
        log.debug("cross_check(%d, %d): length mismatch %d vs %d",
                  p, q, sum(blocks), len(cfg.class_labels))
        return False
    visit, holder = _lattice_visitor("")
    _replay_cuts(q, p, visit)
    ok = lattices_isomorphic_as_chains(cfg.lattice(), holder["lat"])
    if not ok:
        log.debug("cross_check(%d, %d): lattice mismatch", p, q)
    return ok


def weighted_blowdown(lat: IntersectionLattice, config: BlowupConfig) -> IntersectionLattice:
    """Remove a blowup configuration by iterated (-1)-contractions.

    Contracts E~ first; afterwards exactly one remaining config class sits at
    self-intersection -1 at each stage (the reverse of the cut replay), and
    contracting in that forced order empties the configuration in
    |chain_p| + |chain_q| + 1 steps.  Any stage without a (-1) config class
    means the configuration was corrupted.
    """
    for label in config.class_labels:
        lat.index(label)  # presence check, raises DomainError
    etilde = config.exceptional_label
    if lat.self_intersection(etilde) != -1:
        raise StructureError(
            f"{etilde!r} has self-intersection {lat.self_intersection(etilde)}, not -1"
        )
    current = blow_down(lat, etilde)
    remaining = list(config.chain_labels)
    while remaining:
        ready = [l for l in remaining
                 if current.self_intersection(l) == -1 and current.c1_of(l) == 1]
        if not ready:
            raise StructureError(
                "blowdown stalled: no remaining config class at -1 "
                f"(remaining: {remaining})"
            )
        current = blow_down(current, ready[0])
        remaining.remove(ready[0])
    return current
