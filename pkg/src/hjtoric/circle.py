"""Symbolic simulator of the circle of reduced spaces of an S^1 action.

Input is a list of critical levels on a unit-circumference circle, each an
isolated fixed point with isotropy weights (p, q, -1) (sign +1: crossing the
level counterclockwise performs a (p, q)-weighted blowup of the reduced
space) or (-p, -q, 1) (sign -1: crossing undoes one).  Levels are exact
rationals and every quantity evolved here is exact.

Every +1 level is paired with a -1 level of equal weights, either explicitly
(the ``match`` field) or first-in-first-out among equal weights.  A pair's
configuration is alive on the counterclockwise arc from its blowup level to
its blowdown level; the area of its exceptional class rises from zero at
slope 1/(p*q), then falls back to zero at the blowdown level (a tent over
the arc), while resolution-chain classes keep a small constant area.

On top of the periodic dynamics the simulator tracks the exceptional class
born at the first +1 level after the base point: its transported copy is
kept as a separate direct summand of the bookkeeping lattice and its area
grows at slope 1/(p*q) forever (blowdown levels destroy the matched dynamic
partner, never the transported copy, which is disjoint from everything
else).  The per-loop ledger of its area at the base level is then strictly
increasing; once it holds more distinct values than a closed 4-manifold
with b2+ > 1 could carry exceptional classes (the bound B), the premise
"not Hamiltonian" has contradicted itself and the run reports HAMILTONIAN.
With ``tracked_independent=False`` the tracked class is the dynamic
instance itself instead; it then dies at its matched level and the run
reports TRACKED_CLASS_DESTROYED.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .blowup import BlowupConfig, fulton_config, weighted_blowdown
from .errors import DomainError, StructureError
from .homology import IntersectionLattice, empty_lattice
from .rationals import rational_json
from .resolution import CyclicSingularity

log = logging.getLogger(__name__)

ONE = Fraction(1)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def arc_distance(a: Fraction, b: Fraction) -> Fraction:
    """Counterclockwise distance from a to b on the unit circle, in [0, 1)."""
    return _mod1(b - a)


@dataclass(frozen=True)
class FixedPointDatum:
    """An isolated fixed point: circle level, weight sign and weights (p, q).

    ``match`` optionally names the index of the partner datum of opposite
    sign and equal weights; either all data carry matches or none do.
    """

    level: Fraction
    sign: int
    p: int
    q: int
    match: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "level", Fraction(self.level))
        if not (0 <= self.level < 1):
            raise DomainError(f"level must lie in [0, 1), got {self.level}")
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.p < 1 or self.q < 1 or gcd(self.p, self.q) != 1:
            raise DomainError(f"weights ({self.p}, {self.q}) must be coprime and positive")
        if self.p <= self.q and not (self.p == self.q == 1):
            raise DomainError(f"weights need p > q (or p = q = 1), got ({self.p}, {self.q})")

    @property
    def weights(self) -> tuple[int, int]:
        return (self.p, self.q)


@dataclass(frozen=True)
class ValidationReport:
    outcome: str  # "ok" | "no_obstruction" | "error"
    errors: tuple[str, ...]
    pairs: tuple[tuple[int, int], ...]  # (plus index, minus index)

    @property
    def ok(self) -> bool:
        return self.outcome in ("ok", "no_obstruction")


def _derive_pairs(data: tuple[FixedPointDatum, ...], errors: list[str]) -> tuple[tuple[int, int], ...]:
    given = [i for i, d in enumerate(data) if d.match is not None]
    if given and len(given) != len(data):
        errors.append("explicit pairing must cover all fixed points or none")
        return ()
    if given:
        pairs = set()
        for i in given:
            j = data[i].match
            if not (0 <= j < len(data)) or j == i:
                errors.append(f"fixed point {i}: match index {j} out of range")
                return ()
            if data[j].match != i:
                errors.append(f"fixed points {i} and {j} disagree about their match")
                return ()
            if data[i].sign == data[j].sign or data[i].weights != data[j].weights:
                errors.append(
                    f"fixed points {i} and {j} are not an opposite-sign equal-weight pair"
                )
                return ()
            pairs.add((i, j) if data[i].sign == 1 else (j, i))
        return tuple(sorted(pairs))
    # first-in-first-out among equal weights, counterclockwise from level 0,
    # with leftover blowups wrapping around to the leading blowdowns
    order = sorted(range(len(data)), key=lambda i: data[i].level)
    queues: dict[tuple[int, int], list[int]] = {}
    deficits: dict[tuple[int, int], list[int]] = {}
    pairs = []
    for i in order:
        d = data[i]
        if d.sign == 1:
            queues.setdefault(d.weights, []).append(i)
        else:
            q = queues.get(d.weights)
            if q:
                pairs.append((q.pop(0), i))
            else:
                deficits.setdefault(d.weights, []).append(i)
    for w, plus_left in queues.items():
        minus_left = deficits.get(w, [])
        if len(plus_left) != len(minus_left):
            errors.append(f"unmatched weights {w}: blowups and blowdowns do not balance")
            return ()
        pairs.extend(zip(plus_left, minus_left))
    for w, minus_left in deficits.items():
        if w not in queues and minus_left:
            errors.append(f"unmatched weights {w}: blowdown with no blowup")
            return ()
    return tuple(sorted(pairs))


def validate(data) -> ValidationReport:
    """Check distinctness of levels and derive the blowup/blowdown pairing.

    An empty fixed-point set is the separate 'no obstruction' outcome, not
    an error.
    """
    data = tuple(data)
    if not data:
        return ValidationReport("no_obstruction", (), ())
    errors: list[str] = []
    levels = [d.level for d in data]
    if len(set(levels)) != len(levels):
        errors.append("critical levels must be distinct")
    signs = {d.sign for d in data}
    if signs != {1, -1}:
        errors.append("need at least one blowup (+1) and one blowdown (-1) level")
    pairs: tuple[tuple[int, int], ...] = ()
    if not errors:
        pairs = _derive_pairs(data, errors)
    if errors:
        return ValidationReport("error", tuple(errors), ())
    return ValidationReport("ok", (), pairs)


# -- the interval cover -------------------------------------------------------


@dataclass(frozen=True)
class GeneralizedCover:
    """Open cover of the circle by level gaps U_i and level neighborhoods I_i.

    Arcs are stored as (start, end) with the arc running counterclockwise
    from start to end; all triple intersections are empty and the partial
    order lists exactly the overlapping pairs: I_i < U_i, I_i < U_{i-1} and
    I_1 < U_n (1-indexed, n = number of levels).
    """

    levels: tuple[Fraction, ...]
    eps: Fraction
    u_arcs: tuple[tuple[Fraction, Fraction], ...]
    i_arcs: tuple[tuple[Fraction, Fraction], ...]
    relations: tuple[tuple[str, str], ...]

    def arcs(self) -> dict[str, tuple[Fraction, Fraction]]:
        named = {f"U{i + 1}": arc for i, arc in enumerate(self.u_arcs)}
        named.update({f"I{i + 1}": arc for i, arc in enumerate(self.i_arcs)})
        return named

    @staticmethod
    def arc_contains(arc: tuple[Fraction, Fraction], x: Fraction) -> bool:
        a, b = arc
        return 0 < arc_distance(a, x) < arc_distance(a, b) if a != b else False

    def membership(self, x: Fraction) -> tuple[str, ...]:
        return tuple(n for n, arc in self.arcs().items() if self.arc_contains(arc, x))

    def max_overlap(self) -> int:
        """Exact maximum number of cover sets through a single point.

        Membership is constant on the open intervals between consecutive arc
        endpoints, so checking every endpoint and every midpoint between
        consecutive endpoints decides the maximum exactly.
        """
        cuts = sorted({_mod1(e) for arc in self.arcs().values() for e in arc})
        candidates = list(cuts)
        for a, b in zip(cuts, cuts[1:] + [cuts[0] + 1]):
            candidates.append(_mod1(Fraction(a + b, 2)))
        return max(len(self.membership(x)) for x in candidates)

    def to_json(self) -> dict:
        pair = lambda arc: [rational_json(_mod1(arc[0])), rational_json(_mod1(arc[1]))]
        return {
            "levels": [rational_json(l) for l in self.levels],
            "eps": rational_json(self.eps),
            "U": [pair(a) for a in self.u_arcs],
            "I": [pair(a) for a in self.i_arcs],
            "relations": [list(r) for r in self.relations],
        }


def build_cover(data, eps) -> GeneralizedCover:
    """Cover by gap intervals U_i = (l_i, l_{i+1}) and I_i = (l_i - eps, l_i + eps).

    Requires eps strictly below half the minimal level gap; at or above that
    bound some point would lie in three sets.  The violation message reports
    the supremum of admissible radii.
    """
    data = tuple(data)
    report = validate(data)
    if report.outcome == "no_obstruction":
        raise DomainError("cannot cover the circle from an empty level set")
    if not report.ok:
        raise DomainError("; ".join(report.errors))
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    levels = tuple(sorted(d.level for d in data))
    n = len(levels)
    min_gap = min(arc_distance(levels[i], levels[(i + 1) % n]) for i in range(n))
    if eps >= min_gap / 2:
        raise DomainError(
            f"eps = {eps} too large: must be strictly below half the minimal "
            f"level gap, i.e. below {min_gap / 2}"
        )
    u_arcs = tuple((levels[i], levels[(i + 1) % n]) for i in range(n))
    i_arcs = tuple((l - eps, l + eps) for l in levels)
    relations = [(f"I{i + 1}", f"U{i + 1}") for i in range(n)]
    relations += [(f"I{i + 1}", f"U{i}") for i in range(1, n)]
    relations.append(("I1", f"U{n}"))
    return GeneralizedCover(levels, eps, u_arcs, i_arcs, tuple(relations))


# -- reduced-space state -------------------------------------------------------


class TrackedClassDestroyed(Exception):
    """Raised when the blowdown victim is the tracked class itself."""


@dataclass(frozen=True)
class AreaTrack:
    kind: str  # "tent" | "ray" | "const"
    start: Fraction
    end: Fraction | None
    rate_pq: int = 1
    value: Fraction = Fraction(0)


@dataclass(frozen=True)
class Instance:
    uid: str
    pair: int
    config: BlowupConfig
    created_at: Fraction
    dies_at: Fraction | None
    tracked: bool = False


@dataclass(frozen=True)
class ReducedSpaceState:
    """The evolving bookkeeping state: lattice, orbifold books and areas.

    ``position`` is a cumulative counterclockwise coordinate (it increases
    by 1 per loop; its value mod 1 is the circle level).  Transition
    functions return fresh states; the dict of area records is shared
    structurally but never mutated.
    """

    data: tuple[FixedPointDatum, ...]
    pairs: tuple[tuple[int, int], ...]
    base: Fraction
    position: Fraction
    delta: Fraction
    lattice: IntersectionLattice
    instances: tuple[Instance, ...] = ()
    books: tuple[tuple[str, CyclicSingularity], ...] = ()
    areas: dict = field(default_factory=dict)
    counter: int = 0

    def at(self, position: Fraction) -> "ReducedSpaceState":
        if position < self.position:
            raise DomainError("the simulator only moves counterclockwise")
        return replace(self, position=position)

    def live_classes(self) -> tuple[str, ...]:
        return self.lattice.classes

    def tracked_instance(self) -> Instance | None:
        return next((inst for inst in self.instances if inst.tracked), None)


def default_base(data) -> Fraction:
    """Midpoint of the longest critical-free arc (first such arc on ties)."""
    levels = sorted(d.level for d in data)
    n = len(levels)
    best_i, best_len = 0, Fraction(-1)
    for i in range(n):
        length = arc_distance(levels[i], levels[(i + 1) % n]) if n > 1 else ONE
        if length > best_len:
            best_i, best_len = i, length
    return _mod1(levels[best_i] + best_len / 2)


def default_delta(data) -> Fraction:
    """Chain-class area: 1/1000 of the minimal level gap."""
    levels = sorted(d.level for d in data)
    n = len(levels)
    if n <= 1:
        return Fraction(1, 1000)
    min_gap = min(arc_distance(levels[i], levels[(i + 1) % n]) for i in range(n))
    return min_gap / 1000


def _pair_arc(data, pair: tuple[int, int]) -> Fraction:
    plus, minus = pair
    return arc_distance(data[plus].level, data[minus].level)


def _install(state: ReducedSpaceState, pair_idx: int, created_at: Fraction,
             dies_at: Fraction | None, uid: str, tracked: bool) -> ReducedSpaceState:
    plus, _ = state.pairs[pair_idx]
    d = state.data[plus]
    p, q = d.weights
    if dies_at is None:
        size = Fraction(1)
    else:
        size = (dies_at - created_at) / (2 * p * q)  # tent peak area
    cfg = fulton_config(p, q, size=size, label_prefix=f"{uid}.")
    lattice = state.lattice.direct_sum(cfg.lattice())
    books = list(state.books)
    if p > 1:
        books.append((uid, CyclicSingularity(p, 1, (p - q) % p)))
    if q > 1:
        books.append((uid, CyclicSingularity(q, 1, (q - p) % q)))
    areas = dict(state.areas)
    if dies_at is None:
        areas[cfg.exceptional_label] = AreaTrack("ray", created_at, None, p * q)
    else:
        areas[cfg.exceptional_label] = AreaTrack("tent", created_at, dies_at, p * q)
    for label in cfg.chain_labels:
        areas[label] = AreaTrack("const", created_at, dies_at, 1, state.delta)
    inst = Instance(uid, pair_idx, cfg, created_at, dies_at, tracked)
    return replace(
        state,
        lattice=lattice,
        books=tuple(books),
        areas=areas,
        instances=state.instances + (inst,),
        counter=state.counter + 1,
    )


def initial_state(data, *, base=None, delta=None) -> ReducedSpaceState:
    """The primed state at the base level.

    Every matched pair whose counterclockwise life arc contains the base
    level contributes one live configuration, so the state is consistent
    with the periodic dynamics from the very first crossing.
    """
    data = tuple(data)
    report = validate(data)
    if not report.ok:
        raise DomainError("; ".join(report.errors))
    if report.outcome == "no_obstruction":
        raise DomainError("cannot build a state from an empty fixed-point set")
    base = default_base(data) if base is None else _mod1(Fraction(base))
    if any(d.level == base for d in data):
        raise DomainError(f"base level {base} must be a regular level")
    delta = default_delta(data) if delta is None else Fraction(delta)
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    state = ReducedSpaceState(
        data=data, pairs=report.pairs, base=base, position=base,
        delta=delta, lattice=empty_lattice(),
    )
    for pair_idx, (plus, minus) in enumerate(report.pairs):
        back = arc_distance(data[plus].level, base)
        length = _pair_arc(data, report.pairs[pair_idx])
        if 0 < back < length:
            state = _install(
                state, pair_idx, base - back, base - back + length,
                uid=f"B{state.counter + 1}", tracked=False,
            )
    return state


def cross_level(state: ReducedSpaceState, datum: FixedPointDatum,
                direction: str = "ccw", *, track: str | None = None) -> ReducedSpaceState:
    """Cross one critical level counterclockwise.

    A +1 level installs the resolved (p, q)-weighted blowup: the chain
    classes and exceptional class enter the lattice, the two new orbifold
    points (orders p and q, absent when the order is 1) enter the books and
    the exceptional area starts at zero with slope 1/(p*q).  A -1 level
    identifies the matched configuration whose exceptional area vanishes at
    this level and removes it by weighted blowdown.

    ``track`` applies to +1 crossings: "copy" additionally installs the
    transported copy of the new class (an independent summand that no
    blowdown will touch), "mark" flags the dynamic instance itself as the
    tracked one.
    """
    if direction not in ("ccw", "counterclockwise"):
        raise DomainError("reduced spaces are evolved counterclockwise only")
    try:
        i = state.data.index(datum)
    except ValueError:
        raise DomainError("datum is not part of this state's fixed-point data") from None
    if arc_distance(datum.level, state.position) != 0:
        raise DomainError(
            f"state position {state.position} is not at level {datum.level}"
        )
    if datum.sign == 1:
        pair_idx = next((k for k, (plus, _) in enumerate(state.pairs) if plus == i), None)
        if pair_idx is None:
            raise StructureError(f"fixed point {i} is not the blowup of any pair")
        length = _pair_arc(state.data, state.pairs[pair_idx])
        uid = f"B{state.counter + 1}"
        state = _install(state, pair_idx, state.position,
                         state.position + length, uid,
                         tracked=(track == "mark"))
        if track == "copy":
            state = _install(state, pair_idx, state.position, None, "T", tracked=True)
        log.debug("blowup %s at %s: weights %s", uid, state.position, datum.weights)
        return state
    pair_idx = next((k for k, (_, minus) in enumerate(state.pairs) if minus == i), None)
    if pair_idx is None:
        raise StructureError(f"fixed point {i} is not the blowdown of any pair")
    victims = [inst for inst in state.instances
               if inst.pair == pair_idx and inst.dies_at == state.position]
    if not victims:
        raise StructureError(
            f"model inconsistency: no matched class with vanishing area at "
            f"level {datum.level} (position {state.position})"
        )
    victim = victims[0]
    if victim.tracked:
        raise TrackedClassDestroyed(victim.uid)
    lattice = weighted_blowdown(state.lattice, victim.config)
    books = tuple(b for b in state.books if b[0] != victim.uid)
    instances = tuple(inst for inst in state.instances if inst.uid != victim.uid)
    log.debug("blowdown %s at %s", victim.uid, state.position)
    return replace(state, lattice=lattice, books=books, instances=instances)


def area(state: ReducedSpaceState, label: str, lam: Fraction) -> Fraction:
    """Exact area of a class at cumulative coordinate lam.

    Exceptional classes of matched configurations follow the tent over
    their life arc (slope +1/(p*q) from creation, -1/(p*q) into the matched
    blowdown); the transported tracked class grows at +1/(p*q) without
    bound; chain classes sit at the constant delta.
    """
    lam = Fraction(lam)
    rec = state.areas.get(label)
    if rec is None:
        raise DomainError(f"no class {label!r} was ever present")
    t = lam - rec.start
    if t < 0 or (rec.end is not None and lam > rec.end):
        raise DomainError(f"class {label!r} not present at {lam}")
    if rec.kind == "const":
        return rec.value
    if rec.kind == "ray":
        return t / rec.rate_pq
    length = rec.end - rec.start
    return min(t, length - t) / rec.rate_pq


@dataclass(frozen=True)
class RunResult:
    verdict: str  # HAMILTONIAN | NO_OBSTRUCTION | INCONCLUSIVE | TRACKED_CLASS_DESTROYED
    ledger: tuple[Fraction, ...]
    loop_of_contradiction: int | None
    final_lattice: IntersectionLattice
    base: Fraction | None
    tracked_label: str | None
    bound: int | None
    message: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "message": self.message,
            "ledger": [rational_json(x) for x in self.ledger],
            "loop_of_contradiction": self.loop_of_contradiction,
            "final_lattice": self.final_lattice.to_json(),
            "base": None if self.base is None else rational_json(self.base),
            "tracked": self.tracked_label,
            "bound": self.bound,
        }


def run_loop(data, loops: int, bound: int | None = None, *, base=None,
             delta=None, tracked_independent: bool = True) -> RunResult:
    """Evolve counterclockwise for full loops and watch the tracked ledger.

    The ledger records the tracked class's area at the base level after
    each loop; the verdict flips to HAMILTONIAN at the first loop where the
    number of distinct ledger values exceeds the bound B (default: the
    number of exceptional-type classes in the lattice at the end of the
    first loop).  An empty fixed-point set reports NO_OBSTRUCTION; loops
    exhausted without contradiction report INCONCLUSIVE.
    """
    data = tuple(data)
    if loops < 1:
        raise DomainError(f"loops must be >= 1, got {loops}")
    if not data:
        return RunResult(
            "NO_OBSTRUCTION", (), None, empty_lattice(), None, None, bound,
            "no fixed points: the ledger argument needs a non-empty fixed-point set",
        )
    report = validate(data)
    if not report.ok:
        raise DomainError("; ".join(report.errors))
    state = initial_state(data, base=base, delta=delta)
    order = sorted(range(len(data)), key=lambda i: arc_distance(state.base, data[i].level))
    ledger: list[Fraction] = []
    tracked_label: str | None = None
    bound_val = bound
    for loop in range(1, loops + 1):
        for i in order:
            pos = state.base + (loop - 1) + arc_distance(state.base, data[i].level)
            track = None
            if tracked_label is None and data[i].sign == 1:
                track = "copy" if tracked_independent else "mark"
            try:
                state = cross_level(state.at(pos), data[i], track=track)
            except TrackedClassDestroyed:
                return RunResult(
                    "TRACKED_CLASS_DESTROYED", tuple(ledger), None,
                    state.lattice, state.base, tracked_label, bound_val,
                    "the pairing sends the tracked class's own creation level "
                    "to this blowdown; rerun with an independent tracked class "
                    "to model its transported copy",
                )
            if track is not None:
                inst = state.tracked_instance()
                tracked_label = inst.config.exceptional_label
        state = state.at(state.base + loop)
        ledger.append(area(state, tracked_label, state.position))
        if bound_val is None:
            bound_val = len(state.lattice.exceptional_classes())
            log.debug("bound defaulted to %d exceptional classes", bound_val)
        if len(set(ledger)) > bound_val:
            return RunResult(
                "HAMILTONIAN", tuple(ledger), loop, state.lattice,
                state.base, tracked_label, bound_val,
                f"contradiction at loop {loop}: the tracked class's area "
                f"ledger holds {len(set(ledger))} distinct values, but a "
                f"closed reduced space with b2+ > 1 carries at most "
                f"{bound_val} exceptional classes, so the non-Hamiltonian "
                "premise fails and the action must be Hamiltonian",
            )
    return RunResult(
        "INCONCLUSIVE", tuple(ledger), None, state.lattice,
        state.base, tracked_label, bound_val,
        f"no contradiction within {loops} loops (bound {bound_val}); "
        "increase the loop budget",
    )
