"""Symbolic shift and phase operators and their finite groups.

An element (t, a, b) stands for the unitary exp(2 pi i t) T_a M_b on
functions over the carrier: T_a translates by a, M_b multiplies by the
pairing character of b.  Reordering two such operators only ever costs
a phase, so the whole calculus closes over exact turns:

    (t, a, b) * (t', a', b') = (t + t' + <b, a'>, a + a', b + b')

where <b, a'> is the phase pairing turn.  Commutators land in the
scalars; their value is the alternating bicharacter ``omega`` of the
label pairs, which is what stabiliser analysis runs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ConsistencyError, InvalidInputError, ResourceLimitError
from .rings import TURN_ZERO, Turn, turn_sort_key
from .spaces import (
    PhaseSpace,
    Submodule,
    Vector,
    _check_vector,
    form_eval,
    phase_pairing,
)

DEFAULT_GROUP_BOUND = 4096

LabelPair = tuple[Vector, Vector]


@dataclass(frozen=True)
class WeylElement:
    """An exact scalar times a shift by ``shift`` and a phase by ``phase``."""

    turn: Turn
    shift: Vector
    phase: Vector

    @property
    def label(self) -> LabelPair:
        return (self.shift, self.phase)


def identity_element(space: PhaseSpace) -> WeylElement:
    z = space.zero_vector()
    return WeylElement(TURN_ZERO, z, z)


def weyl_element(space: PhaseSpace, turn: Turn, shift: Vector, phase: Vector) -> WeylElement:
    _check_vector(space, tuple(shift))
    _check_vector(space, tuple(phase))
    return WeylElement(turn, tuple(shift), tuple(phase))


def weyl_mul(space: PhaseSpace, e1: WeylElement, e2: WeylElement) -> WeylElement:
    # Moving M_b of e1 past T_a' of e2 costs the pairing phase <b, a'>.
    cross = phase_pairing(space, e1.phase, e2.shift)
    return WeylElement(
        e1.turn + e2.turn + cross,
        space.add_vec(e1.shift, e2.shift),
        space.add_vec(e1.phase, e2.phase),
    )


def weyl_inv(space: PhaseSpace, e: WeylElement) -> WeylElement:
    back = phase_pairing(space, e.phase, e.shift)
    return WeylElement(
        -e.turn + back,
        space.neg_vec(e.shift),
        space.neg_vec(e.phase),
    )


def weyl_pow(space: PhaseSpace, e: WeylElement, count: int) -> WeylElement:
    if count < 0:
        return weyl_pow(space, weyl_inv(space, e), -count)
    acc = identity_element(space)
    for _ in range(count):
        acc = weyl_mul(space, acc, e)
    return acc


def omega(space: PhaseSpace, p: LabelPair, q: LabelPair) -> Turn:
    """The commutation bicharacter on label pairs.

    omega((a, b), (a', b')) is the turn of character(form(b, a') -
    form(b', a)); it is biadditive, alternating, and exactly the scalar
    produced by commuting the corresponding operators.
    """
    a, b = p
    a2, b2 = q
    return phase_pairing(space, b, a2) - phase_pairing(space, b2, a)


def commutator(space: PhaseSpace, e1: WeylElement, e2: WeylElement) -> Turn:
    """Group commutator e1 e2 e1^-1 e2^-1; always a scalar."""
    prod = weyl_mul(space, weyl_mul(space, e1, e2),
                    weyl_mul(space, weyl_inv(space, e1), weyl_inv(space, e2)))
    zero = space.zero_vector()
    if prod.shift != zero or prod.phase != zero:
        raise ConsistencyError("commutator left the scalar subgroup")
    return prod.turn


def _element_key(e: WeylElement):
    return (e.shift, e.phase, turn_sort_key(e.turn))


class StabiliserGroup:
    """A finite, multiplicatively closed set of Weyl elements."""

    def __init__(self, space: PhaseSpace, generators, elements):
        self.space = space
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements, key=_element_key))
        self._element_set = frozenset(self.elements)

    @cached_property
    def scalar_turns(self) -> tuple[Turn, ...]:
        zero = self.space.zero_vector()
        turns = {e.turn for e in self.elements if e.shift == zero and e.phase == zero}
        return tuple(sorted(turns, key=turn_sort_key))

    @property
    def scalar_free(self) -> bool:
        return self.scalar_turns == (TURN_ZERO,)

    def __contains__(self, e: WeylElement) -> bool:
        return e in self._element_set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"<stabiliser group of order {len(self)}>"


def group_closure(space: PhaseSpace, generators,
                  bound: int = DEFAULT_GROUP_BOUND) -> StabiliserGroup:
    """Multiplicative closure of the generators.

    Every element has finite order (labels are torsion and turns are
    rational), so closing under products alone already yields a group
    containing the identity and all inverses.
    """
    gens = [g for g in generators]
    for g in gens:
        if len(g.shift) != space.rank or len(g.phase) != space.rank:
            raise InvalidInputError("generator labels do not match the space rank")
    ident = identity_element(space)
    elems = {ident}
    elems.update(gens)
    frontier = sorted(elems, key=_element_key)
    while frontier:
        fresh = set()
        for x in frontier:
            for y in elems:
                for p in (weyl_mul(space, x, y), weyl_mul(space, y, x)):
                    if p not in elems and p not in fresh:
                        fresh.add(p)
        elems.update(fresh)
        if len(elems) > bound:
            raise ResourceLimitError(
                f"group closure exceeded the bound of {bound} elements"
            )
        frontier = sorted(fresh, key=_element_key)
    return StabiliserGroup(space, gens, elems)


def is_abelian_mod_scalars(s: StabiliserGroup) -> bool:
    """True iff omega vanishes on the generator labels; biadditivity
    extends that to every pair of elements."""
    gens = s.generators if s.generators else s.elements
    for i, g in enumerate(gens):
        for h in gens[i:]:
            if not omega(s.space, g.label, h.label).is_zero:
                return False
    return True


def offending_pair(s: StabiliserGroup) -> tuple[WeylElement, WeylElement, Turn] | None:
    """First generator pair with a non-trivial commutation scalar."""
    gens = s.generators if s.generators else s.elements
    for i, g in enumerate(gens):
        for h in gens[i:]:
            value = omega(s.space, g.label, h.label)
            if not value.is_zero:
                return (g, h, value)
    return None


# ---------------------------------------------------------------------------
# label correspondence

def join_label(p: LabelPair) -> Vector:
    return tuple(p[0]) + tuple(p[1])


def split_label(space: PhaseSpace, v: Vector) -> LabelPair:
    return (v[: space.rank], v[space.rank :])


def label_module_of(s: StabiliserGroup) -> Submodule:
    """Labels of the group with turns stripped.

    A closed group's label set is closed under addition but, over a
    non-cyclic ring, not necessarily under scalars, so the result is an
    additive module.
    """
    labels = sorted({join_label(e.label) for e in s.elements})
    gen_labels = [join_label(g.label) for g in s.generators]
    module = Submodule(
        s.space, gen_labels or labels, labels, doubled=True, r_closed=False
    )
    return module


def is_isotropic(space: PhaseSpace, l: Submodule) -> bool:
    """Whether omega vanishes identically on the module.

    Scalar-closed modules reduce to generator pairs of the underlying
    ring-valued alternating form (scalars sweep through the character);
    additive-only modules reduce to generator pairs of omega itself.
    """
    if not l.doubled:
        raise InvalidInputError("isotropy applies to label modules in the doubled space")
    gens = l.generators if l.generators else l.elements
    pairs = [split_label(space, tuple(g)) for g in gens]
    if l.r_closed:
        ring = space.ring
        for i, (a, b) in enumerate(pairs):
            for a2, b2 in pairs[i:]:
                d = ring.sub(form_eval(space, b, a2), form_eval(space, b2, a))
                if d != ring.zero:
                    return False
        return True
    for i, p in enumerate(pairs):
        for q in pairs[i:]:
            if not omega(space, p, q).is_zero:
                return False
    return True


def stabiliser_of_labels(space: PhaseSpace, l: Submodule,
                         bound: int = DEFAULT_GROUP_BOUND) -> StabiliserGroup:
    """Lift every module element with turn zero and close.

    The closure's label set is exactly the module again, which is what
    makes the correspondence with label modules round-trip.
    """
    if not l.doubled:
        raise InvalidInputError("label lifts take a module in the doubled space")
    if not is_isotropic(space, l):
        raise InvalidInputError("label module is not isotropic")
    lifts = []
    for v in l.elements:
        a, b = split_label(space, tuple(v))
        lifts.append(WeylElement(TURN_ZERO, a, b))
    return group_closure(space, lifts, bound=bound)


def phase_fix(s: StabiliserGroup) -> StabiliserGroup:
    """Retune the generators of an abelian-mod-scalars group so the
    closure is scalar-free, preserving the label set.

    The group is rebuilt one label generator at a time: each new label c
    is lifted with the turn solving d * t + tau0 = turn of the element
    it must land on, where d is the least multiple of c already covered
    and tau0 is the pairing phase its turn-zero power accumulates.
    Adjusting each generator against only its own order can strand
    scalars in cross relations; the incremental rebuild cannot.
    """
    space = s.space
    if s.scalar_free:
        return s
    if not is_abelian_mod_scalars(s):
        raise InvalidInputError("phase fixing needs an abelian-mod-scalars group")

    add = space.add_vec
    zero_label = join_label((space.zero_vector(), space.zero_vector()))
    table: dict[Vector, WeylElement] = {zero_label: identity_element(space)}
    new_gens: list[WeylElement] = []

    for g in s.generators:
        c = join_label(g.label)
        if c in table:
            continue
        d = 1
        multiple = c
        while multiple not in table:
            multiple = add(multiple, c)
            d += 1
        a, b = split_label(space, c)
        base = WeylElement(TURN_ZERO, a, b)
        tau0 = weyl_pow(space, base, d).turn
        target = table[multiple].turn
        lifted = WeylElement((target - tau0).root(d), a, b)

        powers = [identity_element(space)]
        for _ in range(d - 1):
            powers.append(weyl_mul(space, powers[-1], lifted))
        table = {
            join_label(prod.label): prod
            for e in table.values()
            for prod in (weyl_mul(space, e, p) for p in powers)
        }
        new_gens.append(lifted)

    fixed = StabiliserGroup(space, new_gens, table.values())
    if not fixed.scalar_free:
        raise ConsistencyError("phase fixing left an irreducible scalar")
    if {join_label(e.label) for e in fixed.elements} != {
        join_label(e.label) for e in s.elements
    }:
        raise ConsistencyError("phase fixing changed the label set")
    return fixed


def code_dimension(space: PhaseSpace, s: StabiliserGroup) -> int:
    """Dimension of the joint fixed space: |H| / |S| for a scalar-free
    group, zero as soon as a non-trivial scalar is inside."""
    if not s.scalar_free:
        return 0
    quotient, remainder = divmod(space.size, len(s))
    if remainder:
        raise ConsistencyError(
            f"group order {len(s)} does not divide the carrier size {space.size}"
        )
    return quotient


def noncommutativity_witness(space: PhaseSpace) -> LabelPair | None:
    """First (a, b) in enumeration order whose shift and phase refuse to
    commute, i.e. with a non-trivial pairing turn."""
    for a in space.vectors():
        for b in space.vectors():
            if not phase_pairing(space, b, a).is_zero:
                return (a, b)
    return None


def reconstruct_pairing(space: PhaseSpace) -> dict[tuple[Vector, Vector], Turn]:
    """Recover the phase pairing from group commutators alone.

    For each pair, commute a pure shift against a pure phase with the
    group operations only, then invert the relation
    T_a M_b = pairing(b, a)^-1 M_b T_a.  The table is keyed (b, a).
    """
    if space.size * space.size > (1 << 20):
        raise ResourceLimitError("pairing reconstruction table would be too large")
    zero = space.zero_vector()
    table: dict[tuple[Vector, Vector], Turn] = {}
    for a in space.vectors():
        shift = WeylElement(TURN_ZERO, a, zero)
        for b in space.vectors():
            phase = WeylElement(TURN_ZERO, zero, b)
            table[(b, a)] = -commutator(space, shift, phase)
    return table
