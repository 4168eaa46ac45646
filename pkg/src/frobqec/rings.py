"""Finite commutative rings carrying an exact additive character.

A ring lives entirely in lookup tables: the carrier is ``range(size)``,
addition and multiplication are dense ``size x size`` index tables, and
the additive character is a vector of exact rationals (turns).  The
constructors verify the ring axioms and the generating property of the
character at build time, so downstream code never re-proves them.

Three families are provided: integers mod m, chain rings Z_m[u]/(u^e)
with the top-coefficient character, and binary products.  Every family
keeps a small ``family`` descriptor that doubles as its JSON document.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ConsistencyError, InvalidInputError, ResourceLimitError

MAX_RING_SIZE = 4096

# Pairwise laws are always checked over all |R|^2 combinations.  The
# triple laws (associativity, distributivity) switch to seeded random
# triples above this size to stay under a second at the 4096 bound.
EXHAUSTIVE_TRIPLE_LIMIT = 256
_TRIPLE_SAMPLES = 1000
_TRIPLE_SEED = 20260822


@dataclass(frozen=True)
class Turn:
    """A rational number modulo 1, standing for the phase exp(2 pi i t).

    Instances normalise themselves into [0, 1) with a reduced fraction,
    so equality and hashing are structural.
    """

    numerator: int = 0
    denominator: int = 1

    def __post_init__(self) -> None:
        f = Fraction(self.numerator, self.denominator)
        f -= math.floor(f)
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @classmethod
    def from_fraction(cls, f: Fraction) -> Turn:
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> Turn:
        """Parse the serialised form ``"num/den"`` (a bare integer is
        accepted and means a whole number of turns)."""
        if not isinstance(text, str):
            raise InvalidInputError(f"turn must be a string, got {text!r}")
        num, slash, den = text.partition("/")
        try:
            if slash:
                return cls(int(num), int(den))
            return cls(int(num), 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad turn literal {text!r}") from exc

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other: Turn) -> Turn:
        return Turn.from_fraction(self.fraction + other.fraction)

    def __sub__(self, other: Turn) -> Turn:
        return Turn.from_fraction(self.fraction - other.fraction)

    def __neg__(self) -> Turn:
        return Turn.from_fraction(-self.fraction)

    def __mul__(self, count: int) -> Turn:
        return Turn.from_fraction(self.fraction * count)

    __rmul__ = __mul__

    def root(self, count: int) -> Turn:
        """One exact count-th root; any choice differs by a multiple of
        1/count and callers never depend on which branch is taken."""
        if count < 1:
            raise InvalidInputError("root count must be positive")
        return Turn.from_fraction(self.fraction / count)

    def as_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.numerator / self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


TURN_ZERO = Turn(0, 1)


def turn_sort_key(t: Turn) -> Fraction:
    return t.fraction


@dataclass(frozen=True, eq=False)
class RingSpec:
    """A finite commutative ring with a generating additive character.

    ``add_table``/``mul_table`` are dense index tables over the carrier
    ``range(size)``.  ``eps_num[x] / eps_den`` is the turn of the
    character at x; all entries share one denominator so the additivity
    and generating checks vectorise.  Instances are immutable; equality
    is identity (compare tables directly when structural equality is
    meant).
    """

    size: int
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    zero: int
    one: int
    eps_num: np.ndarray
    eps_den: int
    family: dict

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg_table[y]])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def epsilon(self, x: int) -> Turn:
        return Turn(int(self.eps_num[x]), self.eps_den)

    def elements(self) -> range:
        return range(self.size)

    def element_to_doc(self, x: int):
        return element_to_doc(self.family, x)

    def element_from_doc(self, doc) -> int:
        return element_from_doc(self.family, doc)

    def element_str(self, x: int) -> str:
        return repr(self.element_to_doc(x))


def ring_pairing(ring: RingSpec, x: int, y: int) -> Turn:
    """The symmetric pairing (x, y) -> character(x * y)."""
    return ring.epsilon(ring.mul(x, y))


def verify_generating_character(ring: RingSpec) -> bool:
    """True iff x -> character(x * .) is injective on the carrier.

    This is the Frobenius condition: it makes the additive group of the
    ring self-dual through the multiplication pairing.
    """
    rows = ring.eps_num[ring.mul_table] % ring.eps_den
    seen = set()
    for i in range(ring.size):
        key = rows[i].tobytes()
        if key in seen:
            return False
        seen.add(key)
    return True


# ---------------------------------------------------------------------------
# constructors

def make_zm(m: int) -> RingSpec:
    """Integers mod m with character x -> turn x/m."""
    _check_modulus(m)
    idx = np.arange(m, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % m
    mul = (idx[:, None] * idx[None, :]) % m
    neg = (-idx) % m
    spec = RingSpec(
        size=m,
        add_table=add,
        mul_table=mul,
        neg_table=neg,
        zero=0,
        one=1,
        eps_num=idx.copy(),
        eps_den=m,
        family={"family": "zm", "m": m},
    )
    _validate_ring(spec)
    return spec


def make_chain_ring(m: int, e: int) -> RingSpec:
    """Z_m[u]/(u^e) with the top-coefficient character.

    An element sum(a_i u^i) is encoded as the index sum(a_i m^i); its
    character turn is a_{e-1}/m.  The generating property of that choice
    is not assumed: it is verified exhaustively and construction fails
    if it does not hold.
    """
    _check_modulus(m)
    if not isinstance(e, int) or e < 1:
        raise InvalidInputError(f"chain length must be a positive integer, got {e!r}")
    size = m**e
    if size > MAX_RING_SIZE:
        raise ResourceLimitError(f"chain ring size {size} exceeds {MAX_RING_SIZE}")
    powers = m ** np.arange(e, dtype=np.int64)
    coeffs = (np.arange(size, dtype=np.int64)[:, None] // powers[None, :]) % m

    add = np.zeros((size, size), dtype=np.int64)
    for i in range(e):
        add += ((coeffs[:, i, None] + coeffs[None, :, i]) % m) * int(powers[i])

    # Polynomial product truncated at u^e, accumulated one degree at a
    # time to keep the temporaries two dimensional.
    mul = np.zeros((size, size), dtype=np.int64)
    for deg in range(e):
        conv = np.zeros((size, size), dtype=np.int64)
        for i in range(deg + 1):
            conv += coeffs[:, i, None] * coeffs[None, :, deg - i]
        mul += (conv % m) * int(powers[deg])

    neg = ((-coeffs) % m) @ powers
    spec = RingSpec(
        size=size,
        add_table=add,
        mul_table=mul,
        neg_table=neg,
        zero=0,
        one=1,
        eps_num=coeffs[:, e - 1].copy(),
        eps_den=m,
        family={"family": "chain", "m": m, "e": e},
    )
    _validate_ring(spec)
    return spec


def make_product(r1: RingSpec, r2: RingSpec) -> RingSpec:
    """Componentwise product ring; the character is the sum of the
    component characters (turns add)."""
    size = r1.size * r2.size
    if size > MAX_RING_SIZE:
        raise ResourceLimitError(f"product ring size {size} exceeds {MAX_RING_SIZE}")
    s2 = r2.size
    idx = np.arange(size, dtype=np.int64)
    ia, ib = idx // s2, idx % s2

    def combine(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        return t1[ia[:, None], ia[None, :]] * s2 + t2[ib[:, None], ib[None, :]]

    den = math.lcm(r1.eps_den, r2.eps_den)
    eps = (
        r1.eps_num[ia] * (den // r1.eps_den) + r2.eps_num[ib] * (den // r2.eps_den)
    ) % den
    spec = RingSpec(
        size=size,
        add_table=combine(r1.add_table, r2.add_table),
        mul_table=combine(r1.mul_table, r2.mul_table),
        neg_table=r1.neg_table[ia] * s2 + r2.neg_table[ib],
        zero=r1.zero * s2 + r2.zero,
        one=r1.one * s2 + r2.one,
        eps_num=eps,
        eps_den=den,
        family={"family": "product", "factors": [r1.family, r2.family]},
    )
    _validate_ring(spec)
    return spec


def _check_modulus(m: int) -> None:
    if not isinstance(m, int) or m < 2:
        raise InvalidInputError(f"modulus must be an integer >= 2, got {m!r}")
    if m > MAX_RING_SIZE:
        raise ResourceLimitError(f"modulus {m} exceeds {MAX_RING_SIZE}")


def _validate_ring(spec: RingSpec) -> None:
    """Exhaustive construction-time verification.  Failures raise
    ConsistencyError: they mean the builder is wrong, not the caller."""
    n = spec.size
    idx = np.arange(n)
    a, m_ = spec.add_table, spec.mul_table
    for table in (a, m_):
        if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
            raise ConsistencyError("table shape or range is off")
    if not np.array_equal(a, a.T):
        raise ConsistencyError("addition is not commutative")
    if not np.array_equal(a[spec.zero], idx):
        raise ConsistencyError("zero is not an additive identity")
    if not np.array_equal(a[idx, spec.neg_table], np.full(n, spec.zero)):
        raise ConsistencyError("negation table is wrong")
    if not np.array_equal(m_, m_.T):
        raise ConsistencyError("multiplication is not commutative")
    if not np.array_equal(m_[spec.one], idx):
        raise ConsistencyError("one is not a multiplicative identity")
    eps = spec.eps_num % spec.eps_den
    if not np.array_equal(eps, spec.eps_num):
        raise ConsistencyError("character numerators are not reduced mod the denominator")
    if ((eps[a] - eps[:, None] - eps[None, :]) % spec.eps_den != 0).any():
        raise ConsistencyError("character is not additive")
    if not verify_generating_character(spec):
        raise ConsistencyError("character is not generating")

    if n <= EXHAUSTIVE_TRIPLE_LIMIT:
        for x in range(n):
            if not np.array_equal(a[a[x]], a[x][a]):
                raise ConsistencyError("addition is not associative")
            if not np.array_equal(m_[m_[x]], m_[x][m_]):
                raise ConsistencyError("multiplication is not associative")
            if not np.array_equal(m_[x][a], a[m_[x][:, None], m_[x][None, :]]):
                raise ConsistencyError("multiplication does not distribute")
    else:
        rng = np.random.default_rng(_TRIPLE_SEED)
        x, y, z = rng.integers(0, n, size=(3, _TRIPLE_SAMPLES))
        if not np.array_equal(a[a[x, y], z], a[x, a[y, z]]):
            raise ConsistencyError("addition is not associative")
        if not np.array_equal(m_[m_[x, y], z], m_[x, m_[y, z]]):
            raise ConsistencyError("multiplication is not associative")
        if not np.array_equal(m_[x, a[y, z]], a[m_[x, y], m_[x, z]]):
            raise ConsistencyError("multiplication does not distribute")

    for table in (spec.add_table, spec.mul_table, spec.neg_table, spec.eps_num):
        table.setflags(write=False)


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal given by its full, sorted element list."""

    ring: RingSpec
    elements: tuple[int, ...]

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.element_set

    def __len__(self) -> int:
        return len(self.elements)


def close_under_addition(add, zero, items):
    """Subgroup of a finite abelian group generated by ``items``.

    Grows one generator at a time: the subgroup generated by a subgroup
    S and an element g is the union of the cosets S + j*g.
    """
    closed = {zero}
    for g in items:
        if g in closed:
            continue
        multiples = []
        c = g
        while c not in closed:
            multiples.append(c)
            c = add(c, g)
        closed.update(add(s, m) for s in list(closed) for m in multiples)
    return closed


def ideal_span(ring: RingSpec, generators) -> Ideal:
    """Smallest ideal containing the generators: the additive closure of
    all ring multiples of them."""
    multiples = {ring.mul(r, g) for g in generators for r in ring.elements()}
    elems = close_under_addition(ring.add, ring.zero, sorted(multiples))
    ideal = Ideal(ring, tuple(sorted(elems)))
    _check_ideal(ideal)
    return ideal


def nilradical(ring: RingSpec) -> Ideal:
    """The ideal of nilpotent elements.

    x is nilpotent iff x^(2^t) = 0 once 2^t reaches the ring size, so a
    few rounds of table squaring settle every element at once.
    """
    p = np.arange(ring.size)
    for _ in range(max(1, (ring.size - 1).bit_length())):
        p = ring.mul_table[p, p]
    elems = tuple(int(x) for x in np.flatnonzero(p == ring.zero))
    ideal = Ideal(ring, elems)
    _check_ideal(ideal)
    return ideal


def nilpotency_index(ideal: Ideal) -> int:
    """Least h >= 1 with ideal^h = {0}.  Input must be nil."""
    ring = ideal.ring
    nil = nilradical(ring).element_set
    bad = [x for x in ideal.elements if x not in nil]
    if bad:
        raise InvalidInputError(
            f"element {ring.element_str(bad[0])} of the ideal is not nilpotent"
        )
    power = set(ideal.elements) | {ring.zero}
    h = 1
    while power != {ring.zero}:
        products = {ring.mul(p, x) for p in power for x in ideal.elements}
        power = close_under_addition(ring.add, ring.zero, sorted(products))
        h += 1
        if h > ring.size + 1:
            raise ConsistencyError("nilpotency index failed to terminate")
    return h


def _check_ideal(ideal: Ideal) -> None:
    ring = ideal.ring
    elems = ideal.element_set
    if ring.zero not in elems:
        raise ConsistencyError("ideal is missing zero")
    for x in ideal.elements:
        for y in ideal.elements:
            if ring.add(x, y) not in elems:
                raise ConsistencyError("ideal is not additively closed")
        for r in ring.elements():
            if ring.mul(r, x) not in elems:
                raise ConsistencyError("ideal is not closed under ring multiples")


# ---------------------------------------------------------------------------
# element documents

def family_size(family: dict) -> int:
    kind = family.get("family")
    if kind == "zm":
        return family["m"]
    if kind == "chain":
        return family["m"] ** family["e"]
    if kind == "product":
        left, right = family["factors"]
        return family_size(left) * family_size(right)
    raise InvalidInputError(f"unknown ring family {kind!r}")


def element_to_doc(family: dict, x: int):
    kind = family["family"]
    if kind == "zm":
        return int(x)
    if kind == "chain":
        m, e = family["m"], family["e"]
        digits = []
        for _ in range(e):
            digits.append(int(x % m))
            x //= m
        return digits
    if kind == "product":
        left, right = family["factors"]
        s2 = family_size(right)
        return [element_to_doc(left, x // s2), element_to_doc(right, x % s2)]
    raise InvalidInputError(f"unknown ring family {kind!r}")


def element_from_doc(family: dict, doc) -> int:
    kind = family["family"]
    if kind == "zm":
        if not isinstance(doc, int) or isinstance(doc, bool):
            raise InvalidInputError(f"expected an integer element, got {doc!r}")
        return doc % family["m"]
    if kind == "chain":
        m, e = family["m"], family["e"]
        if not isinstance(doc, list) or len(doc) != e:
            raise InvalidInputError(f"expected {e} coefficients, got {doc!r}")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in doc):
            raise InvalidInputError(f"coefficients must be integers, got {doc!r}")
        x = 0
        for c in reversed(doc):
            x = x * m + (c % m)
        return x
    if kind == "product":
        left, right = family["factors"]
        if not isinstance(doc, list) or len(doc) != 2:
            raise InvalidInputError(f"expected a two component element, got {doc!r}")
        return element_from_doc(left, doc[0]) * family_size(right) + element_from_doc(
            right, doc[1]
        )
    raise InvalidInputError(f"unknown ring family {kind!r}")
