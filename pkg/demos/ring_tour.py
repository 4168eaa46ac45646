"""Tour of the three ring families and their generating characters.

Run with ``python3 demos/ring_tour.py``.
"""

from frobqec import (
    make_chain_ring,
    make_product,
    make_zm,
    nilpotency_index,
    nilradical,
    ring_pairing,
    verify_generating_character,
)


def describe(name, ring):
    print(f"== {name} (size {ring.size}) ==")
    print(f"  generating character: {verify_generating_character(ring)}")
    for x in ring.elements():
        print(f"  eps({ring.element_str(x)}) = exp(2*pi*i * {ring.epsilon(x)})")
    nil = nilradical(ring)
    names = ", ".join(ring.element_str(x) for x in nil.elements)
    print(f"  nilradical {{{names}}} has nilpotency index {nilpotency_index(nil)}")
    print()


def main():
    z4 = make_zm(4)
    describe("Z4", z4)

    # m = 2, e = 2 gives the four-element ring with u^2 = 0; the
    # character reads the top coefficient, so eps(u) = -1 while
    # eps(1) = +1.
    f2u = make_chain_ring(2, 2)
    describe("F2[u]/(u^2)", f2u)

    z6 = make_product(make_zm(2), make_zm(3))
    describe("Z2 x Z3", z6)

    # The induced pairing eps(x * y) separates ring elements: every row
    # of the pairing table is distinct.
    print("pairing table of F2[u]/(u^2):")
    for x in f2u.elements():
        row = "  ".join(str(ring_pairing(f2u, x, y)) for y in f2u.elements())
        print(f"  {f2u.element_str(x):8} {row}")


if __name__ == "__main__":
    main()
