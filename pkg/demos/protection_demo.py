"""Nilpotent ideals protect their layer, and only admissible errors.

For a square-zero ideal N the code N*H produces no syndrome against
errors whose phase half lies in the orthogonal of N*H.  The sweep
confirms that, and then exhibits a non-admissible error that does
disturb the code, so the restriction is not vacuous.

Run with ``python3 demos/protection_demo.py``.
"""

from frobqec import (
    check_nilpotent_protection,
    ideal_span,
    identity_form,
    make_chain_ring,
    make_space,
    make_zm,
)


def show(name, ring, gen_doc, k, n):
    ideal = ideal_span(ring, [ring.element_from_doc(gen_doc)])
    space = make_space(ring, k, n, identity_form(ring, k))
    report = check_nilpotent_protection(space, ideal)
    print(f"== {name}, ideal generated by {gen_doc}, k={k}, n={n} ==")
    print(f"  ideal squares to zero: {report.square_zero}")
    print(f"  layer code size: {report.code_size}, self-orthogonal: {report.self_orthogonal}")
    print(f"  admissible errors commute with the whole code: {report.passed}")
    shift, phase, turn = report.demo
    print(
        f"  demo: the non-admissible error (shift {shift}, phase {phase}) "
        f"hits the code at turn {turn}"
    )
    print()


def main():
    show("F2[u]/(u^2)", make_chain_ring(2, 2), [0, 1], 2, 1)
    show("Z4", make_zm(4), 2, 1, 2)
    show("Z4", make_zm(4), 2, 2, 2)


if __name__ == "__main__":
    main()
