"""The dense numeric oracle agreeing with the symbolic calculus.

Realises shift and phase operators as complex matrices, measures the
commutation scalar numerically, and compares the stabiliser projector
rank against the exact code dimension.

Run with ``python3 demos/oracle_demo.py``.
"""

import numpy as np

from frobqec import (
    TURN_ZERO,
    WeylElement,
    code_dimension,
    commutator,
    group_closure,
    identity_form,
    make_zm,
    make_space,
    phase_fix,
    projector_rank,
    weyl_matrix,
)


def main():
    ring = make_zm(4)
    space = make_space(ring, 1, 1, identity_form(ring, 1))

    shift = WeylElement(TURN_ZERO, (1,), (0,))
    phase = WeylElement(TURN_ZERO, (0,), (1,))
    t = weyl_matrix(space, shift)
    m = weyl_matrix(space, phase)

    print("shift matrix over Z4 (cyclic permutation):")
    print(np.round(t.real).astype(int))
    print("phase matrix (diagonal of fourth roots of unity):")
    print(np.round(m, 3))

    # the measured scalar T M T^-1 M^-1 must be the exact commutator turn
    measured = (t @ m @ np.linalg.inv(t) @ np.linalg.inv(m))[0, 0]
    exact = commutator(space, shift, phase)
    print(f"\nmeasured commutation scalar: {measured:.6f}")
    print(f"exact commutator turn:       {exact} (i.e. {exact.as_complex():.6f})")

    # a two-site shift stabiliser: projector rank equals |H| / |S|
    pair = make_space(ring, 1, 2, identity_form(ring, 1))
    s = phase_fix(
        group_closure(
            pair,
            [
                WeylElement(TURN_ZERO, (2, 0), (0, 0)),
                WeylElement(TURN_ZERO, (0, 2), (0, 0)),
            ],
        )
    )
    dim = code_dimension(pair, s)
    rank = projector_rank(pair, s)
    print(f"\ntwo-site stabiliser of order {len(s)} on {pair.size} labels:")
    print(f"exact dimension {dim}, numeric projector rank {rank}")


if __name__ == "__main__":
    main()
