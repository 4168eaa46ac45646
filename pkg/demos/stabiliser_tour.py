"""From a self-orthogonal code to a phase-fixed stabiliser group.

Walks the chain-ring example end to end: the nil-layer code, mixed
shift/phase generators, scalar turns before and after the phase fix,
the code dimension, and the witness that the code is not CSS.

Run with ``python3 demos/stabiliser_tour.py``.
"""

from frobqec import (
    TURN_ZERO,
    WeylElement,
    code_dimension,
    css_verdict,
    group_closure,
    is_self_orthogonal,
    identity_form,
    label_module_of,
    make_chain_ring,
    make_space,
    orthogonal,
    phase_fix,
    phase_pairing,
    submodule_span,
)


def main():
    ring = make_chain_ring(2, 2)
    u = ring.element_from_doc([0, 1])
    space = make_space(ring, 2, 1, identity_form(ring, 2))
    print(f"space: rank {space.rank}, {space.size} labels over a ring of size {ring.size}")

    # uH is self-orthogonal because eps(u*x * u*y) reads the top
    # coefficient of u^2 * (...) = 0
    code = submodule_span(space, [(u, 0), (0, u)])
    print(f"code uH has {len(code)} elements, self-orthogonal: {is_self_orthogonal(space, code)}")
    dual = orthogonal(space, code)
    print(f"|C| * |C_perp| = {len(code)} * {len(dual)} = {len(code) * len(dual)} = |H|")

    e1, e2 = (1, 0), (0, 1)
    ue1, ue2 = (2, 0), (0, 2)
    s = group_closure(
        space,
        [WeylElement(TURN_ZERO, e1, ue1), WeylElement(TURN_ZERO, e2, ue2)],
    )
    print(f"\nmixed generators close into a group of order {len(s)}")
    print(f"scalar turns before the fix: {[str(t) for t in s.scalar_turns]}")

    fixed = phase_fix(s)
    print(f"scalar turns after the fix:  {[str(t) for t in fixed.scalar_turns]}")
    print(f"code dimension: {code_dimension(space, fixed)}")

    label = label_module_of(fixed)
    verdict = css_verdict(space, label)
    print(f"\nlabel module has {len(label)} elements, css verdict: {verdict.status}")
    a, b = verdict.witness
    print(
        f"witness label (a, b) = ({a}, {b}) pairs to turn "
        f"{phase_pairing(space, b, a)}: its own shift and phase anticommute"
    )


if __name__ == "__main__":
    main()
