"""Counting submodules and transporting codes along form isometries.

Run with ``python3 demos/isometry_census.py``.
"""

from frobqec import (
    identity_form,
    is_isotropic,
    is_self_orthogonal,
    isometry_action,
    isometry_group,
    make_chain_ring,
    make_space,
    submodule_census,
    submodule_span,
)


def main():
    ring = make_chain_ring(2, 2)
    u = ring.element_from_doc([0, 1])
    space = make_space(ring, 2, 1, identity_form(ring, 2))

    group = isometry_group(space)
    print(f"the site form over F2[u]/(u^2), k=2 has {len(group)} isometries:")
    for g in group:
        print(f"  {g}")

    # transport the nil-layer code: every isometry fixes its size and
    # self-orthogonality, here it even fixes the code pointwise
    code = submodule_span(space, [(u, 0), (0, u)])
    for g in group:
        image = isometry_action(space, g, code)
        assert len(image) == len(code)
        assert is_self_orthogonal(space, image)
    print(f"\nall {len(group)} isometries preserve the nil-layer code's size and orthogonality")

    label = submodule_span(space, [(1, 0, u, 0), (0, 1, 0, u)], doubled=True)
    moved = [isometry_action(space, g, label) for g in group]
    print(f"isotropy survives transport: {all(is_isotropic(space, l) for l in moved)}")

    report = submodule_census(space, max_elems=8)
    print(
        f"\ncensus of the doubled space up to {report.max_elems} elements: "
        f"{report.submodules} submodules, {report.isotropic} isotropic, "
        f"{report.css} css, {report.non_css_with_witness} non-css with a witness"
    )


if __name__ == "__main__":
    main()
