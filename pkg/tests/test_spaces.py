"""The module layer: exact vectors, perfect forms, orthogonality.

Orthogonal complements are where the non-cyclic subtlety lives: the
kernel of the character is not an ideal, so a vector can pair trivially
with a generator while a scalar multiple of that generator still sees
it.  Several tests pin that behaviour against brute-force sweeps.
"""

from itertools import product as iproduct

import numpy as np
import pytest

from frobqec import (
    InvalidInputError,
    ResourceLimitError,
    Turn,
    additive_module,
    ambient_bound,
    enumerate_submodules,
    form_eval,
    identity_form,
    is_self_orthogonal,
    make_space,
    make_zm,
    orthogonal,
    pairing_turn_numerators,
    phase_pairing,
    submodule_span,
)
from frobqec.spaces import AMBIENT_BOUND, ENV_AMBIENT_BOUND, form_many

from conftest import std_space

U = 2


def test_vector_index_round_trip(z4_pair):
    for i in range(z4_pair.size):
        v = z4_pair.vector_from_index(i)
        assert z4_pair.vector_index(v) == i
    assert z4_pair.vector_index((1, 0)) == 1
    assert z4_pair.vector_index((0, 1)) == 4


def test_vector_arithmetic(z4_pair):
    assert z4_pair.add_vec((1, 3), (3, 2)) == (0, 1)
    assert z4_pair.neg_vec((1, 0)) == (3, 0)
    assert z4_pair.sub_vec((0, 1), (1, 0)) == (3, 1)
    assert z4_pair.scalar_vec(2, (1, 3)) == (2, 2)


def test_identity_form_shape(z4):
    assert identity_form(z4, 2) == ((1, 0), (0, 1))


def test_form_eval_against_direct_sum(f2u_plane):
    # Oracle: the textbook double loop over sites and coordinates.
    ring = f2u_plane.ring
    form = f2u_plane.form
    k = f2u_plane.k
    for v in list(f2u_plane.vectors())[:40]:
        for w in list(f2u_plane.vectors())[:40:3]:
            total = ring.zero
            for site in range(f2u_plane.n):
                for p in range(k):
                    for q in range(k):
                        term = ring.mul(ring.mul(v[site * k + p], form[p][q]), w[site * k + q])
                        total = ring.add(total, term)
            assert form_eval(f2u_plane, v, w) == total


def test_form_is_symmetric(z4_pair):
    for v in z4_pair.vectors():
        for w in z4_pair.vectors():
            assert form_eval(z4_pair, v, w) == form_eval(z4_pair, w, v)


def test_phase_pairing_values(z4_line, f2u_line):
    assert phase_pairing(z4_line, (1,), (1,)) == Turn(1, 4)
    assert phase_pairing(z4_line, (2,), (2,)) == Turn(0, 1)
    assert phase_pairing(f2u_line, (1,), (U,)) == Turn(1, 2)
    assert phase_pairing(f2u_line, (1,), (1,)) == Turn(0, 1)


def test_form_many_matches_form_eval(f2u_line, z4_pair):
    for space in (f2u_line, z4_pair):
        rows = np.asarray(list(space.vectors()), dtype=np.int64)
        table = form_many(space, rows, rows)
        for i, v in enumerate(space.vectors()):
            for j, w in enumerate(space.vectors()):
                assert int(table[i, j]) == form_eval(space, v, w)


def test_pairing_turn_numerators_zero_pattern(z4_line):
    nums = pairing_turn_numerators(
        z4_line, list(z4_line.vectors()), list(z4_line.vectors())
    )
    for i in range(4):
        for j in range(4):
            assert (nums[i, j] == 0) == phase_pairing(z4_line, (i,), (j,)).is_zero


def test_make_space_input_validation(z4):
    with pytest.raises(InvalidInputError):
        make_space(z4, 0, 1, ())
    with pytest.raises(InvalidInputError):
        make_space(z4, 1, 1, ((1, 0),))
    with pytest.raises(InvalidInputError):
        make_space(z4, 2, 1, ((1, 0), (1, 1)))
    with pytest.raises(InvalidInputError):
        make_space(z4, 1, 1, ((7,),))


def test_imperfect_forms_are_rejected(z4, z2, f2u):
    # 2 annihilates half of Z4, so [[2]] has a kernel; same for [[u]].
    with pytest.raises(InvalidInputError):
        make_space(z4, 1, 1, ((2,),))
    with pytest.raises(InvalidInputError):
        make_space(z2, 1, 1, ((0,),))
    with pytest.raises(InvalidInputError):
        make_space(f2u, 1, 1, ((U,),))


def test_unit_form_is_perfect(z4, f2u):
    assert make_space(z4, 1, 1, ((3,),)).size == 4
    one_plus_u = f2u.add(f2u.one, U)
    assert make_space(f2u, 1, 1, ((one_plus_u,),)).size == 4


def test_offdiagonal_perfect_form(z4):
    # The hyperbolic plane: singular diagonal blocks, perfect as a whole.
    space = make_space(z4, 2, 1, ((0, 1), (1, 0)))
    assert phase_pairing(space, (1, 0), (0, 1)) == Turn(1, 4)
    assert phase_pairing(space, (1, 0), (1, 0)) == Turn(0, 1)


def test_ambient_bound_env_override(monkeypatch, z4):
    monkeypatch.setenv(ENV_AMBIENT_BOUND, "16")
    assert ambient_bound() == 16
    with pytest.raises(ResourceLimitError):
        make_space(z4, 1, 3, identity_form(z4, 1))
    monkeypatch.setenv(ENV_AMBIENT_BOUND, str(AMBIENT_BOUND * 4))
    assert ambient_bound() == AMBIENT_BOUND
    monkeypatch.setenv(ENV_AMBIENT_BOUND, "junk")
    with pytest.raises(InvalidInputError):
        ambient_bound()
    monkeypatch.setenv(ENV_AMBIENT_BOUND, "0")
    with pytest.raises(InvalidInputError):
        ambient_bound()


# ---------------------------------------------------------------------------
# submodules

def test_submodule_span_closes_under_scalars(z4_line, f2u_line):
    doubles = submodule_span(z4_line, [(2,)])
    assert doubles.elements == ((0,), (2,))
    assert doubles.r_closed
    whole = submodule_span(f2u_line, [(1,)])
    assert len(whole) == 4


def test_additive_module_keeps_only_sums(f2u_line):
    # Additive closure of {1} over the chain ring misses u * 1.
    part = additive_module(f2u_line, [(1,)])
    assert part.elements == ((0,), (1,))
    assert not part.r_closed
    assert (U,) not in part


def test_submodule_equality_and_containment(z4_line):
    a = submodule_span(z4_line, [(2,)])
    b = submodule_span(z4_line, [(2,), (0,)])
    assert a == b and hash(a) == hash(b)
    assert (2,) in a and (1,) not in a
    assert len(a) == 2


def test_vector_validation(z4_line):
    with pytest.raises(InvalidInputError):
        submodule_span(z4_line, [(1, 0)])
    with pytest.raises(InvalidInputError):
        submodule_span(z4_line, [(4,)])


def _orthogonal_by_hand(space, code):
    out = []
    for v in space.vectors():
        if all(phase_pairing(space, v, w).is_zero for w in code.elements):
            out.append(v)
    return out


def test_orthogonal_against_brute_force(z4_pair, f2u_line, f2u_plane):
    cases = [
        (z4_pair, [(2, 0), (0, 2)]),
        (z4_pair, [(1, 0)]),
        (f2u_line, [(U,)]),
        (f2u_plane, [(U, 0), (0, U)]),
        (f2u_plane, [(1, U)]),
    ]
    for space, gens in cases:
        code = submodule_span(space, gens)
        perp = orthogonal(space, code)
        assert list(perp.elements) == sorted(_orthogonal_by_hand(space, code))


def test_orthogonal_needs_scalar_probes(f2u_line):
    # v = 1 pairs trivially with the generator 1 but not with u * 1, so
    # the complement of the full line is just zero.  A generator-only
    # scan would wrongly keep v.
    line = submodule_span(f2u_line, [(1,)])
    perp = orthogonal(f2u_line, line)
    assert perp.elements == ((0,),)
    assert phase_pairing(f2u_line, (1,), (1,)).is_zero
    assert not phase_pairing(f2u_line, (1,), (U,)).is_zero


def test_orthogonal_of_trivial_code_is_everything(z4_line):
    trivial = submodule_span(z4_line, [])
    assert len(orthogonal(z4_line, trivial)) == z4_line.size


def test_duality_product_over_all_small_submodules(z4_line, f2u_line):
    # |C| * |C_perp| = |H| is the perfectness of the induced pairing.
    for space in (z4_line, f2u_line):
        for code in enumerate_submodules(space):
            perp = orthogonal(space, code)
            assert len(code) * len(perp) == space.size


def test_self_orthogonality_scalar_closure_distinction(f2u_line):
    # On generators alone the turn criterion would pass the full line:
    # <1, 1> is trivial.  The scalar-closed test must consult the form.
    line = submodule_span(f2u_line, [(1,)])
    assert not is_self_orthogonal(f2u_line, line)
    additive = additive_module(f2u_line, [(1,)])
    assert is_self_orthogonal(f2u_line, additive)
    u_line = submodule_span(f2u_line, [(U,)])
    assert is_self_orthogonal(f2u_line, u_line)


def test_self_orthogonal_matches_containment(z4_pair):
    for code in enumerate_submodules(z4_pair):
        perp_set = set(orthogonal(z4_pair, code).elements)
        assert is_self_orthogonal(z4_pair, code) == set(code.elements).issubset(perp_set)


def _submodules_by_hand(space):
    """Oracle: spans of all generator pairs; two generators suffice for
    every submodule at these sizes."""
    seen = set()
    vectors = list(space.vectors())
    for v, w in iproduct(vectors, vectors):
        seen.add(submodule_span(space, [v, w]).elements)
    return seen


def test_enumerate_submodules_matches_pair_spans(z2_line, z4_line, f2u_line):
    for space in (z2_line, z4_line, f2u_line):
        found = {m.elements for m in enumerate_submodules(space)}
        assert found == _submodules_by_hand(space)


def test_enumerate_submodule_counts(z2_line, z4_line, f2u_line):
    # Frozen counts, confirmed by the pair-span oracle above.
    assert len(enumerate_submodules(z2_line, doubled=True)) == 5
    assert len(enumerate_submodules(z4_line, doubled=True)) == 15
    assert len(enumerate_submodules(f2u_line, doubled=True)) == 15


def test_enumerate_respects_max_elems(z4_line):
    small = enumerate_submodules(z4_line, doubled=True, max_elems=2)
    assert all(len(m) <= 2 for m in small)
    assert len(small) == 4


def test_enumerate_bound(z4):
    space = std_space(z4, 1, 5)
    with pytest.raises(ResourceLimitError):
        enumerate_submodules(space, doubled=True)
