import pytest

from nwe.extendibility import verify_extension
from nwe.families import (EQ1, EQ2, EQ3, completed_eq2_basis, completion_states, decompose,
                          expected_size, extension_witness, family_params, fixture_eq3_3x3,
                          fixture_eq3_3x5, gen_bennett9, gen_eq1, gen_eq2, gen_eq3, generate,
                          candidate_witness_eq3_square)
from nwe.states import ProductState, inner, ket_lin, validate


def _pairs(state_set):
    return {(s.a.coeffs, s.b.coeffs) for s in state_set}


def admissible():
    for n in range(4, 9):
        yield EQ1, 3, n
    for m in range(3, 9):
        for n in range(m, 9):
            if m >= 4:
                yield EQ2, m, n
            yield EQ3, m, n


@pytest.mark.parametrize("family, m, n", list(admissible()))
def test_size_and_orthogonality(family, m, n):
    s = generate(family, m, n)
    assert len(s) == expected_size(family, m, n)
    assert validate(s).ok
    assert s.family == family and (s.m, s.n) == (m, n)
    assert s.labels == [f"phi_{k}" for k in range(1, len(s) + 1)]


@pytest.mark.parametrize("family, m, n", list(admissible()))
def test_decomposition(family, m, n):
    p = family_params(family, m, n)
    assert p.a * (m - 1) + p.b + 1 == n
    assert p.a >= 1 and 0 <= p.b < m - 1


def test_counts_from_formulas():
    assert len(gen_eq1(4)) == 10
    assert len(gen_eq1(5)) == 13
    assert len(gen_eq2(4, 4)) == 12
    assert len(gen_eq2(4, 5)) == 15
    assert len(gen_eq3(3, 4)) == 7


def test_eq1_n7():
    assert decompose(3, 7) == (3, 0)
    s = gen_eq1(7)
    assert len(s) == 19 and validate(s).ok


def test_eq2_5x7():
    assert decompose(5, 7) == (1, 2)
    s = gen_eq2(5, 7)
    assert len(s) == 22 and validate(s).ok


def test_eq3_3x3_states():
    k = ket_lin
    expected = {
        (k(3, [(1, 1)]).coeffs, k(3, [(0, 1), (1, -1)]).coeffs),
        (k(3, [(2, 1)]).coeffs, k(3, [(0, 1), (2, -1)]).coeffs),
        (k(3, [(0, 1), (1, -1)]).coeffs, k(3, [(2, 1)]).coeffs),
        (k(3, [(0, 1), (2, -1)]).coeffs, k(3, [(1, 1)]).coeffs),
        ((1, 1, 1), (1, 1, 1)),
    }
    assert _pairs(gen_eq3(3, 3)) == expected
    assert gen_eq3(3, 3).coefficient_set() == fixture_eq3_3x3().coefficient_set()


def test_eq3_3x5_matches_fixture():
    assert gen_eq3(3, 5).coefficient_set() == fixture_eq3_3x5().coefficient_set()
    assert validate(fixture_eq3_3x5()).ok


@pytest.mark.parametrize("call", [
    lambda: gen_eq1(3), lambda: gen_eq2(3, 5), lambda: gen_eq2(5, 4),
    lambda: gen_eq3(2, 4), lambda: gen_eq3(4, 3), lambda: generate("eq9", 3, 4),
])
def test_parameter_bounds(call):
    with pytest.raises(ValueError):
        call()


def test_bennett9():
    s = gen_bennett9()
    assert len(s) == 9 and validate(s).ok
    assert ((1, 0, 0), (1, 0, 0)) in _pairs(s)


@pytest.mark.parametrize("m, size", [(4, 4), (5, 9), (6, 16)])
def test_completion_sizes(m, size):
    extra = completion_states(m)
    assert len(extra) == size == m * m - 4 * m + 4
    union = completed_eq2_basis(m)
    assert len(union) == m * m and validate(union).ok


def test_completion_rejects_small_m():
    with pytest.raises(ValueError):
        completion_states(3)


@pytest.mark.parametrize("family, m, n", list(admissible()))
def test_extension_witnesses_verify(family, m, n):
    s = generate(family, m, n)
    w = extension_witness(s)
    if (family, m, n) == (EQ3, 3, 3):
        assert w is None
    else:
        assert w is not None and verify_extension(s, w)


def test_known_witnesses():
    zero = extension_witness(gen_eq1(5))
    assert zero.a.coeffs == (1, 0, 0) and zero.b.coeffs == (1, 0, 0, 0, 0)
    w = extension_witness(gen_eq3(3, 5))
    assert w.a.coeffs == (0, 0, 1) and w.b.coeffs == (1, 0, 1, -1, -1)


@pytest.mark.parametrize("m", range(4, 9))
def test_candidate_square_eq3_witness_overlaps_phi2(m):
    # |2>(|0>+|1>-2|3>) has overlap 1 with phi_2 = |2>|0-2>, so it cannot extend the set
    s = gen_eq3(m, m)
    w = candidate_witness_eq3_square(m)
    phi2 = s.states[1]
    assert inner(w.a, phi2.a) * inner(w.b, phi2.b) == 1
    assert not verify_extension(s, w)


def test_extension_witness_unknown_family():
    s = gen_bennett9()
    with pytest.raises(ValueError):
        extension_witness(s)


def test_generator_output_is_orthogonal_to_witness_for_eq2():
    s = gen_eq2(5, 8)
    w = extension_witness(s)
    assert isinstance(w, ProductState) and verify_extension(s, w)
