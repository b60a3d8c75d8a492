import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nwe.extendibility import (BUDGET_EXCEEDED, EXTENDIBLE, UPB, check_completion_basis,
                               default_budget, find_product_extension, separable_discriminate,
                               verify_extension)
from nwe.families import (completed_eq2_basis, fixture_eq3_3x5, gen_bennett9, gen_eq1, gen_eq2,
                          gen_eq3)
from nwe.states import ProductState, StateSet, ket_lin
from oracles import naive_extendible, random_valid_set


def standard_basis(m, n):
    return StateSet(m, n, tuple(
        ProductState(f"e{i}{j}", ket_lin(m, [(i, 1)]), ket_lin(n, [(j, 1)]))
        for i in range(m) for j in range(n)))


def test_eq3_3x3_is_upb():
    r = find_product_extension(gen_eq3(3, 3))
    assert r.status == UPB and r.witness is None
    assert r.explored <= 32


def test_eq3_3x5_fixture_is_extendible():
    s = fixture_eq3_3x5()
    r = find_product_extension(s)
    assert r.status == EXTENDIBLE and verify_extension(s, r.witness)
    witness = ProductState("phi_10", ket_lin(3, [(2, 1)]),
                           ket_lin(5, [(0, 1), (2, 1), (3, -1), (4, -1)]))
    assert verify_extension(s, witness)


def test_complete_basis_is_upb():
    assert find_product_extension(standard_basis(2, 2)).status == UPB


def test_budget_exceeded_is_distinct():
    r = find_product_extension(gen_eq3(3, 3), budget=3)
    assert r.status == BUDGET_EXCEEDED and r.witness is None


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("NWE_BUDGET", "3")
    assert default_budget() == 3
    assert find_product_extension(gen_eq3(3, 3)).status == BUDGET_EXCEEDED
    monkeypatch.setenv("NWE_BUDGET", "lots")
    with pytest.raises(ValueError):
        default_budget()


def test_verify_extension():
    zero = ProductState("z", ket_lin(3, [(0, 1)]), ket_lin(5, [(0, 1)]))
    assert verify_extension(gen_eq1(5), zero)
    s = gen_eq3(4, 4)
    # a member is never orthogonal to itself
    assert not verify_extension(s, s.states[3])
    with pytest.raises(ValueError):
        verify_extension(s, zero)


def test_completion_basis():
    assert check_completion_basis(completed_eq2_basis(4))
    assert not check_completion_basis(gen_eq2(4, 4))
    assert check_completion_basis(standard_basis(2, 2))
    assert check_completion_basis(gen_bennett9())


def test_separable_discriminate():
    basis = completed_eq2_basis(4)
    p = separable_discriminate(basis, 0)
    assert p[0] == 1 and not any(p[1:])
    assert separable_discriminate(standard_basis(2, 2), 3) == (0, 0, 0, 1)
    for k in range(len(basis)):
        assert sum(separable_discriminate(basis, k)) == 1
    with pytest.raises(ValueError):
        separable_discriminate(gen_eq2(4, 4), 0)
    with pytest.raises(IndexError):
        separable_discriminate(basis, 16)


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_search_matches_enumeration(m, n):
    rng = random.Random(m * 31 + n)
    for _ in range(40):
        s = random_valid_set(rng, m, n, 12, attempts=200)
        r = find_product_extension(s)
        assert (r.status == EXTENDIBLE) == naive_extendible(s)
        if r.status == EXTENDIBLE:
            assert verify_extension(s, r.witness)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_search_is_deterministic(seed):
    s = random_valid_set(random.Random(seed), 3, 3, 9, attempts=200)
    first = find_product_extension(s)
    again = find_product_extension(s, budget=2 ** 12)
    assert (first.status, first.witness, first.explored) == (again.status, again.witness, again.explored)
