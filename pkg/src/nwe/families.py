"""Constructions of locally indistinguishable orthogonal product sets.

Three parametric families are provided:

``eq1``  3 x n (n > 3), 3n - 2 states
``eq2``  m x n (4 <= m <= n), 3n + m - 4 states
``eq3``  m x n (3 <= m <= n), 2n - 1 states

All three write ``n = a*(m - 1) + b + 1`` with ``a >= 1`` and
``0 <= b < m - 1``.  Bob's levels ``m .. n-1`` are covered by "tail" blocks
indexed by ``r = 1 .. a`` whose states pair a low level ``r*(m-2) + i`` with
the high level ``n - r`` as ``|low -+ high>``; block ``r = a`` is truncated
to ``b`` states.  Labels are ``phi_k`` with ``k`` the 1-based position of the
state in the construction.

Conventions fixed here where the index formulas are loose:

* ``eq1``: the last tail block (``i = b = 1``, ``r = a``) is emitted whenever
  ``b = 1``, including ``a = 1`` (n = 4); otherwise n = 4 falls short of
  3n - 2 states.
* ``eq3``: the whole tail is empty when ``m = n``.  The ``r = 1`` block has
  ``m - 1`` states (``b`` when ``a = 1``): ``|0+1>|2-(n-1)>`` followed by
  ``|i>|(m-2+i)-(n-1)>``.  For ``r >= 2`` the first state of each block has
  Alice in ``|0+1>`` and the rest ``|i>``; the ``r = a`` block holds ``b``
  states, so it is empty for ``b = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .states import Ket, ProductState, StateSet, ket_lin, require_valid

EQ1, EQ2, EQ3 = "eq1", "eq2", "eq3"
FAMILIES = (EQ1, EQ2, EQ3)


@dataclass(frozen=True)
class FamilyParams:
    family: str
    m: int
    n: int
    a: int
    b: int

    @property
    def expected_size(self) -> int:
        return expected_size(self.family, self.m, self.n)


def decompose(m: int, n: int) -> tuple[int, int]:
    """Unique ``(a, b)`` with ``n = a(m-1) + b + 1``, ``a >= 1``, ``0 <= b < m-1``."""
    if m < 2 or n < m:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    a, b = divmod(n - 1, m - 1)
    return a, b


def family_params(family: str, m: int, n: int) -> FamilyParams:
    if family == EQ1:
        if m != 3 or n <= 3:
            raise ValueError(f"eq1 needs m = 3 < n, got m={m}, n={n}")
    elif family == EQ2:
        if not 4 <= m <= n:
            raise ValueError(f"eq2 needs 4 <= m <= n, got m={m}, n={n}")
    elif family == EQ3:
        if not 3 <= m <= n:
            raise ValueError(f"eq3 needs 3 <= m <= n, got m={m}, n={n}")
    else:
        raise ValueError(f"unknown family {family!r}")
    a, b = decompose(m, n)
    return FamilyParams(family, m, n, a, b)


def expected_size(family: str, m: int, n: int) -> int:
    return {EQ1: 3 * n - 2, EQ2: 3 * n + m - 4, EQ3: 2 * n - 1}[family]


def _k(dim: int, *terms: tuple[int, int]) -> Ket:
    return ket_lin(dim, terms)


def _basis(dim, k):
    return _k(dim, (k, 1))


def _minus(dim, e, f):
    return _k(dim, (e, 1), (f, -1))


def _plus(dim, e, f):
    return _k(dim, (e, 1), (f, 1))


def _all_plus(dim):
    return _k(dim, *((k, 1) for k in range(dim)))


def _label(pairs: Iterable[tuple[Ket, Ket]]) -> tuple[ProductState, ...]:
    return tuple(ProductState(f"phi_{k}", a, b) for k, (a, b) in enumerate(pairs, start=1))


def _cyclic_next(i: int, m: int) -> int:
    return i + 1 if i < m - 1 else 1


def gen_eq1(n: int) -> StateSet:
    """3n - 2 orthogonal product states in 3 x n."""
    p = family_params(EQ1, 3, n)
    a, b = p.a, p.b
    A = lambda *t: _k(3, *t)  # noqa: E731
    B = lambda *t: _k(n, *t)  # noqa: E731
    zero_plus_one = A((0, 1), (1, 1))

    out = []
    for i in (1, 2):
        out.append((_basis(3, i), _minus(n, 0, i)))
    for i, j in ((1, 2), (2, 1)):
        out.append((_minus(3, 0, i), _basis(n, j)))
    for i in (1, 2):
        out.append((_basis(3, i), _plus(n, 0, i)))
    out.append((_plus(3, 0, 2), _basis(n, 1)))
    for j in range(3, n):
        out.append((_minus(3, 0, 1), _basis(n, j)))

    def tail(sign):
        block = []
        for r in range(1, a):
            block.append((zero_plus_one, B((r + 1, 1), (n - r, sign))))
            block.append((A((2, 1)), B((r + 2, 1), (n - r, sign))))
        if b == 1:
            block.append((zero_plus_one, B((a + 1, 1), (n - a, sign))))
        return block

    out += tail(-1)
    out += tail(+1)
    return StateSet(3, n, _label(out), EQ1)


def gen_eq2(m: int, n: int) -> StateSet:
    """3n + m - 4 orthogonal product states in m x n."""
    p = family_params(EQ2, m, n)
    a, b = p.a, p.b
    out = []
    for i in range(1, m):
        out.append((_basis(m, i), _minus(n, 0, i)))
    for i in range(1, m):
        out.append((_minus(m, 0, i), _basis(n, _cyclic_next(i, m))))
    for i in range(1, m):
        out.append((_basis(m, i), _plus(n, 0, i)))
    for i in range(1, m):
        out.append((_plus(m, 0, i), _basis(n, _cyclic_next(i, m))))
    for j in range(m, n):
        out.append((_basis(m, 0), _basis(n, j)))

    def tail(sign):
        block = []
        for r in range(1, a + 1):
            for i in range(1, (m if r < a else b + 1)):
                low, high = r * (m - 2) + i, n - r
                block.append((_basis(m, i), _k(n, (low, 1), (high, sign))))
        return block

    out += tail(-1)
    out += tail(+1)
    return StateSet(m, n, _label(out), EQ2)


def gen_eq3(m: int, n: int) -> StateSet:
    """2n - 1 orthogonal product states in m x n."""
    p = family_params(EQ3, m, n)
    a, b = p.a, p.b
    zero_plus_one = _plus(m, 0, 1)
    out = []
    for i in range(1, m):
        out.append((_basis(m, i), _minus(n, 0, i)))
    for i in range(1, m):
        out.append((_minus(m, 0, i), _basis(n, _cyclic_next(i, m))))
    for j in range(m, n):
        out.append((_minus(m, 0, 1), _basis(n, j)))
    if m < n:
        for r in range(1, a + 1):
            for i in range(1, (m if r < a else b + 1)):
                low, high = r * (m - 2) + i, n - r
                if r == 1 and i == 1:
                    low = 2
                alice = zero_plus_one if i == 1 else _basis(m, i)
                out.append((alice, _minus(n, low, high)))
    out.append((_all_plus(m), _all_plus(n)))
    return StateSet(m, n, _label(out), EQ3)


def generate(family: str, m: int, n: int) -> StateSet:
    if family == EQ1:
        if m != 3:
            raise ValueError(f"eq1 lives in 3 x n, got m={m}")
        return gen_eq1(n)
    if family == EQ2:
        return gen_eq2(m, n)
    if family == EQ3:
        return gen_eq3(m, n)
    raise ValueError(f"unknown family {family!r}")


# Fixtures kept independent of the generators above.

def fixture_eq3_3x5() -> StateSet:
    """The nine 3 x 5 states with Bob levels {0..4}, written out by hand."""
    A = lambda *t: _k(3, *t)  # noqa: E731
    B = lambda *t: _k(5, *t)  # noqa: E731
    pairs = [
        (A((1, 1)), B((0, 1), (1, -1))),
        (A((2, 1)), B((0, 1), (2, -1))),
        (A((0, 1), (1, -1)), B((2, 1))),
        (A((0, 1), (2, -1)), B((1, 1))),
        (A((0, 1), (1, -1)), B((3, 1))),
        (A((0, 1), (1, -1)), B((4, 1))),
        (A((0, 1), (1, 1)), B((2, 1), (4, -1))),
        (A((2, 1)), B((3, 1), (4, -1))),
        (A((0, 1), (1, 1), (2, 1)), B((0, 1), (1, 1), (2, 1), (3, 1), (4, 1))),
    ]
    return StateSet(3, 5, _label(pairs), EQ3)


def fixture_eq3_3x3() -> StateSet:
    A = lambda *t: _k(3, *t)  # noqa: E731
    pairs = [
        (A((1, 1)), A((0, 1), (1, -1))),
        (A((2, 1)), A((0, 1), (2, -1))),
        (A((0, 1), (1, -1)), A((2, 1))),
        (A((0, 1), (2, -1)), A((1, 1))),
        (A((0, 1), (1, 1), (2, 1)), A((0, 1), (1, 1), (2, 1))),
    ]
    return StateSet(3, 3, _label(pairs), EQ3)


def gen_bennett9() -> StateSet:
    """Bennett et al.'s nine-state 3 x 3 basis, centred on ``|0>|0>``.

    The original centre tile is ``|1>|1>``; levels 0 and 1 are swapped on both
    sides so the centre becomes ``|0>|0>`` and is listed last.
    """
    A = lambda *t: _k(3, *t)  # noqa: E731
    pairs = []
    for s in (1, -1):
        pairs += [
            (A((1, 1)), A((1, 1), (0, s))),
            (A((2, 1)), A((0, 1), (2, s))),
            (A((0, 1), (2, s)), A((1, 1))),
            (A((1, 1), (0, s)), A((2, 1))),
        ]
    pairs.append((A((0, 1)), A((0, 1))))
    states = tuple(ProductState(f"psi_{k}", a, b) for k, (a, b) in enumerate(pairs, start=1))
    result = StateSet(3, 3, states, "bennett9")
    require_valid(result)
    return result


def completion_states(m: int) -> tuple[ProductState, ...]:
    """Computational-basis states completing ``gen_eq2(m, m)`` to a full basis.

    ``|0>|0>`` plus ``|i>|j>`` for ``i = 1..m-2``, ``j = 1..m-1`` with
    ``j != i, i+1``, and for ``i = m-1``, ``j = 2..m-2``; m^2 - 4m + 4 in all.
    """
    if m < 4:
        raise ValueError(f"completion needs m >= 4, got {m}")
    out = [("phi_00", 0, 0)]
    for i in range(1, m - 1):
        for j in range(1, m):
            if j not in (i, i + 1):
                out.append((f"phi_{i}{j}" if m <= 10 else f"phi_{i}_{j}", i, j))
    for j in range(2, m - 1):
        out.append((f"phi_{m - 1}{j}" if m <= 10 else f"phi_{m - 1}_{j}", m - 1, j))
    return tuple(ProductState(label, _basis(m, i), _basis(m, j)) for label, i, j in out)


def completed_eq2_basis(m: int) -> StateSet:
    return gen_eq2(m, m).extended(completion_states(m), family="eq2+completion")


# Product states orthogonal to a whole family.

def candidate_witness_eq3_square(m: int) -> ProductState:
    """``|2>(|0> + |1> - 2|3>)``, a candidate orthogonal state for eq3 with m = n >= 4.

    It overlaps ``phi_2 = |2>|0-2>`` and is therefore *not* orthogonal to the
    set; kept for comparison with :func:`extension_witness`.
    """
    return ProductState(f"phi_{2 * m}", _basis(m, 2), _k(m, (0, 1), (1, 1), (3, -2)))


def extension_witness(state_set: StateSet) -> ProductState | None:
    """A product state orthogonal to every member of a generated family.

    Returns ``None`` for eq3 at m = n = 3, which admits no such state.  For
    eq3 shapes without a closed-form witness the extension search is used.
    """
    fam, m, n = state_set.family, state_set.m, state_set.n
    if fam in (EQ1, EQ2):
        return ProductState(f"phi_{len(state_set) + 1}", _basis(m, 0), _basis(n, 0))
    if fam == EQ3:
        if m == n == 3:
            return None
        if m == n:
            # |2>(|0> - 2|1> + |2>): kills |2>|0-2>, |0-2>|3> and the all-plus state
            return ProductState(f"phi_{2 * n}", _basis(m, 2), _k(n, (0, 1), (1, -2), (2, 1)))
        if (m, n) == (3, 5):
            return ProductState("phi_10", _basis(3, 2), _k(5, (0, 1), (2, 1), (3, -1), (4, -1)))
        from .extendibility import EXTENDIBLE, find_product_extension

        found = find_product_extension(state_set)
        if found.status != EXTENDIBLE:
            return None
        return ProductState(f"phi_{2 * n}", found.witness.a, found.witness.b)
    raise ValueError(f"no extension witness known for family {fam!r}")
