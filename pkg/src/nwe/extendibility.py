"""Product-state extensions, unextendibility and basis completion.

A product state ``|x>|y>`` is orthogonal to every member of a set exactly
when the members split into a part killed on Alice's side (``<x|a_i> = 0``)
and a part killed on Bob's side (``<y|b_j> = 0``).  Such an ``x`` exists iff
the Alice vectors of the first part have rank < m, and likewise for Bob.
:func:`find_product_extension` searches these splits depth-first, cutting a
branch as soon as a side's span becomes full.

The search is sequential and stops at the first feasible split, so the
witness is deterministic.  Kets are real, and rank over the reals equals rank
over the complex numbers, so a UPB verdict also rules out complex witnesses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import RMatrix, format_rational, nullspace
from .states import Ket, ProductState, StateSet, inner, require_valid, validate

EXTENDIBLE, UPB, BUDGET_EXCEEDED = "EXTENDIBLE", "UPB", "BUDGET_EXCEEDED"
DEFAULT_BUDGET = 2 ** 20


def default_budget() -> int:
    raw = os.environ.get("NWE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NWE_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("NWE_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class ExtendibilityResult:
    status: str
    witness: ProductState | None
    explored: int
    budget: int


class _Span:
    """Incremental echelon basis; ``with_vector`` returns a new span."""

    __slots__ = ("rows", "dim")

    def __init__(self, dim: int, rows: tuple = ()):
        self.dim = dim
        self.rows = rows  # (pivot, vector) with vector[pivot] == 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    def with_vector(self, v: Sequence[Fraction]) -> _Span:
        v = list(v)
        for pivot, row in self.rows:
            f = v[pivot]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        pivot = next((k for k, x in enumerate(v) if x), None)
        if pivot is None:
            return self
        lead = v[pivot]
        return _Span(self.dim, self.rows + ((pivot, tuple(x / lead for x in v)),))


class _BudgetExceeded(Exception):
    pass


def _pair_degree(states: Sequence[ProductState], i: int) -> int:
    s = states[i]
    return sum(1 for j, t in enumerate(states)
               if j != i and inner(s.a, t.a) != 0 and inner(s.b, t.b) != 0)


def _orthogonal_ket(vectors: list[Sequence[Fraction]], dim: int) -> Ket:
    A = RMatrix.from_rows(vectors) if vectors else RMatrix.zeros(1, dim)
    return Ket(nullspace(A)[0])


def find_product_extension(state_set: StateSet, budget: int | None = None) -> ExtendibilityResult:
    """Search for a product state orthogonal to the whole set.

    ``explored`` counts the partial splits visited (root included).
    """
    require_valid(state_set)
    budget = default_budget() if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be positive")
    states = state_set.states
    m, n = state_set.m, state_set.n
    order = sorted(range(len(states)), key=lambda i: (-_pair_degree(states, i), i))
    explored = 0
    side = [None] * len(states)

    def visit(depth: int, span_a: _Span, span_b: _Span) -> bool:
        nonlocal explored
        explored += 1
        if explored > budget:
            raise _BudgetExceeded
        if depth == len(order):
            return True
        idx = order[depth]
        grown = span_a.with_vector(states[idx].a.coeffs)
        if grown.rank < m:
            side[idx] = "a"
            if visit(depth + 1, grown, span_b):
                return True
        grown = span_b.with_vector(states[idx].b.coeffs)
        if grown.rank < n:
            side[idx] = "b"
            if visit(depth + 1, span_a, grown):
                return True
        side[idx] = None
        return False

    try:
        found = visit(0, _Span(m), _Span(n))
    except _BudgetExceeded:
        return ExtendibilityResult(BUDGET_EXCEEDED, None, budget, budget)
    if not found:
        return ExtendibilityResult(UPB, None, explored, budget)
    a = _orthogonal_ket([s.a.coeffs for s, t in zip(states, side) if t == "a"], m)
    b = _orthogonal_ket([s.b.coeffs for s, t in zip(states, side) if t == "b"], n)
    witness = ProductState("ext", a, b)
    assert verify_extension(state_set, witness)
    return ExtendibilityResult(EXTENDIBLE, witness, explored, budget)


def verify_extension(state_set: StateSet, cand: ProductState) -> bool:
    if cand.a.dim != state_set.m or cand.b.dim != state_set.n:
        raise ValueError("candidate dimensions do not match the set")
    return all(inner(cand.a, s.a) * inner(cand.b, s.b) == 0 for s in state_set.states)


def projector_sum(state_set: StateSet) -> list[list[Fraction]]:
    """``sum_i |phi_i><phi_i| / <phi_i|phi_i>`` on the mn-dimensional joint space."""
    dim = state_set.m * state_set.n
    total = [[Fraction(0)] * dim for _ in range(dim)]
    for s in state_set.states:
        v = [x * y for x in s.a.coeffs for y in s.b.coeffs]
        norm = sum(x * x for x in v)
        support = [k for k, x in enumerate(v) if x]
        for k in support:
            for l in support:
                total[k][l] += v[k] * v[l] / norm
    return total


def check_completion_basis(state_set: StateSet) -> bool:
    """Whether the set is a complete orthogonal product basis of the joint space."""
    dim = state_set.m * state_set.n
    if len(state_set) != dim or not validate(state_set).ok:
        return False
    total = projector_sum(state_set)
    return all(total[k][l] == (1 if k == l else 0) for k in range(dim) for l in range(dim))


def separable_discriminate(basis: StateSet, prepared: int) -> tuple[Fraction, ...]:
    """Outcome distribution of the rank-one product POVM ``{|phi_i><phi_i|}``.

    The measurement is separable since every element is a product projector;
    on a complete orthogonal basis it identifies the prepared state with
    certainty.
    """
    if not check_completion_basis(basis):
        raise ValueError("not a complete orthogonal product basis")
    if not 0 <= prepared < len(basis):
        raise IndexError(f"prepared index {prepared} out of range")
    target = basis.states[prepared]
    t_norm = inner(target.a, target.a) * inner(target.b, target.b)
    out = []
    for s in basis.states:
        amp = inner(s.a, target.a) * inner(s.b, target.b)
        out.append(amp * amp / (inner(s.a, s.a) * inner(s.b, s.b) * t_norm))
    return tuple(out)


def result_document(result: ExtendibilityResult) -> dict:
    doc = {"status": result.status, "explored": result.explored, "budget": result.budget}
    if result.witness is not None:
        doc["witness"] = {
            "a": [format_rational(c) for c in result.witness.a.coeffs],
            "b": [format_rational(c) for c in result.witness.b.coeffs],
        }
    return doc
