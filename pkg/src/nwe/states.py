"""Kets, bipartite product states and validated state sets.

Kets are real, unnormalized and exact.  Dropping normalization is harmless
here: orthogonality, constraint row spaces and PSD verdicts are all invariant
under positive rescaling of a ket.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import format_rational, to_rational


@dataclass(frozen=True)
class Ket:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("ket must have positive dimension")
        if not any(coeffs):
            raise ValueError("ket must have a nonzero coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def scale(self, c) -> Ket:
        c = to_rational(c)
        if c == 0:
            raise ValueError("cannot scale a ket by zero")
        return Ket(tuple(c * x for x in self.coeffs))

    def permute(self, perm: Sequence[int]) -> Ket:
        """Relabel basis vectors: coefficient of ``|k>`` moves to ``|perm[k]>``."""
        out = [Fraction(0)] * self.dim
        for k, c in enumerate(self.coeffs):
            out[perm[k]] = c
        return Ket(tuple(out))

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else format_rational(mag)}{k}")
        text = "".join(parts).lstrip("+")
        return f"|{text}>"


def ket_lin(dim: int, terms: Iterable[tuple[int, int]]) -> Ket:
    """Build the unnormalized ket ``sum_k c_k |k>`` from ``(k, c_k)`` pairs.

    Repeated indices accumulate.

    >>> ket_lin(4, [(0, 1), (1, -1)]).coeffs == (1, -1, 0, 0)
    True
    """
    coeffs = [Fraction(0)] * dim
    for k, c in terms:
        if not 0 <= k < dim:
            raise ValueError(f"basis index {k} out of range for dimension {dim}")
        coeffs[k] += to_rational(c)
    return Ket(tuple(coeffs))


def basis_ket(dim: int, k: int) -> Ket:
    return ket_lin(dim, [(k, 1)])


def inner(x: Ket, y: Ket) -> Fraction:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    return sum((a * b for a, b in zip(x.coeffs, y.coeffs)), Fraction(0))


@dataclass(frozen=True)
class ProductState:
    label: str
    a: Ket
    b: Ket

    def __str__(self):
        return f"{self.label} = {self.a}_A {self.b}_B"


def product_overlap(s: ProductState, t: ProductState) -> Fraction:
    return inner(s.a, t.a) * inner(s.b, t.b)


@dataclass(frozen=True)
class StateSet:
    m: int
    n: int
    states: tuple[ProductState, ...]
    family: str | None = None

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError("local dimensions must be at least 2")
        object.__setattr__(self, "states", tuple(self.states))
        for s in self.states:
            if s.a.dim != self.m or s.b.dim != self.n:
                raise ValueError(
                    f"state {s.label} has dimensions ({s.a.dim}, {s.b.dim}), "
                    f"expected ({self.m}, {self.n})")

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.states]

    def coefficient_set(self) -> frozenset:
        """Order-insensitive fingerprint of the exact coefficient vectors."""
        return frozenset((s.a.coeffs, s.b.coeffs) for s in self.states)

    def extended(self, extra: Iterable[ProductState], family: str | None = None) -> StateSet:
        return StateSet(self.m, self.n, self.states + tuple(extra), family)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[int, int], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(state_set: StateSet) -> ValidationReport:
    """List every pair ``i < j`` of states that are not orthogonal."""
    states = state_set.states
    bad = []
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if product_overlap(states[i], states[j]) != 0:
                bad.append((i, j))
    return ValidationReport(tuple(bad))


def require_valid(state_set: StateSet):
    report = validate(state_set)
    if not report.ok:
        i, j = report.violations[0]
        raise ValueError(
            f"state set is not orthogonal: {state_set.states[i].label} and "
            f"{state_set.states[j].label} overlap ({len(report.violations)} violation(s))")


# JSON interchange

def to_document(state_set: StateSet) -> dict:
    return {
        "m": state_set.m,
        "n": state_set.n,
        "family": state_set.family,
        "states": [
            {
                "label": s.label,
                "a": [format_rational(c) for c in s.a.coeffs],
                "b": [format_rational(c) for c in s.b.coeffs],
            }
            for s in state_set.states
        ],
    }


def canonical_json(obj) -> bytes:
    """Sorted keys, compact separators, newline-terminated UTF-8."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            + "\n").encode("utf-8")


def save_json(state_set: StateSet) -> bytes:
    return canonical_json(to_document(state_set))


def _parse_coeffs(raw, length: int, where: str) -> Ket:
    if not isinstance(raw, list):
        raise ValueError(f"{where}: coefficients must be a list")
    if len(raw) != length:
        raise ValueError(f"{where}: expected {length} coefficients, got {len(raw)}")
    if not all(isinstance(c, str) for c in raw):
        raise ValueError(f"{where}: coefficients must be strings")
    try:
        return Ket(tuple(to_rational(c) for c in raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{where}: {exc}") from None


def from_document(doc) -> StateSet:
    if not isinstance(doc, dict):
        raise ValueError("document must be a JSON object")
    for key in ("m", "n", "states"):
        if key not in doc:
            raise ValueError(f"missing key {key!r}")
    m, n = doc["m"], doc["n"]
    if not (isinstance(m, int) and isinstance(n, int)) or isinstance(m, bool) or isinstance(n, bool):
        raise ValueError("m and n must be integers")
    family = doc.get("family")
    if family is not None and not isinstance(family, str):
        raise ValueError("family must be a string or null")
    if not isinstance(doc["states"], list):
        raise ValueError("states must be a list")
    states = []
    for idx, entry in enumerate(doc["states"]):
        if not isinstance(entry, dict) or not isinstance(entry.get("label"), str):
            raise ValueError(f"states[{idx}]: needs a string label")
        a = _parse_coeffs(entry.get("a"), m, f"states[{idx}].a")
        b = _parse_coeffs(entry.get("b"), n, f"states[{idx}].b")
        states.append(ProductState(entry["label"], a, b))
    return StateSet(m, n, tuple(states), family)


def load_json(data: bytes | str) -> StateSet:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None
    return from_document(doc)
