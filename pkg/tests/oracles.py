"""Independent reference computations used to check the library.

None of these route through ``nwe.exact``: Hermitian nullspaces use sympy,
partition ranks use numpy on small integer matrices, and PSD uses explicit
principal minors.
"""

import itertools
import random
from fractions import Fraction

import numpy as np
import sympy

from nwe.states import Ket, ProductState, StateSet, inner


def hermitian_solution_space(vectors, spectator, d):
    """Nullity of the orthogonality constraints over all d^2 real parameters.

    ``H = X + iY`` with X, Y arbitrary real d x d; Hermiticity is imposed by
    extra rows.  ``vectors`` are the measuring party's kets, ``spectator`` a
    function giving the other side's overlap for a pair of indices.

    Returns ``(nullity, identity_in_span)``.
    """
    def col_x(k, l):
        return k * d + l

    def col_y(k, l):
        return d * d + k * d + l

    rows = []
    for k in range(d):
        for l in range(d):
            r = [0] * (2 * d * d)
            r[col_x(k, l)] += 1
            r[col_x(l, k)] -= 1
            rows.append(r)
            r = [0] * (2 * d * d)
            r[col_y(k, l)] += 1
            r[col_y(l, k)] += 1
            rows.append(r)
    for i, j in itertools.combinations(range(len(vectors)), 2):
        if spectator(i, j) == 0:
            continue
        re = [0] * (2 * d * d)
        im = [0] * (2 * d * d)
        for k in range(d):
            for l in range(d):
                c = vectors[i][k] * vectors[j][l]
                re[col_x(k, l)] += c
                im[col_y(k, l)] += c
        rows += [re, im]
    M = sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows])
    basis = M.nullspace()
    ident = sympy.Matrix([1 if (c < d * d and c // d == c % d) else 0 for c in range(2 * d * d)])
    if not basis:
        return 0, False
    span = sympy.Matrix.hstack(*basis)
    in_span = sympy.Matrix.hstack(span, ident).rank() == span.rank()
    return len(basis), in_span


def party_oracle(state_set, party):
    states = state_set.states
    if party == "alice":
        vecs = [[Fraction(c) for c in s.a.coeffs] for s in states]
        d = state_set.m

        def spectator(i, j):
            return inner(states[i].b, states[j].b)
    else:
        vecs = [[Fraction(c) for c in s.b.coeffs] for s in states]
        d = state_set.n

        def spectator(i, j):
            return inner(states[i].a, states[j].a)
    return hermitian_solution_space(vecs, spectator, d)


def _np_rank(vectors, dim):
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array([[float(x) for x in v] for v in vectors])))


def naive_extendible(state_set):
    """Try all 2^N ways of assigning each state to the side that kills it."""
    states = state_set.states
    for mask in range(2 ** len(states)):
        alice = [s.a.coeffs for k, s in enumerate(states) if mask >> k & 1]
        bob = [s.b.coeffs for k, s in enumerate(states) if not mask >> k & 1]
        if _np_rank(alice, state_set.m) < state_set.m and _np_rank(bob, state_set.n) < state_set.n:
            return True
    return False


def psd_by_minors(rows):
    """All principal minors nonnegative, computed with sympy determinants."""
    n = len(rows)
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            if M.extract(list(idx), list(idx)).det() < 0:
                return False
    return True


def random_valid_set(rng: random.Random, m: int, n: int, max_states: int,
                     coeffs=(-1, 0, 1), attempts: int = 60) -> StateSet:
    """Greedy random orthogonal product set with entries from ``coeffs``."""
    def ket(dim):
        while True:
            v = tuple(rng.choice(coeffs) for _ in range(dim))
            if any(v):
                return Ket(v)

    chosen = []
    target = rng.randint(2, max_states)
    for _ in range(attempts):
        if len(chosen) == target:
            break
        cand = ProductState(f"s{len(chosen)}", ket(m), ket(n))
        if all(inner(cand.a, s.a) * inner(cand.b, s.b) == 0 for s in chosen):
            chosen.append(cand)
    return StateSet(m, n, tuple(chosen))
