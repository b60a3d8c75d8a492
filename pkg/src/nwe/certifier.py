"""Certify that neither party can open with a nontrivial orthogonality-preserving measurement.

For a first-round POVM element ``H = M^dag M`` on Alice's side, the
post-measurement states stay orthogonal only if

    <a_i| H |a_j> <b_i|b_j> = 0      for every pair i < j,

and symmetrically for Bob.  Writing ``H = R + iS`` with ``R`` real symmetric
and ``S`` real antisymmetric, each pair with nonzero spectator overlap gives
one real-linear equation on ``R`` and one on ``S`` (all kets are real).  If
the only solutions are multiples of the identity the party cannot start; if
both parties are stuck, the set is LOCC-indistinguishable.

Positivity of ``H`` is not imposed when deciding triviality.  It only enters
when a nontrivial solution is turned into an explicit two-outcome POVM.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import RMatrix, format_rational, gershgorin_bounds, is_psd, nullspace, rank, to_rational
from .states import StateSet, inner, require_valid, save_json

ALICE, BOB = "alice", "bob"
TRIVIAL, NONTRIVIAL = "TRIVIAL", "NONTRIVIAL"
INDISTINGUISHABLE, INCONCLUSIVE = "INDISTINGUISHABLE", "INCONCLUSIVE"

REDUCTION_ASSUMPTION = (
    "If no party can begin with a nontrivial orthogonality-preserving measurement, "
    "perfect discrimination by LOCC is impossible (standard argument, assumed).")


@dataclass(frozen=True)
class HermitianParam:
    """Coordinates for a d x d Hermitian matrix ``R + iS``.

    Symmetric unknowns ``r_kl`` (k <= l) and antisymmetric unknowns ``s_kl``
    (k < l), both in row-major upper-triangle order.
    """
    d: int

    @property
    def sym_pairs(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(self.d) for l in range(k, self.d)]

    @property
    def antisym_pairs(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(self.d) for l in range(k + 1, self.d)]

    def sym_index(self, k: int, l: int) -> int:
        if k > l:
            k, l = l, k
        # entries before row k: d + (d-1) + ... + (d-k+1)
        return k * self.d - k * (k - 1) // 2 + (l - k)

    def antisym_index(self, k: int, l: int) -> int:
        if not k < l:
            raise ValueError("antisymmetric index needs k < l")
        return k * self.d - k * (k + 1) // 2 + (l - k - 1)

    @property
    def n_sym(self) -> int:
        return self.d * (self.d + 1) // 2

    @property
    def n_antisym(self) -> int:
        return self.d * (self.d - 1) // 2

    def identity_coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1 if k == l else 0) for k, l in self.sym_pairs)

    def sym_matrix(self, coords: Sequence) -> RMatrix:
        d = self.d
        out = [[Fraction(0)] * d for _ in range(d)]
        for (k, l), x in zip(self.sym_pairs, coords):
            out[k][l] = out[l][k] = to_rational(x)
        return RMatrix.from_rows(out)

    def antisym_matrix(self, coords: Sequence) -> RMatrix:
        d = self.d
        out = [[Fraction(0)] * d for _ in range(d)]
        for (k, l), x in zip(self.antisym_pairs, coords):
            out[k][l] = to_rational(x)
            out[l][k] = -to_rational(x)
        return RMatrix.from_rows(out)

    def sym_coords(self, M: RMatrix) -> tuple[Fraction, ...]:
        return tuple(M[k, l] for k, l in self.sym_pairs)

    def antisym_coords(self, M: RMatrix) -> tuple[Fraction, ...]:
        return tuple(M[k, l] for k, l in self.antisym_pairs)


@dataclass(frozen=True)
class Provenance:
    i: int
    j: int
    labels: tuple[str, str]
    spectator: Fraction


@dataclass(frozen=True)
class ConstraintSystem:
    party: str
    d: int
    sym_rows: tuple[tuple[Fraction, ...], ...]
    antisym_rows: tuple[tuple[Fraction, ...], ...]
    provenance: tuple[Provenance, ...]

    @property
    def param(self) -> HermitianParam:
        return HermitianParam(self.d)

    def sym_matrix(self) -> RMatrix:
        if not self.sym_rows:
            return RMatrix.zeros(1, self.param.n_sym)
        return RMatrix.from_rows(self.sym_rows)

    def antisym_matrix(self) -> RMatrix | None:
        if self.param.n_antisym == 0:
            return None
        if not self.antisym_rows:
            return RMatrix.zeros(1, self.param.n_antisym)
        return RMatrix.from_rows(self.antisym_rows)

    def sym_nullspace(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self.sym_matrix())

    def antisym_nullspace(self) -> list[tuple[Fraction, ...]]:
        A = self.antisym_matrix()
        return [] if A is None else nullspace(A)

    def satisfied_by(self, H_sym: RMatrix, H_antisym: RMatrix | None = None) -> bool:
        """Whether ``H_sym + i H_antisym`` satisfies every row exactly."""
        p = self.param
        x = p.sym_coords(H_sym)
        if any(sum((c * v for c, v in zip(row, x)), Fraction(0)) for row in self.sym_rows):
            return False
        if H_antisym is not None and p.n_antisym:
            y = p.antisym_coords(H_antisym)
            if any(sum((c * v for c, v in zip(row, y)), Fraction(0)) for row in self.antisym_rows):
                return False
        return True


def _pair_rows(p: HermitianParam, x, y):
    """Coefficients of ``Re <x|H|y>`` on r and of ``Im <x|H|y>`` on s."""
    sym = [Fraction(0)] * p.n_sym
    anti = [Fraction(0)] * p.n_antisym
    for k in range(p.d):
        if x[k] == 0:
            continue
        for l in range(p.d):
            c = x[k] * y[l]
            if c == 0:
                continue
            sym[p.sym_index(k, l)] += c
            if k < l:
                anti[p.antisym_index(k, l)] += c
            elif k > l:
                anti[p.antisym_index(l, k)] -= c
    return tuple(sym), tuple(anti)


def build_constraints(state_set: StateSet, party: str, check: bool = True) -> ConstraintSystem:
    """One symmetric and one antisymmetric row per pair with nonzero spectator overlap."""
    if party not in (ALICE, BOB):
        raise ValueError(f"unknown party {party!r}")
    if check:
        require_valid(state_set)
    d = state_set.m if party == ALICE else state_set.n
    p = HermitianParam(d)
    states = state_set.states
    sym_rows, anti_rows, prov = [], [], []
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            si, sj = states[i], states[j]
            if party == ALICE:
                mine_i, mine_j, spect = si.a, sj.a, inner(si.b, sj.b)
            else:
                mine_i, mine_j, spect = si.b, sj.b, inner(si.a, sj.a)
            if spect == 0:
                continue
            sym, anti = _pair_rows(p, mine_i.coeffs, mine_j.coeffs)
            sym_rows.append(sym)
            anti_rows.append(anti)
            prov.append(Provenance(i, j, (si.label, sj.label), spect))
    return ConstraintSystem(party, d, tuple(sym_rows), tuple(anti_rows), tuple(prov))


@dataclass(frozen=True)
class TraceStep:
    kind: str  # "offdiag_zero", "diag_equal" or "combined"
    part: str  # "sym" or "antisym"
    pairs: tuple[tuple[str, str], ...]
    entries: tuple[tuple[int, int], ...]
    relation: str
    rows: tuple[int, ...]


@dataclass(frozen=True)
class TrivialityVerdict:
    party: str
    status: str
    sym_nullity: int
    antisym_nullity: int
    trace: tuple[TraceStep, ...] = ()
    witness_sym: RMatrix | None = None
    witness_antisym: RMatrix | None = None
    witness_povm: tuple[RMatrix, RMatrix] | None = None

    @property
    def trivial(self) -> bool:
        return self.status == TRIVIAL


def _is_identity_multiple(p: HermitianParam, v) -> bool:
    ident = p.identity_coords()
    return rank([v, ident]) == 1 and any(v)


def decide_triviality(cs: ConstraintSystem, with_trace: bool = True) -> TrivialityVerdict:
    """Trivial iff the symmetric solutions are ``span{I}`` and the antisymmetric ones are 0."""
    p = cs.param
    sym_null = cs.sym_nullspace()
    anti_null = cs.antisym_nullspace()
    if len(sym_null) == 1 and _is_identity_multiple(p, sym_null[0]) and not anti_null:
        trace = tuple(derivation_trace(cs)) if with_trace else ()
        return TrivialityVerdict(cs.party, TRIVIAL, 1, 0, trace=trace)

    witness_sym = next((v for v in sym_null if not _is_identity_multiple(p, v)), None)
    if witness_sym is not None:
        H = p.sym_matrix(witness_sym)
        E, F = make_witness_povm(H)
        return TrivialityVerdict(cs.party, NONTRIVIAL, len(sym_null), len(anti_null),
                                 witness_sym=H, witness_povm=(E, F))
    # only an imaginary (antisymmetric) direction survives
    S = p.antisym_matrix(anti_null[0])
    zero = RMatrix.zeros(p.d, p.d)
    E, F = make_witness_povm(zero, S)
    return TrivialityVerdict(cs.party, NONTRIVIAL, len(sym_null), len(anti_null),
                             witness_sym=zero, witness_antisym=S, witness_povm=(E, F))


def realify(H_sym: RMatrix, H_antisym: RMatrix | None = None) -> RMatrix:
    """Real 2d x 2d matrix ``[[R, -S], [S, R]]`` of the Hermitian ``R + iS``.

    It is symmetric, and PSD exactly when ``R + iS`` is.
    """
    d = H_sym.rows
    S = H_antisym if H_antisym is not None else RMatrix.zeros(d, d)
    rows = []
    for i in range(d):
        rows.append(list(H_sym.row(i)) + [-x for x in S.row(i)])
    for i in range(d):
        rows.append(list(S.row(i)) + list(H_sym.row(i)))
    return RMatrix.from_rows(rows)


def make_witness_povm(H_sym: RMatrix, H_antisym: RMatrix | None = None):
    """Shift and scale a non-identity solution into a POVM ``(E, I - E)``.

    With Gershgorin bounds ``lo <= spec(H) <= hi``, ``E = (H - lo I)/(hi - lo)``
    has spectrum in [0, 1].  ``E`` still satisfies the (linear, identity-
    respecting) constraints.  For a complex witness, ``E`` and ``F`` are the
    real 2d x 2d embeddings from :func:`realify`.
    """
    if not H_sym.is_symmetric():
        raise ValueError("symmetric part must be symmetric")
    complex_case = H_antisym is not None and any(H_antisym.entries)
    M = realify(H_sym, H_antisym) if complex_case else H_sym
    lo, hi = gershgorin_bounds(M)
    if hi == lo:
        raise ValueError("witness is proportional to the identity")
    dim = M.rows
    E = (M - RMatrix.identity(dim).scale(lo)).scale(1 / (hi - lo))
    F = RMatrix.identity(dim) - E
    if not (is_psd(E) and is_psd(F)):
        raise AssertionError("Gershgorin shift failed to produce a POVM")
    return E, F


def povm_is_valid(E: RMatrix, F: RMatrix) -> bool:
    dim = E.rows
    return (is_psd(E) and is_psd(F) and E + F == RMatrix.identity(dim)
            and rank([E.entries, RMatrix.identity(dim).entries]) == 2)


# Human-readable derivation

def _entry(k, l):
    return f"a{k}{l}" if max(k, l) < 10 else f"a{k},{l}"


def derivation_trace(cs: ConstraintSystem) -> list[TraceStep]:
    """Pair-by-pair elimination reducing the solution space to ``span{I}``.

    Greedy: rows that pin a single off-diagonal entry to zero (after
    substituting zeros already found) go first, then rows equating two
    diagonal entries.  Whatever is left is closed by one combined
    elimination step.  The rows cited by the steps are checked to cut the
    solution space down to the identity.
    """
    p = cs.param
    sym_null = cs.sym_nullspace()
    if not (len(sym_null) == 1 and _is_identity_multiple(p, sym_null[0])
            and not cs.antisym_nullspace()):
        raise ValueError("derivation trace requested for a nontrivial system")

    steps: list[TraceStep] = []
    used: set[int] = set()
    sym_pairs = p.sym_pairs
    zero: set[int] = set()
    # union-find over diagonal entries
    parent = list(range(p.d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def live(row):
        return [c for c, v in enumerate(row) if v != 0 and c not in zero]

    progress = True
    while progress:
        progress = False
        for r, row in enumerate(cs.sym_rows):
            if r in used:
                continue
            support = live(row)
            if len(support) == 1 and sym_pairs[support[0]][0] != sym_pairs[support[0]][1]:
                k, l = sym_pairs[support[0]]
                zero.add(support[0])
                used.add(r)
                steps.append(TraceStep("offdiag_zero", "sym", (cs.provenance[r].labels,),
                                       ((k, l),), f"{_entry(k, l)} = {_entry(l, k)} = 0", (r,)))
                progress = True
        if progress:
            continue
        for r, row in enumerate(cs.sym_rows):
            if r in used:
                continue
            support = live(row)
            if (len(support) == 2 and all(sym_pairs[c][0] == sym_pairs[c][1] for c in support)
                    and row[support[0]] == -row[support[1]]):
                k, l = sym_pairs[support[0]][0], sym_pairs[support[1]][0]
                used.add(r)
                if find(k) == find(l):
                    continue
                parent[find(l)] = find(k)
                cls = sorted(x for x in range(p.d) if find(x) == find(k))
                steps.append(TraceStep("diag_equal", "sym", (cs.provenance[r].labels,),
                                       ((k, k), (l, l)),
                                       " = ".join(_entry(x, x) for x in cls), (r,)))
                progress = True
                break

    # any sym freedom left beyond span{I} is closed by a combined step
    chosen = sorted({r for s in steps for r in s.rows})
    if _sym_nullity(p, [cs.sym_rows[r] for r in chosen]) > 1:
        rest = [r for r in range(len(cs.sym_rows)) if r not in used]
        used.update(rest)
        steps.append(TraceStep(
            "combined", "sym", tuple(cs.provenance[r].labels for r in rest), (),
            "remaining symmetric freedom eliminated: solution = c * I", tuple(rest)))

    if p.n_antisym:
        anti_zero: set[int] = set()
        anti_pairs = p.antisym_pairs
        anti_used = []
        progress = True
        while progress:
            progress = False
            for r, row in enumerate(cs.antisym_rows):
                if r in anti_used:
                    continue
                support = [c for c, v in enumerate(row) if v != 0 and c not in anti_zero]
                if len(support) == 1:
                    k, l = anti_pairs[support[0]]
                    anti_zero.add(support[0])
                    anti_used.append(r)
                    steps.append(TraceStep("offdiag_zero", "antisym", (cs.provenance[r].labels,),
                                           ((k, l),), f"Im {_entry(k, l)} = 0", (r,)))
                    progress = True
        if len(anti_zero) < p.n_antisym:
            rest = [r for r in range(len(cs.antisym_rows)) if r not in anti_used]
            steps.append(TraceStep(
                "combined", "antisym", tuple(cs.provenance[r].labels for r in rest), (),
                "remaining imaginary parts eliminated: Im a = 0", tuple(rest)))
            anti_used += rest
    _check_trace(cs, steps)
    return steps


def _sym_nullity(p: HermitianParam, rows) -> int:
    if not rows:
        return p.n_sym
    return len(nullspace(RMatrix.from_rows(rows)))


def _check_trace(cs: ConstraintSystem, steps: list[TraceStep]):
    p = cs.param
    sym_rows = sorted({r for s in steps if s.part == "sym" for r in s.rows})
    anti_rows = sorted({r for s in steps if s.part == "antisym" for r in s.rows})
    if _sym_nullity(p, [cs.sym_rows[r] for r in sym_rows]) != 1:
        raise AssertionError("trace does not reduce the symmetric part to span{I}")
    if p.n_antisym:
        rows = [cs.antisym_rows[r] for r in anti_rows]
        if not rows or nullspace(RMatrix.from_rows(rows)):
            raise AssertionError("trace does not eliminate the antisymmetric part")


def format_trace(steps: Sequence[TraceStep], party: str = "") -> str:
    lines = []
    for n, s in enumerate(steps, start=1):
        pairs = ", ".join(f"({x}, {y})" for x, y in s.pairs)
        if s.kind == "combined":
            pairs = f"{len(s.pairs)} pair(s)"
        lines.append(f"{party + ' ' if party else ''}step {n}: {pairs} => {s.relation}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class LoccCertificate:
    set_digest: str
    alice: TrivialityVerdict
    bob: TrivialityVerdict
    conclusion: str
    n_states: int = 0
    m: int = 0
    n: int = 0
    family: str | None = None
    assumption: str = field(default=REDUCTION_ASSUMPTION)


def set_digest(state_set: StateSet) -> str:
    return hashlib.sha256(save_json(state_set)).hexdigest()


def certify_party(state_set: StateSet, party: str, with_trace: bool = True) -> TrivialityVerdict:
    return decide_triviality(build_constraints(state_set, party, check=False), with_trace)


def certify_locc(state_set: StateSet, with_trace: bool = True) -> LoccCertificate:
    if len(state_set) < 2:
        raise ValueError("need at least two states to certify")
    require_valid(state_set)
    alice = certify_party(state_set, ALICE, with_trace)
    bob = certify_party(state_set, BOB, with_trace)
    conclusion = INDISTINGUISHABLE if alice.trivial and bob.trivial else INCONCLUSIVE
    return LoccCertificate(set_digest(state_set), alice, bob, conclusion,
                           len(state_set), state_set.m, state_set.n, state_set.family)


# JSON documents

def matrix_document(M: RMatrix | None):
    if M is None:
        return None
    return [[format_rational(x) for x in M.row(i)] for i in range(M.rows)]


def verdict_document(v: TrivialityVerdict) -> dict:
    doc = {
        "status": v.status,
        "sym_nullity": v.sym_nullity,
        "antisym_nullity": v.antisym_nullity,
        "trace": [
            {
                "kind": s.kind,
                "part": s.part,
                "pairs": [list(p) for p in s.pairs],
                "entries": [list(e) for e in s.entries],
                "relation": s.relation,
            }
            for s in v.trace
        ],
    }
    if v.status == NONTRIVIAL:
        doc["witness"] = {
            "sym": matrix_document(v.witness_sym),
            "antisym": matrix_document(v.witness_antisym),
        }
        E, F = v.witness_povm
        doc["witness_povm"] = {
            "E": matrix_document(E),
            "F": matrix_document(F),
            "embedding": "real" if v.witness_antisym is None else "realified-complex",
        }
    return doc


def certificate_document(cert: LoccCertificate) -> dict:
    return {
        "set_digest": cert.set_digest,
        "m": cert.m,
        "n": cert.n,
        "family": cert.family,
        "states": cert.n_states,
        "conclusion": cert.conclusion,
        "assumption": cert.assumption,
        "alice": verdict_document(cert.alice),
        "bob": verdict_document(cert.bob),
    }
