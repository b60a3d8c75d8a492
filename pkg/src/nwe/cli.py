"""Command-line front end.

Exit codes: 0 success / INDISTINGUISHABLE / EXTENDIBLE, 1 negative check
(invalid set, incomplete basis), 2 usage, file or input errors,
3 INCONCLUSIVE, 4 UPB, 5 BUDGET_EXCEEDED.
"""

from __future__ import annotations

import sys

import click

from . import certifier, extendibility, families
from .states import StateSet, canonical_json, load_json, save_json, to_document, validate

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_UPB = 4
EXIT_BUDGET = 5

_EXTEND_CODES = {
    extendibility.EXTENDIBLE: EXIT_OK,
    extendibility.UPB: EXIT_UPB,
    extendibility.BUDGET_EXCEEDED: EXIT_BUDGET,
}


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_ERROR)


def _read_set(path: str) -> StateSet:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc.strerror}")
    try:
        return load_json(data)
    except ValueError as exc:
        _fail(f"{path}: {exc}")


def _emit(data: bytes, out: str | None):
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        _fail(f"cannot write {out}: {exc.strerror}")


in_option = click.option("--in", "in_path", required=True, metavar="PATH",
                         help="State-set JSON file.")
out_option = click.option("--out", "out_path", default=None, metavar="PATH",
                          help="Write output here instead of stdout.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Generate and certify locally indistinguishable product-state sets."""


@main.command()
@click.option("--family", required=True,
              type=click.Choice([*families.FAMILIES, "bennett9"]))
@click.option("--m", "m", type=int, default=None, help="Alice's dimension (eq1: 3).")
@click.option("--n", "n", type=int, default=None, help="Bob's dimension.")
@out_option
def generate(family, m, n, out_path):
    """Write a generated state set as JSON."""
    try:
        if family == "bennett9":
            state_set = families.gen_bennett9()
        else:
            if n is None or (m is None and family != families.EQ1):
                raise click.UsageError(f"--family {family} needs --m and --n"
                                       if family != families.EQ1 else "--family eq1 needs --n")
            state_set = families.generate(family, 3 if m is None else m, n)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(save_json(state_set), out_path)


@main.command("validate")
@in_option
@out_option
def validate_cmd(in_path, out_path):
    """Report every non-orthogonal pair in a state set."""
    state_set = _read_set(in_path)
    report = validate(state_set)
    labels = state_set.labels
    doc = {
        "valid": report.ok,
        "states": len(state_set),
        "violations": [[labels[i], labels[j]] for i, j in report.violations],
    }
    _emit(canonical_json(doc), out_path)
    sys.exit(EXIT_OK if report.ok else EXIT_NEGATIVE)


def _certify(state_set: StateSet) -> certifier.LoccCertificate:
    try:
        return certifier.certify_locc(state_set)
    except ValueError as exc:
        _fail(str(exc))


@main.command()
@in_option
@out_option
@click.option("--emit-trace", is_flag=True, help="Also print the derivation trace.")
@click.option("--trace-out", default=None, metavar="PATH",
              help="Trace destination (default: stderr).")
def certify(in_path, out_path, emit_trace, trace_out):
    """Certify LOCC indistinguishability; exit 0 if certified, 3 if inconclusive."""
    cert = _certify(_read_set(in_path))
    _emit(canonical_json(certifier.certificate_document(cert)), out_path)
    if emit_trace:
        text = _trace_text(cert)
        if trace_out:
            _emit(text.encode("utf-8"), trace_out)
        else:
            click.echo(text, err=True, nl=False)
    sys.exit(EXIT_OK if cert.conclusion == certifier.INDISTINGUISHABLE else EXIT_INCONCLUSIVE)


def _trace_text(cert: certifier.LoccCertificate) -> str:
    parts = []
    for v in (cert.alice, cert.bob):
        if v.trivial:
            parts.append(certifier.format_trace(v.trace, v.party))
        else:
            parts.append(f"{v.party}: NONTRIVIAL (solution space dimension "
                         f"{v.sym_nullity} + {v.antisym_nullity}), no derivation\n")
    parts.append(f"conclusion: {cert.conclusion}\n")
    return "".join(parts)


@main.command()
@in_option
def trace(in_path):
    """Print the human-readable derivation for both parties."""
    cert = _certify(_read_set(in_path))
    click.echo(_trace_text(cert), nl=False)
    sys.exit(EXIT_OK if cert.conclusion == certifier.INDISTINGUISHABLE else EXIT_INCONCLUSIVE)


@main.command()
@in_option
@out_option
@click.option("--budget", type=click.IntRange(min=1), default=None,
              help="Search node limit (default: $NWE_BUDGET or 2^20).")
def extend(in_path, out_path, budget):
    """Search for a product state orthogonal to the set; exit 0, 4 (UPB) or 5."""
    state_set = _read_set(in_path)
    try:
        result = extendibility.find_product_extension(state_set, budget)
    except ValueError as exc:
        _fail(str(exc))
    _emit(canonical_json(extendibility.result_document(result)), out_path)
    sys.exit(_EXTEND_CODES[result.status])


@main.command()
@click.option("--m", "m", type=int, required=True, help="Local dimension (m = n >= 4).")
@out_option
def complete(m, out_path):
    """Complete the square eq2 set to a product basis and check it."""
    try:
        basis = families.completed_eq2_basis(m)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    ok = extendibility.check_completion_basis(basis)
    delta = ok and all(
        extendibility.separable_discriminate(basis, k) == tuple(int(i == k) for i in range(len(basis)))
        for k in range(len(basis)))
    doc = {
        "m": m,
        "family_states": len(basis) - len(families.completion_states(m)),
        "completion_states": len(families.completion_states(m)),
        "complete": ok,
        "separable_discrimination_perfect": delta,
        "basis": to_document(basis),
    }
    _emit(canonical_json(doc), out_path)
    sys.exit(EXIT_OK if ok and delta else EXIT_NEGATIVE)


if __name__ == "__main__":
    main()
