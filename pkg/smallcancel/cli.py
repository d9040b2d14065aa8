from __future__ import annotations

import logging
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np
import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress
from rich.table import Table

from .config import get_settings
from .errors import (
    CertificationRequiredError,
    FamilyError,
    InputError,
    RationalSyntaxError,
    TruncationLimitedError,
)
from .models.family import ConstructionParams, RelatorFamily
from .models.perm import GroupSpec, PrefixPattern
from .models.word import Word
from .schemas import (
    BarrierOut,
    ClosureOut,
    DensityOut,
    InclusionOut,
    MembersOut,
    ProbeOut,
    WordOut,
    certificate_out,
    family_out,
    match_out,
    probe_out,
    ratio_text,
    scan_out,
    verdict_out,
)
from .services import cancellation, dehn, polish_group, relator_gen, sampling, word_core

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_USAGE = 64

logger = logging.getLogger(__name__)

# typer may vendor its own click; take the base error class from what typer raises
ClickException = next(cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "ClickException")

app = typer.Typer(add_completion=False, help="Small-cancellation relator families: generate, certify, reduce")
probe_app = typer.Typer(add_completion=False, help="Finite probes over a certified family")
app.add_typer(probe_app, name="probe")

console = Console()
err_console = Console(stderr=True)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


FORMAT_OPTION = typer.Option(OutputFormat.text, "--format", help="Report format: text or json")
QUIET_OPTION = typer.Option(False, "--quiet", help="Suppress progress and log output")
THREADS_OPTION = typer.Option(None, "--threads", help="Worker cap (default: SMALLCANCEL_THREADS)")
GROUP_OPTION = typer.Option(None, "--group", help="Group spec file (cycle lines, depth=<n> header)")
FAMILY_OPTION = typer.Option(None, "--family", help="Family manifest file")
KMAX_OPTION = typer.Option(None, "--kmax", help="Largest k in the truncation")
NREP_OPTION = typer.Option(None, "--n-rep", help="Repetition bound of the relators")
LAMBDA_OPTION = typer.Option(None, "--lambda", help="C'(lambda) target as p/q")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        result = app(
            args=list(argv) if argv is not None else None,
            prog_name="smallcancel",
            standalone_mode=False,
        )
    except ClickException as e:
        e.show()
        return EXIT_USAGE
    except typer.Abort:
        err_console.print("aborted")
        return EXIT_USAGE
    except (InputError, FamilyError, OSError) as e:
        err_console.print(f"[red]error:[/red] {e}")
        return EXIT_USAGE
    except (CertificationRequiredError, TruncationLimitedError) as e:
        err_console.print(f"[red]check failed:[/red] {e}")
        return EXIT_CHECK_FAILED
    return result if isinstance(result, int) else EXIT_OK


def run() -> None:
    sys.exit(main())


def parse_rational(text: str, name: str = "value") -> Fraction:
    """Parse "p/q" (or an integer) exactly."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise RationalSyntaxError(f"malformed rational for {name}: {text!r}") from e
    if "." in text or "e" in text.lower():
        raise RationalSyntaxError(f"{name} must be written as p/q, got {text!r}")
    return value


def _rational_option(text: Optional[str], name: str, default: str) -> Fraction:
    try:
        return parse_rational(text if text is not None else default, name)
    except RationalSyntaxError as e:
        raise typer.BadParameter(str(e), param_hint=f"--{name}") from e


def _setup(quiet: bool) -> None:
    level = logging.ERROR if quiet else getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _threads(threads: Optional[int]) -> int:
    return max(1, threads if threads is not None else get_settings().threads)


def _emit(report: BaseModel, fmt: OutputFormat, text: Callable[[], None]) -> None:
    if fmt is OutputFormat.json:
        typer.echo(report.model_dump_json(by_alias=True, indent=2))
    else:
        text()


def _parse_word(text: str) -> Word:
    return word_core.parse_word(text)


def _params(kmax: Optional[int], n_rep: Optional[int], lam: Optional[Fraction] = None) -> ConstructionParams:
    return ConstructionParams.from_settings(k_max=kmax, n_rep=n_rep, lambda_target=lam)


def _load_family(
    group: Optional[Path],
    family: Optional[Path],
    kmax: Optional[int],
    n_rep: Optional[int],
    threads: int,
) -> RelatorFamily:
    if family is not None:
        return relator_gen.read_manifest(family.read_text())
    if group is not None:
        spec = polish_group.read_group_spec(group)
        return polish_group.materialize_family(spec, _params(kmax, n_rep), threads)
    raise typer.BadParameter("one of --group or --family is required", param_hint="--group/--family")


def _certify(family: RelatorFamily, lam: Fraction, threads: int, quiet: bool):
    if quiet:
        return cancellation.verify_cprime(family, lam, threads)
    with Progress(console=err_console, transient=True) as progress:
        task = progress.add_task(f"certifying C'({ratio_text(lam)})", total=None)

        def update(done: int, total: int, message: str) -> None:
            progress.update(task, completed=done, total=total, description=message)

        return cancellation.verify_cprime(family, lam, threads, on_progress=update)


def _certified_family(
    group: Optional[Path],
    family: Optional[Path],
    kmax: Optional[int],
    n_rep: Optional[int],
    lam_text: Optional[str],
    threads: int,
    quiet: bool,
) -> RelatorFamily:
    lam = _rational_option(lam_text, "lambda", get_settings().lambda_target)
    loaded = _load_family(group, family, kmax, n_rep, threads)
    certificate = _certify(loaded, lam, threads, quiet)
    if not certificate.passed or lam > dehn.MAX_DEHN_LAMBDA:
        raise CertificationRequiredError(
            f"family does not certify C'({ratio_text(lam)}) with lambda <= 1/6 "
            f"(max piece ratio {ratio_text(certificate.max_piece_ratio)}, min length {certificate.min_length})"
        )
    return loaded


@app.command("gen-relators")
def gen_relators(
    prefix: Optional[str] = typer.Option(None, help="Prefix tuple, e.g. 0,1"),
    k: Optional[int] = typer.Option(None, help="Number of letters (defaults to the prefix length)"),
    group: Optional[Path] = GROUP_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Generate one relator w_{sigma,k}, or every base relator of a group's truncation."""
    _setup(quiet)
    if prefix is not None:
        values = tuple(int(v) for v in prefix.replace(",", " ").split())
        pattern = PrefixPattern(values)
        size = k if k is not None else len(values)
        reps = n_rep if n_rep is not None else get_settings().n_rep
        relators = relator_gen.generate_relators([(pattern, size)], reps)
        family = RelatorFamily(relators, params=None, provenance={"source": "prefix"})
    else:
        family = _load_family(group, None, kmax, n_rep, _threads(threads))
    report = family_out(family, include_words=True)
    _emit(report, fmt, lambda: typer.echo(relator_gen.write_manifest(family), nl=False))


@app.command()
def symmetrize(
    word: List[str] = typer.Option(..., "--word", help="Base word (repeatable)"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
) -> None:
    """List the symmetrized closure of the given cyclically reduced words."""
    _setup(quiet)
    members = relator_gen.symmetrize([word_core.reduce(_parse_word(w)) for w in word])
    report = MembersOut(count=len(members), members=[m.render() for m in members])
    _emit(report, fmt, lambda: [typer.echo(m) for m in report.members])


@app.command("verify-cprime")
def verify_cprime(
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Certify the C'(lambda) condition on a truncated family."""
    _setup(quiet)
    workers = _threads(threads)
    target = _rational_option(lam, "lambda", get_settings().lambda_target)
    loaded = _load_family(group, family, kmax, n_rep, workers)
    certificate = _certify(loaded, target, workers, quiet)
    report = certificate_out(certificate, loaded)

    def text() -> None:
        table = Table(title=f"C'({report.lambda_}) certificate")
        table.add_column("Check")
        table.add_column("Value")
        table.add_row("pass", str(report.passed))
        table.add_row("max piece ratio", report.max_piece_ratio)
        table.add_row("min length", str(report.min_length))
        table.add_row("members", str(report.members))
        table.add_row("k_max", str(report.truncation.k_max))
        table.add_row("prefixes", str(len(report.truncation.prefixes)))
        for witness in report.witnesses:
            table.add_row("witness", f"{witness.host} ~ {witness.other}: {witness.piece_length}/{witness.host_length}")
        console.print(table)

    _emit(report, fmt, text)
    raise typer.Exit(code=EXIT_OK if certificate.passed else EXIT_CHECK_FAILED)


@app.command()
def reduce(
    word: str = typer.Option(..., "--word", help="Word to reduce, e.g. 'x0 x1^2'"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    trace: bool = typer.Option(False, "--trace", help="Print the replacement trace before the result"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Dehn-reduce a word over a certified family and print the final word."""
    _setup(quiet)
    target = _parse_word(word)
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    verdict = dehn.dehn_reduce(target, loaded)
    report = verdict_out(verdict)

    def text() -> None:
        if trace:
            for step in verdict.trace:
                typer.echo(step.render())
        typer.echo(verdict.final.render())
        if not quiet:
            err_console.print(f"status: {verdict.status.value}")

    _emit(report, fmt, text)


@app.command()
def greendlinger(
    word: str = typer.Option(..., "--word", help="Word known to be trivial"),
    bound: Optional[str] = typer.Option(None, "--bound", help="Fraction of a relator to find (default 1 - 3*lambda)"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Search the reduced word for more than `bound` of some relator."""
    _setup(quiet)
    target = word_core.reduce(_parse_word(word))
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    limit = _rational_option(bound, "bound", "0/1") if bound is not None else None
    match = dehn.greendlinger_certificate(target, loaded, limit)
    if match is None:
        err_console.print("no certificate subword found: a hypothesis is violated")
        raise typer.Exit(code=EXIT_CHECK_FAILED)
    report = match_out(match)
    _emit(
        report,
        fmt,
        lambda: typer.echo(
            f"pos={report.start} relator={report.relator} {report.length}/{report.relator_length} ({report.kind})"
        ),
    )


@app.command()
def dense(
    word: str = typer.Option(..., "--word", help="Word to test"),
    epsilon: str = typer.Option(..., "--epsilon", help="Density as p/q"),
    max_length: Optional[int] = typer.Option(None, "--max-length", help="Only test subwords up to this length"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
) -> None:
    """Check that every subword of length n has at least epsilon*n generators."""
    _setup(quiet)
    eps = _rational_option(epsilon, "epsilon", "1")
    target = word_core.reduce(_parse_word(word))
    if max_length is None:
        result = word_core.is_epsilon_dense(target, eps)
    else:
        result = word_core.is_locally_dense(target, max_length, eps)
    report = DensityOut(
        dense=result, epsilon=ratio_text(eps), length=len(target), distinct=word_core.distinct_letter_count(target)
    )
    _emit(report, fmt, lambda: typer.echo("dense" if result else "not dense"))
    raise typer.Exit(code=EXIT_OK if result else EXIT_CHECK_FAILED)


@app.command("scan-unique")
def scan_unique(
    prefix: str = typer.Option("0,1", help="Prefix tuple of the relator, e.g. 0,1,2"),
    k: Optional[int] = typer.Option(None, help="Number of letters (defaults to the prefix length)"),
    n_rep: Optional[int] = NREP_OPTION,
    ratio: str = typer.Option("7/10", "--ratio", help="Window length as a fraction of the relator"),
    mode: str = typer.Option("cyclic", "--mode", help="cyclic windows or linear subwords"),
    include_inverse: bool = typer.Option(False, "--include-inverse", help="Also scan the inverse relator"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
) -> None:
    """Report the letters seen with both exponents in every window of a relator."""
    _setup(quiet)
    values = tuple(int(v) for v in prefix.replace(",", " ").split())
    size = k if k is not None else len(values)
    reps = n_rep if n_rep is not None else get_settings().n_rep
    base = relator_gen.make_relator(values, size, reps)
    window_ratio = _rational_option(ratio, "ratio", "7/10")
    scan = relator_gen.unique_exponent_scan(base, window_ratio, mode=mode, include_inverse=include_inverse)
    report = scan_out(scan)

    def text() -> None:
        typer.echo(
            f"{'PASS' if scan.passed else 'FAIL'}: {len(scan.windows)} {scan.mode} windows of length "
            f"{scan.window_length}, expected {{{scan.expected}}}, {len(scan.failures)} failures"
        )
        for window in scan.failures[:20]:
            typer.echo(f"  offset={window.offset} both={list(window.both_exponent)}")

    _emit(report, fmt, text)
    raise typer.Exit(code=EXIT_OK if scan.passed else EXIT_CHECK_FAILED)


@app.command("perm-closure")
def perm_closure(
    group: Optional[Path] = GROUP_OPTION,
    gens: List[str] = typer.Option([], "--gens", help="Generator in cycle notation (repeatable)"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Closure depth (overrides the file header)"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
) -> None:
    """Enumerate the products of at most `depth` generators and inverses."""
    _setup(quiet)
    if group is not None:
        spec = polish_group.read_group_spec(group)
        if depth is not None:
            spec = GroupSpec(generators=spec.generators, closure_depth=depth, source=spec.source)
    else:
        if depth is None:
            raise typer.BadParameter("--depth is required with --gens", param_hint="--depth")
        spec = GroupSpec(
            generators=tuple(polish_group.parse_perm(g) for g in gens), closure_depth=depth, source="--gens"
        )
    closure = polish_group.closure_enumerate(spec)
    report = ClosureOut(
        complete=closure.complete,
        depth=closure.depth,
        size=len(closure.elements),
        elements=[e.render() for e in closure.elements],
    )

    def text() -> None:
        typer.echo(f"{report.size} elements, {'complete' if report.complete else 'incomplete'} at depth {report.depth}")
        for element in report.elements:
            typer.echo(f"  {element}")

    _emit(report, fmt, text)


@app.command("family")
def family_command(
    group: Path = typer.Option(..., "--group", help="Group spec file"),
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    output: Optional[Path] = typer.Option(None, "--output", help="Write the manifest here"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Materialize the truncated relator family of a permutation group."""
    _setup(quiet)
    loaded = _load_family(group, None, kmax, n_rep, _threads(threads))
    manifest = relator_gen.write_manifest(loaded)
    if output is not None:
        output.write_text(manifest)
        logger.info(f"wrote manifest to {output}")
    report = family_out(loaded)

    def text() -> None:
        table = Table(title="Relator family")
        table.add_column("Prefix")
        table.add_column("k")
        table.add_column("Length")
        for r in loaded.base_relators:
            table.add_row(r.prefix.render() if r.prefix else "-", str(r.k), str(len(r.word)))
        console.print(table)
        console.print(
            f"{report.members} symmetrized members, per-letter floor {report.per_letter_floor}, "
            f"excluded relators have length >= {report.excluded_min_length}"
        )

    _emit(report, fmt, text)


@app.command("family-diff")
def family_diff(
    a: Path = typer.Argument(..., help="Group spec file A"),
    b: Path = typer.Argument(..., help="Group spec file B"),
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Check that family(A) is contained in family(B)."""
    _setup(quiet)
    workers = _threads(threads)
    params = _params(kmax, n_rep)
    first = polish_group.materialize_family(polish_group.read_group_spec(a), params, workers)
    second = polish_group.materialize_family(polish_group.read_group_spec(b), params, workers)
    missing = polish_group.inclusion_missing(first, second)
    report = InclusionOut(
        subset=not missing,
        missing=[f"{r.prefix.render() if r.prefix else '-'} k={r.k}" for r in missing],
    )

    def text() -> None:
        typer.echo(f"subset={str(report.subset).lower()}")
        for entry in report.missing:
            typer.echo(f"  missing {entry}")

    _emit(report, fmt, text)
    raise typer.Exit(code=EXIT_OK if report.subset else EXIT_CHECK_FAILED)


@app.command()
def act(
    sigma: str = typer.Option(..., "--sigma", help="Permutation in cycle notation"),
    word: str = typer.Option(..., "--word", help="Word to relabel"),
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
) -> None:
    """Apply x_i -> x_sigma(i) to a word."""
    _setup(quiet)
    image = polish_group.apply_sigma(polish_group.parse_perm(sigma), _parse_word(word))
    report = WordOut(word=image.render(), length=len(image))
    _emit(report, fmt, lambda: typer.echo(report.word))


def _generators(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


@probe_app.command("order")
def probe_order(
    generator: int = typer.Option(0, "--generator", help="Generator index i"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Order of x_i in the group (3 when the factor embeds)."""
    _setup(quiet)
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    order = dehn.order_probe(generator, loaded)
    report = ProbeOut(probe="order", passed=order == 3, value=order)
    _emit(report, fmt, lambda: typer.echo(f"order(x{generator}) = {order}"))
    raise typer.Exit(code=EXIT_OK if report.passed else EXIT_CHECK_FAILED)


@probe_app.command("commute")
def probe_commute(
    z: str = typer.Option(..., "--z", help="Word z"),
    generator: int = typer.Option(0, "--generator", help="Generator index i"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Whether z commutes with x_i."""
    _setup(quiet)
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    commutes = dehn.commutes_probe(word_core.reduce(_parse_word(z)), generator, loaded)
    report = ProbeOut(probe="commute", passed=commutes)
    _emit(report, fmt, lambda: typer.echo("commutes" if commutes else "does not commute"))


@probe_app.command("conjugacy")
def probe_conjugacy(
    i: int = typer.Option(..., "--i", help="First generator"),
    j: int = typer.Option(..., "--j", help="Second generator"),
    max_length: int = typer.Option(2, "--max-length", help="Longest conjugator tried"),
    generators: str = typer.Option("0,1,2,3,4,5", "--generators", help="Conjugator alphabet"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Check u x_i u^-1 x_j^2 is soundly nontrivial for every short u."""
    _setup(quiet)
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    result = dehn.conjugacy_probe(i, j, loaded, _generators(generators), max_length)
    report = probe_out(result)
    failures = [o for o in report.outcomes if o.status != "nontrivial_sound"]
    _emit(
        report,
        fmt,
        lambda: typer.echo(
            f"{'PASS' if report.passed else 'FAIL'}: {len(report.outcomes)} conjugators, {len(failures)} failures"
        ),
    )
    raise typer.Exit(code=EXIT_OK if report.passed else EXIT_CHECK_FAILED)


@probe_app.command("centralizer")
def probe_centralizer(
    generator: int = typer.Option(0, "--generator", help="Generator index i"),
    max_length: int = typer.Option(2, "--max-length", help="Longest candidate z"),
    generators: str = typer.Option("0,1,2,3", "--generators", help="Candidate alphabet"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    lam: Optional[str] = LAMBDA_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Check that only powers of x_i commute with x_i among short words."""
    _setup(quiet)
    loaded = _certified_family(group, family, kmax, n_rep, lam, _threads(threads), quiet)
    report = probe_out(dehn.centralizer_sweep(generator, loaded, _generators(generators), max_length))
    _emit(
        report,
        fmt,
        lambda: typer.echo(
            f"{'PASS' if report.passed else 'FAIL'}: commuting words {[o.word for o in report.outcomes]}"
        ),
    )
    raise typer.Exit(code=EXIT_OK if report.passed else EXIT_CHECK_FAILED)


@probe_app.command("barrier")
def probe_barrier(
    samples: int = typer.Option(100, "--samples", help="Number of random dense words"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed (default: SMALLCANCEL_SEED)"),
    length: int = typer.Option(40, "--length", help="Length of each word"),
    epsilons: str = typer.Option("1/10,1/3,1", "--epsilons", help="Densities to cycle through"),
    group: Optional[Path] = GROUP_OPTION,
    family: Optional[Path] = FAMILY_OPTION,
    kmax: Optional[int] = KMAX_OPTION,
    n_rep: Optional[int] = NREP_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    quiet: bool = QUIET_OPTION,
    threads: Optional[int] = THREADS_OPTION,
) -> None:
    """Seeded dense words must hold no delta-fraction of a relator once c*eps*delta > 1."""
    _setup(quiet)
    loaded = _load_family(group, family, kmax, n_rep, _threads(threads))
    rng = np.random.default_rng(seed if seed is not None else get_settings().seed)
    densities = [parse_rational(e, "epsilon") for e in epsilons.split(",")]
    floor = loaded.per_letter_floor
    if floor == 0:
        raise FamilyError("density barrier needs a non-empty family with |R| >= k(R) for every relator")
    matches = 0
    for sample in range(samples):
        eps = densities[sample % len(densities)]
        delta = Fraction(1001, 1000) / (floor * eps)
        word = sampling.random_dense_word(rng, length, eps)
        if cancellation.find_relator_subword(word, loaded, min(delta, Fraction(1))) is not None:
            matches += 1
            logger.warning(f"match in dense word {word.render()}")
    report = BarrierOut(
        passed=matches == 0,
        samples=samples,
        matches=matches,
        floor=ratio_text(floor),
        epsilons=[ratio_text(e) for e in densities],
    )
    _emit(report, fmt, lambda: typer.echo(f"{'PASS' if matches == 0 else 'FAIL'}: {matches} matches in {samples} words"))
    raise typer.Exit(code=EXIT_OK if report.passed else EXIT_CHECK_FAILED)
