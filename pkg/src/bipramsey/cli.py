"""Command-line interface.

Exit codes: 0 pass, 1 verdict false, 2 input error, 3 audit precondition
failed, 4 search budget exceeded.
"""

from __future__ import annotations

import hashlib
import shlex
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from .annealing import MODES, SearchConfig, anneal, mode_objective
from .audit import AuditPreconditionError, run_audit
from .colouring import Colouring, ParseError, parse_colouring, read_comments, write_colouring
from .constructions import (
    BlowupWeights,
    ConstructionError,
    blow_up,
    thm15_construction,
    verify_figure1_base,
)
from .exhaustive import BudgetExceeded, compute_r
from .matching import connected_matching_numbers, mono_cm_free

EXIT_PASS = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

MERGE_COLOUR_KEY = "merge-colour:"


class RunReport:
    """Accumulates report lines for stdout and finishes with the exit code."""

    def __init__(self) -> None:
        self.started = time.perf_counter()
        ctx = click.get_current_context()
        args = ctx.command_path.split()
        for key, value in ctx.params.items():
            if value is not None:
                args.append(f"{key}={value}")
        self.lines = ["command: " + " ".join(shlex.quote(a) for a in args)]

    def add(self, line: str) -> None:
        self.lines.append(line)

    def digest(self, path: str | Path, data: bytes) -> None:
        self.add(f"input: {path} sha256={hashlib.sha256(data).hexdigest()}")

    def verdict(self, name: str, passed: bool) -> None:
        self.add(f"check {name}: {'pass' if passed else 'fail'}")

    def finish(self, code: int):
        self.add(f"elapsed: {time.perf_counter() - self.started:.3f}s")
        self.add(f"exit: {code}")
        click.echo("\n".join(self.lines))
        sys.exit(code)


def _load(report: RunReport, path: str) -> tuple[Colouring, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        report.add(f"error: cannot read {path}: {exc.strerror}")
        report.finish(EXIT_INPUT)
    report.digest(path, data)
    try:
        text = data.decode("utf-8")
        return parse_colouring(text), text
    except UnicodeDecodeError:
        report.add(f"error: {path}: not UTF-8")
    except ParseError as exc:
        report.add(f"error: {path}: {exc}")
    report.finish(EXIT_INPUT)


def _write_verified(report: RunReport, path: str, col: Colouring, comments, target: int | None) -> bool:
    """Write ``col`` and confirm the file re-parses to it (and is CM(target)-free)."""
    write_colouring(path, col, comments)
    reread = parse_colouring(Path(path).read_text(encoding="utf-8"))
    ok = reread == col
    if ok and target is not None:
        ok = mono_cm_free(reread, target)
    report.add(f"output: {path} ({col.n_left}x{col.n_right}, k={col.k})")
    report.verdict("output re-verified", ok)
    return ok


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


@click.group()
def main():
    """Colourings of complete bipartite graphs without monochromatic connected matchings."""


@main.command()
@click.argument("file")
@click.option("--target", type=click.IntRange(min=1), required=True,
              help="Matching size that must not appear in any colour.")
def verify(file, target):
    """Report per-colour connected matching numbers and the CM(target)-free verdict."""
    report = RunReport()
    col, _ = _load(report, file)
    numbers = connected_matching_numbers(col)
    for c, nu in numbers.items():
        report.add(f"colour {c}: connected matching number {nu}")
    free = all(nu < target for nu in numbers.values())
    report.verdict(f"CM({target})-free", free)
    report.finish(EXIT_PASS if free else EXIT_FALSE)


@main.command()
@click.argument("file")
@click.option("--n", "n", type=click.IntRange(min=1), required=True,
              help="Audits assume no monochromatic connected (n+1)-matching.")
def audit(file, n):
    """Special-vertex audits on a colouring free of monochromatic CM(n+1)."""
    report = RunReport()
    col, _ = _load(report, file)
    try:
        summary = run_audit(col, n)
    except AuditPreconditionError as exc:
        report.add(f"precondition failed ({exc.kind}): {exc}")
        report.finish(EXIT_PRECONDITION)
    for line in summary.lines():
        report.add(line)
    report.finish(EXIT_PASS if summary.passed else EXIT_FALSE)


@main.command()
@click.option("--mode", type=click.Choice(MODES), required=True)
@click.option("--N", "N", type=click.IntRange(min=1))
@click.option("--M", "M", type=click.IntRange(min=1))
@click.option("--k", type=click.IntRange(min=1))
@click.option("--n", "n", type=click.IntRange(min=1))
@click.option("--seed", type=int, required=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--max-steps", type=click.IntRange(min=1), default=10**7, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=32, show_default=True)
@click.option("--initial-temperature", default="2", show_default=True)
@click.option("--cooling-factor", default="0.995", show_default=True)
@click.option("--steps-per-temperature", type=click.IntRange(min=1), default=100, show_default=True)
def search(mode, N, M, k, n, seed, out, max_steps, restarts, initial_temperature,
           cooling_factor, steps_per_temperature):
    """Simulated annealing for a colouring with objective zero."""
    report = RunReport()
    dims = {"N": N, "M": M, "k": k, "n": n}
    if mode == "figure1":
        dims = {key: v for key, v in dims.items() if v is not None}
    else:
        if n is None and mode == "star-forest":
            dims["n"] = 1
        missing = [key for key in ("N", "M", "k", "n") if dims[key] is None]
        if missing:
            report.add(f"error: mode {mode} needs " + ", ".join("--" + m for m in missing))
            report.finish(EXIT_INPUT)
    try:
        cfg = SearchConfig.for_mode(
            mode, seed=seed, max_steps=max_steps, restarts=restarts,
            initial_temperature=Fraction(initial_temperature),
            cooling_factor=Fraction(cooling_factor),
            steps_per_temperature=steps_per_temperature, **dims,
        )
    except (ValueError, ZeroDivisionError) as exc:
        report.add(f"error: {exc}")
        report.finish(EXIT_INPUT)

    outcome = anneal(cfg)
    comments = [f"search --mode {mode} N={cfg.N} M={cfg.M} k={cfg.k} n={cfg.n}"]
    comments += outcome.metadata(cfg)
    ok = outcome.success
    if mode == "figure1" and ok:
        check = verify_figure1_base(outcome.best)
        comments.append(f"{MERGE_COLOUR_KEY} {check.merge_colour}")
        report.verdict("figure-1 base", check.passed)
        ok = check.passed
    target = None if mode == "figure1" else cfg.n + 1
    written = _write_verified(report, out, outcome.best, comments, target if ok else None)
    if ok:
        reread = parse_colouring(Path(out).read_text(encoding="utf-8"))
        ok = written and mode_objective(reread, cfg) == 0
    report.add(f"objective: {outcome.objective}")
    report.add(f"steps: {outcome.steps_used} over {outcome.restarts_used} restart(s)")
    report.verdict("objective zero", ok)
    report.finish(EXIT_PASS if ok else EXIT_FALSE)


@main.command()
@click.argument("base")
@click.option("--weights-x", help="Comma-separated weights for the X side.")
@click.option("--weights-y", help="Comma-separated weights for the Y side.")
@click.option("--uniform", type=click.IntRange(min=1), help="Same weight for every vertex.")
@click.option("--target", type=click.IntRange(min=1),
              help="Verify CM(target)-freeness (default: max weight x max base matching + 1).")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def blowup(base, weights_x, weights_y, uniform, target, out):
    """Blow each vertex of BASE up into an independent set."""
    report = RunReport()
    col, _ = _load(report, base)
    try:
        if uniform is not None:
            if weights_x or weights_y:
                raise ValueError("--uniform excludes --weights-x/--weights-y")
            weights = BlowupWeights.uniform(col, uniform)
        else:
            if not weights_x or not weights_y:
                raise ValueError("give --uniform or both --weights-x and --weights-y")
            weights = BlowupWeights(_int_list(weights_x), _int_list(weights_y))
        result = blow_up(col, weights)
    except (ValueError, click.BadParameter) as exc:
        report.add(f"error: {exc}")
        report.finish(EXIT_INPUT)
    if target is None:
        base_nu = max(connected_matching_numbers(col).values())
        target = max(weights.x_weights + weights.y_weights) * base_nu + 1
    comments = [f"blow-up of {Path(base).name}", f"x weights: {list(weights.x_weights)}",
                f"y weights: {list(weights.y_weights)}", f"verify: --target {target}"]
    ok = _write_verified(report, out, result, comments, target)
    report.verdict(f"CM({target})-free", ok)
    report.finish(EXIT_PASS if ok else EXIT_FALSE)


def merge_colour_from_comments(text: str) -> int | None:
    for line in read_comments(text):
        if line.startswith(MERGE_COLOUR_KEY):
            try:
                return int(line[len(MERGE_COLOUR_KEY):])
            except ValueError:
                return None
    return None


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--base", required=True, help="Verified 7x7 five-colour base with u0v0 absent.")
@click.option("--merge-colour", type=click.IntRange(min=1),
              help="Colour for u0v0 (default: the base file's merge-colour comment).")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def thm15(n, base, merge_colour, out):
    """Blow the base up into a K_{floor(6.5n),floor(6.5n)} with no CM(n+1)."""
    report = RunReport()
    col, text = _load(report, base)
    if merge_colour is None:
        merge_colour = merge_colour_from_comments(text)
    try:
        result = thm15_construction(n, col, merge_colour)
    except ConstructionError as exc:
        report.add(f"error: {exc}")
        report.finish(EXIT_FALSE)
    comments = [f"6.5n construction, n={n}, base {Path(base).name}",
                f"verify: --target {n + 1}"]
    ok = _write_verified(report, out, result, comments, n + 1)
    report.verdict(f"CM({n + 1})-free", ok)
    report.finish(EXIT_PASS if ok else EXIT_FALSE)


@main.command("compute-r")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--max-N", "max_n", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Where to write the witness for N-1.")
def compute_r_cmd(k, n, max_n, out):
    """Smallest N with every k-colouring of K_{N,N} containing a monochromatic CM(n+1)."""
    report = RunReport()
    try:
        result = compute_r(k, n, max_n)
    except BudgetExceeded as exc:
        report.add(f"unresolved at N={exc.N}: {exc}")
        report.finish(EXIT_BUDGET)
    for d in result.decisions:
        verdict = "arrowing" if d.arrowing else "witness"
        report.add(f"N={d.N}: {verdict} ({d.stats.nodes} nodes)")
    if not result.resolved:
        report.add(f"unresolved: no arrowing N <= {max_n}")
        report.finish(EXIT_FALSE)
    report.add(f"r = {result.value}")
    if result.witness is not None:
        w = result.witness
        report.add(f"witness: K_{{{w.n_left},{w.n_right}}}")
        if out:
            comments = [f"compute-r k={k} n={n}: CM({n + 1})-free witness at N={w.n_left}",
                        f"verify: --target {n + 1}"]
            if not _write_verified(report, out, w, comments, n + 1):
                report.finish(EXIT_FALSE)
    report.finish(EXIT_PASS)


if __name__ == "__main__":
    main()
