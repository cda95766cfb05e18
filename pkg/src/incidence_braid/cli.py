"""Command-line front end.

Subcommands::

    incidence-braid check POSET LAMBDA [--check NAME ...] [--transpose-ingest] [--figure PNG]
    incidence-braid family ID (--param NAME=VALUE ... | --random N) [--field F] [--out PATH]
    incidence-braid search POSET --field GF(p) [--no-pruning] [--limit N] [--out CENSUS]
    incidence-braid sweep [ID ...] --draws N [--field F]

Every subcommand accepts ``--json`` (machine-readable report on stdout) and
``--seed N``. Exit status: 0 every requested check passed, 1 a check failed,
2 the input could not be read, 3 the search space exceeds the cap.

File formats are described in :mod:`incidence_braid.formats`.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from . import braiding as br
from .braidcheck import braid_report, small_interval_diagnostics
from .families import (FAMILY_IDS, FamilyConstraintError, FamilyInstance, family_params,
                       random_instance, realize)
from .formats import (ParseError, format_census, format_lambda, parse_lambda, parse_poset)
from .poset import PosetError
from .scalars import Field, FieldMismatch, Mod
from .search import (DEFAULT_LIMIT, CapacityExceeded, SearchSpec, exhaustive_search,
                     family_coverage, random_family_sweep)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

CHECK_NAMES = ("all", "counit", "comult", "support", "factor", "nondeg", "braid", "diag")


@dataclass
class RunReport:
    """Outcome of one command; everything but ``elapsed`` is reproducible."""
    command: list
    inputs: dict = dc_field(default_factory=dict)
    verdicts: list = dc_field(default_factory=list)
    seed: int | None = None
    elapsed: float = 0.0
    summary: dict = dc_field(default_factory=dict)
    error: str | None = None

    def add(self, name: str, passed: bool, witness=None, detail: str = ""):
        self.verdicts.append({"check": name, "passed": bool(passed),
                              "witness": witness, "detail": detail})

    @property
    def passed(self) -> bool:
        return self.error is None and all(v["passed"] for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "seed": self.seed,
                "verdicts": self.verdicts, "summary": self.summary, "error": self.error,
                "passed": self.passed, "elapsed_s": round(self.elapsed, 6)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_plain, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"$ {' '.join(self.command)}"]
        lines += [f"  input {p}  sha256:{d}" for p, d in self.inputs.items()]
        for v in self.verdicts:
            mark = "PASS" if v["passed"] else "FAIL"
            extra = f"  ({v['detail']})" if v["detail"] else ""
            lines.append(f"{mark} {v['check']}{extra}")
            if not v["passed"] and v["witness"] is not None:
                lines.append(f"     witness: {_plain_deep(v['witness'])}")
        for k, v in self.summary.items():
            lines.append(f"  {k}: {_plain_deep(v)}")
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"  seed={self.seed} elapsed={self.elapsed:.3f}s")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Mod):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=str)
    if isinstance(x, Field):
        return str(x)
    return repr(x)


def _plain_deep(x):
    if isinstance(x, (list, tuple)):
        return type(x)(_plain_deep(v) for v in x)
    if isinstance(x, dict):
        return {k: _plain_deep(v) for k, v in x.items()}
    if isinstance(x, (Fraction, Mod)):
        return str(x)
    return x


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _read(path: str, report: RunReport) -> str:
    p = Path(path)
    report.inputs[str(p)] = _digest(p)
    return p.read_text()


# checks

def run_checks(t: br.LambdaTensor, selected, report: RunReport) -> None:
    """Append one verdict per requested check to ``report``."""
    want = set(selected)
    if "all" in want:
        want = set(CHECK_NAMES) - {"all"}
    try:
        s = br.extract_restriction(t)
        report.add("restriction", True)
    except br.RestrictionError as exc:
        s = None
        report.add("restriction", False, detail=str(exc))
    if s is not None:
        v = br.check_set_solution(s)
        report.add("set_solution", v.passed, v.witness, v.detail)

    def need_s(name, fn):
        if s is None:
            report.add(name, False, detail="restriction unavailable")
        else:
            v = fn()
            report.add(name, v.passed, v.witness, v.detail)

    if "counit" in want:
        v = br.check_counit(t)
        report.add("counit", v.passed, v.witness, v.detail)
    if "comult" in want:
        v = br.check_comultiplicativity(t)
        report.add("comult", v.passed, v.witness, v.detail)
    if "support" in want:
        need_s("support", lambda: br.check_support(t, s))
        need_s("graded_units", lambda: br.check_graded_units(t, s))
        need_s("cover_shape", lambda: br.check_cover_shape(t, s))
    if "factor" in want:
        need_s("factor", lambda: br.check_factorization(t, s))
        need_s("chain_independence", lambda: br.check_chain_independence(t, s))
    if "nondeg" in want:
        v = br.check_nondegeneracy(t)
        report.add("nondeg", v.passed, v.witness, v.detail)
    if "braid" in want:
        rep = braid_report(t, sextuples=s is not None)
        n = len(t.basis)
        detail = f"residual on {n ** 3}-dim cube"
        if rep.sextuples_checked:
            detail += (f"; {len(rep.per_sextuple_failures)} of {rep.sextuples_checked}"
                       " six-interval identities fail")
        report.add("braid", rep.residual_is_zero, rep.witness, detail)
    if "diag" in want:
        if s is None or not br.check_set_solution(s):
            report.add("diag", False, detail="needs a set-theoretic restriction")
        else:
            d = small_interval_diagnostics(t, s)
            for item, v in sorted(d.items.items()):
                tag = " (implied)" if item in d.implied else ""
                report.add(f"diag item {item}{tag}", v.passed, v.witness,
                           f"{len(v.violations)} violations")
            report.add("diag redundancy", d.redundancy_holds())
            v = br.lemma_vanishing_sums(t, s)
            report.add("vanishing sums", v.passed, v.witness, v.detail)


def cmd_check(args, report: RunReport) -> int:
    poset = parse_poset(_read(args.poset, report), source=args.poset)
    t = parse_lambda(_read(args.tensor, report), poset, source=args.tensor,
                     transpose=args.transpose_ingest)
    run_checks(t, args.check or ["all"], report)
    if args.figure:
        from .plotting import plot_sparsity
        report.summary["figure"] = str(plot_sparsity(t, args.figure))
    return EXIT_OK if report.passed else EXIT_FAILED


# families

_GREEK = {"α": "alpha", "β": "beta", "Γ": "Gamma", "ε": "eps"}
_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def param_name(raw: str) -> str:
    """Accept ASCII names or Greek letters with subscript digits (α₁ -> alpha1)."""
    name = raw.strip().translate(_SUBSCRIPTS)
    for g, ascii_name in _GREEK.items():
        if name.startswith(g):
            return ascii_name + name[len(g):]
    return name


def parse_params(items, fid: str, field: Field) -> dict:
    known = family_params(fid)
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected NAME=VALUE, got {item!r}", 1, 1, "--param")
        name = param_name(name)
        if name not in known:
            raise ParseError(f"{fid} has no parameter {name!r} (expected {', '.join(known)})",
                             1, 1, "--param")
        try:
            out[name] = field.parse(value)
        except (ValueError, FieldMismatch, ZeroDivisionError) as exc:
            raise ParseError(f"malformed scalar for {name}: {exc}", 1, len(name) + 2,
                             "--param") from None
    return out


def _verify_into(t: br.LambdaTensor, report: RunReport, label: str) -> bool:
    st = br.verify_structure(t)
    rep = braid_report(t)
    ok = st.passed and rep.residual_is_zero
    detail = "" if ok else f"structure failures: {st.failures()}; residual zero: {rep.residual_is_zero}"
    report.add(label, ok, rep.witness, detail)
    return ok


def cmd_family(args, report: RunReport) -> int:
    fid = args.family_id
    field = Field.from_string(args.field)
    if fid not in FAMILY_IDS:
        raise FamilyConstraintError(f"unknown family {fid!r}; known: {', '.join(FAMILY_IDS)}")
    if args.random:
        import random
        rng = random.Random(args.seed)
        insts = [random_instance(fid, field, rng=rng) for _ in range(args.random)]
    else:
        insts = [FamilyInstance(fid, parse_params(args.param or [], fid, field), field)]
    out = Path(args.out) if args.out else None
    written = []
    for k, inst in enumerate(insts, 1):
        t = realize(inst)
        params = ", ".join(f"{n}={field.format(v)}" for n, v in inst.params.items())
        _verify_into(t, report, f"{fid}({params})")
        if out is not None:
            target = out if len(insts) == 1 else out.with_name(f"{out.stem}_{k:03d}{out.suffix}")
            target.write_text(f"# {fid} {params}\n" + format_lambda(t))
            written.append(str(target))
        if args.figure and k == 1:
            from .plotting import plot_sparsity
            report.summary["figure"] = str(plot_sparsity(t, args.figure, title=fid))
    report.summary["instances"] = len(insts)
    report.summary["passed"] = sum(v["passed"] for v in report.verdicts)
    if written:
        report.summary["written"] = written
    return EXIT_OK if report.passed else EXIT_FAILED


# search and sweeps

def cmd_search(args, report: RunReport) -> int:
    poset = parse_poset(_read(args.poset, report), source=args.poset)
    field = Field.from_string(args.field)
    if not field.is_finite:
        raise ParseError("search needs a finite field GF(p)", 1, 1, "--field")
    spec = SearchSpec(poset, field, pruning=not args.no_pruning, limit=args.limit)
    census = exhaustive_search(spec)
    report.summary["candidates"] = census.space_size
    report.summary["solutions"] = len(census.entries)
    report.summary["rejections"] = dict(sorted(census.rejections.items()))
    if args.out:
        Path(args.out).write_text(format_census(census))
        report.summary["census"] = args.out
    unmatched = census.unmatched()
    report.add("every solution matches a family", not unmatched,
               [sorted(e.tensor.entries.items()) for e in unmatched[:1]] or None,
               f"{len(unmatched)} unmatched")
    ids = [f for f in FAMILY_IDS if f.startswith("T56")] if len(poset.elements) == 2 else (
        [f for f in FAMILY_IDS if f.startswith("TAB1")] if len(poset.elements) == 3 else [])
    if ids and poset.covers and not args.skip_coverage:
        cov = family_coverage(census, ids)
        report.summary["coverage"] = {f: f"{h}/{n}" for f, (h, n) in cov.items()}
        report.add("family coverage", all(h == n for h, n in cov.values()))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sweep(args, report: RunReport) -> int:
    field = Field.from_string(args.field)
    for fid in args.family_ids or FAMILY_IDS:
        rep = random_family_sweep(fid, args.draws, field, seed=args.seed)
        witness = rep.failures[0] if rep.failures else None
        note = f"{rep.passed}/{rep.drawn}" + (f"; {rep.note}" if rep.note else "")
        report.add(fid, rep.all_passed, witness, note)
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--figure", metavar="PNG", help="save the sparsity pattern of M")

    ap = argparse.ArgumentParser(prog="incidence-braid", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify a coefficient tensor")
    c.add_argument("poset")
    c.add_argument("tensor")
    c.add_argument("--check", action="append", choices=CHECK_NAMES)
    c.add_argument("--transpose-ingest", action="store_true",
                   help="matrix blocks list rows as inputs")
    c.set_defaults(run=cmd_check)

    f = sub.add_parser("family", parents=[common], help="realize and verify a family member")
    f.add_argument("family_id")
    f.add_argument("--param", action="append", metavar="NAME=VALUE")
    f.add_argument("--random", type=int, metavar="N")
    f.add_argument("--field", default="Q")
    f.add_argument("--out", metavar="PATH")
    f.set_defaults(run=cmd_family)

    s = sub.add_parser("search", parents=[common], help="exhaustive census over GF(p)")
    s.add_argument("poset")
    s.add_argument("--field", required=True)
    s.add_argument("--no-pruning", action="store_true")
    s.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    s.add_argument("--out", metavar="CENSUS")
    s.add_argument("--skip-coverage", action="store_true")
    s.set_defaults(run=cmd_search)

    w = sub.add_parser("sweep", parents=[common], help="random draws from families")
    w.add_argument("family_ids", nargs="*")
    w.add_argument("--draws", type=int, default=20)
    w.add_argument("--field", default="Q")
    w.set_defaults(run=cmd_sweep)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = RunReport(["incidence-braid", *argv], seed=args.seed)
    start = time.perf_counter()
    try:
        code = args.run(args, report)
    except CapacityExceeded as exc:
        report.error = str(exc)
        report.summary["space_size"] = exc.size
        report.summary["limit"] = exc.limit
        code = EXIT_CAPACITY
    except (ParseError, PosetError, FieldMismatch, FamilyConstraintError, OSError,
            ValueError) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        code = EXIT_INPUT
    report.elapsed = time.perf_counter() - start
    print(report.to_json() if args.json else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
