"""Command-line front end: ``lieosc <command> --family F --rank n ...``.

Exit status is 0 when every check of the run passed exactly, 1 when some
check failed and 2 for an invalid invocation.  Reports go to
``--output-path``, else to ``$LIEOSC_OUTPUT_DIR/<command>-<family><rank>.<ext>``
when that variable is set, else to standard output.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from . import __version__
from .definingrep import build_layout, build_rep, check_cartan_weyl, check_trace_transpose
from .errors import LieOscError, PoleError
from .export import (
    REPORT_HEADER,
    csv_text,
    dumps_json,
    matrix_rows,
    matrix_to_json,
    report_rows,
    tensor_rows,
    tensor_to_json,
    write_text,
)
from .fock import (
    check_commutators,
    metaplectic_rep,
    spinor_rep_b,
    spinor_rep_d,
    su_oscillator_rep,
)
from .loper import (
    build_L,
    casimir_checks,
    closed_form_L,
    eigen_structure,
    operator_product_laws,
    quadratic_residual,
    quadratic_spec,
    spectrum_blocks,
    vmv_operator,
)
from .matrix import SurdMatrix
from .report import CheckReport
from .rootsys import Family
from .rtt import (
    check_monodromy_rtt,
    check_rtt,
    check_ybe,
    invariant_form,
    kernel_algebra,
    r_matrix,
    sample_parameters,
)
from .tensors import (
    check_v_tensor,
    complete_basis,
    structure_tensors,
    su_tensors,
    verify_completeness,
    verify_derived_reps,
    verify_identities,
    verify_product_laws,
    v_tensor,
)

COMMANDS = (
    "gen-rep",
    "gen-tensors",
    "osc-rep",
    "check-quadratic",
    "check-casimir",
    "check-ybe",
    "check-rtt",
    "monodromy",
    "verify-all",
    "spectrum",
)
# commands that never build a Fock space
_NO_QUANTUM_SPACE = {"gen-rep", "gen-tensors", "check-ybe"}
# selectable gen-tensors tables, keyed by "is family A"
TENSOR_TABLES = {False: ("c", "d", "h", "dyyy", "v"), True: ("f", "d")}
OUTPUT_ENV = "LIEOSC_OUTPUT_DIR"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Family
    rank: int
    cutoff: int | None = None
    u: Fraction | None = None
    v: Fraction | None = None
    eta: Fraction | None = None
    samples: int = 0
    seed: int | None = None
    sites: int = 2
    tensor: str | None = None
    format: str = "json"
    output_path: str | None = None

    @property
    def bosonic(self) -> bool:
        return self.family in (Family.A, Family.C) and self.command not in _NO_QUANTUM_SPACE

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.rank < self.family.min_rank:
            raise UsageError(f"{self.family.value}{self.rank}: rank must be >= {self.family.min_rank}")
        if self.bosonic and self.cutoff is None:
            raise UsageError(f"{self.command} for family {self.family.value} needs --cutoff")
        if not self.bosonic and self.cutoff is not None:
            raise UsageError(f"--cutoff does not apply to {self.command} for family {self.family.value}")
        if self.samples < 0:
            raise UsageError("--samples must be >= 0")
        if self.samples > 0 and self.seed is None:
            raise UsageError("--samples needs --seed")
        if self.samples == 0 and self.seed is not None:
            raise UsageError("--seed only applies together with --samples")
        if self.command in ("check-ybe", "check-rtt", "monodromy") and self.samples == 0:
            missing = [n for n in ("u", "v", "eta") if getattr(self, n) is None]
            if missing:
                raise UsageError(f"{self.command} needs --samples/--seed or all of --u --v --eta (missing {missing})")
        if self.tensor is not None:
            allowed = TENSOR_TABLES[self.family is Family.A]
            if self.command != "gen-tensors" or self.tensor not in allowed:
                raise UsageError(f"--tensor must be one of {', '.join(allowed)} with gen-tensors")
        if self.command == "monodromy" and not 1 <= self.sites <= 3:
            raise UsageError("--sites must be between 1 and 3")

    def to_json(self) -> dict:
        out = asdict(self)
        out["family"] = self.family.value
        for k in ("u", "v", "eta"):
            out[k] = None if out[k] is None else str(out[k])
        out.pop("output_path")
        return out


@dataclass
class Outcome:
    payload: dict
    csv_header: tuple
    csv_rows: list
    reports: list[CheckReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


class _Context:
    """Lazily built objects shared by the pipelines of one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    @cached_property
    def rep(self):
        return build_rep(self.cfg.family, self.cfg.rank)

    @cached_property
    def comp(self):
        return complete_basis(self.rep)

    @cached_property
    def st(self):
        return structure_tensors(self.rep, self.comp)

    def make_op(self):
        fam, n = self.cfg.family, self.cfg.rank
        if fam is Family.C:
            return metaplectic_rep(n, self.cfg.cutoff, self.rep)
        if fam is Family.D:
            return spinor_rep_d(n, self.rep)
        if fam is Family.B:
            return spinor_rep_b(n, self.rep)
        return su_oscillator_rep(n + 1, self.cfg.cutoff, self.rep)

    @cached_property
    def op(self):
        return self.make_op()

    @cached_property
    def L(self):
        return build_L(self.rep, self.op)

    @property
    def structure(self):
        return su_tensors(self.rep.dimV)[0] if self.cfg.family is Family.A else self.st.c

    def triples(self, ybe: bool) -> list[tuple[Fraction, Fraction, Fraction]]:
        cfg = self.cfg
        if cfg.samples > 0:
            return sample_parameters(self.rep, cfg.samples, cfg.seed, ybe=ybe)
        return [(cfg.u, cfg.v, cfg.eta)]


def _checks_outcome(payload: dict, reports: list[CheckReport]) -> Outcome:
    payload["reports"] = [r.to_json() for r in reports]
    payload["pass"] = all(r.passed for r in reports)
    return Outcome(payload, REPORT_HEADER, report_rows(reports), reports)


# ---------------------------------------------------------------------------
# pipelines


def _gen_rep(ctx: _Context, payload: dict) -> Outcome:
    rep = ctx.rep
    names = rep.generator_names()
    payload.update(
        {
            "dimV": rep.dimV,
            "dimension": rep.dim,
            "metric": None if rep.metric is None else matrix_to_json(rep.metric),
            "generators": [{"name": nm, "matrix": matrix_to_json(x)} for nm, x in zip(names, rep.basisX)],
            "roots": rep.roots.to_json()["positive"],
        }
    )
    if rep.family is not Family.A:
        payload["layout"] = [cell.describe() for cell in build_layout(rep.family, rep.rank)]
    rows = [r for nm, x in zip(names, rep.basisX) for r in matrix_rows(x, (nm,))]
    reports = [check_trace_transpose(rep)]
    payload["reports"] = [r.to_json(detail=False) for r in reports]
    payload["pass"] = all(r.passed for r in reports)
    return Outcome(payload, ("generator", "row", "col", "value"), rows, reports)


def _gen_tensors(ctx: _Context, payload: dict) -> Outcome:
    reports = []
    wanted = ctx.cfg.tensor
    if ctx.cfg.family is Family.A:
        f, d, _ = su_tensors(ctx.rep.dimV)
        tables = {"f": f, "d": d}
    else:
        st = ctx.st
        tables = {"c": st.c, "d": st.d_xy, "h": st.h, "dyyy": st.d_yyy}
        payload["completion_count"] = ctx.comp.count
        if wanted == "v":
            tables["v"] = v_tensor(st, ctx.rep)
            reports.append(check_v_tensor(st, ctx.rep))
    if wanted is not None:
        tables = {wanted: tables[wanted]}
    payload["tables"] = {k: tensor_to_json(t) for k, t in tables.items()}
    payload["reports"] = [r.to_json(detail=False) for r in reports]
    payload["pass"] = all(r.passed for r in reports)
    if wanted is not None:
        t = tables[wanted]
        header = (*"ijkl"[: len(t.dims)], "value")
        return Outcome(payload, header, tensor_rows(t), reports)
    rows = [r for k, t in tables.items() for r in tensor_rows(t, (k,))]
    return Outcome(payload, ("table", "i", "j", "k", "value"), rows, reports)


def _osc_rep(ctx: _Context, payload: dict) -> Outcome:
    op = ctx.op
    names = ctx.rep.generator_names()
    payload.update(
        {
            "representation": op.name,
            "dimH": op.dim,
            "interior_depth": op.interior_depth,
            "basis": [list(m) for m in op.space.basis],
            "generators": [{"name": nm, "matrix": matrix_to_json(x)} for nm, x in zip(names, op.X)],
        }
    )
    reports = [check_commutators(op, ctx.structure)]
    payload["reports"] = [r.to_json() for r in reports]
    payload["pass"] = all(r.passed for r in reports)
    rows = [r for nm, x in zip(names, op.X) for r in matrix_rows(x, (nm,))]
    return Outcome(payload, ("generator", "row", "col", "value"), rows, reports)


def _closed_form_report(ctx: _Context) -> CheckReport:
    L, op = ctx.L, ctx.op
    report = CheckReport("closed-form-L", "5.2" if ctx.cfg.family is Family.C else "5.11")
    diff = L.matrix - closed_form_L(op).matrix
    cols = L.interior(2)
    if cols is not None:
        diff = diff.select(cols=cols)
    report.add(f"sum x_i (x) X_i = closed form ({op.name})", diff)
    report.add("Tr_V L = 0", L.partial_trace_v())
    if ctx.cfg.family.orthogonal:
        N = ctx.rep.dimV
        report.add(f"v^T M v = {Fraction(N, 2)}", vmv_operator(op) - SurdMatrix.identity(op.dim) * Fraction(N, 2))
    report.meta["interior_columns"] = L.matrix.shape[0] if cols is None else len(cols)
    return report


def _quadratic_reports(ctx: _Context) -> list[CheckReport]:
    cfg = ctx.cfg
    if cfg.family is Family.A:
        return [quadratic_residual(ctx.L, quadratic_spec(cfg.family, cfg.rank, lam))[1] for lam in range(cfg.cutoff + 1)]
    return [_closed_form_report(ctx), quadratic_residual(ctx.L, quadratic_spec(cfg.family, cfg.rank))[1]]


def _check_quadratic(ctx: _Context, payload: dict) -> Outcome:
    return _checks_outcome(payload, _quadratic_reports(ctx))


def _casimir_reports(ctx: _Context, stated_quartic: bool = True) -> list[CheckReport]:
    fam = ctx.cfg.family
    st = None if fam is Family.A else ctx.st
    reports = [casimir_checks(ctx.op, st, ctx.L, stated_quartic)]
    if fam in (Family.A, Family.C):
        reports.append(operator_product_laws(ctx.op, st))
    return reports


def _check_casimir(ctx: _Context, payload: dict) -> Outcome:
    return _checks_outcome(payload, _casimir_reports(ctx))


def _ybe_reports(ctx: _Context) -> list[CheckReport]:
    reports = []
    if ctx.cfg.family is not Family.A:
        reports.append(kernel_algebra(ctx.rep))
    for u, v, eta in ctx.triples(ybe=True):
        reports.append(check_ybe(ctx.rep, u, v, eta))
    return reports


def _check_ybe(ctx: _Context, payload: dict) -> Outcome:
    return _checks_outcome(payload, _ybe_reports(ctx))


def _rtt_reports(ctx: _Context) -> list[CheckReport]:
    return [check_rtt(ctx.rep, ctx.L, u, v, eta) for u, v, eta in ctx.triples(ybe=False)]


def _check_rtt(ctx: _Context, payload: dict) -> Outcome:
    return _checks_outcome(payload, _rtt_reports(ctx))


def _monodromy(ctx: _Context, payload: dict) -> Outcome:
    sites = [ctx.L] + [build_L(ctx.rep, ctx.make_op()) for _ in range(ctx.cfg.sites - 1)]
    reports = [check_monodromy_rtt(ctx.rep, sites, u, v, eta) for u, v, eta in ctx.triples(ybe=False)]
    return _checks_outcome(payload, reports)


def _spectrum_data(ctx: _Context) -> tuple[list[dict], CheckReport]:
    cfg = ctx.cfg
    report = CheckReport("spectrum", "X1")
    blocks = []
    for name, cols in spectrum_blocks(ctx.L).items():
        level = int(name.split()[-1]) if cfg.family is Family.A else None
        spec = quadratic_spec(cfg.family, cfg.rank, level)
        es = eigen_structure(ctx.L, spec, cols, name)
        entry = es.to_json()
        entry["dim"] = len(cols)
        blocks.append(entry)
        two = es.m_plus > 0 and es.m_minus > 0
        need_two = level is None or level > 0
        report.record(
            f"{name}: eigenvalues {es.lam_plus}, {es.lam_minus} with multiplicities {es.m_plus}, {es.m_minus}",
            es.numeric_check and (two or not need_two),
        )
    return blocks, report


def _spectrum(ctx: _Context, payload: dict) -> Outcome:
    blocks, report = _spectrum_data(ctx)
    payload["blocks"] = blocks
    payload["reports"] = [report.to_json()]
    payload["pass"] = report.passed
    rows = [[b["block"], b["dim"], *b["eigenvalues"], *b["multiplicities"]] for b in blocks]
    header = ("block", "dim", "lambda_plus", "lambda_minus", "m_plus", "m_minus")
    return Outcome(payload, header, rows, [report])


def _invariant_form_report(ctx: _Context, triples) -> CheckReport:
    report = CheckReport("invariant-form", "5.46")
    for u, _, eta in triples:
        R = r_matrix(ctx.rep, u, eta)
        try:
            a, b, c = invariant_form(R, ctx.rep, ctx.comp)
        except LieOscError as exc:
            report.record(f"R({u}) decomposition: {exc}", False)
        else:
            report.record(f"R({u}) = {a} + {b} xx + {c} yy (eta={eta})", True)
    return report


def _verify_all(ctx: _Context, payload: dict) -> Outcome:
    cfg = ctx.cfg
    fam = cfg.family
    if cfg.samples == 0:
        ctx.cfg = cfg = RunConfig(**{**asdict(cfg), "samples": 3, "seed": 0})
        payload["config"] = cfg.to_json()
    reports: list[CheckReport] = [check_trace_transpose(ctx.rep)]
    if fam is not Family.A:
        reports += [
            check_cartan_weyl(ctx.rep),
            verify_completeness(ctx.rep, ctx.comp),
            verify_identities(ctx.st, ctx.rep, ctx.comp),
            verify_product_laws(ctx.st, ctx.rep, ctx.comp),
            verify_derived_reps(ctx.st),
            check_v_tensor(ctx.st, ctx.rep),
        ]
    reports.append(check_commutators(ctx.op, ctx.structure))
    reports += _quadratic_reports(ctx)
    # the published quartic closed form is off by a factor 2; check-casimir
    # reports it, the library self-check uses the derived value only
    reports += _casimir_reports(ctx, stated_quartic=False)
    reports.append(_spectrum_data(ctx)[1])
    ybe = _ybe_reports(ctx)
    reports += ybe
    if fam is not Family.A:
        reports.append(_invariant_form_report(ctx, ctx.triples(ybe=True)))
    reports += _rtt_reports(ctx)
    if not ctx.L.bosonic:
        reports.append(check_monodromy_rtt(ctx.rep, [ctx.L, ctx.L], *ctx.triples(ybe=False)[0]))
    payload["summary"] = [{"identity": r.tag, "name": r.name, "pass": r.passed} for r in reports]
    return _checks_outcome(payload, reports)


PIPELINES = {
    "gen-rep": _gen_rep,
    "gen-tensors": _gen_tensors,
    "osc-rep": _osc_rep,
    "check-quadratic": _check_quadratic,
    "check-casimir": _check_casimir,
    "check-ybe": _check_ybe,
    "check-rtt": _check_rtt,
    "monodromy": _monodromy,
    "verify-all": _verify_all,
    "spectrum": _spectrum,
}


def run(cfg: RunConfig) -> Outcome:
    cfg.validate()
    payload = {"command": cfg.command, "config": cfg.to_json(), "version": __version__}
    return PIPELINES[cfg.command](_Context(cfg), payload)


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "csv":
        return csv_text(outcome.csv_header, outcome.csv_rows)
    return dumps_json(outcome.payload)


def _destination(cfg: RunConfig) -> Path | None:
    if cfg.output_path:
        return Path(cfg.output_path)
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env) / f"{cfg.command}-{cfg.family.value.lower()}{cfg.rank}.{cfg.format}"
    return None


# ---------------------------------------------------------------------------
# argument parsing


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _family(text: str) -> Family:
    try:
        return Family(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"family must be one of a, b, c, d (got {text!r})") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieosc", description="Exact oscillator representations, L-operators and R-matrices.")
    parser.add_argument("--version", action="version", version=f"lieosc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=_family, required=True, help="a, b, c or d (a means su(rank+1))")
    common.add_argument("--rank", type=int, required=True)
    common.add_argument("--cutoff", type=int, help="total-occupation cutoff of a bosonic Fock space")
    common.add_argument("--u", type=_fraction)
    common.add_argument("--v", type=_fraction)
    common.add_argument("--eta", type=_fraction)
    common.add_argument("--samples", type=int, default=0, help="number of seeded random (u, v, eta) triples")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output-path", "-o", dest="output_path")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "monodromy":
            p.add_argument("--sites", type=int, default=2)
        if name == "gen-tensors":
            p.add_argument("--tensor", help="one table only: c, d, h, dyyy or v (f or d for family a)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        family=args.family,
        rank=args.rank,
        cutoff=args.cutoff,
        u=args.u,
        v=args.v,
        eta=args.eta,
        samples=args.samples,
        seed=args.seed,
        sites=getattr(args, "sites", 2),
        tensor=getattr(args, "tensor", None),
        format=args.format,
        output_path=args.output_path,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(args)
    try:
        outcome = run(cfg)
    except (UsageError, ValueError, PoleError) as exc:
        print(f"lieosc: error: {exc}", file=sys.stderr)
        return 2
    except LieOscError as exc:
        print(f"lieosc: check failed: {exc}", file=sys.stderr)
        return 1
    text = render(outcome, cfg.format)
    dest = _destination(cfg)
    if dest is None:
        sys.stdout.write(text)
    else:
        try:
            write_text(text, dest)
        except OSError as exc:
            print(f"lieosc: error: cannot write {dest}: {exc}", file=sys.stderr)
            return 2
    return 0 if outcome.passed else 1


if __name__ == "__main__":
    sys.exit(main())
