"""Command-line front-end and HTTP API for the configuration-space cohomology engine."""

import argparse
import sys
from typing import List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ValidationError

from assembly_service import (
    comparison_reports,
    projective_cohomology,
    punctured_projective_cohomology,
    spectral_report,
    sphere_orbit_cohomology,
)
from config import (
    API_HOST,
    API_PORT,
    ASSOCIATIVITY_TRIALS,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILURE,
    SPACE_LABELS,
)
from errors import ConfRingError, ParameterError
from exact_linalg import CoefficientMode
from graded_algebra import basis_of_degree, degrees, verify_associativity
from group_action import GroupElement, epsilon_apply, verify_action_properties
from invariant_service import SubgroupSpec, invariant_presentation_check, invariants_match_prediction
from models import (
    CliConfig,
    EvalResult,
    GradedGroupTable,
    GroupEntry,
    InvariantReport,
    PresentationCheckReport,
    SpectralReport,
    SuiteReport,
    TcReport,
)
from presentations import arnold_ring, evaluate_expression, orbit_ring, verify_arnold_embedding, verify_relation_tables
from tc_service import WITNESS_SEARCH, ZCL_MODES, cat_tc_bounds
from utils import log, render_table

SPACES = tuple(SPACE_LABELS)
SUITES = ("relations", "action", "invariants", "comparisons", "all")
EVAL_OPS = ("normalize", "multiply", "act")


def ring_table(space: str, config: CliConfig) -> GradedGroupTable:
    """Betti numbers of the orbit or Arnold ring, counted from its basis."""
    mode = CoefficientMode.from_label(config.coeff)
    points = config.m if space == "orbit" else config.k
    p = orbit_ring(config.n, points, mode) if space == "orbit" else arnold_ring(config.n, points, mode)
    groups = [GroupEntry(degree=d, rank=len(basis_of_degree(p, d))) for d in degrees(p)]
    return GradedGroupTable(
        space=SPACE_LABELS[space].format(k=points),
        n=config.n,
        k=points,
        coeff=mode.label,
        groups=[g for g in groups if g.rank],
    )


def run_betti(config: CliConfig, space: str) -> GradedGroupTable:
    """
    Additive cohomology of one of the supported spaces.

    Args:
        config: Validated configuration
        space: One of SPACES

    Returns:
        Group table
    """
    if space not in SPACES:
        raise ParameterError(f"unknown space '{space}', expected one of {', '.join(SPACES)}")
    if space in ("orbit", "arnold"):
        return ring_table(space, config)
    mode = CoefficientMode.from_label(config.coeff)
    if space == "sphere-orbit":
        return sphere_orbit_cohomology(config.n, config.k, mode)
    if space == "rpn":
        return projective_cohomology(config.n, config.k, mode)[0]
    return punctured_projective_cohomology(config.n, config.k, mode)[0]


def _relation_tables(n: int) -> List[str]:
    return ["A-table"] + (["C-table"] if n % 2 else ["D-table", "I-table", "ID0-table"])


def _kinds(n: int) -> List[str]:
    return ["odd-full", "odd-punctured"] if n % 2 else ["even-full", "even-punctured"]


def run_verify(config: CliConfig, suite: str) -> SuiteReport:
    """
    Run a verification suite.

    Args:
        config: Validated configuration
        suite: One of SUITES

    Returns:
        Combined report; ``failures`` names every failed check
    """
    if suite not in SUITES:
        raise ParameterError(f"unknown suite '{suite}', expected one of {', '.join(SUITES)}")
    mode = CoefficientMode.from_label(config.coeff)
    p = orbit_ring(config.n, config.m, mode)
    report = SuiteReport(suite=suite, n=config.n, m=config.m, passed=True)
    if suite in ("relations", "all"):
        for table in _relation_tables(config.n):
            result = verify_relation_tables(p, table)
            report.relations.append(result)
            report.failures += [f"{table}: {r.identity}" for r in result.identities if not r.passed]
        arnold = verify_relation_tables(arnold_ring(config.n, config.m + 1, mode), "arnold-table")
        report.relations.append(arnold)
        report.failures += [f"arnold-table: {r.identity}" for r in arnold.identities if not r.passed]
        report.associativity = verify_associativity(p, ASSOCIATIVITY_TRIALS, config.seed)
        if not report.associativity.passed:
            report.failures.append("associativity")
        report.embedding = verify_arnold_embedding(config.n, config.m, mode)
        if not report.embedding.passed:
            report.failures.append("arnold embedding")
    if suite in ("action", "all"):
        report.action = verify_action_properties(p, seed=config.seed)
        report.failures += [f"action: {c.name}" for c in report.action.checks if not c.passed]
    if suite in ("invariants", "all"):
        for kind in _kinds(config.n):
            invariants = invariants_match_prediction(p, SubgroupSpec.for_kind(kind, config.m), kind)
            report.invariants.append(invariants)
            report.failures += [f"{kind} degree {d.degree}" for d in invariants.degrees if not d.match]
            presentation = invariant_presentation_check(kind, config.n, config.m, mode)
            report.presentations.append(presentation)
            if not presentation.passed:
                report.failures.append(f"{kind} presentation")
    if suite == "comparisons":
        report.comparison = comparison_reports(config.n, config.k)
        if report.comparison.sphere.equal is False:
            report.failures.append("sphere comparison")
        if not report.comparison.field_ranks.equal:
            report.failures.append("field ranks")
    report.passed = not report.failures
    return report


def run_eval(config: CliConfig, expression: str, space: str = "orbit", op: str = "normalize",
             act: Optional[List[int]] = None, by: Optional[str] = None) -> EvalResult:
    """
    Evaluate an expression and optionally multiply it or act on it.

    Args:
        config: Validated configuration
        expression: Expression text over generators and derived classes
        space: ``orbit`` or ``arnold``
        op: One of EVAL_OPS; ``act`` is implied when group generators are given
        act: Indices l of the group generators eps_l to apply
        by: Right factor for ``multiply``

    Returns:
        The normal form of the result
    """
    mode = CoefficientMode.from_label(config.coeff)
    if space == "orbit":
        p = orbit_ring(config.n, config.m, mode)
    elif space == "arnold":
        p = arnold_ring(config.n, config.k, mode)
    else:
        raise ParameterError(f"eval works in the orbit or arnold ring, not '{space}'")
    if act:
        op = "act"
    if op not in EVAL_OPS:
        raise ParameterError(f"unknown operation '{op}', expected one of {', '.join(EVAL_OPS)}")
    value = evaluate_expression(p, expression)
    if op == "multiply":
        if by is None:
            raise ParameterError("multiply needs a right factor")
        value = value * evaluate_expression(p, by)
    elif op == "act":
        if not act:
            raise ParameterError("act needs at least one group generator")
        g = GroupElement()
        for l in act:
            g = g * GroupElement.generator(l)
        value = epsilon_apply(p, g, value)
    return EvalResult(expression=expression, op=op, result=str(value))


def run_invariants(config: CliConfig, kind: Optional[str] = None, presentation: bool = False):
    """
    Compare invariants with their predicted basis, or check the invariant ring presentation.

    Args:
        config: Validated configuration
        kind: Invariant kind; defaults to the full group for the parity of n
        presentation: Run the presentation check instead

    Returns:
        InvariantReport or PresentationCheckReport
    """
    mode = CoefficientMode.from_label(config.coeff)
    kind = kind or _kinds(config.n)[0]
    if presentation:
        return invariant_presentation_check(kind, config.n, config.m, mode)
    p = orbit_ring(config.n, config.m, mode)
    return invariants_match_prediction(p, SubgroupSpec.for_kind(kind, config.m), kind)


def run_tc(config: CliConfig, mode: str = WITNESS_SEARCH) -> TcReport:
    return cat_tc_bounds(config.n, config.k, config.s, mode, config.budget)


def run_spectral(config: CliConfig) -> SpectralReport:
    return spectral_report(config.n, config.k, CoefficientMode.from_label(config.coeff))


def exit_code(report: BaseModel) -> int:
    if isinstance(report, TcReport):
        return EXIT_BUDGET if report.partial else EXIT_OK
    passed = getattr(report, "passed", True)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILURE


def _table_rows(report: BaseModel):
    if isinstance(report, GradedGroupTable):
        rows = [{"degree": g.degree, "rank": g.rank, "torsion": " + ".join(g.torsion)} for g in report.groups]
        return f"{report.space} over {report.coeff}, n={report.n}", rows, ["degree", "rank", "torsion"]
    if isinstance(report, InvariantReport):
        rows = [d.model_dump(exclude={"witnesses"}) for d in report.degrees]
        title = f"{report.kind} invariants, n={report.n}, m={report.m}, eps{report.subgroup}"
        return title, rows, ["degree", "computed_dim", "predicted_dim", "match"]
    if isinstance(report, PresentationCheckReport):
        rows = [{"check": r.label, "identity": r.identity, "passed": r.passed} for r in report.relations]
        rows += [{"check": c.name, "identity": c.detail, "passed": c.passed} for c in report.checks]
        return f"{report.kind} presentation, dims {report.graded_dims}", rows, ["check", "identity", "passed"]
    if isinstance(report, TcReport):
        row = report.model_dump(include={"s", "lower", "upper", "exact", "mode", "partial"})
        return f"{report.space}, n={report.n}", [row], ["s", "lower", "upper", "exact", "mode", "partial"]
    if isinstance(report, SpectralReport):
        rows = [r.model_dump() for r in report.rows]
        columns = ["q", "degree", "source_dim", "rank", "kernel_dim", "predicted_kernel_dim"]
        return f"d_n for n={report.n}, k={report.k}", rows, columns
    rows = []
    for result in report.relations:
        rows += [{"section": result.table, "check": r.identity, "passed": r.passed} for r in result.identities]
    if report.associativity:
        rows.append({"section": "algebra", "check": "associativity", "passed": report.associativity.passed})
    if report.embedding:
        rows.append({"section": "algebra", "check": "arnold embedding", "passed": report.embedding.passed})
    if report.action:
        rows += [{"section": "action", "check": c.name, "passed": c.passed} for c in report.action.checks]
    for inv in report.invariants:
        rows += [{"section": inv.kind, "check": f"degree {d.degree}", "passed": d.match} for d in inv.degrees]
    for pres in report.presentations:
        rows.append({"section": pres.kind, "check": "presentation", "passed": pres.passed})
    if report.comparison:
        rows.append({"section": "comparison", "check": "field ranks", "passed": report.comparison.field_ranks.equal})
        rows.append({"section": "comparison", "check": f"H^{report.comparison.witness.degree} witness differs",
                     "passed": report.comparison.witness.differs})
    return f"suite {report.suite}, n={report.n}, m={report.m}", rows, ["section", "check", "passed"]


def render(report: BaseModel, fmt: str) -> str:
    """
    Render a report as JSON or as a plain-text table.

    Args:
        report: Any report model
        fmt: ``json`` or ``table``

    Returns:
        Text to print
    """
    if fmt == "json":
        return report.model_dump_json(indent=2)
    if isinstance(report, EvalResult):
        return report.result
    title, rows, columns = _table_rows(report)
    text = f"{title}\n{render_table(rows, columns)}"
    if isinstance(report, SpectralReport):
        text += "\n\n" + render(report.table, fmt)
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confring", description="Cohomology of configuration spaces of spheres and projective spaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--coeff")
    common.add_argument("--format", dest="fmt")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    betti = sub.add_parser("betti", parents=[common], help="Betti numbers and torsion of a space")
    betti.add_argument("--space", choices=SPACES, default="orbit")

    verify = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("--suite", choices=SUITES, default="all")

    evaluate = sub.add_parser("eval", parents=[common], help="Normal form of an expression")
    evaluate.add_argument("expression")
    evaluate.add_argument("--space", choices=("orbit", "arnold"), default="orbit")
    evaluate.add_argument("--op", choices=EVAL_OPS, default="normalize")
    evaluate.add_argument("--act", type=int, nargs="+")
    evaluate.add_argument("--by")

    invariants = sub.add_parser("invariants", parents=[common], help="Invariants against their predicted basis")
    invariants.add_argument("--kind")
    invariants.add_argument("--presentation", action="store_true")

    tc = sub.add_parser("tc", parents=[common], help="Bounds on cat and TC_s")
    tc.add_argument("--mode", choices=ZCL_MODES, default=WITNESS_SEARCH)

    sub.add_parser("spectral", parents=[common], help="The differential d_n and permanent cycles")
    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    values = {
        "n": args.n, "m": args.m, "k": args.k, "s": args.s, "coeff": args.coeff,
        "format": args.fmt, "seed": args.seed, "budget": args.budget,
    }
    return CliConfig(command=args.command, **{key: v for key, v in values.items() if v is not None})


def dispatch(config: CliConfig, args: argparse.Namespace) -> BaseModel:
    if config.command == "betti":
        return run_betti(config, args.space)
    if config.command == "verify":
        return run_verify(config, args.suite)
    if config.command == "eval":
        return run_eval(config, args.expression, args.space, args.op, args.act, args.by)
    if config.command == "invariants":
        return run_invariants(config, args.kind, args.presentation)
    if config.command == "tc":
        return run_tc(config, args.mode)
    return run_spectral(config)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand and print its report.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Exit code: 0 success, 1 failed verification, 2 usage error, 3 budget exhausted
    """
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        log(f"Running {config.command} with n={config.n}, m={config.m}, k={config.k}, coeff={config.coeff}")
        report = dispatch(config, args)
    except ValidationError as e:
        print(f"Error: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except ConfRingError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    print(render(report, config.format))
    return exit_code(report)


# Initialize FastAPI app
app = FastAPI(
    title="Configuration Space Cohomology API",
    description="Exact cohomology of orbit configuration spaces of spheres and projective spaces",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _api_config(command: str, **values) -> CliConfig:
    try:
        return CliConfig(command=command, **{key: v for key, v in values.items() if v is not None})
    except ValidationError as e:
        raise HTTPException(status_code=400, detail=e.errors()[0]["msg"])


def _api_call(func, *args):
    try:
        return func(*args)
    except ConfRingError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        print(f"Error in API call: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Error computing report: {str(e)}")


@app.get("/")
def root():
    return {
        "message": "Configuration space cohomology engine",
        "spaces": list(SPACES),
        "suites": list(SUITES),
        "endpoints": ["/api/betti", "/api/eval", "/api/invariants", "/api/tc", "/api/spectral", "/api/verify"],
    }


@app.get("/api/betti", response_model=GradedGroupTable)
def get_betti(space: str = "orbit", n: Optional[int] = None, m: Optional[int] = None,
              k: Optional[int] = None, coeff: Optional[str] = None):
    config = _api_config("betti", n=n, m=m, k=k, coeff=coeff)
    return _api_call(run_betti, config, space)


@app.get("/api/eval", response_model=EvalResult)
def get_eval(expression: str, space: str = "orbit", op: str = "normalize", act: Optional[List[int]] = Query(None),
             by: Optional[str] = None, n: Optional[int] = None, m: Optional[int] = None,
             k: Optional[int] = None, coeff: Optional[str] = None):
    config = _api_config("eval", n=n, m=m, k=k, coeff=coeff)
    return _api_call(run_eval, config, expression, space, op, act, by)


@app.get("/api/invariants")
def get_invariants(kind: Optional[str] = None, presentation: bool = False, n: Optional[int] = None,
                   m: Optional[int] = None, coeff: Optional[str] = None):
    config = _api_config("invariants", n=n, m=m, coeff=coeff)
    return _api_call(run_invariants, config, kind, presentation)


@app.get("/api/tc", response_model=TcReport)
def get_tc(n: Optional[int] = None, k: Optional[int] = None, s: Optional[int] = None,
           mode: str = WITNESS_SEARCH, budget: Optional[int] = None):
    config = _api_config("tc", n=n, k=k, s=s, budget=budget)
    return _api_call(run_tc, config, mode)


@app.get("/api/spectral", response_model=SpectralReport)
def get_spectral(n: Optional[int] = None, k: Optional[int] = None, coeff: Optional[str] = None):
    config = _api_config("spectral", n=n, k=k, coeff=coeff)
    return _api_call(run_spectral, config)


@app.get("/api/verify", response_model=SuiteReport)
def get_verify(suite: str = "all", n: Optional[int] = None, m: Optional[int] = None, k: Optional[int] = None,
               coeff: Optional[str] = None, seed: Optional[int] = None):
    config = _api_config("verify", n=n, m=m, k=k, coeff=coeff, seed=seed)
    return _api_call(run_verify, config, suite)


if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1] == "--api":
        port = int(sys.argv[2]) if len(sys.argv) > 2 else API_PORT
        print(f"Starting API server on port {port}")
        print("API documentation available at:")
        print(f"  - http://localhost:{port}/docs")
        print(f"  - http://localhost:{port}/redoc")
        uvicorn.run("main:app", host=API_HOST, port=port)
    else:
        sys.exit(main())
