import argparse
import json
import logging

from dof_puzzle.alignment import verify
from dof_puzzle.models import format_fraction
from dof_puzzle.topology import parse_index_matrix, parse_spec
from dof_puzzle.utils import read_text, render_table

from .error import EXIT_FAILURE, EXIT_OK

logger = logging.getLogger(__name__)


def verify_command(args: argparse.Namespace) -> int:
    """Build the alignment matrices for (spec, G) and print the rank table."""
    spec = parse_spec(read_text(args.spec))
    G = parse_index_matrix(read_text(args.g))
    report = verify(spec, G, eta=args.eta, trials=args.trials, seed=args.seed, backend=args.backend)

    if args.json:
        print(json.dumps(report.to_document(args.timings), indent=2))
    else:
        print(f"overall: {report.overall}")
        print(f"eta={report.eta} Gamma={report.Gamma} T={report.T} p_max={report.p_max} "
              f"trials={report.trials} backend={report.backend} seed={report.seed}")
        rows = [
            (r.p, r.desired_cols, r.interference_cols, r.T, r.rank, format_fraction(r.dof_ratio), format_fraction(r.limit_ratio))
            for r in report.per_receiver
        ]
        print(render_table(["p", "desired_cols", "interference_cols", "T", "rank", "dof_ratio", "limit"], rows))
        print(f"sum dof_ratio: {format_fraction(report.sum_dof_ratio)}  limit: {format_fraction(report.sum_limit_ratio)}")
        print(f"containment_ok: {str(report.containment_ok).lower()}  "
              f"exponent_injective: {str(report.exponent_injective).lower()}")
        if report.property_one_violations:
            print(f"property 1 violated at: {list(report.property_one_violations)}")
        if report.structural_failures:
            print(f"structural failures at: {list(report.structural_failures)}")
        if report.failing_receiver is not None:
            print(f"rank deficient: Rx {report.failing_receiver} in trial {report.failing_trial} "
                  f"(seed {report.seed}, spawn_key {report.failing_spawn_key})")
        if args.timings:
            print(f"elapsed: {report.elapsed:.6f}")
    return EXIT_OK if report.overall == "pass" else EXIT_FAILURE
