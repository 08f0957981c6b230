"""
Command-line front end.

    info     dimension, field, Frobenius status, nu order, symmetry, gradings
    hh       dim HH^n and dim HH^n(A)^{nu up} per degree
    bv       matrix of the induced Delta on HH^n(A)^{nu up}
    verify   run verification suites and print the report
    export   write the algebra in the JSON algebra file format

Exit codes: 0 success, 1 verification failure, 2 input or configuration error.
"""
import argparse
import copy
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.config import DEFAULT_SUITES, load_config  # noqa: E402
from src.provenance import RunConfig  # noqa: E402
from src.services import (  # noqa: E402
    FAMILIES,
    AlgebraBundle,
    AlgebraPipeline,
    AlgebraRequest,
    ExportService,
    VerificationService,
)
from src.utils.errors import HochschildError  # noqa: E402
from src.utils.logging_utils import setup_logger  # noqa: E402
from src.utils.validation import OUTPUT_FORMATS, validate_run_options  # noqa: E402

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

# The default input when neither --family nor --input is given
DEFAULT_REQUEST = {'family': 'truncated', 'm': 2}

# Algebras covered by `verify --family zoo`
ZOO_REQUESTS = [
    {'family': 'truncated', 'm': 2, 'field': 'Q'},
    {'family': 'truncated', 'm': 2, 'field': 'Fp:2'},
    {'family': 'truncated', 'm': 2, 'field': 'Fp:3'},
    {'family': 'truncated', 'm': 3, 'field': 'Q'},
    {'family': 'nakayama', 'v': 2, 'loewy_length': 3, 'field': 'Q'},
    {'family': 'nakayama', 'v': 2, 'loewy_length': 3, 'field': 'Fp:2'},
    {'family': 'dnr', 'n': 4, 'r': 1, 'field': 'Q'},
    {'family': 'dnr', 'n': 4, 'r': 1, 'field': 'Fp:3'},
    {'family': 'dnr', 'n': 4, 'r': 2, 'field': 'Q'},
    {'family': 'dnr', 'n': 4, 'r': 2, 'field': 'Fp:3'},
]


class CliInputError(Exception):
    """Bad command-line input (mapped to exit code 2)."""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("algebra")
    source.add_argument('--family', choices=FAMILIES + ('zoo',),
                        help="built-in family (zoo: every verification algebra, verify only)")
    source.add_argument('--input', help="algebra file (JSON)")
    source.add_argument('--n', type=int, default=4, help="R(n,r): n >= 4")
    source.add_argument('--r', type=int, default=1, help="R(n,r): r >= 1")
    source.add_argument('--m', type=int, default=2, help="k[x]/(x^m)")
    source.add_argument('--v', type=int, default=2, help="Nakayama cycle: vertices")
    source.add_argument('--loewy-length', type=int, default=2, help="Nakayama cycle: Loewy length")
    source.add_argument('--size', type=int, default=2, help="matrix algebra size")
    source.add_argument('--field', default='Q', help="Q or Fp:<p>")

    run = common.add_argument_group("run")
    run.add_argument('--max-degree', type=int, help="largest cohomological degree")
    run.add_argument('--budget', type=int, help="largest cochain space in scalars")
    run.add_argument('--seed', type=int, help="random seed")
    run.add_argument('--format', choices=OUTPUT_FORMATS, default='text', dest='output_format')
    run.add_argument('--config', help="configuration file (default config/config.yaml)")
    run.add_argument('--log-level', help="console log level")
    run.add_argument('--log-dir', help="directory for log files")

    parser = argparse.ArgumentParser(prog="hochschild-bv", description="Hochschild cohomology and BV structure")
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('info', parents=[common], help="algebra summary")
    sub.add_parser('hh', parents=[common], help="HH dimension table")
    bv = sub.add_parser('bv', parents=[common], help="induced Delta matrix")
    bv.add_argument('--degree', type=int, required=True)
    verify = sub.add_parser('verify', parents=[common], help="run verification suites")
    verify.add_argument('--suite', help=f"comma-separated subset of: {', '.join(DEFAULT_SUITES)}")
    verify.add_argument('--stretch', action='store_true', help="include the degree-P chi and xi reductions")
    verify.add_argument('--save-dir', help="also save the JSON report under this directory")
    export = sub.add_parser('export', parents=[common], help="write the algebra file")
    export.add_argument('--output', required=True)
    return parser


def _requests(args: argparse.Namespace) -> List[AlgebraRequest]:
    if args.input is not None and args.family is not None:
        raise CliInputError("give either --family or --input, not both")
    if args.family == 'zoo':
        if args.command != 'verify':
            raise CliInputError("--family zoo is only available for verify")
        return [AlgebraRequest(**spec) for spec in ZOO_REQUESTS]
    if args.input is not None:
        if not Path(args.input).exists():
            raise CliInputError(f"algebra file not found: {args.input}")
        return [AlgebraRequest(input_path=args.input)]
    if args.family is None:
        return [AlgebraRequest(**DEFAULT_REQUEST, field=args.field)]
    return [AlgebraRequest(
        family=args.family, n=args.n, r=args.r, m=args.m, v=args.v,
        loewy_length=args.loewy_length, size=args.size, field=args.field,
    )]


def _effective_config(args: argparse.Namespace) -> Dict:
    """Configuration file, environment, then command-line flags."""
    config = copy.deepcopy(load_config(args.config))
    if args.budget is not None:
        config['engine']['budget'] = args.budget
    if args.seed is not None:
        config['sampling']['seed'] = args.seed
    if args.max_degree is not None:
        config['verify']['max_degree'] = args.max_degree
    if args.log_level:
        config['app']['log_level'] = args.log_level
    if getattr(args, 'stretch', False):
        config['verify']['stretch'] = True
    suites = getattr(args, 'suite', None)
    if suites:
        config['verify']['suites'] = [s.strip() for s in suites.split(',') if s.strip()]
    return config


def _run_config(config: Dict, requests: Sequence[AlgebraRequest], output_format: str) -> RunConfig:
    verify = config['verify']
    source = requests[0].describe() if len(requests) == 1 else {'family': 'zoo', 'algebras': len(requests)}
    return RunConfig(
        source=source,
        field=requests[0].field if requests[0].family else "from file",
        max_degree=int(verify['max_degree']),
        budget=int(config['engine']['budget']),
        seed=int(config['sampling']['seed']),
        sample_counts={
            key: int(verify[key])
            for key in ('twist_homotopy_cochains', 'hh_nu_cocycles', 'euler_cases', 'gerstenhaber_cases')
            if key in verify
        },
        output_format=output_format,
        suites=list(verify['suites']),
        stretch=bool(verify.get('stretch', False)),
    )


def cmd_info(bundle: AlgebraBundle, exporter: ExportService, args) -> int:
    print(exporter.render(exporter.info_report(bundle), args.output_format, title=bundle.description))
    return EXIT_OK


def cmd_hh(bundle: AlgebraBundle, exporter: ExportService, args, config: Dict) -> int:
    table = exporter.hh_table(bundle, int(config['verify']['max_degree']))
    if args.output_format == 'json':
        payload = {'algebra': bundle.description, 'table': json.loads(table.to_json(orient='records'))}
        print(exporter.render(payload, 'json'))
    else:
        print(exporter.render(table, 'text', title=f"HH of {bundle.description}"))
    return EXIT_OK


def cmd_bv(bundle: AlgebraBundle, exporter: ExportService, args) -> int:
    if args.degree < 0:
        raise CliInputError(f"--degree must be >= 0, got {args.degree}")
    payload = exporter.bv_payload(bundle, args.degree)
    if args.output_format == 'json':
        print(exporter.render(payload, 'json'))
        return EXIT_OK
    print(exporter.render(pd.DataFrame(**payload['matrix']), 'text',
                          title=f"Delta on HH^{args.degree} of {bundle.description}"))
    for entry in payload['generators']:
        if 'class' in entry:
            print(f"  {entry['generator']}: class {entry['class']} -> Delta {entry['delta']}")
        else:
            print(f"  {entry['generator']}: {entry.get('reason', 'skipped')}")
    return EXIT_OK


def cmd_verify(bundles: List[AlgebraBundle], requests, args, config: Dict, logger) -> int:
    service = VerificationService(config, logger)
    run_config = _run_config(config, requests, args.output_format)
    manifest = service.verify(bundles, run_config, input_path=args.input)
    if args.save_dir:
        logger.info(f"Report saved to {manifest.save(args.save_dir)}")
    if args.output_format == 'json':
        print(manifest.to_json())
    else:
        rows = [{'suite': s.name, 'algebra': s.algebra, 'status': s.status.value, 'samples': s.samples}
                for s in manifest.suites]
        print(f"run {manifest.run_id}  seed {run_config.seed}  status {manifest.status.value}")
        print(pd.DataFrame(rows).to_string(index=False))
        for s in manifest.suites:
            for error in s.errors:
                print(f"  FAIL {s.name} ({s.algebra}): {error}")
    return EXIT_VERIFICATION_FAILED if manifest.exit_code else EXIT_OK


def cmd_export(bundle: AlgebraBundle, exporter: ExportService, args) -> int:
    path = exporter.save_algebra(bundle, args.output)
    print(str(path))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = setup_logger(log_dir=args.log_dir, level=args.log_level or 'WARNING')

    try:
        config = _effective_config(args)
        logger = setup_logger(log_dir=args.log_dir, level=config['app'].get('log_level', 'WARNING'))
        report = validate_run_options(
            max_degree=int(config['verify']['max_degree']),
            budget=int(config['engine']['budget']),
            seed=int(config['sampling']['seed']),
            output_format=args.output_format,
            field=args.field,
            suites=config['verify']['suites'],
            known_suites=DEFAULT_SUITES,
        )
        for warning in report['warnings']:
            logger.warning(warning)
        if not report['valid']:
            raise CliInputError("; ".join(report['errors']))

        requests = _requests(args)
        pipeline = AlgebraPipeline(config, logger)
        bundles = [pipeline.build(request) for request in requests]
        exporter = ExportService(config, logger)

        if args.command == 'verify':
            return cmd_verify(bundles, requests, args, config, logger)
        bundle = bundles[0]
        if args.command == 'info':
            return cmd_info(bundle, exporter, args)
        if args.command == 'hh':
            return cmd_hh(bundle, exporter, args, config)
        if args.command == 'bv':
            return cmd_bv(bundle, exporter, args)
        return cmd_export(bundle, exporter, args)
    except (CliInputError, ValueError, HochschildError) as exc:
        logger.debug(f"input error: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
