"""Command-line interface.

Every subcommand takes either a job document (``--job PATH``, ``-`` for
stdin) or inline flags, never both. Inline flags are turned into the same
job document, so both routes share one validator.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
2 usage or validation error, 3 computation failure, 4 integrity error.

Example:
    $ residue-futaki wps-futaki --weights 1,1,2 --params 0,1,3
    -16/9
    $ residue-futaki zeta --weights symbolic --coeff "a0^2*a1*a2"
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .analysis import (
    Obstructed,
    TorusFieldParams,
    Weights,
    chern_number_wps,
    default_params,
    futaki_wps,
    ke_obstruction,
    zeta,
)
from .core import (
    FixedPointChart,
    InvariantPolynomial,
    ResidueCaps,
    VectorFieldGerm,
    grothendieck_residue,
    morita_futaki,
)
from .core.arith import Poly, exact_value, format_rational
from .core.exprio import SYMBOLIC, JobDescription, parse_job, parse_poly
from .errors import ResidueFutakiError, UsageError
from .utils.config import DEFAULT_MAX_COFACTOR_DEGREE, DEFAULT_MAX_EXPONENT

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Inline flags per subcommand (dest names); any of them conflicts with --job
_INLINE = {
    'residue': ('vars', 'parameters', 'field', 'numerator'),
    'futaki': ('vars', 'chart', 'phi'),
    'wps-futaki': ('weights', 'params'),
    'zeta': ('weights', 'coeff'),
    'ke-check': ('weights', 'seed'),
    'chern': ('weights', 'phi', 'params'),
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--job', metavar='PATH', help="job document (JSON); '-' reads stdin")
    common.add_argument('--json', action='store_true', help="structured output: the job plus a result field")
    common.add_argument('--max-rep-degree', type=int, metavar='D',
                        help=f"cofactor degree cap for degenerate residues (default {DEFAULT_MAX_COFACTOR_DEGREE})")
    common.add_argument('--max-exponent', type=int, metavar='A',
                        help=f"exponent cap for degenerate residues (default {DEFAULT_MAX_EXPONENT})")
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v info, -vv debug (stderr)")

    parser = argparse.ArgumentParser(prog='residue-futaki', description=__doc__.split('\n')[0])
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('residue', parents=[common], help="point residue of a germ at the origin")
    p.add_argument('--vars', help="germ variables, e.g. z1,z2")
    p.add_argument('--parameters', help="symbolic coefficient names, e.g. l1,l2")
    p.add_argument('--field', action='append', metavar='EXPR', help="one component per flag")
    p.add_argument('--numerator', metavar='EXPR')

    p = sub.add_parser('futaki', parents=[common], help="Morita-Futaki invariant from chart data")
    p.add_argument('--vars', help="chart variables, e.g. z1,z2")
    p.add_argument('--chart', action='append', metavar='ORDER:EXPR;EXPR',
                   help="group order and germ components, one chart per flag")
    p.add_argument('--phi', metavar='EXPR', help="invariant polynomial in c1..cn")

    p = sub.add_parser('wps-futaki', parents=[common], help="Futaki character on P^2_w")
    p.add_argument('--weights', metavar='W0,W1,W2|symbolic')
    p.add_argument('--params', metavar='A0,A1,A2|symbolic')

    p = sub.add_parser('zeta', parents=[common], help="obstruction polynomial")
    p.add_argument('--weights', metavar='W0,W1,W2|symbolic')
    p.add_argument('--coeff', metavar='MONOMIAL', help="print one coefficient, e.g. a0^2*a1*a2")

    p = sub.add_parser('ke-check', parents=[common], help="Kahler-Einstein obstruction verdict")
    p.add_argument('--weights', metavar='W0,W1,W2')
    p.add_argument('--seed', type=int)

    p = sub.add_parser('chern', parents=[common], help="characteristic number of P^2_w")
    p.add_argument('--weights', metavar='W0,W1,W2')
    p.add_argument('--phi', metavar='EXPR', help="degree-2 polynomial in c1, c2")
    p.add_argument('--params', metavar='A0,A1,A2')
    return parser


def _split(text: str) -> list[str]:
    return [part.strip() for part in text.split(',')]


def _weights_field(text: str) -> Any:
    if text.strip() == SYMBOLIC:
        return SYMBOLIC
    try:
        return [int(w) for w in _split(text)]
    except ValueError:
        raise UsageError(f"weights must be integers or 'symbolic', got {text!r}") from None


def _inline_document(args: argparse.Namespace) -> dict[str, Any]:
    """Job document built from inline flags."""
    doc: dict[str, Any] = {'kind': args.command}
    options: dict[str, Any] = {}
    if args.command == 'residue':
        doc['vars'] = _split(args.vars) if args.vars else None
        if args.parameters:
            doc['parameters'] = _split(args.parameters)
        doc['field'] = args.field
        doc['numerator'] = args.numerator
    elif args.command == 'futaki':
        doc['vars'] = _split(args.vars) if args.vars else None
        charts = []
        for spec in args.chart or []:
            order, sep, components = spec.partition(':')
            if not sep:
                raise UsageError(f"chart {spec!r} should look like ORDER:EXPR;EXPR")
            try:
                order_value = int(order)
            except ValueError:
                raise UsageError(f"chart order {order!r} is not an integer") from None
            charts.append({'order': order_value, 'field': [c.strip() for c in components.split(';')]})
        doc['charts'] = charts
        doc['phi'] = args.phi
    else:
        if args.weights is not None:
            doc['weights'] = _weights_field(args.weights)
        if getattr(args, 'params', None) is not None:
            doc['params'] = SYMBOLIC if args.params.strip() == SYMBOLIC else _split(args.params)
        if getattr(args, 'phi', None) is not None:
            doc['phi'] = args.phi
        if getattr(args, 'coeff', None) is not None:
            options['coeff'] = args.coeff
        if getattr(args, 'seed', None) is not None:
            options['seed'] = args.seed
    if options:
        doc['options'] = options
    return {k: v for k, v in doc.items() if v is not None}


def _load_job(args: argparse.Namespace) -> JobDescription:
    inline = [name for name in _INLINE[args.command] if getattr(args, name, None) is not None]
    if args.job is not None:
        if inline:
            raise UsageError(f"--job cannot be combined with --{inline[0]}")
        if args.job == '-':
            text = sys.stdin.read()
        else:
            path = Path(args.job)
            if not path.is_file():
                raise UsageError(f"job file not found: {path}")
            text = path.read_text()
        job = parse_job(text)
        if job.kind != args.command:
            raise UsageError(f"job kind {job.kind!r} does not match subcommand {args.command!r}")
        return job
    return parse_job(_inline_document(args))


def _caps(args: argparse.Namespace, job: JobDescription) -> ResidueCaps:
    max_exponent = args.max_exponent if args.max_exponent is not None else job.options.max_exponent
    max_degree = args.max_rep_degree if args.max_rep_degree is not None else job.options.max_rep_degree
    return ResidueCaps(
        max_exponent=DEFAULT_MAX_EXPONENT if max_exponent is None else max_exponent,
        max_cofactor_degree=DEFAULT_MAX_COFACTOR_DEGREE if max_degree is None else max_degree,
    )


def _weights(job: JobDescription) -> Weights | None:
    return None if job.weights is None else Weights(*job.weights)


def _params(job: JobDescription) -> TorusFieldParams:
    return TorusFieldParams.symbolic() if job.params is None else TorusFieldParams.parse(job.params)


def _run_residue(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    germ = VectorFieldGerm.parse(job.variables, job.field, job.parameters)
    numerator = parse_poly(job.numerator, germ.ring)  # type: ignore[arg-type]
    result = grothendieck_residue(germ, numerator, caps)
    lines = [str(result)]
    doc: dict[str, Any] = {'value': str(result), 'method': result.method}
    if result.representation is not None:
        rep = result.representation
        lines.append("exponents: " + ",".join(str(a) for a in rep.exponents))
        lines.append(f"cofactors: {rep.cofactors}")
        if not rep.is_pure():
            lines.append("units: " + "; ".join(str(u) for u in rep.units))
        doc['representation'] = rep.to_document()
    return lines, doc


def _run_futaki(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    charts = [FixedPointChart(c.order, VectorFieldGerm.parse(job.variables, c.field)) for c in job.charts]
    phi = InvariantPolynomial.parse(job.phi.expression, job.phi.n)  # type: ignore[union-attr]
    value = morita_futaki(charts, phi, caps)
    lines = [str(value)]
    for c in value.contributions:
        lines.append(f"chart {c.index} (order {c.group_order}): residue {exact_value(c.residue.value)}, "
                     f"weighted {exact_value(c.weighted)}")
    return lines, value.to_document()


def _run_wps_futaki(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    value = futaki_wps(_weights(job), _params(job), caps)
    return [str(value)], value.to_document()


def _run_zeta(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    obstruction = zeta(_weights(job))
    if job.options.coeff is not None:
        coefficient = obstruction.coefficient(job.options.coeff)
        text = str(coefficient) if isinstance(coefficient, Poly) else exact_value(coefficient)
        return [text], {'monomial': job.options.coeff, 'coefficient': text}
    return [str(obstruction)], {'zeta': str(obstruction)}


def _run_ke_check(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    w = _weights(job)
    result = ke_obstruction(w, job.options.seed, caps)  # type: ignore[arg-type]
    lines = [result.verdict]
    doc: dict[str, Any] = {'verdict': result.verdict}
    if isinstance(result, Obstructed):
        witness = [format_rational(x) for x in result.witness]
        lines.append(f"witness a=({','.join(witness)}) f={format_rational(result.futaki)}")
        doc.update({'witness': witness, 'futaki': format_rational(result.futaki),
                    'zeta': format_rational(result.zeta_value)})
    return lines, doc


def _run_chern(job: JobDescription, caps: ResidueCaps) -> tuple[list[str], dict[str, Any]]:
    w = _weights(job)
    phi = InvariantPolynomial.parse(job.phi.expression, 2)  # type: ignore[union-attr]
    a = _params(job) if job.params is not None else default_params(w)  # type: ignore[arg-type]
    value = chern_number_wps(w, phi, a, caps)  # type: ignore[arg-type]
    return [format_rational(value)], {'value': format_rational(value), 'params': str(a)}


_RUNNERS = {
    'residue': _run_residue,
    'futaki': _run_futaki,
    'wps-futaki': _run_wps_futaki,
    'zeta': _run_zeta,
    'ke-check': _run_ke_check,
    'chern': _run_chern,
}


def run(args: argparse.Namespace) -> int:
    """Execute a parsed invocation; returns the exit code."""
    try:
        job = _load_job(args)
        caps = _caps(args, job)
        lines, result = _RUNNERS[job.kind](job, caps)
    except ResidueFutakiError as e:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    if args.json:
        document = job.to_document()
        document['result'] = result
        print(json.dumps(document, indent=2))
    else:
        for line in lines:
            print(line)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    return run(args)


if __name__ == '__main__':
    sys.exit(main())
