"""Job documents: one JSON object describes one computation.

Schema (field names exact)::

    kind        residue | futaki | wps-futaki | zeta | ke-check | chern
    vars        ["z1", ..., "zn"]                      residue, futaki
    parameters  ["l1", ...]  symbolic coefficients     residue (optional)
    field       [expr, ...]                            residue
    numerator   expr                                   residue
    phi         expr over c1..cn, or {"n": n, "expression": expr}
    charts      [{"order": uint, "field": [expr, ...]}, ...]   futaki
    weights     [w0, w1, w2] or "symbolic"             wps kinds
    params      [a0, a1, a2] rational strings or "symbolic"
    options     {max_rep_degree, max_exponent, seed, coeff}

A ``result`` key is ignored so that structured CLI output can be fed back in.
"""

import json
import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from ...errors import ParseError, SchemaError
from .parser import parse_poly, parse_rational

logger = logging.getLogger(__name__)

JOB_KINDS = ('residue', 'futaki', 'wps-futaki', 'zeta', 'ke-check', 'chern')
WPS_KINDS = ('wps-futaki', 'zeta', 'ke-check', 'chern')
WPS_PARAM_VARS = ('a0', 'a1', 'a2')
WPS_WEIGHT_VARS = ('w0', 'w1', 'w2')
SYMBOLIC = 'symbolic'

_GERM_VAR_RE = re.compile(r"^z([1-9]\d*)$")
_RESERVED_RE = re.compile(r"^(z[1-9]\d*|[aw][0-2]|c[1-9]\d*)$")

_KNOWN_FIELDS = {
    'residue': {'kind', 'vars', 'parameters', 'field', 'numerator', 'options'},
    'futaki': {'kind', 'vars', 'charts', 'phi', 'options'},
    'wps-futaki': {'kind', 'weights', 'params', 'options'},
    'zeta': {'kind', 'weights', 'options'},
    'ke-check': {'kind', 'weights', 'options'},
    'chern': {'kind', 'weights', 'phi', 'params', 'options'},
}
_OPTION_FIELDS = {'max_rep_degree', 'max_exponent', 'seed', 'coeff'}


@dataclass(frozen=True)
class JobOptions:
    max_rep_degree: int | None = None
    max_exponent: int | None = None
    seed: int = 0
    coeff: str | None = None

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {}
        if self.max_rep_degree is not None:
            doc['max_rep_degree'] = self.max_rep_degree
        if self.max_exponent is not None:
            doc['max_exponent'] = self.max_exponent
        if self.seed:
            doc['seed'] = self.seed
        if self.coeff is not None:
            doc['coeff'] = self.coeff
        return doc


@dataclass(frozen=True)
class PhiSpec:
    """Invariant polynomial text over c1..cn."""

    n: int
    expression: str


@dataclass(frozen=True)
class ChartSpec:
    order: int
    field: tuple[str, ...]


@dataclass(frozen=True)
class JobDescription:
    """A validated job. Expression fields are kept as text; they are known to parse.

    ``weights`` / ``params`` are None in symbolic mode.
    """

    kind: str
    variables: tuple[str, ...] = ()
    parameters: tuple[str, ...] = ()
    field: tuple[str, ...] = ()
    numerator: str | None = None
    phi: PhiSpec | None = None
    charts: tuple[ChartSpec, ...] = ()
    weights: tuple[int, int, int] | None = None
    params: tuple[str, str, str] | None = None
    options: JobOptions = JobOptions()

    def to_document(self) -> dict[str, Any]:
        """The job as a JSON-ready object, mirroring the input schema."""
        doc: dict[str, Any] = {'kind': self.kind}
        if self.kind in ('residue', 'futaki'):
            doc['vars'] = list(self.variables)
        if self.parameters:
            doc['parameters'] = list(self.parameters)
        if self.kind == 'residue':
            doc['field'] = list(self.field)
            doc['numerator'] = self.numerator
        if self.kind == 'futaki':
            doc['charts'] = [{'order': c.order, 'field': list(c.field)} for c in self.charts]
        if self.phi is not None:
            doc['phi'] = {'n': self.phi.n, 'expression': self.phi.expression}
        if self.kind in WPS_KINDS:
            doc['weights'] = SYMBOLIC if self.weights is None else list(self.weights)
        if self.kind in ('wps-futaki', 'chern'):
            if self.params is not None:
                doc['params'] = list(self.params)
            elif self.kind == 'wps-futaki':
                doc['params'] = SYMBOLIC
        options = self.options.to_document()
        if options:
            doc['options'] = options
        return doc


def parse_job(document: str | Mapping[str, Any]) -> JobDescription:
    """Parse and validate a job document.

    Args:
        document: JSON text or an already-decoded mapping.

    Raises:
        SchemaError: Malformed JSON or a schema violation; ``path`` names the field.
    """
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as e:
            raise SchemaError('', f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    else:
        data = document
    if not isinstance(data, Mapping):
        raise SchemaError('', "a job document must be a JSON object")

    kind = data.get('kind')
    if kind not in JOB_KINDS:
        raise SchemaError('kind', f"expected one of {', '.join(JOB_KINDS)}, got {kind!r}")
    unknown = set(data) - _KNOWN_FIELDS[kind] - {'result'}
    if unknown:
        raise SchemaError(sorted(unknown)[0], f"field not allowed for kind {kind!r}")

    options = _parse_options(data.get('options', {}), kind)
    logger.debug("parsing %s job", kind)

    if kind == 'residue':
        variables = _parse_germ_vars(data)
        parameters = _parse_parameters(data.get('parameters', []), variables)
        ring = variables + parameters
        components = _parse_expr_list(data, 'field', ring, len(variables))
        numerator = _require_expr(data, 'numerator', ring)
        return JobDescription(kind=kind, variables=variables, parameters=parameters,
                              field=components, numerator=numerator, options=options)

    if kind == 'futaki':
        variables = _parse_germ_vars(data)
        charts = _parse_charts(data.get('charts'), variables)
        phi = _parse_phi(data.get('phi'), len(variables), 'phi')
        return JobDescription(kind=kind, variables=variables, charts=charts, phi=phi, options=options)

    weights = _parse_weights(data.get('weights'), allow_symbolic=kind in ('wps-futaki', 'zeta'))
    if kind == 'wps-futaki':
        params = _parse_params(data.get('params'), required=True, allow_symbolic=True)
        return JobDescription(kind=kind, weights=weights, params=params, options=options)
    if kind == 'chern':
        phi = _parse_phi(data.get('phi'), 2, 'phi')
        params = _parse_params(data.get('params'), required=False, allow_symbolic=False)
        return JobDescription(kind=kind, weights=weights, params=params, phi=phi, options=options)
    return JobDescription(kind=kind, weights=weights, options=options)


# ----------------------------------------------------------------------
# Field validators
# ----------------------------------------------------------------------

def _check_expr(text: Any, variables: tuple[str, ...], path: str) -> str:
    if not isinstance(text, str):
        raise SchemaError(path, f"expected an expression string, got {type(text).__name__}")
    try:
        parse_poly(text, variables)
    except ParseError as e:
        raise SchemaError(path, str(e)) from e
    return text


def _require_expr(data: Mapping[str, Any], key: str, variables: tuple[str, ...]) -> str:
    if key not in data:
        raise SchemaError(key, "missing required field")
    return _check_expr(data[key], variables, key)


def _parse_germ_vars(data: Mapping[str, Any]) -> tuple[str, ...]:
    raw = data.get('vars')
    if not isinstance(raw, list) or not raw:
        raise SchemaError('vars', "expected a non-empty list of variable names")
    for i, name in enumerate(raw):
        if not isinstance(name, str) or not _GERM_VAR_RE.match(name):
            raise SchemaError(f'vars[{i}]', f"germ variables are named z1..zn, got {name!r}")
        if name != f'z{i + 1}':
            raise SchemaError(f'vars[{i}]', f"expected 'z{i + 1}', got {name!r}")
    return tuple(raw)


def _parse_parameters(raw: Any, variables: tuple[str, ...]) -> tuple[str, ...]:
    if not isinstance(raw, list):
        raise SchemaError('parameters', "expected a list of names")
    seen: set[str] = set()
    for i, name in enumerate(raw):
        if not isinstance(name, str) or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            raise SchemaError(f'parameters[{i}]', f"invalid name {name!r}")
        if _RESERVED_RE.match(name) or name in seen:
            raise SchemaError(f'parameters[{i}]', f"name {name!r} is reserved or repeated")
        seen.add(name)
    return tuple(raw)


def _parse_expr_list(data: Mapping[str, Any], key: str, variables: tuple[str, ...],
                     arity: int) -> tuple[str, ...]:
    raw = data.get(key)
    if not isinstance(raw, list):
        raise SchemaError(key, "expected a list of expressions")
    if len(raw) != arity:
        raise SchemaError(key, f"expected {arity} components, got {len(raw)}")
    return tuple(_check_expr(text, variables, f'{key}[{i}]') for i, text in enumerate(raw))


def _parse_charts(raw: Any, variables: tuple[str, ...]) -> tuple[ChartSpec, ...]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError('charts', "expected a non-empty list of charts")
    charts = []
    for i, chart in enumerate(raw):
        path = f'charts[{i}]'
        if not isinstance(chart, Mapping):
            raise SchemaError(path, "expected an object with 'order' and 'field'")
        order = chart.get('order')
        if not _is_uint(order) or order < 1:
            raise SchemaError(f'{path}.order', f"expected a positive integer, got {order!r}")
        components = _parse_expr_list(chart, 'field', variables, len(variables))
        charts.append(ChartSpec(order=order, field=components))
    return tuple(charts)


def _parse_phi(raw: Any, default_n: int, path: str) -> PhiSpec:
    if isinstance(raw, str):
        n, expression = default_n, raw
    elif isinstance(raw, Mapping):
        n, expression = raw.get('n'), raw.get('expression')
        if not _is_uint(n) or n < 1:
            raise SchemaError(f'{path}.n', f"expected a positive integer, got {n!r}")
        if n != default_n:
            raise SchemaError(f'{path}.n', f"dimension {n} does not match the job dimension {default_n}")
        path = f'{path}.expression'
    else:
        raise SchemaError(path, "expected an expression string or {n, expression}")
    symbols = tuple(f'c{j}' for j in range(1, n + 1))
    return PhiSpec(n=n, expression=_check_expr(expression, symbols, path))


def _parse_weights(raw: Any, allow_symbolic: bool) -> tuple[int, int, int] | None:
    if raw == SYMBOLIC:
        if not allow_symbolic:
            raise SchemaError('weights', "symbolic weights are not supported for this kind")
        return None
    if not isinstance(raw, list):
        raise SchemaError('weights', "expected [w0, w1, w2]" + (" or \"symbolic\"" if allow_symbolic else ""))
    if len(raw) != 3:
        raise SchemaError('weights', f"exactly 3 weights required, got {len(raw)}")
    for i, w in enumerate(raw):
        if not _is_uint(w) or w < 1:
            raise SchemaError(f'weights[{i}]', f"expected a positive integer, got {w!r}")
    return tuple(raw)  # type: ignore[return-value]


def _parse_params(raw: Any, required: bool, allow_symbolic: bool) -> tuple[str, str, str] | None:
    if raw is None:
        if required:
            raise SchemaError('params', "missing required field")
        return None
    if raw == SYMBOLIC:
        if not allow_symbolic:
            raise SchemaError('params', "symbolic params are not supported for this kind")
        return None
    if not isinstance(raw, list) or len(raw) != 3:
        raise SchemaError('params', "exactly 3 params required")
    params = []
    for i, value in enumerate(raw):
        text = str(value) if isinstance(value, int) and not isinstance(value, bool) else value
        if not isinstance(text, str):
            raise SchemaError(f'params[{i}]', f"expected a rational string, got {value!r}")
        try:
            parse_rational(text)
        except ParseError as e:
            raise SchemaError(f'params[{i}]', str(e)) from e
        params.append(text.strip())
    return tuple(params)  # type: ignore[return-value]


def _parse_options(raw: Any, kind: str) -> JobOptions:
    if not isinstance(raw, Mapping):
        raise SchemaError('options', "expected an object")
    unknown = set(raw) - _OPTION_FIELDS
    if unknown:
        raise SchemaError(f'options.{sorted(unknown)[0]}', "unknown option")
    values: dict[str, Any] = {}
    for key in ('max_rep_degree', 'max_exponent', 'seed'):
        if key in raw:
            if not _is_uint(raw[key]):
                raise SchemaError(f'options.{key}', f"expected a non-negative integer, got {raw[key]!r}")
            values[key] = raw[key]
    if values.get('max_exponent') == 0:
        raise SchemaError('options.max_exponent', "must be at least 1")
    if 'coeff' in raw:
        if kind != 'zeta':
            raise SchemaError('options.coeff', "only zeta jobs extract coefficients")
        values['coeff'] = _check_expr(raw['coeff'], WPS_PARAM_VARS, 'options.coeff')
    return JobOptions(**values)


def _is_uint(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0
