"""Reading ideal files and polynomial text.

An ideal file looks like::

    ring x,y,z,w
    field fp 4611686018427387847   # or: field q
    gens
    x*z - y^2
    y*w - z^2
    x*w - y*z

The ``field`` line is optional (default: the default prime field), ``#``
starts a comment and every line after ``gens`` holds one generator.
"""

import logging
import os
import re
from tokenize import TokenError
from typing import Any, Dict, List, Optional, Tuple

from sympy import Expr, Float, Function, Integer, Number, Rational, Symbol, fraction, nan, together, zoo
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.rings import PolyElement, PolyRing

from svsegre.groebner import Budget, Ideal
from svsegre.models import ParseError, ValidationError
from svsegre.poly import DEFAULT_PRIME, field_from_spec, make_ring

logger = logging.getLogger(__name__)

_NAME = re.compile(r'[A-Za-z_][A-Za-z_0-9]*$')
_FOREIGN = re.compile(r'[^\w\s+\-*/^().]')
_OPERATOR_SCAN = re.compile(r'\*\*|[-+*/^()]|[^\s\-+*/^()]+')
_BINARY = ('**', '*', '/', '^', '+', '-')

# names the parser's generated code refers to; nothing else from sympy is visible
_GLOBALS = {'Integer': Integer, 'Float': Float, 'Rational': Rational, 'Number': Number,
            'Symbol': Symbol, 'Function': Function}

# implicit_multiplication_application includes split_symbols, so xz reads as x*z
_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication_application)


def field_name(domain) -> str:
    """Inverse of ``field_from_spec``: ``q`` or ``fp:<prime>``."""
    p = domain.characteristic()
    return f"fp:{p}" if p else 'q'


def _locate_syntax_error(text: str) -> Optional[Tuple[str, int]]:
    """Message and 1-based column of the first misplaced operator or bracket."""
    depth = 0
    previous = None
    for match in _OPERATOR_SCAN.finditer(text):
        token, column = match.group(), match.start() + 1
        if token == ')':
            if depth == 0 or previous in _BINARY or previous == '(':
                return "unexpected ')'", column
            depth -= 1
        elif token == '(':
            depth += 1
        elif token in _BINARY and token not in '+-':
            if previous is None or previous in _BINARY or previous == '(':
                return f"unexpected '{token}'", column
        previous = token
    end = len(text.rstrip()) + 1
    if previous in _BINARY:
        return "unexpected end of expression", end
    if depth:
        return "missing ')'", end
    return None


def parse_polynomial(text: str, ring: PolyRing, line: int = 0, offset: int = 0) -> PolyElement:
    """Parse one polynomial over ``ring``.

    Args:
        text: The polynomial, e.g. ``x*z - y^2``. ``^`` and ``**`` are powers and
            juxtaposition (``2xz``) is a product.
        ring: Ring providing the variables and the coefficient field.
        line: Line number reported in errors (0 for none).
        offset: Column of the text's first character minus one.

    Returns:
        The parsed polynomial.

    Raises:
        ParseError: On syntax errors, unknown variables and non-polynomial input.
    """
    def fail(message: str, column: int = 1) -> ParseError:
        return ParseError(message, line, offset + column)

    source = text.strip()
    if not source:
        raise fail("empty expression")
    foreign = _FOREIGN.search(text)
    if foreign:
        raise fail(f"unexpected character '{foreign.group()}'", foreign.start() + 1)

    variables = {str(s): s for s in ring.symbols}
    try:
        expr = parse_expr(source, local_dict=dict(variables), global_dict=dict(_GLOBALS),
                          transformations=_TRANSFORMATIONS)
    except (SyntaxError, TokenError) as e:
        located = _locate_syntax_error(text)
        if located is None:
            raise fail(f"invalid expression: {e.args[0] if e.args else e}")
        raise fail(*located)
    except (NameError, TypeError, ValueError, AttributeError) as e:
        raise fail(f"invalid expression: {e}")
    if not isinstance(expr, Expr):
        raise fail(f"not a polynomial: {source}")

    unknown = sorted({str(s) for s in expr.free_symbols if str(s) not in variables}
                     | {type(f).__name__ for f in expr.atoms(AppliedUndef)},
                     key=lambda name: (text.find(name), name))
    if unknown:
        raise fail(f"unknown variable '{unknown[0]}'", max(text.find(unknown[0]), 0) + 1)
    if expr.has(zoo, nan):
        raise fail("division by zero", max(text.find('/'), 0) + 1)
    if expr.atoms(Float):
        raise fail("coefficients must be integers or fractions")

    numerator, denominator = fraction(together(expr))
    if not denominator.is_Integer:
        raise fail("only division by an integer is supported", max(text.find('/'), 0) + 1)
    try:
        value = ring.from_expr(numerator)
    except ValueError:
        raise fail(f"not a polynomial in {','.join(variables)}: {source}")
    divisor = ring.domain.convert(int(denominator))
    if not divisor:
        raise fail("division by zero in the coefficient field", max(text.find('/'), 0) + 1)
    return value.quo_ground(divisor)


def _strip_comment(raw: str) -> str:
    return raw.split('#', 1)[0]


def parse_text(text: str, field_override: Optional[str] = None,
               budget: Optional[Budget] = None,
               default_prime: int = DEFAULT_PRIME) -> Tuple[PolyRing, Ideal, Dict[str, Any]]:
    """Parse the contents of an ideal file; see :func:`parse_input`."""
    names: Optional[List[str]] = None
    field_spec: Optional[str] = None
    field_line = 0
    ring: Optional[PolyRing] = None
    generators: List[PolyElement] = []
    in_gens = False

    for number, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw)
        if not content.strip():
            continue
        indent = len(content) - len(content.lstrip())
        if in_gens:
            generators.append(parse_polynomial(content, ring, number))
            continue
        keyword, _, rest = content.strip().partition(' ')
        keyword = keyword.lower()
        if keyword == 'ring':
            if names is not None:
                raise ParseError("duplicate 'ring' line", number, indent + 1)
            names = [name.strip() for name in rest.split(',')]
            for name in names:
                if not _NAME.match(name):
                    raise ParseError(f"bad variable name '{name}'", number,
                                     indent + len('ring ') + 1)
        elif keyword == 'field':
            field_spec, field_line = rest.strip(), number
        elif keyword == 'gens':
            if names is None:
                raise ParseError("'gens' before 'ring'", number, indent + 1)
            spec = field_override if field_override is not None else field_spec
            try:
                domain = field_from_spec(spec, default_prime)
                ring = make_ring(names, domain)
            except ValidationError as e:
                raise ParseError(str(e), field_line or number, 1)
            in_gens = True
        else:
            raise ParseError(f"unknown keyword '{keyword}'; expected ring, field or gens",
                             number, indent + 1)

    if names is None:
        raise ParseError("missing 'ring' line")
    if ring is None:
        raise ParseError("missing 'gens' section")

    ideal = Ideal(ring, generators, budget)
    metadata = {
        'variables': [str(s) for s in ring.symbols],
        'field': field_name(ring.domain),
        'generators': len(generators),
        'homogeneous': ideal.is_homogeneous(),
    }
    return ring, ideal, metadata


def parse_input(path: str, field_override: Optional[str] = None,
                budget: Optional[Budget] = None,
                default_prime: int = DEFAULT_PRIME) -> Tuple[PolyRing, Ideal, Dict[str, Any]]:
    """Load an ideal file.

    Args:
        path: Path to the ideal file.
        field_override: Field spec replacing the file's ``field`` line.
        budget: Groebner budget attached to the ideal.
        default_prime: Prime used when the field is ``fp`` without a modulus.

    Returns:
        Tuple of (ring, ideal, metadata).

    Raises:
        ParseError: If the file is malformed.
        ValidationError: If the file cannot be read.
    """
    if not os.path.exists(path):
        raise ValidationError(f"Input file not found: {path}")
    try:
        with open(path, 'r') as f:
            text = f.read()
    except (IOError, UnicodeDecodeError) as e:
        raise ValidationError(f"Cannot read {path}: {e}")
    ring, ideal, metadata = parse_text(text, field_override, budget, default_prime)
    metadata['path'] = os.path.abspath(path)
    logger.info("loaded %s: %d generators in %s over %s", path, metadata['generators'],
                ','.join(metadata['variables']), metadata['field'])
    return ring, ideal, metadata
