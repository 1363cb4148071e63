"""
Novikov Ring Tools
Ring operations, valuation, inversion by geometric series, the text form
`a*T^(e) + ... + O(T^(E))` and valuation-aware rank of Novikov matrices.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union
import logging
import re

from common.errors import DivisionByZeroError, NovikovError
from common.rationals import format_rational, parse_rational

from .schemas import NovikovElement, NovikovMatrix, as_novikov_matrix

logger = logging.getLogger(__name__)

RING_OPS = ('add', 'sub', 'mul', 'neg')


def ring_ops(x: NovikovElement, y: Optional[NovikovElement], op: str) -> NovikovElement:
    """
    Apply one ring operation.

    Args:
        x: First operand
        y: Second operand (ignored for 'neg')
        op: One of add, sub, mul, neg

    Returns:
        The canonical result; truncation is the min for add/sub and
        min(tx + val(y), ty + val(x)) for mul
    """
    if op == 'neg':
        return -x
    if y is None:
        raise NovikovError(f"Operation {op} needs two operands")
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    raise NovikovError(f"Unknown ring operation {op!r}; expected one of {RING_OPS}")


def valuation(x: NovikovElement) -> Union[Fraction, float]:
    """Least exponent, math.inf for zero."""
    return x.valuation()


def invert(x: NovikovElement, truncation: Any) -> NovikovElement:
    """
    Inverse of x in the Novikov field, known up to the given order.

    x = a0 * T^v * (1 + w) with val(w) > 0, and 1/(1 + w) is summed as a
    geometric series up to Z = min(E, tx - v). The result carries truncation
    Z - v, so x * invert(x) = 1 + O(T^Z).

    An exact monomial a * T^v inverts exactly to (1/a) * T^(-v); E is ignored
    on that path and the result carries no truncation.

    Args:
        x: Nonzero element
        truncation: Working order E

    Returns:
        NovikovElement
    """
    bound = parse_rational(truncation)
    if x.is_zero:
        raise DivisionByZeroError(f"Cannot invert {format_text(x)}")
    v, a0 = x.terms[0]
    if x.is_exact and len(x.terms) == 1:
        return NovikovElement.monomial(1 / a0, -v)
    working = bound if x.truncation is None else min(bound, x.truncation - v)
    if working <= 0:
        raise NovikovError(f"Truncation {format_rational(bound)} leaves no precision to invert {format_text(x)}")
    w = NovikovElement(tuple((e - v, c / a0) for e, c in x.terms[1:]), working)
    minus_w = -w
    total = NovikovElement.constant(1, working)
    power = NovikovElement.constant(1, working)
    while True:
        power = (power * minus_w).truncate(working)
        if power.is_zero:
            break
        total = total + power
    return NovikovElement(tuple((e - v, c / a0) for e, c in total.terms), working - v)


def _format_term(exponent: Fraction, coeff: Fraction, first: bool) -> str:
    body = f"{format_rational(abs(coeff))}*T^({format_rational(exponent)})"
    if first:
        return f"-{body}" if coeff < 0 else body
    return f" - {body}" if coeff < 0 else f" + {body}"


def format_text(x: NovikovElement) -> str:
    """Render as `a0*T^(e0) + a1*T^(e1) + O(T^(E))`; zero renders as `0`."""
    parts = [_format_term(e, c, i == 0) for i, (e, c) in enumerate(x.terms)]
    text = ''.join(parts) or '0'
    if x.truncation is not None:
        text += f" + O(T^({format_rational(x.truncation)}))"
    return text


_RATIONAL = r'\d+(?:/\d+)?'
_TRUNC = re.compile(r'^O\(\s*T(?:\^\(\s*(?P<e>-?' + _RATIONAL + r')\s*\)|\^(?P<e2>' + _RATIONAL + r'))?\s*\)$')
_TERM = re.compile(
    r'^(?P<c>' + _RATIONAL + r')?\s*\*?\s*'
    r'(?P<t>T(?:\^\(\s*(?P<e>-?' + _RATIONAL + r')\s*\)|\^(?P<e2>' + _RATIONAL + r'))?)?$'
)


def _split_signed(text: str) -> List[Tuple[int, str]]:
    chunks: List[Tuple[int, str]] = []
    depth = 0
    sign = 1
    current = ''
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if depth == 0 and ch in '+-':
            if current.strip():
                chunks.append((sign, current.strip()))
                sign = 1
                current = ''
            if ch == '-':
                sign = -sign
            continue
        current += ch
    if depth != 0:
        raise NovikovError(f"Unbalanced parentheses in {text!r}")
    if current.strip():
        chunks.append((sign, current.strip()))
    return chunks


def parse_text(text: str) -> NovikovElement:
    """
    Parse the text form. Accepts shorthand such as `1 - T`, `T^(1/2)`,
    `3*T^2 + O(T^5)` and `0`.

    Args:
        text: Text form

    Returns:
        NovikovElement
    """
    terms: List[Tuple[Fraction, Fraction]] = []
    truncation: Optional[Fraction] = None
    chunks = _split_signed(text.strip())
    if not chunks:
        raise NovikovError(f"Empty Novikov element: {text!r}")
    for sign, chunk in chunks:
        m = _TRUNC.match(chunk)
        if m:
            if sign < 0 or truncation is not None:
                raise NovikovError(f"Malformed truncation term in {text!r}")
            exponent = m.group('e') or m.group('e2') or '1'
            truncation = parse_rational(exponent)
            continue
        m = _TERM.match(chunk)
        if not m or (m.group('c') is None and m.group('t') is None):
            raise NovikovError(f"Cannot parse term {chunk!r} in {text!r}")
        coeff = parse_rational(m.group('c')) if m.group('c') else Fraction(1)
        if m.group('t') is None:
            exponent = Fraction(0)
        else:
            exponent = parse_rational(m.group('e') or m.group('e2') or '1')
        terms.append((exponent, sign * coeff))
    return NovikovElement(tuple(terms), truncation)


@dataclass(frozen=True)
class NovikovRank:
    """
    Rank of a Novikov matrix over the Novikov field.

    determined is False when elimination met a pivot at or beyond the working
    order, or only truncated zeros remained to pivot on.
    """
    rank: int
    determined: bool
    pivots: Tuple[Tuple[int, int], ...] = ()
    reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'determined': self.determined,
            'pivots': [list(p) for p in self.pivots],
            'reason': self.reason,
        }


def matrix_rank(matrix: Any, truncation: Any) -> NovikovRank:
    """
    Rank by Gaussian elimination pivoting on least-valuation entries.

    Args:
        matrix: NovikovMatrix or rational sympy matrix
        truncation: Working order E; pivots must have valuation below E

    Returns:
        NovikovRank
    """
    bound = parse_rational(truncation)
    work = [list(row) for row in as_novikov_matrix(matrix).rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    rows_left = set(range(nrows))
    cols_left = set(range(ncols))
    pivots: List[Tuple[int, int]] = []

    while rows_left and cols_left:
        candidates = [
            (work[i][j].valuation(), i, j)
            for i in sorted(rows_left) for j in sorted(cols_left)
            if not work[i][j].is_zero
        ]
        if not candidates:
            unknown = any(
                work[i][j].truncation is not None for i in rows_left for j in cols_left
            )
            if unknown:
                return NovikovRank(len(pivots), False, tuple(pivots), 'only truncated zeros remain')
            break
        val, pi, pj = min(candidates)
        if val >= bound:
            return NovikovRank(len(pivots), False, tuple(pivots),
                               f'pivot valuation {format_rational(val)} is not below {format_rational(bound)}')
        logger.debug(f"Pivot at ({pi}, {pj}) with valuation {val}")
        inverse = invert(work[pi][pj], bound)
        for i in sorted(rows_left - {pi}):
            if work[i][pj].is_zero and work[i][pj].truncation is None:
                continue
            factor = work[i][pj] * inverse
            for j in cols_left:
                work[i][j] = work[i][j] - factor * work[pi][j]
        pivots.append((pi, pj))
        rows_left.discard(pi)
        cols_left.discard(pj)
    return NovikovRank(len(pivots), True, tuple(pivots))


def matrix_text(matrix: NovikovMatrix) -> List[List[str]]:
    """Entries in text form, row by row."""
    return [[format_text(x) for x in row] for row in matrix.rows]

