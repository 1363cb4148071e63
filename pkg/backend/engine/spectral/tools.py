"""
Spectral Sequence Tools
Filtration of a complex with total differential d = d_0 + d_1 + ..., where
d_k raises degree by 2k - 1, and the pages of the associated spectral sequence.

Filtration: F_p = C_{>=p} + (Im d_0 in degree p - 1). The first page is
H(C, d_0) and the pages are numbered from 2.
"""

from typing import Dict, List, Sequence, Tuple
import logging

import pandas as pd
import sympy

from common.errors import CurvatureError, SpectralError
from common.linalg import annihilator, hstack, identity_matrix, is_zero, nullspace, rank, span_basis, submatrix

from .schemas import FIRST_PAGE, FilteredComplex, PageData, SpectralReport, operators_from_corrections

logger = logging.getLogger(__name__)


class _Filtration:
    """Bases of F_p and Z_r^p with memoization."""

    def __init__(self, complex_: FilteredComplex):
        self.complex = complex_
        self.n = len(complex_)
        self.d = complex_.total()
        self.d0 = complex_.operator(0)
        self.low = complex_.min_degree
        self.high = complex_.max_degree + 1
        self._f: Dict[int, sympy.Matrix] = {}
        self._z: Dict[Tuple[int, int], sympy.Matrix] = {}

    def f(self, p: int) -> sympy.Matrix:
        if p <= self.low:
            return identity_matrix(self.n)
        if p > self.high:
            return sympy.zeros(self.n, 0)
        if p not in self._f:
            unit = identity_matrix(self.n)
            upper = [unit[:, i] for i in range(self.n) if self.complex.degrees[i] >= p]
            boundary = span_basis(self.d0 * hstack([unit[:, i] for i in self.complex.indices_in_degree(p)], self.n))
            self._f[p] = span_basis(hstack(upper + [boundary], self.n))
        return self._f[p]

    def z(self, r: int, p: int) -> sympy.Matrix:
        """Basis of {x in F_p : d x in F_{p+r}}; F_p itself for r <= 0."""
        if r <= 0:
            return self.f(p)
        key = (r, p)
        if key not in self._z:
            base = self.f(p)
            if base.cols == 0:
                self._z[key] = base
            else:
                condition = annihilator(self.f(p + r)) * self.d * base
                kernel = hstack(nullspace(condition), base.cols)
                self._z[key] = span_basis(base * kernel)
        return self._z[key]

    def dim_sum(self, *spaces: sympy.Matrix) -> int:
        return rank(hstack(list(spaces), self.n))

    def page_dim(self, r: int, p: int) -> int:
        boundary = self.d * self.z(r - 1, p - r + 1)
        return self.z(r, p).cols - self.dim_sum(self.z(r - 1, p + 1), boundary)

    def differential_rank(self, r: int, p: int) -> int:
        boundary = self.d * self.z(r - 1, p - r + 1)
        return self.z(r, p).cols - self.dim_sum(self.z(r + 1, p), self.z(r - 1, p + 1), boundary)


def filtration(complex_: FilteredComplex) -> List[Tuple[int, sympy.Matrix]]:
    """
    The filtration F_p for p from the lowest degree to one above the highest.

    Every F_p is checked to be closed under the total differential and to
    contain F_{p+1}.

    Args:
        complex_: FilteredComplex (already known to square to zero)

    Returns:
        [(p, basis matrix of F_p)], decreasing subspaces
    """
    data = _Filtration(complex_)
    chain = []
    for p in range(data.low, data.high + 1):
        basis = data.f(p)
        if basis.cols and not is_zero(annihilator(basis) * data.d * basis):
            raise SpectralError(f"F_{p} is not closed under the differential")
        smaller = data.f(p + 1)
        if smaller.cols and not is_zero(annihilator(basis) * smaller):
            raise SpectralError(f"F_{p + 1} is not contained in F_{p}")
        chain.append((p, basis))
    return chain


def homology_dims(complex_: FilteredComplex, k: int = 0) -> Dict[int, int]:
    """Homology of (C, d_k) per degree; meaningful for k = 0."""
    matrix = complex_.operator(k)
    if not is_zero(matrix * matrix):
        raise CurvatureError(f"d_{k} does not square to zero")
    n = len(complex_)
    out = {}
    for degree in complex_.graded_dims():
        idx = complex_.indices_in_degree(degree)
        out[degree] = len(idx) - rank(submatrix(matrix, list(range(n)), idx)) - rank(submatrix(matrix, idx, list(range(n))))
    return out


def total_homology_dim(complex_: FilteredComplex) -> int:
    """dim H(C, d) of the total differential, by elimination on the whole matrix."""
    return len(complex_) - 2 * rank(complex_.total())


def pages(complex_: FilteredComplex) -> SpectralReport:
    """
    All pages of the spectral sequence, from H(C, d_0) to the limit.

    Args:
        complex_: FilteredComplex

    Returns:
        SpectralReport; the last page is the limit page

    Raises:
        SpectralError: the first page or the limit disagree with the
            independently computed homology
    """
    data = _Filtration(complex_)
    filtration(complex_)
    first = homology_dims(complex_, 0)
    homology = total_homology_dim(complex_)
    if not len(complex_):
        return SpectralReport((), 0, ())

    levels = list(range(data.low, data.high + 1))
    span = complex_.max_degree - complex_.min_degree
    result: List[PageData] = []
    for r in range(1, span + 2):
        dims = tuple((p, data.page_dim(r, p)) for p in levels)
        ranks = tuple((p, data.differential_rank(r, p)) for p in levels)
        page = PageData(r + FIRST_PAGE - 1, dims, ranks)
        logger.debug(f"Page E_{page.r}: {page.to_dict()['dims']}")
        result.append(page)

    e2 = result[0]
    for p in levels:
        if e2.dim(p) != first.get(p, 0):
            raise SpectralError(f"First page has dimension {e2.dim(p)} at {p}, H(C, d_0) has {first.get(p, 0)}")
    for before, after in zip(result, result[1:]):
        if after.total != before.total - 2 * sum(r for _, r in before.differential_ranks):
            raise SpectralError(f"E_{after.r} is not the homology of E_{before.r}")
    if any(r for _, r in result[-1].differential_ranks):
        raise SpectralError(f"E_{result[-1].r} still has a nonzero differential")
    report = SpectralReport(tuple(result), homology, tuple(sorted(first.items())))
    if not report.converged:
        raise SpectralError(f"Limit page has total {report.limit.total}, H(C, d) has {homology}")
    logger.info(f"Spectral sequence: {len(result)} pages, limit total {homology}")
    return report


def morse_model(names: Sequence[str], indices: Sequence[int], d0: sympy.Matrix,
                corrections: Sequence[sympy.Matrix] = ()) -> FilteredComplex:
    """
    Filtered complex graded by Morse index.

    Args:
        names: Critical points
        indices: Morse index of each
        d0: Morse differential (degree -1)
        corrections: d_1, d_2, ... in order, d_k of degree 2k - 1

    Returns:
        FilteredComplex
    """
    if not is_zero(d0 * d0):
        raise CurvatureError("Morse differential does not square to zero")
    return FilteredComplex(tuple(names), tuple(indices), operators_from_corrections(d0, corrections))


def page_table(report: SpectralReport) -> pd.DataFrame:
    """Dimensions with one row per page and one column per filtration level."""
    rows = {f"E{page.r}": {p: d for p, d in page.dims} for page in report.pages}
    frame = pd.DataFrame.from_dict(rows, orient='index')
    if not frame.empty:
        frame = frame.reindex(sorted(frame.columns), axis=1).fillna(0).astype(int)
        frame['total'] = frame.sum(axis=1)
    return frame


def render_pages(report: SpectralReport) -> str:
    frame = page_table(report)
    if frame.empty:
        return '(empty complex)'
    return frame.to_string()
