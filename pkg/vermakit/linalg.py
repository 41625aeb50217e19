"""
exact rational elimination on sparse row systems, backed by sympy's DomainMatrix over QQ
"""

import logging
from fractions import Fraction
from math import gcd

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

SparseRow = dict[int, Fraction]


def _to_domain(rows: list[SparseRow], ncols: int) -> DomainMatrix:
    dense = []
    for row in rows:
        line = [QQ(0)] * ncols
        for col, value in row.items():
            line[col] = QQ(value.numerator, value.denominator)
        dense.append(line)
    return DomainMatrix(dense, (len(rows), ncols), QQ)


def to_fraction(value) -> Fraction:
    """converts a sympy Rational (or QQ element) into a Fraction"""
    if isinstance(value, Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


def _rref(rows: list[SparseRow], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    if not rows:
        return [], ()
    reduced, pivots = _to_domain(rows, ncols).rref()
    matrix = reduced.to_Matrix()
    dense = [
        [to_fraction(matrix[i, j]) for j in range(ncols)] for i in range(len(pivots))
    ]
    return dense, tuple(pivots)


def _kernel_from_rref(
    reduced: list[list[Fraction]], pivots: tuple[int, ...], ncols: int
) -> list[list[Fraction]]:
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row][free]
        basis.append(vector)
    return basis


def nullspace(rows: list[SparseRow], ncols: int) -> list[list[Fraction]]:
    """
    basis of {x : row . x = 0 for every row}, one vector per free column of the rref

    Parameters
    ----------
    rows : sparse constraint rows, column index -> coefficient
    ncols : number of unknowns

    Returns
    -------
    dense basis vectors, in increasing order of their free column
    """
    reduced, pivots = _rref(rows, ncols)
    logging.debug(f'rref of {len(rows)}x{ncols} system has rank {len(pivots)}')
    return _kernel_from_rref(reduced, pivots, ncols)


def solve_affine(
    rows: list[SparseRow], rhs: list[Fraction], ncols: int
) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
    """
    solves rows . x = rhs exactly

    returns the particular solution with every free unknown set to zero
    (None if the system is inconsistent) and a basis of the homogeneous solutions
    """
    assert len(rows) == len(rhs), 'one right-hand side entry per row'
    augmented = []
    for row, value in zip(rows, rhs):
        line = dict(row)
        if value:
            line[ncols] = value
        augmented.append(line)
    reduced, pivots = _rref(augmented, ncols + 1)
    if ncols in pivots:
        return None, nullspace(rows, ncols)
    particular = [Fraction(0)] * ncols
    for row, pivot in enumerate(pivots):
        particular[pivot] = reduced[row][ncols]
    homogeneous = _kernel_from_rref([line[:ncols] for line in reduced], pivots, ncols)
    return particular, homogeneous


def normalize_integral(vector: list[Fraction]) -> list[Fraction]:
    """
    clears denominators, divides out the content and makes the first nonzero entry positive
    """
    nonzero = [value for value in vector if value]
    if not nonzero:
        return list(vector)
    common = 1
    for value in nonzero:
        common = common * value.denominator // gcd(common, value.denominator)
    scaled = [value * common for value in vector]
    content = 0
    for value in scaled:
        content = gcd(content, int(value))
    sign = 1 if next(value for value in scaled if value) > 0 else -1
    return [Fraction(int(value) * sign, content) for value in scaled]
