"""
singular vectors in the degree-k layers of induced modules, critical density weights,
and the lifting test from the holonomic to the semiholonomic module
"""

import logging
from collections import defaultdict
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import Matrix as SympyMatrix
from sympy import Rational

from vermakit.errors import ContractError, InputError
from vermakit.liealg import BasisElement, ParabolicData
from vermakit.linalg import SparseRow, normalize_integral, nullspace, solve_affine
from vermakit.verma import (
    AlgebraElement,
    ModuleRealization,
    TermKey,
    Variant,
    _Engine,
    act,
    format_element,
    layer_basis,
    log_layer_size,
    term_weight,
)


def trivial_target(pd: ParabolicData) -> tuple[Fraction, ...]:
    """coroot eigenvalues of the trivial g_0 semisimple weight"""
    return tuple(Fraction(0) for _ in pd.semisimple_coroots())


@dataclass
class SingularVectorReport:
    """
    kernel_dimension counts the joint g_1 kernel among the layer terms searched:
    with a target it is the kernel inside that weight space only, not in the whole layer
    """

    k: int
    w: Fraction
    variant: Variant
    realization: ModuleRealization
    vectors: list[AlgebraElement]
    kernel_dimension: int
    highest_weight_dimension: int
    target: tuple[Fraction, ...] | None = None

    @property
    def dimensions(self) -> tuple[int, int]:
        return (self.kernel_dimension, self.highest_weight_dimension)

    def to_dict(self) -> dict:
        return {
            'n': self.realization.pd.n,
            'p': self.realization.pd.p,
            'k': self.k,
            'w': str(self.w),
            'variant': self.variant.value,
            'module': self.realization.name,
            'target': None if self.target is None else [str(v) for v in self.target],
            'kernel_dimension': self.kernel_dimension,
            'highest_weight_dimension': self.highest_weight_dimension,
            'vectors': [format_element(v) for v in self.vectors],
        }


@dataclass
class PreimageSpace:
    """particular + span(homogeneous): every highest weight preimage under symmetrization"""

    particular: AlgebraElement
    homogeneous: list[AlgebraElement]

    @property
    def dimension(self) -> int:
        return len(self.homogeneous)


@dataclass
class Obstruction:
    generator: BasisElement
    residual: AlgebraElement
    constant: bool

    def to_dict(self) -> dict:
        return {
            'generator': self.generator.basis_name,
            'residual': format_element(self.residual),
            'constant': self.constant,
        }


@dataclass
class CoverReport:
    exists: bool
    preimages: PreimageSpace
    witness: AlgebraElement | None = None
    obstruction: Obstruction | None = None
    obstructions: list[Obstruction] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'exists': self.exists,
            'witness': None if self.witness is None else format_element(self.witness),
            'preimage_dimension': self.preimages.dimension,
            'particular': format_element(self.preimages.particular),
            'obstruction': None if self.obstruction is None else self.obstruction.to_dict(),
            'obstructions': [item.to_dict() for item in self.obstructions],
        }


def _restricted_basis(
    k: int, r: ModuleRealization, variant: Variant, target: tuple[Fraction, ...] | None
) -> list[TermKey]:
    basis = layer_basis(k, r, variant)
    if target is None:
        return basis
    if len(target) != len(r.pd.semisimple_coroots()):
        raise InputError(f'target needs {len(r.pd.semisimple_coroots())} coroot eigenvalues')
    return [key for key in basis if term_weight(key[0], key[1], r) == tuple(target)]


def _action_rows(
    engine: _Engine, letters: Iterable[BasisElement], columns: list[TermKey]
) -> list[SparseRow]:
    """one sparse row per (letter, output term): coefficients of letter . column"""
    rows: dict[tuple[BasisElement, TermKey], SparseRow] = defaultdict(dict)
    for letter in letters:
        for col, (word, index) in enumerate(columns):
            for term, value in engine.act_word(letter, word, index).items():
                rows[(letter, term)][col] = value
    return list(rows.values())


def _to_element(
    vector: list[Fraction], columns: list[TermKey], r: ModuleRealization, variant: Variant
) -> AlgebraElement:
    return AlgebraElement(
        {key: value for key, value in zip(columns, vector) if value}, r, variant
    )


def is_singular(e: AlgebraElement) -> bool:
    """killed by all of g_1 and by the raising operators of g_0"""
    letters = e.pd.g_plus + e.pd.raising_operators()
    return all(act(letter, e).is_zero for letter in letters)


def g1_action_matrix(
    z: BasisElement, k: int, r: ModuleRealization, variant: Variant
) -> SympyMatrix:
    """
    matrix of act(z, .) from layer k to layer k-1, rows and columns in layer_basis order
    """
    if z.degree != 1:
        raise ContractError(f'{z.basis_name} is not in g_1')
    if k < 1:
        raise InputError(f'layer degree must be at least 1, got {k}')
    r.pd.check(z)
    sources = layer_basis(k, r, variant)
    targets = {key: row for row, key in enumerate(layer_basis(k - 1, r, variant))}
    engine = _Engine(r, variant)
    matrix = SympyMatrix.zeros(len(targets), len(sources))
    for col, (word, index) in enumerate(sources):
        for term, value in engine.act_word(z, word, index).items():
            assert term in targets, f'{z} maps layer {k} outside layer {k - 1}'
            matrix[targets[term], col] = Rational(value.numerator, value.denominator)
    return matrix


def find_singular_vectors(
    k: int,
    r: ModuleRealization,
    variant: Variant,
    target: tuple[Fraction, ...] | None = None,
) -> SingularVectorReport:
    """
    basis of the singular vectors of degree k

    Parameters
    ----------
    k : layer degree, at least 1
    r : module realization, its density weight is fixed
    variant : holonomic or semiholonomic module
    target : coroot eigenvalues to restrict to (H[i], i != p, increasing i); None searches all weights

    Returns
    -------
    report with the joint g_1 kernel dimension (within the target weight space when
    one is given), the highest weight kernel dimension
    and a normalized basis of the latter
    """
    if k < 1:
        raise InputError(f'layer degree must be at least 1, got {k}')
    log_layer_size(k, r, variant)
    columns = _restricted_basis(k, r, variant, target)
    engine = _Engine(r, variant)
    z_rows = _action_rows(engine, r.pd.g_plus, columns)
    raising_rows = _action_rows(engine, r.pd.raising_operators(), columns)
    kernel = nullspace(z_rows, len(columns))
    highest = nullspace(z_rows + raising_rows, len(columns))
    vectors = [
        _to_element(normalize_integral(vector), columns, r, variant) for vector in highest
    ]
    logging.info(
        f'k={k} over {r.name}: {len(columns)} unknowns, g_1 kernel {len(kernel)}, '
        f'highest weight kernel {len(highest)}'
    )
    return SingularVectorReport(
        k=k,
        w=r.weight,
        variant=variant,
        realization=r,
        vectors=vectors,
        kernel_dimension=len(kernel),
        highest_weight_dimension=len(highest),
        target=None if target is None else tuple(target),
    )


def scan_critical_weights(
    k: int,
    family: Callable[[Fraction], ModuleRealization],
    variant: Variant,
    wset: Iterable[Fraction | int],
    restrict_trivial: bool = True,
) -> list[tuple[Fraction, int]]:
    """
    highest weight kernel dimension for each density weight in wset, in the given order
    """
    results = []
    for w in wset:
        r = family(Fraction(w))
        target = trivial_target(r.pd) if restrict_trivial else None
        report = find_singular_vectors(k, r, variant, target)
        results.append((Fraction(w), report.highest_weight_dimension))
    return results


def _common_weight(s: AlgebraElement) -> tuple[Fraction, ...]:
    weights = {term_weight(word, index, s.realization) for word, index in s.terms}
    if len(weights) != 1:
        raise ContractError('input is not a weight vector for the semisimple part of g_0')
    return weights.pop()


def _check_cover_input(s: AlgebraElement) -> int:
    if s.variant != Variant.HOLONOMIC:
        raise ContractError('the vector to cover must be holonomic')
    if s.is_zero:
        raise ContractError('the zero vector has no meaningful cover')
    if not s.is_normal:
        raise ContractError('the vector to cover must be in normal form')
    k = s.degree
    if not is_singular(s):
        raise ContractError(f'{format_element(s)} is not a singular vector')
    return k


def cover_preimages(s: AlgebraElement) -> PreimageSpace:
    """
    affine space of semiholonomic highest weight vectors of the weight of s that symmetrize to s
    """
    k = _check_cover_input(s)
    r = s.realization
    target = _common_weight(s)
    columns = _restricted_basis(k, r, Variant.SEMIHOLONOMIC, target)
    engine = _Engine(r, Variant.SEMIHOLONOMIC)
    rows = _action_rows(engine, r.pd.raising_operators(), columns)
    rhs = [Fraction(0)] * len(rows)

    symmetric: dict[TermKey, SparseRow] = defaultdict(dict)
    for col, (word, index) in enumerate(columns):
        key = (tuple(sorted(word, key=lambda letter: letter.sort_key)), index)
        symmetric[key][col] = symmetric[key].get(col, Fraction(0)) + 1
    for key in s.terms:
        symmetric.setdefault(key, {})
    for key, row in symmetric.items():
        rows.append(row)
        rhs.append(s.terms.get(key, Fraction(0)))

    particular, homogeneous = solve_affine(rows, rhs, len(columns))
    if particular is None:
        raise ContractError(f'{format_element(s)} has no highest weight preimage')
    logging.info(f'Preimages of a degree {k} vector: affine dimension {len(homogeneous)}')
    return PreimageSpace(
        particular=_to_element(particular, columns, r, Variant.SEMIHOLONOMIC),
        homogeneous=[
            _to_element(normalize_integral(vector), columns, r, Variant.SEMIHOLONOMIC)
            for vector in homogeneous
        ],
    )


def _solve_for_coefficients(
    generators: Iterable[BasisElement], space: PreimageSpace
) -> list[Fraction] | None:
    """coefficients c with z . (particular + sum c_i h_i) = 0 for every generator z"""
    rows: dict[tuple[BasisElement, TermKey], SparseRow] = defaultdict(dict)
    rhs: dict[tuple[BasisElement, TermKey], Fraction] = defaultdict(Fraction)
    for z in generators:
        for term, value in act(z, space.particular).terms.items():
            rhs[(z, term)] -= value
            rows.setdefault((z, term), {})
        for column, direction in enumerate(space.homogeneous):
            for term, value in act(z, direction).terms.items():
                rows[(z, term)][column] = value
    keys = list(rows)
    solution, _ = solve_affine([rows[key] for key in keys], [rhs[key] for key in keys], space.dimension)
    return solution


def cover_check(s: AlgebraElement) -> CoverReport:
    """
    decides whether a holonomic singular vector is covered by a semiholonomic one

    returns a verified witness, or the g_1 generators that no preimage can satisfy,
    each with the residual on the particular preimage
    """
    space = cover_preimages(s)
    generators = s.pd.g_plus
    coefficients = _solve_for_coefficients(generators, space)
    if coefficients is not None:
        witness = space.particular
        for coefficient, direction in zip(coefficients, space.homogeneous):
            witness = witness + coefficient * direction
        assert is_singular(witness), 'witness failed the singularity recheck'
        return CoverReport(exists=True, preimages=space, witness=witness)

    obstructions = []
    for z in generators:
        if _solve_for_coefficients([z], space) is not None:
            continue
        constant = all(act(z, direction).is_zero for direction in space.homogeneous)
        obstructions.append(Obstruction(z, act(z, space.particular), constant))
    chosen = next((item for item in obstructions if item.constant), None)
    if chosen is None and obstructions:
        chosen = obstructions[0]
    logging.info(
        f'No lift: {len(obstructions)} obstructing generators, '
        f'{"none" if chosen is None else chosen.generator.basis_name} reported'
    )
    return CoverReport(
        exists=False, preimages=space, obstruction=chosen, obstructions=obstructions
    )
