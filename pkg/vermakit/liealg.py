"""
sl(n) with the |1|-grading cut at block position p

basis: elementary matrices E[i,j] (i != j) and simple coroots H[i] = E[i,i] - E[i+1,i+1],
indices are 1-based throughout, matching the printed forms
"""

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from vermakit.errors import ContractError, InputError

@dataclass(frozen=True, order=True)
class BasisElement:
    """
    a basis letter, either E[i,j] (kind 'E') or H[i] (kind 'H', j unused and 0)
    """

    kind: str
    i: int
    j: int
    degree: int

    @property
    def is_coroot(self) -> bool:
        return self.kind == 'H'

    @property
    def sort_key(self) -> tuple[int, int, int]:
        # coroots after all off-diagonal letters
        return (1 if self.is_coroot else 0, self.i, self.j)

    @property
    def name(self) -> str:
        if self.is_coroot:
            return f'H[{self.i}]'
        if self.degree == -1:
            return f'y[{self.i},{self.j}]'
        return f'E[{self.i},{self.j}]'

    @property
    def basis_name(self) -> str:
        """name in the E/H convention regardless of degree"""
        return f'H[{self.i}]' if self.is_coroot else f'E[{self.i},{self.j}]'

    def __str__(self) -> str:
        return self.name


# an element of the Lie algebra, expanded in the basis; zero coefficients are never stored
LieElement = dict[BasisElement, Fraction]
Matrix = dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class ParabolicData:
    """
    sl(n) together with the crossed node p of its Dynkin diagram
    """

    n: int
    p: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError(f'n must be an integer >= 2, got {self.n!r}')
        if not isinstance(self.p, int) or not 1 <= self.p <= self.n - 1:
            raise InputError(f'p must satisfy 1 <= p <= n-1, got p={self.p!r}, n={self.n}')

    @property
    def q(self) -> int:
        return self.n - self.p

    @property
    def dimension(self) -> int:
        return self.n * self.n - 1

    def degree_of(self, i: int, j: int) -> int:
        if i > self.p >= j:
            return -1
        if i <= self.p < j:
            return 1
        return 0

    def e(self, i: int, j: int) -> BasisElement:
        """the off-diagonal letter E[i,j]"""
        if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
            raise InputError(f'E[{i},{j}] is not a basis element of sl({self.n})')
        return BasisElement('E', i, j, self.degree_of(i, j))

    def h(self, i: int) -> BasisElement:
        """the simple coroot H[i]"""
        if not 1 <= i <= self.n - 1:
            raise InputError(f'H[{i}] is not a basis element of sl({self.n})')
        return BasisElement('H', i, 0, 0)

    @cached_property
    def basis(self) -> tuple[BasisElement, ...]:
        off_diagonal = [
            self.e(i, j)
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
            if i != j
        ]
        return tuple(off_diagonal + [self.h(i) for i in range(1, self.n)])

    def part(self, degree: int) -> tuple[BasisElement, ...]:
        """basis of the graded piece g_degree, in basis order"""
        return tuple(x for x in self.basis if x.degree == degree)

    @property
    def g_minus(self) -> tuple[BasisElement, ...]:
        return self.part(-1)

    @property
    def g_zero(self) -> tuple[BasisElement, ...]:
        return self.part(0)

    @property
    def g_plus(self) -> tuple[BasisElement, ...]:
        return self.part(1)

    @property
    def parabolic(self) -> tuple[BasisElement, ...]:
        return self.g_zero + self.g_plus

    def raising_operators(self) -> tuple[BasisElement, ...]:
        """simple root vectors of the semisimple part of g_0: E[i,i+1] with i != p"""
        return tuple(self.e(i, i + 1) for i in range(1, self.n) if i != self.p)

    def semisimple_coroots(self) -> tuple[BasisElement, ...]:
        return tuple(self.h(i) for i in range(1, self.n) if i != self.p)

    def check(self, x: BasisElement):
        """rejects letters that belong to a different sl(n)"""
        if x.is_coroot:
            if not 1 <= x.i <= self.n - 1:
                raise InputError(f'{x.basis_name} is out of range for n={self.n}')
        elif not (1 <= x.i <= self.n and 1 <= x.j <= self.n) or x.degree != self.degree_of(
            x.i, x.j
        ):
            raise InputError(f'{x.basis_name} does not belong to sl({self.n}), p={self.p}')

    @cached_property
    def bracket_table(self) -> dict[tuple[BasisElement, BasisElement], LieElement]:
        return {
            (a, b): from_matrix(_commutator(to_matrix(a), to_matrix(b)), self)
            for a in self.basis
            for b in self.basis
        }


def to_matrix(x: BasisElement) -> Matrix:
    if x.is_coroot:
        return {(x.i, x.i): Fraction(1), (x.i + 1, x.i + 1): Fraction(-1)}
    return {(x.i, x.j): Fraction(1)}


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    product: Matrix = {}
    for (i, k), left in a.items():
        for (k2, j), right in b.items():
            if k == k2:
                product[(i, j)] = product.get((i, j), Fraction(0)) + left * right
    for (i, k), left in b.items():
        for (k2, j), right in a.items():
            if k == k2:
                product[(i, j)] = product.get((i, j), Fraction(0)) - left * right
    return {key: value for key, value in product.items() if value}


def from_matrix(m: Matrix, pd: ParabolicData) -> LieElement:
    """
    expands a trace-free matrix in the basis

    the diagonal part goes to coroots: the coefficient of H[k] is the partial
    sum of the first k diagonal entries
    """
    trace = sum((v for (i, j), v in m.items() if i == j), Fraction(0))
    if trace:
        raise ContractError(f'matrix has trace {trace}, not an element of sl({pd.n})')
    element: LieElement = {}
    for (i, j), value in sorted(m.items()):
        if i != j and value:
            element[pd.e(i, j)] = value
    partial = Fraction(0)
    for k in range(1, pd.n):
        partial += m.get((k, k), Fraction(0))
        if partial:
            element[pd.h(k)] = partial
    return element


def lie_to_matrix(x: Mapping[BasisElement, Fraction]) -> Matrix:
    total: Matrix = {}
    for letter, coefficient in x.items():
        for key, value in to_matrix(letter).items():
            total[key] = total.get(key, Fraction(0)) + coefficient * value
    return {key: value for key, value in total.items() if value}


def bracket(a: BasisElement, b: BasisElement, pd: ParabolicData) -> LieElement:
    """
    [a, b] expanded in the basis of pd

    Parameters
    ----------
    a : left letter
    b : right letter
    pd : the graded algebra both letters live in

    Returns
    -------
    dictionary basis element -> nonzero coefficient
    """
    pd.check(a)
    pd.check(b)
    return dict(pd.bracket_table[(a, b)])


def grading_element(pd: ParabolicData) -> tuple[Fraction, ...]:
    """diagonal of E: q/n on the first p slots, -p/n on the remaining q"""
    return tuple(
        Fraction(pd.q, pd.n) if i < pd.p else Fraction(-pd.p, pd.n) for i in range(pd.n)
    )


def grading_element_lie(pd: ParabolicData) -> LieElement:
    """the grading element written in the coroot basis"""
    diagonal = grading_element(pd)
    return from_matrix({(i + 1, i + 1): value for i, value in enumerate(diagonal)}, pd)


def inverse_cartan_row(n: int, p: int) -> tuple[Fraction, ...]:
    """row p of the inverse A_{n-1} Cartan matrix"""
    ParabolicData(n, p)
    return tuple(
        Fraction(min(p, j) * (n - max(p, j)), n) for j in range(1, n)
    )


def density_functional(
    pd: ParabolicData, h: BasisElement | Mapping[BasisElement, Fraction]
) -> Fraction:
    """
    tau(h) = n/(pq) * (trace of h over the first p diagonal slots)

    normalized so that tau(E) = 1; only H[p] contributes among basis elements
    """
    element = {h: Fraction(1)} if isinstance(h, BasisElement) else dict(h)
    total = Fraction(0)
    for letter, coefficient in element.items():
        if letter.degree != 0:
            raise ContractError(f'{letter.basis_name} has degree {letter.degree}, expected 0')
        if letter.is_coroot and letter.i == pd.p:
            total += coefficient
    return total * Fraction(pd.n, pd.p * pd.q)


def cartan_matrix(n: int) -> list[list[int]]:
    """A_{n-1} Cartan matrix"""
    size = n - 1
    return [
        [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(size)]
        for i in range(size)
    ]
