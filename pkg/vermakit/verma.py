"""
holonomic and semiholonomic induced modules over a |1|-graded sl(n)

elements are finite sums  c * X1 X2 ... Xk (x) e_i  with letters from the sl(n) basis
and e_i a basis vector of a concrete g_0-module (g_1 acting by zero). In normal form
every letter lies in g_-1; the holonomic variant also sorts the letters, the
semiholonomic one keeps their order (tensor algebra of g_-1)
"""

import logging
import random
import re
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement, product

from sympy import Matrix as SympyMatrix
from sympy import Rational

from vermakit.errors import ContractError, InputError
from vermakit.liealg import (
    BasisElement,
    LieElement,
    ParabolicData,
    bracket,
    density_functional,
    to_matrix,
)

Word = tuple[BasisElement, ...]
TermKey = tuple[Word, int]
ActionMatrix = tuple[tuple[Fraction, ...], ...]


class Variant(str, Enum):
    HOLONOMIC = 'holonomic'
    SEMIHOLONOMIC = 'semiholonomic'


@dataclass(frozen=True)
class ModuleRealization:
    """
    a finite dimensional g_0-module, extended by zero on g_1

    action[h][i][j] is the coefficient of e_i in h . e_j; weight is the density twist
    already included in the matrices
    """

    name: str
    pd: ParabolicData
    dimension: int
    weight: Fraction
    action: Mapping[BasisElement, ActionMatrix]

    def __post_init__(self):
        missing = [h.basis_name for h in self.pd.g_zero if h not in self.action]
        if missing:
            raise ContractError(f'realization {self.name} has no matrix for {", ".join(missing)}')
        for h, matrix in self.action.items():
            if len(matrix) != self.dimension or any(len(row) != self.dimension for row in matrix):
                raise ContractError(f'{h.basis_name} matrix of {self.name} has the wrong shape')

    def column(self, h: BasisElement, j: int) -> dict[int, Fraction]:
        """h . e_j as index -> coefficient; zero for letters of g_1"""
        if h.degree == 1:
            return {}
        if h.degree != 0:
            raise ContractError(f'{h.basis_name} does not act on {self.name}')
        matrix = self.action[h]
        return {i: matrix[i][j] for i in range(self.dimension) if matrix[i][j]}

    def sympy_matrix(self, h: BasisElement) -> SympyMatrix:
        return SympyMatrix(
            [[Rational(v.numerator, v.denominator) for v in row] for row in self.action[h]]
        )

    def basis_weight(self, index: int) -> tuple[Fraction, ...]:
        """eigenvalues of the semisimple coroots on e_index"""
        values = []
        for h in self.pd.semisimple_coroots():
            matrix = self.action[h]
            if any(matrix[i][index] for i in range(self.dimension) if i != index):
                raise ContractError(f'e{index} of {self.name} is not a weight vector for {h}')
            values.append(matrix[index][index])
        return tuple(values)


def _freeze(matrix: list[list[Fraction]]) -> ActionMatrix:
    return tuple(tuple(row) for row in matrix)


def _identity(dimension: int, scale: Fraction) -> list[list[Fraction]]:
    return [[scale if i == j else Fraction(0) for j in range(dimension)] for i in range(dimension)]


def _add(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    return [[x + y for x, y in zip(row_a, row_b)] for row_a, row_b in zip(a, b)]


def density(pd: ParabolicData, w: Fraction | int) -> ModuleRealization:
    """the one dimensional module R[w]: h acts by w * tau(h)"""
    w = Fraction(w)
    return validated(
        ModuleRealization(
            name=f'R[{w}]',
            pd=pd,
            dimension=1,
            weight=w,
            action={h: ((w * density_functional(pd, h),),) for h in pd.g_zero},
        )
    )


def density_family(pd: ParabolicData):
    """w -> R[w], the family scanned for critical weights"""
    return lambda w: density(pd, w)


def block_standard(
    pd: ParabolicData, block: int = 1, dual: bool = False, w: Fraction | int = 0
) -> ModuleRealization:
    """
    standard representation of the gl block (1: first p indices, 2: last q) or its
    dual, twisted by the density R[w]
    """
    if block not in (1, 2):
        raise InputError(f'block must be 1 or 2, got {block}')
    indices = list(range(1, pd.p + 1)) if block == 1 else list(range(pd.p + 1, pd.n + 1))
    w = Fraction(w)
    size = len(indices)
    action = {}
    for h in pd.g_zero:
        entries = to_matrix(h)
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for a, row in enumerate(indices):
            for b, col in enumerate(indices):
                value = entries.get((row, col), Fraction(0))
                if dual:
                    matrix[b][a] -= value
                else:
                    matrix[a][b] += value
        action[h] = _freeze(_add(matrix, _identity(size, w * density_functional(pd, h))))
    star = '*' if dual else ''
    return validated(ModuleRealization(f'V{block}{star}[{w}]', pd, size, w, action))


def tensor(first: ModuleRealization, second: ModuleRealization) -> ModuleRealization:
    """first (x) second with basis e_i (x) f_j at index i * dim(second) + j"""
    if first.pd != second.pd:
        raise ContractError('cannot tensor realizations of different algebras')
    size = first.dimension * second.dimension
    action = {}
    for h in first.pd.g_zero:
        a, b = first.action[h], second.action[h]
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for i, j, k, l in _quadruples(first.dimension, second.dimension):
            value = Fraction(0)
            if j == l:
                value += a[i][k]
            if i == k:
                value += b[j][l]
            if value:
                matrix[i * second.dimension + j][k * second.dimension + l] = value
        action[h] = _freeze(matrix)
    return validated(
        ModuleRealization(
            f'{first.name}(x){second.name}',
            first.pd,
            size,
            first.weight + second.weight,
            action,
        )
    )


def _quadruples(d1: int, d2: int) -> Iterable[tuple[int, int, int, int]]:
    return product(range(d1), range(d2), range(d1), range(d2))


def _square(r: ModuleRealization, symmetric: bool) -> ModuleRealization:
    if symmetric:
        pairs = list(combinations_with_replacement(range(r.dimension), 2))
    else:
        pairs = [(i, j) for i, j in combinations_with_replacement(range(r.dimension), 2) if i < j]
    position = {pair: index for index, pair in enumerate(pairs)}
    action = {}
    for h in r.pd.g_zero:
        m = r.action[h]
        matrix = [[Fraction(0)] * len(pairs) for _ in pairs]
        for col, (i, j) in enumerate(pairs):
            # h(e_i e_j) = (h e_i) e_j + e_i (h e_j)
            for a in range(r.dimension):
                for left, right, value in ((a, j, m[a][i]), (i, a, m[a][j])):
                    if not value:
                        continue
                    if left == right and not symmetric:
                        continue
                    sign = 1
                    if left > right:
                        left, right = right, left
                        sign = 1 if symmetric else -1
                    matrix[position[(left, right)]][col] += sign * value
        action[h] = _freeze(matrix)
    kind = 'S2' if symmetric else 'L2'
    return validated(
        ModuleRealization(f'{kind}({r.name})', r.pd, len(pairs), 2 * r.weight, action)
    )


def symmetric_square(r: ModuleRealization) -> ModuleRealization:
    return _square(r, symmetric=True)


def exterior_square(r: ModuleRealization) -> ModuleRealization:
    return _square(r, symmetric=False)


def representation_defect(r: ModuleRealization) -> list[tuple[BasisElement, BasisElement]]:
    """
    pairs of g_0 letters for which [rho(a), rho(b)] != rho([a, b]); empty for a valid module
    """
    failures = []
    for a, b in combinations_with_replacement(r.pd.g_zero, 2):
        left = r.sympy_matrix(a) * r.sympy_matrix(b) - r.sympy_matrix(b) * r.sympy_matrix(a)
        right = SympyMatrix.zeros(r.dimension, r.dimension)
        for letter, coefficient in bracket(a, b, r.pd).items():
            right += Rational(coefficient.numerator, coefficient.denominator) * r.sympy_matrix(letter)
        if left != right:
            failures.append((a, b))
    return failures


def validated(r: ModuleRealization) -> ModuleRealization:
    """every constructor passes its result through here"""
    failures = representation_defect(r)
    if failures:
        pairs = ', '.join(f'[{a.basis_name}, {b.basis_name}]' for a, b in failures)
        raise ContractError(f'{r.name} does not respect the bracket on {pairs}')
    return r


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    terms: Mapping[TermKey, Fraction]
    realization: ModuleRealization
    variant: Variant

    def __post_init__(self):
        cleaned = {key: Fraction(value) for key, value in self.terms.items() if value}
        object.__setattr__(self, 'terms', cleaned)

    @property
    def pd(self) -> ParabolicData:
        return self.realization.pd

    def _compatible(self, other: 'AlgebraElement'):
        if self.variant != other.variant:
            raise ContractError(f'cannot combine {self.variant.value} and {other.variant.value} elements')
        if self.realization != other.realization:
            raise ContractError(
                f'cannot combine elements over {self.realization.name} and {other.realization.name}'
            )

    def _new(self, terms: Mapping[TermKey, Fraction]) -> 'AlgebraElement':
        return AlgebraElement(terms, self.realization, self.variant)

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._compatible(other)
        return self._new(_merge([self.terms, other.terms], [1, 1]))

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._compatible(other)
        return self._new(_merge([self.terms, other.terms], [1, -1]))

    def __neg__(self) -> 'AlgebraElement':
        return self._new({key: -value for key, value in self.terms.items()})

    def __mul__(self, scalar: Fraction | int) -> 'AlgebraElement':
        return self._new({key: value * scalar for key, value in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.variant == other.variant
            and self.realization == other.realization
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variant, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f'AlgebraElement({format_element(self)!r}, {self.realization.name}, {self.variant.value})'

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_normal(self) -> bool:
        for word, _ in self.terms:
            if any(letter.degree != -1 for letter in word):
                return False
            if self.variant == Variant.HOLONOMIC and list(word) != sorted(word, key=_letter_key):
                return False
        return True

    def degrees(self) -> set[int]:
        return {len(word) for word, _ in self.terms}

    @property
    def degree(self) -> int:
        """common word length of a homogeneous element"""
        found = self.degrees()
        if len(found) > 1:
            raise ContractError(f'element mixes degrees {sorted(found)}')
        return found.pop() if found else 0

    def coefficient(self, word: Word, index: int = 0) -> Fraction:
        return self.terms.get((word, index), Fraction(0))


def _letter_key(letter: BasisElement) -> tuple[int, int, int]:
    return letter.sort_key


def _merge(parts: list[Mapping[TermKey, Fraction]], scales: list[Fraction | int]) -> dict:
    total: dict[TermKey, Fraction] = defaultdict(Fraction)
    for part, scale in zip(parts, scales):
        for key, value in part.items():
            total[key] += value * scale
    return {key: value for key, value in total.items() if value}


def element(
    terms: Mapping[TermKey, Fraction | int] | Iterable[tuple[Word, int, Fraction | int]],
    realization: ModuleRealization,
    variant: Variant,
) -> AlgebraElement:
    """builds an element from a mapping or from (word, index, coefficient) triples"""
    if isinstance(terms, Mapping):
        return AlgebraElement(dict(terms), realization, variant)
    collected: dict[TermKey, Fraction] = defaultdict(Fraction)
    for word, index, coefficient in terms:
        collected[(tuple(word), index)] += Fraction(coefficient)
    return AlgebraElement(collected, realization, variant)


def generator(realization: ModuleRealization, variant: Variant, index: int = 0) -> AlgebraElement:
    """the empty word on e_index"""
    return AlgebraElement({((), index): Fraction(1)}, realization, variant)


class _Engine:
    """
    left action of sl(n) on normal-form terms, memoized for the lifetime of one computation
    """

    def __init__(self, realization: ModuleRealization, variant: Variant):
        self.realization = realization
        self.pd = realization.pd
        self.holonomic = variant == Variant.HOLONOMIC
        self._memo: dict[tuple[BasisElement, Word, int], dict[TermKey, Fraction]] = {}

    def act_word(self, x: BasisElement, word: Word, index: int) -> dict[TermKey, Fraction]:
        """x . (word (x) e_index) for a normal-form word"""
        key = (x, word, index)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if x.degree == -1:
            new = (x,) + word
            if self.holonomic:
                new = tuple(sorted(new, key=_letter_key))
            result = {(new, index): Fraction(1)}
        elif not word:
            result = {((), i): value for i, value in self.realization.column(x, index).items()}
        else:
            # x X rest = X (x rest) + [x, X] rest
            head, rest = word[0], word[1:]
            total: dict[TermKey, Fraction] = defaultdict(Fraction)
            for (inner, j), c in self.act_word(x, rest, index).items():
                for term, c2 in self.act_word(head, inner, j).items():
                    total[term] += c * c2
            for letter, c in self.pd.bracket_table[(x, head)].items():
                for term, c2 in self.act_word(letter, rest, index).items():
                    total[term] += c * c2
            result = {term: value for term, value in total.items() if value}
        self._memo[key] = result
        return result

    def act_terms(self, x: BasisElement, terms: Mapping[TermKey, Fraction]) -> dict[TermKey, Fraction]:
        total: dict[TermKey, Fraction] = defaultdict(Fraction)
        for (word, index), c in terms.items():
            for term, c2 in self.act_word(x, word, index).items():
                total[term] += c * c2
        return {term: value for term, value in total.items() if value}

    def normal_terms(self, terms: Mapping[TermKey, Fraction]) -> dict[TermKey, Fraction]:
        total: dict[TermKey, Fraction] = defaultdict(Fraction)
        for (word, index), c in terms.items():
            current: dict[TermKey, Fraction] = {((), index): Fraction(1)}
            for letter in reversed(word):
                current = self.act_terms(letter, current)
            for term, c2 in current.items():
                total[term] += c * c2
        return {term: value for term, value in total.items() if value}


def _redexes(word: Word, holonomic: bool) -> list[tuple[str, int]]:
    found = []
    for i in range(len(word) - 1):
        left, right = word[i], word[i + 1]
        if left.degree >= 0 and right.degree == -1:
            found.append(('swap', i))
        elif holonomic and left.degree == right.degree == -1 and _letter_key(left) > _letter_key(right):
            found.append(('sort', i))
    if word and word[-1].degree >= 0:
        found.append(('absorb', len(word) - 1))
    return found


def _rewrite_once(
    word: Word, index: int, rule: str, position: int, r: ModuleRealization
) -> dict[TermKey, Fraction]:
    if rule == 'absorb':
        return {(word[:-1], i): value for i, value in r.column(word[-1], index).items()}
    left, right = word[position], word[position + 1]
    swapped = word[:position] + (right, left) + word[position + 2 :]
    result: dict[TermKey, Fraction] = defaultdict(Fraction)
    result[(swapped, index)] += 1
    if rule == 'swap':
        for letter, c in bracket(left, right, r.pd).items():
            result[(word[:position] + (letter,) + word[position + 2 :], index)] += c
    return result


def _random_normal_terms(
    terms: Mapping[TermKey, Fraction], r: ModuleRealization, variant: Variant, rng: random.Random
) -> dict[TermKey, Fraction]:
    holonomic = variant == Variant.HOLONOMIC
    current = {key: value for key, value in terms.items() if value}
    while True:
        reducible = [key for key in current if _redexes(key[0], holonomic)]
        if not reducible:
            return current
        key = rng.choice(sorted(reducible, key=_term_sort_key))
        rule, position = rng.choice(_redexes(key[0], holonomic))
        coefficient = current.pop(key)
        for new_key, value in _rewrite_once(key[0], key[1], rule, position, r).items():
            current[new_key] = current.get(new_key, Fraction(0)) + coefficient * value
            if not current[new_key]:
                del current[new_key]


def normal_form(e: AlgebraElement, rng: random.Random | None = None) -> AlgebraElement:
    """
    rewrites every word so that only g_-1 letters remain (sorted in the holonomic variant)

    with rng given, redexes are picked at random instead of the deterministic
    right-to-left evaluation; both must agree
    """
    for word, index in e.terms:
        for letter in word:
            e.pd.check(letter)
        if not 0 <= index < e.realization.dimension:
            raise InputError(f'module index e{index} out of range for {e.realization.name}')
    if rng is not None:
        return e._new(_random_normal_terms(e.terms, e.realization, e.variant, rng))
    return e._new(_Engine(e.realization, e.variant).normal_terms(e.terms))


def act(x: BasisElement, e: AlgebraElement) -> AlgebraElement:
    """x . e for a normal-form element e"""
    e.pd.check(x)
    if not e.is_normal:
        raise ContractError('act expects an element in normal form')
    return e._new(_Engine(e.realization, e.variant).act_terms(x, e.terms))


def act_lie(x: LieElement, e: AlgebraElement) -> AlgebraElement:
    """linear extension of act to Lie algebra elements"""
    result = e._new({})
    for letter, coefficient in x.items():
        result = result + coefficient * act(letter, e)
    return result


def symmetrize_projection(e: AlgebraElement) -> AlgebraElement:
    """the quotient map from the semiholonomic to the holonomic module: sort each word"""
    if e.variant != Variant.SEMIHOLONOMIC:
        raise ContractError('symmetrize_projection expects a semiholonomic element')
    if not e.is_normal:
        raise ContractError('symmetrize_projection expects an element in normal form')
    terms: dict[TermKey, Fraction] = defaultdict(Fraction)
    for (word, index), c in e.terms.items():
        terms[(tuple(sorted(word, key=_letter_key)), index)] += c
    return AlgebraElement(terms, e.realization, Variant.HOLONOMIC)


def split2(e: AlgebraElement) -> AlgebraElement:
    """
    splitting of the projection in degrees <= 2: XY e -> 1/2 (XY + YX) e, identity below
    """
    if e.variant != Variant.HOLONOMIC or not e.is_normal:
        raise ContractError('split2 expects a holonomic element in normal form')
    terms: dict[TermKey, Fraction] = defaultdict(Fraction)
    for (word, index), c in e.terms.items():
        if len(word) > 2:
            raise ContractError(f'split2 is only defined up to degree 2, got degree {len(word)}')
        if len(word) == 2 and word[0] != word[1]:
            terms[(word, index)] += c / 2
            terms[(word[::-1], index)] += c / 2
        else:
            terms[(word, index)] += c
    return AlgebraElement(terms, e.realization, Variant.SEMIHOLONOMIC)


def layer_basis(k: int, r: ModuleRealization, variant: Variant) -> list[TermKey]:
    """ordered basis of the degree-k layer: words (lexicographic) times module basis"""
    if k < 0:
        raise InputError(f'layer degree must be non-negative, got {k}')
    letters = sorted(r.pd.g_minus, key=_letter_key)
    if variant == Variant.HOLONOMIC:
        words = list(combinations_with_replacement(letters, k))
    else:
        words = list(product(letters, repeat=k))
    return [(tuple(word), index) for word in words for index in range(r.dimension)]


def term_weight(word: Word, index: int, r: ModuleRealization) -> tuple[Fraction, ...]:
    """eigenvalues of the semisimple coroots of g_0 on word (x) e_index"""
    values = list(r.basis_weight(index))
    for position, h in enumerate(r.pd.semisimple_coroots()):
        for letter in word:
            i, a, b = h.i, letter.i, letter.j
            values[position] += (
                (a == i) - (a == i + 1) - (b == i) + (b == i + 1)
            )
    return tuple(values)


def log_layer_size(k: int, r: ModuleRealization, variant: Variant):
    letters = len(r.pd.g_minus)
    if variant == Variant.HOLONOMIC:
        size = len(list(combinations_with_replacement(range(letters), k))) * r.dimension
    else:
        size = letters**k * r.dimension
    logging.info(f'Layer {k} of the {variant.value} module over {r.name} has dimension {size}')


# element text syntax, e.g. "3/2 * y[3,1] y[4,2] | e0 - y[3,2] y[4,1] | e0"

TOKEN = re.compile(
    r'\s*(?:(?P<number>\d+(?:/\d+)?)'
    r'|(?P<letter>[yE]\[\s*\d+\s*,\s*\d+\s*\]|H\[\s*\d+\s*\])'
    r'|(?P<basis>e\d+)'
    r'|(?P<op>[-+*|]))'
)
LETTER = re.compile(r'(?P<kind>[yEH])\[\s*(?P<i>\d+)\s*(?:,\s*(?P<j>\d+)\s*)?\]')


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN.match(stripped, position)
        if match is None or match.end() == position:
            raise InputError(f'unexpected input at {stripped[position:position + 12]!r}')
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


def _parse_letter(text: str, pd: ParabolicData) -> BasisElement:
    match = LETTER.fullmatch(text.replace(' ', ''))
    assert match is not None, f'tokenizer accepted bad letter {text}'
    if match['kind'] == 'H':
        return pd.h(int(match['i']))
    letter = pd.e(int(match['i']), int(match['j']))
    if match['kind'] == 'y' and letter.degree != -1:
        raise InputError(f'{text} is not in g_-1 for p={pd.p}, write it as {letter.basis_name}')
    return letter


def parse_element(text: str, realization: ModuleRealization, variant: Variant) -> AlgebraElement:
    """
    reads the element text syntax and returns the normal form of the result
    """
    tokens = _tokenize(text)
    if not tokens:
        raise InputError('empty element')
    terms: dict[TermKey, Fraction] = defaultdict(Fraction)
    position = 0

    def peek(kind: str, value: str | None = None) -> bool:
        if position >= len(tokens) or tokens[position][0] != kind:
            return False
        return value is None or tokens[position][1] == value

    first = True
    while position < len(tokens):
        sign = 1
        if peek('op', '+') or peek('op', '-'):
            sign = -1 if tokens[position][1] == '-' else 1
            position += 1
        elif not first:
            raise InputError(f'expected + or - before {tokens[position][1]!r}')
        first = False
        coefficient = Fraction(1)
        explicit = False
        if peek('number'):
            coefficient = Fraction(tokens[position][1])
            explicit = True
            position += 1
            if peek('op', '*'):
                position += 1
                if not peek('letter'):
                    raise InputError('expected a letter after *')
        letters = []
        while peek('letter'):
            letters.append(_parse_letter(tokens[position][1], realization.pd))
            position += 1
        if not explicit and not letters:
            raise InputError('a term needs a coefficient or at least one letter')
        index = 0
        if peek('op', '|'):
            position += 1
            if not peek('basis'):
                raise InputError('expected a module basis vector such as e0 after |')
            index = int(tokens[position][1][1:])
            position += 1
        if index >= realization.dimension:
            raise InputError(f'e{index} does not exist in {realization.name}')
        terms[(tuple(letters), index)] += sign * coefficient
    return normal_form(AlgebraElement(terms, realization, variant))


def _term_sort_key(key: TermKey) -> tuple:
    word, index = key
    return (len(word), tuple(_letter_key(letter) for letter in word), index)


def format_element(e: AlgebraElement) -> str:
    """printer for the element text syntax; parse_element reads it back"""
    if e.is_zero:
        return '0'
    show_index = e.realization.dimension > 1
    parts = []
    for key in sorted(e.terms, key=_term_sort_key):
        word, index = key
        value = e.terms[key]
        magnitude = abs(value)
        body = ' '.join(letter.name for letter in word)
        if not word:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f'{magnitude} * {body}'
        if show_index:
            text += f' | e{index}'
        if not parts:
            parts.append(f'-{text}' if value < 0 else text)
        else:
            parts.append(f'- {text}' if value < 0 else f'+ {text}')
    return ' '.join(parts)
