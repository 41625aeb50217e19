"""
weights of sl(n) in the rho-shifted n-tuple encoding

a Weight stores lambda + rho as integers (a_1, ..., a_n) with a bar after position p,
e.g. the trivial representation of the (2,2) case is "3 2 | 1 0"
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from vermakit.errors import InputError

WEIGHT_TOKEN = re.compile(r'-?\d+|\|')


@dataclass(frozen=True, order=True)
class InfCharKey:
    """sorted (descending) multiset of the normalized entries"""

    entries: tuple[int, ...]

    def __str__(self) -> str:
        return '{' + ' '.join(str(a) for a in self.entries) + '}'


@dataclass(frozen=True)
class Weight:
    """
    a rho-shifted weight; construction normalizes the minimum entry to 0
    """

    entries: tuple[int, ...]
    p: int

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) < 2:
            raise InputError(f'a weight needs at least two entries, got {entries}')
        if not all(isinstance(a, int) for a in entries):
            raise InputError(f'weight entries must be integers, got {entries}')
        if not 1 <= self.p <= len(entries) - 1:
            raise InputError(f'block cut p={self.p} impossible for {len(entries)} entries')
        low = min(entries)
        object.__setattr__(self, 'entries', tuple(a - low for a in entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def q(self) -> int:
        return self.n - self.p

    @property
    def first_block(self) -> tuple[int, ...]:
        return self.entries[: self.p]

    @property
    def second_block(self) -> tuple[int, ...]:
        return self.entries[self.p :]

    @property
    def label(self) -> str:
        """compact form, e.g. (32|10); entries above 9 are comma separated"""
        separator = ',' if max(self.entries) > 9 else ''
        first = separator.join(str(a) for a in self.first_block)
        second = separator.join(str(a) for a in self.second_block)
        return f'({first}|{second})'

    def __str__(self) -> str:
        return format_weight(self)


def _strictly_decreasing(values: tuple[int, ...]) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


def dynkin_to_tuple(labels: tuple[int, ...] | list[int], p: int) -> Weight:
    """
    lambda given by its Dynkin labels, returned as lambda + rho

    consecutive differences a_i - a_{i+1} are labels_i + 1
    """
    entries = [0]
    for label in reversed(list(labels)):
        entries.append(entries[-1] + label + 1)
    return Weight(tuple(reversed(entries)), p)


def tuple_to_dynkin(w: Weight) -> tuple[int, ...]:
    return tuple(a - b - 1 for a, b in zip(w.entries, w.entries[1:]))


def dynkin_labels(ambient: tuple[int, ...]) -> tuple[int, ...]:
    """Dynkin labels of an unshifted ambient weight (no rho involved)"""
    return tuple(a - b for a, b in zip(ambient, ambient[1:]))


def is_p_dominant(w: Weight) -> bool:
    return _strictly_decreasing(w.first_block) and _strictly_decreasing(w.second_block)


def is_g_dominant(w: Weight) -> bool:
    return _strictly_decreasing(w.entries)


def e_action_of(entries: tuple[int, ...] | list[int], p: int) -> Fraction:
    """
    scalar by which the grading element acts: (q/n) sum_{i<=p} a_i - (p/n) sum_{i>p} a_i
    """
    n = len(entries)
    q = n - p
    return Fraction(q, n) * sum(entries[:p]) - Fraction(p, n) * sum(entries[p:])


def e_action(w: Weight) -> Fraction:
    return e_action_of(w.entries, w.p)


def inf_char_key(w: Weight) -> InfCharKey:
    return InfCharKey(tuple(sorted(w.entries, reverse=True)))


def same_inf_char(u: Weight, v: Weight) -> bool:
    """
    Harish-Chandra: same character iff the tuples are permutations of each other
    """
    if u.n != v.n or u.p != v.p:
        raise InputError(f'cannot compare {u.label} (n={u.n}, p={u.p}) with {v.label} (n={v.n}, p={v.p})')
    return inf_char_key(u) == inf_char_key(v)


def singularity_level(w: Weight) -> int:
    return w.n - len(set(w.entries))


def parse_weight(text: str, p: int | None = None, n: int | None = None) -> Weight:
    """
    reads "3 2 | 1 0"; the bar fixes p, otherwise p must be supplied

    Parameters
    ----------
    text : whitespace separated integers with at most one '|'
    p : block cut, checked against the bar when both are present
    n : expected number of entries, if known
    """
    stripped = text.strip()
    tokens = WEIGHT_TOKEN.findall(stripped)
    if not tokens or ''.join(tokens) != re.sub(r'\s+', '', stripped):
        raise InputError(f'cannot parse weight {text!r}')
    bars = [index for index, token in enumerate(tokens) if token == '|']
    if len(bars) > 1:
        raise InputError(f'weight {text!r} has more than one block bar')
    entries = tuple(int(token) for token in tokens if token != '|')
    if bars:
        if p is not None and p != bars[0]:
            raise InputError(f'weight {text!r} has its bar after {bars[0]} entries, expected p={p}')
        p = bars[0]
    if p is None:
        raise InputError(f'weight {text!r} carries no bar and no p was given')
    if n is not None and len(entries) != n:
        raise InputError(f'weight {text!r} has {len(entries)} entries, expected n={n}')
    return Weight(entries, p)


def format_weight(w: Weight) -> str:
    first = ' '.join(str(a) for a in w.first_block)
    second = ' '.join(str(a) for a in w.second_block)
    return f'{first} | {second}'
