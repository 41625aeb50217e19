"""
weight-level screening for translation between patterns

a finite dimensional g-module W is described by its weight support in ambient
n-tuple coordinates; tensoring a p-dominant weight with W shifts it by every
support weight, and the screen asks whether the wanted targets are the only
candidates with their infinitesimal character
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from vermakit.errors import InputError
from vermakit.liealg import ParabolicData
from vermakit.weights import (
    InfCharKey,
    Weight,
    dynkin_labels,
    e_action,
    e_action_of,
    inf_char_key,
    is_p_dominant,
    same_inf_char,
)

Ambient = tuple[int, ...]


def _partitions(total: int, parts: int, largest: int) -> list[Ambient]:
    """weakly decreasing non-negative tuples of the given length and sum, entries <= largest"""
    if parts == 0:
        return [()] if total == 0 else []
    found = []
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            found.append((first,) + rest)
    return found


def _dominated(mu: Ambient, lam: Ambient) -> bool:
    running_mu = running_lam = 0
    for a, b in zip(mu, lam):
        running_mu += a
        running_lam += b
        if running_mu > running_lam:
            return False
    return True


def weyl_dimension(labels: tuple[int, ...]) -> int:
    """product over positive roots of (lambda + rho, alpha) / (rho, alpha)"""
    n = len(labels) + 1
    ambient = _labels_to_ambient(labels)
    numerator = denominator = 1
    for i, j in combinations(range(n), 2):
        numerator *= ambient[i] - ambient[j] + j - i
        denominator *= j - i
    return numerator // denominator


def _labels_to_ambient(labels: tuple[int, ...]) -> Ambient:
    entries = [0]
    for label in reversed(labels):
        entries.append(entries[-1] + label)
    return tuple(reversed(entries))


def _norm_shifted(weight: Ambient, rho: Ambient) -> int:
    return sum((a + r) ** 2 for a, r in zip(weight, rho))


def dominant_multiplicities(labels: tuple[int, ...]) -> dict[Ambient, int]:
    """
    Freudenthal recursion on the dominant weights below the highest weight

    uses the standard inner product on ambient coordinates, all weights share the
    coordinate sum so the gl(n) form restricts correctly
    """
    n = len(labels) + 1
    highest = _labels_to_ambient(labels)
    rho = tuple(range(n - 1, -1, -1))
    candidates = [
        mu
        for mu in _partitions(sum(highest), n, highest[0])
        if _dominated(mu, highest)
    ]
    # larger height first, so every mu + k alpha is already known
    candidates.sort(key=lambda mu: sum((n - i) * a for i, a in enumerate(mu)), reverse=True)
    multiplicity: dict[Ambient, int] = {}
    top = _norm_shifted(highest, rho)

    def lookup(weight: Ambient) -> int:
        return multiplicity.get(tuple(sorted(weight, reverse=True)), 0)

    for mu in candidates:
        if mu == highest:
            multiplicity[mu] = 1
            continue
        total = 0
        for i, j in combinations(range(n), 2):
            k = 1
            while True:
                shifted = list(mu)
                shifted[i] += k
                shifted[j] -= k
                m = lookup(tuple(shifted))
                if not m:
                    break
                total += m * (shifted[i] - shifted[j])
                k += 1
        gap = top - _norm_shifted(mu, rho)
        value = Fraction(2 * total, gap)
        assert value.denominator == 1, f'non-integral multiplicity {value} at {mu}'
        if value:
            multiplicity[mu] = int(value)
    return multiplicity


@dataclass(frozen=True)
class GModuleWeightData:
    """
    a finite dimensional sl(n)-module: Dynkin labels and weight support
    (ambient tuple, multiplicity), sorted descending by tuple
    """

    labels: tuple[int, ...]
    support: tuple[tuple[Ambient, int], ...]

    @property
    def n(self) -> int:
        return len(self.labels) + 1

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.support)

    def dynkin_support(self) -> list[tuple[tuple[int, ...], int]]:
        return [(dynkin_labels(weight), m) for weight, m in self.support]

    def dual(self) -> 'GModuleWeightData':
        """W*: labels reversed, support negated (shifted back to non-negative entries)"""
        top = max(max(weight) for weight, _ in self.support)
        negated = [(tuple(top - a for a in weight), m) for weight, m in self.support]
        return GModuleWeightData(tuple(reversed(self.labels)), tuple(sorted(negated, reverse=True)))


def weight_support(labels: tuple[int, ...] | list[int], n: int) -> GModuleWeightData:
    """
    full weight support of the irreducible module with the given highest weight labels

    Parameters
    ----------
    labels : Dynkin labels of the highest weight, n-1 non-negative integers
    n : size of sl(n)
    """
    labels = tuple(labels)
    if len(labels) != n - 1:
        raise InputError(f'sl({n}) needs {n - 1} Dynkin labels, got {len(labels)}')
    if any(label < 0 for label in labels):
        raise InputError(f'labels {labels} are not dominant')
    support: dict[Ambient, int] = {}
    for mu, m in dominant_multiplicities(labels).items():
        for arrangement in set(permutations(mu)):
            support[arrangement] = m
    data = GModuleWeightData(labels, tuple(sorted(support.items(), reverse=True)))
    expected = weyl_dimension(labels)
    assert (
        data.dimension == expected
    ), f'support has dimension {data.dimension}, Weyl formula gives {expected}'
    logging.info(f'Module {labels} of sl({n}): {len(support)} weights, dimension {expected}')
    return data


def filtration_levels(w: GModuleWeightData, pd: ParabolicData) -> list[tuple[Fraction, int]]:
    """
    support grouped by the grading element eigenvalue, highest level first;
    the number of levels is the filtration length
    """
    if w.n != pd.n:
        raise InputError(f'module of sl({w.n}) cannot be graded by sl({pd.n}) data')
    levels: dict[Fraction, int] = defaultdict(int)
    for weight, m in w.support:
        levels[e_action_of(weight, pd.p)] += m
    return sorted(levels.items(), reverse=True)


@dataclass(frozen=True)
class Candidate:
    weight: Weight
    shift: Ambient
    level: Fraction
    multiplicity: int
    key: InfCharKey
    p_dominant: bool

    def to_dict(self) -> dict:
        return {
            'tuple': list(self.weight.entries),
            'shift': list(self.shift),
            'level': str(self.level),
            'e_action': str(e_action(self.weight)),
            'multiplicity': self.multiplicity,
            'key': list(self.key.entries),
            'p_dominant': self.p_dominant,
        }


def candidate_factors(e: Weight, w: GModuleWeightData) -> list[Candidate]:
    """
    e shifted by every support weight of w; non-p-dominant results stay in the list, flagged
    """
    if e.n != w.n:
        raise InputError(f'weight {e.label} has n={e.n}, module is for sl({w.n})')
    found = []
    for shift, m in w.support:
        weight = Weight(tuple(a + b for a, b in zip(e.entries, shift)), e.p)
        found.append(
            Candidate(
                weight=weight,
                shift=shift,
                level=e_action_of(shift, e.p),
                multiplicity=m,
                key=inf_char_key(weight),
                p_dominant=is_p_dominant(weight),
            )
        )
    return found


def factor_list(e: Weight, w: GModuleWeightData) -> list[Candidate]:
    """the p-dominant candidates, which are the ones entering the screens"""
    return [candidate for candidate in candidate_factors(e, w) if candidate.p_dominant]


def is_isolated(target: Weight, factors: list[Candidate]) -> bool:
    """target occurs exactly once in the factor list and no other factor shares its key"""
    key = inf_char_key(target)
    same_key = [candidate for candidate in factors if candidate.key == key]
    return (
        len(same_key) == 1
        and same_key[0].weight == target
        and same_key[0].multiplicity == 1
    )


@dataclass
class PairVerdict:
    f_target: Candidate
    e_target: Candidate
    f_isolated: bool
    e_isolated: bool
    f_returns: bool
    e_returns: bool

    @property
    def verdict(self) -> str:
        if self.f_isolated and self.e_isolated and self.f_returns and self.e_returns:
            return 'isolated'
        return 'blocked'

    def to_dict(self) -> dict:
        return {
            'f_target': list(self.f_target.weight.entries),
            'e_target': list(self.e_target.weight.entries),
            'key': list(self.f_target.key.entries),
            'f_isolated': self.f_isolated,
            'e_isolated': self.e_isolated,
            'f_returns': self.f_returns,
            'e_returns': self.e_returns,
            'verdict': self.verdict,
        }


@dataclass
class TranslationScreen:
    f_source: Weight
    e_source: Weight
    module: GModuleWeightData
    f_candidates: list[Candidate] = field(default_factory=list)
    e_candidates: list[Candidate] = field(default_factory=list)
    pairs: list[PairVerdict] = field(default_factory=list)

    def isolated_pairs(self) -> list[PairVerdict]:
        return [pair for pair in self.pairs if pair.verdict == 'isolated']

    def to_dict(self) -> dict:
        return {
            'f_source': list(self.f_source.entries),
            'e_source': list(self.e_source.entries),
            'p': self.f_source.p,
            'labels': list(self.module.labels),
            'f_candidates': [c.to_dict() for c in self.f_candidates],
            'e_candidates': [c.to_dict() for c in self.e_candidates],
            'pairs': [pair.to_dict() for pair in self.pairs],
        }


def screen_translation(f_source: Weight, e_source: Weight, w: GModuleWeightData) -> TranslationScreen:
    """
    for each pair of targets F', E' sharing an infinitesimal character, checks that
    F' and E' are isolated among the factors of F (x) W and E (x) W, and that the
    sources come back isolated from F' (x) W* and E' (x) W*
    """
    if not same_inf_char(f_source, e_source):
        raise InputError(f'{f_source.label} and {e_source.label} have different infinitesimal characters')
    dual = w.dual()
    screen = TranslationScreen(
        f_source,
        e_source,
        w,
        f_candidates=candidate_factors(f_source, w),
        e_candidates=candidate_factors(e_source, w),
    )
    f_factors = [c for c in screen.f_candidates if c.p_dominant]
    e_factors = [c for c in screen.e_candidates if c.p_dominant]
    for f_target in f_factors:
        for e_target in e_factors:
            if f_target.key != e_target.key:
                continue
            screen.pairs.append(
                PairVerdict(
                    f_target=f_target,
                    e_target=e_target,
                    f_isolated=is_isolated(f_target.weight, f_factors),
                    e_isolated=is_isolated(e_target.weight, e_factors),
                    f_returns=is_isolated(f_source, factor_list(f_target.weight, dual)),
                    e_returns=is_isolated(e_source, factor_list(e_target.weight, dual)),
                )
            )
    return screen


@dataclass
class OneWayVerdict:
    shared_character: bool
    grading_order: bool
    e_actions: tuple[Fraction, Fraction, Fraction, Fraction]
    occurs: bool | None = None
    separated: bool | None = None
    approximate: bool = True
    requires_external: tuple[str, ...] = (
        'pieces of the translated modules have distinct infinitesimal characters',
        'the target Verma module splits off the translated one',
        'no homomorphism exists between the source modules',
    )

    def to_dict(self) -> dict:
        return {
            'shared_character': self.shared_character,
            'grading_order': self.grading_order,
            'e_actions': [str(v) for v in self.e_actions],
            'occurs': self.occurs,
            'separated': self.separated,
            'approximate': self.approximate,
            'requires_external': list(self.requires_external),
        }


def screen_one_way(
    e1: Weight,
    e2: Weight,
    f1: Weight,
    f2: Weight,
    w: GModuleWeightData,
    e_source: Weight | None = None,
    f_source: Weight | None = None,
) -> OneWayVerdict:
    """
    the checkable hypotheses for translating a homomorphism that exists in one
    direction only: a common character for all four weights and
    e_action(E1) < e_action(E2), e_action(F1) > e_action(F2)

    with the sources E, F given, also checks that E1, E2 occur in E (x) W and F1, F2
    in F (x) W, and that no other factor of those shares their character
    """
    for weight in (e1, e2, f1, f2):
        if not is_p_dominant(weight):
            raise InputError(f'{weight.label} is not p-dominant')
    keys = {inf_char_key(weight) for weight in (e1, e2, f1, f2)}
    values = tuple(e_action(weight) for weight in (e1, e2, f1, f2))
    verdict = OneWayVerdict(
        shared_character=len(keys) == 1,
        grading_order=values[0] < values[1] and values[2] > values[3],
        e_actions=values,
    )
    if e_source is not None and f_source is not None:
        e_factors = factor_list(e_source, w)
        f_factors = factor_list(f_source, w)
        e_weights = {c.weight for c in e_factors}
        f_weights = {c.weight for c in f_factors}
        verdict.occurs = {e1, e2} <= e_weights and {f1, f2} <= f_weights
        verdict.separated = all(
            c.key not in keys
            for c in e_factors + f_factors
            if c.weight not in (e1, e2, f1, f2)
        )
    return verdict


def splitting_depths(
    levels: list[tuple[Fraction, int]], embed_level: Fraction, project_level: Fraction
) -> tuple[Fraction, Fraction]:
    """
    distance of the embedding level from the top of the filtration and of the
    projection level from its bottom
    """
    values = [level for level, _ in levels]
    if embed_level not in values or project_level not in values:
        raise InputError('splitting levels must be levels of the filtration')
    return (max(values) - embed_level, project_level - min(values))


def curvability_filter(
    order: Fraction | int, depths: tuple[Fraction | int, Fraction | int] | None = None
) -> bool:
    """
    sufficient test for a curved analogue: order at most two, or both splittings at
    depth at most two. False means not guaranteed, never impossible
    """
    if order <= 2:
        return True
    if depths is None:
        return False
    return depths[0] <= 2 and depths[1] <= 2
