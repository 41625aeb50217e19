"""
p-dominant parts of affine Weyl orbits and the operator patterns built from them

nodes are arranged in columns by Weyl length; arrows follow the Verma-module
direction, from the longer element to the shorter one, and carry the operator
order e_action(target) - e_action(source)
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from vermakit.errors import ContractError, InputError
from vermakit.weights import (
    Weight,
    e_action,
    inf_char_key,
    is_p_dominant,
    same_inf_char,
    singularity_level,
)


@dataclass(frozen=True)
class OrbitElement:
    """weight = dominant arrangement permuted: weight[i] = dominant[perm[i]]"""

    weight: Weight
    perm: tuple[int, ...]
    length: int


@dataclass(frozen=True)
class PatternNode:
    id: int
    element: OrbitElement
    dominant: bool = True

    @property
    def weight(self) -> Weight:
        return self.element.weight

    @property
    def length(self) -> int:
        return self.element.length

    @property
    def label(self) -> str:
        return self.weight.label if self.dominant else '×'


@dataclass(frozen=True)
class PatternEdge:
    source: int
    target: int
    order: Fraction
    standard: bool = True


@dataclass
class PatternGraph:
    n: int
    p: int
    singularity: int
    nodes: list[PatternNode] = field(default_factory=list)
    edges: list[PatternEdge] = field(default_factory=list)

    def columns(self) -> dict[int, list[PatternNode]]:
        grouped: dict[int, list[PatternNode]] = {}
        for node in self.nodes:
            grouped.setdefault(node.length, []).append(node)
        return dict(sorted(grouped.items()))


def inversions(perm: tuple[int, ...]) -> int:
    return sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])


def _check_dominant_arrangement(w: Weight):
    if any(a < b for a, b in zip(w.entries, w.entries[1:])):
        raise InputError(f'{w.label} is not a dominant (weakly decreasing) arrangement')


def apply_perm(dominant: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(dominant[index] for index in perm)


def affine_orbit_p_dominant(w: Weight) -> list[OrbitElement]:
    """
    every p-dominant rearrangement of a weakly decreasing tuple

    the first block takes the values at a p-subset of positions, read in order,
    the second block the rest; for repeated entries the first subset producing a
    given tuple wins. Ordered by length, then lexicographically
    """
    _check_dominant_arrangement(w)
    seen: dict[tuple[int, ...], OrbitElement] = {}
    for chosen in combinations(range(w.n), w.p):
        rest = tuple(i for i in range(w.n) if i not in chosen)
        perm = chosen + rest
        entries = apply_perm(w.entries, perm)
        candidate = Weight(entries, w.p)
        if not is_p_dominant(candidate) or entries in seen:
            continue
        seen[entries] = OrbitElement(candidate, perm, inversions(perm))
    return sorted(seen.values(), key=lambda el: (el.length, el.weight.entries))


def length_of(w: Weight) -> int:
    """pairs i<j with a_i < a_j; only meaningful for regular weights"""
    if singularity_level(w):
        raise InputError(
            f'{w.label} has repeated entries, its length comes from a template permutation'
        )
    return sum(1 for i, j in combinations(range(w.n), 2) if w.entries[i] < w.entries[j])


def _single_transposition(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    differing = [i for i in range(len(u)) if u[i] != v[i]]
    return len(differing) == 2 and u[differing[0]] == v[differing[1]] and u[differing[1]] == v[differing[0]]


def standard_edges(orbit: list[OrbitElement]) -> list[PatternEdge]:
    """
    Bruhat covers inside the orbit: one transposition apart and lengths differing by one.
    Every cover has order 1 only in the orbit of the trivial weight

    indices refer to positions in the given list
    """
    edges = []
    for s, source in enumerate(orbit):
        for t, target in enumerate(orbit):
            if source.length != target.length + 1:
                continue
            if not _single_transposition(source.perm, target.perm):
                continue
            order = e_action(target.weight) - e_action(source.weight)
            edges.append(PatternEdge(s, t, order, True))
    return edges


def pair_order(u: OrbitElement | Weight, v: OrbitElement | Weight) -> Fraction:
    """
    order of a homomorphism joining two weights of one orbit: |e_action(u) - e_action(v)|
    """
    wu = u.weight if isinstance(u, OrbitElement) else u
    wv = v.weight if isinstance(v, OrbitElement) else v
    if wu.n != wv.n or wu.p != wv.p or not same_inf_char(wu, wv):
        raise ContractError(f'{wu.label} and {wv.label} lie in different orbits')
    return abs(e_action(wu) - e_action(wv))


def build_pattern(wdom: Weight) -> PatternGraph:
    """pattern of a regular dominant weight: the orbit with its standard edges"""
    if singularity_level(wdom):
        raise InputError(f'{wdom.label} is singular, build it with build_singular_pattern')
    _check_dominant_arrangement(wdom)
    orbit = affine_orbit_p_dominant(wdom)
    logging.info(f'Orbit of {wdom.label} has {len(orbit)} p-dominant weights')
    return PatternGraph(
        n=wdom.n,
        p=wdom.p,
        singularity=0,
        nodes=[PatternNode(index, element) for index, element in enumerate(orbit)],
        edges=standard_edges(orbit),
    )


def build_singular_pattern(wsing: Weight, template: PatternGraph) -> PatternGraph:
    """
    copies the template: each node's permutation is applied to wsing

    results that are not p-dominant become × nodes; template arrows survive
    between two surviving nodes, arrows between equal weights carry order 0
    and are not standard
    """
    if wsing.n != template.n or wsing.p != template.p:
        raise InputError(
            f'template is for n={template.n}, p={template.p}, weight {wsing.label} does not fit'
        )
    _check_dominant_arrangement(wsing)
    nodes = []
    for node in template.nodes:
        perm = node.element.perm
        weight = Weight(apply_perm(wsing.entries, perm), wsing.p)
        nodes.append(
            PatternNode(node.id, OrbitElement(weight, perm, node.length), is_p_dominant(weight))
        )
    edges = []
    for edge in template.edges:
        source, target = nodes[edge.source], nodes[edge.target]
        if not (source.dominant and target.dominant):
            continue
        order = e_action(target.weight) - e_action(source.weight)
        edges.append(PatternEdge(edge.source, edge.target, order, order != 0))
    return PatternGraph(
        n=wsing.n, p=wsing.p, singularity=singularity_level(wsing), nodes=nodes, edges=edges
    )


def rho_template(n: int, p: int) -> PatternGraph:
    """regular pattern of the trivial representation, the template for singular weights"""
    return build_pattern(Weight(tuple(range(n - 1, -1, -1)), p))


def distinct_pairs(pattern: PatternGraph) -> list[tuple[Weight, Weight, Fraction]]:
    """
    pair orders between consecutive distinct p-dominant weights of a pattern,
    taken in decreasing e_action
    """
    distinct: dict[tuple[int, ...], Weight] = {}
    for node in pattern.nodes:
        if node.dominant:
            distinct.setdefault(node.weight.entries, node.weight)
    ordered = sorted(distinct.values(), key=lambda w: (-e_action(w), w.entries))
    return [(u, v, pair_order(u, v)) for u, v in zip(ordered, ordered[1:])]


def _rational(value: Fraction) -> str:
    return str(value)


def pattern_to_dict(
    pattern: PatternGraph, pairs: list[tuple[Weight, Weight, Fraction]] | None = None
) -> dict:
    """JSON form of a pattern"""
    payload = {
        'n': pattern.n,
        'p': pattern.p,
        'singularity': pattern.singularity,
        'nodes': [
            {
                'id': node.id,
                'tuple': list(node.weight.entries),
                'length': node.length,
                'e_action': _rational(e_action(node.weight)),
                'dominant': node.dominant,
            }
            for node in pattern.nodes
        ],
        'edges': [
            {
                'from': edge.source,
                'to': edge.target,
                'order': _rational(edge.order),
                'standard': edge.standard,
            }
            for edge in pattern.edges
        ],
    }
    if pairs:
        payload['pairs'] = [
            {'from': list(u.entries), 'to': list(v.entries), 'order': _rational(order)}
            for u, v, order in pairs
        ]
    return payload


def render_text(
    pattern: PatternGraph,
    display: str = 'length',
    pairs: list[tuple[Weight, Weight, Fraction]] | None = None,
) -> str:
    """
    plain text listing

    Parameters
    ----------
    pattern : the graph to render
    display : 'length' for columns by Weyl length, 'e-action' for the de Rham
        order (columns by decreasing grading-element value)
    pairs : optional pair orders appended at the end
    """
    lines = [
        f'pattern n={pattern.n} p={pattern.p} singularity={pattern.singularity}: '
        f'{len(pattern.nodes)} nodes, {len(pattern.edges)} edges'
    ]
    if display == 'length':
        for length, column in pattern.columns().items():
            lines.append(f'{length}: ' + ' '.join(node.label for node in column))
    elif display == 'e-action':
        grouped: dict[Fraction, list[PatternNode]] = {}
        for node in pattern.nodes:
            grouped.setdefault(e_action(node.weight), []).append(node)
        for value in sorted(grouped, reverse=True):
            lines.append(f'{value}: ' + ' '.join(node.label for node in grouped[value]))
    else:
        raise InputError(f'unknown display order {display!r}')
    for edge in pattern.edges:
        arrow = '->' if edge.standard else '=>'
        lines.append(
            f'{pattern.nodes[edge.source].label} {arrow} {pattern.nodes[edge.target].label} [{edge.order}]'
        )
    for u, v, order in pairs or []:
        lines.append(f'{u.label} .. {v.label} [{order}]')
    return '\n'.join(lines) + '\n'


def render_dot(pattern: PatternGraph) -> str:
    """DOT digraph, one rank constraint per length column"""
    lines = ['digraph pattern {', '  rankdir=LR;']
    for node in pattern.nodes:
        shape = '' if node.dominant else ', shape=none'
        lines.append(f'  N{node.id} [label="{node.label}"{shape}];')
    for column in pattern.columns().values():
        members = '; '.join(f'N{node.id}' for node in column)
        lines.append(f'  {{ rank=same; {members}; }}')
    for edge in pattern.edges:
        style = '' if edge.standard else ', style=dotted'
        lines.append(f'  N{edge.source} -> N{edge.target} [label="{edge.order}"{style}];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def same_shape(first: PatternGraph, second: PatternGraph) -> bool:
    """structural equality: same permutations, lengths and edge set"""
    if (first.n, first.p) != (second.n, second.p) or len(first.nodes) != len(second.nodes):
        return False
    perms_first = {node.element.perm: node for node in first.nodes}
    perms_second = {node.element.perm: node for node in second.nodes}
    if set(perms_first) != set(perms_second):
        return False
    if any(perms_first[perm].length != perms_second[perm].length for perm in perms_first):
        return False

    def edge_set(graph: PatternGraph) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {
            (graph.nodes[edge.source].element.perm, graph.nodes[edge.target].element.perm)
            for edge in graph.edges
        }

    return edge_set(first) == edge_set(second)


def orbit_keys_agree(orbit: list[OrbitElement]) -> bool:
    return len({inf_char_key(element.weight) for element in orbit}) <= 1
