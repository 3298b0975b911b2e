"""
Exact normal ordering of X/P words and the permutation-sum expansion.

A NormalForm stores integer coefficients keyed by (m, n, k), meaning
coeff * (-i hbar)^k X^m P^n. An IndexedMonomialSum stores integer
coefficients keyed by set partitions of the factor positions 0..N-1; a
partition term is the unrestricted sum over one index per block of the
ordered product O^(0)_{i(0)} ... O^(N-1)_{i(N-1)}.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb, factorial
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.physics.quantum import Dagger
from sympy.physics.quantum.boson import BosonOp
from sympy.physics.quantum.operatorordering import normal_ordered_form
from sympy.utilities.iterables import multiset_partitions

from ..core.exceptions import DimensionCapError

logger = logging.getLogger(__name__)

LETTERS = frozenset("XP")
EXPANSION_DENSE_CAP = 4096
SYMPY_RECURSION_LIMIT = 50
INDEX_NAMES = "ijklmnpqrs"

Term = Tuple[int, int, int]
Partition = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Word:
    letters: str = ""

    def __post_init__(self):
        unknown = set(self.letters) - LETTERS
        if unknown:
            raise ValueError(f"word letters must be X or P, got {sorted(unknown)}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls("".join(text.split()).upper())

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def counts(self) -> Tuple[int, int]:
        return self.letters.count("X"), self.letters.count("P")

    def to_matrix(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        result = np.eye(x.shape[0], dtype=complex)
        for letter in self.letters:
            result = result @ (x if letter == "X" else p)
        return result


@dataclass
class NormalForm:
    terms: Dict[Term, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {key: value for key, value in self.terms.items() if value != 0}

    @classmethod
    def identity(cls) -> "NormalForm":
        return cls({(0, 0, 0): 1})

    def coefficient(self, x_power: int, p_power: int, hbar_power: int) -> int:
        return self.terms.get((x_power, p_power, hbar_power), 0)

    def sorted_terms(self) -> List[Tuple[Term, int]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][2], -item[0][0], -item[0][1]))

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalForm) and self.terms == other.terms

    def __add__(self, other: "NormalForm") -> "NormalForm":
        total = Counter(self.terms)
        total.update(other.terms)
        return NormalForm(dict(total))

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        # P^b X^c = sum_r C(b,r) C(c,r) r! (-i hbar)^r X^(c-r) P^(b-r)
        total: Counter = Counter()
        for (a, b, k1), c1 in self.terms.items():
            for (c, d, k2), c2 in other.terms.items():
                for r in range(min(b, c) + 1):
                    weight = comb(b, r) * comb(c, r) * factorial(r)
                    total[(a + c - r, b + d - r, k1 + k2 + r)] += c1 * c2 * weight
        return NormalForm(dict(total))

    def to_matrix(self, x: np.ndarray, p: np.ndarray, hbar: float = 1.0) -> np.ndarray:
        dimension = x.shape[0]
        result = np.zeros((dimension, dimension), dtype=complex)
        for (m, n, k), value in self.terms.items():
            monomial = np.linalg.matrix_power(x, m) @ np.linalg.matrix_power(p, n)
            result += value * (-1j * hbar) ** k * monomial
        return result

    def render(self) -> str:
        pieces = []
        for (m, n, k), value in self.sorted_terms():
            monomial = "".join(
                part for part in (_power("X", m), _power("P", n)) if part
            ) or "1"
            prefix = "" if value == 1 else f"{value}"
            factor = "" if k == 0 else ("(-ih)" if k == 1 else f"(-ih)^{k}")
            pieces.append(f"{prefix}{factor}{monomial}")
        return " + ".join(pieces).replace("+ -", "- ") or "0"


def _power(letter: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    return letter if exponent == 1 else f"{letter}^{exponent}"


def normal_order(word: Word) -> NormalForm:
    """Rewrites PX -> XP + (-i hbar) letter by letter from the left."""
    state: Counter = Counter({(0, 0, 0): 1})
    for letter in word.letters:
        following: Counter = Counter()
        for (a, b, k), value in state.items():
            if letter == "P":
                following[(a, b + 1, k)] += value
                continue
            following[(a + 1, b, k)] += value
            if b:
                following[(a, b - 1, k + 1)] += b * value
        state = following
    return NormalForm(dict(state))


def boson_normal_form(word: Word) -> NormalForm:
    """
    Normal form of `word` computed by sympy. With P = a and X = (-i hbar) a^dagger
    the relation [P, X] = -i hbar becomes [a, a^dagger] = 1, so the integer in
    front of a^dagger^m a^n multiplies (-i hbar)^(#X - m) X^m P^n.
    """
    a = BosonOp("a")
    raised = Dagger(a)
    expression = sympy.Integer(1)
    for letter in word.letters:
        expression = expression * (raised if letter == "X" else a)
    limit = max(SYMPY_RECURSION_LIMIT, 2 * len(word))
    ordered = sympy.expand(normal_ordered_form(expression, recursive_limit=limit))

    x_count, _ = word.counts()
    terms: Counter = Counter()
    for term in sympy.Add.make_args(ordered):
        coefficient, monomial = term.as_coeff_Mul()
        powers = monomial.as_powers_dict()
        m = int(powers.get(raised, 0))
        n = int(powers.get(a, 0))
        terms[(m, n, x_count - m)] += int(coefficient)
    return NormalForm(dict(terms))


def canonical_partition(blocks: Sequence) -> Partition:
    return tuple(sorted(tuple(sorted(block)) for block in blocks))


def set_partitions(items: Sequence) -> Iterator[List[List]]:
    items = list(items)
    if not items:
        yield []
        return
    yield from multiset_partitions(items)


def _expand_distinct(blocks: Tuple[FrozenSet[int], ...]) -> Counter:
    """sum over distinct block indices = (head) x free(last) - sum_g merge(g, last)."""
    if len(blocks) == 1:
        return Counter({canonical_partition(blocks): 1})
    head, last = blocks[:-1], blocks[-1]
    result: Counter = Counter()
    for partition, value in _expand_distinct(head).items():
        result[canonical_partition(partition + (tuple(last),))] += value
    for g in range(len(head)):
        merged = head[:g] + (head[g] | last,) + head[g + 1:]
        for partition, value in _expand_distinct(merged).items():
            result[partition] -= value
    return Counter({key: value for key, value in result.items() if value})


@dataclass
class IndexedMonomialSum:
    particle_count: int
    terms: Dict[Partition, int]
    factors: Tuple = ()

    def sorted_terms(self) -> List[Tuple[Partition, int]]:
        return sorted(self.terms.items(), key=lambda item: (-len(item[0]), item[0]))

    def coefficients(self) -> List[int]:
        return [value for _, value in self.sorted_terms()]

    def render(self, symbol: str = "O") -> str:
        """Factor k prints as factors[k] when names were given, otherwise as `symbol`."""
        names = [str(name) for name in self.factors] or [symbol] * self.particle_count
        pieces = []
        for partition, value in self.sorted_terms():
            label = {}
            for name, block in zip(INDEX_NAMES, partition):
                for position in block:
                    label[position] = name
            monomial = "".join(f"{names[k]}_{label[k]}" for k in range(self.particle_count))
            if value == 1:
                pieces.append(f"+ {monomial}")
            elif value == -1:
                pieces.append(f"- {monomial}")
            else:
                pieces.append(f"{'+' if value > 0 else '-'} {abs(value)} {monomial}")
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else text

    def evaluate(self, factor_matrices: Sequence[np.ndarray]) -> np.ndarray:
        """Dense value on the N-fold tensor product with O^(k) given per position."""
        count = self.particle_count
        dimension = factor_matrices[0].shape[0]
        total = np.zeros((dimension ** count,) * 2, dtype=complex)
        for partition, value in self.terms.items():
            block_of = {position: b for b, block in enumerate(partition) for position in block}
            for indices in product(range(count), repeat=len(partition)):
                per_particle = [np.eye(dimension, dtype=complex) for _ in range(count)]
                for position in range(count):
                    particle = indices[block_of[position]]
                    per_particle[particle] = per_particle[particle] @ factor_matrices[position]
                total += value * _kron_all(per_particle)
        return total

    def evaluate_lifted(self, factor_matrices: Sequence[np.ndarray], lift: Callable):
        """
        Second-quantized value built only from lifts Gamma(t).

        Each unrestricted term is split into distinct-index sums over the
        coarsenings of its blocks, and every distinct sum is reduced to
        products of lifts.
        """
        total = None
        for partition, value in self.terms.items():
            for grouping in set_partitions(range(len(partition))):
                groups = []
                for group in grouping:
                    positions = sorted(p for b in group for p in partition[b])
                    operator = factor_matrices[positions[0]]
                    for position in positions[1:]:
                        operator = operator @ factor_matrices[position]
                    groups.append(operator)
                term = value * _distinct_lift_sum(groups, lift)
                total = term if total is None else total + term
        return total


def _distinct_lift_sum(groups: List[np.ndarray], lift: Callable):
    """sum over pairwise distinct particles of prod_g G_g; factors on distinct particles commute."""
    if len(groups) == 1:
        return lift(groups[0])
    head, last = groups[:-1], groups[-1]
    result = _distinct_lift_sum(head, lift) @ lift(last)
    for g in range(len(head)):
        merged = head[:g] + [head[g] @ last] + head[g + 1:]
        result = result - _distinct_lift_sum(merged, lift)
    return result


def _kron_all(matrices: Sequence[np.ndarray]) -> np.ndarray:
    result = matrices[0]
    for matrix in matrices[1:]:
        result = np.kron(result, matrix)
    return result


def expand_permutation_sum(particle_count: int, factors: Sequence = ()) -> IndexedMonomialSum:
    if particle_count < 1:
        raise ValueError(f"particle_count must be at least 1, got {particle_count}")
    if factors and len(factors) != particle_count:
        raise ValueError(f"expected {particle_count} factors, got {len(factors)}")
    blocks = tuple(frozenset([k]) for k in range(particle_count))
    terms = dict(_expand_distinct(blocks))
    logger.debug(f"Permutation sum over {particle_count} particles expanded into {len(terms)} terms")
    return IndexedMonomialSum(particle_count=particle_count, terms=terms, factors=tuple(factors))


def explicit_permutation_sum(factor_matrices: Sequence[np.ndarray]) -> np.ndarray:
    """sum_sigma O^(0)_{sigma(0)} ... O^(N-1)_{sigma(N-1)} by brute enumeration."""
    count = len(factor_matrices)
    dimension = factor_matrices[0].shape[0]
    total = np.zeros((dimension ** count,) * 2, dtype=complex)
    for sigma in permutations(range(count)):
        per_particle = [None] * count
        for position, particle in enumerate(sigma):
            per_particle[particle] = factor_matrices[position]
        total += _kron_all(per_particle)
    return total


def verify_expansion(
    particle_count: int,
    expansion: IndexedMonomialSum,
    mode_dim: int,
    rng: Optional[np.random.Generator] = None,
    factor_matrices: Optional[Sequence[np.ndarray]] = None,
) -> float:
    """Max entry difference between the expansion and brute-force enumeration, relative to max(1, scale)."""
    size = mode_dim ** particle_count
    if size > EXPANSION_DENSE_CAP:
        raise DimensionCapError("expansion oracle tensor product", size, EXPANSION_DENSE_CAP)

    if factor_matrices is None:
        rng = np.random.default_rng() if rng is None else rng
        shape = (mode_dim, mode_dim)
        factor_matrices = [rng.normal(size=shape) + 1j * rng.normal(size=shape) for _ in range(particle_count)]

    explicit = explicit_permutation_sum(factor_matrices)
    expanded = expansion.evaluate(factor_matrices)
    scale = max(1.0, float(np.abs(explicit).max()))
    return float(np.abs(explicit - expanded).max()) / scale


def commutator_identity_check(rng: np.random.Generator, size: int = 4, trials: int = 5) -> float:
    """[AB, CD] = A[B,C]D + AC[B,D] + [A,C]DB + C[A,D]B on random matrices."""

    def bracket(u, v):
        return u @ v - v @ u

    worst = 0.0
    for _ in range(trials):
        a, b, c, d = (rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size)) for _ in range(4))
        lhs = bracket(a @ b, c @ d)
        rhs = a @ bracket(b, c) @ d + a @ c @ bracket(b, d) + bracket(a, c) @ d @ b + c @ bracket(a, d) @ b
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def truncated_oscillator(levels: int, hbar: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """X and P of a unit oscillator cut to `levels`; X is tridiagonal."""
    lowering = np.diag(np.sqrt(np.arange(1, levels)), 1).astype(complex)
    raising = lowering.conj().T
    x = np.sqrt(hbar / 2) * (lowering + raising)
    p = 1j * np.sqrt(hbar / 2) * (raising - lowering)
    return x, p


def oscillator_faithfulness(word: Word, levels: Optional[int] = None, hbar: float = 1.0) -> float:
    """Word product vs its normal form on columns below levels - len(word)."""
    levels = len(word) + 2 if levels is None else levels
    if levels < len(word) + 2:
        raise ValueError(f"need at least {len(word) + 2} levels for a word of length {len(word)}")
    x, p = truncated_oscillator(levels, hbar)
    reliable = levels - len(word)
    difference = word.to_matrix(x, p) - normal_order(word).to_matrix(x, p, hbar)
    return float(np.abs(difference[:, :reliable]).max())
