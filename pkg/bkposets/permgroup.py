"""
Exact permutation groups on L(P) positions.

Orders come from a deterministic Schreier–Sims stabilizer chain (base points
chosen as first moved points, explicit transversals). Transitive groups of
large degree are first tested for containing the alternating group: a
certificate is an element whose cycle structure forces a transposition, a
3-cycle or a long prime cycle into the group. A found certificate is a proof,
so recognition never reports a wrong order; when none is found the full chain
is built.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from bkposets import words
from bkposets.errors import OrderDivisionError, ParamError, UnknownGeneratorError
from bkposets.linext import enumerate_extensions
from bkposets.poset import Poset
from config import settings
from utils.decorators import log_method

logger = logging.getLogger(__name__)

Perm = np.ndarray


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def cycles(perm: Perm) -> list[list[int]]:
    """Non-trivial cycles of ``perm``."""
    seen = np.zeros(len(perm), dtype=bool)
    images = perm.tolist()
    found = []
    for start in range(len(images)):
        if seen[start] or images[start] == start:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = images[x]
        found.append(cycle)
    return found


def is_even(perm: Perm) -> bool:
    return sum(len(cycle) - 1 for cycle in cycles(perm)) % 2 == 0


def minimal_block_classes(degree: int, generators: Sequence[Perm], alpha: int, beta: int) -> list[int]:
    """
    Finest block system in which ``alpha`` and ``beta`` share a block
    (union-find closure under the generators). Returns a representative per point.
    """
    parent = list(range(degree))
    images = [g.tolist() for g in generators]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> tuple[int, int] | None:
        a, b = find(a), find(b)
        if a == b:
            return None
        if b < a:
            a, b = b, a
        parent[b] = a
        return a, b

    queue = [union(alpha, beta)]
    while queue:
        merged = queue.pop()
        if merged is None:
            continue
        x, y = merged
        for g in images:
            joined = union(g[x], g[y])
            if joined is not None:
                queue.append(joined)
    return [find(x) for x in range(degree)]


def orbit(degree: int, generators: Sequence[Perm], point: int) -> list[int]:
    images = [g.tolist() for g in generators]
    seen = {point}
    queue = [point]
    for x in queue:
        for g in images:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return queue


class StabilizerChain:
    """Base, strong generators and transversals built by Schreier–Sims."""

    def __init__(self, degree: int, generators: Sequence[Perm]) -> None:
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[list[Perm]] = []
        self.transversals: list[dict[int, Perm]] = []
        self.inverse_transversals: list[dict[int, Perm]] = []
        self._build([g for g in generators if not words.is_identity(g)])

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.transversals.append({})
        self.inverse_transversals.append({})

    def _fixes_base(self, g: Perm, upto: int) -> bool:
        return all(int(g[b]) == b for b in self.base[:upto])

    def _grow_orbit(self, level: int) -> None:
        root = self.base[level]
        identity = words.identity(self.degree)
        transversal = {root: identity}
        inverse = {root: identity}
        queue = [root]
        for p in queue:
            u = transversal[p]
            for s in self.strong[level]:
                q = int(s[p])
                if q not in transversal:
                    transversal[q] = s[u]
                    inverse[q] = words.inverse(transversal[q])
                    queue.append(q)
        self.transversals[level] = transversal
        self.inverse_transversals[level] = inverse

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Sift ``g`` from ``start``; returns the residue and the level it stopped at."""
        for level in range(start, len(self.base)):
            beta = int(g[self.base[level]])
            inverse = self.inverse_transversals[level].get(beta)
            if inverse is None:
                return g, level
            g = inverse[g]
        return g, len(self.base)

    def _schreier_failure(self, level: int) -> tuple[Perm, int] | None:
        transversal = self.transversals[level]
        inverse = self.inverse_transversals[level]
        for p in list(transversal):
            u = transversal[p]
            for s in self.strong[level]:
                q = int(s[p])
                schreier = inverse[q][s[u]]
                if words.is_identity(schreier):
                    continue
                residue, stopped = self.strip(schreier, level + 1)
                if stopped < len(self.base) or not words.is_identity(residue):
                    return residue, stopped
        return None

    def _build(self, generators: list[Perm]) -> None:
        for g in generators:
            if self._fixes_base(g, len(self.base)):
                moved = words.first_moved(g)
                assert moved is not None
                self._add_level(moved)
        for level in range(len(self.base)):
            self.strong[level] = [g for g in generators if self._fixes_base(g, level)]
            self._grow_orbit(level)

        level = len(self.base) - 1
        while level >= 0:
            failure = self._schreier_failure(level)
            if failure is None:
                level -= 1
                continue
            residue, stopped = failure
            if stopped == len(self.base):
                moved = words.first_moved(residue)
                assert moved is not None
                self._add_level(moved)
            for target in range(level + 1, stopped + 1):
                self.strong[target].append(residue)
                self._grow_orbit(target)
            level = stopped

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def contains(self, g: Perm) -> bool:
        residue, stopped = self.strip(g)
        return stopped == len(self.base) and words.is_identity(residue)

    def stabilizer_generators(self) -> list[Perm]:
        """Generators of the stabilizer of ``base[0]``."""
        return self.strong[1] if len(self.strong) > 1 else []


@dataclass(frozen=True, eq=False)
class Generator:
    name: str
    perm: Perm
    trivial: bool


def _product_replacement(generators: Sequence[Perm], degree: int, seed: int, count: int) -> Iterator[Perm]:
    """Seeded product-replacement walk; yields ``count`` group elements."""
    rng = np.random.default_rng(seed)
    slots = [g.copy() for g in generators]
    while len(slots) < 10:
        slots.append(slots[len(slots) % len(generators)].copy())
    accumulator = words.identity(degree)
    burn_in = 40
    for step in range(burn_in + count):
        i, j = (int(x) for x in rng.choice(len(slots), size=2, replace=False))
        right = slots[j] if rng.random() < 0.5 else words.inverse(slots[j])
        slots[i] = slots[i][right]
        accumulator = accumulator[slots[i]]
        if step >= burn_in:
            yield accumulator


class PermutationGroup:
    """
    Group generated by named permutations of ``0 .. degree-1``.

    Usage:
        group = bk_group(antichain(3))
        group.order, group.is_primitive()
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Perm],
        names: Sequence[str] | None = None,
        recognize_giants: bool = True,
    ) -> None:
        if degree < 1:
            raise ParamError(f"degree must be positive, got {degree}")
        names = list(names) if names is not None else [f"g{k}" for k in range(1, len(generators) + 1)]
        if len(names) != len(generators):
            raise ParamError("one name per generator is required")
        self.degree = degree
        self.generators = tuple(
            Generator(name=name, perm=np.asarray(g, dtype=np.int64), trivial=words.is_identity(np.asarray(g)))
            for name, g in zip(names, generators)
        )
        self.recognize_giants = recognize_giants
        for gen in self.generators:
            if len(gen.perm) != degree or sorted(gen.perm.tolist()) != list(range(degree)):
                raise ParamError(f"generator {gen.name} is not a permutation of degree {degree}")

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, generators={[g.name for g in self.generators]})"

    @property
    def perms(self) -> list[Perm]:
        return [g.perm for g in self.generators if not g.trivial]

    @cached_property
    def chain(self) -> StabilizerChain:
        logger.debug(f"Building stabilizer chain, degree {self.degree}")
        return StabilizerChain(self.degree, self.perms)

    @cached_property
    def _transitive(self) -> bool:
        return len(orbit(self.degree, self.perms, 0)) == self.degree

    def is_transitive(self) -> bool:
        return self._transitive

    @cached_property
    def _all_even(self) -> bool:
        return all(is_even(g) for g in self.perms)

    @cached_property
    def giant(self) -> bool:
        """True when a certificate proves the group contains Alt(degree)."""
        d = self.degree
        if not self.recognize_giants or d < settings.giant_min_degree or not self._transitive:
            return False
        perms = self.perms
        for g in _product_replacement(perms, d, settings.giant_seed, settings.giant_tries):
            for cycle in cycles(g):
                length = len(cycle)
                if d / 2 < length <= d - 3 and _is_prime(length):
                    logger.debug(f"Giant certificate: {length}-cycle at degree {d}")
                    return True
            if self._small_prime_certificate(g):
                return True
        return False

    def _small_prime_certificate(self, g: Perm) -> bool:
        found = cycles(g)
        for p in (2, 3):
            # a suitable power of g is then a single p-cycle
            divisible = [cycle for cycle in found if len(cycle) % p == 0]
            if len(divisible) != 1 or len(divisible[0]) != p:
                continue
            a, b = divisible[0][:2]
            if len(set(minimal_block_classes(self.degree, self.perms, a, b))) == 1:
                logger.debug(f"Giant certificate: power is a {p}-cycle at degree {self.degree}")
                return True
        return False

    @cached_property
    def order(self) -> int:
        if self.giant:
            full = math.factorial(self.degree)
            return full // 2 if self._all_even else full
        return self.chain.order

    def contains(self, perm: Perm | Sequence[int]) -> bool:
        perm = np.asarray(perm, dtype=np.int64)
        if len(perm) != self.degree or sorted(perm.tolist()) != list(range(self.degree)):
            return False
        if self.giant:
            return not self._all_even or is_even(perm)
        return self.chain.contains(perm)

    def is_symmetric(self) -> bool:
        d = self.degree
        if d <= 1:
            return True
        if not self._transitive or self._all_even:
            return False
        if self.giant:
            return True
        return self.order == math.factorial(d)

    @cached_property
    def _primitive(self) -> bool:
        d = self.degree
        if not self._transitive:
            return False
        if d <= 3 or self.giant:
            return True
        alpha = self.chain.base[0] if self.chain.base else 0
        stabilizer = self.chain.stabilizer_generators()
        seen = {alpha}
        for beta in range(d):
            if beta in seen:
                continue
            suborbit = orbit(d, stabilizer, beta)
            seen.update(suborbit)
            if len(set(minimal_block_classes(d, self.perms, alpha, beta))) != 1:
                return False
        return True

    def is_primitive(self) -> bool:
        return self._primitive

    def is_2_transitive(self) -> bool:
        d = self.degree
        if d < 2 or not self._transitive:
            return False
        if self.giant:
            return True
        alpha = self.chain.base[0] if self.chain.base else 0
        rest = orbit(d, self.chain.stabilizer_generators(), (alpha + 1) % d)
        return len(rest) == d - 1

    def stabilizer_order(self) -> int:
        quotient, remainder = divmod(self.order, self.degree)
        if remainder:
            raise OrderDivisionError(f"group order {self.order} is not divisible by degree {self.degree}")
        return quotient

    def generator(self, name: str) -> Generator:
        wanted = name.replace("_", "")
        for gen in self.generators:
            if gen.name.replace("_", "") == wanted:
                return gen
        raise UnknownGeneratorError(f"no generator named {name!r}")

    def subgroup_without(self, name: str) -> PermutationGroup:
        removed = self.generator(name)
        kept = [g for g in self.generators if g is not removed]
        return PermutationGroup(
            self.degree,
            [g.perm for g in kept],
            [g.name for g in kept],
            recognize_giants=self.recognize_giants,
        )


def brute_force_order(degree: int, generators: Sequence[Perm], limit: int = 100_000) -> int | None:
    """Size of the closure by breadth-first search, or ``None`` past ``limit`` elements."""
    start = tuple(range(degree))
    images = [g.tolist() for g in generators]
    seen = {start}
    queue = [start]
    for element in queue:
        for g in images:
            moved = tuple(g[x] for x in element)
            if moved not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(moved)
                queue.append(moved)
    return len(seen)


@lru_cache(maxsize=512)
def _cached_group(poset: Poset, recognize_giants: bool, cap: int) -> PermutationGroup:
    space = enumerate_extensions(poset, cap)
    names = [f"t{i}" for i in range(1, poset.n)]
    return PermutationGroup(space.degree, space.moves, names, recognize_giants=recognize_giants)


@log_method
def bk_group(poset: Poset, recognize_giants: bool = True, cap: int | None = None) -> PermutationGroup:
    """
    BK_P: the group generated by ``t_1 .. t_{n-1}`` acting on L(P) positions.
    Trivial moves stay in the generator list and are flagged.
    """
    return _cached_group(poset, recognize_giants, settings.max_degree if cap is None else cap)
