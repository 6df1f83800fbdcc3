"""
Composition of permutation arrays.

A permutation of ``0 .. d-1`` is an integer array ``g`` with ``g[x]`` the
image of ``x``. A word ``a b`` acts as ``x ↦ a(b(x))``: the rightmost factor
is applied first, so ``product(a, b) == a[b]``.

Generator sequences are passed as ``moves`` with ``moves[i - 1]`` the array of
``t_i``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

Perm = np.ndarray


def identity(degree: int) -> Perm:
    return np.arange(degree, dtype=np.int64)


def product(*factors: Perm) -> Perm:
    """The written word ``f_1 f_2 ... f_k`` (``f_k`` acts first)."""
    result = factors[-1]
    for factor in reversed(factors[:-1]):
        result = factor[result]
    return result


def power(perm: Perm, exponent: int) -> Perm:
    result = identity(len(perm))
    base = perm
    while exponent:
        if exponent & 1:
            result = base[result]
        base = base[base]
        exponent >>= 1
    return result


def inverse(perm: Perm) -> Perm:
    result = np.empty_like(perm)
    result[perm] = np.arange(len(perm), dtype=perm.dtype)
    return result


def is_identity(perm: Perm) -> bool:
    return bool(np.array_equal(perm, np.arange(len(perm))))


def first_moved(perm: Perm) -> int | None:
    """Least point moved by ``perm``, or ``None`` for the identity."""
    moved = np.flatnonzero(perm != np.arange(len(perm)))
    return int(moved[0]) if moved.size else None


def promotion_arrays(moves: Sequence[Perm], degree: int) -> list[Perm]:
    """``[∂_0, ∂_1, ..., ∂_{n-1}]`` with ``∂_i = t_i ⋯ t_1``."""
    arrays = [identity(degree)]
    for move in moves:
        arrays.append(move[arrays[-1]])
    return arrays


def evacuation_arrays(moves: Sequence[Perm], degree: int) -> list[Perm]:
    """``[q_0, q_1, ..., q_{n-1}]`` with ``q_i = ∂_0 ∂_1 ⋯ ∂_i``."""
    promotions = promotion_arrays(moves, degree)
    arrays = [promotions[0]]
    for promotion in promotions[1:]:
        arrays.append(arrays[-1][promotion])
    return arrays


def qjk_array(evacuations: Sequence[Perm], j: int, k: int) -> Perm:
    """``q_{jk} = q_{k-1} q_{k-j} q_{k-1}`` from precomputed evacuations."""
    outer = evacuations[k - 1]
    return product(outer, evacuations[k - j], outer)
