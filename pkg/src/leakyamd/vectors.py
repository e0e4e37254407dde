"""Helpers for residue vectors and their lexicographic enumeration."""

from __future__ import annotations

import itertools

import numpy as np


def as_vector(x, length: int, q: int, what: str = "vector") -> np.ndarray:
    a = np.asarray(x, dtype=np.int64).reshape(-1)
    if a.shape[0] != length:
        raise ValueError(f"{what} has length {a.shape[0]}, expected {length}")
    return np.mod(a, q)


def vector_index(v, q: int) -> int:
    """Lexicographic index of ``v`` in F_q^len(v), first component most significant."""
    idx = 0
    for x in v:
        idx = idx * q + int(x) % q
    return idx


def index_weights(length: int, q: int) -> np.ndarray:
    return np.array([q ** (length - 1 - i) for i in range(length)], dtype=np.int64)


def all_vectors(length: int, q: int, *, lo: int = 0) -> np.ndarray:
    """Every vector of {lo..q-1}^length as rows, in lexicographic order."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(lo, q), repeat=length)), dtype=np.int64)
