"""Coset-coding wiretap II scheme built on a Reed-Solomon (MDS) code.

A message ``m`` picks a coset of the MDS code generated by ``G``; the codeword
is a uniformly random member ``[r, m] @ [G; G~]``.  Decoding is the syndrome
``H x^T`` which, because ``H G~^T = I``, *is* the message.  Any
``n - k_msg`` positions of a codeword are independent of the message.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .vectors import all_vectors, as_vector
from .field import check_prime


@dataclass(frozen=True, eq=False)
class Wt2Instance:
    q: int
    n: int
    k_msg: int
    G: np.ndarray = field(repr=False)
    G_tilde: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)

    def __post_init__(self):
        q, n, k = self.q, self.n, self.k_msg
        if self.G.shape != (n - k, n) or self.G_tilde.shape != (k, n) or self.H.shape != (k, n):
            raise ValueError("matrix shapes do not match (n, k_msg)")
        if np.any(linalg.matmul(self.H, self.G.T, q)):
            raise ValueError("H G^T != 0")
        if not np.array_equal(linalg.matmul(self.H, self.G_tilde.T, q), np.eye(k, dtype=np.int64)):
            raise ValueError("H G~^T != I")
        for a in (self.G, self.G_tilde, self.H):
            a.setflags(write=False)

    @classmethod
    def build(cls, q: int, n: int, k_msg: int) -> "Wt2Instance":
        """Standard instance: RS generator on points 1..n plus its Vandermonde completion."""
        check_prime(q)
        if not 0 < k_msg < n:
            raise ValueError(f"need 0 < k_msg < n, got k_msg={k_msg}, n={n}")
        g = linalg.rs_generator(n, n - k_msg, q)
        return cls.from_matrices(q, g, linalg.complete_basis(g, q))

    @classmethod
    def from_matrices(cls, q: int, g, g_tilde) -> "Wt2Instance":
        check_prime(q)
        g = np.atleast_2d(linalg.residues(g, q))
        n = g.shape[1]
        gt = linalg.residues(g_tilde, q).reshape(-1, n)
        h = linalg.dual_parity_check(g, gt, q)
        return cls(q, n, gt.shape[0], g, gt, h)

    @property
    def rho(self) -> Fraction:
        return Fraction(self.n - self.k_msg, self.n)

    @property
    def randomness_length(self) -> int:
        return self.n - self.k_msg

    def encode_many(self, m: np.ndarray, r: np.ndarray) -> np.ndarray:
        """Batch encoder: ``m`` (..., k_msg), ``r`` (..., n-k_msg) broadcast together."""
        q = self.q
        return (np.mod(r, q) @ self.G + np.mod(m, q) @ self.G_tilde) % q

    def codeword_array(self, m) -> np.ndarray:
        """Codewords of ``m`` for every randomness vector, lexicographic in r."""
        m = as_vector(m, self.k_msg, self.q, "message")
        return self.encode_many(m[None, :], all_vectors(self.randomness_length, self.q))

    def syndrome(self, words: np.ndarray) -> np.ndarray:
        return (np.mod(words, self.q) @ self.H.T) % self.q


def wt2_encode(m, r, inst: Wt2Instance) -> np.ndarray:
    m = as_vector(m, inst.k_msg, inst.q, "message")
    r = as_vector(r, inst.randomness_length, inst.q, "randomness")
    return inst.encode_many(m, r)


def wt2_decode(x, inst: Wt2Instance) -> np.ndarray:
    x = as_vector(x, inst.n, inst.q, "codeword")
    return inst.syndrome(x)
