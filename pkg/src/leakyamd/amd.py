"""Systematic AMD code over F_q with tag ``r**(d+2) + sum_i m_i r**i``.

Encoding maps a message ``m`` in F_q^d and a randomness symbol ``r`` to
``(m, r, f(r, m))``; decoding recomputes the tag and returns the message or
:data:`REJECT`.  Security is ``(d+1)/q``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import check_prime
from .vectors import all_vectors, as_vector, index_weights


class Reject(enum.Enum):
    """The decoder's manipulation-detected output (written ⊥ in the literature)."""

    REJECT = "REJECT"

    def __repr__(self):
        return "REJECT"

    __str__ = __repr__


REJECT = Reject.REJECT


@dataclass(frozen=True)
class AmdParams:
    """A ``(q**d, q**(d+2), (d+1)/q)`` AMD code."""

    q: int
    d: int

    def __post_init__(self):
        check_prime(self.q)
        if self.d < 1:
            raise ValueError(f"message length d={self.d} must be >= 1")
        # prime field: characteristic is q itself
        if (self.d + 2) % self.q == 0:
            raise ValueError(f"q={self.q} divides d+2={self.d + 2}")

    @property
    def k(self) -> int:
        return self.d

    @property
    def n(self) -> int:
        return self.d + 2

    @property
    def delta(self) -> Fraction:
        return Fraction(self.d + 1, self.q)

    @property
    def message_count(self) -> int:
        return self.q ** self.d

    @property
    def group_order(self) -> int:
        return self.q ** (self.d + 2)

    def tag(self, m: np.ndarray, r: np.ndarray) -> np.ndarray:
        """Vectorised tag; ``m`` has shape (..., d) and ``r`` shape (...)."""
        q = self.q
        r = np.mod(np.asarray(r, dtype=np.int64), q)
        m = np.mod(np.asarray(m, dtype=np.int64), q)
        acc = np.zeros(np.broadcast_shapes(r.shape, m.shape[:-1]), dtype=np.int64)
        power = np.ones_like(r)
        for i in range(self.d):
            power = power * r % q
            acc = (acc + m[..., i] * power) % q
        power = power * r % q
        power = power * r % q
        return (acc + power) % q

    def messages(self) -> np.ndarray:
        return all_vectors(self.d, self.q)

    def codeword_array(self, m) -> np.ndarray:
        """All ``q`` codewords of ``m``, one per randomness value r = 0..q-1."""
        m = as_vector(m, self.d, self.q, "message")
        r = np.arange(self.q, dtype=np.int64)
        ms = np.broadcast_to(m, (self.q, self.d))
        return np.column_stack([ms, r, self.tag(ms, r)])

    def randomness(self):
        return range(self.q)

    def encode(self, m, r) -> np.ndarray:
        return amd_encode(m, r, self)

    def decode(self, x):
        return amd_decode(x, self)

    def decode_index(self, words: np.ndarray) -> np.ndarray:
        """Message index of each word in ``words`` (shape (..., d+2)); -1 for REJECT."""
        w = np.mod(words, self.q)
        ok = self.tag(w[..., : self.d], w[..., self.d]) == w[..., self.d + 1]
        idx = w[..., : self.d] @ index_weights(self.d, self.q)
        return np.where(ok, idx, -1)


def amd_encode(m, r: int, params: AmdParams) -> np.ndarray:
    m = as_vector(m, params.d, params.q, "message")
    r = int(r) % params.q
    t = int(params.tag(m, np.int64(r)))
    return np.concatenate([m, [r, t]]).astype(np.int64)


def amd_decode(x, params: AmdParams):
    """Return the message if the tag verifies, else :data:`REJECT`."""
    x = as_vector(x, params.d + 2, params.q, "codeword")
    m = x[: params.d]
    if int(params.tag(m, x[params.d])) != int(x[params.d + 1]):
        return REJECT
    return m.copy()
