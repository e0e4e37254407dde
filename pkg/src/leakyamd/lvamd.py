"""Limited-view AMD codes.

Two families live here:

* :class:`LvStrongInstance` composes the AMD code with the wiretap II coset
  code, ``Enc(m) = WtIIenc(AMDenc(m))``.  The AMD randomness ``i`` and the
  wiretap randomness ``j`` are both supplied by the caller.
* :class:`LvWeakInstance` is deterministic: ``m -> (m || f(m, G))`` with the
  exponent tag ``f(m, G) = sum_j prod_i m_i ** G[i, j]`` over nonzero
  messages.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np

from . import linalg
from .amd import REJECT, AmdParams, amd_decode, amd_encode
from .field import check_prime, discrete_log_table, primitive_element
from .vectors import all_vectors, as_vector, index_weights
from .wiretap2 import Wt2Instance, wt2_decode, wt2_encode


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class LvStrongInstance:
    amd: AmdParams
    wt2: Wt2Instance

    def __post_init__(self):
        if self.wt2.k_msg != self.amd.d + 2:
            raise ValueError(
                f"wiretap message length {self.wt2.k_msg} != AMD codeword length {self.amd.d + 2}"
            )
        if self.wt2.q != self.amd.q:
            raise ValueError("AMD and wiretap codes use different fields")

    @classmethod
    def build(cls, q: int, k: int, n: int) -> "LvStrongInstance":
        amd = AmdParams(q, k)
        return cls(amd, Wt2Instance.build(q, n, k + 2))

    @property
    def q(self) -> int:
        return self.amd.q

    @property
    def k(self) -> int:
        return self.amd.d

    @property
    def n(self) -> int:
        return self.wt2.n

    @property
    def n_inner(self) -> int:
        return self.amd.d + 2

    @property
    def rho(self) -> Fraction:
        return Fraction(self.n - self.n_inner, self.n)

    @property
    def read_budget(self) -> int:
        return floor(self.rho * self.n)

    @property
    def delta(self) -> Fraction:
        return self.amd.delta

    @property
    def message_count(self) -> int:
        return self.q ** self.k

    @property
    def group_order(self) -> int:
        return self.q ** self.n

    def messages(self) -> np.ndarray:
        return self.amd.messages()

    def codeword_array(self, m) -> np.ndarray:
        """Codewords of ``m`` for all (i, j), ordered by i then j."""
        inner = self.amd.codeword_array(m)
        js = all_vectors(self.wt2.randomness_length, self.q)
        words = self.wt2.encode_many(inner[:, None, :], js[None, :, :])
        return words.reshape(-1, self.n)

    def randomness(self):
        """Pairs ``(i, j)``: AMD randomness and wiretap randomness."""
        return itertools.product(range(self.q), itertools.product(range(self.q), repeat=self.n - self.n_inner))

    def encode(self, m, rand) -> np.ndarray:
        i, j = rand
        return lv_strong_encode(m, i, j, self)

    def decode(self, x):
        return lv_strong_decode(x, self)

    def decode_index(self, words: np.ndarray) -> np.ndarray:
        return self.amd.decode_index(self.wt2.syndrome(words))


def lv_strong_encode(m, i: int, j, inst: LvStrongInstance) -> np.ndarray:
    return wt2_encode(amd_encode(m, i, inst.amd), j, inst.wt2)


def lv_strong_decode(x, inst: LvStrongInstance):
    return amd_decode(wt2_decode(x, inst.wt2), inst.amd)


def _weak_matrix_ok(g: np.ndarray, q: int) -> bool:
    if not linalg.is_unit_mod(linalg.det(g, q - 1), q - 1):
        return False
    return all(len(set(col)) == len(col) for col in g.T.tolist())


_EXHAUSTIVE_LIMIT = 2_000_000


def _weak_candidates(k: int, bound: int):
    i = np.arange(k)[:, None]
    j = np.arange(k)[None, :]
    s = 0
    while 2 * k - 1 + s <= bound:
        yield i + j + 1 + s
        s += 1
    for width in range(k, bound + 1):
        for s in range(width):
            yield 1 + (i + j + s) % width
    # last resort: every matrix whose columns are k-permutations of 1..bound
    cols = list(itertools.permutations(range(1, bound + 1), k))
    if len(cols) ** k <= _EXHAUSTIVE_LIMIT:
        for choice in itertools.product(cols, repeat=k):
            yield np.array(choice).T


def lv_weak_matrix(k: int, q: int, psi) -> np.ndarray:
    """First structured exponent matrix meeting the weak-code conditions.

    Candidates are tried in a fixed order: Hankel matrices ``i + j + 1 + s``
    for growing shift ``s``, then wrapped circulants ``1 + (i + j + s) mod w``
    for growing width ``w``, then (for small sizes) every matrix with
    distinct column entries in lexicographic column order.  Every entry lies
    in ``[1, floor(psi * k)]``.
    """
    check_prime(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    bound = floor(_as_fraction(psi) * k)
    # entries must be distinct residues of Z_{q-1}
    bound = min(bound, q - 2)
    for g in _weak_candidates(k, bound):
        g = g.astype(np.int64)
        if _weak_matrix_ok(g, q):
            return g
    raise ValueError(f"no exponent matrix with entries <= {bound} for k={k}, q={q}")


@dataclass(frozen=True, eq=False)
class LvWeakInstance:
    q: int
    k: int
    beta: int
    G: np.ndarray = field(repr=False)
    psi: Fraction = Fraction(3, 2)
    _powers: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q, k = self.q, self.k
        check_prime(q)
        g = np.asarray(self.G, dtype=np.int64)
        if g.shape != (k, k):
            raise ValueError(f"exponent matrix has shape {g.shape}, expected ({k}, {k})")
        if np.any(g < 0) or np.any(g >= q - 1):
            raise ValueError("exponent entries must be residues of Z_{q-1}")
        if not linalg.is_unit_mod(linalg.det(g, q - 1), q - 1):
            raise ValueError("exponent matrix is singular over Z_{q-1}")
        if not all(len(set(col)) == k for col in g.T.tolist()):
            raise ValueError("a column of the exponent matrix repeats an entry")
        psi = _as_fraction(self.psi)
        if g.max() > psi * k:
            raise ValueError(f"entry {g.max()} exceeds psi*k = {psi * k}")
        discrete_log_table(self.beta, q)  # raises unless beta is primitive
        g.setflags(write=False)
        object.__setattr__(self, "G", g)
        object.__setattr__(self, "psi", psi)
        e = np.arange(int(g.max()) + 1)
        x = np.arange(q)
        powers = np.array([[pow(int(a), int(b), q) for b in e] for a in x], dtype=np.int64)
        object.__setattr__(self, "_powers", powers)

    @classmethod
    def build(cls, q: int, k: int, psi=Fraction(3, 2)) -> "LvWeakInstance":
        g = lv_weak_matrix(k, q, psi)
        return cls(q, k, primitive_element(q).value, g, _as_fraction(psi))

    @property
    def n(self) -> int:
        return self.k + 1

    @property
    def delta(self) -> Fraction:
        return self.psi * self.k / (self.q - 1)

    @property
    def message_count(self) -> int:
        return (self.q - 1) ** self.k

    @property
    def group_order(self) -> int:
        return self.q ** self.n

    def leakage_condition(self, rho) -> bool:
        """Whether ``k - (k+1) rho >= 1``, the regime the bound psi*k/(q-1) covers."""
        return self.k - (self.k + 1) * _as_fraction(rho) >= 1

    def tag(self, m: np.ndarray) -> np.ndarray:
        """Vectorised exponent tag over the last axis of ``m``."""
        m = np.mod(np.asarray(m, dtype=np.int64), self.q)
        acc = np.zeros(m.shape[:-1], dtype=np.int64)
        for j in range(self.k):
            prod = np.ones(m.shape[:-1], dtype=np.int64)
            for i in range(self.k):
                prod = prod * self._powers[m[..., i], self.G[i, j]] % self.q
            acc = (acc + prod) % self.q
        return acc

    def tag_by_logs(self, m) -> int:
        """Same tag through discrete logs: ``sum_j beta ** (m' . G[:, j] mod q-1)``."""
        logs = discrete_log_table(self.beta, self.q)
        mp = [logs[int(x) % self.q] for x in m]
        total = 0
        for j in range(self.k):
            e = sum(mp[i] * int(self.G[i, j]) for i in range(self.k)) % (self.q - 1)
            total += pow(self.beta, e, self.q)
        return total % self.q

    def messages(self) -> np.ndarray:
        return all_vectors(self.k, self.q, lo=1)

    def message_codeword_arrays(self):
        """(codewords, message indices) for every message, each equally likely."""
        ms = self.messages()
        words = np.column_stack([ms, self.tag(ms)])
        return words, ms @ index_weights(self.k, self.q)

    def randomness(self):
        return [()]

    def encode(self, m, rand=()) -> np.ndarray:
        return lv_weak_encode(m, self)

    def decode(self, x):
        return lv_weak_decode(x, self)

    def decode_index(self, words: np.ndarray) -> np.ndarray:
        w = np.mod(words, self.q)
        m = w[..., : self.k]
        ok = np.all(m != 0, axis=-1) & (self.tag(m) == w[..., self.k])
        return np.where(ok, m @ index_weights(self.k, self.q), -1)


def lv_weak_encode(m, inst: LvWeakInstance) -> np.ndarray:
    m = as_vector(m, inst.k, inst.q, "message")
    if np.any(m == 0):
        raise ValueError("weak-code messages must have nonzero components")
    return np.concatenate([m, [int(inst.tag(m))]]).astype(np.int64)


def lv_weak_decode(x, inst: LvWeakInstance):
    x = as_vector(x, inst.k + 1, inst.q, "codeword")
    m = x[: inst.k]
    if np.any(m == 0) or int(inst.tag(m)) != int(x[inst.k]):
        return REJECT
    return m.copy()
