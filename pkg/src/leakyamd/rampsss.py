"""Packed-polynomial (t, r, N) ramp secret sharing and its robust variant.

The dealer picks the unique polynomial ``P`` of degree ``<= r-1`` with
``P(e_i) = s_i`` on the secret points and ``P(z_j) = rand_j`` on the
randomness points.  By default ``e_i = N+1, ..., N+r-t`` and the ``z_j`` are
the first ``t`` share points; both can be given explicitly.  Share ``j`` is
``P(j)`` for ``j = 1..N``.  Sharing and recovery are both linear maps, which
is what the robust composition with a limited-view AMD code relies on.

Not every placement suits the robust composition.  ``c`` corrupted shares
reveal, once the dealer randomness is eliminated, a few linear functionals
``A`` of the inner codeword.  When ``rank(A G^T) = rank(A)`` for the inner
wiretap generator ``G``, that view is independent of the inner AMD codeword
and the composed scheme inherits the plain AMD bound.
:meth:`RobustRampScheme.build` searches placements for one where this holds
for every corrupt set within budget.

Share slots are numbered from 1, as participants are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .amd import REJECT
from .field import check_prime
from .lvamd import LvStrongInstance, lv_strong_decode, lv_strong_encode
from .vectors import as_vector


def lagrange_matrix(nodes: Sequence[int], points: Sequence[int], q: int) -> np.ndarray:
    """``L[a, b] = ell_b(points[a])`` for the Lagrange basis on ``nodes``."""
    nodes = [int(x) % q for x in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be distinct")
    out = np.zeros((len(points), len(nodes)), dtype=np.int64)
    for b, xb in enumerate(nodes):
        denom = 1
        for xc in nodes:
            if xc != xb:
                denom = denom * (xb - xc) % q
        inv = pow(denom, -1, q)
        for a, pt in enumerate(points):
            num = 1
            for xc in nodes:
                if xc != xb:
                    num = num * (int(pt) - xc) % q
            out[a, b] = num * inv % q
    return out


class ShareVector:
    """N share slots, each a residue or absent (``None``).

    Addition is slot-wise; an absent slot absorbs: ``None + x = None``.
    """

    __slots__ = ("values", "q")

    def __init__(self, values: Iterable, q: int):
        vals = []
        for v in values:
            vals.append(None if v is None else int(v) % q)
        self.values = tuple(vals)
        self.q = q

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index: int):
        """1-based slot access."""
        if not 1 <= index <= len(self.values):
            raise IndexError(f"slot {index} outside [1, {len(self.values)}]")
        return self.values[index - 1]

    def __eq__(self, other):
        return isinstance(other, ShareVector) and (self.values, self.q) == (other.values, other.q)

    def __add__(self, other: "ShareVector") -> "ShareVector":
        if len(other) != len(self) or other.q != self.q:
            raise ValueError("share vectors differ in length or field")
        return ShareVector(
            (None if a is None or b is None else a + b for a, b in zip(self.values, other.values)),
            self.q,
        )

    def __repr__(self):
        return "ShareVector(%s)" % ", ".join("⊥" if v is None else str(v) for v in self.values)

    def with_absent(self, *slots: int) -> "ShareVector":
        vals = list(self.values)
        for s in slots:
            vals[s - 1] = None
        return ShareVector(vals, self.q)

    def to_lines(self) -> str:
        return "".join(
            f"{i}:{'ABSENT' if v is None else v}\n" for i, v in enumerate(self.values, start=1)
        )

    @classmethod
    def from_lines(cls, text: str, q: int, N: int | None = None) -> "ShareVector":
        """Parse ``index:value`` lines; missing indices and ``ABSENT`` become absent."""
        found: dict[int, int | None] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            idx, sep, val = line.partition(":")
            try:
                i = int(idx)
                v = None if val.strip().upper() == "ABSENT" else int(val)
            except ValueError:
                raise ValueError(f"line {lineno}: malformed share {raw!r}") from None
            if not sep or i < 1 or i in found:
                raise ValueError(f"line {lineno}: malformed share {raw!r}")
            found[i] = v
        size = N if N is not None else max(found, default=0)
        if any(i > size for i in found):
            raise ValueError(f"share index exceeds N={size}")
        return cls((found.get(i) for i in range(1, size + 1)), q)


@dataclass(frozen=True, eq=False)
class RampScheme:
    q: int
    t: int
    r: int
    N: int
    secret_points: tuple = None
    random_points: tuple = None
    share_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        q = check_prime(self.q)
        if not 0 <= self.t < self.r <= self.N:
            raise ValueError(f"need 0 <= t < r <= N, got t={self.t}, r={self.r}, N={self.N}")
        if self.N >= q:
            raise ValueError(f"q={q} too small for {self.N} share points")
        sec = self.secret_points
        if sec is None:
            if q <= self.N + self.r - self.t:
                raise ValueError(f"q={q} too small for {self.N + self.r - self.t} distinct points")
            sec = range(self.N + 1, self.N + 1 + self.r - self.t)
        rnd = self.share_points[: self.t] if self.random_points is None else self.random_points
        sec = tuple(int(x) % q for x in sec)
        rnd = tuple(int(x) % q for x in rnd)
        if len(sec) != self.r - self.t or len(rnd) != self.t:
            raise ValueError(f"need {self.r - self.t} secret points and {self.t} randomness points")
        if set(sec) & set(self.share_points):
            raise ValueError("secret points must differ from share points")
        if len(set(sec + rnd)) != self.r:
            raise ValueError("secret and randomness points must be distinct")
        object.__setattr__(self, "secret_points", sec)
        object.__setattr__(self, "random_points", rnd)
        m = lagrange_matrix(self.nodes, self.share_points, q)
        m.setflags(write=False)
        object.__setattr__(self, "share_matrix", m)

    @property
    def secret_length(self) -> int:
        return self.r - self.t

    @property
    def share_points(self) -> tuple[int, ...]:
        return tuple(range(1, self.N + 1))

    @property
    def nodes(self) -> tuple[int, ...]:
        """Points fixing the dealer polynomial: secret points, then randomness points."""
        return self.secret_points + self.random_points

    def leaked_functionals(self, slots: Sequence[int]) -> np.ndarray:
        """Rows ``A`` such that shares at ``slots`` reveal exactly ``A @ s`` about the secret."""
        rows = self.share_matrix[[c - 1 for c in slots]]
        sec, rnd = rows[:, : self.secret_length], rows[:, self.secret_length:]
        if self.t == 0:
            return sec.copy()
        y = linalg.null_space(rnd.T, self.q)
        return linalg.matmul(y, sec, self.q) if len(y) else np.zeros((0, self.secret_length), np.int64)

    def share_many(self, s: np.ndarray, rand: np.ndarray) -> np.ndarray:
        """Batch sharing; ``s`` (..., r-t) and ``rand`` (..., t) -> shares (..., N)."""
        coeffs = np.concatenate(_broadcast_concat(s, rand), axis=-1)
        return (np.mod(coeffs, self.q) @ self.share_matrix.T) % self.q

    def recovery_subset(self, subset: Iterable[int]) -> tuple[int, ...]:
        sub = sorted(set(int(i) for i in subset))
        if any(not 1 <= i <= self.N for i in sub):
            raise ValueError(f"subset {sub} has slots outside [1, {self.N}]")
        if len(sub) < self.r:
            raise ValueError(f"need at least r={self.r} shares, got {len(sub)}")
        return tuple(sub[: self.r])

    def recovery_matrix(self, subset: Iterable[int]) -> np.ndarray:
        """Linear map from the used shares of ``subset`` to the secret.

        Only the ``r`` smallest slots of ``subset`` are interpolated.
        """
        used = self.recovery_subset(subset)
        return lagrange_matrix(used, self.secret_points, self.q)


def _broadcast_concat(a, b) -> list[np.ndarray]:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    lead = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    return [np.broadcast_to(a, lead + a.shape[-1:]), np.broadcast_to(b, lead + b.shape[-1:])]


def ramp_share(s, rand, scheme: RampScheme) -> ShareVector:
    s = as_vector(s, scheme.secret_length, scheme.q, "secret")
    rand = as_vector(rand, scheme.t, scheme.q, "randomness")
    return ShareVector(scheme.share_many(s, rand).tolist(), scheme.q)


def ramp_recover(shares: ShareVector, subset: Iterable[int], scheme: RampScheme):
    """Interpolate the secret from ``subset`` (1-based slots); REJECT on an absent slot."""
    if len(shares) != scheme.N:
        raise ValueError(f"expected {scheme.N} shares, got {len(shares)}")
    used = scheme.recovery_subset(subset)
    vals = [shares[i] for i in used]
    if any(v is None for v in vals):
        return REJECT
    return (scheme.recovery_matrix(used) @ np.array(vals, dtype=np.int64)) % scheme.q


@dataclass(frozen=True, eq=False)
class RobustRampScheme:
    ramp: RampScheme
    code: LvStrongInstance

    def __post_init__(self):
        if self.code.n != self.ramp.secret_length:
            raise ValueError(
                f"code length {self.code.n} != ramp secret length {self.ramp.secret_length}"
            )
        if self.code.q != self.ramp.q:
            raise ValueError("code and ramp scheme use different fields")

    @classmethod
    def build(cls, q: int, t: int, r: int, N: int, k: int, *, placement: str = "masked"):
        """Robust scheme over the strong limited-view code of length ``r - t``.

        ``placement="default"`` uses the plain ramp layout.  ``"masked"``
        (the default) tries layouts in a fixed order and keeps the first whose
        corrupt views are all masked (see the module docstring); if none is,
        the plain layout is used and :attr:`views_masked` is False.
        """
        code = LvStrongInstance.build(q, k, r - t)
        plain = cls(RampScheme(q, t, r, N), code)
        if placement == "default" or plain.views_masked:
            return plain
        if placement != "masked":
            raise ValueError(f"unknown placement {placement!r}")
        pool = list(range(N + 1, q)) + [0]
        shares = list(range(1, N + 1))
        for rnd in itertools.combinations(pool + shares, t):
            sec = [p for p in pool if p not in rnd][: r - t]
            if len(sec) < r - t:
                continue
            cand = cls(RampScheme(q, t, r, N, tuple(sec), rnd), code)
            if cand.views_masked:
                return cand
        return plain

    @property
    def q(self) -> int:
        return self.ramp.q

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def rho(self):
        return self.code.rho

    @property
    def corruption_budget(self) -> int:
        """``t + floor(rho (r - t))`` corrupted shares."""
        return self.ramp.t + self.code.read_budget

    @property
    def delta(self):
        return self.code.delta

    @property
    def views_masked(self) -> bool:
        """Whether every corrupt view within budget is independent of the inner AMD codeword."""
        g = self.code.wt2.G
        for size in range(self.ramp.t + 1, self.corruption_budget + 1):
            for slots in itertools.combinations(range(1, self.ramp.N + 1), size):
                a = self.ramp.leaked_functionals(slots)
                if len(a) and linalg.rank(linalg.matmul(a, g.T, self.q), self.q) != linalg.rank(a, self.q):
                    return False
        return True


def rr_share(s, i: int, j, rand, scheme: RobustRampScheme) -> ShareVector:
    return ramp_share(lv_strong_encode(s, i, j, scheme.code), rand, scheme.ramp)


def rr_recover(shares: ShareVector, subset: Iterable[int], scheme: RobustRampScheme):
    x = ramp_recover(shares, subset, scheme.ramp)
    if x is REJECT:
        return REJECT
    return lv_strong_decode(x, scheme.code)
