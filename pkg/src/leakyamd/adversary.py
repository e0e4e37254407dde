"""Exact distributions and optimal limited-view tampering oracles.

A limited-view adversary reads the codeword positions in a read set ``S``
and adds an offset chosen as a function of what it read.  The optimum over
all such strategies decomposes view by view: for each observed view ``a``
the adversary picks the offset maximising the number of encoder outcomes
(consistent with ``a``) that decode to a wrong, non-rejected message.  All
probabilities are exact :class:`~fractions.Fraction` values.

Codes are duck-typed.  Anything with ``q``, ``n``, ``decode_index(words)``
(returning message indices, ``-1`` for REJECT) and either
``codeword_array(m)`` (strong codes: one row per equally likely randomness
value) or ``message_codeword_arrays()`` (weak codes: one row per equally
likely message) can be attacked.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .amd import REJECT
from .vectors import all_vectors, index_weights, vector_index

DEFAULT_CAP = 10**8
_CHUNK = 1 << 22


class EnumerationCapExceeded(RuntimeError):
    """The exhaustive search would exceed the configured step budget."""


def _check_cap(steps: int, cap: int, what: str):
    if steps > cap:
        raise EnumerationCapExceeded(f"{what} needs {steps} steps, cap is {cap}")


# ---------------------------------------------------------------------------
# distributions


class Distribution(Mapping):
    """Finite distribution with exact rational weights; zero-weight outcomes are dropped."""

    def __init__(self, weights: Mapping[Hashable, Fraction] | Iterable[tuple[Hashable, Fraction]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        pmf: dict = {}
        for x, w in items:
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight {w} for {x!r}")
            if x in pmf:
                raise ValueError(f"duplicate outcome {x!r}")
            if w:
                pmf[x] = w
        if sum(pmf.values()) != 1:
            raise ValueError(f"weights sum to {sum(pmf.values())}, not 1")
        self._pmf = pmf

    @classmethod
    def uniform_over(cls, outcomes: Iterable[Hashable]) -> "Distribution":
        """Distribution of a uniformly chosen element of the multiset ``outcomes``."""
        counts = Counter(outcomes)
        total = sum(counts.values())
        return cls({x: Fraction(c, total) for x, c in counts.items()})

    @classmethod
    def point(cls, x: Hashable) -> "Distribution":
        return cls({x: Fraction(1)})

    def __getitem__(self, x):
        return self._pmf.get(x, Fraction(0))

    def __iter__(self):
        return iter(self._pmf)

    def __len__(self):
        return len(self._pmf)

    def __repr__(self):
        return f"Distribution({len(self)} outcomes)"

    def map(self, f: Callable) -> "Distribution":
        out: dict = {}
        for x, w in self._pmf.items():
            y = f(x)
            out[y] = out.get(y, Fraction(0)) + w
        return Distribution(out)


def statistical_distance(p: Mapping, q: Mapping) -> Fraction:
    support = set(p) | set(q)
    return sum((abs(Fraction(p.get(x, 0)) - Fraction(q.get(x, 0))) for x in support), Fraction(0)) / 2


def min_entropy(p: Mapping) -> float:
    return -math.log2(max(p.values()))


def guessing_probability(joint: Mapping) -> Fraction:
    """``E_z max_x Pr[X = x | Z = z]`` for a joint distribution over ``(x, z)`` pairs."""
    best: dict = {}
    for (x, z), w in joint.items():
        if w > best.get(z, 0):
            best[z] = Fraction(w)
    return sum(best.values(), Fraction(0))


def conditional_min_entropy(joint: Mapping) -> float:
    """Average conditional min-entropy of X given Z, in bits."""
    return -math.log2(guessing_probability(joint))


# ---------------------------------------------------------------------------
# strategies and reports


@dataclass(frozen=True)
class TamperStrategy:
    """Read set plus the offset table ``view -> offset`` (positions are 0-based)."""

    read_set: tuple[int, ...]
    table: Mapping[tuple[int, ...], tuple[int, ...]] = field(repr=False)

    def offset(self, view) -> tuple[int, ...]:
        return self.table[tuple(int(v) for v in view)]

    def apply(self, x, q: int) -> np.ndarray:
        """``x + g(x|S)``."""
        x = np.asarray(x, dtype=np.int64)
        view = tuple(int(x[i]) for i in self.read_set)
        return (x + np.array(self.offset(view), dtype=np.int64)) % q


@dataclass
class AttackRow:
    message: tuple[int, ...] | None  # None: uniformly random message
    read_set: tuple[int, ...]
    success: Fraction
    strategy: TamperStrategy | None = field(default=None, repr=False)
    subset: tuple[int, ...] | None = None  # reconstruction subset (ramp attacks)


@dataclass
class AttackReport:
    name: str
    rows: list[AttackRow]
    bound: Fraction
    notes: dict = field(default_factory=dict)

    @property
    def worst(self) -> Fraction:
        return max((r.success for r in self.rows), default=Fraction(0))

    @property
    def passed(self) -> bool:
        return self.worst <= self.bound

    def worst_row(self) -> AttackRow:
        return max(self.rows, key=lambda r: r.success)

    def by_read_set(self) -> dict[tuple[int, ...], Fraction]:
        out: dict = {}
        for r in self.rows:
            out[r.read_set] = max(out.get(r.read_set, Fraction(0)), r.success)
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "bound": _frac_str(self.bound),
            "worst": _frac_str(self.worst),
            "pass": self.passed,
            "rows": [
                {
                    "message": None if r.message is None else list(r.message),
                    "read_set": list(r.read_set),
                    "success": _frac_str(r.success),
                }
                for r in self.rows
            ],
            "notes": {k: (_frac_str(v) if isinstance(v, Fraction) else v) for k, v in self.notes.items()},
        }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# the per-view optimum


def _view_ids(words: np.ndarray, read_set: Sequence[int], q: int) -> np.ndarray:
    if not read_set:
        return np.zeros(words.shape[0], dtype=np.int64)
    return words[:, list(read_set)] @ index_weights(len(read_set), q)


def best_offsets_by_view(
    words: np.ndarray,
    truths: np.ndarray,
    views: np.ndarray,
    n_views: int,
    offsets: np.ndarray,
    decode_index: Callable[[np.ndarray], np.ndarray],
    q: int,
    *,
    cap: int = DEFAULT_CAP,
) -> tuple[int, dict[int, int]]:
    """Core counting step.

    For every view id and every candidate offset (rows of ``offsets``, in
    priority order), count the equally likely rows of ``words`` with that
    view whose tampered word decodes to a message other than the row's
    truth and not to REJECT.  Returns the summed per-view maxima and the
    first maximising offset row for each observed view.
    """
    rows = words.shape[0]
    _check_cap(rows * offsets.shape[0], cap, "offset search")
    # decode each distinct (word, truth) once, then scatter back to rows
    keyed = np.column_stack([words, truths])
    uniq, inverse = np.unique(keyed, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    u_words, u_truths = uniq[:, :-1], uniq[:, -1]
    weights = np.zeros((uniq.shape[0], n_views), dtype=np.int64)
    np.add.at(weights, (inverse, views), 1)
    best = np.full(n_views, -1, dtype=np.int64)
    arg = np.zeros(n_views, dtype=np.int64)
    step = max(1, _CHUNK // max(uniq.shape[0], 1))
    for lo in range(0, offsets.shape[0], step):
        chunk = offsets[lo: lo + step]
        tampered = (u_words[None, :, :] + chunk[:, None, :]) % q
        dec = decode_index(tampered)
        wins = ((dec != -1) & (dec != u_truths[None, :])).astype(np.int64)
        counts = wins @ weights
        cmax = counts.max(axis=0)
        carg = counts.argmax(axis=0) + lo
        better = cmax > best
        best = np.where(better, cmax, best)
        arg = np.where(better, carg, arg)
    seen = np.unique(views)
    return int(best[seen].sum()), {int(v): int(arg[v]) for v in seen}


def _strategy(read_set, seen: dict[int, int], offsets: np.ndarray, q: int) -> TamperStrategy:
    table = {}
    for vid, oid in seen.items():
        view = []
        for _ in read_set:
            view.append(vid % q)
            vid //= q
        table[tuple(reversed(view))] = tuple(int(v) for v in offsets[oid])
    return TamperStrategy(tuple(read_set), table)


def _rows_for(code, m):
    if m is None:
        words, truths = code.message_codeword_arrays()
    else:
        words = code.codeword_array(m)
        truths = np.full(words.shape[0], vector_index(m, code.q), dtype=np.int64)
    return np.asarray(words, dtype=np.int64), np.asarray(truths, dtype=np.int64)


def optimal_lv_attack(code, m, read_set: Sequence[int], *, cap: int = DEFAULT_CAP):
    """Best limited-view additive attack on message ``m`` (``None``: uniform message).

    Returns ``(success, strategy)`` where ``success`` is the exact optimal
    probability that the decoder outputs a wrong message and the strategy
    attains it.  Ties between offsets go to the lexicographically first.
    """
    read_set = tuple(sorted(int(i) for i in read_set))
    if any(not 0 <= i < code.n for i in read_set):
        raise ValueError(f"read set {read_set} outside positions 0..{code.n - 1}")
    _check_cap(code.q ** code.n, cap, "offset enumeration")
    words, truths = _rows_for(code, m)
    offsets = all_vectors(code.n, code.q)
    views = _view_ids(words, read_set, code.q)
    num, seen = best_offsets_by_view(
        words, truths, views, code.q ** len(read_set), offsets, code.decode_index, code.q, cap=cap
    )
    return Fraction(num, words.shape[0]), _strategy(read_set, seen, offsets, code.q)


def exhaustive_offset_attack(code, m, *, cap: int = DEFAULT_CAP) -> Fraction:
    """Blind adversary: ``max_Delta Pr[Dec(Enc(m) + Delta) not in {m, REJECT}]``.

    Deliberately naive; it loops over offsets and codewords one at a time and
    calls the code's scalar ``decode``.  Used as an independent oracle for
    the empty read set.
    """
    if m is None:
        msgs = [tuple(v) for v in itertools.product(range(1, code.q), repeat=code.k)]
        pairs = [(msg, code.encode(msg, ())) for msg in msgs]
    else:
        msg = tuple(int(v) % code.q for v in m)
        pairs = [(msg, code.encode(msg, rand)) for rand in code.randomness()]
    msgs = [p[0] for p in pairs]
    words = [p[1] for p in pairs]
    _check_cap(len(words) * code.q ** code.n, cap, "exhaustive offset oracle")
    words = [tuple(int(v) for v in w) for w in words]
    best = 0
    for delta in itertools.product(range(code.q), repeat=code.n):
        hits = 0
        for w, msg in zip(words, msgs):
            out = code.decode([(a + b) % code.q for a, b in zip(w, delta)])
            if out is not REJECT and tuple(int(v) for v in out) != msg:
                hits += 1
        best = max(best, hits)
    return Fraction(best, len(words))


def codeword_distribution(code, m, *, cap: int = DEFAULT_CAP) -> Distribution:
    """Exact distribution of ``Enc(m)`` under uniform encoder randomness."""
    if m is None:
        words, _ = code.message_codeword_arrays()
    else:
        words = code.codeword_array(m)
    _check_cap(len(words), cap, "codeword enumeration")
    return Distribution.uniform_over(tuple(int(v) for v in w) for w in words)


def joint_codeword_view(code, m, read_set: Sequence[int], *, cap: int = DEFAULT_CAP) -> Distribution:
    """Joint distribution of (codeword, codeword restricted to ``read_set``)."""
    dist = codeword_distribution(code, m, cap=cap)
    return dist.map(lambda x: (x, tuple(x[i] for i in read_set)))


def read_sets(n: int, max_size: int) -> list[tuple[int, ...]]:
    return [s for size in range(max_size + 1) for s in itertools.combinations(range(n), size)]


# ---------------------------------------------------------------------------
# certifications


def empirical_delta(code, max_read: int, bound: Fraction, *, name: str = "strong",
                    messages=None, cap: int = DEFAULT_CAP) -> AttackReport:
    """Optimal attack over every message and every read set of size <= ``max_read``."""
    msgs = code.messages() if messages is None else messages
    _check_cap(len(msgs) * len(read_sets(code.n, max_read)) * code.q ** code.n, cap, name)
    rows = []
    for m in msgs:
        for s in read_sets(code.n, max_read):
            p, strat = optimal_lv_attack(code, m, s, cap=cap)
            rows.append(AttackRow(tuple(int(v) for v in m), s, p, strat))
    return AttackReport(name, rows, Fraction(bound))


def empirical_delta_strong(inst, *, cap: int = DEFAULT_CAP) -> AttackReport:
    """Certify a strong limited-view code against its nominal ``(k+1)/q``."""
    rep = empirical_delta(inst, inst.read_budget, inst.delta, name="lv-strong", cap=cap)
    rep.notes["read_budget"] = inst.read_budget
    rep.notes["rho"] = inst.rho
    return rep


def empirical_delta_weak(inst, rho=None, *, cap: int = DEFAULT_CAP) -> AttackReport:
    """Certify a weak code for a uniform message against ``psi k / (q - 1)``.

    ``rho`` defaults to ``(k-1)/(k+1)``, the largest leakage with
    ``k - (k+1) rho >= 1``.  A ``rho`` outside that regime is still attacked
    and the report notes the violated condition.
    """
    rho = Fraction(inst.k - 1, inst.k + 1) if rho is None else Fraction(rho)
    budget = math.floor(rho * inst.n)
    rows = []
    for s in read_sets(inst.n, budget):
        p, strat = optimal_lv_attack(inst, None, s, cap=cap)
        rows.append(AttackRow(None, s, p, strat))
    rep = AttackReport("lv-weak", rows, inst.delta)
    rep.notes.update(rho=rho, read_budget=budget, leakage_condition=inst.leakage_condition(rho))
    return rep


def _pairwise_max_l1(hist: np.ndarray) -> int:
    uniq = np.unique(hist, axis=0)
    best = 0
    for i in range(len(uniq) - 1):
        d = np.abs(uniq[i + 1:] - uniq[i]).sum(axis=1)
        best = max(best, int(d.max()))
    return best


def view_secrecy(words_by_message: Sequence[np.ndarray], read_set: Sequence[int], q: int) -> Fraction:
    """Max statistical distance between per-message view distributions."""
    n_views = q ** len(read_set)
    hist = []
    total = None
    for words in words_by_message:
        ids = _view_ids(words, read_set, q)
        hist.append(np.bincount(ids, minlength=n_views))
        total = words.shape[0] if total is None else total
        if words.shape[0] != total:
            raise ValueError("messages have different randomness counts")
    return Fraction(_pairwise_max_l1(np.array(hist)), 2 * total)


def wt2_secrecy_check(inst, max_size: int | None = None, *, cap: int = DEFAULT_CAP) -> Fraction:
    """Exact max SD of ``Enc(m0)|S`` vs ``Enc(m1)|S`` over messages and ``|S| <= max_size``.

    ``max_size`` defaults to ``n - k_msg``; larger values are a diagnostic.
    """
    max_size = inst.n - inst.k_msg if max_size is None else max_size
    msgs = all_vectors(inst.k_msg, inst.q)
    _check_cap(len(msgs) * inst.q ** inst.randomness_length, cap, "wiretap secrecy")
    words = [inst.codeword_array(m) for m in msgs]
    return max(view_secrecy(words, s, inst.q) for s in read_sets(inst.n, max_size))


# ---------------------------------------------------------------------------
# ramp secret sharing


def _rr_rows(scheme, s):
    """Shares and LV codewords for every (i, j, rand) of secret ``s``."""
    ramp = scheme.ramp
    cw = scheme.code.codeword_array(s)
    rands = all_vectors(ramp.t, ramp.q)
    shares = ramp.share_many(cw[:, None, :], rands[None, :, :]).reshape(-1, ramp.N)
    cws = np.repeat(cw, rands.shape[0], axis=0)
    return shares, cws


def rr_robustness_attack(scheme, corrupt_count: int, *, cap: int = DEFAULT_CAP) -> AttackReport:
    """Optimal share-corrupting adversary against the robust ramp scheme.

    The adversary picks ``corrupt_count`` slots, reads exactly those shares,
    and adds offsets to them.  Reconstruction uses an ``r``-subset holding
    all corrupted slots; every such subset is tried and the worst kept.
    Success is an exact fraction over the joint encoder and dealer randomness.
    """
    ramp = scheme.ramp
    if corrupt_count > scheme.corruption_budget:
        raise ValueError(
            f"corrupt_count {corrupt_count} exceeds t + floor(rho (r-t)) = {scheme.corruption_budget}"
        )
    q = ramp.q
    rows = []
    share_offsets = all_vectors(corrupt_count, q)
    msgs = scheme.code.messages()
    per_task = share_offsets.shape[0] * q ** ramp.t * scheme.code.codeword_array(msgs[0]).shape[0]
    _check_cap(per_task, cap, "robustness attack (per corrupt set)")
    for s in msgs:
        shares, cws = _rr_rows(scheme, s)
        truths = np.full(shares.shape[0], vector_index(s, q), dtype=np.int64)
        for corrupt in itertools.combinations(range(1, ramp.N + 1), corrupt_count):
            views = _view_ids(shares, [c - 1 for c in corrupt], q)
            rest = [i for i in range(1, ramp.N + 1) if i not in corrupt]
            best = Fraction(-1)
            best_sub = None
            best_strat = None
            for extra in itertools.combinations(rest, ramp.r - corrupt_count):
                subset = tuple(sorted(corrupt + extra))
                rec = ramp.recovery_matrix(subset)
                cols = [subset.index(c) for c in corrupt]
                offsets = (share_offsets @ rec[:, cols].T) % q
                num, seen = best_offsets_by_view(
                    cws, truths, views, q ** corrupt_count, offsets,
                    scheme.code.decode_index, q, cap=cap,
                )
                p = Fraction(num, shares.shape[0])
                if p > best:
                    best, best_sub = p, subset
                    best_strat = _strategy(corrupt, seen, share_offsets, q)
            rows.append(AttackRow(tuple(int(v) for v in s), corrupt, best, best_strat, best_sub))
    rep = AttackReport("robust-ramp", rows, scheme.delta)
    rep.notes.update(corrupt_count=corrupt_count, budget=scheme.corruption_budget)
    return rep


def ramp_privacy_check(ramp, size: int, secrets=None) -> Fraction:
    """Max SD between share views of any two secrets, over all ``size``-subsets."""
    secrets = all_vectors(ramp.secret_length, ramp.q) if secrets is None else secrets
    rands = all_vectors(ramp.t, ramp.q)
    words = [ramp.share_many(np.asarray(s)[None, :], rands) for s in secrets]
    return max(view_secrecy(words, c, ramp.q) for c in itertools.combinations(range(ramp.N), size))


def rr_privacy_check(scheme, size: int | None = None) -> Fraction:
    """Same as :func:`ramp_privacy_check` but for the robust scheme's secrets."""
    size = scheme.ramp.t if size is None else size
    words = [_rr_rows(scheme, s)[0] for s in scheme.code.messages()]
    return max(
        view_secrecy(words, c, scheme.q)
        for c in itertools.combinations(range(scheme.ramp.N), size)
    )


def rr_joint_codeword_view(scheme, s, corrupt: Sequence[int]) -> Distribution:
    """Joint distribution of (LV codeword, shares at 1-based slots ``corrupt``)."""
    shares, cws = _rr_rows(scheme, s)
    cols = [c - 1 for c in corrupt]
    return Distribution.uniform_over(
        (tuple(int(v) for v in c), tuple(int(v) for v in sh[cols])) for c, sh in zip(cws, shares)
    )


def ramp_leakage(ramp, subset: Sequence[int]) -> tuple[float, float]:
    """(H~(S | shares at ``subset``), H(S)) in bits for a uniform secret."""
    secrets = all_vectors(ramp.secret_length, ramp.q)
    rands = all_vectors(ramp.t, ramp.q)
    shares = ramp.share_many(secrets[:, None, :], rands[None, :, :])
    cols = [c - 1 for c in subset]
    joint = Distribution.uniform_over(
        (tuple(int(v) for v in secrets[a]), tuple(int(v) for v in shares[a, b, cols]))
        for a in range(secrets.shape[0])
        for b in range(rands.shape[0])
    )
    return conditional_min_entropy(joint), math.log2(secrets.shape[0])
