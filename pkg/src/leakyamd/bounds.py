"""Closed-form efficiency bounds for AMD-type codes, as checkable inequalities.

Every check returns a :class:`BoundReport` in the normal form
``lhs <= rhs``.  Exact :class:`~fractions.Fraction` values are kept where no
logarithm or root is involved; otherwise floats are compared with an absolute
slack of ``SLACK``.  Logarithms are base 2 unless a function says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, float]

SLACK = 1e-9
_E_FACTOR = 1 - math.exp(-1)


@dataclass
class BoundReport:
    name: str
    inputs: dict
    lhs: Number
    rhs: Number
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        if isinstance(self.lhs, (int, Fraction)) and isinstance(self.rhs, (int, Fraction)):
            return self.lhs <= self.rhs
        return float(self.lhs) <= float(self.rhs) + SLACK

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": {k: _show(v) for k, v in self.inputs.items()},
            "lhs": _show(self.lhs),
            "rhs": _show(self.rhs),
            "satisfied": self.satisfied,
            "details": {k: _show(v) for k, v in self.details.items()},
        }


def _show(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, BoundReport):
        return v.to_dict()
    return v


def _frac(x) -> Number:
    return x if isinstance(x, float) else Fraction(x)


# -- plain AMD ---------------------------------------------------------------


def amd_weak_bound(M: int, G: int) -> Fraction:
    """Smallest delta allowed for a weak (M, G, delta) code: ``(M-1)/(G-1)``."""
    if G <= 1:
        raise ValueError(f"group order G={G} must exceed 1")
    if M < 1:
        raise ValueError("M must be >= 1")
    return Fraction(M - 1, G - 1)


def amd_strong_bound(M: int, G: int) -> float:
    """Smallest delta allowed for a strong code: ``sqrt((M-1)/(G-1))``."""
    return math.sqrt(amd_weak_bound(M, G))


def strong_amd_row(M: int, G: int, delta) -> BoundReport:
    """``G >= (M-1)/delta**2 + 1``."""
    delta = _frac(delta)
    return BoundReport("strong AMD", {"M": M, "G": G, "delta": delta},
                       (M - 1) / delta ** 2 + 1, G)


def weak_amd_row(M: int, G: int, delta) -> BoundReport:
    """``G >= (M-1)/delta + 1``."""
    delta = _frac(delta)
    return BoundReport("weak AMD", {"M": M, "G": G, "delta": delta}, (M - 1) / delta + 1, G)


# -- leakage-resilient rows ------------------------------------------------


def strong_rho_row(M: int, G: int, rho, delta) -> BoundReport:
    """``G**(1-rho) >= (M-1)/delta**2 + 1``."""
    rho, delta = _frac(rho), _frac(delta)
    rhs = G ** (1 - float(rho)) if rho else G
    return BoundReport("strong rho-AMD", {"M": M, "G": G, "rho": rho, "delta": delta},
                       (M - 1) / delta ** 2 + 1, rhs)


def weak_rho_row(M: int, G: int, rho, delta) -> BoundReport:
    """``G >= (M-1)/delta + 1`` and ``M >= G**rho / delta``."""
    rho, delta = _frac(rho), _frac(delta)
    first = weak_amd_row(M, G, delta)
    second = BoundReport("M >= G^rho/delta", {}, G ** float(rho) / float(delta), M)
    ok = first.satisfied and second.satisfied
    return BoundReport(
        "weak rho-AMD", {"M": M, "G": G, "rho": rho, "delta": delta},
        0 if ok else 1, 0, {"G_bound": first, "M_bound": second},
    )


def strong_rho_bound_check(n: int, k: int, rho, delta, q: int) -> BoundReport:
    """Rate bound ``k <= n(1-rho) + (2 log delta - 1)/log q`` (both logs base 2).

    The table form ``q**(n(1-rho)) >= (q**k - 1)/delta**2 + 1`` is attached
    under ``details["table_form"]``.
    """
    delta = _frac(delta)
    if not 0 < delta <= 1:
        raise ValueError(f"delta={delta} outside (0, 1]")
    rho = _frac(rho)
    rhs = n * (1 - float(rho)) + (2 * math.log2(delta) - 1) / math.log2(q)
    return BoundReport(
        "strong rho-AMD rate", {"n": n, "k": k, "rho": rho, "delta": delta, "q": q},
        k, rhs,
        {"table_form": strong_rho_row(q ** k, q ** n, rho, delta),
         "log_base": "2 (both the delta and q logarithms)"},
    )


def weak_rho_bound_check(n: int, k: int, rho, delta, q: int) -> BoundReport:
    """Both ``q**(rho n - k) <= delta`` and ``(q**k - 1)/(q**n - 1) <= delta``."""
    delta, rho = _frac(delta), _frac(rho)
    expo = rho * n - k
    if isinstance(expo, Fraction) and expo.denominator == 1:
        first_lhs = Fraction(q) ** int(expo)
    else:
        first_lhs = float(q) ** float(expo)
    first = BoundReport("q^(rho n - k) <= delta", {}, first_lhs, delta)
    second = BoundReport("(q^k-1)/(q^n-1) <= delta", {}, Fraction(q ** k - 1, q ** n - 1), delta)
    ok = first.satisfied and second.satisfied
    return BoundReport(
        "weak rho-AMD", {"n": n, "k": k, "rho": rho, "delta": delta, "q": q},
        0 if ok else 1, 0,
        {"leakage": first, "random_offset": second,
         "table_form": weak_rho_row(q ** k, q ** n, rho, delta)},
    )


# -- conversions between leakage models --------------------------------------


def llr_strong_convert(alpha, r_bits, n: int, q: int) -> float:
    """Largest rho reached from a strong LLR code: ``alpha r / (n log q)``."""
    return float(alpha) * float(r_bits) / (n * math.log2(q))


def rho_strong_convert(rho, n: int, q: int, delta, r_bits=None) -> tuple[float, float]:
    """``(max alpha, min r)`` for the LLR code obtained from a strong rho code.

    ``min r = log(1/delta) + n rho log q``; ``max alpha = n rho log q / r``
    with ``r`` defaulting to that minimum.
    """
    leak = n * float(rho) * math.log2(q)
    r_min = math.log2(1 / float(delta)) + leak
    r = r_min if r_bits is None else float(r_bits)
    return leak / r, r_min


def amd_as_llr_delta(d: int, q: int, alpha) -> float:
    """Security of the systematic AMD code viewed as a strong LLR code: ``(d+1)/q**(1-alpha)``."""
    return (d + 1) / q ** (1 - float(alpha))


def corollary_strong_rho(n: int, q: int, delta) -> float:
    """Leakage tolerated by the systematic AMD code: ``(1 - log_q((n-1)/delta)) / n``."""
    return (1 - math.log((n - 1) / float(delta), q)) / n


def llr_weak_convert(alpha, k: int, n: int) -> Fraction:
    return _frac(alpha) * k / n if not isinstance(alpha, float) else alpha * k / n


def rho_weak_convert(rho, k: int, n: int):
    """Largest alpha of the weak LLR code obtained from a weak rho code: ``rho n / k``."""
    return _frac(rho) * n / k if not isinstance(rho, float) else rho * n / k


def corollary_weak_rho(n: int, q: int, delta) -> float:
    """``(1 - log_q(2/delta)) / n``."""
    return (1 - math.log(2 / float(delta), q)) / n


def llr_table_bounds(M: int, delta, alpha) -> tuple[float, float]:
    """Minimum group order for alpha-strong and alpha-weak LLR codes."""
    alpha, delta = float(alpha), float(delta)
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha={alpha} must lie in [0, 1)")
    strong = (M - 1) * _E_FACTOR / delta ** (2 / (1 - alpha)) + 1
    weak = max(
        (M - 1) * _E_FACTOR / delta ** (1 / (1 - alpha)) + 1,
        M ** alpha * (M - 1) * _E_FACTOR / delta + 1,
    )
    return strong, weak


# -- rates and tags ----------------------------------------------------------


def wt2_rate_bound(rho):
    return 1 - _frac(rho)


def rate_check(k: int, n: int, rho) -> BoundReport:
    """Finite rate ``k/n`` against the ``1 - rho`` ceiling."""
    return BoundReport("rate <= 1 - rho", {"k": k, "n": n, "rho": _frac(rho)},
                       Fraction(k, n), wt2_rate_bound(rho))


def tag_overhead(code) -> float:
    """``log2 G - log2 M`` in bits for a concrete code (not the minimum over all codes)."""
    return math.log2(code.group_order) - math.log2(code.message_count)
