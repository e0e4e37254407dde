"""Exact arithmetic in a prime field F_q and in the exponent ring Z_{q-1}.

Elements are small immutable value objects.  The heavy lifting elsewhere in
the package works on plain ``int`` residues and ``numpy`` int64 arrays; these
classes exist for the scalar API and for validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

# q**2 (and short sums of such products) must fit a signed 64-bit word.
MAX_MODULUS = 1 << 28


class ModulusError(ValueError):
    """Operands live in different rings, or the modulus is unusable."""


@lru_cache(maxsize=None)
def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def check_prime(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q):
        raise ModulusError(f"modulus {q!r} is not prime")
    if q > MAX_MODULUS:
        raise ModulusError(f"modulus {q} exceeds MAX_MODULUS={MAX_MODULUS}")
    return q


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldElement:
    """Residue ``value`` modulo the prime ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value + b, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value - b, self.modulus)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(b - self.value, self.modulus)

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * finv(FieldElement(b, self.modulus))

    def __pow__(self, e: int):
        return fpow(self, e)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class ExponentElement:
    """Residue modulo ``modulus`` = q - 1 (composite moduli allowed)."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ModulusError(f"bad exponent modulus {self.modulus}")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __int__(self):
        return self.value


def fmul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.modulus != b.modulus:
        raise ModulusError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return FieldElement(a.value * b.value, a.modulus)


def finv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError("0 has no inverse in F_q")
    return FieldElement(pow(a.value, -1, a.modulus), a.modulus)


def fpow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        return fpow(finv(a), -e)
    return FieldElement(pow(a.value, e, a.modulus), a.modulus)


def multiplicative_order(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    order = q - 1
    for f in prime_factors(q - 1):
        while order % f == 0 and pow(a, order // f, q) == 1:
            order //= f
    return order


@lru_cache(maxsize=None)
def _primitive_root(q: int) -> int:
    factors = prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
            return g
    raise ModulusError(f"no primitive element found for q={q}")


def primitive_element(q: int) -> FieldElement:
    """Smallest generator of F_q^*, searching upward from 2."""
    check_prime(q)
    if q < 3:
        raise ModulusError("primitive_element needs q >= 3")
    return FieldElement(_primitive_root(q), q)


def discrete_log_table(beta: int, q: int) -> dict[int, int]:
    """Map each nonzero residue x to the exponent e in [0, q-1) with beta**e = x."""
    table = {}
    x = 1
    for e in range(q - 1):
        table[x] = e
        x = x * beta % q
    if len(table) != q - 1:
        raise ValueError(f"{beta} is not primitive modulo {q}")
    return table
