"""Integer arithmetic mod p, multiplicative orders and roots of unity.

Everything here is exact integer arithmetic except :func:`unit_root` and
:func:`root_table`, which produce double-precision points on the unit circle.
Moduli are restricted to ``p < 2**31`` so that every product of two residues
fits in a signed 64-bit word (the compiled kernels rely on this).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division over 6k +/- 1."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factorize(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, in increasing order.

    >>> factorize(100)
    [2, 2, 5, 5]
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for d in (2, 3):
        while n % d == 0:
            out.append(d)
            n //= d
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out.append(q)
                n //= q
        d += 6
    if n > 1:
        out.append(n)
    return out


def mod_pow(b: int, e: int, p: int) -> int:
    """``b**e mod p`` by right-to-left binary exponentiation."""
    if p < 2:
        raise ValueError("modulus must be at least 2")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    b %= p
    result = 1
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


def multiplicative_order(g: int, p: int) -> int:
    """Least ``T >= 1`` with ``g**T == 1 (mod p)``.

    Starts from ``p - 1`` and strips each prime factor while the power
    stays at 1.
    """
    if g % p == 0:
        raise ValueError(f"g = {g} is not a unit mod {p}")
    T = p - 1
    for q in sorted(set(factorize(p - 1))):
        while T % q == 0 and mod_pow(g, T // q, p) == 1:
            T //= q
    return T


def primitive_roots(p: int) -> list[int]:
    """All generators of the multiplicative group mod the prime ``p``."""
    qs = sorted(set(factorize(p - 1)))
    return [g for g in range(1, p)
            if all(mod_pow(g, (p - 1) // q, p) != 1 for q in qs)]


def unit_root(h: int, x: int) -> complex:
    """``exp(2*pi*i*x/h)``, with ``x`` reduced mod ``h`` first.

    Quarter turns are returned exactly.
    """
    if h < 1:
        raise ValueError("h must be positive")
    r = x % h
    if (4 * r) % h == 0:
        return (1, 1j, -1, -1j)[4 * r // h]
    theta = 2.0 * math.pi * r / h
    return complex(math.cos(theta), math.sin(theta))


def distance_to_multiple(u: int, r: int) -> int:
    """Distance from ``u`` to the nearest integer multiple of ``r``."""
    if r < 1:
        raise ValueError("r must be positive")
    s = u % r
    return min(s, r - s)


@lru_cache(maxsize=32)
def root_table(h: int) -> np.ndarray:
    """Read-only array of ``unit_root(h, k)`` for ``k = 0..h-1``."""
    k = np.arange(h, dtype=np.float64)
    theta = 2.0 * np.pi * k / h
    table = np.cos(theta) + 1j * np.sin(theta)
    for q in range(4):
        if (q * h) % 4 == 0:
            table[q * h // 4] = (1, 1j, -1, -1j)[q]
    table.flags.writeable = False
    return table


@lru_cache(maxsize=32)
def _power_table(g: int, p: int, T: int) -> np.ndarray:
    out = np.empty(T + 1, dtype=np.int64)
    v = 1
    for x in range(T + 1):
        out[x] = v
        v = v * g % p
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class PrimeContext:
    """A prime ``p`` together with a unit ``g`` and its order ``T``.

    Build one with :meth:`create` unless ``T`` is already known; the
    constructor re-checks every invariant either way.
    """

    p: int
    g: int
    T: int

    def __post_init__(self):
        if not (3 <= self.p < MAX_MODULUS) or not is_prime(self.p):
            raise ValueError(f"p = {self.p} must be a prime in [3, 2**31)")
        if not 1 <= self.g <= self.p - 1:
            raise ValueError(f"g = {self.g} not a unit residue mod {self.p}")
        if self.T < 1 or (self.p - 1) % self.T:
            raise ValueError(f"T = {self.T} does not divide p - 1")
        if mod_pow(self.g, self.T, self.p) != 1 or any(
                mod_pow(self.g, self.T // q, self.p) == 1
                for q in set(factorize(self.T))):
            raise ValueError(f"T = {self.T} is not the order of {self.g} mod {self.p}")

    @classmethod
    def create(cls, p: int, g: int) -> PrimeContext:
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if g % p == 0:
            raise ValueError(f"g = {g} is not a unit mod {p}")
        g %= p
        return cls(p, g, multiplicative_order(g, p))

    def powers(self) -> np.ndarray:
        """``g**x mod p`` for ``x = 0..T`` as a read-only int64 array."""
        return _power_table(self.g, self.p, self.T)

    def power(self, x: int) -> int:
        return int(self.powers()[x % self.T])
