"""Exact arithmetic modulo a prime q.

Everything else in the package sits on top of these few functions.  The
centered representative convention is fixed once and for all to
(-q/2, q/2], so every "smallness" test in the attack and decryption code
means the same thing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams, ZeroInverse
from .rng import SeededRng

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_prime(n):
        n += 2
    return n


@dataclass(frozen=True)
class Modulus:
    """A verified odd prime modulus q < 2^63."""

    q: int

    def __post_init__(self):
        if self.q < 3:
            raise InvalidParams(f"q must be >= 3, got {self.q}")
        if self.q >= 1 << 63:
            raise InvalidParams("q must fit below 2^63")
        if not is_prime(self.q):
            raise InvalidParams(f"q = {self.q} is not prime")

    def __int__(self) -> int:
        return self.q


def reduce_centered(x: int, q: Modulus | int) -> int:
    """Unique representative of x mod q in (-q/2, q/2]."""
    q = int(q)
    r = x % q
    return r if 2 * r <= q else r - q


def inv_mod(x: int, q: Modulus | int) -> int:
    """Multiplicative inverse in the prime field F_q."""
    q = int(q)
    if x % q == 0:
        raise ZeroInverse("0 has no inverse mod q")
    return pow(x, q - 2, q)


def uniform_sample(q: Modulus | int, rng: SeededRng) -> int:
    """Bias-free uniform element of {0, ..., q-1}."""
    return rng.uniform_mod(int(q))
