"""Arithmetic in R = Z[x]/(f) and R_q = R/qR, plus the number-theoretic
predicates on f mod q that the attack toolkit needs: root finding,
multiplicative orders, total splitting, and cyclotomic polynomials.

Coefficient order is lowest-degree-first everywhere, including the text
format ("1,0,0,0,1" is x^4 + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, InvalidParams, ParamMismatch, ZeroElement
from .zq import Modulus, inv_mod, reduce_centered

# ---------------------------------------------------------------------------
# Integer polynomials (lists of ints, lowest degree first)


def poly_trim(c: list[int]) -> list[int]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def poly_deg(c: list[int]) -> int:
    c = poly_trim(list(c))
    return len(c) - 1 if c else -1


def poly_mul_z(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out)


def poly_divmod_z(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Exact division with remainder by a monic divisor b, over Z."""
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if b[-1] != 1:
        raise InvalidParams("divisor must be monic")
    r = list(a)
    db = len(b) - 1
    quo = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return poly_trim(quo), poly_trim(r)


def poly_eval_z(c: list[int], x: int) -> int:
    acc = 0
    for ci in reversed(c):
        acc = acc * x + ci
    return acc


def euler_phi(m: int) -> int:
    out, n, p = 1, m, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out *= (p - 1) * p ** (e - 1)
        p += 1
    if n > 1:
        out *= n - 1
    return out


def cyclotomic_poly(m: int) -> list[int]:
    """m-th cyclotomic polynomial, by dividing x^m - 1 by all proper Phi_d."""
    if m < 1:
        raise InvalidParams("m must be positive")
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = poly_divmod_z(num, cyclotomic_poly(d))
            assert not rem, "cyclotomic division must be exact"
    return num


def parse_poly(text: str) -> list[int]:
    """Parse the comma-separated lowest-first coefficient format."""
    try:
        return [int(t.strip()) for t in text.strip().split(",")]
    except ValueError as e:
        raise FormatError(f"bad polynomial text {text!r}") from e


def format_poly(coeffs) -> str:
    return ",".join(str(int(c)) for c in coeffs)


# ---------------------------------------------------------------------------
# Polynomials over F_q


def poly_mod_q(c, q: Modulus | int) -> list[int]:
    q = int(q)
    return poly_trim([int(x) % q for x in c])


def poly_divmod_mod(a: list[int], b: list[int], q: Modulus | int) -> tuple[list[int], list[int]]:
    q = int(q)
    b = poly_mod_q(b, q)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = inv_mod(b[-1], q)
    r = [x % q for x in a]
    db = len(b) - 1
    quo = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv_lead % q
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % q
    return poly_trim(quo), poly_trim(r)


def poly_gcd_mod(a: list[int], b: list[int], q: Modulus | int) -> list[int]:
    """Monic gcd of a and b over F_q."""
    q = int(q)
    a, b = poly_mod_q(a, q), poly_mod_q(b, q)
    while b:
        _, r = poly_divmod_mod(a, b, q)
        a, b = b, r
    if a:
        inv_lead = inv_mod(a[-1], q)
        a = [c * inv_lead % q for c in a]
    return a


def poly_derivative(c) -> list[int]:
    return poly_trim([i * int(c[i]) for i in range(1, len(c))])


def roots_mod_q(f: list[int], q: Modulus) -> list[int]:
    """All roots of f in F_q, by exhaustive scan (valid at desk-scale q)."""
    qi = int(q)
    if poly_deg(f) < 1:
        raise InvalidParams("degree must be >= 1")
    alphas = np.arange(qi, dtype=np.int64)
    acc = np.zeros(qi, dtype=np.int64)
    for c in reversed(poly_mod_q(f, qi) or [0]):
        acc = (acc * alphas + c) % qi
    return [int(a) for a in alphas[acc == 0]]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mult_order(alpha: int, q: Modulus) -> int:
    """Least r >= 1 with alpha^r = 1 mod q."""
    qi = int(q)
    if alpha % qi == 0:
        raise ZeroElement("0 has no multiplicative order")
    order = qi - 1
    for p in _factorize(qi - 1):
        while order % p == 0 and pow(alpha, order // p, qi) == 1:
            order //= p
    return order


def is_totally_split(f: list[int], q: Modulus) -> bool:
    """True iff f mod q is squarefree and has deg(f) distinct roots in F_q."""
    n = poly_deg(f)
    g = poly_gcd_mod(f, poly_derivative(f), q)
    if poly_deg(g) > 0:
        return False
    return len(roots_mod_q(f, q)) == n


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Irreducibility of f over F_p (utility; irreducible mod p for one
    prime p not dividing disc implies irreducible over Q)."""
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True

    def powx(e: int) -> list[int]:
        # x^e mod (f, p) by square and multiply
        result, base = [1], [0, 1]
        while e:
            if e & 1:
                result = poly_divmod_mod(poly_mul_z(result, base), f, p)[1]
            base = poly_divmod_mod(poly_mul_z(base, base), f, p)[1]
            e >>= 1
        return result

    xpn = powx(p**n)
    if poly_trim([(a - b) % p for a, b in _zip_pad(xpn, [0, 1])]):
        return False
    for d in _factorize(n):
        xpk = powx(p ** (n // d))
        g = poly_gcd_mod([(a - b) % p for a, b in _zip_pad(xpk, [0, 1])], f, p)
        if poly_deg(g) != 0:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


# ---------------------------------------------------------------------------
# The quotient ring R_q = F_q[x]/(f)


@dataclass(frozen=True)
class RingParams:
    """Monic f of degree n >= 1 and a prime modulus q."""

    f: tuple[int, ...]
    q: Modulus

    def __post_init__(self):
        f = poly_trim(list(self.f))
        if len(f) < 2:
            raise InvalidParams("f must have degree >= 1")
        if f[-1] != 1:
            raise InvalidParams("f must be monic")
        object.__setattr__(self, "f", tuple(f))

    @property
    def n(self) -> int:
        return len(self.f) - 1

    @property
    def negacyclic(self) -> bool:
        n = self.n
        return self.f == tuple([1] + [0] * (n - 1) + [1])

    @property
    def int64_safe(self) -> bool:
        q = int(self.q)
        return self.n * (q - 1) * (q - 1) < (1 << 62)


@dataclass(frozen=True)
class RingElement:
    coeffs: tuple[int, ...]
    params: RingParams

    def __post_init__(self):
        if len(self.coeffs) != self.params.n:
            raise InvalidParams("coefficient count must equal deg f")

    def centered(self) -> list[int]:
        q = self.params.q
        return [reduce_centered(c, q) for c in self.coeffs]

    def inf_norm(self) -> int:
        return max(abs(c) for c in self.centered())


def ring_from_coeffs(coeffs, params: RingParams) -> RingElement:
    """Build an element from up to n integer coefficients (reduced mod q)."""
    q = int(params.q)
    c = [int(x) % q for x in coeffs]
    if len(c) > params.n:
        c = poly_divmod_mod(c, list(params.f), q)[1]
    c += [0] * (params.n - len(c))
    return RingElement(tuple(c), params)


def ring_zero(params: RingParams) -> RingElement:
    return RingElement((0,) * params.n, params)


def ring_one(params: RingParams) -> RingElement:
    return ring_from_coeffs([1], params)


def _check(a: RingElement, b: RingElement):
    if a.params != b.params:
        raise ParamMismatch("operands live in different rings")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _check(a, b)
    q = int(a.params.q)
    return RingElement(tuple((x + y) % q for x, y in zip(a.coeffs, b.coeffs)), a.params)


def ring_sub(a: RingElement, b: RingElement) -> RingElement:
    _check(a, b)
    q = int(a.params.q)
    return RingElement(tuple((x - y) % q for x, y in zip(a.coeffs, b.coeffs)), a.params)


def ring_neg(a: RingElement) -> RingElement:
    q = int(a.params.q)
    return RingElement(tuple(-x % q for x in a.coeffs), a.params)


def ring_scalar_mul(c: int, a: RingElement) -> RingElement:
    q = int(a.params.q)
    c = int(c) % q
    return RingElement(tuple(c * x % q for x in a.coeffs), a.params)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Product in R_q: schoolbook convolution, then reduction by f.

    For f = x^n + 1 the reduction is the shift-and-negate rule, done in
    one vectorized pass; general f takes the polynomial-division path.
    """
    _check(a, b)
    p = a.params
    q = int(p.q)
    n = p.n
    if p.negacyclic and p.int64_safe:
        av = np.asarray(a.coeffs, dtype=np.int64)
        bv = np.asarray(b.coeffs, dtype=np.int64)
        full = np.convolve(av, bv)
        full = np.concatenate([full, np.zeros(2 * n - 1 - len(full), dtype=np.int64)])
        res = (full[:n] - np.concatenate([full[n:], [0]])) % q
        return RingElement(tuple(int(x) for x in res), p)
    full = poly_mul_z(list(a.coeffs), list(b.coeffs))
    rem = poly_divmod_mod(full, list(p.f), q)[1]
    rem += [0] * (n - len(rem))
    return RingElement(tuple(rem), p)


def evaluate(a: RingElement, alpha: int) -> int:
    """Horner evaluation of the coefficient representative at alpha mod q."""
    q = int(a.params.q)
    acc = 0
    for c in reversed(a.coeffs):
        acc = (acc * alpha + c) % q
    return acc


def ring_uniform(params: RingParams, rng) -> RingElement:
    q = int(params.q)
    return RingElement(tuple(int(v) for v in rng.uniform_array(q, params.n)), params)
