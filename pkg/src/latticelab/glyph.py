"""GLYPH rejection-sampling signatures over Z_q[x]/(x^n + 1).

Interoperability decisions (changing any of these breaks verification
against other implementations):

* H is SHAKE-256; the digest stream is consumed 3 bytes per candidate
  (2 for a position, 1 for a sign bit), repeated positions rejected,
  until exactly k distinct +-1 coefficients are placed.
* omega is the fixed-width little-endian byte encoding of all n
  coefficients of w in [0, q).
* challenge coefficients are +-1, which is what makes the rejection
  bound beta = b - k work: each coefficient of s*c is a signed sum of k
  ternary secret entries, so |s*c| <= k coefficient-wise.
* secret-key coefficients are ternary {-1, 0, 1}; masking polynomials
  y1, y2 are uniform in {-b, ..., b}.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, RejectionOverflow
from .polyring import RingElement, RingParams, ring_add, ring_mul, ring_sub, ring_uniform
from .rng import SeededRng
from .zq import Modulus

MAX_SIGN_ITERS = 10_000


@dataclass(frozen=True)
class GlyphParams:
    n: int = 1024
    q: Modulus = Modulus(59393)
    b: int = 16383
    k: int = 16

    def __post_init__(self):
        if int(self.q) % 4 != 1:
            raise InvalidParams("q must be congruent to 1 mod 4")
        if not 0 < self.k <= self.b:
            raise InvalidParams("need 0 < k <= b")
        if self.n < 2 or self.n & (self.n - 1):
            raise InvalidParams("n must be a power of two")

    @property
    def beta(self) -> int:
        return self.b - self.k

    @property
    def ring(self) -> RingParams:
        return RingParams(f=tuple([1] + [0] * (self.n - 1) + [1]), q=self.q)

    @property
    def coeff_width(self) -> int:
        return (int(self.q) - 1).bit_length() + 7 >> 3


@dataclass(frozen=True)
class GlyphSecretKey:
    s: RingElement
    e: RingElement


@dataclass(frozen=True)
class GlyphPublicKey:
    a: RingElement
    t: RingElement


@dataclass(frozen=True)
class GlyphSignature:
    c: RingElement
    z1: RingElement
    z2: RingElement


@dataclass(frozen=True)
class VerifyResult:
    accepted: bool
    reason: str | None = None


def _bounded_uniform(p: GlyphParams, bound: int, rng: SeededRng) -> RingElement:
    """Element with coefficients uniform in {-bound, ..., bound}."""
    q = int(p.q)
    vals = rng.uniform_array(2 * bound + 1, p.n) - bound
    return RingElement(tuple(int(v) % q for v in vals), p.ring)


def keygen(p: GlyphParams, rng: SeededRng) -> tuple[GlyphSecretKey, GlyphPublicKey]:
    """Ternary (s, e); public (a, t = a*s + e) with a uniform."""
    s = _bounded_uniform(p, 1, rng)
    e = _bounded_uniform(p, 1, rng)
    a = ring_uniform(p.ring, rng)
    t = ring_add(ring_mul(a, s), e)
    return GlyphSecretKey(s=s, e=e), GlyphPublicKey(a=a, t=t)


def encode_poly(w: RingElement, p: GlyphParams) -> bytes:
    """Canonical fixed-width little-endian encoding of all n coefficients."""
    width = p.coeff_width
    return b"".join(int(c).to_bytes(width, "little") for c in w.coeffs)


def hash_to_sparse(data: bytes, p: GlyphParams) -> RingElement:
    """Digest-keyed polynomial with exactly k coefficients, each +-1."""
    q = int(p.q)
    coeffs = [0] * p.n
    placed = 0
    limit = 65536 - 65536 % p.n  # unbiased index range
    counter = 0
    stream = b""
    pos = 0
    while placed < p.k:
        if pos + 3 > len(stream):
            h = hashlib.shake_256(data + counter.to_bytes(4, "little"))
            stream, pos, counter = h.digest(1024), 0, counter + 1
        chunk, pos = stream[pos : pos + 3], pos + 3
        val = chunk[0] | (chunk[1] << 8)
        if val >= limit:
            continue
        idx = val % p.n
        if coeffs[idx] != 0:
            continue
        coeffs[idx] = 1 if chunk[2] & 1 else q - 1
        placed += 1
    return RingElement(tuple(coeffs), p.ring)


def sign(
    sk: GlyphSecretKey,
    pk: GlyphPublicKey,
    message: bytes,
    p: GlyphParams,
    rng: SeededRng,
) -> tuple[GlyphSignature, int]:
    """Rejection-sampling loop; returns the signature and iteration count."""
    for it in range(1, MAX_SIGN_ITERS + 1):
        y1 = _bounded_uniform(p, p.b, rng)
        y2 = _bounded_uniform(p, p.b, rng)
        w = ring_add(ring_mul(pk.a, y1), y2)
        c = hash_to_sparse(encode_poly(w, p) + message, p)
        z1 = ring_add(ring_mul(sk.s, c), y1)
        z2 = ring_add(ring_mul(sk.e, c), y2)
        if z1.inf_norm() <= p.beta and z2.inf_norm() <= p.beta:
            return GlyphSignature(c=c, z1=z1, z2=z2), it
    raise RejectionOverflow(f"no acceptable signature in {MAX_SIGN_ITERS} iterations")


def verify(
    pk: GlyphPublicKey, message: bytes, sig: GlyphSignature, p: GlyphParams
) -> VerifyResult:
    """Norm check, then recompute the challenge from w' = a*z1 + z2 - t*c."""
    if sig.z1.inf_norm() > p.beta or sig.z2.inf_norm() > p.beta:
        return VerifyResult(False, "norm")
    w = ring_sub(ring_add(ring_mul(pk.a, sig.z1), sig.z2), ring_mul(pk.t, sig.c))
    c_prime = hash_to_sparse(encode_poly(w, p) + message, p)
    if c_prime.coeffs != sig.c.coeffs:
        return VerifyResult(False, "challenge mismatch")
    return VerifyResult(True)
