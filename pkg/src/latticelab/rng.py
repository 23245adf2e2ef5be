"""Deterministic seeded randomness.

A counter-mode SHA-256 stream keyed by a 256-bit seed.  Identical
(seed, counter) pairs produce identical byte streams on every platform,
which is what makes every experiment in this package replayable from a
single ``--seed`` flag.  Independent sub-streams for parallel or
logically separate tasks are derived by hashing the parent seed with a
context label.
"""

from __future__ import annotations

import hashlib
import os

import numpy as np

SEED_BYTES = 32


class SeededRng:
    """Counter-mode deterministic byte/bit source.

    Single-owner by design: concurrent users must each call
    :meth:`derive` with distinct labels instead of sharing one instance.
    """

    def __init__(self, seed: bytes, counter: int = 0):
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
        if counter < 0:
            raise ValueError("counter must be non-negative")
        self.seed = seed
        self.counter = counter
        self._buf = b""
        self._bitbuf = 0
        self._bitcount = 0

    @classmethod
    def from_hex(cls, hex_seed: str) -> "SeededRng":
        return cls(bytes.fromhex(hex_seed))

    @classmethod
    def from_entropy(cls) -> "SeededRng":
        return cls(os.urandom(SEED_BYTES))

    def derive(self, label: str | bytes) -> "SeededRng":
        """Return an independent sub-stream keyed by (seed, label)."""
        if isinstance(label, str):
            label = label.encode()
        child = hashlib.sha256(self.seed + b"/derive/" + label).digest()
        return SeededRng(child)

    def _block(self) -> bytes:
        out = hashlib.sha256(self.seed + self.counter.to_bytes(8, "little")).digest()
        self.counter += 1
        return out

    def take_bytes(self, n: int) -> bytes:
        while len(self._buf) < n:
            self._buf += self._block()
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def bits(self, k: int) -> int:
        """Next k bits of the stream as a non-negative integer."""
        while self._bitcount < k:
            self._bitbuf = (self._bitbuf << 8) | self.take_bytes(1)[0]
            self._bitcount += 8
        shift = self._bitcount - k
        out = self._bitbuf >> shift
        self._bitbuf &= (1 << shift) - 1
        self._bitcount = shift
        return out

    def uniform_mod(self, q: int) -> int:
        """Uniform integer in [0, q), by rejection against 2^ceil(lg q).

        Rejection against the smallest power-of-two ceiling avoids the
        modulo bias a plain ``bits % q`` would introduce.
        """
        k = (q - 1).bit_length() if q > 1 else 1
        while True:
            v = self.bits(k)
            if v < q:
                return v

    def uniform_array(self, q: int, size: int) -> np.ndarray:
        """Vectorized batch of independent uniform draws in [0, q)."""
        k = (q - 1).bit_length() if q > 1 else 1
        nbytes = (k + 7) // 8
        mask = (1 << k) - 1
        out = np.empty(size, dtype=np.int64)
        filled = 0
        while filled < size:
            want = size - filled
            # Modest oversampling keeps the expected number of refills low.
            batch = int(want * (1 << k) / q) + 16
            raw = np.frombuffer(self.take_bytes(batch * nbytes), dtype=np.uint8)
            raw = raw.reshape(batch, nbytes).astype(np.uint64)
            vals = np.zeros(batch, dtype=np.uint64)
            for i in range(nbytes):
                vals = (vals << np.uint64(8)) | raw[:, i]
            vals &= np.uint64(mask)
            vals = vals[vals < q]
            take = min(len(vals), want)
            out[filled : filled + take] = vals[:take].astype(np.int64)
            filled += take
        return out

    def unit_floats(self, size: int) -> np.ndarray:
        """Batch of uniforms in [0, 1) with 53-bit resolution."""
        raw = np.frombuffer(self.take_bytes(8 * size), dtype="<u8")
        return (raw >> np.uint64(11)).astype(np.float64) / float(1 << 53)
