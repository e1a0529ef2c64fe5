"""Stable derived seeds so parallel runs sample identically."""

from __future__ import annotations

import hashlib


def derive_seed(*parts) -> int:
    """Hash arbitrary labelled parts into a 64-bit seed, stable across runs."""
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest()[:8], "big")
