"""
Shared utilities: unit groups, interleaved layout and element formatting.
"""

from math import gcd
from typing import Dict, List, Sequence


def multiplicative_order(q: int, m: int) -> int:
    """Smallest a > 0 with q^a = 1 mod m."""
    if gcd(q, m) != 1:
        raise ValueError(f"{q} is not a unit modulo {m}")
    if m == 1:
        return 1
    a, x = 1, q % m
    while x != 1:
        x = (x * q) % m
        a += 1
    return a


def units_mod(m: int) -> List[int]:
    """All z in [1, m) with gcd(z, m) = 1 (z = 1 when m = 1)."""
    if m == 1:
        return [1]
    return [z for z in range(1, m) if gcd(z, m) == 1]


def to_flat(components: Sequence[Sequence[int]], m: int) -> List[int]:
    """Interleave ell coefficient lists into c_{0,0} .. c_{l-1,0}, c_{0,1}, ..."""
    ell = len(components)
    flat = [0] * (m * ell)
    for t, coeffs in enumerate(components):
        for j, c in enumerate(coeffs):
            if c:
                flat[j * ell + t] = c
    return flat


def from_flat(flat: Sequence[int], ell: int, m: int) -> List[List[int]]:
    """Inverse of to_flat."""
    if len(flat) != m * ell:
        raise ValueError(f"flat word has length {len(flat)}, expected {m * ell}")
    return [[flat[j * ell + t] for j in range(m)] for t in range(ell)]


def format_power(log_table: Dict[int, int], value: int, coeffs: Sequence[int]) -> str:
    """Render a field element as a^e, 0, or its coefficient list when outside <alpha>."""
    if value == 0:
        return "0"
    if value in log_table:
        return f"a^{log_table[value]}"
    return "[" + ",".join(str(c) for c in coeffs) + "]"
