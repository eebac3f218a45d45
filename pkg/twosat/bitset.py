"""
Integer bitsets over poset element ids.

Element ``c`` is bit ``1 << c``. Python ints are arbitrary precision, so one
int holds a subset of a poset of any size and set algebra is a single
``|``, ``&`` or ``~`` per operation.
"""
from typing import Iterable, Iterator


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for element in elements:
        mask |= 1 << element
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the element ids of ``mask`` in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Smallest element id in a nonempty mask"""
    return (mask & -mask).bit_length() - 1
