"""Bit-packed linear algebra over GF(2).

Vectors are Python ints; bit ``b`` is the coordinate of basis element ``b``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["Echelon", "kernel", "rank", "homology_basis"]


class Echelon:
    """Incrementally maintained echelon basis, keyed by each row's leading bit."""

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        rows = self.rows
        while v:
            lead = v.bit_length() - 1
            r = rows.get(lead)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        v = self.reduce(v)
        if v:
            self.rows[v.bit_length() - 1] = v
            return True
        return False

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    return len(Echelon(vectors))


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the linear map sending basis vector ``c`` to ``columns[c]``.

    Returned vectors are bitsets over the column indices.
    """
    pivots: dict[int, tuple[int, int]] = {}
    out = []
    for c, image in enumerate(columns):
        combo = 1 << c
        while image:
            lead = image.bit_length() - 1
            hit = pivots.get(lead)
            if hit is None:
                break
            image ^= hit[0]
            combo ^= hit[1]
        if image:
            pivots[image.bit_length() - 1] = (image, combo)
        else:
            out.append(combo)
    return out


def homology_basis(cycles_from: Sequence[int], boundaries: Iterable[int]) -> list[int]:
    """Representatives of a basis of ker / im.

    ``cycles_from`` are the images of a basis under the outgoing map; the
    kernel vectors are then reduced against ``boundaries``.
    """
    span = Echelon(boundaries)
    reps = []
    for z in kernel(cycles_from):
        if span.add(z):
            reps.append(z)
    return reps
