"""M0,m arrangements from the non-constant 2x2 minors of the marked-point matrix.

Columns are (1:0), (1:1), (1:x_1), ..., (1:x_{m-3}), (0:1). The minor of
columns i < j is constant unless one of them is a middle column, so the
forms are x_k (with column 1), x_k - 1 (with column 2) and x_l - x_k
(two middle columns).
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence

from logdisc.errors import LogdiscError
from logdisc.model.arrangement import Arrangement, make_arrangement
from logdisc.model.poly import Poly

logger = logging.getLogger(__name__)


class ModuliError(LogdiscError):
    """Raised for invalid marked-point data."""


def pair_label(i: int, j: int, m: int) -> str:
    return f"s{i}{j}" if m < 10 else f"s{i}_{j}"


@dataclass(frozen=True, slots=True)
class MandelstamMap:
    """Column pairs of the non-constant minors, in the order of the u-coordinates."""

    m: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def index(self) -> dict[tuple[int, int], int]:
        return {pair: i for i, pair in enumerate(self.pairs)}

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(pair_label(i, j, self.m) for i, j in self.pairs)

    def label_of(self, i: int) -> str:
        a, b = self.pairs[i]
        return pair_label(a, b, self.m)


def _check_m(m: int) -> None:
    if m < 5:
        raise ModuliError(f"M0,m needs m >= 5, got {m}")


def _build(m: int, middle: Sequence[int]) -> tuple[Arrangement, MandelstamMap]:
    """Arrangement of the minors among columns 1, 2, `middle` and m; x_k belongs to middle[k-1]."""
    d = len(middle)
    coordinate = {column: k for k, column in enumerate(middle)}
    pairs: list[tuple[int, int]] = []
    b: list[int] = []
    A: list[list[int]] = []
    columns = sorted({1, 2, m, *middle})
    for a_pos, i in enumerate(columns):
        for j in columns[a_pos + 1 :]:
            row = [0] * d
            if i == 1 and j in coordinate:
                row[coordinate[j]] = 1
                const = 0
            elif i == 2 and j in coordinate:
                row[coordinate[j]] = 1
                const = -1
            elif i in coordinate and j in coordinate:
                row[coordinate[j]] = 1
                row[coordinate[i]] = -1
                const = 0
            else:
                continue
            pairs.append((i, j))
            b.append(const)
            A.append(row)
    mmap = MandelstamMap(m=m, pairs=tuple(pairs))
    return make_arrangement(d, b, A, mmap.labels), mmap


def m0m_arrangement(m: int) -> tuple[Arrangement, MandelstamMap]:
    _check_m(m)
    arr, mmap = _build(m, list(range(3, m)))
    logger.debug("M0,%d: %d hyperplanes in dimension %d", m, arr.n_plus_1, arr.d)
    return arr, mmap


def m0m_deletion(m: int, k: int) -> tuple[Arrangement, MandelstamMap]:
    """M0,m-1^(k): column k deleted, Mandelstam labels of the original numbering."""
    _check_m(m)
    if not 3 <= k <= m - 1:
        raise ModuliError(f"particle label must satisfy 3 <= k <= {m - 1}, got {k}")
    return _build(m, [c for c in range(3, m) if c != k])


def relabel_for_swap(mmap: MandelstamMap, i: int, j: int) -> list[int]:
    """u-permutation induced by swapping middle marked points i and j: entry p is the image index of pair p."""
    if not (3 <= i <= mmap.m - 1 and 3 <= j <= mmap.m - 1):
        raise ModuliError(f"only middle marked points 3..{mmap.m - 1} can be swapped")
    swap = {i: j, j: i}
    index = mmap.index
    image = []
    for a, b in mmap.pairs:
        a2, b2 = swap.get(a, a), swap.get(b, b)
        image.append(index[(min(a2, b2), max(a2, b2))])
    return image


def m05_discriminant(names: Sequence[str] = ("u0", "u1", "u2", "u3", "u4")) -> Poly:
    """(u0u3+u0u4+u1u4+u1u2+u2u4+u3u4+u4^2)^2 - 4u0u1u2u3 in the given five variable names."""
    if len(names) != 5:
        raise ModuliError(f"expected five variable names, got {len(names)}")
    u0, u1, u2, u3, u4 = (Poly.variable(name, tuple(names)) for name in names)
    inner = u0 * u3 + u0 * u4 + u1 * u4 + u1 * u2 + u2 * u4 + u3 * u4 + u4 * u4
    return (inner * inner - u0 * u1 * u2 * u3 * 4).canonical()
