"""Locally injective walks on the hexagonal tiling as a subshift of finite type.

The six oriented edges of the fundamental hexagon are the alphabet: symbols
1..6 stand for u, v, w, -u, -v, -w where u = w0, v = -j*w0, w = j2*w0 are the
successive hexagon steps.  A word is admissible when each step departs from
the vertex class the previous one arrived at and never immediately reverses
(no y followed by -y).  Every symbol therefore has exactly two successors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .moments import J, J2


def _symbol_vectors(w0: complex):
    u = w0
    v = -J * w0
    w = J2 * w0
    return (u, v, w, -u, -v, -w)


def _build_matrix(w0: complex):
    vectors = _symbol_vectors(w0)
    # class of the vertex a step departs from: 0 when the vector is one of
    # {w0, j*w0, j2*w0}, else 1
    outgoing0 = (w0, J * w0, J2 * w0)

    def klass(vec):
        return 0 if any(abs(vec - d) < 1e-12 * max(1.0, abs(w0)) for d in outgoing0) else 1

    classes = [klass(vec) for vec in vectors]
    neg = {0: 3, 1: 4, 2: 5, 3: 0, 4: 1, 5: 2}
    a = [[0] * 6 for _ in range(6)]
    for s in range(6):
        for t in range(6):
            if classes[t] == 1 - classes[s] and t != neg[s]:
                a[s][t] = 1
    return tuple(tuple(row) for row in a)


@dataclass
class WalkShift:
    """Alphabet, step vectors, and the 6x6 incidence matrix of the subshift."""

    w0: complex
    vectors: tuple
    matrix: tuple

    def successors(self, symbol: int):
        """Admissible next symbols (1-based) after `symbol`."""
        return tuple(t + 1 for t in range(6) if self.matrix[symbol - 1][t])


def build_walk_shift(w0: complex = 1.0 + 0j) -> WalkShift:
    return WalkShift(complex(w0), _symbol_vectors(complex(w0)), _build_matrix(complex(w0)))


def count_words(shift: WalkShift, start_symbol: int, steps: int) -> int:
    """Exact number of admissible continuations of `steps` further symbols."""
    if steps == 0:
        return 1
    row = list(shift.matrix[start_symbol - 1])
    for _ in range(steps - 1):
        row = [sum(row[k] * shift.matrix[k][t] for k in range(6)) for t in range(6)]
    return sum(row)


@dataclass
class Walk:
    symbols: list  # 1-based symbols, one per step
    points: list  # partial sums S_0 .. S_n (S_0 = 0)

    @property
    def moduli(self):
        return [abs(z) for z in self.points]


def walk_sample(shift: WalkShift, length: int, seed, start_symbol: int | None = None) -> Walk:
    """Sample an admissible word uniformly step by step and accumulate sums."""
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = np.random.default_rng(seed)
    if start_symbol is None:
        start_symbol = int(rng.integers(1, 7))
    symbols = [start_symbol]
    z = shift.vectors[start_symbol - 1]
    points = [0j, z]
    for _ in range(length - 1):
        nxt = shift.successors(symbols[-1])
        symbols.append(nxt[int(rng.integers(0, len(nxt)))])
        z = z + shift.vectors[symbols[-1] - 1]
        points.append(z)
    return Walk(symbols, points)


def increments_to_symbols(values, shift: WalkShift, tol: float = 1e-9):
    """Match consecutive value differences to walk symbols (1-based).

    Used to read the image of a tree geodesic as a word of the subshift."""
    symbols = []
    for a, b in zip(values, values[1:]):
        inc = b - a
        hit = None
        for i, vec in enumerate(shift.vectors):
            if abs(inc - vec) <= tol * max(1.0, abs(vec)):
                hit = i + 1
                break
        if hit is None:
            raise ValueError(f"increment {inc} is not a tiling edge vector")
        symbols.append(hit)
    return symbols


def is_admissible(shift: WalkShift, symbols) -> bool:
    return all(shift.matrix[s - 1][t - 1] for s, t in zip(symbols, symbols[1:]))
