"""Transvections attached to a double word and their orbit structure on F2^m.

Each bounded index n carries a transvection acting on Z^m by

    xi_n  ->  xi_n - sum_{k -> n} C[k][n] xi_k + sum_{n -> l} C[l][n] xi_l

(all other coordinates fixed), with edges and coefficients from the sigma
module.  Mod 2 the signs disappear and the action only depends on the
parity mask of the neighbor coefficients.  The group generated by the mod-2
transvections partitions F2^m into orbits; the number of orbits equals the
number of connected components of the corresponding real reduced double
Bruhat cell.

Bit packing convention: a vector (xi_1, ..., xi_m) is the integer mask with
xi_k at bit k-1, so the string "0010" (leftmost character xi_1) is the mask
4.  Orbit representatives are the smallest masks in this encoding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cartan import CartanMatrix
from .sigma import build_sigma, c_matrix
from .weyl import DoubleWord, GuardError, bounded_indices, validate_double_reduced

__all__ = [
    "TransvectionZ",
    "TransvectionF2",
    "OrbitReport",
    "transvections",
    "transvections_f2",
    "apply_z",
    "apply_f2",
    "enumerate_orbits",
    "orbit_of",
    "adjacent_sign_vectors",
    "as_mask",
    "as_bits",
    "mask_to_string",
]

DEFAULT_GUARD_BITS = 28
DEFAULT_ORBIT_CAP = 1 << 20

# Per-generator image tables are cached during enumeration only while they
# fit comfortably in memory; beyond that they are recomputed every sweep.
_IMAGE_CACHE_BYTES = 1 << 29


def as_mask(xi: int | str | Sequence[int], m: int) -> int:
    """Normalize a vector given as mask, bitstring, or 0/1 sequence."""
    if isinstance(xi, int):
        if not 0 <= xi < (1 << m):
            raise ValueError(f"mask {xi} outside [0, 2^{m})")
        return xi
    if isinstance(xi, str):
        bits = [int(c) for c in xi.strip()]
    else:
        bits = [int(c) for c in xi]
    if len(bits) != m or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected {m} bits, got {xi!r}")
    return sum(b << k for k, b in enumerate(bits))


def as_bits(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> k) & 1 for k in range(m))


def mask_to_string(mask: int, m: int) -> str:
    """Render with xi_1 leftmost, matching strings like "0010"."""
    return "".join(str((mask >> k) & 1) for k in range(m))


@dataclass(frozen=True)
class TransvectionZ:
    """Integer-level transvection at a bounded target index."""

    target: int
    inputs: tuple[tuple[int, int], ...]   # (k, C[k][n]) over edges k -> n
    outputs: tuple[tuple[int, int], ...]  # (l, C[l][n]) over edges n -> l


@dataclass(frozen=True)
class TransvectionF2:
    """Mod-2 transvection: flip bit target-1 by the parity of mask & xi."""

    target: int
    mask: int


def transvections(cartan: CartanMatrix, word: DoubleWord) -> list[TransvectionZ]:
    """One TransvectionZ per bounded index, coefficients straight from sigma."""
    validate_double_reduced(cartan, word)
    graph = build_sigma(cartan, word)
    coeffs = c_matrix(cartan, word)
    out = []
    for n in bounded_indices(word):
        ins = tuple(sorted((e.tail, coeffs.value(e.tail, n)) for e in graph.in_edges(n)))
        outs = tuple(sorted((e.head, coeffs.value(e.head, n)) for e in graph.out_edges(n)))
        out.append(TransvectionZ(n, ins, outs))
    return out


def to_f2(t: TransvectionZ) -> TransvectionF2:
    mask = 0
    for k, c in t.inputs + t.outputs:
        if c % 2:
            mask |= 1 << (k - 1)
    return TransvectionF2(t.target, mask)


def transvections_f2(cartan: CartanMatrix, word: DoubleWord) -> list[TransvectionF2]:
    return [to_f2(t) for t in transvections(cartan, word)]


def apply_z(t: TransvectionZ, xi: Sequence[int]) -> tuple[int, ...]:
    """Apply the integer transvection; only coordinate target changes."""
    out = list(xi)
    n = t.target
    out[n - 1] = (
        xi[n - 1]
        - sum(c * xi[k - 1] for k, c in t.inputs)
        + sum(c * xi[l - 1] for l, c in t.outputs)
    )
    return tuple(out)


def apply_f2(t: TransvectionF2, xi: int) -> int:
    """Apply the mod-2 transvection to a packed mask."""
    parity = (xi & t.mask).bit_count() & 1
    return xi ^ (parity << (t.target - 1))


@dataclass(frozen=True)
class OrbitReport:
    """Exact orbit partition of F2^m under the transvection group."""

    m: int
    orbit_count: int
    histogram: tuple[tuple[int, int], ...]  # (orbit size, number of orbits)
    representatives: tuple[int, ...]        # smallest mask per orbit, ascending

    def __post_init__(self) -> None:
        total = sum(size * count for size, count in self.histogram)
        if total != 1 << self.m:
            raise ValueError(f"histogram covers {total} of {1 << self.m} vectors")

    def representative_strings(self) -> list[str]:
        return [mask_to_string(r, self.m) for r in self.representatives]

    def to_json_dict(self, type_label: str | None = None, word: DoubleWord | None = None) -> dict:
        doc = {
            "m": self.m,
            "orbit_count": self.orbit_count,
            "histogram": [{"size": s, "count": c} for s, c in self.histogram],
            "representatives": self.representative_strings(),
        }
        if type_label is not None:
            doc["type"] = type_label
        if word is not None:
            doc["word"] = str(word)
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(**kwargs), sort_keys=True)


def _images(idx: np.ndarray, gen: TransvectionF2) -> np.ndarray:
    par = np.bitwise_count(idx & np.uint32(gen.mask)).astype(np.uint32) & np.uint32(1)
    return idx ^ (par << np.uint32(gen.target - 1))


def enumerate_orbits(
    cartan: CartanMatrix, word: DoubleWord, guard_bits: int = DEFAULT_GUARD_BITS
) -> OrbitReport:
    """Exact orbit partition via label propagation over all 2^m states.

    Every state starts labeled by itself; repeatedly each label is lowered
    to the minimum over the states reachable by one generator, with pointer
    jumping in between, until nothing moves.  The fixed point labels every
    state with the smallest mask of its orbit, which directly yields the
    representatives, the histogram, and the count.  Deterministic, and
    vectorized so the 2^21-state cases stay in the seconds range.

    Memory grows like 2^m words; requests above guard_bits are rejected
    (use orbit_of for single orbits of longer words).
    """
    m = word.m
    if m > guard_bits:
        raise GuardError(
            f"m = {m} exceeds the enumeration guard of {guard_bits} bits; "
            "orbit_of can still explore single orbits"
        )
    gens = transvections_f2(cartan, word)
    n_states = 1 << m

    if not gens:
        reps = tuple(range(n_states))
        return OrbitReport(m, n_states, ((1, n_states),), reps)

    idx = np.arange(n_states, dtype=np.uint32)
    labels = idx.copy()
    cache_images = len(gens) * n_states * 4 <= _IMAGE_CACHE_BYTES
    images = [_images(idx, g) for g in gens] if cache_images else None

    while True:
        changed = False
        for gi, gen in enumerate(gens):
            img = images[gi] if images is not None else _images(idx, gen)
            pulled = labels[img]
            if not changed and not np.array_equal(pulled, labels):
                changed = True
            np.minimum(labels, pulled, out=labels)
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if not changed:
            break

    reps_mask = labels == idx
    reps = np.flatnonzero(reps_mask).astype(np.int64)
    sizes = np.bincount(labels, minlength=n_states)[reps]
    size_values, size_counts = np.unique(sizes, return_counts=True)
    histogram = tuple((int(s), int(c)) for s, c in zip(size_values, size_counts))
    return OrbitReport(m, int(reps.size), histogram, tuple(int(r) for r in reps))


def orbit_of(
    cartan: CartanMatrix,
    word: DoubleWord,
    xi: int | str | Sequence[int],
    cap: int = DEFAULT_ORBIT_CAP,
) -> frozenset[int]:
    """Full orbit of one vector by hash-set closure (no 2^m table)."""
    gens = transvections_f2(cartan, word)
    start = as_mask(xi, word.m)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for g in gens:
            w = apply_f2(g, v)
            if w not in seen:
                if len(seen) >= cap:
                    raise GuardError(f"orbit exceeds the {cap}-element cap")
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def adjacent_sign_vectors(
    cartan: CartanMatrix, word: DoubleWord, xi: int | str | Sequence[int]
) -> list[tuple[int, int]]:
    """(n, tau_n(xi)) for each bounded n: the chart-gluing neighbors of xi."""
    mask = as_mask(xi, word.m)
    return [(g.target, apply_f2(g, mask)) for g in transvections_f2(cartan, word)]
