"""Algebraic normal form over Z_q and additive variable separability.

A q-ary array is a function {0,1}**m -> Z_q and has a unique expansion
f(x) = sum over subsets S of lambda_S * prod_{k in S} x_k (mod q), because
the subset zeta transform is unitriangular and therefore invertible over any
coefficient ring.  Two variables interact when some monomial with a nonzero
coefficient contains both; the connected components of that relation give the
finest partition of the variables across which f splits into an exact sum of
block functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import PartitionTooFineError, VerificationError
from .qarray import QaryArray, combine, restrict

_NUMPY_MIN = 512


def _mobius_list(vals: list[int], m: int, q: int) -> list[int]:
    """In-place subset Moebius transform mod q; returns ANF coefficients by mask."""
    n = len(vals)
    if n >= _NUMPY_MIN:
        a = np.array(vals, dtype=np.int64)
        for k in range(m):
            b = a.reshape(-1, 2, 1 << k)
            b[:, 1, :] = (b[:, 1, :] - b[:, 0, :]) % q
        return a.tolist()
    for k in range(m):
        bit = 1 << k
        step = bit << 1
        for base in range(0, n, step):
            for t in range(base + bit, base + step):
                vals[t] = (vals[t] - vals[t - bit]) % q
    return vals


def _zeta_list(vals: list[int], m: int, q: int) -> list[int]:
    """Inverse of :func:`_mobius_list`: point values from ANF coefficients."""
    n = len(vals)
    if n >= _NUMPY_MIN:
        a = np.array(vals, dtype=np.int64)
        for k in range(m):
            b = a.reshape(-1, 2, 1 << k)
            b[:, 1, :] = (b[:, 1, :] + b[:, 0, :]) % q
        return a.tolist()
    for k in range(m):
        bit = 1 << k
        step = bit << 1
        for base in range(0, n, step):
            for t in range(base + bit, base + step):
                vals[t] = (vals[t] + vals[t - bit]) % q
    return vals


@dataclass(frozen=True, eq=True)
class Anf:
    """Algebraic normal form: subset -> coefficient map, zero entries omitted."""

    q: int
    m: int
    coeffs: Mapping[frozenset, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for subset, coeff in self.coeffs.items():
            s = frozenset(int(v) for v in subset)
            if any(v < 1 or v > self.m for v in s):
                raise ValueError(f"monomial {set(s)} out of range for m={self.m}")
            c = int(coeff) % self.q
            if c:
                clean[s] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def degree(self) -> int:
        return max((len(s) for s in self.coeffs), default=0)


def to_anf(f: QaryArray) -> Anf:
    """Exact ANF of f via the subset Moebius transform."""
    lam = _mobius_list(list(f.entries), f.m, f.q)
    coeffs = {}
    for mask, c in enumerate(lam):
        if c:
            coeffs[frozenset(k + 1 for k in range(f.m) if mask >> k & 1)] = c
    return Anf(f.q, f.m, coeffs)


def from_anf(a: Anf) -> QaryArray:
    """Tabulate an ANF back into a q-ary array (inverse of :func:`to_anf`)."""
    dense = [0] * (1 << a.m)
    for subset, coeff in a.coeffs.items():
        mask = 0
        for v in subset:
            mask |= 1 << (v - 1)
        dense[mask] = coeff
    return QaryArray(a.q, a.m, tuple(_zeta_list(dense, a.m, a.q)))


@dataclass(frozen=True)
class VarPartition:
    """A partition of the variable set {1, ..., m} into disjoint blocks."""

    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = tuple(sorted(tuple(sorted(int(v) for v in b)) for b in self.blocks))
        seen: list[int] = []
        for b in norm:
            if not b:
                raise ValueError("empty block")
            seen.extend(b)
        if sorted(seen) != list(range(1, self.m + 1)):
            raise ValueError(f"blocks {norm} do not partition 1..{self.m}")
        object.__setattr__(self, "blocks", norm)

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise ValueError(f"variable {v} not in partition")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def _components_from_dense_anf(lam: Sequence[int], m: int) -> tuple[tuple[int, ...], ...]:
    uf = _UnionFind(m)
    for mask, c in enumerate(lam):
        if c and mask & (mask - 1):  # at least two bits set
            k = 0
            while not mask >> k & 1:
                k += 1
            first = k
            for j in range(k + 1, m):
                if mask >> j & 1:
                    uf.union(first, j)
    groups: dict[int, list[int]] = {}
    for v in range(m):
        groups.setdefault(uf.find(v), []).append(v + 1)
    return tuple(sorted(tuple(g) for g in groups.values()))


def interaction_components(f: QaryArray) -> VarPartition:
    """Finest partition of the variables across which f is an exact sum.

    Variables i and j land in the same block iff some ANF monomial with a
    nonzero coefficient contains both.
    """
    lam = _mobius_list(list(f.entries), f.m, f.q)
    return VarPartition(f.m, _components_from_dense_anf(lam, f.m))


def separate(f: QaryArray, p: VarPartition) -> tuple[list[QaryArray], int]:
    """Split f into per-block components along partition p, plus a constant.

    Each returned component is defined on its block's local coordinates and
    normalised to vanish at the origin; the constant is f(0).  p must be at
    least as coarse as :func:`interaction_components`, otherwise the split
    would break a genuine interaction and :class:`PartitionTooFineError` is
    raised.  The reconstruction is verified exactly before returning.
    """
    if p.m != f.m:
        raise ValueError("partition does not match array dimension")
    comps = interaction_components(f)
    for block in comps.blocks:
        owners = {p.block_of(v) for v in block}
        if len(owners) > 1:
            raise PartitionTooFineError(
                f"partition splits interacting variables {block}"
            )
    const = f.entries[0]
    parts = []
    for block in p.blocks:
        r = restrict(f, block)
        parts.append(r + (-const))
    rebuilt = combine(f.q, f.m, list(zip(p.blocks, parts)), const)
    if rebuilt.entries != f.entries:  # pragma: no cover - internal guard
        raise VerificationError("block separation failed to reconstruct input")
    return parts, const
