"""q-ary arrays of size 2 x ... x 2 and their exact aperiodic autocorrelation.

An array of dimension m assigns a value in Z_q to every vertex of the m-cube.
Cell (x_1, ..., x_m) with x_k in {0, 1} is stored at index
t = sum(2**(k-1) * x_k), so coordinate 1 is the least significant bit.  A
dimension-0 array is a single constant and is a first-class citizen: every
operation below degenerates correctly to it.

Shift vectors are plain tuples with entries in {-1, 0, 1}; anything outside
that alphabet is rejected rather than treated as a zero-contribution shift.
Autocorrelation values are exact elements of Z[zeta_q] (see
:mod:`golaypairs.cyclotomic`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CycElement, get_context


@dataclass(frozen=True)
class QaryArray:
    """Immutable q-ary array over the m-dimensional binary cube."""

    q: int
    m: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        entries = tuple(int(v) for v in self.entries)
        if len(entries) != 1 << self.m:
            raise ValueError(
                f"expected {1 << self.m} entries for m={self.m}, got {len(entries)}"
            )
        q = self.q
        if any(v < 0 or v >= q for v in entries):
            raise ValueError(f"entries must lie in [0, {q})")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def constant(cls, q: int, value: int, m: int = 0) -> "QaryArray":
        return cls(q, m, ((value % q),) * (1 << m))

    @classmethod
    def from_function(cls, q: int, m: int, fn) -> "QaryArray":
        """Tabulate ``fn(bits)`` over all m-bit points; values reduced mod q."""
        ent = []
        for t in range(1 << m):
            bits = tuple((t >> k) & 1 for k in range(m))
            ent.append(fn(bits) % q)
        return cls(q, m, tuple(ent))

    def value(self, x: Sequence[int]) -> int:
        if len(x) != self.m:
            raise ValueError(f"point has {len(x)} coordinates, expected {self.m}")
        t = 0
        for k, bit in enumerate(x):
            if bit not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            t |= bit << k
        return self.entries[t]

    def reverse(self) -> "QaryArray":
        """The array evaluated at the complemented point (1-x_1, ..., 1-x_m).

        Complementing every coordinate maps index t to 2**m - 1 - t, so this
        is exactly the entry tuple reversed.
        """
        return QaryArray(self.q, self.m, self.entries[::-1])

    def project_sequence(self) -> tuple[int, ...]:
        """Read the array out as a length-2**m sequence.

        Under the index convention above, projection onto one axis is the
        identity on storage.  The boundary still exists as an explicit,
        documented operation so callers never rely on the layout silently.
        """
        return self.entries

    def __add__(self, other: object) -> "QaryArray":
        if isinstance(other, int):
            q = self.q
            return QaryArray(q, self.m, tuple((v + other) % q for v in self.entries))
        if isinstance(other, QaryArray):
            if other.q != self.q or other.m != self.m:
                raise ValueError("shape or modulus mismatch")
            q = self.q
            return QaryArray(
                q, self.m, tuple((a + b) % q for a, b in zip(self.entries, other.entries))
            )
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QaryArray":
        q = self.q
        return QaryArray(q, self.m, tuple((-v) % q for v in self.entries))

    def __sub__(self, other: object) -> "QaryArray":
        if isinstance(other, (int, QaryArray)):
            return self + (-other if isinstance(other, QaryArray) else -other)
        return NotImplemented

    def to_json_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "entries": list(self.entries)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "QaryArray":
        try:
            q = int(data["q"])
            m = int(data["m"])
            entries = tuple(int(v) for v in data["entries"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed array object: {exc}") from exc
        return cls(q, m, entries)


def _validate_shift(m: int, tau: Sequence[int]) -> tuple[int, ...]:
    tau = tuple(tau)
    if len(tau) != m:
        raise ValueError(f"shift has {len(tau)} coordinates, expected {m}")
    if any(t not in (-1, 0, 1) for t in tau):
        raise ValueError(f"shift entries must be -1, 0, or 1, got {tau}")
    return tau


@lru_cache(maxsize=None)
def _overlap_pairs(m: int, tau: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Index pairs (i, j) with i = j + tau, both inside the cube."""
    base = 0
    delta = 0
    free: list[int] = []
    for k, t in enumerate(tau):
        bit = 1 << k
        if t == 0:
            free.append(bit)
        elif t == 1:
            delta += bit
        else:
            base += bit
            delta -= bit
    idx = [base]
    for bit in free:
        idx += [s | bit for s in idx]
    return tuple((s + delta, s) for s in idx)


def all_shifts(m: int) -> Iterable[tuple[int, ...]]:
    """All 3**m shift vectors, in deterministic lexicographic order."""
    return product((-1, 0, 1), repeat=m)


@lru_cache(maxsize=None)
def half_shifts(m: int) -> tuple[tuple[int, ...], ...]:
    """One representative from each {tau, -tau} pair of nonzero shifts.

    The kept representative is the one whose first nonzero coordinate is +1.
    Conjugate symmetry of the autocorrelation makes this half sufficient for
    complementarity tests.
    """
    kept = []
    for tau in product((-1, 0, 1), repeat=m):
        nz = next((t for t in tau if t), 0)
        if nz == 1:
            kept.append(tau)
    return tuple(kept)


def autocorrelation(f: QaryArray, tau: Sequence[int]) -> CycElement:
    """Exact aperiodic autocorrelation of f at shift tau.

    The value is sum over x of zeta**(f(x+tau) - f(x)) with the sum running
    over the points where both x and x+tau lie inside the cube.
    """
    tau = _validate_shift(f.m, tau)
    q = f.q
    counts = [0] * q
    ent = f.entries
    for i, j in _overlap_pairs(f.m, tau):
        counts[(ent[i] - ent[j]) % q] += 1
    return get_context(q).element(counts)


def correlation_spectrum(f: QaryArray) -> dict[tuple[int, ...], CycElement]:
    """Autocorrelation at every shift in {-1,0,1}**m, keyed by shift vector."""
    return {tau: autocorrelation(f, tau) for tau in all_shifts(f.m)}


def is_gap(f: QaryArray, g: QaryArray) -> bool:
    """Whether (f, g) is a Golay complementary array pair.

    True iff the two autocorrelations cancel exactly at every nonzero shift.
    Work is halved via conjugate symmetry: checking one representative per
    {tau, -tau} pair is equivalent to checking all 3**m - 1 nonzero shifts.
    """
    if f.q != g.q or f.m != g.m:
        raise ValueError("shape or modulus mismatch")
    q = f.q
    ctx = get_context(q)
    fe = f.entries
    ge = g.entries
    for tau in half_shifts(f.m):
        counts = [0] * q
        pairs = _overlap_pairs(f.m, tau)
        for i, j in pairs:
            counts[(fe[i] - fe[j]) % q] += 1
        for i, j in pairs:
            counts[(ge[i] - ge[j]) % q] += 1
        if not ctx.element(counts).is_zero():
            return False
    return True


def sequence_autocorrelation(q: int, s: Sequence[int], tau: int) -> CycElement:
    """Aperiodic autocorrelation of a q-ary sequence at integer shift tau."""
    length = len(s)
    if not -length < tau < length:
        raise ValueError(f"shift {tau} out of range for length {length}")
    counts = [0] * q
    lo = max(0, -tau)
    hi = length - max(0, tau)
    for t in range(lo, hi):
        counts[(s[t + tau] - s[t]) % q] += 1
    return get_context(q).element(counts)


def is_gcp(q: int, s1: Sequence[int], s2: Sequence[int]) -> bool:
    """Whether two equal-length q-ary sequences are a complementary pair.

    Positive shifts suffice by the same conjugate symmetry used for arrays.
    """
    if len(s1) != len(s2):
        raise ValueError("sequences must have equal length")
    ctx = get_context(q)
    for tau in range(1, len(s1)):
        counts = [0] * q
        for t in range(len(s1) - tau):
            counts[(s1[t + tau] - s1[t]) % q] += 1
            counts[(s2[t + tau] - s2[t]) % q] += 1
        if not ctx.element(counts).is_zero():
            return False
    return True


def _spread_masks(vars_: tuple[int, ...]) -> list[int]:
    """Global cell masks for every point of the subcube on ``vars_``.

    Entry i is the global index whose bits on ``vars_`` spell out i (in local
    little-endian order) and are zero elsewhere.
    """
    masks = [0]
    for v in vars_:
        bit = 1 << (v - 1)
        masks += [s | bit for s in masks]
    return masks


def restrict(f: QaryArray, vars_: Sequence[int]) -> QaryArray:
    """Restriction of f to the listed variables, all others pinned to 0.

    ``vars_`` must be strictly increasing 1-based variable indices; the result
    is an array of dimension len(vars_) in the induced local coordinates.
    """
    vt = tuple(vars_)
    if any(v < 1 or v > f.m for v in vt) or list(vt) != sorted(set(vt)):
        raise ValueError(f"bad variable subset {vt} for m={f.m}")
    ent = f.entries
    return QaryArray(f.q, len(vt), tuple(ent[s] for s in _spread_masks(vt)))


def combine(
    q: int,
    m: int,
    blocks: Sequence[tuple[Sequence[int], QaryArray]],
    constant: int = 0,
) -> QaryArray:
    """Sum of block functions on disjoint variable sets, plus a constant.

    Inverse of block separation: each (vars, array) contributes its value at
    the projection of the global point onto ``vars``.  Blocks must be disjoint
    but need not cover all m variables.
    """
    seen: set[int] = set()
    resolved = []
    for vars_, arr in blocks:
        vt = tuple(vars_)
        if arr.q != q or arr.m != len(vt):
            raise ValueError("block array does not match its variable list")
        if any(v < 1 or v > m for v in vt) or set(vt) & seen or len(set(vt)) != len(vt):
            raise ValueError(f"bad or overlapping block variables {vt}")
        seen |= set(vt)
        resolved.append((vt, arr.entries))
    total = [constant % q] * (1 << m)
    for vt, ent in resolved:
        others = tuple(v for v in range(1, m + 1) if v not in vt)
        complement = _spread_masks(others)
        for i, mask in enumerate(_spread_masks(vt)):
            v = ent[i]
            if v:
                for o in complement:
                    t = mask | o
                    total[t] = (total[t] + v) % q
    return QaryArray(q, m, tuple(total))
