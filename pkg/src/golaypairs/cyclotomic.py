"""Exact arithmetic in Z[zeta_q], the ring of integer sums of q-th roots of unity.

Every correlation value computed by this package lives in this ring, so the
whole library can stay float-free.  An element is stored as a length-q vector
of signed integer multiplicities: ``counts[d]`` is the multiplicity of
``zeta**d`` where ``zeta = exp(2*pi*i/q)``.  The representation is not
canonical (for q = 4, ``1 + zeta**2`` and ``0`` denote the same value), but
zero testing is exact and decidable: a sum of q-th roots of unity vanishes
iff the q-th cyclotomic polynomial divides its exponent polynomial.  Equality
is zero testing of the difference.  Python integers do not overflow, so no
width checks are needed anywhere.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import VerificationError


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                out[i + j] += av * bv
    return out


def _poly_divmod_exact(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Long division of integer polynomials; den must be monic."""
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if dd == 0:
        return list(num), []
    quo = [0] * max(len(rem) - dd, 0)
    for i in range(len(rem) - 1, dd - 1, -1):
        coeff = rem[i]
        if coeff:
            quo[i - dd] = coeff
            for j, dv in enumerate(den):
                rem[i - dd + j] -= coeff * dv
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> tuple[int, ...]:
    """Coefficients of the q-th cyclotomic polynomial, ascending degree.

    Computed by dividing x**q - 1 by the cyclotomic polynomials of all proper
    divisors of q.  Division is exact integer polynomial division; a nonzero
    remainder would indicate a bug and raises.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    if q == 1:
        return (-1, 1)
    poly: list[int] = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            poly, rem = _poly_divmod_exact(poly, cyclotomic_polynomial(d))
            if rem:  # pragma: no cover - would indicate a bug
                raise VerificationError(
                    f"x^{q}-1 not divisible by the {d}-th cyclotomic polynomial"
                )
    return tuple(poly)


class CycContext:
    """Shared arithmetic context for a fixed root order q.

    Holds the q-th cyclotomic polynomial and a reduction table mapping each
    power x**d (d < q) to its remainder modulo that polynomial.  Elements
    carry a reference to their context; mixing contexts raises.
    """

    __slots__ = ("q", "phi", "degree", "_rows")

    def __init__(self, q: int):
        if q < 1:
            raise ValueError(f"q must be positive, got {q}")
        self.q = q
        self.phi = cyclotomic_polynomial(q)
        self.degree = len(self.phi) - 1
        deg = self.degree
        rows = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(q):
            rows.append(tuple(cur))
            top = cur[deg - 1]
            cur = [0] + cur[: deg - 1]
            if top:
                cur = [cv - top * self.phi[i] for i, cv in enumerate(cur)]
        self._rows = tuple(rows)

    def reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        """Remainders of x**d modulo the cyclotomic polynomial, d = 0..q-1."""
        return self._rows

    def zero(self) -> "CycElement":
        return CycElement(self, (0,) * self.q)

    def one(self) -> "CycElement":
        return self.integer(1)

    def integer(self, n: int) -> "CycElement":
        counts = [0] * self.q
        counts[0] = n
        return CycElement(self, tuple(counts))

    def root(self, d: int) -> "CycElement":
        """The root of unity zeta**d.  The exponent is reduced mod q."""
        counts = [0] * self.q
        counts[d % self.q] = 1
        return CycElement(self, tuple(counts))

    def element(self, counts: Iterable[int]) -> "CycElement":
        tup = tuple(int(v) for v in counts)
        if len(tup) != self.q:
            raise ValueError(f"expected {self.q} multiplicities, got {len(tup)}")
        return CycElement(self, tup)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycContext):
            return self.q == other.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("CycContext", self.q))

    def __repr__(self) -> str:
        return f"CycContext(q={self.q})"


@lru_cache(maxsize=None)
def get_context(q: int) -> CycContext:
    """Shared per-q context; contexts are immutable and safe to cache."""
    return CycContext(q)


class CycElement:
    """An exact element of Z[zeta_q]: an integer combination of roots of unity.

    Instances are immutable.  Arithmetic returns new elements; none of the
    operations normalise the multiplicity vector, only :meth:`is_zero` and
    :meth:`canonical` consult the cyclotomic reduction.
    """

    __slots__ = ("ctx", "counts")

    def __init__(self, ctx: CycContext, counts: tuple[int, ...]):
        self.ctx = ctx
        self.counts = counts

    def _coerce(self, other: object) -> "CycElement | None":
        if isinstance(other, CycElement):
            if other.ctx.q != self.ctx.q:
                raise ValueError(
                    f"context mismatch: q={self.ctx.q} vs q={other.ctx.q}"
                )
            return other
        if isinstance(other, int):
            return self.ctx.integer(other)
        return None

    def __add__(self, other: object) -> "CycElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElement(self.ctx, tuple(a + b for a, b in zip(self.counts, o.counts)))

    __radd__ = __add__

    def __sub__(self, other: object) -> "CycElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElement(self.ctx, tuple(a - b for a, b in zip(self.counts, o.counts)))

    def __rsub__(self, other: object) -> "CycElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "CycElement":
        return CycElement(self.ctx, tuple(-a for a in self.counts))

    def __mul__(self, other: object) -> "CycElement":
        if isinstance(other, int):
            return CycElement(self.ctx, tuple(a * other for a in self.counts))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = self.ctx.q
        out = [0] * q
        for i, av in enumerate(self.counts):
            if av:
                for j, bv in enumerate(o.counts):
                    if bv:
                        k = i + j
                        if k >= q:
                            k -= q
                        out[k] += av * bv
        return CycElement(self.ctx, tuple(out))

    __rmul__ = __mul__

    def conjugate(self) -> "CycElement":
        """Complex conjugation: the multiplicity of zeta**d moves to zeta**(q-d)."""
        q = self.ctx.q
        counts = self.counts
        return CycElement(self.ctx, tuple(counts[(q - d) % q] for d in range(q)))

    def canonical(self) -> tuple[int, ...]:
        """Remainder of the exponent polynomial modulo the cyclotomic polynomial.

        A canonical form of length phi(q); two elements are equal as complex
        numbers iff their canonical forms coincide.
        """
        rows = self.ctx._rows
        out = [0] * self.ctx.degree
        for d, mult in enumerate(self.counts):
            if mult:
                row = rows[d]
                for i, rv in enumerate(row):
                    if rv:
                        out[i] += mult * rv
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycElement):
            if other.ctx.q != self.ctx.q:
                return False
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.q, self.canonical()))

    def __repr__(self) -> str:
        terms = [
            f"{mult}*z^{d}" for d, mult in enumerate(self.counts) if mult
        ]
        body = " + ".join(terms) if terms else "0"
        return f"CycElement(q={self.ctx.q}, {body})"
