"""Multilinear generating functions of q-ary arrays over Z[zeta_q].

The generating function of an array f is F(z) = sum_x zeta**f(x) * z**x, a
polynomial of degree at most one in each of the m variables.  Coefficients
are exact cyclotomic integers indexed by variable subsets (stored as bit
masks, same cell order as :class:`golaypairs.qarray.QaryArray`).

A GenFun also carries an explicit support: the set of variables it actually
uses.  Factors of array generating functions live on subsets of the global
variable space, and products of factors with disjoint supports are the only
polynomial products this module provides.  There is deliberately no general
multivariate multiplication or gcd here; structural factor recovery is done
combinatorially in :mod:`golaypairs.decompose`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclotomic import CycElement, get_context
from .qarray import QaryArray, _overlap_pairs, all_shifts


@dataclass(frozen=True)
class GenFun:
    """Multilinear polynomial with cyclotomic integer coefficients."""

    q: int
    m: int
    support: frozenset
    coeffs: tuple[CycElement, ...]

    def __post_init__(self):
        support = frozenset(int(v) for v in self.support)
        if any(v < 1 or v > self.m for v in support):
            raise ValueError(f"support {set(support)} out of range for m={self.m}")
        coeffs = tuple(self.coeffs)
        if len(coeffs) != 1 << self.m:
            raise ValueError(f"expected {1 << self.m} coefficients")
        if any(c.ctx.q != self.q for c in coeffs):
            raise ValueError("coefficient context mismatch")
        mask = 0
        for v in support:
            mask |= 1 << (v - 1)
        for t, c in enumerate(coeffs):
            if t & ~mask and not c.is_zero():
                raise ValueError(
                    f"nonzero coefficient at monomial {t:b} outside support"
                )
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def support_mask(self) -> int:
        mask = 0
        for v in self.support:
            mask |= 1 << (v - 1)
        return mask


def from_array(f: QaryArray) -> GenFun:
    """Generating function of an array; every coefficient is a root of unity."""
    ctx = get_context(f.q)
    return GenFun(
        f.q,
        f.m,
        frozenset(range(1, f.m + 1)),
        tuple(ctx.root(v) for v in f.entries),
    )


def embed(fun: GenFun, vars_: Sequence[int], m: int) -> GenFun:
    """Re-index a GenFun onto the listed global variables inside m dimensions.

    Local variable j of ``fun`` becomes global variable ``vars_[j-1]``.
    """
    vt = tuple(int(v) for v in vars_)
    if len(vt) != fun.m or len(set(vt)) != len(vt):
        raise ValueError("variable list must match the local dimension")
    if any(v < 1 or v > m for v in vt):
        raise ValueError(f"target variables {vt} out of range for m={m}")
    ctx = get_context(fun.q)
    zero = ctx.zero()
    out = [zero] * (1 << m)
    for t, c in enumerate(fun.coeffs):
        gmask = 0
        for j in range(fun.m):
            if t >> j & 1:
                gmask |= 1 << (vt[j] - 1)
        out[gmask] = c
    return GenFun(fun.q, m, frozenset(vt[v - 1] for v in fun.support), tuple(out))


def star(fun: GenFun, vars_: Sequence[int] | None = None) -> GenFun:
    """Degree-reversal: multiply by the top monomial and invert every variable.

    For a polynomial of degree d_k in variable z_k this maps the coefficient
    of a monomial to the coefficient of its complement within the degree
    mask.  For array generating functions (full degree one on the support)
    this is coefficient reversal.  When the intended degree mask differs from
    the stored support it must be passed explicitly via ``vars_``.
    """
    vt = tuple(sorted(fun.support)) if vars_ is None else tuple(int(v) for v in vars_)
    mask = 0
    for v in vt:
        if v < 1 or v > fun.m:
            raise ValueError(f"variable {v} out of range")
        mask |= 1 << (v - 1)
    if fun.support_mask & ~mask:
        raise ValueError("mask does not cover the support; degrees ambiguous")
    ctx = get_context(fun.q)
    zero = ctx.zero()
    out = [zero] * (1 << fun.m)
    for t, c in enumerate(fun.coeffs):
        out[mask ^ t] = c
    return GenFun(fun.q, fun.m, frozenset(vt), tuple(out))


def disjoint_product(a: GenFun, b: GenFun) -> GenFun:
    """Product of two generating functions on disjoint variable sets."""
    if a.q != b.q or a.m != b.m:
        raise ValueError("shape or modulus mismatch")
    if a.support & b.support:
        raise ValueError(
            f"supports overlap on {sorted(a.support & b.support)}"
        )
    ctx = get_context(a.q)
    zero = ctx.zero()
    out = [zero] * (1 << a.m)
    amask = a.support_mask
    bmask = b.support_mask
    sa = _submasks(amask)
    sb = _submasks(bmask)
    for s in sa:
        ca = a.coeffs[s]
        if ca.is_zero():
            continue
        for t in sb:
            cb = b.coeffs[t]
            if not cb.is_zero():
                out[s | t] = ca * cb
    return GenFun(a.q, a.m, a.support | b.support, tuple(out))


def _submasks(mask: int) -> list[int]:
    subs = [0]
    rest = mask
    while rest:
        bit = rest & -rest
        subs += [s | bit for s in subs]
        rest ^= bit
    return subs


def correlation_via_coefficients(fun: GenFun) -> dict[tuple[int, ...], CycElement]:
    """Autocorrelation spectrum assembled from coefficient products.

    For each shift tau, the value is sum over overlapping cells x of
    coeff(x + tau) * conjugate(coeff(x)).  On array generating functions this
    reproduces the direct exponent-difference computation exactly, through an
    independent arithmetic route (generic ring products instead of exponent
    histograms).
    """
    ctx = get_context(fun.q)
    spectrum: dict[tuple[int, ...], CycElement] = {}
    coeffs = fun.coeffs
    for tau in all_shifts(fun.m):
        acc = ctx.zero()
        for i, j in _overlap_pairs(fun.m, tau):
            acc = acc + coeffs[i] * coeffs[j].conjugate()
        spectrum[tau] = acc
    return spectrum
