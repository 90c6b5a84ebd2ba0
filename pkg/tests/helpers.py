"""Independent oracles for the test suite.

Everything in this file recomputes expected values from first principles
(complex floating point, brute-force subset sweeps) without calling into the
package internals it is checking, so agreement is meaningful.
"""

import cmath
import random
from functools import lru_cache
from itertools import product


@lru_cache(maxsize=None)
def root_table(q: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * d / q) for d in range(q))


def cyc_to_complex(element) -> complex:
    """Numeric value of a cyclotomic integer, from its raw counts only."""
    tab = root_table(element.ctx.q)
    return sum(c * t for c, t in zip(element.counts, tab))


def float_autocorrelation(q: int, m: int, entries, tau) -> complex:
    """Aperiodic autocorrelation at shift tau, summed in complex floats.

    Cells are walked directly: x contributes iff every coordinate of x + tau
    stays in {0, 1}.  No index tricks shared with the package.
    """
    tab = root_table(q)
    acc = 0j
    for x in range(1 << m):
        y = 0
        ok = True
        for k in range(m):
            yk = (x >> k & 1) + tau[k]
            if yk < 0 or yk > 1:
                ok = False
                break
            y |= yk << k
        if ok:
            acc += tab[(entries[y] - entries[x]) % q]
    return acc


def float_is_gap(q: int, m: int, e1, e2, tol: float = 1e-9) -> bool:
    for tau in product((-1, 0, 1), repeat=m):
        if not any(tau):
            continue
        v = float_autocorrelation(q, m, e1, tau) + float_autocorrelation(q, m, e2, tau)
        if abs(v) > tol:
            return False
    return True


def digits(q: int, m: int, ident: int) -> tuple[int, ...]:
    out = []
    for _ in range(1 << m):
        ident, r = divmod(ident, q)
        out.append(r)
    return tuple(out)


def quadratic_all_gaps(q: int, m: int) -> list[tuple[int, int]]:
    """All unordered complementary id pairs by the O(N^2) definition-level sweep."""
    n = q ** (1 << m)
    shifts = [tau for tau in product((-1, 0, 1), repeat=m) if any(tau)]
    spectra = []
    for ident in range(n):
        e = digits(q, m, ident)
        spectra.append([float_autocorrelation(q, m, e, tau) for tau in shifts])
    pairs = []
    for i in range(n):
        si = spectra[i]
        for j in range(i, n):
            sj = spectra[j]
            if all(abs(a + b) < 1e-9 for a, b in zip(si, sj)):
                pairs.append((i, j))
    return pairs


def _spread(vars_):
    masks = [0]
    for v in vars_:
        bit = 1 << (v - 1)
        masks += [s | bit for s in masks]
    return masks


def brute_finest_partition(q: int, m: int, entries) -> tuple[tuple[int, ...], ...]:
    """Finest additive variable partition by trying every bipartition.

    A block splits as (S, T) when f restricted to the block's subcube equals
    f(x_S, 0) + f(0, x_T) - f(0) everywhere; recursion on any valid split
    reaches the finest partition because interactions never cross a valid
    split.
    """
    base = entries[0]

    def separable(side_mask: int, other_mask: int, cells) -> bool:
        return all(
            entries[t] % q
            == (entries[t & side_mask] + entries[t & other_mask] - base) % q
            for t in cells
        )

    def split(block: tuple[int, ...]):
        if len(block) <= 1:
            return [block] if block else []
        cells = _spread(block)
        first, rest = block[0], block[1:]
        for bits in range(1 << len(rest)):
            side = (first,) + tuple(v for i, v in enumerate(rest) if bits >> i & 1)
            if len(side) == len(block):
                continue
            other = tuple(v for v in block if v not in side)
            smask = sum(1 << (v - 1) for v in side)
            omask = sum(1 << (v - 1) for v in other)
            if separable(smask, omask, cells):
                return split(side) + split(other)
        return [block]

    return tuple(sorted(split(tuple(range(1, m + 1)))))


def dict_star(poly: dict) -> dict:
    """Degree-reversal for small polynomials of arbitrary per-variable degree.

    Keys are degree tuples; the image of a monomial is its complement within
    the per-variable maximum degrees.  Mirrors the defining substitution
    z_k -> 1/z_k followed by multiplication with the full-degree monomial.
    """
    if not poly:
        return {}
    nvars = len(next(iter(poly)))
    top = tuple(max(k[i] for k in poly) for i in range(nvars))
    return {tuple(t - d for t, d in zip(top, key)): c for key, c in poly.items()}


def random_entries(rng: random.Random, q: int, m: int) -> tuple[int, ...]:
    return tuple(rng.randrange(q) for _ in range(1 << m))


def random_params_tuple(rng: random.Random, q: int, m: int):
    pi = list(range(1, m + 1))
    rng.shuffle(pi)
    return (
        q,
        m,
        tuple(pi),
        tuple(rng.randrange(q) for _ in range(m)),
        rng.randrange(q),
        rng.randrange(q),
    )
