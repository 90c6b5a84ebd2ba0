"""Constructive decomposition of complementary array pairs into standard form.

The algorithm peels off the highest variable x_m, producing restriction pairs
(f0, g0) and (f1, g1) one dimension down.  For a complementary pair, f0 and
g0 share a maximal common additive part c on a variable subset z2 (the
combinatorial image of a polynomial gcd of their generating functions), and
the residual halves f1, g1 are then forced pointwise:

    f0 = a(x_z1) + c(x_z2)          f1 = -b*(x_z1) + d(x_z2)
    g0 = b(x_z1) + c(x_z2)          g1 = -a*(x_z1) + q/2 + d(x_z2)

where * is coordinate complementation (:meth:`QaryArray.reverse`).  The two
recovered pairs (a, b) and (c, d) are complementary pairs of strictly smaller
dimension and are decomposed recursively; their standard parameters are then
recombined into parameters for (f, g), splicing the two quadratic paths
together through x_m.

Every arrow in the diagram above is verified pointwise during the descent,
and the recursion bottoms out at dimension 0 where every pair of constants
is vacuously complementary.  Passing all verifications is not merely
necessary but sufficient for the input to be a complementary pair, so a
completed recursion doubles as an exact complementarity certificate and a
failed pointwise check is reported as not-a-pair.  The final parameters are
re-expanded and compared with the input bit for bit before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .boolfun import _components_from_dense_anf, _mobius_list, to_anf
from .errors import NotAGapError, OddModulusError, VerificationError
from .genfun import disjoint_product, embed, from_array, star
from .qarray import QaryArray, _spread_masks, is_gap
from .standard import StandardParams, construct_standard


def split_last(f: QaryArray) -> tuple[QaryArray, QaryArray]:
    """Restrictions of f to x_m = 0 and x_m = 1, as dimension m-1 arrays."""
    if f.m < 1:
        raise ValueError("cannot split a dimension-0 array")
    half = 1 << (f.m - 1)
    return (
        QaryArray(f.q, f.m - 1, f.entries[:half]),
        QaryArray(f.q, f.m - 1, f.entries[half:]),
    )


def join_last(f0: QaryArray, f1: QaryArray) -> QaryArray:
    """Inverse of :func:`split_last`."""
    if f0.q != f1.q or f0.m != f1.m:
        raise ValueError("halves must share shape and modulus")
    return QaryArray(f0.q, f0.m + 1, f0.entries + f1.entries)


@dataclass(frozen=True)
class GcdSplit:
    """Maximal common additive part of a restriction pair.

    f0 = a + c and g0 = b + c with a, b on z1_vars and c on z2_vars, under the
    normalisation a(0) = f0(0), b(0) = g0(0), c(0) = 0.  No further block can
    be moved from (a, b) into c.
    """

    z1_vars: tuple[int, ...]
    z2_vars: tuple[int, ...]
    a: QaryArray
    b: QaryArray
    c: QaryArray
    f0_const: int
    g0_const: int


def _two_block_fill(
    q: int,
    m: int,
    z1: tuple[int, ...],
    vals1: tuple[int, ...],
    z2: tuple[int, ...],
    vals2: tuple[int, ...],
    const: int = 0,
) -> tuple[int, ...]:
    """Entries of x -> vals1[x|z1] + vals2[x|z2] + const over m variables."""
    out = [0] * (1 << m)
    sp2 = _spread_masks(z2)
    for i1, m1 in enumerate(_spread_masks(z1)):
        base = vals1[i1] + const
        for i2, m2 in enumerate(sp2):
            out[m1 | m2] = (base + vals2[i2]) % q
    return tuple(out)


def _two_block_matches(
    target: tuple[int, ...],
    q: int,
    z1: tuple[int, ...],
    vals1: tuple[int, ...],
    z2: tuple[int, ...],
    vals2: tuple[int, ...],
    const: int = 0,
) -> bool:
    sp2 = _spread_masks(z2)
    for i1, m1 in enumerate(_spread_masks(z1)):
        base = vals1[i1] + const
        for i2, m2 in enumerate(sp2):
            if target[m1 | m2] != (base + vals2[i2]) % q:
                return False
    return True


def _restrict_entries(entries: tuple[int, ...], vars_: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(entries[s] for s in _spread_masks(vars_))


def gcd_normalized(f0: QaryArray, g0: QaryArray) -> GcdSplit:
    """Split off the maximal common additive part of f0 and g0.

    A candidate block is a union of interaction components of both arrays on
    which their origin-pinned restrictions agree up to an additive constant;
    z2 is the union of all such blocks (blockwise greediness is exact because
    distinct blocks never interact).  The returned split is verified to
    reproduce both inputs pointwise.
    """
    if f0.q != g0.q or f0.m != g0.m:
        raise ValueError("shape or modulus mismatch")
    q, m = f0.q, f0.m
    lam_f = _mobius_list(list(f0.entries), m, q)
    lam_g = _mobius_list(list(g0.entries), m, q)
    blocks_f = _components_from_dense_anf(lam_f, m)
    blocks_g = _components_from_dense_anf(lam_g, m)
    parent = list(range(m + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blocks in (blocks_f, blocks_g):
        for block in blocks:
            root = find(block[0])
            for v in block[1:]:
                parent[find(v)] = root
    joined: dict[int, list[int]] = {}
    for v in range(1, m + 1):
        joined.setdefault(find(v), []).append(v)

    fe, ge = f0.entries, g0.entries
    base_diff = (ge[0] - fe[0]) % q
    z2: list[int] = []
    for block in joined.values():
        masks = _spread_masks(tuple(block))
        if all((ge[s] - fe[s]) % q == base_diff for s in masks):
            z2.extend(block)
    z2_vars = tuple(sorted(z2))
    z1_vars = tuple(v for v in range(1, m + 1) if v not in z2)

    a = QaryArray(q, len(z1_vars), _restrict_entries(fe, z1_vars))
    b = QaryArray(q, len(z1_vars), _restrict_entries(ge, z1_vars))
    c_raw = _restrict_entries(fe, z2_vars)
    f0c = fe[0]
    c = QaryArray(q, len(z2_vars), tuple((v - f0c) % q for v in c_raw))

    if not _two_block_matches(fe, q, z1_vars, a.entries, z2_vars, c.entries):
        raise VerificationError("common-part split failed to rebuild f0")
    if not _two_block_matches(ge, q, z1_vars, b.entries, z2_vars, c.entries):
        raise VerificationError("common-part split failed to rebuild g0")
    return GcdSplit(z1_vars, z2_vars, a, b, c, f0c, ge[0])


def extract_d(
    f1: QaryArray, g1: QaryArray, split: GcdSplit
) -> tuple[QaryArray, bool]:
    """Recover the second factor-pair component d from the x_m = 1 halves.

    The candidate is d(x_z2) = f1(0_z1, x_z2) + b*(0_z1); the returned flag
    reports whether the forced forms f1 = -b* + d and g1 = -a* + q/2 + d hold
    at every point.  A false flag means the original pair cannot have been
    complementary.
    """
    q = f1.q
    half = q // 2
    z1, z2 = split.z1_vars, split.z2_vars
    b_star = split.b.reverse()
    a_star = split.a.reverse()
    bstar0 = b_star.entries[0]
    d = QaryArray(
        q, len(z2), tuple((v + bstar0) % q for v in _restrict_entries(f1.entries, z2))
    )
    neg_b_star = tuple((-v) % q for v in b_star.entries)
    g1_block = tuple((half - v) % q for v in a_star.entries)
    verified = _two_block_matches(
        f1.entries, q, z1, neg_b_star, z2, d.entries
    ) and _two_block_matches(g1.entries, q, z1, g1_block, z2, d.entries)
    return d, verified


@dataclass(frozen=True)
class DecompositionCertificate:
    """Recursion tree recording one full decomposition.

    A node of dimension 0 stores only its parameters.  An inner node stores
    the split variable (always the highest), the common-part split, the
    recovered d with the offsets e, e' of its sub-pairs, the two
    sub-certificates, and the recombined parameters for its own pair.
    Replaying the tree bottom-up rebuilds the pair exactly.
    """

    q: int
    m: int
    params: StandardParams
    split_var: int | None = None
    split: GcdSplit | None = None
    d: QaryArray | None = None
    e: int | None = None
    e_prime: int | None = None
    left: "DecompositionCertificate | None" = None
    right: "DecompositionCertificate | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.m == 0

    def to_json_dict(self) -> dict:
        out: dict = {"q": self.q, "m": self.m, "params": self.params.to_json_dict()}
        if not self.is_leaf:
            out.update(
                {
                    "split_var": self.split_var,
                    "z1_vars": list(self.split.z1_vars),
                    "z2_vars": list(self.split.z2_vars),
                    "a": self.split.a.to_json_dict(),
                    "b": self.split.b.to_json_dict(),
                    "c": self.split.c.to_json_dict(),
                    "f0_const": self.split.f0_const,
                    "g0_const": self.split.g0_const,
                    "d": self.d.to_json_dict(),
                    "e": self.e,
                    "e_prime": self.e_prime,
                    "left": self.left.to_json_dict(),
                    "right": self.right.to_json_dict(),
                }
            )
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "DecompositionCertificate":
        try:
            q = int(data["q"])
            m = int(data["m"])
            params = StandardParams.from_json_dict(data["params"])
            if m == 0:
                return cls(q, 0, params)
            split = GcdSplit(
                tuple(int(v) for v in data["z1_vars"]),
                tuple(int(v) for v in data["z2_vars"]),
                QaryArray.from_json_dict(data["a"]),
                QaryArray.from_json_dict(data["b"]),
                QaryArray.from_json_dict(data["c"]),
                int(data["f0_const"]),
                int(data["g0_const"]),
            )
            return cls(
                q,
                m,
                params,
                int(data["split_var"]),
                split,
                QaryArray.from_json_dict(data["d"]),
                int(data["e"]),
                int(data["e_prime"]),
                cls.from_json_dict(data["left"]),
                cls.from_json_dict(data["right"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate object: {exc}") from exc


def _recombine(
    q: int,
    m: int,
    z1: tuple[int, ...],
    z2: tuple[int, ...],
    left: StandardParams,
    right: StandardParams,
) -> StandardParams:
    """Splice sub-pair parameters through the split variable x_m.

    The combined path runs along the left path, through x_m, then along the
    right path; the linear coefficient attached to x_m absorbs the constants
    produced by complementing the left pair.
    """
    half = q // 2
    m1 = len(z1)
    path = (
        [z1[j - 1] for j in left.pi] + [m] + [z2[j - 1] for j in right.pi]
    )
    c_vars = [0] * m
    for local, gvar in enumerate(z1, start=1):
        c_vars[gvar - 1] = left.c[local - 1]
    for local, gvar in enumerate(z2, start=1):
        c_vars[gvar - 1] = right.c[local - 1]
    c_vars[m - 1] = (
        half * m1 - sum(left.c) - 2 * left.c0 + right.c_prime - left.c_prime
    ) % q
    return StandardParams(
        q,
        m,
        tuple(path),
        tuple(c_vars),
        (left.c0 + right.c0) % q,
        left.c_prime,
    )


def _decompose_rec(
    f: QaryArray, g: QaryArray
) -> tuple[StandardParams, DecompositionCertificate]:
    q, m = f.q, f.m
    if m == 0:
        params = StandardParams(
            q, 0, (), (), f.entries[0], (g.entries[0] - f.entries[0]) % q
        )
        return params, DecompositionCertificate(q, 0, params)
    f0, f1 = split_last(f)
    g0, g1 = split_last(g)
    split = gcd_normalized(f0, g0)
    d, ok = extract_d(f1, g1, split)
    if not ok:
        raise NotAGapError(
            f"not a complementary pair: residual halves violate the forced form "
            f"at dimension {m}"
        )
    left_params, left_cert = _decompose_rec(split.a, split.b)
    right_params, right_cert = _decompose_rec(split.c, d)
    params = _recombine(q, m, split.z1_vars, split.z2_vars, left_params, right_params)
    cert = DecompositionCertificate(
        q,
        m,
        params,
        m,
        split,
        d,
        left_params.c_prime,
        right_params.c_prime,
        left_cert,
        right_cert,
    )
    return params, cert


def decompose(
    f: QaryArray, g: QaryArray
) -> tuple[StandardParams, DecompositionCertificate]:
    """Decompose a complementary pair into standard parameters, with certificate.

    Complementarity of the input is established by the decomposition itself:
    the pointwise residual verifications at every recursion node, together
    with the vacuous dimension-0 base case, hold if and only if (f, g) is a
    complementary pair, so no separate correlation sweep is run first.  A
    violated check raises :class:`NotAGapError`.  On success the returned
    parameters regenerate (f, g) exactly (asserted before returning) and the
    certificate records every intermediate object of the recursion.
    """
    if f.q != g.q or f.m != g.m:
        raise ValueError("shape or modulus mismatch")
    if f.q % 2:
        raise OddModulusError(
            f"decomposition is defined for even q only, got q={f.q}"
        )
    params, cert = _decompose_rec(f, g)
    ff, gg = construct_standard(params)
    if ff.entries != f.entries or gg.entries != g.entries:
        raise VerificationError(
            "recombined parameters do not regenerate the input pair"
        )  # pragma: no cover - internal guard
    return params, cert


def replay(cert: DecompositionCertificate) -> tuple[QaryArray, QaryArray]:
    """Rebuild the pair a certificate describes, bottom-up, from leaves only.

    Uses nothing but array operations on the children's replayed pairs; the
    stored intermediate arrays are not consulted (they are cross-checked in
    :func:`verify_certificate`).
    """
    q, m = cert.q, cert.m
    if cert.is_leaf:
        return construct_standard(cert.params)
    a, b = replay(cert.left)
    c, d = replay(cert.right)
    half = q // 2
    z1, z2 = cert.split.z1_vars, cert.split.z2_vars
    neg_b_star = tuple((-v) % q for v in b.reverse().entries)
    g1_block = tuple((half - v) % q for v in a.reverse().entries)
    f0 = _two_block_fill(q, m - 1, z1, a.entries, z2, c.entries)
    g0 = _two_block_fill(q, m - 1, z1, b.entries, z2, c.entries)
    f1 = _two_block_fill(q, m - 1, z1, neg_b_star, z2, d.entries)
    g1 = _two_block_fill(q, m - 1, z1, g1_block, z2, d.entries)
    return (
        QaryArray(q, m, f0 + f1),
        QaryArray(q, m, g0 + g1),
    )


def verify_certificate(
    f: QaryArray,
    g: QaryArray,
    cert: DecompositionCertificate,
    max_corr_dim: int = 3,
) -> None:
    """Independently re-check a certificate against the pair it claims to prove.

    Replays the tree bottom-up, confirms every stored intermediate array and
    offset, re-derives each node's parameters from its children, and compares
    the root against (f, g) and against the expansion of the root parameters.
    On nodes of dimension at most ``max_corr_dim`` the complementarity of the
    node pair and of both sub-pairs is additionally rechecked by literal
    correlation sums, and the degree-reversal of the recovered factor product
    is compared against the product of the reversed factors.  Raises
    :class:`VerificationError` on any mismatch.
    """

    def fail(msg: str) -> None:
        raise VerificationError(f"certificate verification failed: {msg}")

    def walk(node: DecompositionCertificate) -> tuple[QaryArray, QaryArray]:
        q, m = node.q, node.m
        if node.is_leaf:
            return construct_standard(node.params)
        if node.split_var != m:
            fail(f"split variable {node.split_var} is not the highest ({m})")
        a, b = walk(node.left)
        c, d = walk(node.right)
        split = node.split
        if sorted(split.z1_vars + split.z2_vars) != list(range(1, m)):
            fail("split variable sets do not partition the remaining variables")
        if (a, b) != (split.a, split.b) or c != split.c or d != node.d:
            fail("stored intermediate arrays disagree with sub-certificates")
        if split.f0_const != split.a.entries[0] or split.g0_const != split.b.entries[0]:
            fail("stored normalisation constants are inconsistent")
        if split.c.entries[0] != 0:
            fail("common part is not origin-normalised")
        if node.e != node.left.params.c_prime or node.e_prime != node.right.params.c_prime:
            fail("stored offsets disagree with sub-parameters")
        if node.params != _recombine(
            q, m, split.z1_vars, split.z2_vars, node.left.params, node.right.params
        ):
            fail("node parameters are not the recombination of the children")
        half = q // 2
        z1, z2 = split.z1_vars, split.z2_vars
        neg_b_star = tuple((-v) % q for v in b.reverse().entries)
        g1_block = tuple((half - v) % q for v in a.reverse().entries)
        f0 = _two_block_fill(q, m - 1, z1, a.entries, z2, c.entries)
        g0 = _two_block_fill(q, m - 1, z1, b.entries, z2, c.entries)
        f1 = _two_block_fill(q, m - 1, z1, neg_b_star, z2, d.entries)
        g1 = _two_block_fill(q, m - 1, z1, g1_block, z2, d.entries)
        ff = QaryArray(q, m, f0 + f1)
        gg = QaryArray(q, m, g0 + g1)
        if m <= max_corr_dim:
            if not is_gap(ff, gg):
                fail(f"node pair is not complementary at dimension {m}")
            if not is_gap(a, b) or not is_gap(c, d):
                fail(f"sub-pairs are not complementary at dimension {m}")
            fa = embed(from_array(a), z1, m - 1)
            fc = embed(from_array(c), z2, m - 1)
            prod = disjoint_product(fa, fc)
            if prod != from_array(QaryArray(q, m - 1, f0)):
                fail("factor product does not rebuild the restriction")
            if star(prod) != disjoint_product(star(fa), star(fc)):
                fail("degree reversal does not distribute over the factor product")
        return ff, gg

    top = walk(cert)
    if top != (f, g):
        fail("replayed pair differs from the claimed pair")
    ff, gg = construct_standard(cert.params)
    if (ff, gg) != (f, g):
        fail("root parameters do not regenerate the claimed pair")


def recognize_standard(f: QaryArray, g: QaryArray) -> StandardParams | None:
    """Syntactic test for standard form, independent of the decomposition.

    Reads the normal form of f: the degree must be at most 2, every quadratic
    coefficient must equal q/2, and the quadratic monomials must trace a
    Hamiltonian path over all variables.  g - f must equal (q/2) x_e + c' for
    a path endpoint e, which fixes the orientation.  If both orientations
    qualify the lexicographically smaller one is returned.  Returns None for
    pairs not of this shape.
    """
    if f.q != g.q or f.m != g.m:
        raise ValueError("shape or modulus mismatch")
    q, m = f.q, f.m
    if q % 2:
        raise OddModulusError(f"standard form requires even q, got {q}")
    half = q // 2
    anf = to_anf(f)
    edges = []
    linear = [0] * m
    const = 0
    for subset, coeff in anf.coeffs.items():
        k = len(subset)
        if k > 2:
            return None
        if k == 2:
            if coeff != half:
                return None
            edges.append(tuple(sorted(subset)))
        elif k == 1:
            (v,) = subset
            linear[v - 1] = coeff
        else:
            const = coeff
    delta = tuple((ge - fe) % q for fe, ge in zip(f.entries, g.entries))
    if m == 0:
        return StandardParams(q, 0, (), (), const, delta[0])

    if m == 1:
        orientations = [(1,)]
    else:
        if len(edges) != m - 1:
            return None
        adj: dict[int, list[int]] = {v: [] for v in range(1, m + 1)}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        if any(len(nb) > 2 for nb in adj.values()):
            return None
        endpoints = sorted(v for v, nb in adj.items() if len(nb) == 1)
        if len(endpoints) != 2:
            return None
        path = [endpoints[0]]
        prev = None
        while True:
            nxt = [w for w in adj[path[-1]] if w != prev]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        if len(path) != m:
            return None
        orientations = [tuple(path), tuple(reversed(path))]

    valid = []
    cp = delta[0]
    for pi in orientations:
        bit = 1 << (pi[0] - 1)
        if all(
            dv == (cp + (half if t & bit else 0)) % q for t, dv in enumerate(delta)
        ):
            valid.append(pi)
    if not valid:
        return None
    return StandardParams(q, m, min(valid), tuple(linear), const, cp)
