"""Constructive decomposition, certificates, and standard-form recognition."""

import dataclasses
import random

import pytest

from golaypairs import (
    NotAGapError,
    OddModulusError,
    QaryArray,
    StandardParams,
    VerificationError,
    construct_standard,
    decompose,
    extract_d,
    gcd_normalized,
    is_gap,
    join_last,
    recognize_standard,
    replay,
    split_last,
    verify_certificate,
)

from helpers import random_entries, random_params_tuple


def rand_params(rng, q, m):
    return StandardParams(*random_params_tuple(rng, q, m))


def test_split_last_worked_values():
    f = QaryArray(2, 2, (0, 0, 0, 1))  # x1*x2
    f0, f1 = split_last(f)
    assert f0.entries == (0, 0)
    assert f1.entries == (0, 1)
    c = QaryArray(5, 1, (3, 3))
    assert split_last(c) == (QaryArray(5, 0, (3,)), QaryArray(5, 0, (3,)))
    f = QaryArray.from_function(2, 3, lambda x: x[0] + x[1] + x[2])
    f0, f1 = split_last(f)
    assert f0 == QaryArray.from_function(2, 2, lambda x: x[0] + x[1])
    assert f1 == QaryArray.from_function(2, 2, lambda x: x[0] + x[1] + 1)


def test_split_last_rejects_dimension_zero():
    with pytest.raises(ValueError):
        split_last(QaryArray(2, 0, (1,)))


def test_join_last_inverts_split():
    rng = random.Random(127)
    for q, m in ((2, 1), (4, 3), (6, 5)):
        f = QaryArray(q, m, random_entries(rng, q, m))
        assert join_last(*split_last(f)) == f
    with pytest.raises(ValueError):
        join_last(QaryArray(2, 1, (0, 0)), QaryArray(2, 2, (0, 0, 0, 1)))
    with pytest.raises(ValueError):
        join_last(QaryArray(2, 1, (0, 0)), QaryArray(4, 1, (0, 0)))


def test_gcd_split_mixed_blocks():
    f0 = QaryArray.from_function(4, 2, lambda x: x[0] + x[1])
    g0 = QaryArray.from_function(4, 2, lambda x: 3 * x[0] + x[1])
    s = gcd_normalized(f0, g0)
    assert s.z1_vars == (1,)
    assert s.z2_vars == (2,)
    assert s.a.entries == (0, 1)
    assert s.b.entries == (0, 3)
    assert s.c.entries == (0, 1)
    assert s.f0_const == 0 and s.g0_const == 0


def test_gcd_split_constant_difference_moves_everything():
    rng = random.Random(131)
    f0 = QaryArray(6, 3, random_entries(rng, 6, 3))
    g0 = f0 + 4
    s = gcd_normalized(f0, g0)
    assert s.z2_vars == (1, 2, 3)
    assert s.z1_vars == ()
    assert s.a.entries == (f0.entries[0],)
    assert s.b.entries == (g0.entries[0],)
    assert s.c == f0 + (-f0.entries[0])


def test_gcd_split_nothing_in_common():
    f0 = QaryArray(2, 1, (0, 0))
    g0 = QaryArray(2, 1, (0, 1))
    s = gcd_normalized(f0, g0)
    assert s.z2_vars == ()
    assert s.z1_vars == (1,)
    assert s.a == f0
    assert s.b == g0
    assert s.c.entries == (0,)


def test_gcd_split_is_maximal():
    rng = random.Random(137)
    for _ in range(60):
        q = rng.choice((2, 4, 6))
        m = rng.randrange(1, 6)
        f, g = construct_standard(rand_params(rng, q, m))
        f0, _ = split_last(f)
        g0, _ = split_last(g)
        s = gcd_normalized(f0, g0)
        # re-splitting the residual pair must find nothing further in common
        s2 = gcd_normalized(s.a, s.b)
        assert s2.z2_vars == ()


def test_gcd_split_normalization_invariants():
    rng = random.Random(139)
    for _ in range(60):
        q = rng.choice((2, 3, 4, 6))
        m = rng.randrange(1, 5)
        f0 = QaryArray(q, m, random_entries(rng, q, m))
        g0 = QaryArray(q, m, random_entries(rng, q, m))
        s = gcd_normalized(f0, g0)
        assert tuple(sorted(s.z1_vars + s.z2_vars)) == tuple(range(1, m + 1))
        assert s.a.entries[0] == f0.entries[0]
        assert s.b.entries[0] == g0.entries[0]
        assert s.c.entries[0] == 0


def test_extract_d_standard_pair_trace():
    f = QaryArray(2, 2, (0, 0, 0, 1))
    g = QaryArray(2, 2, (0, 1, 0, 0))
    f0, f1 = split_last(f)
    g0, g1 = split_last(g)
    s = gcd_normalized(f0, g0)
    d, ok = extract_d(f1, g1, s)
    assert ok
    assert d.m == 0
    assert d.entries == (1,)


def test_extract_d_with_empty_residual_side():
    # choose the path so the split variable sees f0 == g0
    f, g = construct_standard(StandardParams(2, 2, (2, 1), (0, 0), 0, 0))
    f0, f1 = split_last(f)
    g0, g1 = split_last(g)
    s = gcd_normalized(f0, g0)
    assert s.z1_vars == ()
    d, ok = extract_d(f1, g1, s)
    assert ok
    assert d == f1 + s.b.reverse().entries[0]


def test_extract_d_flags_non_pairs():
    z = QaryArray(2, 1, (0, 0))
    f0, f1 = split_last(z)
    g0, g1 = split_last(z)
    s = gcd_normalized(f0, g0)
    _, ok = extract_d(f1, g1, s)
    assert not ok


def test_decompose_worked_example():
    f = QaryArray(2, 2, (0, 0, 0, 1))
    g = QaryArray(2, 2, (0, 1, 0, 0))
    params, cert = decompose(f, g)
    assert params == StandardParams(2, 2, (1, 2), (0, 0), 0, 0)
    assert cert.split_var == 2
    assert cert.split.z1_vars == (1,)
    assert cert.split.z2_vars == ()
    assert cert.d.entries == (1,)
    assert cert.e == 0 and cert.e_prime == 1
    verify_certificate(f, g, cert)


def test_decompose_dimension_one_base():
    f = QaryArray(2, 1, (0, 1))
    g = QaryArray(2, 1, (0, 0))
    params, cert = decompose(f, g)
    assert params == StandardParams(2, 1, (1,), (1,), 0, 0)
    assert construct_standard(params) == (f, g)
    verify_certificate(f, g, cert)


def test_decompose_dimension_zero():
    for q in (2, 4, 10):
        for c in (0, 1, q - 1):
            for e in (0, q // 2, q - 1):
                f = QaryArray(q, 0, (c,))
                g = QaryArray(q, 0, ((c + e) % q,))
                params, cert = decompose(f, g)
                assert params.c0 == c and params.c_prime == e
                assert params.pi == () and params.c == ()
                assert construct_standard(params) == (f, g)
                verify_certificate(f, g, cert)


def test_decompose_round_trip_random_params():
    rng = random.Random(149)
    for q in (2, 4, 6, 8, 10, 12):
        for m in range(0, 7):
            for _ in range(5):
                p = rand_params(rng, q, m)
                f, g = construct_standard(p)
                p2, cert = decompose(f, g)
                assert construct_standard(p2) == (f, g), (p, p2)
                verify_certificate(f, g, cert)
                assert replay(cert) == (f, g)


def test_decompose_rejects_non_pairs():
    with pytest.raises(NotAGapError):
        decompose(QaryArray(2, 1, (0, 0)), QaryArray(2, 1, (0, 0)))
    rng = random.Random(151)
    rejected = 0
    for _ in range(30):
        q = rng.choice((2, 4, 6))
        m = rng.randrange(1, 5)
        f = QaryArray(q, m, random_entries(rng, q, m))
        # (f, f) is never complementary in positive dimension: at the all-ones
        # shift the correlation is a single root of unity, twice
        assert not is_gap(f, f)
        with pytest.raises(NotAGapError):
            decompose(f, f)
        rejected += 1
    assert rejected == 30


def test_decompose_rejection_matches_direct_check():
    # on a dense random sample, decompose succeeds exactly when is_gap holds
    rng = random.Random(157)
    successes = 0
    for _ in range(300):
        q = rng.choice((2, 4))
        m = rng.randrange(1, 3)
        f = QaryArray(q, m, random_entries(rng, q, m))
        g = QaryArray(q, m, random_entries(rng, q, m))
        direct = is_gap(f, g)
        try:
            params, cert = decompose(f, g)
            via_decompose = True
            assert construct_standard(params) == (f, g)
        except NotAGapError:
            via_decompose = False
        assert direct == via_decompose, (q, m, f.entries, g.entries)
        successes += direct
    assert successes > 0


def test_decompose_rejects_odd_modulus():
    f = QaryArray(3, 0, (1,))
    with pytest.raises(OddModulusError):
        decompose(f, f)


def test_decompose_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        decompose(QaryArray(2, 1, (0, 1)), QaryArray(2, 2, (0, 1, 0, 0)))


def test_certificate_json_round_trip():
    rng = random.Random(163)
    for q, m in ((2, 0), (2, 3), (4, 4), (10, 2)):
        f, g = construct_standard(rand_params(rng, q, m))
        _, cert = decompose(f, g)
        from golaypairs import DecompositionCertificate

        back = DecompositionCertificate.from_json_dict(cert.to_json_dict())
        assert back == cert
        assert replay(back) == (f, g)
        verify_certificate(f, g, back)
    with pytest.raises(ValueError):
        DecompositionCertificate.from_json_dict({"q": 2})


def test_certificate_rejects_tampering():
    rng = random.Random(167)
    f, g = construct_standard(rand_params(rng, 4, 3))
    params, cert = decompose(f, g)

    # wrong claimed pair
    with pytest.raises(VerificationError):
        verify_certificate(g, f, cert)

    # tampered stored residual array
    bad_split = dataclasses.replace(cert.split, a=cert.split.a + 1)
    bad = dataclasses.replace(cert, split=bad_split)
    with pytest.raises(VerificationError):
        verify_certificate(f, g, bad)

    # tampered offset
    bad = dataclasses.replace(cert, e_prime=(cert.e_prime + 1) % 4)
    with pytest.raises(VerificationError):
        verify_certificate(f, g, bad)

    # tampered recombined parameters
    bad_params = dataclasses.replace(params, c0=(params.c0 + 1) % 4)
    bad = dataclasses.replace(cert, params=bad_params)
    with pytest.raises(VerificationError):
        verify_certificate(f, g, bad)

    # tampered leaf
    node = cert
    while not node.left.is_leaf:
        node = node.left
    leaf_params = dataclasses.replace(
        node.left.params, c0=(node.left.params.c0 + 1) % 4
    )
    bad_leaf = dataclasses.replace(node.left, params=leaf_params)
    rebuilt = dataclasses.replace(node, left=bad_leaf)
    # splice the modified subtree back onto the path from the root
    path = []
    cur = cert
    while cur is not node:
        path.append(cur)
        cur = cur.left
    for parent in reversed(path):
        rebuilt = dataclasses.replace(parent, left=rebuilt)
    with pytest.raises(VerificationError):
        verify_certificate(f, g, rebuilt)


def test_certificate_worked_example_structure():
    f = QaryArray(2, 2, (0, 0, 0, 1))
    g = QaryArray(2, 2, (0, 1, 0, 0))
    _, cert = decompose(f, g)
    d = cert.to_json_dict()
    assert d["m"] == 2 and d["split_var"] == 2
    assert d["left"]["m"] == 1
    assert d["right"]["m"] == 0
    assert d["left"]["left"]["m"] == 0
    assert d["params"] == {
        "q": 2, "m": 2, "pi": [1, 2], "c": [0, 0], "c0": 0, "c_prime": 0,
    }


def test_recognize_standard_round_trip():
    rng = random.Random(173)
    for q in (2, 4, 8):
        for m in range(0, 8):
            p = rand_params(rng, q, m)
            f, g = construct_standard(p)
            got = recognize_standard(f, g)
            assert got is not None
            assert construct_standard(got) == (f, g)
            if m >= 2:
                assert got == p  # orientation is unique in dimension >= 2


def test_recognize_rejects_cubic():
    f = QaryArray.from_function(2, 3, lambda x: x[0] * x[1] * x[2])
    g = QaryArray.from_function(2, 3, lambda x: x[0] * x[1] * x[2] + x[0])
    assert recognize_standard(f, g) is None


def test_recognize_rejects_triangle():
    f = QaryArray.from_function(
        2, 3, lambda x: x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    )
    g = QaryArray.from_function(
        2, 3, lambda x: x[0] * x[1] + x[0] * x[2] + x[1] * x[2] + x[0]
    )
    assert recognize_standard(f, g) is None


def test_recognize_rejects_broken_path():
    # disconnected quadratic graph: an edge plus an isolated vertex... with
    # m = 3 the single edge {1,2} leaves variable 3 off the path, so the
    # quadratic part is not a Hamiltonian path even though it is a path
    f = QaryArray.from_function(2, 3, lambda x: x[0] * x[1])
    g = QaryArray.from_function(2, 3, lambda x: x[0] * x[1] + x[0])
    assert recognize_standard(f, g) is None


def test_recognize_rejects_wrong_quadratic_coefficient():
    f = QaryArray.from_function(4, 2, lambda x: x[0] * x[1])
    g = QaryArray.from_function(4, 2, lambda x: x[0] * x[1] + 2 * x[0])
    assert recognize_standard(f, g) is None


def test_recognize_rejects_offset_from_non_endpoint():
    # path 1-2-3; offset on the middle variable
    f = QaryArray.from_function(2, 3, lambda x: x[0] * x[1] + x[1] * x[2])
    g = QaryArray.from_function(2, 3, lambda x: x[0] * x[1] + x[1] * x[2] + x[1])
    assert recognize_standard(f, g) is None


def test_recognize_rejects_nonlinear_offset():
    f = QaryArray.from_function(2, 2, lambda x: x[0] * x[1])
    g = QaryArray.from_function(2, 2, lambda x: x[0] + x[1])
    assert recognize_standard(f, g) is None


def test_recognize_dimension_zero_and_one():
    f = QaryArray(4, 0, (1,))
    g = QaryArray(4, 0, (2,))
    assert recognize_standard(f, g) == StandardParams(4, 0, (), (), 1, 1)
    f = QaryArray(4, 1, (1, 2))
    g = QaryArray(4, 1, (2, 1))  # g - f = 2*x1 + 1
    assert recognize_standard(f, g) == StandardParams(4, 1, (1,), (1,), 1, 1)
    # offset missing the q/2 leading coefficient
    h = QaryArray(4, 1, (2, 3))  # h - f = 1
    assert recognize_standard(f, h) is None


def test_recognize_odd_modulus_raises():
    f = QaryArray(3, 1, (0, 1))
    with pytest.raises(OddModulusError):
        recognize_standard(f, f)


def test_recognized_pairs_are_exactly_the_census_standard_set():
    from golaypairs import enumerate_all_gaps

    for q, m in ((2, 2), (4, 1)):
        for f, g in enumerate_all_gaps(q, m):
            assert recognize_standard(f, g) is not None


def test_replay_uses_only_the_leaves():
    rng = random.Random(179)
    f, g = construct_standard(rand_params(rng, 6, 4))
    _, cert = decompose(f, g)
    # corrupting a stored intermediate array does not change replay output
    bad_split = dataclasses.replace(cert.split, a=cert.split.a + 1)
    bad = dataclasses.replace(cert, split=bad_split)
    assert replay(bad) == (f, g)
    # but verification catches the inconsistency
    with pytest.raises(VerificationError):
        verify_certificate(f, g, bad)
