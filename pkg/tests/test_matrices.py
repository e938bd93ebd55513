from fractions import Fraction

import pytest

from unitri import (
    ClosureCapExceeded, ClosureCancelled, DenseOps, MetricConfig, Ring,
    UniTriWindow, closure_order, commutator, conjugate, distance, elementary,
    extend, identity, is_periodic, mat_inv, mat_mul, shift, truncate,
    valuation,
)
from unitri.freeprod import periodic_generators

from conftest import rand_window, rng


def test_elementary_product_completes_rectangle(f5):
    a, b = f5.elem(2), f5.elem(3)
    x = elementary(f5, 3, 1, 2, a)
    y = elementary(f5, 3, 2, 3, b)
    prod = mat_mul(x, y)
    assert prod.get(1, 2) == a
    assert prod.get(2, 3) == b
    assert prod.get(1, 3) == a * b


def test_identity_neutral(f3):
    x = rand_window(f3, 5, rng(1))
    assert mat_mul(x, identity(f3, 5)) == x
    assert mat_mul(identity(f3, 5), x) == x


def test_superdiagonal_powers_add(f3):
    e = elementary(f3, 2, 1, 2)
    assert mat_mul(e, e) == elementary(f3, 2, 1, 2, 2)


def test_inverse_examples(f3):
    assert mat_inv(elementary(f3, 2, 1, 2)) == elementary(f3, 2, 1, 2, -1)
    x = UniTriWindow(f3, 3, {(1, 2): 1, (2, 3): 1})
    # oracle: multiply the claimed inverse back
    claimed = UniTriWindow(f3, 3, {(1, 2): -1, (2, 3): -1, (1, 3): 1})
    assert mat_mul(x, claimed).is_identity()
    assert mat_inv(x) == claimed
    assert mat_inv(identity(f3, 4)).is_identity()


def test_group_axioms_random(f9):
    r = rng(2)
    for _ in range(300):
        x, y, z = (rand_window(f9, 5, r) for _ in range(3))
        assert mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z))
        assert mat_mul(x, mat_inv(x)).is_identity()


def test_commutator_spec_cases(f7, f5):
    c = commutator(elementary(f7, 3, 1, 2, 2), elementary(f7, 3, 2, 3, 3))
    assert c == elementary(f7, 3, 1, 3, 6)
    assert commutator(elementary(f7, 4, 1, 2), elementary(f7, 4, 3, 4)).is_identity()
    c2 = commutator(elementary(f5, 3, 2, 3), elementary(f5, 3, 1, 2))
    assert c2 == elementary(f5, 3, 1, 3, 4)


def test_commutator_formula_exhaustive_window8(f5, f9):
    # [1+a e_ij, 1+b e_kl] = 1 + d_jk a b e_il - d_il a b e_kj, all index pairs
    r = rng(3)
    for ring in (f5, f9):
        pairs = [(i, j) for i in range(1, 9) for j in range(i + 1, 9)]
        for (i, j) in pairs:
            for (k, l) in pairs:
                a = ring.decode(1 + r.randrange(ring.order - 1))
                b = ring.decode(1 + r.randrange(ring.order - 1))
                got = commutator(elementary(ring, 8, i, j, a),
                                 elementary(ring, 8, k, l, b))
                entries = {}
                if j == k:
                    entries[(i, l)] = a * b
                if i == l:
                    entries[(k, j)] = entries.get((k, j), ring.zero) - a * b
                assert got == UniTriWindow(ring, 8, entries), (i, j, k, l)


def test_valuation_and_distance(f3):
    assert valuation(elementary(f3, 5, 1, 2)) == 1
    assert valuation(elementary(f3, 5, 4, 5)) == 4
    assert valuation(identity(f3, 5)) == 5  # sentinel: >= window
    assert distance(identity(f3, 5), elementary(f3, 5, 1, 2)) == Fraction(1, 3)
    metric = MetricConfig(Fraction(1, 2))
    assert distance(identity(f3, 5), elementary(f3, 5, 3, 4), metric) == Fraction(1, 8)
    with pytest.raises(ValueError):
        MetricConfig(Fraction(3, 2))


def test_ultrametric_inequality(f3):
    r = rng(4)
    for _ in range(1000):
        x, y, z = (rand_window(f3, 4, r) for _ in range(3))
        assert distance(x, z) <= max(distance(x, y), distance(y, z))


def test_valuation_of_product(f5):
    r = rng(5)
    for _ in range(300):
        x, y = rand_window(f5, 6, r), rand_window(f5, 6, r)
        assert valuation(mat_mul(x, y)) >= min(valuation(x), valuation(y))


def test_truncation_is_homomorphism(f9):
    r = rng(6)
    for _ in range(200):
        x, y = rand_window(f9, 7, r), rand_window(f9, 7, r)
        assert truncate(mat_mul(x, y), 4) == mat_mul(truncate(x, 4), truncate(y, 4))
        assert truncate(mat_inv(x), 4) == mat_inv(truncate(x, 4))


def test_shift_examples(f3):
    x = elementary(f3, 5, 3, 4)
    assert shift(x, 2) == elementary(f3, 3, 1, 2)
    assert shift(x, 0) == x
    with pytest.raises(ValueError):
        shift(x, 5)
    s8, _ = periodic_generators(f3, 8)
    assert shift(s8, 2) == truncate(s8, 6)


def test_shift_is_homomorphism(f3):
    r = rng(7)
    for _ in range(200):
        x, y = rand_window(f3, 6, r), rand_window(f3, 6, r)
        assert shift(mat_mul(x, y), 2) == mat_mul(shift(x, 2), shift(y, 2))


def test_periodicity(f3):
    s, t = periodic_generators(f3, 8)
    assert is_periodic(s, 2)
    assert is_periodic(t, 2)
    assert not is_periodic(elementary(f3, 5, 1, 2), 2)
    assert is_periodic(identity(f3, 5), 1)


def test_extend_sections_truncate(f3):
    x = rand_window(f3, 4, rng(8))
    assert truncate(extend(x, 6), 4) == x


def test_window_mismatch_errors(f3, f5):
    with pytest.raises(ValueError):
        mat_mul(identity(f3, 3), identity(f3, 4))
    with pytest.raises(ValueError):
        mat_mul(identity(f3, 3), identity(f5, 3))


def test_entry_positions_validated(f3):
    with pytest.raises(ValueError):
        UniTriWindow(f3, 3, {(2, 2): 1})
    with pytest.raises(ValueError):
        UniTriWindow(f3, 3, {(1, 4): 1})


def test_closure_single_generator(f3):
    assert closure_order([elementary(f3, 3, 1, 2)]) == 3


def test_closure_full_group_orders():
    # |G_n(q)| = q^(n(n-1)/2); enumerable sizes only (cap 2e6)
    cases = [(3, 1, 5), (5, 1, 4), (3, 2, 4)]
    for p, f, nmax in cases:
        ring = Ring.prime_field(p) if f == 1 else Ring.ext_field(p, f)
        coeffs = ring.basis_elems() if f > 1 else [ring.one]
        for n in range(2, nmax + 1):
            gens = [elementary(ring, n, i, i + 1, a)
                    for i in range(1, n) for a in coeffs]
            assert closure_order(gens) == ring.order ** (n * (n - 1) // 2)


def test_closure_free_product_window5(f3):
    s, t = periodic_generators(f3, 5)
    assert closure_order([s, t]) == 3 ** 6


def test_closure_cap_and_cancellation(f3, monkeypatch):
    gens = [elementary(f3, 4, i, i + 1) for i in range(1, 4)]
    with pytest.raises(ClosureCapExceeded) as info:
        closure_order(gens, cap=10)
    assert info.value.partial_count > 10
    monkeypatch.setattr("unitri.matrices.CANCEL_POLL_INTERVAL", 16)
    calls = []

    def cancel():
        calls.append(1)
        return True

    with pytest.raises(ClosureCancelled):
        closure_order(gens, poll=cancel)
    assert calls


def test_dense_ops_match_sparse(f9):
    ops = DenseOps(f9, 5)
    r = rng(9)
    for _ in range(200):
        x, y = rand_window(f9, 5, r), rand_window(f9, 5, r)
        assert ops.decode(ops.mul(ops.encode(x), ops.encode(y))) == mat_mul(x, y)
        assert ops.decode(ops.inv(ops.encode(x))) == mat_inv(x)


def test_conjugate(f3):
    g = elementary(f3, 4, 1, 2)
    x = elementary(f3, 4, 2, 3)
    assert conjugate(g, x) == mat_mul(mat_mul(g, x), mat_inv(g))


def test_matrix_json_roundtrip(f9, z27):
    for ring in (f9, z27):
        x = rand_window(ring, 5, rng(10))
        assert UniTriWindow.from_json(x.to_json()) == x
