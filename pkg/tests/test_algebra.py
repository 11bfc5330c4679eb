"""Clifford algebra arithmetic against an independent generator-list oracle."""

import numpy as np
import pytest

from rieszfeller import CliffordAlgebra, Multivector, blade_product
from rieszfeller.algebra import dagger_array, left_multiply_array, norm0_array


def oracle_blade_product(a_mask: int, b_mask: int, n: int):
    """Multiply basis blades by explicit generator lists.

    Concatenate the (sorted) generator lists, bubble-sort counting swaps
    (each adjacent transposition of distinct generators flips the sign),
    then cancel adjacent duplicates with e_j * e_j = -1.
    """
    seq = [j for j in range(1, n + 1) if a_mask >> (j - 1) & 1]
    seq += [j for j in range(1, n + 1) if b_mask >> (j - 1) & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
                changed = True
    out = []
    for j in seq:
        if out and out[-1] == j:
            out.pop()
            sign = -sign
        else:
            out.append(j)
    mask = 0
    for j in out:
        mask |= 1 << (j - 1)
    return sign, mask


@pytest.mark.parametrize("n", [1, 2, 3])
def test_blade_product_matches_oracle_exhaustive(n):
    dim = 1 << n
    for a in range(dim):
        for b in range(dim):
            assert blade_product(a, b, n) == oracle_blade_product(a, b, n)


def test_blade_product_matches_oracle_sampled():
    rng = np.random.default_rng(0)
    for n in (4, 5, 6):
        dim = 1 << n
        for _ in range(200):
            a, b = int(rng.integers(dim)), int(rng.integers(dim))
            assert blade_product(a, b, n) == oracle_blade_product(a, b, n)


def test_blade_product_examples():
    # e1 e2 = e12, e1 e1 = -1, e2 e1 = -e12
    assert blade_product(0b01, 0b10, 2) == (+1, 0b11)
    assert blade_product(0b01, 0b01, 2) == (-1, 0)
    assert blade_product(0b10, 0b01, 2) == (-1, 0b11)


def test_generator_anticommutation():
    for n in (1, 2, 3, 4):
        alg = CliffordAlgebra(n)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                anti = alg.generator(j) * alg.generator(k) + alg.generator(k) * alg.generator(j)
                expected = alg.scalar(-2.0 if j == k else 0.0)
                assert anti == expected


def test_identity_and_simple_products():
    alg = CliffordAlgebra(2)
    e0 = alg.scalar(1.0)
    e1, e2 = alg.generator(1), alg.generator(2)
    lam = alg.multivector([1.5, -2.0, 0.25j, 3.0])
    assert (e0 * lam) == lam
    assert (lam * e0) == lam
    assert (e1 * e2) == alg.blade(0b11)
    sq = (e1 + e2) * (e1 + e2)
    assert sq.isclose(alg.scalar(-2.0), atol=0)


def test_vector_square_is_negative_norm():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 4):
        alg = CliffordAlgebra(n)
        x = rng.standard_normal(n)
        sq = alg.vector(x) * alg.vector(x)
        assert sq.isclose(alg.scalar(-float(np.dot(x, x))), atol=1e-12)


def test_dagger_examples():
    alg = CliffordAlgebra(2)
    e0, e1 = alg.scalar(1.0), alg.generator(1)
    assert e1.dagger() == -e1
    assert e0.dagger() == e0
    assert (1j * e1).dagger() == (1j * e1)  # conj(i) * (-e1) flips twice


def test_dagger_makes_norm_positive():
    rng = np.random.default_rng(4)
    for n in (1, 2, 3):
        alg = CliffordAlgebra(n)
        lam = alg.random(rng)
        scalar = (lam * lam.dagger()).scalar_part
        assert abs(scalar.imag) < 1e-12
        assert abs(scalar.real - np.sum(np.abs(lam.coeffs) ** 2)) < 1e-10


def test_dagger_antiautomorphism_on_real_elements():
    rng = np.random.default_rng(5)
    alg = CliffordAlgebra(3)
    for _ in range(50):
        lam = alg.multivector(rng.standard_normal(alg.dim))
        mu = alg.multivector(rng.standard_normal(alg.dim))
        assert ((lam * mu).dagger()).isclose(mu.dagger() * lam.dagger(), atol=1e-12)


def test_norm0_examples():
    assert CliffordAlgebra(2).scalar(1.0).norm0() == pytest.approx(2.0)
    assert CliffordAlgebra(2).zero().norm0() == 0.0
    alg1 = CliffordAlgebra(1)
    lam = alg1.scalar(1.0) + alg1.generator(1)
    assert lam.norm0() == pytest.approx(2.0)  # 2**(1/2) * sqrt(2)


def test_inner_examples():
    alg = CliffordAlgebra(2)
    e1, e2 = alg.generator(1), alg.generator(2)
    assert e1.inner(e1) == pytest.approx(4.0)
    assert e1.inner(e2) == 0.0
    rng = np.random.default_rng(6)
    lam = alg.random(rng)
    assert lam.inner(lam) == pytest.approx(lam.norm0() ** 2)


def test_submultiplicativity_and_triangle_bulk():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 4):
        alg = CliffordAlgebra(n)
        a = rng.standard_normal((2000, alg.dim)) + 1j * rng.standard_normal((2000, alg.dim))
        b = rng.standard_normal((2000, alg.dim)) + 1j * rng.standard_normal((2000, alg.dim))
        prod = left_multiply_array(alg, a, b)
        ratio = norm0_array(alg, prod) / (norm0_array(alg, a) * norm0_array(alg, b))
        assert ratio.max() <= 1.0 + 1e-12
        tri = norm0_array(alg, a + b) / (norm0_array(alg, a) + norm0_array(alg, b))
        assert tri.max() <= 1.0 + 1e-12


def test_associativity_random():
    rng = np.random.default_rng(8)
    for n in (1, 2, 3, 4):
        alg = CliffordAlgebra(n)
        for _ in range(25):
            a, b, c = (alg.random(rng) for _ in range(3))
            left = (a * b) * c
            right = a * (b * c)
            assert (left - right).norm0() <= 1e-10 * (a.norm0() * b.norm0() * c.norm0())


def test_dagger_array_matches_elementwise():
    rng = np.random.default_rng(9)
    alg = CliffordAlgebra(3)
    batch = rng.standard_normal((10, alg.dim)) + 1j * rng.standard_normal((10, alg.dim))
    via_array = dagger_array(alg, batch)
    for row, expect in zip(batch, via_array):
        assert Multivector(alg, row).dagger() == Multivector(alg, expect)


def test_signature_mismatch_rejected():
    lam = CliffordAlgebra(2).scalar(1.0)
    mu = CliffordAlgebra(3).scalar(1.0)
    with pytest.raises(ValueError, match="signature mismatch"):
        _ = lam * mu
    with pytest.raises(ValueError, match="signature mismatch"):
        lam.inner(mu)


def test_generator_count_bounds():
    with pytest.raises(ValueError):
        CliffordAlgebra(0)
    with pytest.raises(ValueError):
        CliffordAlgebra(13)
    assert CliffordAlgebra(12).dim == 4096


def test_multivector_immutability():
    lam = CliffordAlgebra(2).scalar(1.0)
    with pytest.raises(AttributeError):
        lam.coeffs = np.zeros(4)
    with pytest.raises(ValueError):
        lam.coeffs[0] = 2.0  # read-only array


def test_algebra_instances_shared():
    assert CliffordAlgebra(3) is CliffordAlgebra(3)
