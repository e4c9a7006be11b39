import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra import I, J, K, ONE, Quaternion, jmul_left, qconj, qmul

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion.from_components, finite, finite, finite, finite)


def _hamilton(p: Quaternion, q: Quaternion) -> tuple[float, float, float, float]:
    """Four-component Hamilton product, written out term by term."""
    a1, b1, c1, d1 = p.components()
    a2, b2, c2, d2 = q.components()
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _close(p: Quaternion, q: Quaternion, tol: float = 1e-12) -> bool:
    scale = max(1.0, p.norm(), q.norm())
    return (p - q).norm() <= tol * scale


def test_multiplication_table_is_exact():
    minus_one = -ONE
    assert I * I == minus_one
    assert J * J == minus_one
    assert K * K == minus_one
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K
    assert K * J == -I
    assert I * K == -J


def test_i_times_j_in_pair_form():
    product = qmul(Quaternion(1j, 0j), Quaternion(0j, 1 + 0j))
    assert product == Quaternion(0j, 1j)


def test_identity_leaves_quaternion_unchanged():
    q = Quaternion(1 + 2j, 3 + 4j)
    assert q * ONE == q
    assert ONE * q == q


def test_one_plus_i_times_one_plus_j():
    product = (ONE + I) * (ONE + J)
    assert product.components() == (1.0, 1.0, 1.0, 1.0)


def test_components_round_trip():
    q = Quaternion.from_components(1.5, -2.0, 0.25, 7.0)
    assert q.za == complex(1.5, -2.0)
    assert q.zb == complex(0.25, 7.0)
    assert Quaternion.from_components(*q.components()) == q


def test_left_j_form_round_trip():
    q = Quaternion.from_left_j(1 + 2j, 3 - 1j)
    assert q.left_j_parts() == (1 + 2j, 3 - 1j)
    assert _close(q, Quaternion.of(1 + 2j) + J * Quaternion.of(3 - 1j))


def test_conjugate_examples():
    q = ONE + I + J + K
    assert qconj(q).components() == (1.0, -1.0, -1.0, -1.0)
    assert qconj(Quaternion.of(2.5)) == Quaternion.of(2.5)


def test_norm_from_conjugate_product():
    q = Quaternion(1 + 2j, 3 + 4j)
    product = qmul(q, qconj(q))
    assert product.za.real == pytest.approx(30.0)
    assert product.za.imag == 0.0
    assert product.zb == 0j
    assert q.norm2() == pytest.approx(30.0)


@pytest.mark.parametrize(
    ("z", "expected"),
    [
        (1j, -K),
        (1 + 0j, J),
        (2 + 3j, Quaternion.of(2 - 3j) * J),
    ],
)
def test_jmul_left_examples(z, expected):
    assert _close(jmul_left(z), expected)


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_j_commutes_with_complex_up_to_conjugation(z):
    left = J * Quaternion.of(z)
    right = Quaternion.of(z.conjugate()) * J
    assert _close(left, right)
    assert _close(jmul_left(z), left)


@settings(max_examples=1000)
@given(quaternions, quaternions)
def test_pair_product_matches_component_product(p, q):
    expected = np.array(_hamilton(p, q))
    got = np.array((p * q).components())
    assert np.allclose(got, expected, rtol=1e-12, atol=1e-12 * max(1.0, p.norm() * q.norm()))


@settings(max_examples=1000)
@given(quaternions, quaternions, quaternions)
def test_associativity(p, q, r):
    left = (p * q) * r
    right = p * (q * r)
    scale = max(1.0, p.norm() * q.norm() * r.norm())
    assert (left - right).norm() <= 1e-12 * scale


@settings(max_examples=1000)
@given(quaternions, quaternions)
def test_norm_is_multiplicative(p, q):
    assert (p * q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-12, abs=1e-12)


@given(quaternions)
def test_norm_is_non_negative_and_zero_only_at_origin(q):
    assert q.norm2() >= 0.0
    if q == Quaternion():
        assert q.norm2() == 0.0
    else:
        assert q.norm() > 0.0
