#!/usr/bin/env python3
"""
작용소 변환 테스트
Cartesian 분해, 극분해 (부분 등거리), Aluthge 변환
"""
import sys
import os

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from numpy.testing import assert_allclose

sys.path.append(os.path.dirname(__file__))

from src.matcore.linalg_kernel import eps_equal, op_norm, psd_power
from src.numrad.numerical_radius_solver import numerical_radius
from src.transforms.operator_transforms import aluthge, cartesian, modulus, polar

J = np.array([[0, 1], [0, 0]], dtype=complex)
A3 = np.array([[0, 1, 0], [0, 0, 2], [0, 0, 0]], dtype=complex)


def ginibre(seed: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_cartesian_parts_are_hermitian_and_sum_back():
    A = ginibre(1, 4)
    parts = cartesian(A)
    assert_allclose(parts.re, parts.re.conj().T, atol=1e-14)
    assert_allclose(parts.im, parts.im.conj().T, atol=1e-14)
    assert_allclose(parts.re + 1j * parts.im, A, atol=1e-13)


def test_cartesian_of_diagonal_example():
    """diag(1+i,0): ℜ+ℑ = diag(2,0), ℜ−ℑ = 0"""
    parts = cartesian(np.diag([1 + 1j, 0]))
    assert_allclose(parts.rotated(+1), np.diag([2.0, 0.0]), atol=1e-15)
    assert_allclose(parts.rotated(-1), np.zeros((2, 2)), atol=1e-15)


def test_polar_of_nilpotent_shift():
    """J = U|J|, |J| = diag(0,1), U = J, ker U = ker J"""
    parts = polar(J)
    assert parts.rank == 1
    assert_allclose(parts.modulus, np.diag([0.0, 1.0]), atol=1e-14)
    assert_allclose(parts.u, J, atol=1e-14)


def test_polar_partial_isometry_on_rank_deficient_input():
    rng = np.random.default_rng(7)
    A = (rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))) @ \
        (rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5)))
    parts = polar(A)
    assert parts.rank == 2
    assert_allclose(parts.u @ parts.modulus, A, atol=1e-10)
    projection = parts.u.conj().T @ parts.u
    assert_allclose(projection @ projection, projection, atol=1e-12)
    assert_allclose(projection @ parts.modulus, parts.modulus, atol=1e-10)


def test_modulus_is_sqrt_of_gram():
    A = ginibre(3, 4)
    M = modulus(A)
    assert_allclose(M @ M, A.conj().T @ A, atol=1e-10)


def test_aluthge_examples():
    assert_allclose(aluthge(J), np.zeros((2, 2)), atol=1e-14)

    # 정규행렬은 Aluthge 변환의 고정점
    N = np.diag([1 + 1j, 2.0, -0.5j])
    assert_allclose(aluthge(N), N, atol=1e-12)

    # A₃ 의 Aluthge 변환 = √2·e₂e₃*
    expected = np.zeros((3, 3), dtype=complex)
    expected[1, 2] = np.sqrt(2.0)
    assert_allclose(aluthge(A3), expected, atol=1e-12)
    assert numerical_radius(aluthge(A3)).value == pytest.approx(np.sqrt(2.0) / 2.0, abs=1e-10)


def test_aluthge_of_zero_matrix():
    assert_allclose(aluthge(np.zeros((3, 3))), np.zeros((3, 3)), atol=0.0)


@hyp_settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 6))
def test_aluthge_contracts_norm_and_numerical_radius(seed, n):
    """‖Ã‖ ≤ ‖A‖, w(Ã) ≤ w(A)"""
    A = ginibre(seed, n)
    A_tilde = aluthge(A)
    scale = 1.0 + op_norm(A)
    assert op_norm(A_tilde) <= op_norm(A) + 1e-10 * scale
    assert numerical_radius(A_tilde).value <= numerical_radius(A).value + 1e-9 * scale


@hyp_settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 6))
def test_rotated_cartesian_combination_norm(seed, n):
    """‖(ℜ+ℑ) + i(ℜ−ℑ)‖ = √2‖A‖"""
    A = ginibre(seed, n)
    parts = cartesian(A)
    combined = parts.rotated(+1) + 1j * parts.rotated(-1)
    assert op_norm(combined) == pytest.approx(np.sqrt(2.0) * op_norm(A), rel=1e-12)


@hyp_settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 6))
def test_polar_isometry_projection_matches_range_projection(seed, n):
    """U*U = |A|⁰ (랭크 결손 포함)"""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    A = (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) @ \
        (rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n)))
    parts = polar(A)
    assert eps_equal(parts.u.conj().T @ parts.u, psd_power(parts.modulus, 0.0), 1e-9)


if __name__ == "__main__":
    print("🚀 작용소 변환 테스트 시작")
    sys.exit(pytest.main([__file__, "-v"]))
