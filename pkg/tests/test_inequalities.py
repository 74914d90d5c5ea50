"""Tests for the product inequality checkers."""

from fractions import Fraction

import numpy as np
import pytest

from pyextremal.errors import DomainError
from pyextremal.inequalities import (
    check_corollary37,
    check_min_product,
    check_perturbed_min_product,
    check_product_decrease,
)


def test_product_decrease_equality():
    """Test that y = x gives equality."""
    report = check_product_decrease([1, 2, 3], [1, 2, 3])
    assert report.holds
    assert report.equality
    assert report.exact


def test_product_decrease_exact_fractions():
    """Test an instance with rational values."""
    report = check_product_decrease([Fraction(1, 2), 1], [Fraction(1, 4), 1])
    assert report.lhs == Fraction(1, 4)
    assert report.rhs == Fraction(1, 4)
    assert report.equality


def test_product_decrease_strict():
    """Test a strict instance."""
    report = check_product_decrease([2, 3], [2, 1])
    assert report.holds
    assert report.lhs == 2
    assert report.rhs == 0
    assert report.slack == 2


def test_product_decrease_domain():
    """Test the preconditions."""
    with pytest.raises(DomainError):
        check_product_decrease([3, 2], [1, 1])
    with pytest.raises(DomainError):
        check_product_decrease([1, 2], [2, 1])
    with pytest.raises(DomainError):
        check_product_decrease([], [])


def test_min_product_equality_case():
    """Test that equal values (r-1)/r reach the bound."""
    a = [Fraction(2, 3)] * 3
    report = check_min_product(a, 3)
    assert report.equality
    assert report.to_dict()["lhs"] == "4/9"


def test_min_product_floats():
    """Test the float path with its tolerance."""
    report = check_min_product([0.5, 0.75, 0.75], 3)
    assert report.holds
    assert not report.exact
    assert not report.equality


def test_min_product_domain():
    """Test the preconditions on a."""
    with pytest.raises(DomainError):
        check_min_product([0.1, 0.2, 0.3], 3)
    with pytest.raises(DomainError):
        check_min_product([0.9, 0.8], 2)
    with pytest.raises(DomainError):
        check_min_product([1, 1], 3)


def test_perturbed_min_product():
    """Test the weakened bound after removing alpha."""
    a = [Fraction(2, 3)] * 3
    b = [Fraction(2, 3), Fraction(2, 3), Fraction(1, 2)]
    report = check_perturbed_min_product(a, b, Fraction(1, 6))
    assert report.holds
    assert report.rhs == Fraction(2, 3) * Fraction(4, 9)
    with pytest.raises(DomainError):
        check_perturbed_min_product(a, b, Fraction(1, 5))
    with pytest.raises(DomainError):
        check_perturbed_min_product(a, [0, 0, 0], 2)


TRIALS = 10_000


def _unit_fraction(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(0, 101)), 100)


def _min_product_instance(rng: np.random.Generator) -> list:
    """Ascending values in [0, 1] whose deficits from 1 sum to at most 1."""
    r = int(rng.integers(1, 6))
    weights = [int(w) for w in rng.integers(0, 11, size=r)]
    scale = _unit_fraction(rng) / sum(weights) if sum(weights) else Fraction(0)
    return sorted(1 - w * scale for w in weights)


def test_product_decrease_random_instances():
    """Test that the product-decrease inequality never fails."""
    rng = np.random.default_rng(0)
    for _ in range(TRIALS):
        x = sorted(_unit_fraction(rng) for _ in range(int(rng.integers(1, 6))))
        y = [xi * _unit_fraction(rng) for xi in x]
        assert check_product_decrease(x, y).holds, (x, y)


def test_min_product_random_instances():
    """Test that the minimum-product inequality never fails."""
    rng = np.random.default_rng(1)
    for _ in range(TRIALS):
        a = _min_product_instance(rng)
        assert check_min_product(a, len(a)).holds, a


def test_perturbed_min_product_random_instances():
    """Test that the weakened minimum-product inequality never fails."""
    rng = np.random.default_rng(2)
    for _ in range(TRIALS):
        a = _min_product_instance(rng)
        removed = [ai * _unit_fraction(rng) for ai in a]
        if sum(removed) > Fraction(1, 4):
            removed = [e * Fraction(1, 4) / sum(removed) for e in removed]
        b = [ai - e for ai, e in zip(a, removed)]
        assert check_perturbed_min_product(a, b, sum(removed, Fraction(0))).holds, (a, b)


def test_perturbed_min_product_long_name():
    """Test that the numbered name resolves to the same checker."""
    a = [Fraction(2, 3)] * 3
    b = [Fraction(2, 3), Fraction(2, 3), Fraction(1, 2)]
    assert check_corollary37 is check_perturbed_min_product
    assert check_corollary37(a, b, Fraction(1, 6)) == check_perturbed_min_product(a, b, Fraction(1, 6))
