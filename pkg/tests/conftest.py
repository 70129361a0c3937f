from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def rationals(bound: int = 9):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def rational_vectors(dim: int, bound: int = 9):
    return st.lists(rationals(bound), min_size=dim, max_size=dim).map(tuple)


def nonzero_rationals(bound: int = 5):
    return st.builds(Fraction, st.integers(-bound, bound).filter(bool), st.integers(1, bound))
