"""Shared random-input builders for the test suite.

Everything is seeded through numpy's default_rng so reruns are reproducible;
individual tests pick their own seeds.
"""

import numpy as np


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Dense Hermitian matrix with O(1) entries."""
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (raw + raw.conj().T) / (2.0 * np.sqrt(dim))


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return raw / np.linalg.norm(raw)
