"""Shared fixtures: the reference torus and its orthonormal basis."""

import pytest

from torusmag import TorusGeometry, gram_schmidt_basis


@pytest.fixture(scope="session")
def geom():
    return TorusGeometry(major_radius=500.0, minor_radius=250.0)


@pytest.fixture(scope="session")
def basis(geom):
    return gram_schmidt_basis(geom, n_even=6, n_odd=6, nu_range=(-2, 2))
