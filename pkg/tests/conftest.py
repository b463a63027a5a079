"""Shared fixtures."""

import pytest

from waveqed.cli import figure_datasets


@pytest.fixture(scope="session")
def figure_data():
    """The nine standard figure datasets, built once for the whole run."""
    return figure_datasets(0.05)
