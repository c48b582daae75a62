from __future__ import annotations

from fractions import Fraction

import pytest


@pytest.fixture
def F():
    return Fraction
