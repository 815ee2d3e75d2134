from fractions import Fraction

import pytest

from gbe.config import Settings, from_environment, resolve
from gbe.errors import InvalidParameter


def test_defaults():
    s = resolve({}, {})
    assert s == Settings()
    assert s.g == Fraction(1, 4) and s.convention == "scaled"


def test_precedence():
    env = {"GBE_G": "1/2", "GBE_SEED": "7", "GBE_CONVENTION": "unscaled"}
    s = resolve({"g": Fraction(3), "seed": None}, env)
    assert s.g == 3 and s.seed == 7 and s.convention == "unscaled"


def test_environment_parsing():
    assert from_environment({"GBE_THREADS": "4", "OTHER": "x"}) == {"threads": 4}
    with pytest.raises(InvalidParameter):
        from_environment({"GBE_G": "1/0"})


def test_validation():
    with pytest.raises(InvalidParameter):
        Settings(convention="starred")
    with pytest.raises(InvalidParameter):
        Settings(threads=0)
    with pytest.raises(InvalidParameter):
        Settings(g=Fraction(-1))
