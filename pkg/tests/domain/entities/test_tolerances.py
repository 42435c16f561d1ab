"""Unit tests for ToleranceProfile."""

import pytest

from src.domain.entities.base import ValidationError
from src.domain.entities.tolerances import ToleranceProfile


def test_defaults():
    """Test the default thresholds."""
    profile = ToleranceProfile()

    assert profile.quadratic_pass == 1e-8
    assert profile.quartic_pass == 1e-7
    assert profile.oracle_max_iter == 500
    assert profile.rank_one_tol == 1e-10


def test_tolerance_by_order():
    profile = ToleranceProfile()

    assert profile.pass_tolerance(2) == profile.quadratic_pass
    assert profile.pass_tolerance(4) == profile.quartic_pass
    assert profile.equality_tolerance(2) == profile.quadratic_equality
    assert profile.equality_tolerance(4) == profile.quartic_equality


def test_with_base():
    """Test that the scalar override moves pass and equality thresholds together."""
    profile = ToleranceProfile().with_base(1e-6)

    assert profile.quadratic_pass == 1e-6
    assert profile.quartic_pass == 1e-6
    assert profile.quadratic_equality == pytest.approx(1e-5)
    assert profile.majorization_tol == 1e-6
    assert profile.oracle_tol == ToleranceProfile().oracle_tol


def test_with_base_rejects_non_positive():
    with pytest.raises(ValidationError):
        ToleranceProfile().with_base(0.0)


def test_non_positive_field_rejected():
    with pytest.raises(ValidationError, match="match_tol must be positive"):
        ToleranceProfile(match_tol=-1.0)


def test_equality_tighter_than_pass_rejected():
    with pytest.raises(ValidationError, match="equality thresholds"):
        ToleranceProfile(quadratic_pass=1e-6, quadratic_equality=1e-7)


def test_from_dict_overrides_base():
    base = ToleranceProfile().with_base(1e-5)
    profile = ToleranceProfile.from_dict({"match_tol": 1e-4, "oracle_max_iter": "900"}, base)

    assert profile.match_tol == 1e-4
    assert profile.oracle_max_iter == 900
    assert isinstance(profile.oracle_max_iter, int)
    assert profile.quadratic_pass == 1e-5


def test_from_dict_unknown_key():
    with pytest.raises(ValidationError, match="unknown tolerance keys"):
        ToleranceProfile.from_dict({"bogus": 1.0})


def test_to_dict_round_trip():
    profile = ToleranceProfile(identity_tol=1e-9)
    assert ToleranceProfile.from_dict(profile.to_dict()) == profile
