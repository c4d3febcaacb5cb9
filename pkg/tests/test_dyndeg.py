import math

import numpy as np
import pytest

from arith.intlat import IntMatrix
from dynamics.dyndeg import (
    DegreeProfile,
    henon_profile,
    is_cohomologically_hyperbolic,
    monomial_degree_profile,
    profile_of_iterate,
    regular_profile,
    spectral_radius,
)
from utils.errors import InconsistentDataError, SingularMatrixError, ToridynError

CAT = IntMatrix.from_rows([[2, 1], [1, 1]])
GOLDEN_SQ = (3 + math.sqrt(5)) / 2


class TestMonomial:
    def test_cat_map(self):
        prof = monomial_degree_profile(CAT)
        assert prof.exact == (1, None, 1)
        assert math.isclose(prof.lambdas[1], GOLDEN_SQ, rel_tol=1e-12)
        assert prof.hyperbolic_index == 1

    def test_diagonal_has_exact_integer_degrees(self):
        prof = monomial_degree_profile(IntMatrix.diagonal([2, 3]))
        assert prof.exact == (1, 3, 6)
        assert prof.hyperbolic_index == 2

    def test_finite_order_map(self):
        prof = monomial_degree_profile(IntMatrix.from_rows([[0, -1], [1, 0]]))
        assert prof.exact == (1, 1, 1)
        assert is_cohomologically_hyperbolic(prof).status == "no"

    def test_last_degree_is_abs_det(self):
        a = IntMatrix.from_rows([[1, 2, 0], [0, 1, 3], [2, 0, 1]])
        assert monomial_degree_profile(a).exact[-1] == abs(a.det())

    def test_iterate_identity(self):
        a = IntMatrix.from_rows([[3, 1], [1, 0]])
        p1, p2 = monomial_degree_profile(a), monomial_degree_profile(a.power(2))
        for x, y in zip(p1.lambdas, p2.lambdas):
            assert math.isclose(y, x * x, rel_tol=1e-9)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            monomial_degree_profile(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_spectral_radius_integer_detection():
    assert spectral_radius(IntMatrix.diagonal([-3, 2])) == (3.0, 3)
    rho, exact = spectral_radius(CAT)
    assert exact is None and math.isclose(rho, GOLDEN_SQ)


def test_spectral_radius_rejects_roots_outside_certified_bounds(monkeypatch):
    monkeypatch.setattr(np, "roots", lambda coeffs: np.full(len(coeffs) - 1, 0.5))
    with pytest.raises(ToridynError, match="below"):
        spectral_radius(CAT)
    monkeypatch.setattr(np, "roots", lambda coeffs: np.full(len(coeffs) - 1, 100.0))
    with pytest.raises(ToridynError, match="exceeds"):
        spectral_radius(CAT)


class TestClosedForms:
    def test_regular(self):
        prof = regular_profile(2, 3)
        assert prof.exact == (1, 3, 9)
        assert prof.hyperbolic_index == 2
        with pytest.raises(ToridynError):
            regular_profile(2, 1)

    def test_henon_planar(self):
        prof = henon_profile(2, 2, 2, 1, 1)
        assert prof.exact == (1, 2, 1)
        assert prof.hyperbolic_index == 1

    def test_henon_three_dimensional(self):
        prof = henon_profile(3, 4, 2, 2, 1)
        assert prof.exact == (1, 4, 2, 1)
        assert prof.hyperbolic_index == 1

    def test_henon_inconsistent(self):
        with pytest.raises(InconsistentDataError):
            henon_profile(2, 2, 3, 1, 1)
        with pytest.raises(InconsistentDataError):
            henon_profile(3, 2, 2, 1, 1)


class TestProfile:
    def test_log_concavity_enforced(self):
        with pytest.raises(ToridynError):
            DegreeProfile.from_integers([1, 1, 4])

    def test_starts_at_one(self):
        with pytest.raises(ToridynError):
            DegreeProfile.from_integers([2, 4])

    def test_mus_end_with_zero(self):
        assert regular_profile(2, 2).mus == (2.0, 2.0, 0.0)

    def test_ties_are_not_hyperbolic(self):
        assert is_cohomologically_hyperbolic(DegreeProfile.from_integers([1, 2, 2])).status == "no"

    def test_iterate(self):
        prof = profile_of_iterate(henon_profile(2, 3, 3, 1, 1), 2)
        assert prof.exact == (1, 9, 1)
        with pytest.raises(ToridynError):
            profile_of_iterate(prof, 0)

    def test_to_dict(self):
        out = monomial_degree_profile(CAT).to_dict()
        assert out["lambdas"] == ["1", "2.618033988750", "1"]
        assert out["exact"] == [True, False, True]
        assert out["hyperbolic"] == "yes"
        assert out["hyperbolic_index"] == 1
