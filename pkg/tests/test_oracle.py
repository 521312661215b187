import pytest
import sys
import os

# Add src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import oracle
from exceptions import InapplicableDiscriminantError, UsageError
from oracle import brute_force_solutions, sweep_verify


def _pairs(triples):
    return [(t.a, t.b, t.c) for t in triples]


class TestBruteForce:
    """Test the exhaustive scan."""

    def test_d_105(self):
        """Test the tables' denominators by brute force."""
        assert _pairs(brute_force_solutions(105, 143)) == [(73, 12, 143), (137, 4, 143)]
        assert _pairs(brute_force_solutions(105, 209)) == [(41, 20, 209), (169, 12, 209)]
        assert brute_force_solutions(105, 10) == []

    def test_unit_circle(self):
        """Test Pythagorean triples are listed once with a <= b."""
        assert _pairs(brute_force_solutions(1, 5)) == [(3, 4, 5)]
        assert _pairs(brute_force_solutions(1, 25)) == [(7, 24, 25)]
        assert _pairs(brute_force_solutions(1, 65)) == [(16, 63, 65), (33, 56, 65)]

    def test_non_primitive_excluded(self):
        """Test (15, 20, 25) is not reported for c = 25."""
        assert (15, 20, 25) not in _pairs(brute_force_solutions(1, 25))

    def test_invalid_arguments(self):
        """Test D or c below 1 are usage errors."""
        with pytest.raises(UsageError):
            brute_force_solutions(0, 5)
        with pytest.raises(UsageError):
            brute_force_solutions(105, 0)


class TestSweep:
    """Test the enumeration against the oracle."""

    @pytest.mark.parametrize("D,c_max", [(1, 3000), (2, 3000), (5, 3000), (6, 3000), (105, 3000)])
    def test_no_mismatches(self, D, c_max):
        """Test enumeration, count law and oracle agree on every c."""
        report = sweep_verify(D, c_max)
        assert report.ok
        assert report.checked == c_max - 1
        assert report.nonempty > 0

    def test_mismatch_detected(self, monkeypatch):
        """Test a wrong count law shows up as mismatches."""
        monkeypatch.setattr(oracle, "count_normalized", lambda D, c, unverified=False: 0)
        report = sweep_verify(105, 150)
        assert not report.ok
        assert [m.c for m in report.mismatches] == [
            11, 13, 19, 31, 41, 43, 47, 53, 67, 71, 73, 83, 89, 97, 101, 109, 113, 121, 127, 137, 139, 143,
        ]

    def test_inapplicable_d(self):
        """Test the sweep refuses D = 14 without the override."""
        with pytest.raises(InapplicableDiscriminantError):
            sweep_verify(14, 20)

    def test_bad_bound(self):
        """Test c_max below 1 is a usage error."""
        with pytest.raises(UsageError):
            sweep_verify(105, 0)
