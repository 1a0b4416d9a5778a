import re
from dataclasses import replace
from fractions import Fraction

import pytest

from skeinz.channels import (ChannelFitError, ChannelLaw, channel_validate, default_law,
                             knot_exponent, torus2_bracket, trace_sequence)
from skeinz.diagram import KnotPresentation, builtin
from skeinz.oracle import colored_bracket, loop_law
from skeinz.series import LaurentPoly


@pytest.fixture(scope="module")
def law():
    return default_law()


def test_fitted_law_is_the_known_eigenvalue_law(law):
    # lambda_c(n) = (-1)^((2n-c)/2) A^(c(c+2)/2 - n(n+2))
    assert law.validated and law.validation_range >= 5
    for n in range(0, 9):
        for c in range(0, 2 * n + 1, 2):
            sign = -1 if ((2 * n - c) // 2) % 2 else 1
            assert law.eigen(n, c) == LaurentPoly.monomial(c * (c + 2) // 2 - n * (n + 2), sign)


def test_describe_and_dump(law):
    assert law.texp_coeffs == (-1, 0, Fraction(1, 2), -2, 1, 0)
    lines = law.dump(2)
    assert lines[0] == "n=0 c=0 sign=+1 texp=0"
    assert len(lines) == 1 + 2 + 3
    assert all(re.fullmatch(r"n=\d+ c=\d+ sign=[+-]1 texp=-?\d+", line) for line in lines)
    assert "n=2 c=4 sign=+1 texp=4" in lines


def test_channel_completeness(law):
    for n in range(0, 49):
        assert sum((d for _, d, _ in law.table(n)), LaurentPoly()) == loop_law(n) ** 2


@pytest.mark.parametrize("n", range(1, 4))
@pytest.mark.parametrize("w", [-3, -1, 0, 2, 3])
def test_trace_sequence_is_a_channel_sum(law, n, w):
    value = sum((lam**w * d for _, d, lam in law.table(n)), LaurentPoly())
    assert value == trace_sequence(n, w)


@pytest.mark.parametrize("name", ["trefoil", "trefoil-mirror"])
@pytest.mark.parametrize("n", range(0, 5))
def test_channel_engine_matches_oracle(law, name, n):
    K = builtin(name)
    assert torus2_bracket(law, n, knot_exponent(K)) == colored_bracket(K, n)


def test_five_twist_knot(law):
    K = KnotPresentation.from_braid((1,) * 5, "t25")
    assert knot_exponent(K) == 5
    assert torus2_bracket(law, 2, 5) == colored_bracket(K, 2)


def test_unvalidated_and_wrong_laws_are_refused(law):
    raw = replace(law, validated=False)
    with pytest.raises(ChannelFitError):
        torus2_bracket(raw, 2, 3)
    bad = ChannelLaw((-1, 0, Fraction(1, 2), -2, 1, 1), (1, -1), 4)
    with pytest.raises(ChannelFitError):
        channel_validate(bad, 2, 1)
    flipped = ChannelLaw(law.texp_coeffs, (-1, 1), 4)
    with pytest.raises(ChannelFitError):
        channel_validate(flipped, 2, 1)
    with pytest.raises(ValueError):
        torus2_bracket(law, 60, 3)


def test_knot_exponent_only_for_two_strand_torus_knots():
    assert knot_exponent(builtin("trefoil")) == 3
    assert knot_exponent(builtin("trefoil-mirror")) == -3
    assert knot_exponent(builtin("fig8")) is None
    assert knot_exponent(builtin("fig8-braid")) is None
    assert knot_exponent(KnotPresentation.from_braid((1, 1), "hopf")) is None


def test_trace_probe_limits():
    with pytest.raises(ValueError):
        trace_sequence(1, 6)
    assert trace_sequence(0, 3) == LaurentPoly.const(1)
