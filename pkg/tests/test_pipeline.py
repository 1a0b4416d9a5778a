import pytest
import sympy as sp

from skeinz.cache import BracketCache
from skeinz.diagram import KnotPresentation, builtin
from skeinz.oracle import loop_law
from skeinz.pipeline import (CONVENTION, PAIR_STATS, Convention, InvariantSeries, ResidueError,
                             SurgeryInput, _pair, bracket_source, casson, color_basis_matrix,
                             connected_sum, default_max_color, mirror_check, omega_coeffs,
                             pair_invariant, stabilize)
from skeinz.series import LaurentPoly, subst_Ainv

POINCARE6 = [1, -6, 45, -464, 6224, -102816]


def test_color_basis_matrix_is_chebyshev():
    u = sp.symbols("u")
    c = u - 2
    S = [sp.Integer(1), c]
    for _ in range(10):
        S.append(sp.expand(c * S[-1] - S[-2]))
    M = color_basis_matrix(9)
    for k in range(10):
        assert sp.expand(sum(M[k][n] * S[n] for n in range(10)) - u**k) == 0


def test_omega_window_and_validation():
    om = omega_coeffs(1, 6, 5)
    assert all(c.floor == -6 and c.cap == 5 for c in om.color_coeffs)
    assert len(om.color_coeffs) == 7
    with pytest.raises(ValueError):
        omega_coeffs(2, 6, 5)
    with pytest.raises(ValueError):
        omega_coeffs(1, -1, 5)


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("D", [6, 9, 16])
def test_unknot_pairing_is_one(eps, D):
    assert _pair(loop_law, eps, D, 6) == [1, 0, 0, 0, 0, 0]


def test_low_truncation_only_spoils_high_orders():
    got = _pair(loop_law, 1, 4, 6)
    assert got[:5] == [1, 0, 0, 0, 0] and got[5] != 0


def test_residue_is_detected():
    before = dict(PAIR_STATS)
    with pytest.raises(ResidueError) as info:
        _pair(lambda n: LaurentPoly.const(1), 1, 6, 4)
    assert min(info.value.residue) == -6
    assert PAIR_STATS["runs"] == before["runs"] + 1
    assert PAIR_STATS["residue_free"] == before["residue_free"]


def test_surgery_input_validation():
    K = builtin("trefoil")
    with pytest.raises(ValueError):
        SurgeryInput(K, 0, 6)
    with pytest.raises(ValueError):
        SurgeryInput(K, 1, 1)
    with pytest.raises(ValueError):
        SurgeryInput(K, 1, 6, -2)


def test_engine_selection():
    _, name = bracket_source(builtin("trefoil"))
    assert name == "channel"
    _, name = bracket_source(builtin("fig8"))
    assert name == "oracle"
    _, name = bracket_source(builtin("trefoil"), "oracle")
    assert name == "oracle"
    with pytest.raises(ValueError):
        bracket_source(builtin("fig8"), "channel")
    with pytest.raises(ValueError):
        bracket_source(builtin("fig8"), "magic")


def test_convention_application():
    K = builtin("trefoil")
    J0, _ = bracket_source(K, "oracle", convention=Convention())
    J1, _ = bracket_source(K, "oracle", convention=Convention(-1, 0))
    J2, _ = bracket_source(K, "oracle", convention=Convention(1, 1))
    assert J1(2) == J0(2).mirror()
    assert J2(2) == J0(2) * LaurentPoly.monomial(8)
    assert CONVENTION == Convention(-1, 0)


def test_default_max_color():
    assert default_max_color(builtin("trefoil"), "channel", 14) == 28
    assert default_max_color(builtin("trefoil"), "channel", 20) == 40
    assert default_max_color(builtin("fig8"), "oracle", 14, 20) == 5
    with pytest.raises(ValueError):
        default_max_color(builtin("fig8"), "oracle", 14, None)


def test_stabilize_short_poincare():
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, 6, None, "channel"))
    assert z.certified_order == 6
    assert list(z.coeffs) == POINCARE6
    assert z.runs == (28, 30, 32)
    assert z.h_series[:2] == (1, 24)
    assert z.format_h().startswith("1*h^0 + 24*h^1 + ")
    assert z.format_h().endswith("+ O(h^6)")


def test_single_pairing_is_uncertified():
    z = pair_invariant(SurgeryInput(builtin("trefoil"), 1, 6, 20, "channel"))
    assert z.certified_order == 0 and z.runs == (20,)
    assert list(z.coeffs) == POINCARE6


def test_small_truncation_limits_certification():
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, 8, 2, "channel"))
    assert 0 < z.certified_order < 8


def test_mirror_covariance_short():
    assert mirror_check(builtin("trefoil"), 1, 6, "channel")
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, 6))
    zm = stabilize(SurgeryInput(builtin("trefoil-mirror"), -1, 6))
    assert tuple(subst_Ainv(list(z.h_series))) == zm.h_series
    assert list(zm.coeffs) == [1, 6, 39, 380, 4961, 80530]


def test_connected_sum_and_casson():
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, 6))
    one = stabilize(SurgeryInput(builtin("unknot"), 1, 6))
    assert connected_sum(z, one).h_series == z.h_series
    zz = connected_sum(z, z)
    assert zz.coeffs[1] == -12
    assert casson(z) == 1
    assert casson(zz) == 2
    with pytest.raises(ValueError):
        casson(InvariantSeries.from_h([1, 0, 0], 1))


def test_from_h_rejects_bad_constant():
    with pytest.raises(ArithmeticError):
        InvariantSeries.from_h([2, 0, 0], 3)


def test_brackets_go_through_the_cache(tmp_path):
    cache = BracketCache(tmp_path / "b.txt")
    K = KnotPresentation.from_braid((1, 1, 1), "trefoil-copy")
    z1 = stabilize(SurgeryInput(K, 1, 4, None, "channel"), cache=cache)
    assert len(cache) == 33
    again = BracketCache(tmp_path / "b.txt")
    z2 = stabilize(SurgeryInput(K, 1, 4, None, "channel"), cache=again)
    assert z1 == z2 and len(again) == 33
    assert list(z1.coeffs) == POINCARE6[:4]
