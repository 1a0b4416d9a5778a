import random

from skeinz.diagram import braid_closure
from skeinz.pipeline import InvariantSeries
from skeinz.reference import POINCARE, REFERENCE_ROWS, reference_row
from skeinz.series import expand_q4
from skeinz.verify import add_curl, finite_type_identity, random_braid, run_suite


def test_random_braid_letters_in_range():
    rng = random.Random(1)
    for _ in range(50):
        w = random_braid(rng, 4, 8)
        assert len(w) == 8 and all(1 <= abs(g) <= 3 for g in w)


def test_add_curl_changes_writhe_by_sign():
    d = braid_closure([1, 1, 1])
    assert add_curl(d, 3, 1, 1).writhe() - d.writhe() == 1
    assert add_curl(d, 3, 1, -1).writhe() - d.writhe() == -1


def test_finite_type_identity_rejects_wrong_casson():
    good = InvariantSeries.from_h(expand_q4([1, -6, 45, -464], 4), 4)
    bad = InvariantSeries.from_h(expand_q4([1, -12, 45, -464], 4), 4)
    assert finite_type_identity(good, 2)
    assert not finite_type_identity(bad, 1)


def test_reference_rows_shape():
    assert POINCARE == ("trefoil", 1)
    assert all(len(r) == 14 and r[0] == 1 for r in REFERENCE_ROWS.values())
    assert reference_row("fig8", 1) == reference_row("trefoil", -1)
    assert reference_row("fig8", -1) == reference_row("trefoil-mirror", 1)
    assert reference_row("unknot", 1) is None


def test_unknown_suite_is_reported():
    (name, ok, detail), = list(run_suite("nope"))
    assert not ok and "KeyError" in detail
