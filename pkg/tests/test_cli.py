import re

import pytest

from skeinz.cache import CACHE_ENV, BracketCache
from skeinz.cli import main, parse_diagram_file
from skeinz.oracle import colored_bracket
from skeinz.diagram import builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_output_shape(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "trefoil", "--surgery", "+1", "--order", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == ["a[0] = 1/1", "a[1] = -6/1", "a[2] = 45/1", "a[3] = -464/1", "a[4] = 6224/1"]
    assert lines[5].startswith("h-series: 1*h^0 + 24*h^1")
    assert lines[6] == "certified-order: 5"


def test_compute_reports_capped_certification(capsys):
    code, out, err = run(capsys, "compute", "--knot", "fig8", "--surgery", "+1", "--order", "6",
                         "--engine", "oracle")
    assert code == 0
    assert "a[1] = 6/1" in out and "a[2] = 63/1" in out
    m = int(re.search(r"certified-order: (\d+)", out).group(1))
    assert 3 <= m < 6
    assert "capped" in err


def test_compute_braid_input(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "braid:1", "1", "1", "--surgery", "-1", "--order", "3")
    assert code == 0
    assert out.splitlines()[:3] == ["a[0] = 1/1", "a[1] = 6/1", "a[2] = 63/1"]


@pytest.mark.parametrize("argv", [
    ["compute", "--knot", "nope", "--surgery", "+1", "--order", "4"],
    ["compute", "--knot", "trefoil", "--surgery", "2", "--order", "4"],
    ["compute", "--knot", "trefoil", "--surgery", "+1", "--order", "1"],
    ["compute", "--knot", "braid:1", "1", "--surgery", "+1", "--order", "4"],
    ["compute", "--knot", "fig8", "--surgery", "+1", "--order", "4", "--engine", "channel"],
    ["jones", "--knot", "trefoil", "--color", "-1"],
    ["bracket", "--diagram", "/no/such/file"],
    ["frobnicate"],
])
def test_invalid_input_exit_code(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 4


def test_capacity_exit_code(capsys):
    code, _, err = run(capsys, "jones", "--knot", "trefoil", "--color", "3", "--max-width", "8")
    assert code == 2 and "capacity" in err
    code, _, _ = run(capsys, "--max-width", "8", "bracket", "--diagram", "braid:1", "2", "3", "4")
    assert code == 2


def test_bracket_command(capsys, tmp_path):
    code, out, _ = run(capsys, "bracket", "--diagram", "braid:1", "1", "1")
    assert code == 0 and out.strip() == "-9:-1,-1:1,3:1,7:1"
    f = tmp_path / "hopf.txt"
    f.write_text("# hopf link\ncup 0\ncup 2\ncross 1 +1\ncross 1 1\ncap 2\ncap 0\n")
    # the inner strands cross twice: a Hopf link
    code, out, _ = run(capsys, "bracket", "--diagram", str(f))
    assert code == 0 and out.strip() == "-6:1,-2:1,2:1,6:1"
    f.write_text("cup 0\n")
    assert run(capsys, "bracket", "--diagram", str(f))[0] == 4
    f.write_text("twist 0\n")
    assert run(capsys, "bracket", "--diagram", str(f))[0] == 4


def test_diagram_file_parser(tmp_path):
    f = tmp_path / "d.txt"
    f.write_text("cup 0\ncup 0\ne 1\ncap 1\ncap 0\n")
    assert parse_diagram_file(f).is_closed


def test_jones_command_and_cache_roundtrip(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "jones", "--knot", "trefoil", "--color", "0")
    assert code == 0 and out.strip() == "0:1"
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    code, out, _ = run(capsys, "jones", "--knot", "trefoil", "--color", "2")
    assert code == 0
    record = (tmp_path / "brackets.txt").read_text().strip()
    assert record.startswith("knot=trefoil n=2 framing=0 poly=")
    cached = BracketCache(tmp_path / "brackets.txt").get("trefoil", 2)
    assert cached.format_pairs() == out.strip()
    assert cached == colored_bracket(builtin("trefoil"), 2)
    # a second call is served from the file
    code, again, _ = run(capsys, "jones", "--knot", "trefoil", "--color", "2")
    assert again == out
    code, info, _ = run(capsys, "cache-info")
    assert code == 0
    assert f"path: {tmp_path / 'brackets.txt'}" in info
    assert "records: 1" in info and "knot=trefoil colors=2" in info


def test_jones_channel_engine_agrees(capsys):
    _, a, _ = run(capsys, "jones", "--knot", "trefoil", "--color", "3")
    _, b, _ = run(capsys, "jones", "--knot", "trefoil", "--color", "3", "--engine", "channel")
    assert a == b


def test_cache_info_without_cache(capsys):
    code, out, _ = run(capsys, "cache-info")
    assert code == 0 and CACHE_ENV in out


def test_channels_command(capsys):
    code, out, _ = run(capsys, "channels", "--max-n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# texp = ")
    assert lines[1:] == ["n=0 c=0 sign=+1 texp=0", "n=1 c=0 sign=-1 texp=-3", "n=1 c=2 sign=+1 texp=1",
                         "n=2 c=0 sign=+1 texp=-8", "n=2 c=2 sign=-1 texp=-4", "n=2 c=4 sign=+1 texp=4"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    import skeinz.verify as verify

    monkeypatch.setitem(verify.SUITES, "paper-table", lambda: iter([("forced", False, "")]))
    code, out, _ = run(capsys, "verify", "--suite", "paper-table")
    assert code == 1 and "FAIL forced" in out


def test_residue_exit_code(capsys, monkeypatch):
    import skeinz.cli as cli
    from skeinz.pipeline import ResidueError

    def boom(*a, **k):
        raise ResidueError({-1: 1})

    monkeypatch.setattr(cli, "stabilize", boom)
    code, _, err = run(capsys, "compute", "--knot", "trefoil", "--surgery", "+1", "--order", "4")
    assert code == 3 and "residue" in err
