import pytest

from skeinz.diagram import (BUILTIN_KNOTS, Cap, Cross, Cup, KnotPresentation, Proj, SliceDiagram,
                            TLGen, braid_closure, builtin, cable, colored_diagram,
                            parse_braid_word, plat_closure)


def test_widths_and_closure():
    d = braid_closure([1, 1, 1])
    assert d.widths[0] == 0 and d.widths[-1] == 0
    assert d.max_width == 4
    assert d.is_closed
    assert d.crossings == 3
    assert d.mirror().mirror() == d


def test_event_validation():
    with pytest.raises(ValueError):
        SliceDiagram([Cap(0)])
    with pytest.raises(ValueError):
        SliceDiagram([Cup(0), Cross(0, 2), Cap(0)])
    with pytest.raises(ValueError):
        SliceDiagram([Cup(2)])
    with pytest.raises(TypeError):
        SliceDiagram(["cup"])
    with pytest.raises(ValueError):
        SliceDiagram([Cup(0), Proj(0, 3)])


@pytest.mark.parametrize("name,writhe,comps", [
    ("unknot", 0, 1), ("trefoil", 3, 1), ("trefoil-mirror", -3, 1), ("fig8", 0, 1), ("fig8-braid", 0, 1),
])
def test_builtins(name, writhe, comps):
    K = builtin(name)
    assert K.writhe == writhe
    assert K.num_components == comps
    assert K.diagram.is_closed


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin("nope")
    assert set(BUILTIN_KNOTS) >= {"unknot", "trefoil", "trefoil-mirror", "fig8"}


def test_writhe_orientation_independent_of_slicing():
    # Hopf link as a braid closure: both crossings positive
    assert braid_closure([1, 1]).writhe() == 2
    assert len(braid_closure([1, 1]).components()) == 2
    # a kink drawn with a cup/cap pair
    kink = SliceDiagram([Cup(0), Cross(0, -1), Cap(0)])
    assert kink.writhe() == 1
    assert SliceDiagram([Cup(0), Cross(0, 1), Cap(0)]).writhe() == -1


def test_declared_writhe_is_checked():
    with pytest.raises(ValueError):
        KnotPresentation("bad", braid_closure([1, 1, 1]), "trace", 1)
    with pytest.raises(ValueError):
        KnotPresentation("bad", braid_closure([1, 1, 1]), "torus", 3)


def test_mirror_presentation():
    K = builtin("trefoil").mirror()
    assert K.writhe == -3
    assert K.braid == (-1, -1, -1)
    assert K.diagram == builtin("trefoil-mirror").diagram


def test_plat_closure():
    d = plat_closure((2, -1, 2, 2), 4)
    assert d.is_closed and d.max_width == 4 and d.crossings == 4
    with pytest.raises(ValueError):
        plat_closure((1,), 3)
    with pytest.raises(ValueError):
        plat_closure((4,), 4)


def test_cable_counts():
    d = braid_closure([1, 1, 1])
    c = cable(d, 3)
    assert c.crossings == 27
    assert c.max_width == 12
    assert c.writhe() == 27
    assert len(c.components()) == 3
    with pytest.raises(ValueError):
        cable(d, 0)


def test_colored_diagram_inserts_one_projector_per_component():
    d = braid_closure([1, 1])
    cd = colored_diagram(d, 2)
    projs = [ev for ev in cd.events if isinstance(ev, Proj)]
    assert len(projs) == 2 and all(p.n == 2 for p in projs)
    cd = colored_diagram(builtin("trefoil").diagram, 3, placement="max-width", copies=2)
    assert sum(isinstance(ev, Proj) for ev in cd.events) == 2
    with pytest.raises(ValueError):
        colored_diagram(d, 0)
    with pytest.raises(ValueError):
        colored_diagram(d, 2, placement="middle")
    with pytest.raises(ValueError):
        cable(SliceDiagram([Cup(0), Cup(0), TLGen(1), Cap(1), Cap(0)]), 2)


@pytest.mark.parametrize("text,word", [("1 -2 1", (1, -2, 1)), ("1,1,1", (1, 1, 1)), (" 3 ", (3,))])
def test_parse_braid_word(text, word):
    assert parse_braid_word(text) == word


@pytest.mark.parametrize("text", ["", "1 0", "a b"])
def test_parse_braid_word_rejects(text):
    with pytest.raises(ValueError):
        parse_braid_word(text)
