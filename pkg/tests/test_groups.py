import pytest

from latshell import (
    classify_modularity,
    is_solvable,
    left_modular_labeling,
    maximal_chains,
    min_chain_complexity,
    order_complex,
    skeleton_shellability_criterion,
    solvability_by_depth,
    subgroup_lattice,
    subgroups,
    thevenaz_check,
    verify_quasi_el,
)
from latshell import groups as gm
from latshell.errors import NotAPermutation, NotSolvable, OrderLimit
from latshell.labeling import stats_of_sequence


def test_group_from_generators():
    S3 = gm.group_from_generators(3, [(1, 0, 2), (1, 2, 0)])
    assert S3.order == 6
    A5 = gm.alternating(5)
    assert A5.order == 60
    trivial = gm.group_from_generators(4, [])
    assert trivial.order == 1
    with pytest.raises(NotAPermutation):
        gm.group_from_generators(3, [(0, 0, 1)])


def test_cycle_parsing():
    p = gm.parse_cycles("(1 2)(3 4)", 4)
    assert p == (1, 0, 3, 2)
    assert gm.parse_cycles("()", 3) == (0, 1, 2)
    with pytest.raises(NotAPermutation):
        gm.parse_cycles("(1 5)", 3)
    G = gm.parse_group_file("degree: 3\n(1 2)\n(1 2 3)\n")
    assert G.order == 6


def test_subgroup_counts():
    assert len(subgroups(gm.symmetric(3))) == 6
    assert len(subgroups(gm.symmetric(4))) == 30
    assert len(subgroups(gm.alternating(5))) == 59
    with pytest.raises(OrderLimit):
        subgroups(gm.symmetric(4), order_limit=10)


def test_subgroup_lattice_shapes(gl_s3, gl_a4):
    P = gl_s3.lattice.poset
    proper = [e for i, e in enumerate(P.elements)
              if i not in (P.bottom, P.top)]
    assert len(proper) == 4
    for a in proper:
        for b in proper:
            if a != b:
                assert not P.leq(a, b)

    assert len(gl_a4.names) == 10
    v4 = next(n for n, s in zip(gl_a4.names, gl_a4.subgroup_sets)
              if len(s) == 4)
    assert v4 in gl_a4.normal_names
    rep = classify_modularity(gl_a4.lattice, v4)
    assert rep.modular


def test_tiny_group_lattice():
    GL = subgroup_lattice(gm.cyclic(2))
    assert len(GL.names) == 2
    assert order_complex(GL.lattice.poset).is_empty
    assert GL.r == 1
    rep = solvability_by_depth(GL)
    assert rep.verdict == "solvable" and rep.depth_exact == -1 == GL.r - 2


def test_chief_series(gl_s3, gl_s4, gl_a5):
    orders = [len(gl_s3.subgroup_of(n)) for n in gl_s3.chief.elements]
    assert orders == [1, 3, 6]
    assert gl_s3.r == 2 and is_solvable(gl_s3.group)

    orders = [len(gl_s4.subgroup_of(n)) for n in gl_s4.chief.elements]
    assert orders == [1, 4, 12, 24]
    assert gl_s4.r == 3 and is_solvable(gl_s4.group)

    orders = [len(gl_a5.subgroup_of(n)) for n in gl_a5.chief.elements]
    assert orders == [1, 60]
    assert gl_a5.r == 1 and not is_solvable(gl_a5.group)


def test_normal_subgroups_are_modular(gl_s3, gl_a4, gl_s4):
    for GL in (gl_s3, gl_a4, gl_s4):
        for name in GL.normal_names:
            assert classify_modularity(GL.lattice, name).modular


def test_solvability_by_depth(gl_s3, gl_s4, gl_a5):
    rep = solvability_by_depth(gl_s4)
    assert rep.verdict == "solvable" and rep.agree
    assert rep.depth_exact == rep.r - 2 == 1

    rep = solvability_by_depth(gl_s3)
    assert rep.verdict == "solvable" and rep.depth_exact == 0

    rep = solvability_by_depth(gl_a5)
    assert rep.verdict == "nonsolvable" and rep.agree
    assert rep.skeleton_cm


def test_skeleton_shellability(gl_s4, gl_a5):
    rep = skeleton_shellability_criterion(gl_s4)
    assert not rep.pure and rep.verdict == "solvable" and rep.agree

    rep = skeleton_shellability_criterion(gl_a5)
    assert rep.pure and rep.shellable and rep.verdict == "nonsolvable"

    GL = subgroup_lattice(gm.klein_four())
    rep = skeleton_shellability_criterion(GL)
    assert not rep.pure and rep.verdict == "solvable" and rep.agree


def test_thevenaz(gl_s3, gl_a4, gl_a5):
    rep = thevenaz_check(gl_s3)
    assert rep.ok and rep.betti[0] == 3 == rep.complement_chain_refinements

    rep = thevenaz_check(gl_a4)
    assert rep.ok and rep.betti[0] == 4

    GL = subgroup_lattice(gm.cyclic(6))
    rep = thevenaz_check(GL)
    assert rep.ok and rep.betti[0] == 1 == rep.complement_chain_refinements

    with pytest.raises(NotSolvable):
        thevenaz_check(gl_a5)


def test_solvable_pipeline_pins_depth(gl_s3, gl_s4):
    # chief-series labeling is valid, its decomposition floor meets the
    # minimum chain length, so the depth is exactly r - 2
    for GL in (gl_s3, gl_s4):
        P = GL.lattice.poset
        lab = left_modular_labeling(GL.lattice, GL.chief)
        assert verify_quasi_el(P, lab).ok
        bound, _ = min_chain_complexity(P, lab)
        assert bound >= GL.r
        lo, _ = P.min_max_chain_covers()
        assert lo == GL.r  # minimum maximal-chain length of a solvable group
        rep = solvability_by_depth(GL)
        assert rep.depth_exact == GL.r - 2


def test_nonsolvable_chain_lengths_and_pigeonhole(gl_a5, gl_s5):
    for GL in (gl_a5, gl_s5):
        P = GL.lattice.poset
        lo, _ = P.min_max_chain_covers()
        assert lo >= GL.r + 2
        lab = left_modular_labeling(GL.lattice, GL.chief)
        bound, _ = min_chain_complexity(P, lab)
        assert bound >= GL.r + 1
        for c in maximal_chains(P):
            st = stats_of_sequence(c.elements, lab.sequence(c.elements))
            assert st.ell0 >= GL.r


def test_acyclic_solvable_groups_are_globally_trivial():
    # if everything vanishes up to r - 2 the complex is trivial everywhere
    from latshell.complexes import betti_numbers

    for G in (gm.symmetric(3), gm.symmetric(4), gm.alternating(4),
              gm.cyclic(6), gm.klein_four(), gm.dihedral(4),
              gm.cyclic(2), gm.cyclic(4), gm.cyclic(12)):
        GL = subgroup_lattice(G)
        betti = betti_numbers(order_complex(GL.lattice.poset))
        if all(betti.get(i, 0) == 0 for i in range(-1, GL.r - 1)):
            assert all(v == 0 for v in betti.values())
