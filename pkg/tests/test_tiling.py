import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from abelsplit.groups import FiniteAbelianGroup
from abelsplit.splitting import MultiplierSet, make_certificate, trivial_certificate
from abelsplit.tiling import (
    IntegerLattice,
    LatticeHom,
    column_hnf,
    error_ball,
    export_translates,
    kernel_lattice,
    lattice_from_splitting,
    semi_cross,
    verify_lattice_tiling,
    verify_tiling_by_basis,
)

Z = FiniteAbelianGroup.cyclic


def test_error_ball_examples():
    shape = error_ball(2, 1, 2, 0)
    assert set(shape.points) == {(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)}
    cube = error_ball(1, 1, 1, 1)
    assert set(cube.points) == {(-1,), (0,), (1,)}
    assert set(error_ball(3, 1, 1, 0).points) == {
        (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)
    }


def test_error_ball_full_cube_when_t_equals_n():
    shape = error_ball(2, 2, 1, 1)
    assert set(shape.points) == {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)}


def test_error_ball_cardinality_formula():
    from math import comb

    for n, t, kp, km in [(3, 2, 2, 1), (4, 1, 3, 0), (2, 2, 2, 2), (5, 3, 1, 1)]:
        shape = error_ball(n, t, kp, km)
        assert len(shape.points) == sum(
            comb(n, j) * (kp + km) ** j for j in range(t + 1)
        )
        assert len(set(shape.points)) == len(shape.points)


def test_error_ball_rejects_bad_parameters():
    with pytest.raises(ValueError):
        error_ball(1, 2, 1, 0)
    with pytest.raises(ValueError):
        error_ball(2, 1, 0, 1)
    with pytest.raises(ValueError):
        error_ball(2, 0, 1, 0)


def test_semi_cross_sizes():
    assert len(semi_cross(2, 2).points) == 5
    assert len(semi_cross(4, 1).points) == 5
    assert len(semi_cross(3, 4).points) == 13
    assert len(semi_cross(1, 3).points) == 4  # degenerate segment


def test_lattice_from_splitting_z5():
    cert = make_certificate(Z(5), MultiplierSet.interval(2), [(1,), (4,)])
    hom, lattice = lattice_from_splitting(cert)
    assert hom == LatticeHom(5, (1, 4))
    assert lattice.basis == ((5, 1), (0, 1))
    assert lattice.index == 5


def test_lattice_from_splitting_1dim():
    cert = trivial_certificate(3)
    hom, lattice = lattice_from_splitting(cert)
    assert lattice.basis == ((4,),)
    assert lattice.index == 4


def test_lattice_from_splitting_rejects_non_cyclic():
    g = FiniteAbelianGroup((2, 3))
    cert = make_certificate(g, MultiplierSet.interval(5), [(1, 1)])
    with pytest.raises(ValueError):
        lattice_from_splitting(cert)


def test_integer_lattice_validation():
    with pytest.raises(ValueError):
        IntegerLattice(((5, 7), (0, 1)))  # 7 not reduced mod 5
    with pytest.raises(ValueError):
        IntegerLattice(((5, 1), (1, 1)))  # not upper triangular
    with pytest.raises(ValueError):
        IntegerLattice(((0, 1), (0, 1)))  # nonpositive diagonal


@given(st.integers(2, 60), st.integers(1, 4), st.data())
def test_column_hnf_matches_kernel(n, dim, data):
    weights = tuple(data.draw(st.integers(0, n - 1)) for _ in range(dim))
    hom = LatticeHom(n, weights)
    lattice = kernel_lattice(hom)
    vectors = [
        tuple(data.draw(st.integers(-100, 100)) for _ in range(dim)) for _ in range(5)
    ]
    for v in vectors:
        assert lattice.contains(v) == (hom.apply(v) == 0)


def test_column_hnf_canonical_on_random_bases():
    rng = random.Random(11)
    for _ in range(40):
        dim = rng.randrange(1, 5)
        while True:
            cols = [[rng.randrange(-9, 10) for _ in range(dim)] for _ in range(dim)]
            det = sympy.Matrix(cols).T.det()
            if det != 0:
                break
        basis = column_hnf(cols)
        lattice = IntegerLattice(basis)  # constructor enforces the HNF shape
        assert lattice.index == abs(det)
        for col in cols:
            assert lattice.contains(col)


def test_verify_lattice_tiling_examples():
    shape = semi_cross(2, 2)
    assert verify_lattice_tiling(shape, LatticeHom(5, (1, 4))).verdict is True
    assert verify_lattice_tiling(shape, LatticeHom(5, (1, 2))).verdict is False
    with pytest.raises(ValueError):
        verify_lattice_tiling(shape, LatticeHom(5, (1, 2, 3)))


def test_verify_tiling_round_trip_for_certificates():
    for k, which in [(2, "order_2k_plus_1"), (3, "order_k_plus_1"), (12, "order_2k_plus_1")]:
        cert = trivial_certificate(k, which)
        hom, lattice = lattice_from_splitting(cert)
        shape = semi_cross(len(cert.splitters), k)
        assert verify_lattice_tiling(shape, hom).verdict is True
        assert verify_tiling_by_basis(shape, lattice).verdict is True


def test_snf_route_agrees_with_hom_route():
    shape = semi_cross(2, 2)
    for weights in [(1, 4), (1, 2), (2, 3), (1, 3)]:
        hom = LatticeHom(5, weights)
        direct = verify_lattice_tiling(shape, hom).verdict
        lattice = kernel_lattice(hom)
        if lattice.index == 5:
            assert verify_tiling_by_basis(shape, lattice).verdict == direct


def test_verify_tiling_by_basis_wrong_index():
    # index 4 lattice cannot tile with a 5-point shape
    lattice = IntegerLattice(((2, 0), (0, 2)))
    assert verify_tiling_by_basis(semi_cross(2, 2), lattice).verdict is False


def _brute_anchor_census(lattice, shape, box):
    """Assign every box cell to the unique lattice translate covering it."""
    anchors = set()
    dims = range(lattice.dimension)
    cells = []

    def walk(prefix):
        if len(prefix) == len(box):
            cells.append(tuple(prefix))
            return
        lo, hi = box[len(prefix)]
        for v in range(lo, hi + 1):
            walk(prefix + [v])

    walk([])
    for cell in cells:
        owners = [
            tuple(c - o for c, o in zip(cell, point))
            for point in shape.points
            if lattice.contains(tuple(c - o for c, o in zip(cell, point)))
        ]
        assert len(owners) == 1, (cell, owners)
        anchors.add(owners[0])
    return cells, anchors


def test_export_translates_z5_box():
    cert = make_certificate(Z(5), MultiplierSet.interval(2), [(1,), (4,)])
    hom, lattice = lattice_from_splitting(cert)
    shape = semi_cross(2, 2)
    box = [(0, 9), (0, 9)]
    translates = export_translates(lattice, shape, box)
    cells, anchors = _brute_anchor_census(lattice, shape, box)
    assert len(cells) == 100
    assert {a for a, _ in translates} == anchors
    assert len(translates) == len(anchors) == 28
    assert [a for a, _ in translates] == sorted(a for a, _ in translates)


def test_export_translates_1dim():
    cert = trivial_certificate(3)
    _, lattice = lattice_from_splitting(cert)
    translates = export_translates(lattice, semi_cross(1, 3), [(0, 7)])
    assert [a for a, _ in translates] == [(0,), (4,)]
    covered = {c for _, cells in translates for c in cells}
    assert covered == {(i,) for i in range(8)}


def test_export_translates_empty_box():
    cert = trivial_certificate(3)
    _, lattice = lattice_from_splitting(cert)
    assert export_translates(lattice, semi_cross(1, 3), [(3, 2)]) == []


def test_export_translates_rejects_non_tiling():
    lattice = IntegerLattice(((3,),))  # period 3 cannot carry a 4-cell segment
    with pytest.raises(ValueError):
        export_translates(lattice, semi_cross(1, 3), [(0, 5)])
