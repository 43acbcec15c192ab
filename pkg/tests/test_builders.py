import pytest

from helmcut.builders import (
    BuildError,
    LatticePath,
    cube_tetrahedra,
    cubes_to_complex,
    decode_point,
    domain_corpus,
    encode_point,
    lattice_link_complement,
    parse_lattice_paths,
    preset,
    preset_names,
    square_face_triangles,
    surface_shell,
    unknot_box,
)
from helmcut.complexes import boundary_subcomplex, euler_characteristic, surface_info
from helmcut.homology import betti_numbers, homology_groups

EXPECTED = {
    # preset -> (betti, boundary genus list)
    "ball": ((1, 0, 0, 0), (0,)),
    "solid_torus": ((1, 1, 0, 0), (1,)),
    "solid_torus_with_meridian_disk": ((1, 1, 0, 0), (1,)),
    "handlebody2": ((1, 2, 0, 0), (2,)),
    "shell": ((1, 0, 1, 0), (0, 0)),
    "torus_shell": ((1, 2, 1, 0), (1, 1)),
    "trefoil_mapping_torus": ((1, 1, 0, 0), (1,)),
    "trefoil_box": ((1, 1, 1, 0), (0, 1)),
    "hopf_box": ((1, 2, 2, 0), (0, 1, 1)),
}


def test_preset_names_catalog():
    assert sorted(EXPECTED) == preset_names()


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_preset_homology_and_boundary(name):
    betti, genera = EXPECTED[name]
    M = preset(name)
    assert betti_numbers(M.complex) == betti
    info = surface_info(boundary_subcomplex(M.complex))
    assert tuple(sorted(info.genus_list)) == tuple(sorted(genera))
    # domains of this corpus are torsion-free in every degree
    assert all(not g.torsion for g in homology_groups(M.complex))


def test_unknown_preset():
    with pytest.raises(BuildError):
        preset("nosuch")


def test_point_encoding_round_trip():
    for p in [(0, 0, 0), (-5, 7, 100), (55, -3, 2)]:
        assert decode_point(encode_point(p)) == p
    with pytest.raises(BuildError):
        encode_point((500, 0, 0))


def test_cube_tetrahedralization_is_compatible():
    # two adjacent cubes agree on the triangles of their shared face
    K = cubes_to_complex([(0, 0, 0), (1, 0, 0)])
    assert len(K.simplices(3)) == 12
    assert betti_numbers(K) == (1, 0, 0, 0)
    shared = square_face_triangles((0, 0, 0), 0)
    for t in shared:
        assert K.has_simplex(t)
        # interior triangles: two incident tetrahedra
        tets = [tet for tet in K.simplices(3) if set(t) <= set(tet)]
        assert len(tets) == 2
    assert len(cube_tetrahedra((3, 4, 5))) == 6


def test_lattice_path_parsing():
    paths = parse_lattice_paths("0,0,0; 1,0,0; 1,1,0; 0,1,0; 0,0,0\n# comment\n")
    assert len(paths) == 1 and paths[0].closed
    assert len(paths[0].points) == 4
    open_path = parse_lattice_paths("0,0,0; 1,0,0; 2,0,0")[0]
    assert not open_path.closed
    with pytest.raises(BuildError):
        parse_lattice_paths("0,0,0; 2,0,0; 0,0,0")  # non-unit step
    with pytest.raises(BuildError):
        parse_lattice_paths("0,0,0; 1,0,0; 0,0,0")  # repeated edge


def test_link_complement_marks_and_validation():
    M = unknot_box()
    assert set(M.marks) == {"outer", "tube_0"}
    assert surface_info(M.mark("outer")).genus_list == (0,)
    assert surface_info(M.mark("tube_0")).genus_list == (1,)
    assert betti_numbers(M.complex) == (1, 1, 1, 0)


def test_link_complement_rejects_touching_components():
    a = parse_lattice_paths("0,0,0; 1,0,0; 1,1,0; 0,1,0; 0,0,0")[0]
    b = parse_lattice_paths("0,0,2; 1,0,2; 1,1,2; 0,1,2; 0,0,2")[0]
    with pytest.raises(BuildError):
        lattice_link_complement([a, b])


def test_surface_shell_structure():
    M = surface_shell(2)
    assert euler_characteristic(M.complex) == 2 - 2 * 2  # chi(surface x interval)
    info = surface_info(boundary_subcomplex(M.complex))
    assert tuple(sorted(info.genus_list)) == (2, 2)
    assert betti_numbers(M.complex) == (1, 4, 1, 0)


def test_corpus_size_and_names_unique():
    corpus = domain_corpus()
    names = [n for n, _ in corpus]
    assert len(names) == len(set(names)) >= 10


def test_lattice_path_validation_direct():
    with pytest.raises(BuildError):
        LatticePath(((0, 0, 0),), closed=True)
    with pytest.raises(BuildError):
        LatticePath(((0, 0, 0), (1, 0, 0), (0, 0, 0)), closed=False)
