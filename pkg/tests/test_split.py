from conftest import mat

from exact.matrices import power, same
from tdpair.split import check_split_bijectivity, check_split_relations, compute_split


def test_split_of_two_dimensional_system(kraw1, split1):
    assert same(split1.F[0], mat([[1, 1], [0, 0]]))
    assert same(split1.F[1], mat([[0, -1], [0, 1]]))
    assert same(split1.lowering, mat([[0, -2], [0, 0]]))
    assert same(split1.raising, mat([[-1, -1], [1, 1]]))
    assert same(split1.psi, mat([[1, -1], [0, 1]]))
    assert same(split1.psi * split1.psi_inv, mat([[1, 0], [0, 1]]))


def test_split_dimensions_follow_shape(kraw3):
    system, _ = kraw3
    split = compute_split(system)
    assert [W.dim for W in split.U] == list(system.shape)
    assert power(split.raising, system.d + 1).is_zero_matrix


def test_split_relations_hold(kraw2, kraw3_gf):
    for system, _ in (kraw2, kraw3_gf):
        residuals = check_split_relations(system)
        assert all(r.is_zero for r in residuals), [(r.label, r.index) for r in residuals if not r.is_zero]


def test_bijectivity_ranks(kraw3):
    table = check_split_bijectivity(kraw3[0])
    assert table and all(entry.ok for entry in table)
    assert {entry.label for entry in table} == {"Rs^(j-i) F_i", "Ls^(j-i) F_j"}
