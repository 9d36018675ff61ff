import pytest

from bgg.cartan import (
    dot_action_simple,
    gcm_from_json,
    pairing,
    rho,
    simple_root_weight,
    symmetrizer,
    validate_gcm,
    weight,
)
from bgg.errors import GCMError, NotSymmetrizableError


def test_validate_accepts_a2():
    A = validate_gcm([[2, -1], [-1, 2]])
    assert A.rank == 2


def test_validate_accepts_affine():
    A = validate_gcm([[2, -2], [-2, 2]])
    assert A.entries == ((2, -2), (-2, 2))


def test_validate_rejects_asymmetric_zero_pattern():
    with pytest.raises(GCMError, match="zero pattern asymmetric"):
        validate_gcm([[2, -1], [0, 2]])


def test_validate_reports_every_violation():
    with pytest.raises(GCMError) as exc:
        validate_gcm([[1, 1], [0, 2]])
    msg = str(exc.value)
    assert "diagonal" in msg and "positive off-diagonal" in msg and "asymmetric" in msg


def test_validate_rejects_nonsquare():
    with pytest.raises(GCMError):
        validate_gcm([[2, -1]])


def test_gcm_json_roundtrip():
    A = validate_gcm([[2, -1], [-1, 2]])
    assert gcm_from_json(A.to_json()) == A
    with pytest.raises(GCMError):
        gcm_from_json({"rank": 3, "entries": [[2, -1], [-1, 2]]})


def test_symmetrizer_symmetric_matrix(A2):
    assert symmetrizer(A2) == (1, 1)


def test_symmetrizer_b2(B2):
    # d_0 * (-2) = d_1 * (-1) forces d = (1, 2)
    assert symmetrizer(B2) == (1, 2)


def test_symmetrizer_contradiction():
    A = validate_gcm([[2, -1, -1], [-1, 2, -1], [-2, -1, 2]])
    with pytest.raises(NotSymmetrizableError):
        symmetrizer(A)


def test_symmetrizer_defining_identity(A2, B2, AFF):
    for A in (A2, B2, AFF):
        d = symmetrizer(A)
        n = A.rank
        for i in range(n):
            for j in range(n):
                assert d[i] * A.entries[i][j] == d[j] * A.entries[j][i]
        assert all(x > 0 for x in d)


def test_dot_action_a1(A1):
    lam = weight((3,))
    assert dot_action_simple(A1, 0, lam) == weight((3,), (4,))


def test_dot_action_fixed_point(A2):
    lam = weight((-1, 5))
    assert dot_action_simple(A2, 0, lam) == lam


def test_dot_action_a2_example(A2):
    lam = weight((1, 1))
    assert dot_action_simple(A2, 0, lam).offset == (2, 0)


def test_dot_action_involution(A2, B2, AFF):
    for A in (A2, B2, AFF):
        for labels in [(0, 0), (1, 1), (2, 5), (-3, 1)]:
            for off in [(0, 0), (1, 2), (4, 1)]:
                lam = weight(labels, off)
                for i in range(A.rank):
                    assert dot_action_simple(A, i, dot_action_simple(A, i, lam)) == lam


def test_pairing_transpose_convention(A2, B2):
    # <alpha_j, alpha_i^vee> = a_ij: check both index orders explicitly
    for A in (A2, B2):
        for i in range(A.rank):
            for j in range(A.rank):
                assert pairing(A, simple_root_weight(A, j), i) == A.entries[i][j]
                assert pairing(A, simple_root_weight(A, i), j) == A.entries[j][i]


def test_rho_pairs_to_one(B2):
    for i in range(B2.rank):
        assert pairing(B2, rho(B2), i) == 1


def test_weight_json():
    w = weight((1, 2), (0, 3))
    assert w.to_json() == {"labels": [1, 2], "offset": [0, 3]}
