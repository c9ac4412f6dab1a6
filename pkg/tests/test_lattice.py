"""Lattice registry, norms, pairings, and enumeration completeness."""

from fractions import Fraction
from itertools import product

import pytest

from omfree.lattice import (
    UnknownLatticeError,
    enumerate_coset,
    gram_matrix,
    lattice,
    norm,
    pairing,
    pairing_counts,
)

D8_VEC = (4, 2, 3, 4, 1, 3, 2, 4)


def box_coset_norms(gram, rep, qmax, radius):
    """Independent oracle: brute-force box search over rep + Z^n."""
    n = len(gram)
    found = []
    for offs in product(range(-radius, radius + 1), repeat=n):
        vec = [Fraction(r) + o for r, o in zip(rep, offs)]
        q = sum(vec[i] * gram[i][j] * vec[j] for i in range(n) for j in range(n)) / 2
        if q <= qmax:
            found.append((tuple(vec), q))
    return sorted(found)


# ---------------------------------------------------------------------------
# registry and gram matrices


def test_gram_a1():
    assert gram_matrix("A1") == ((2,),)


def test_gram_e6_matches_printed_matrix():
    assert gram_matrix("E6") == (
        (2, 0, -1, 0, 0, 0),
        (0, 2, 0, -1, 0, 0),
        (-1, 0, 2, -1, 0, 0),
        (0, -1, -1, 2, -1, 0),
        (0, 0, 0, -1, 2, -1),
        (0, 0, 0, 0, -1, 2),
    )


def test_gram_d8_matches_printed_matrix():
    assert gram_matrix("D8") == (
        (2, -1, 0, 0, 0, 0, 0, 0),
        (-1, 2, -1, 0, 0, 0, 0, 0),
        (0, -1, 2, -1, 0, 0, 0, 0),
        (0, 0, -1, 2, -1, 0, 0, 0),
        (0, 0, 0, -1, 2, -1, 0, 0),
        (0, 0, 0, 0, -1, 2, -1, -1),
        (0, 0, 0, 0, 0, -1, 2, 0),
        (0, 0, 0, 0, 0, -1, 0, 2),
    )


def test_unknown_lattice():
    with pytest.raises(UnknownLatticeError):
        gram_matrix("Z26")


@pytest.mark.parametrize("name,det", [("A1", 2), ("A7", 8), ("D8", 4), ("E6", 3), ("E7", 2), ("4A1", 16)])
def test_discriminant_group_size_is_det(name, det):
    assert lattice(name).discriminant == det


# ---------------------------------------------------------------------------
# norms (acceptance criterion 8 values)


def test_norm_d8_vector():
    lat = lattice("D8")
    assert norm(lat, D8_VEC) == 24
    # v^T A v = 48
    total = sum(D8_VEC[i] * lat.gram[i][j] * D8_VEC[j] for i in range(8) for j in range(8))
    assert total == 48


def test_norm_e6_vector():
    assert norm(lattice("E6"), (3, 2, 0, 1, 1, 1)) == 12


def test_norm_e7_vector():
    assert norm(lattice("E7"), (3, 2, 0, 1, 1, 1, 1)) == 12


def test_norm_dimension_mismatch():
    with pytest.raises(ValueError):
        norm(lattice("E6"), (1, 2, 3))


# ---------------------------------------------------------------------------
# coset structure


def test_d8_coset_norms():
    lat = lattice("D8")
    norms = sorted(c.norm_mod1 for c in lat.cosets)
    assert norms == [0, 0, 0, Fraction(1, 2)]
    # minimal norms within each class: 0 for the zero class, 1 for the two
    # integer-norm classes, 1/2 for the half-norm class
    mins = {}
    for c in lat.cosets:
        vecs = enumerate_coset(lat, c, 2)
        nonzero = [q for v, q in vecs if any(x != 0 for x in v)]
        mins[c.index] = min(nonzero) if not c.is_zero() else 0
    assert mins[0] == 0 and mins[1] == 1 and mins[2] == 1 and mins[3] == Fraction(1, 2)


def test_e6_coset_norms():
    assert sorted(c.norm_mod1 for c in lattice("E6").cosets) == [0, Fraction(2, 3), Fraction(2, 3)]


def test_e7_coset_norms():
    assert sorted(c.norm_mod1 for c in lattice("E7").cosets) == [0, Fraction(3, 4)]


def test_cusp_orbits():
    assert lattice("D8").cusp_orbits == ((0,), (1, 2))
    assert lattice("E6").cusp_orbits == ((0,),)
    assert lattice("E7").cusp_orbits == ((0,),)


def test_coset_reps_are_dual_vectors():
    for name in ("D8", "E6", "E7", "A3"):
        lat = lattice(name)
        for c in lat.cosets:
            # gram . rep must be integral
            for i in range(lat.rank):
                val = sum(Fraction(lat.gram[i][j]) * c.rep[j] for j in range(lat.rank))
                assert val.denominator == 1


# ---------------------------------------------------------------------------
# enumeration


def test_enumerate_zero_coset_qmax_zero():
    lat = lattice("D8")
    assert enumerate_coset(lat, 0, 0) == [((Fraction(0),) * 8, Fraction(0))]


def test_enumerate_d8_roots():
    # zero vector plus the 112 roots
    lat = lattice("D8")
    assert len(enumerate_coset(lat, 0, 1)) == 113


def test_enumerate_nonzero_coset_min_norm():
    lat = lattice("D8")
    for c in lat.cosets[1:]:
        vecs = enumerate_coset(lat, c, 3)
        min_norm = min(q for _, q in vecs)
        assert all(q >= min_norm for _, q in vecs)


@pytest.mark.parametrize("name,qmax,radius", [("A2", 3, 4), ("2A1", 3, 4), ("A3", 2, 3)])
def test_enumeration_matches_box_oracle(name, qmax, radius):
    lat = lattice(name)
    for c in lat.cosets:
        got = enumerate_coset(lat, c, qmax)
        want = box_coset_norms(lat.gram, c.rep, Fraction(qmax), radius)
        assert got == want


def test_enumeration_is_duplicate_free():
    lat = lattice("E6")
    vecs = enumerate_coset(lat, 1, 3)
    assert len(vecs) == len({v for v, _ in vecs})


# ---------------------------------------------------------------------------
# pairing


def test_pairing_with_zero():
    lat = lattice("D8")
    assert pairing(lat, (0,) * 8, D8_VEC) == 0


def test_pairing_e1_with_reference_vector():
    lat = lattice("D8")
    e1 = (1, 0, 0, 0, 0, 0, 0, 0)
    assert pairing(lat, e1, D8_VEC) == 6


def test_pairing_cauchy_schwarz():
    lat = lattice("E6")
    v = (3, 2, 0, 1, 1, 1)
    qv = norm(lat, v)
    for c in lat.cosets:
        for vec, q in enumerate_coset(lat, c, 2):
            r = pairing(lat, vec, v)
            assert r * r <= 4 * q * qv


def test_pairing_non_integral_rejected():
    lat = lattice("A1")
    with pytest.raises(ValueError):
        pairing(lat, (Fraction(1, 3),), (1,))


# ---------------------------------------------------------------------------
# bulk counting path agrees with the exact reference enumeration


@pytest.mark.parametrize("name,vec,qmax", [
    ("D8", D8_VEC, 3),
    ("E6", (3, 2, 0, 1, 1, 1), 4),
    ("E6", (3, 2, 0, 1, 1, 1), Fraction(7, 2)),
    ("E7", (3, 2, 0, 1, 1, 1, 1), 4),
])
def test_pairing_counts_match_reference(name, vec, qmax):
    lat = lattice(name)
    for c in lat.cosets:
        den = c.denominator
        want = {}
        for v, q in enumerate_coset(lat, c, qmax):
            key = (int(2 * den * den * q), pairing(lat, v, vec))
            want[key] = want.get(key, 0) + 1
        got = pairing_counts(lat, c, vec, qmax)
        assert got == want


# ---------------------------------------------------------------------------
# classical vector counts (independent known values)


def test_root_counts():
    assert len(enumerate_coset(lattice("D8"), 0, 1)) - 1 == 112
    assert len(enumerate_coset(lattice("E7"), 0, 1)) - 1 == 126
    assert len(enumerate_coset(lattice("E6"), 0, 1)) - 1 == 72


def test_minuscule_coset_counts():
    # minimal vectors of the nonzero dual cosets: 27 for E6 (norm 2/3),
    # 56 for E7 (norm 3/4)
    e6 = lattice("E6")
    for c in e6.cosets[1:]:
        vecs = enumerate_coset(e6, c, Fraction(2, 3))
        assert len(vecs) == 27
    e7 = lattice("E7")
    nonzero = [c for c in e7.cosets if not c.is_zero()][0]
    assert len(enumerate_coset(e7, nonzero, Fraction(3, 4))) == 56


def test_bulk_counts_match_theta_coefficients():
    # D8 theta series: 112 vectors of scaled norm 2 (Q = 1), 1136 of Q = 2
    lat = lattice("D8")
    counts = pairing_counts(lat, 0, D8_VEC, 2)
    by_norm = {}
    for (s, r), c in counts.items():
        by_norm[s] = by_norm.get(s, 0) + c
    assert by_norm[2] == 112
    assert by_norm[4] == 1136


def test_bulk_counts_match_reference_midscale():
    lat = lattice("E6")
    vec = (3, 2, 0, 1, 1, 1)
    for c in lat.cosets:
        den = c.denominator
        want = {}
        for v, q in enumerate_coset(lat, c, 8):
            key = (int(2 * den * den * q), pairing(lat, v, vec))
            want[key] = want.get(key, 0) + 1
        assert pairing_counts(lat, c, vec, 8) == want
