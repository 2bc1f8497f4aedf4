import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopbraid.basis import dim_hom, enumerate_left_basis, enumerate_paired_basis

VAC, SIG, PSI = 0, 1, 2


def brute_paired_count(cat, x, y, z, n):
    """Count every label tuple (a, b) satisfying admissibility, without recursion."""
    k = cat.num_objects
    count = 0
    for a in itertools.product(range(k), repeat=n):
        if not all(cat.n(x, y, ai) for ai in a):
            continue
        for b in itertools.product(range(k), repeat=n):
            prev = cat.unit
            ok = b[-1] == z
            for ai, bi in zip(a, b):
                ok = ok and cat.n(prev, ai, bi) == 1
                prev = bi
            count += ok
    return count


def test_ising_paired_examples(ising_cat):
    basis = enumerate_paired_basis(ising_cat, SIG, SIG, VAC, 2)
    assert [t.a for t in basis] == [(VAC, VAC), (PSI, PSI)]
    basis = enumerate_paired_basis(ising_cat, SIG, SIG, PSI, 1)
    assert [t.a for t in basis] == [(PSI,)]


def test_ty_target_m_is_empty(ty2):
    m = ty2.id_of("m")
    assert len(enumerate_paired_basis(ty2, m, m, m, 2)) == 0


def test_left_examples(ising_cat, triv):
    basis = enumerate_left_basis(ising_cat, [SIG] * 4, VAC)
    assert len(basis) == 2
    assert sorted(t.internal[0] for t in basis) == [VAC, PSI]
    assert len(enumerate_left_basis(triv, [0, 0], 0)) == 1
    assert len(enumerate_left_basis(ising_cat, [SIG, SIG], PSI)) == 1


def test_dim_hom_examples(ising_cat, ty2):
    assert dim_hom(ising_cat, [SIG] * 6, VAC) == 4
    assert dim_hom(ising_cat, [SIG, SIG], SIG) == 0
    m = ty2.id_of("m")
    for n in (1, 2, 3, 4):
        assert dim_hom(ty2, [m, m] * n, ty2.unit) == 4 ** (n - 1)


def test_basis_dump(ising_cat):
    lines = enumerate_paired_basis(ising_cat, SIG, SIG, VAC, 2).dump(ising_cat)
    assert lines == ["0 a=(vac,vac) b=(vac,vac)", "1 a=(psi,psi) b=(psi,vac)"]


def test_errors(ising_cat):
    with pytest.raises(ValueError):
        enumerate_paired_basis(ising_cat, SIG, SIG, VAC, 0)
    with pytest.raises(ValueError):
        enumerate_left_basis(ising_cat, [], VAC)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_counts_agree(data, ising_cat, ty1, ty2, fib):
    cat = data.draw(st.sampled_from([ising_cat, ty1, ty2, fib]))
    k = cat.num_objects
    x, y, z = (data.draw(st.integers(0, k - 1)) for _ in range(3))
    n = data.draw(st.integers(1, 3))
    paired = enumerate_paired_basis(cat, x, y, z, n)
    left = enumerate_left_basis(cat, [x, y] * n, z)
    d = dim_hom(cat, [x, y] * n, z)
    assert len(paired) == len(left) == d
    assert len(paired) == brute_paired_count(cat, x, y, z, n)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_left_basis_matches_dim_hom(data, ising_cat, ty2, fib):
    cat = data.draw(st.sampled_from([ising_cat, ty2, fib]))
    k = cat.num_objects
    leaves = data.draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=6))
    z = data.draw(st.integers(0, k - 1))
    assert len(enumerate_left_basis(cat, leaves, z)) == dim_hom(cat, leaves, z)


def test_ordering_canonical_and_stable(ty2):
    m = ty2.id_of("m")
    b1 = enumerate_paired_basis(ty2, m, m, 1, 3)
    b2 = enumerate_paired_basis(ty2, m, m, 1, 3)
    assert b1 == b2
    keys = [(t.a, t.b) for t in b1]
    assert keys == sorted(keys)
    assert all(b1.index(t) == i for i, t in enumerate(b1))


def test_admissibility(ising_cat):
    for t in enumerate_paired_basis(ising_cat, SIG, SIG, PSI, 4):
        assert t.b[0] == t.a[0] and t.b[-1] == PSI
        for i in range(1, 4):
            assert ising_cat.n(t.b[i - 1], t.a[i], t.b[i]) == 1
