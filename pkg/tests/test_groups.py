import pytest
from hypothesis import given
from hypothesis import strategies as st

from toruskt.exactmat import FGAbelianGroup, ZMatrix
from toruskt.groups import (
    GroupPresentation,
    abelianization,
    commutator,
    commutator_closed_form,
    dn_presentation,
    embed,
    embed_gamma_exponents,
    g_alpha,
    gamma_presentation,
    inverse,
    multiply,
)


@st.composite
def furstenberg_exponents(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    b = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if j == i + 1:
                b[(i, j)] = draw(st.integers(-4, 4).filter(bool))
            else:
                b[(i, j)] = draw(st.integers(-4, 4))
    return n, b


@st.composite
def dn_elements(draw, n):
    D = dn_presentation(n)
    vecs = st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1)
    return [D.element(draw(vecs), draw(st.integers(-3, 3))) for _ in range(3)], D


@pytest.mark.parametrize("n", range(1, 9))
def test_dn_relations(n):
    D = dn_presentation(n)
    x, y = D.shift_generator(), [D.lattice_generator(j) for j in range(n + 1)]
    e = D.identity()
    assert commutator(x, y[0]) == e
    for j in range(1, n + 1):
        assert commutator(x, y[j]) == y[j - 1]
    for a in y:
        for b in y:
            assert commutator(a, b) == e


@pytest.mark.parametrize("n", range(1, 9))
def test_dn_abelianization(n):
    assert abelianization(dn_presentation(n)) == FGAbelianGroup(2)


@given(st.integers(1, 5).flatmap(dn_elements))
def test_group_axioms(data):
    (a, b, c), D = data
    e = D.identity()
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * inverse(a) == e == inverse(a) * a
    assert multiply(a, b) == a * b


@given(st.integers(1, 5).flatmap(dn_elements))
def test_commutator_closed_form_on_lattice(data):
    (a, b, _), D = data
    u = D.element(a.vector, 0)
    assert commutator(D.shift_generator(), u) == commutator_closed_form(D.shift_generator(), u)
    # closed form for two pure translations and for x^k against a translation
    xk = D.element((0,) * D.m, a.shift)
    assert commutator(xk, u) == commutator_closed_form(xk, u)


def test_mixed_parents_rejected():
    D1, D2 = dn_presentation(2), dn_presentation(2)
    with pytest.raises(ValueError):
        D1.identity() * D2.identity()


def test_presentation_needs_unimodular():
    with pytest.raises(ValueError):
        GroupPresentation(ZMatrix.from_rows([[2, 0], [0, 1]]))


def test_g_alpha_shape():
    G = g_alpha({"1,2": 3, "1,3": 5, "2,3": 7}, 3)
    assert G.to_lists() == [[1, 1, 0, 0], [0, 1, 3, 5], [0, 0, 1, 7], [0, 0, 0, 1]]


def test_gamma_relations_follow_exponents():
    b = {(1, 2): 2, (1, 3): -1, (2, 3): 3}
    G = gamma_presentation(b, 3)
    x, y = G.shift_generator(), [G.lattice_generator(j) for j in range(4)]
    assert commutator(x, y[1]) == y[0]
    assert commutator(x, y[2]) == G.element((0, 2, 0, 0))
    assert commutator(x, y[3]) == G.element((0, -1, 3, 0))


def test_embedding_examples():
    # iota(y'_2) = y_2^{b12} and iota(y'_3) = y_2^{b13} y_3^{b12 b23}
    b12, b13, b23 = 2, 5, -3
    C = embed_gamma_exponents({(1, 2): b12, (1, 3): b13, (2, 3): b23}, 3)
    assert C.col(0) == (1, 0, 0, 0)
    assert C.col(1) == (0, 1, 0, 0)
    assert C.col(2) == (0, 0, b12, 0)
    assert C.col(3) == (0, 0, b13, b12 * b23)


def test_embedding_fourth_column():
    b = {(1, 2): 2, (1, 3): 1, (2, 3): 3, (1, 4): 4, (2, 4): -1, (3, 4): 5}
    C = embed_gamma_exponents(b, 4)
    # [x, iota(y'_4)] must equal iota(y'_1)^4 iota(y'_2)^-1 iota(y'_3)^5
    target = [4 * p - q + 5 * r for p, q, r in zip(C.col(1), C.col(2), C.col(3))]
    assert [0] + target[:4] == list(C.col(4))
    assert C[4, 4] == 2 * 3 * 5
    # closed form y_2^{b14} y_3^{b12 b24 + b13 b34} y_4^{b12 b23 b34}
    assert C.col(4) == (0, 0, 4, 2 * -1 + 1 * 5, 2 * 3 * 5)


@given(furstenberg_exponents())
def test_embedding_intertwines_actions(data):
    n, b = data
    C = embed_gamma_exponents(b, n)
    D = dn_presentation(n)
    assert C @ g_alpha(b, n) == D.G @ C
    assert all(C[i, j] == 0 for i in range(n + 1) for j in range(i))


@given(furstenberg_exponents(max_n=5))
def test_embedding_is_homomorphism_on_generators(data):
    n, b = data
    C = embed_gamma_exponents(b, n)
    G, D = gamma_presentation(b, n), dn_presentation(n)
    gens = G.generators()
    for g in gens:
        for h in gens:
            assert embed(g * h, C, D) == embed(g, C, D) * embed(h, C, D)
            assert embed(commutator(g, h), C, D) == commutator(embed(g, C, D), embed(h, C, D))


@given(furstenberg_exponents())
def test_embedding_is_injective(data):
    n, b = data
    assert embed_gamma_exponents(b, n).det() != 0
