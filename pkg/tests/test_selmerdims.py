import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckbounds.curvemodel import Generic, HyperellipticEven, PuncturedLine, Superelliptic, invariants
from ckbounds.selmerdims import (
    ASSUMED_BLOCH_KATO,
    ASSUMED_SHA,
    ArithmeticInputs,
    GradedPieceDims,
    InputInconsistency,
    QuotientDescriptor,
    QuotientKind,
    artin_tate_dims,
    build_quotient,
    cuspidal_inertia_dims,
    poitou_tate_dim,
    tate_module_dims,
    wedge_square_dims,
)

TPL = invariants(PuncturedLine.rational([0, 1]))
HYP_NEG = invariants(HyperellipticEven((1, 1, 0, 0, 0, 0, -1)))


def dims(piece):
    return piece.dim_global, piece.dim_local


def test_tate_module():
    assert dims(tate_module_dims(0, 0)) == (0, 0)
    assert dims(tate_module_dims(2, 2)) == (2, 2)
    assert dims(tate_module_dims(3, 1)) == (1, 3)


def test_cuspidal_inertia():
    assert dims(cuspidal_inertia_dims(TPL)) == (0, 2)
    assert dims(cuspidal_inertia_dims(invariants(Superelliptic(2, (1, 0, 0, 0, 0, 1))))) == (0, 0)
    assert dims(cuspidal_inertia_dims(HYP_NEG)) == (0, 1)


def test_artin_tate():
    assert artin_tate_dims(0, 0, 0) == (0, 0)
    assert artin_tate_dims(1, 1, 0) == (0, 1)
    assert artin_tate_dims(3, 1, 2) == (0, 3)
    with pytest.raises(InputInconsistency):
        artin_tate_dims(1, 2, 0)


def test_wedge_square():
    assert wedge_square_dims(0, 0, 0) == (0, 0)
    assert wedge_square_dims(2, 1, 0) == (2, 5)
    assert wedge_square_dims(1, 1, 0) == (0, 1)
    with pytest.raises(InputInconsistency):
        wedge_square_dims(1, 2, 0)
    with pytest.raises(InputInconsistency):
        wedge_square_dims(2, 0, 0)


def test_poitou_tate_examples():
    assert poitou_tate_dim(0, 0, 0, 0, 0) == 0
    assert poitou_tate_dim(0, 0, 1, 5, 2) == 2 == wedge_square_dims(2, 1, 0)[0]
    for dim_w in range(5):
        for h0 in range(dim_w + 1):
            for fixed in range(dim_w - h0 + 1):
                glob, loc = artin_tate_dims(dim_w, h0, fixed)
                assert poitou_tate_dim(0, 0, h0, loc, fixed) == glob


@given(st.integers(0, 6), st.data())
def test_poitou_tate_reproduces_wedge_square(g, data):
    rho = data.draw(st.integers(1 if g else 0, max(g * g, 0)))
    hbk = data.draw(st.integers(0, 3))
    want = g * (g + 1) // 2 - rho + hbk
    got = poitou_tate_dim(0, hbk, rho, g * (3 * g - 1) // 2, g * (g - 1))
    assert got == want
    if want >= 0:
        assert wedge_square_dims(g, rho, hbk)[0] == got


def test_build_quotient_examples():
    a0 = ArithmeticInputs(r=0, rho=0, r_p=0, h_BK=0)
    ab = build_quotient("ab", TPL, a0)
    assert [dims(p) for p in ab.pieces] == [(0, 0), (0, 2)]
    hyp = ArithmeticInputs(r=2, rho=1, r_p=2, rho_f=1, rho_geo=1)
    at = build_quotient(QuotientKind.ABELIAN_BY_ARTIN_TATE, HYP_NEG, hyp)
    assert [dims(p) for p in at.pieces] == [(2, 2), (0, 2)]
    w2 = build_quotient(QuotientKind.FULL_WEIGHT_TWO, TPL, a0)
    assert [dims(p) for p in w2.pieces] == [(0, 0), (0, 2)]


arith_inputs = st.builds(
    lambda r, extra, rho, df, dg, h: (r, r + extra, rho, rho + df, rho + df + dg, h),
    st.integers(0, 5), st.integers(0, 3), st.integers(1, 4),
    st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2), arith_inputs)
def test_descriptor_properties(g, n1, n2, a):
    inv = Generic(g, n1 + 2 * n2, n1, n2, max(1, n1 + n2 - 1))
    inv = invariants(inv)
    r, rp, rho, rho_f, rho_geo, h = a
    arith = ArithmeticInputs(r=r, rho=rho, r_p=rp, rho_f=rho_f, rho_geo=rho_geo, h_BK=h)
    at = build_quotient("abat", inv, arith)
    ab = build_quotient("ab", inv, arith)
    assert at.piece(-2).dim_global == (inv.n1 + inv.n2 - inv.d_closed) + (rho_geo - rho_f)
    try:
        w2 = build_quotient("w2", inv, arith)
    except InputInconsistency:
        assert g * (g + 1) // 2 - rho + h < 0
        return
    assert w2.piece(-2).dim_local - ab.piece(-2).dim_local == g * (3 * g - 1) // 2
    for d in (ab, at, w2):
        assert all(p.dim_global >= 0 and p.dim_local >= 0 for p in d.pieces)


def test_defaults_and_flags():
    a = ArithmeticInputs(r=1, rho=1)
    assert a.rank_p == 1 and a.hbk == 0 and a.picard_f == 1 and a.picard_geo == 1
    assert a.conditional_flags == {ASSUMED_SHA, ASSUMED_BLOCH_KATO}
    assert len(a.defaults_used()) == 4
    b = ArithmeticInputs(r=1, rho=1, r_p=2, h_BK=0)
    assert b.conditional_flags == frozenset()


@pytest.mark.parametrize(
    "kwargs, g",
    [
        (dict(r=2, rho=1, r_p=1), 2),
        (dict(r=0, rho=2, rho_f=1), 2),
        (dict(r=0, rho=1, rho_f=3, rho_geo=2), 2),
        (dict(r=0, rho=0), 1),
        (dict(r=1, rho=0), 0),
        (dict(r=-1, rho=1), 1),
    ],
)
def test_inconsistent_arithmetic(kwargs, g):
    with pytest.raises(InputInconsistency):
        ArithmeticInputs(**kwargs).check(g)


def test_descriptor_shape_checks():
    w1 = GradedPieceDims(-1, 0, 0)
    with pytest.raises(ValueError):
        QuotientDescriptor(QuotientKind.ABELIANIZED, (w1,))
    with pytest.raises(ValueError):
        GradedPieceDims(-3, 0, 0)
    with pytest.raises(InputInconsistency):
        GradedPieceDims(-2, -1, 0)
