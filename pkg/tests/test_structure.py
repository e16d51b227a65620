from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import monic_qpolys, rationals
from preplab.arith import BiPoly, DensePoly, Ring
from preplab.errors import ContractError, FieldObstructionError, ResourceError
from preplab.family import Family, specialize_line
from preplab.instances import random_line_instance, rng_for
from preplab.lines import build_line
from preplab.structure import (Exceptional, LinearMap, chebyshev, commutes, compositional_root,
                               is_exceptional, linear_commutant, to_normal_form)

X = DensePoly.identity()
F = Fraction


def reference_g():
    return specialize_line(Family(4, 3), build_line((1, 2), (1, 2), 4))


def sympy_chebyshev(d):
    # 2*T_d(w/2) in the usual normalisation
    w = sp.Symbol("w")
    expr = sp.expand(2 * sp.chebyshevt(d, w / 2))
    return DensePoly([F(str(c)) for c in sp.Poly(expr, w).all_coeffs()[::-1]])


@pytest.mark.parametrize("d", range(1, 17))
def test_chebyshev_matches_sympy(d):
    assert chebyshev(d) == sympy_chebyshev(d)


def test_chebyshev_small():
    assert chebyshev(2) == X ** 2 - 2
    assert chebyshev(3) == X ** 3 - 3 * X
    assert chebyshev(4) == X ** 4 - 4 * X ** 2 + 2


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 6) for b in range(1, 6)])
def test_chebyshev_composition(a, b):
    assert chebyshev(a)(chebyshev(b)) == chebyshev(a * b)


def test_normal_form_examples():
    mu, g = to_normal_form(X ** 2 + 2 * X)
    assert g == X ** 2 and mu == LinearMap(F(1), F(-1))
    mu, g = to_normal_form(4 * X ** 3 + 1)
    assert g.is_normal_form() and mu.a == F(1, 2)
    with pytest.raises(FieldObstructionError) as err:
        to_normal_form(8 * X ** 3 + 1)
    assert err.value.root_degree == 2


def test_normal_form_over_c():
    mu, g = to_normal_form(DensePoly([1, 0, 2j], Ring.C))
    assert abs(g[2] - 1) < 1e-12 and abs(g[1]) < 1e-12


@given(monic_qpolys(2, 5), rationals.filter(bool), rationals)
def test_normal_form_of_a_conjugate(g, a, b):
    # nu^{-1} o g o nu with nu = a z + b, scaled back to lead 1/a^(d-1)
    f = LinearMap(a, b).conjugate(g)
    try:
        mu, ghat = to_normal_form(f)
    except FieldObstructionError:
        return
    assert ghat.is_normal_form()
    assert mu.conjugate(f) == ghat
    assert to_normal_form(ghat) == (LinearMap(F(1), F(0)), ghat)


@pytest.mark.parametrize("g,kind,rational", [
    (X ** 3, Exceptional.POWER_MAP, True),
    (chebyshev(4), Exceptional.PLUS_CHEBYSHEV, True),
    (-chebyshev(3), None, None),
    (X ** 3 + 3 * X, Exceptional.MINUS_CHEBYSHEV, False),
    (X ** 3 - 3 * X, Exceptional.PLUS_CHEBYSHEV, True),
    (X ** 2 - 2, Exceptional.PLUS_CHEBYSHEV, True),
    (X ** 2 + 2, Exceptional.NOT_EXCEPTIONAL, True),
    (X ** 2 - 1, Exceptional.NOT_EXCEPTIONAL, True),
    (X ** 4 + X, Exceptional.NOT_EXCEPTIONAL, True),
])
def test_is_exceptional(g, kind, rational):
    if kind is None:
        with pytest.raises(ContractError):
            is_exceptional(g)
        return
    v = is_exceptional(g)
    assert v.kind is kind and v.rational is rational
    if kind is not Exceptional.NOT_EXCEPTIONAL and rational:
        model = {Exceptional.POWER_MAP: DensePoly.monomial(g.degree),
                 Exceptional.PLUS_CHEBYSHEV: chebyshev(g.degree),
                 Exceptional.MINUS_CHEBYSHEV: -chebyshev(g.degree)}[kind]
        assert v.witness.conjugate(g) == model


def test_exceptional_complex_witness():
    v = is_exceptional(X ** 3 + 3 * X)
    assert v.undecided_over_rationals
    k, n = v.zeta
    assert (k, n) in ((1, 4), (3, 4))
    # numeric confirmation of the complex conjugacy
    gc = (X ** 3 + 3 * X).to_complex()
    conj = v.witness.conjugate(gc)
    model = (-chebyshev(3)).to_complex()
    assert all(abs(conj[i] - model[i]) < 1e-12 for i in range(4))


def test_line_bipoly_is_not_exceptional():
    assert is_exceptional(reference_g()).kind is Exceptional.NOT_EXCEPTIONAL


def test_commutes():
    assert commutes(chebyshev(2), chebyshev(3))
    assert not commutes(X ** 2 + 1, X ** 2)
    assert commutes(-X, X ** 3, 1)
    assert commutes(-X, X ** 2 - 2, 2) is False
    with pytest.raises(ResourceError):
        commutes(X, X ** 10, 5, deg_cap=1000)


def test_linear_commutant_examples():
    assert linear_commutant(X ** 3, 1) == [LinearMap(F(1), F(0)), LinearMap(F(-1), F(0))]
    assert linear_commutant(X ** 2, 2) == [LinearMap(F(1), F(0))]
    assert linear_commutant(chebyshev(3), 2) == [LinearMap(F(1), F(0)), LinearMap(F(-1), F(0))]
    assert linear_commutant(reference_g(), 2) == [LinearMap(F(1), F(0))]


def test_linear_commutant_needs_normal_form():
    with pytest.raises(ContractError):
        linear_commutant(2 * X ** 2, 1)


@pytest.mark.parametrize("i", range(15))
def test_linear_commutant_of_lines_is_trivial(i):
    inst = random_line_instance(rng_for(8, "commutant", i), 3, 5)
    g = specialize_line(Family(inst.d, inst.m), build_line(inst.c, inst.sigma, inst.d))
    found = linear_commutant(g, 2)
    assert len(found) == 1 and found[0].is_identity()


def test_compositional_root_examples():
    assert compositional_root(X ** 4, 2).root == X ** 2
    res = compositional_root(X ** 4 + 1, 2)
    assert res.root is None and "z^0" in res.witness
    res = compositional_root(reference_g(), 2)
    assert res.root is None and res.witness
    assert compositional_root(X ** 3, 2).root is None
    assert compositional_root(chebyshev(8), 3).root == chebyshev(2)


def test_compositional_root_of_a_bipoly():
    h = BiPoly.lift(X ** 2) + BiPoly([DensePoly([0, 1])])  # z^2 + t
    res = compositional_root(h.iterate(2), 2)
    assert res.root is not None and res.root.iterate(2) == h.iterate(2)


@given(monic_qpolys(2, 3), st.integers(2, 3))
def test_compositional_root_recovers(h, e):
    g = h.iterate(e)
    res = compositional_root(g, e)
    assert res.root is not None
    assert res.root.iterate(e) == g
