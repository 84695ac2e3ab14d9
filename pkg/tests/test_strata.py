import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir_diff.constants import C
from casimir_diff.errors import DomainError
from casimir_diff.materials import (CONDUCTIVE_SILICON, DRUDE, GOLD, PLASMA, SILICON, Drude, Oscillator, Plasma,
                                    StaticBehavior, Vacuum)
from casimir_diff.strata import (TE, TM, Layer, LayerStack, _compose, fresnel, kz, stack_reflection,
                                 static_stack_reflection, zero_frequency_te_reflection)

eps_st = st.floats(1.0, 1e5)
xi_st = st.floats(1e11, 1e17)
k_st = st.floats(1e3, 1e9)
pol_st = st.sampled_from([TE, TM])
thick_st = st.floats(1e-10, 1e-5)


def const_eps(value):
    # eps_inf = eps_static gives a frequency-independent dielectric
    return Oscillator(value, value, 1e15)


def test_kz_examples():
    q = 3.7e6
    assert kz(1.0, 0.0, q) == q
    k = 2.0e6
    assert kz(4.0, C * k, k) == pytest.approx(k * math.sqrt(5.0), rel=1e-15)
    expected = math.sqrt(11.87 * (1e14 / 299792458.0) ** 2 + 1e12)
    assert kz(11.87, 1e14, 1e6) == pytest.approx(expected, rel=1e-15)


@given(pol_st, eps_st, xi_st, k_st)
def test_identical_media_do_not_reflect(pol, eps, xi, k):
    assert fresnel(pol, eps, eps, xi, k) == 0.0


@given(pol_st, eps_st, eps_st, xi_st, k_st)
def test_fresnel_antisymmetric_and_bounded(pol, ea, eb, xi, k):
    r = fresnel(pol, ea, eb, xi, k)
    assert r == pytest.approx(-fresnel(pol, eb, ea, xi, k), rel=1e-12, abs=1e-15)
    assert abs(r) < 1.0


@given(eps_st, eps_st, k_st)
def test_zero_frequency_limits(ea, eb, k):
    assert fresnel(TM, ea, eb, 0.0, k) == pytest.approx((eb - ea) / (eb + ea), rel=1e-12, abs=1e-15)
    assert fresnel(TE, ea, eb, 0.0, k) == 0.0


@pytest.mark.parametrize("k", [1e4, 1e6, 1e8])
def test_plasma_te_static_limit_matches_small_frequency(k):
    wp = 1.37e16
    model = Plasma(wp)
    analytic = zero_frequency_te_reflection(model.static(PLASMA), k)
    kb = math.sqrt(k**2 + (wp / C) ** 2)
    assert analytic == pytest.approx((k - kb) / (k + kb), rel=1e-14)
    xi = 1e-6 * wp
    numeric = stack_reflection(TE, LayerStack(model), xi, k)
    assert numeric == pytest.approx(analytic, rel=1e-6, abs=1e-9)


def test_zero_frequency_te_cases():
    assert zero_frequency_te_reflection(StaticBehavior(0, 11.87), 1e6) == 0.0
    assert zero_frequency_te_reflection(GOLD.static(DRUDE), 1e6) == 0.0
    r = zero_frequency_te_reflection(GOLD.static(PLASMA), 1e2)
    assert r == pytest.approx(-1.0, abs=1e-5)
    with pytest.raises(DomainError):
        zero_frequency_te_reflection(GOLD.static(PLASMA), 0.0)


def test_drude_te_static_is_exactly_zero_for_stack():
    stack = LayerStack(GOLD, (Layer(CONDUCTIVE_SILICON, 100e-9),))
    k = np.logspace(3, 9, 13)
    assert np.all(stack_reflection(TE, stack, 0.0, k, DRUDE) == 0.0)
    assert np.all(stack_reflection(TE, stack, 0.0, k, PLASMA) < 0.0)


def test_static_tm_conductor_on_top_reflects_fully():
    k = np.logspace(3, 9, 13)
    for sub in (SILICON, GOLD):
        stack = LayerStack(sub, (Layer(CONDUCTIVE_SILICON, 100e-9),))
        for presc in (DRUDE, PLASMA):
            np.testing.assert_allclose(static_stack_reflection(TM, stack, k, presc), 1.0, rtol=0, atol=1e-15)


def test_static_tm_dielectric():
    k = np.array([1e5, 1e7])
    got = static_stack_reflection(TM, LayerStack(SILICON), k)
    np.testing.assert_allclose(got, (11.87 - 1) / (11.87 + 1), rtol=1e-14)


def test_static_matches_small_xi_for_dielectric_stack():
    stack = LayerStack(SILICON, (Layer(const_eps(4.0), 50e-9),))
    k = np.logspace(4, 8, 9)
    for pol in (TE, TM):
        np.testing.assert_allclose(stack_reflection(pol, stack, 1e6, k), static_stack_reflection(pol, stack, k),
                                   rtol=1e-6, atol=1e-9)


def test_empty_stack_is_fresnel():
    xi, k = 3e14, 2e6
    for pol in (TE, TM):
        got = stack_reflection(pol, LayerStack(GOLD), xi, k)
        assert got == fresnel(pol, 1.0, GOLD.epsilon(xi), xi, k)


def test_opaque_layer_limit():
    xi, k = 3e14, 2e6
    stack = LayerStack(SILICON, (Layer(GOLD, 1.0),))
    for pol in (TE, TM):
        assert stack_reflection(pol, stack, xi, k) == pytest.approx(fresnel(pol, 1.0, GOLD.epsilon(xi), xi, k),
                                                                    rel=1e-15)


@given(pol_st, eps_st, thick_st, xi_st, k_st)
def test_layer_of_substrate_material_is_invisible(pol, eps, w, xi, k):
    m = const_eps(eps)
    stack = LayerStack(m, (Layer(m, w),))
    assert stack_reflection(pol, stack, xi, k) == pytest.approx(fresnel(pol, 1.0, eps, xi, k), rel=1e-12,
                                                                abs=1e-300)


@given(pol_st, eps_st, eps_st, xi_st, k_st)
def test_zero_thickness_composition_identity(pol, ea, eb, xi, k):
    r0a = fresnel(pol, 1.0, ea, xi, k)
    rab = fresnel(pol, ea, eb, xi, k)
    assert _compose(r0a, 1.0, rab) == pytest.approx(fresnel(pol, 1.0, eb, xi, k), rel=1e-9, abs=1e-12)


@given(pol_st, eps_st, thick_st, xi_st, k_st)
def test_vacuum_layer_only_delays(pol, eps, w, xi, k):
    stack = LayerStack(const_eps(eps), (Layer(Vacuum(), w),))
    q = kz(1.0, xi, k)
    expected = math.exp(-2 * w * q) * fresnel(pol, 1.0, eps, xi, k)
    assert stack_reflection(pol, stack, xi, k) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@given(pol_st, eps_st, eps_st, thick_st, xi_st, k_st)
def test_split_layer_identity(pol, e_layer, e_sub, w, xi, k):
    layer, sub = const_eps(e_layer), const_eps(e_sub)
    one = LayerStack(sub, (Layer(layer, w),))
    two = LayerStack(sub, (Layer(layer, w / 2), Layer(layer, w / 2)))
    # |r| <= 1, so an absolute floor is the natural machine-precision scale
    assert stack_reflection(pol, two, xi, k) == pytest.approx(stack_reflection(pol, one, xi, k), rel=1e-12,
                                                              abs=1e-12)


@given(pol_st, st.lists(st.tuples(eps_st, thick_st), max_size=4), eps_st, xi_st, k_st)
def test_stack_reflection_bounded(pol, layers, e_sub, xi, k):
    stack = LayerStack(const_eps(e_sub), tuple(Layer(const_eps(e), w) for e, w in layers))
    assert abs(stack_reflection(pol, stack, xi, k)) <= 1.0


def test_two_layer_formula_by_hand():
    xi, k, w = 5e14, 3e6, 100e-9
    e1, e2 = CONDUCTIVE_SILICON.epsilon(xi), SILICON.epsilon(xi)
    k1 = math.sqrt(e1 * (xi / C) ** 2 + k * k)
    for pol in (TE, TM):
        r01 = fresnel(pol, 1.0, e1, xi, k)
        r12 = fresnel(pol, e1, e2, xi, k)
        ph = math.exp(-2 * w * k1)
        expected = (r01 + ph * r12) / (1 + ph * r01 * r12)
        stack = LayerStack(SILICON, (Layer(CONDUCTIVE_SILICON, w),))
        assert stack_reflection(pol, stack, xi, k) == pytest.approx(expected, rel=1e-14)


def test_vectorised_over_kperp():
    stack = LayerStack(SILICON, (Layer(CONDUCTIVE_SILICON, 1e-7),))
    k = np.logspace(3, 9, 7)
    vec = stack_reflection(TM, stack, 1e14, k)
    assert vec.shape == k.shape
    for ki, vi in zip(k, vec):
        assert stack_reflection(TM, stack, 1e14, ki) == pytest.approx(vi, rel=1e-15)
