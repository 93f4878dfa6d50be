"""Closed-form displays, transcribed literally, against the builders and direct evaluation."""

import cmath
import math

import numpy as np
import pytest

import displays as D
import sinfrac.expansion as X
from conftest import separated_nodes
from sinfrac.core import LaurentTrigPoly

Z = [0.4 + 0.7j, -1.3 - 0.45j, 2.2 + 1.1j]


def phases(rng, count):
    return list(rng.uniform(0, math.pi, count))


def close(x, y, tol=1e-11):
    return abs(x - y) <= tol * (1 + max(abs(x), abs(y)))


@pytest.fixture(params=[1, 2, 3, 4])
def nodes(request, rng):
    return separated_nodes(rng, request.param, 0.2)


class TestSmallKappaForms:
    @pytest.mark.parametrize(
        "form,offset,k",
        [
            (D.braaksma_kappa_minus1, -1, 0),
            (D.braaksma_kappa0, 0, 0),
            (D.braaksma_kappa1, 1, 1),
            (D.braaksma_kappa3, 3, 2),
        ],
    )
    def test_form_matches_builder_and_ratio(self, form, offset, k, nodes, rng):
        a = phases(rng, len(nodes) + offset)
        e = X.braaksma_expand(a, nodes, k)
        for z in Z:
            assert close(form(a, nodes, z), D.F(a, nodes, z))
            assert close(form(a, nodes, z), e(z))

    def test_kappa0_constant_is_exp_minus_i_nu(self, nodes, rng):
        a = phases(rng, len(nodes))
        e = X.braaksma_expand(a, nodes, 0)
        assert [t.freq for t in e.exp_terms] == [0]
        assert e.exp_terms[0].coeff == pytest.approx(cmath.exp(-1j * D.nu(a, nodes)), rel=1e-13)


class TestMeijerNodeSums:
    def test_kappa1_k0(self, nodes, rng):
        a = phases(rng, len(nodes) + 1)
        lhs, rhs = D.meijer_kappa1_k0(a, nodes)
        assert close(lhs, rhs)
        builder_lhs, builder_rhs = X.meijer_lemma3(a, nodes, 0)
        # the builder carries the (2i)**(kappa+1) = -4 factor on both sides
        assert close(builder_lhs, -4 * lhs) and close(builder_rhs, -4 * rhs)

    def test_kappa2_k1_with_doubled_phases(self, nodes, rng):
        a = phases(rng, len(nodes) + 2)
        lhs, rhs = D.meijer_kappa2_k1(a, nodes)
        assert close(lhs, rhs)
        builder_lhs, _ = X.meijer_lemma3(a, nodes, 1)
        assert close(builder_lhs, (2j) ** 3 * lhs)

    def test_kappa2_k1_as_printed_is_wrong(self, rng):
        b = separated_nodes(rng, 2, 0.2)
        a = phases(rng, 4)
        lhs, rhs = D.meijer_kappa2_k1_as_printed(a, b)
        assert abs(lhs - rhs) > 1e-3


class TestSineProductForms:
    @pytest.mark.parametrize("form,offset", [(D.chu_kappa1, 1), (D.chu_kappa2, 2), (D.chu_kappa2_re, 2), (D.chu_kappa3, 3)])
    def test_form_matches_builder_and_ratio(self, form, offset, nodes, rng):
        a = phases(rng, len(nodes) + offset)
        e = X.sine_product_expand(a, nodes)
        for z in Z:
            assert close(form(a, nodes, z), D.sine_ratio(a, nodes, z))
            assert close(form(a, nodes, z), e(z))

    def test_kappa2_imaginary_part_identity(self, nodes, rng):
        a = phases(rng, len(nodes) + 2)
        lhs, rhs = D.chu_kappa2_im(a, nodes)
        assert lhs == pytest.approx(rhs, abs=1e-11)
        builder_lhs, builder_rhs = X.residue_identity("kappa2im", nodes, a=a)
        assert builder_lhs == pytest.approx(lhs, abs=1e-11) and builder_rhs == pytest.approx(rhs, abs=1e-11)

    def test_even_kappa_sine_enumeration(self, rng):
        for lam in (1, 2):
            b = separated_nodes(rng, 2, 0.2)
            a = phases(rng, 2 + 2 * lam)
            brute = D.even_kappa_sine_brute(a, b)
            node_sum = sum(np.prod([math.sin(bk - at) for at in a]) / D.S(b, k) for k, bk in enumerate(b))
            assert brute == pytest.approx(node_sum, abs=1e-11)
            lhs, rhs = X.residue_identity("even_kappa_sine", b, a=a)
            assert {round(lhs.real, 9), round(rhs.real, 9)} == {round(brute, 9)}


class TestTrigonometricForms:
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_degree_n_plus_3_form(self, n, rng):
        b = separated_nodes(rng, n + 1, 0.2)
        c = {t: complex(*rng.normal(size=2)) for t in range(-n - 3, n + 4)}
        T = LaurentTrigPoly.from_harmonics(c)
        e = X.general_expand(T, b, "PM")
        for z in Z:
            direct = T(z) / np.prod([cmath.sin(z - x) for x in b])
            assert close(D.trig_form_example(c, b, z), direct, 1e-10)
            assert close(e(z), direct, 1e-10)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_pole_only_monomials(self, n, rng):
        b = separated_nodes(rng, n + 1, 0.2)
        a = 0.3
        for m in range(n + 1):
            for z in Z:
                lhs = cmath.sin(m * z - a) / np.prod([cmath.sin(z - x) for x in b])
                for theta in range(m - n, m + n + 1, 2):
                    assert close(D.trig_monomial_poles(m, a, b, theta, z), lhs)
                    assert close(X.trig_monomial_expand(m, a, b, theta)(z), lhs)
                for theta in range(m - n, n - m + 1, 2):
                    assert close(D.trig_monomial_cos_form(m, a, b, theta, z), lhs)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_five_forms_for_m_equal_n_plus_1(self, n, rng):
        b = separated_nodes(rng, n + 1, 0.2)
        for z in Z:
            lhs = cmath.sin((n + 1) * z - 0.3) / np.prod([cmath.sin(z - x) for x in b])
            for form in D.m_n1_forms(0.3, b, z):
                assert close(form, lhs)

    @pytest.mark.parametrize("form", [D.m_n2_form, D.m_n3_form])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_higher_degree_monomials(self, form, n, rng):
        b = separated_nodes(rng, n + 1, 0.2)
        m = n + (2 if form is D.m_n2_form else 3)
        z = Z[0]
        lhs = cmath.sin(m * z - 0.3) / np.prod([cmath.sin(z - x) for x in b])
        theta = m - n - 2
        assert close(form(0.3, b, z, odd_power_shift=1), lhs)
        assert close(X.trig_monomial_expand(m, 0.3, b, theta)(z), lhs)
        printed = form(0.3, b, z, odd_power_shift=0)
        if n % 2 == 0:
            assert close(printed, lhs)
        else:
            # the printed odd-n constant carries (-4)**((n-1)/2) instead of (-4)**((n+1)/2)
            assert not close(printed, lhs, 1e-6)
