import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_convolve
from published_values import COEFFS_14, LADM_TERM_10
from sirseries import (AdomianSequence, DecompositionTerms, InitialState, PowerSeries,
                       SirParams, adomian_term, cauchy_product, dtm_solve,
                       ladm_initial, ladm_solve, ladm_step, truncate)
from sirseries.errors import CapacityError

P = PowerSeries


class TestAdomian:
    def test_first(self):
        assert adomian_term([P([20])], [P([15])], 0, 0).tolist() == [300]

    def test_second(self):
        got = adomian_term([P([20]), P([0, -2.3])], [P([15]), P([0, -2.2])], 1, 1)
        assert got.tolist() == pytest.approx([0, -78.5], rel=1e-15)

    def test_third_against_brute_force(self):
        s = [P([20]), P([0, -2.3]), P([0, 0, 0.15425])]
        i = [P([15]), P([0, -2.2]), P([0, 0, 0.04575])]
        want = [0.0, 0.0, 0.0]
        for k in range(3):
            conv = brute_convolve(s[k].tolist(), i[2 - k].tolist(), 2)
            want = [w + c for w, c in zip(want, conv)]
        got = adomian_term(s, i, 2, 2)
        assert got.tolist() == pytest.approx(want, rel=1e-15)
        assert got[2] == pytest.approx(20 * 0.04575 + 2.3 * 2.2 + 0.15425 * 15, rel=1e-15)
        assert got[2] == pytest.approx(8.28875, rel=1e-14)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            adomian_term([P([1])], [P([1])], 1, 3)


class TestInitial:
    def test_defaults(self, defaults):
        s0, i0, r0 = ladm_initial(*defaults, 5)
        assert s0[0] == 20 and i0[0] == 15 and r0[0] == 10
        assert not np.any(s0.coeffs[1:])

    def test_constant_forcing(self):
        s0, _, _ = ladm_initial(SirParams(f1=[3.0]), InitialState(s0=20), 3)
        assert s0.tolist() == [20, 3, 0, 0]

    def test_linear_forcing(self):
        _, i0, _ = ladm_initial(SirParams(f2=[0, 2]), InitialState(i0=1), 2)
        assert i0.tolist() == [1, 0, 1]


def _first_terms(params, init, j, max_degree):
    terms = DecompositionTerms(*[(x,) for x in ladm_initial(params, init, max_degree)])
    adomian = AdomianSequence()
    for k in range(1, j + 1):
        adomian = adomian.appended(
            adomian_term(terms.s_terms, terms.i_terms, k - 1, max_degree))
        terms = terms.appended(*ladm_step(params, terms, adomian, max_degree))
    return terms


class TestStep:
    def test_first_correction(self, defaults):
        terms = _first_terms(*defaults, 1, 1)
        assert terms.s_terms[1].tolist() == pytest.approx([0, -2.3], rel=1e-15)
        assert terms.i_terms[1].tolist() == pytest.approx([0, -2.2], rel=1e-15)
        assert terms.r_terms[1].tolist() == pytest.approx([0, 0.5], rel=1e-15)

    def test_second_correction(self, defaults):
        terms = _first_terms(*defaults, 2, 2)
        assert terms.s_terms[2].tolist() == pytest.approx([0, 0, 0.15425], rel=1e-14)

    def test_tenth_correction(self, defaults):
        terms = _first_terms(*defaults, 10, 10)
        assert terms.s_terms[10][10] == pytest.approx(LADM_TERM_10["S"], rel=1e-5)
        assert terms.i_terms[10][10] == pytest.approx(LADM_TERM_10["I"], rel=1e-5)
        assert terms.r_terms[10][10] == pytest.approx(LADM_TERM_10["R"], rel=1e-5)

    def test_needs_adomian_term(self, defaults):
        terms = DecompositionTerms(*[(x,) for x in ladm_initial(*defaults, 2)])
        with pytest.raises(IndexError):
            ladm_step(defaults[0], terms, AdomianSequence(), 2)

    def test_unequal_terms_rejected(self):
        with pytest.raises(ValueError):
            DecompositionTerms((P([1]),), (), (P([1]),))


class TestSolve:
    def test_partial_sum_listing(self, defaults):
        sol, terms = ladm_solve(*defaults, 10)
        assert len(terms) == 11
        assert sol.degree == 10
        assert sol.s[4] == pytest.approx(0.000309711, rel=1e-5)
        assert sol.r[10] == pytest.approx(-4.55198e-13, rel=1e-5)
        for name, series in zip("SIR", (sol.s, sol.i, sol.r)):
            np.testing.assert_allclose(series.coeffs, COEFFS_14[name][:11], rtol=1e-5)

    def test_zero_terms(self, defaults):
        sol, terms = ladm_solve(*defaults, 0)
        assert (sol.s.tolist(), sol.i.tolist(), sol.r.tolist()) == ([20], [15], [10])
        assert len(terms) == 1

    def test_cap(self, defaults):
        with pytest.raises(CapacityError):
            ladm_solve(*defaults, 129)

    def test_terms_are_monomials(self, defaults):
        _, terms = ladm_solve(*defaults, 12)
        for seq in (terms.s_terms, terms.i_terms, terms.r_terms):
            for j, term in enumerate(seq):
                assert np.all(np.abs(term.coeffs[:j]) <= 1e-15)
                assert np.all(term.coeffs[j + 1:] == 0)

    def test_partial_sum_prefix_stability(self, defaults):
        long, _ = ladm_solve(*defaults, 16)
        for n in (2, 7, 15):
            short, _ = ladm_solve(*defaults, n)
            assert short.s.tolist() == long.s.tolist()[: n + 1]
            assert short.r.tolist() == long.r.tolist()[: n + 1]

    def test_bit_identical_to_dtm_without_forcing(self, defaults):
        a, _ = ladm_solve(*defaults, 20)
        b = dtm_solve(*defaults, 20)
        assert a.s == b.s and a.i == b.i and a.r == b.r

    def test_adomian_completeness(self, defaults):
        params = SirParams(lam=0.3, f1=[0.5], f2=[1.5])
        n = 9
        sol, terms = ladm_solve(params, InitialState(4, 3, 2), n)
        total = P([0.0])
        for j in range(n + 1):
            total = total + adomian_term(terms.s_terms, terms.i_terms, j, n)
        ref = cauchy_product(sol.s, sol.i, n)
        np.testing.assert_allclose(truncate(total, n).coeffs, ref.coeffs, rtol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(
        st.tuples(*[st.floats(0, 0.5)] * 3),
        st.tuples(*[st.floats(0, 50)] * 3),
        st.tuples(*[st.floats(0, 2)] * 3),
        st.integers(0, 15),
    )
    def test_equivalent_to_dtm_constant_forcing(self, rates, x0, forcing, n):
        params = SirParams(*rates, *[[f] for f in forcing])
        init = InitialState(*x0)
        a, _ = ladm_solve(params, init, n)
        b = dtm_solve(params, init, n)
        for x, y in ((a.s, b.s), (a.i, b.i), (a.r, b.r)):
            np.testing.assert_allclose(x.coeffs, y.coeffs, rtol=1e-12, atol=1e-18)

    def test_polynomial_forcing_truncated(self):
        # With a linear forcing the terms are no longer monomials; partial sums
        # still equal the Taylor polynomial once enough terms are included.
        params = SirParams(f1=[0, 1.0], f3=[0.5, 0, -0.25])
        init = InitialState()
        sol, _ = ladm_solve(params, init, 12, max_degree=6)
        ref = dtm_solve(params, init, 6)
        np.testing.assert_allclose(sol.s.coeffs, ref.s.coeffs, rtol=1e-12, atol=1e-18)
        np.testing.assert_allclose(sol.r.coeffs, ref.r.coeffs, rtol=1e-12, atol=1e-18)
