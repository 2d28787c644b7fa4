from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rel_residual
from regvar.asymptotics import (
    EstimationResult,
    LimitEvaluationError,
    LimitScheme,
    RationalRatioWarning,
    SampledFunction,
    TableRangeError,
    beck_partition,
    beck_riemann_sum,
    beurling_op,
    cocycle_residual_beurling,
    cocycle_residual_general,
    cocycle_residual_karamata,
    estimate_beurling,
    estimate_karamata,
    estimate_kernel,
    estimate_limit,
    estimate_rho,
    eta_local,
    fit_kappa,
    general_op,
    goldie_sum,
    karamata_op,
    two_point_index,
)
from regvar.kernels import KernelParams, cj_residual, kernel_eval
from regvar.popa import INFINITY, ZERO, DomainError, PopaParam, eta, iso_exp, power

P1 = PopaParam(1.0)


class TestSampledFunction:
    def test_rule_passthrough(self):
        f = SampledFunction.from_rule(lambda x: x * x)
        assert not f.is_table
        assert f(3.0) == 9.0

    def test_table_loglog_exact_on_powers(self):
        xs = np.geomspace(1.0, 1e4, 9)
        f = SampledFunction.from_table(xs, xs**2.5)
        assert f.is_table
        # log-log interpolation reproduces a pure power everywhere in range
        for x in (1.7, 31.6, 999.0):
            assert f(x) == pytest.approx(x**2.5, rel=1e-12)

    def test_refuses_extrapolation(self):
        f = SampledFunction.from_table([1.0, 10.0, 100.0], [1.0, 2.0, 3.0])
        assert f.x_min == 1.0 and f.x_max == 100.0
        with pytest.raises(TableRangeError):
            f(0.5)
        with pytest.raises(TableRangeError):
            f(101.0)
        with pytest.raises(TableRangeError):
            f(-3.0)

    @pytest.mark.parametrize(
        "xs,values",
        [
            ([1.0], [2.0]),
            ([1.0, 1.0], [2.0, 3.0]),
            ([2.0, 1.0], [2.0, 3.0]),
            ([-1.0, 2.0], [2.0, 3.0]),
            ([1.0, 2.0], [0.0, 3.0]),
            ([1.0, 2.0], [2.0, -3.0]),
            ([1.0, 2.0], [2.0, math.inf]),
        ],
    )
    def test_rejects_bad_tables(self, xs, values):
        with pytest.raises(ValueError):
            SampledFunction.from_table(xs, values)

    def test_rule_and_table_are_exclusive(self):
        with pytest.raises(ValueError):
            SampledFunction(fn=lambda x: x, xs=[1.0, 2.0], values=[1.0, 2.0])
        with pytest.raises(ValueError):
            SampledFunction()


class TestOperators:
    def test_karamata_power(self):
        assert karamata_op(lambda x: x * x, 3.0, 7.0) == pytest.approx(9.0, rel=1e-14)

    def test_beurling_exponential(self):
        v = beurling_op(lambda x: math.exp(x), lambda x: 1.0, 0.7, 5.0)
        assert v == pytest.approx(math.exp(0.7), rel=1e-13)

    def test_general_log_flattens(self):
        one = lambda x: 1.0
        v = general_op(math.log, one, one, 1.0, 1e8)
        assert abs(v) <= 1e-7

    def test_eta_local_linear_flow(self):
        assert eta_local(lambda x: x, 0.5, 40.0) == pytest.approx(1.5, rel=1e-14)

    def test_positivity_guards(self):
        with pytest.raises(DomainError):
            karamata_op(lambda x: -1.0, 2.0, 3.0)
        with pytest.raises(DomainError):
            karamata_op(lambda x: x, -2.0, 3.0)
        with pytest.raises(DomainError):
            beurling_op(lambda x: 0.0, lambda x: 1.0, 0.5, 3.0)
        with pytest.raises(DomainError):
            beurling_op(lambda x: x, lambda x: -1.0, 0.5, 3.0)
        with pytest.raises(DomainError):
            eta_local(lambda x: 0.0, 0.5, 3.0)
        with pytest.raises(DomainError):
            general_op(lambda x: x, lambda x: 1.0, lambda x: 0.0, 0.5, 3.0)


def _oscillating_power(a: float, b: float):
    return lambda x: x**a * (2.0 + math.sin(b * math.log(x)))


class TestCocycleResiduals:
    @settings(max_examples=300)
    @given(
        st.floats(-2.0, 2.0),
        st.floats(0.0, 3.0),
        st.floats(0.5, 3.0),
        st.floats(0.5, 3.0),
        st.floats(2.0, 500.0),
    )
    def test_karamata_identity(self, a, b, s, t, x):
        f = _oscillating_power(a, b)
        scale = 1.0 + abs(karamata_op(f, s * t, x))
        assert abs(cocycle_residual_karamata(f, s, t, x)) <= 1e-10 * scale

    @settings(max_examples=300)
    @given(
        st.floats(-2.0, 2.0),
        st.floats(0.0, 3.0),
        st.floats(0.5, 2.0),
        st.floats(0.0, 1.0),
        st.floats(-0.4, 1.5),
        st.floats(-0.4, 1.5),
        st.floats(2.0, 500.0),
    )
    def test_beurling_identity(self, a, b, c, p, s, t, x):
        f = _oscillating_power(a, b)
        phi = lambda x: c * x**p
        ts = t + s * eta_local(phi, t, x)
        scale = 1.0 + abs(beurling_op(f, phi, ts, x))
        assert abs(cocycle_residual_beurling(f, phi, s, t, x)) <= 1e-10 * scale

    @settings(max_examples=300)
    @given(
        st.floats(-2.0, 2.0),
        st.floats(0.0, 3.0),
        st.floats(0.5, 2.0),
        st.floats(0.0, 1.0),
        st.floats(0.5, 2.0),
        st.floats(-1.0, 1.0),
        st.floats(-0.4, 1.5),
        st.floats(-0.4, 1.5),
        st.floats(2.0, 500.0),
    )
    def test_general_identity(self, a, b, c, p, d, q, s, t, x):
        f = _oscillating_power(a, b)
        phi = lambda x: c * x**p
        h = lambda x: d * x**q
        ts = t + s * eta_local(phi, t, x)
        # the normalised difference cancels catastrophically when f barely
        # moves, so the error scale carries f(x)/h(x) explicitly
        scale = 1.0 + abs(general_op(f, phi, h, ts, x)) + abs(f(x) / h(x))
        assert abs(cocycle_residual_general(f, phi, h, s, t, x)) <= 1e-10 * scale


class TestLimitScheme:
    def test_defaults(self):
        s = LimitScheme()
        assert s.x0 == 10.0 and s.ratio == 2.0 and s.max_steps == 40

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"x0": 0.0},
            {"x0": -1.0},
            {"ratio": 1.0},
            {"ratio": math.inf},
            {"max_steps": 0},
            {"tol": 0.0},
            {"stability_window": 1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            LimitScheme(**kwargs)


class TestEstimateLimit:
    def test_constant_converges_in_window_steps(self):
        res = estimate_limit(lambda x: 4.25, LimitScheme())
        assert res.converged
        assert res.value == 4.25
        assert res.steps_used == 3
        assert res.last_delta == 0.0

    def test_oscillation_never_converges(self):
        res = estimate_limit(lambda x: math.sin(math.log(x)), LimitScheme())
        assert not res.converged
        assert res.steps_used == 40

    def test_slow_log_decay_converges_at_loose_tol(self):
        c = 2.0
        res = estimate_limit(lambda x: c + 1.0 / math.log(x), LimitScheme(tol=1e-3))
        assert res.converged
        assert 0.0 < res.value - c < 0.1

    def test_window_never_fills(self):
        res = estimate_limit(lambda x: 1.0, LimitScheme(max_steps=2))
        assert not res.converged
        assert res.steps_used == 2
        assert res.last_delta == math.inf

    def test_failure_annotated_with_grid_position(self):
        def curve(x):
            if x > 30.0:
                raise ValueError("boom")
            return 1.0

        with pytest.raises(LimitEvaluationError) as exc_info:
            estimate_limit(curve, LimitScheme())
        assert exc_info.value.step == 2
        assert exc_info.value.x == 40.0
        assert isinstance(exc_info.value.cause, ValueError)


class TestEstimateRho:
    def test_linear_flow(self):
        res = estimate_rho(lambda x: x, 0.5)
        assert res.converged and res.value == pytest.approx(1.0, abs=1e-12)
        assert res.steps_used == 3

    def test_constant_flow(self):
        res = estimate_rho(lambda x: 1.0, 0.5)
        assert res.converged and res.value == 0.0

    def test_affine_flow(self):
        res = estimate_rho(lambda x: 1.0 + x / 2.0, 0.5)
        assert res.converged and res.value == pytest.approx(0.5, abs=1e-12)

    def test_sublinear_flow_is_flagged(self):
        res = estimate_rho(lambda x: x / (1.0 + math.log(x)), 0.5)
        assert not res.converged

    def test_rejects_zero_probe(self):
        with pytest.raises(DomainError):
            estimate_rho(lambda x: x, 0.0)

    def test_estimated_eta_is_multiplicative(self):
        # close the loop: the fitted 1 + rho*t must satisfy the group product rule
        scheme = LimitScheme()
        res = estimate_rho(lambda x: 1.0 + x / 2.0, 0.5, scheme)
        rho_hat = PopaParam(res.value)
        eta_hat = lambda t: 1.0 + res.value * t
        rng = np.random.default_rng(5)
        for w1, w2 in rng.uniform(-1.0, 1.0, size=(25, 2)):
            u, v = iso_exp(rho_hat, float(w1)), iso_exp(rho_hat, float(w2))
            assert abs(cj_residual(eta_hat, rho_hat, u, v)) <= 5.0 * scheme.tol


class TestEstimateKernel:
    def test_exponential_flow_immediate(self):
        f = lambda x: math.exp(x)
        one = lambda x: 1.0
        out = estimate_kernel(f, one, f, [0.5, 1.0, -0.3])
        for t, res in out:
            assert res.converged
            assert res.steps_used == 3
            assert res.value == pytest.approx(math.expm1(t), rel=1e-12)

    def test_failure_becomes_flag_not_error(self):
        # h is only positive on a bounded window, so large grid steps fail
        f = lambda x: x
        one = lambda x: 1.0
        h = lambda x: 1.0 if x < 30.0 else 0.0
        out = estimate_kernel(f, one, h, [1.0])
        (t, res), = out
        assert t == 1.0
        assert not res.converged
        assert math.isnan(res.value)
        assert res.steps_used == 2

    def test_beurling_exponential(self):
        f = lambda x: math.exp(x)
        out = estimate_beurling(f, lambda x: 1.0, [0.3, 1.2])
        for t, res in out:
            assert res.converged
            assert res.value == pytest.approx(math.exp(t), rel=1e-12)


class TestEstimateKaramata:
    def test_pure_power_is_exact(self):
        out = estimate_karamata(lambda x: x * x, [0.5, 2.0, 3.0])
        for lam, res in out:
            assert res.converged
            assert res.value == pytest.approx(lam * lam, rel=1e-12)

    def test_slow_variation_converges_to_power(self):
        f = lambda x: x**1.5 * (1.0 + 1.0 / math.log(x))
        out = estimate_karamata(f, [2.0], LimitScheme(tol=1e-3, max_steps=60))
        (lam, res), = out
        assert res.converged
        assert res.value == pytest.approx(2.0**1.5, rel=0.05)

    def test_log_oscillation_is_flagged(self):
        f = lambda x: 2.0 + math.sin(math.log(x))
        out = estimate_karamata(f, [2.0])
        (_, res), = out
        assert not res.converged

    def test_rejects_nonpositive_ratio(self):
        with pytest.raises(DomainError):
            estimate_karamata(lambda x: x, [-2.0])


class TestFitKappa:
    def test_exact_kernel_samples(self):
        kp = KernelParams(P1, P1, 2.0)
        ts = [0.5, 1.0, 2.0]
        samples = [(t, kernel_eval(kp, t)) for t in ts]
        kappa, rms = fit_kappa(samples, P1, P1)
        assert kappa == pytest.approx(2.0, rel=1e-14)
        assert rms <= 1e-14

    def test_identity_valued_samples_give_zero(self):
        samples = [(0.5, 0.0), (1.0, 0.0)]
        kappa, rms = fit_kappa(samples, P1, P1)
        assert kappa == 0.0 and rms == 0.0

    def test_noisy_samples_seeded(self):
        rng = np.random.default_rng(99)
        kp = KernelParams(P1, P1, 2.0)
        ts = [0.5, 1.0, 2.0]
        worst = 0.0
        for _ in range(20):
            samples = [
                (t, kernel_eval(kp, t) * (1.0 + float(rng.uniform(-1e-3, 1e-3))))
                for t in ts
            ]
            kappa, _ = fit_kappa(samples, P1, P1)
            worst = max(worst, abs(kappa - 2.0))
        assert worst <= 5e-3

    def test_any_parameter_pair(self):
        kp = KernelParams(INFINITY, ZERO, -1.3)
        samples = [(t, kernel_eval(kp, t)) for t in (0.5, 1.0, 4.0)]
        kappa, rms = fit_kappa(samples, INFINITY, ZERO)
        assert kappa == pytest.approx(-1.3, rel=1e-13)
        assert rms <= 1e-13

    def test_errors(self):
        with pytest.raises(ValueError):
            fit_kappa([], P1, P1)
        with pytest.raises(ValueError):
            fit_kappa([(0.0, 0.0)], P1, P1)


class TestTwoPointIndex:
    def test_consistent_pair(self):
        with pytest.warns(RationalRatioWarning):
            value, ok = two_point_index(2.0, 8.0, 4.0, 64.0)
        assert value == pytest.approx(3.0, rel=1e-14)
        assert ok

    def test_inconsistent_pair(self):
        value, ok = two_point_index(2.0, 8.0, 3.0, 26.0)
        assert not ok
        assert value == pytest.approx(0.5 * (3.0 + math.log(26.0) / math.log(3.0)), rel=1e-12)

    @pytest.mark.parametrize("a", [-1.0, 0.5, 2.0])
    def test_power_recovery_is_exact(self, a):
        value, ok = two_point_index(2.0, 2.0**a, math.e, math.exp(a))
        assert ok
        assert value == pytest.approx(a, rel=1e-14)

    def test_independent_probes_do_not_warn(self):
        import warnings as _w

        with _w.catch_warnings():
            _w.simplefilter("error", RationalRatioWarning)
            two_point_index(2.0, 4.0, 3.0, 9.0)

    def test_rejects_unit_ratio(self):
        with pytest.raises(DomainError):
            two_point_index(1.0, 2.0, 3.0, 9.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            two_point_index(2.0, -8.0, 3.0, 9.0)


class TestBeckPartition:
    def test_additive_quarters(self):
        pts = beck_partition(ZERO, 0.25, 1.0)
        assert pts == [0.0, 0.25, 0.5, 0.75, 1.0, 1.25]

    def test_finite_rho(self):
        pts = beck_partition(P1, 0.1, 0.2)
        assert pts == [0.0, 0.1, 0.21000000000000002]

    def test_multiplicative_doubling(self):
        pts = beck_partition(INFINITY, 2.0, 10.0)
        assert pts == [1.0, 2.0, 4.0, 8.0, 16.0]

    @pytest.mark.parametrize("param", [ZERO, P1, INFINITY])
    @pytest.mark.parametrize("u_w", [0.05, 1.0, 3.7])
    def test_sandwich_property(self, param, u_w):
        u = iso_exp(param, u_w)
        pts = beck_partition(param, iso_exp(param, 0.3), u)
        assert pts[-2] <= u < pts[-1]

    def test_cell_widths_follow_the_flow(self):
        # x_m - x_{m-1} = delta * eta(x_{m-1}) for finite rho
        delta = 0.05
        pts = beck_partition(P1, delta, 2.0)
        for prev, nxt in zip(pts, pts[1:]):
            assert nxt - prev == pytest.approx(delta * eta(P1, prev), rel=1e-12)

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            beck_partition(P1, 0.0, 1.0)
        with pytest.raises(DomainError):
            beck_partition(P1, -0.1, 1.0)
        with pytest.raises(DomainError):
            beck_partition(INFINITY, 0.5, 10.0)
        with pytest.raises(DomainError):
            beck_partition(P1, 0.1, -0.5)

    def test_refuses_huge_partitions(self):
        with pytest.raises(DomainError):
            beck_partition(ZERO, 1e-9, 1.0)


class TestBeckRiemannSum:
    def test_flow_weight_telescopes_exactly(self):
        # g = eta makes every term the plain cell width; the sum telescopes to u
        for param, u in ((ZERO, 1.7), (P1, 2.3), (INFINITY, 9.0)):
            delta = iso_exp(param, 0.01)
            total = beck_riemann_sum(lambda t, p=param: eta(p, t), param, delta, u)
            ident = 1.0 if param.is_infinite else 0.0
            assert total == pytest.approx(u - ident, rel=1e-12)

    def test_converges_to_haar_weighted_integral(self):
        # g = 1: the limit is integral du/(1+u) = log 2 on (0, 1]
        for delta in (0.02, 0.01):
            s = beck_riemann_sum(lambda t: 1.0, P1, delta, 1.0)
            assert abs(s - math.log(2.0)) <= 2.0 * delta

    def test_single_clipped_cell(self):
        # u below the first partition point: one term, clipped at u
        s = beck_riemann_sum(lambda t: 1.0, P1, 0.5, 0.3)
        assert s == pytest.approx(0.3 / 1.3, rel=1e-14)

    def test_error_halves_with_delta(self):
        exact = math.log(2.0)
        e1 = abs(beck_riemann_sum(lambda t: 1.0, P1, 0.02, 1.0) - exact)
        e2 = abs(beck_riemann_sum(lambda t: 1.0, P1, 0.01, 1.0) - exact)
        assert 1.6 <= e1 / e2 <= 2.4


class TestGoldieSum:
    def test_zero_terms(self):
        assert goldie_sum(0.7, lambda t: 1.0, P1, 0.1, 0) == 0.0

    def test_constant_multiplier(self):
        assert goldie_sum(0.7, lambda t: 1.0, P1, 0.1, 5) == pytest.approx(3.5, rel=1e-14)

    def test_power_multiplier_telescopes(self):
        # K = c*(g - 1) with multiplicative g: the sum collapses to c*(g(u_i) - 1)
        c, gamma, delta = 1.7, -2.0, 0.05
        g = lambda t: math.exp(-gamma * math.log1p(t))
        K_delta = c * (g(delta) - 1.0)
        for i in (1, 7, 40):
            got = goldie_sum(K_delta, g, P1, delta, i)
            want = c * (g(power(P1, delta, i)) - 1.0)
            assert rel_residual(got, want) <= 1e-10

    def test_rejects_negative_count(self):
        with pytest.raises(DomainError):
            goldie_sum(1.0, lambda t: 1.0, P1, 0.1, -1)
