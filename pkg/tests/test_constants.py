import math

import numpy as np
import pytest

from hardy_cesaro.constants import (ConstantKind, StructuralKind, kernel_constant,
                                    structural_constant)
from hardy_cesaro.parameters import ExponentSet
from hardy_cesaro.quadrature import (IntegralStatus, KernelSpec, PowerBeta,
                                     PowerCurve)
from hardy_cesaro.weights import HomogeneousWeight

IDENTITY = KernelSpec(1, PowerBeta(0.0, 0.0), (PowerCurve(1.0),))


def make(m=1, **kw):
    base = dict(m=m, n=1, d=1, alpha_i=[0.0] * m, p_i=[2.0] * m, q_i=[2.0] * m,
                lambda_i=[0.0] * m, gamma_i=[0.0] * m)
    base.update(kw)
    return ExponentSet(**base)


def test_a1_example():
    res = kernel_constant(ConstantKind.A1, make(), IDENTITY)
    assert res.value == pytest.approx(2.0, rel=1e-12)


def test_xiao_example():
    res = kernel_constant(ConstantKind.XIAO, make(), IDENTITY)
    assert res.status is IntegralStatus.CONVERGED
    assert res.value == pytest.approx(2.0, abs=1e-10)


def test_xiao_log_more_singular():
    # the log(2/t) factor strictly dominates: Xiao finite, XiaoLog larger
    e = make(p_i=[2.0])
    plain = kernel_constant(ConstantKind.XIAO, e, IDENTITY)
    logged = kernel_constant(ConstantKind.XIAO_LOG, e, IDENTITY)
    assert logged.status is IntegralStatus.CONVERGED
    assert logged.value > plain.value
    # closed form: int t^{-1/2} log(2/t) = 2 log 2 + 4
    assert logged.value == pytest.approx(2.0 * math.log(2.0) + 4.0, rel=1e-8)


def test_a_constant_uses_p():
    e = make(p_i=[2.0], gamma_i=[0.0])
    res = kernel_constant(ConstantKind.A, e, IDENTITY)
    assert res.value == pytest.approx(2.0, rel=1e-12)  # int t^{-1/2}


def test_a2_divergence_verdict():
    e = make(alpha_i=[0.5], q_i=[1.0])  # e_1 = -(1+0)/1 - 0.5 = -1.5
    res = kernel_constant(ConstantKind.A2, e, IDENTITY)
    assert res.status is IntegralStatus.DIVERGENT


def test_counterexample_commutator_cor():
    # psi(t) = t/(1-t), exponent gamma_1 - lambda - d/q_1 = 1:
    # the cutoff integral converges to 1 while the plain comparison diverges
    e = make(q_i=[1.0], p_i=[1.0], gamma_i=[2.0])
    kernel = KernelSpec(1, PowerBeta(1.0, -1.0), (PowerCurve(1.0),))
    cor = kernel_constant(ConstantKind.COMMUTATOR_COR, e, kernel)
    assert cor.status is IntegralStatus.CONVERGED
    assert cor.value == pytest.approx(1.0, abs=1e-6)
    plain = kernel_constant(ConstantKind.COMMUTATOR_COR_PLAIN, e, kernel)
    assert plain.status is IntegralStatus.DIVERGENT


def test_commutator_mh_folding_and_numeric_agree():
    e = make(q_i=[2.0], lambda_i=[0.4], beta_i=[0.3], r_i=[4.0])
    folded = kernel_constant(ConstantKind.COMMUTATOR_MH, e, IDENTITY)
    bent = KernelSpec(1, PowerBeta(0.0, 0.0), (PowerCurve(1.0 + 1e-12),))
    numeric = kernel_constant(ConstantKind.COMMUTATOR_MH, e, bent, tol=1e-10)
    assert folded.status is IntegralStatus.CONVERGED
    assert numeric.value == pytest.approx(folded.value, rel=1e-8)


def test_kernel_constant_monotone_in_singularity():
    # with |s| <= 1 the integral grows as exponents move toward -1
    # (t**e decreases in e on (0,1), so the value is nonincreasing in e_i)
    from hardy_cesaro.quadrature import kernel_power_integral
    rng = np.random.default_rng(13)
    for _ in range(20):
        b = float(rng.uniform(0.5, 2.0))
        k = KernelSpec(1, PowerBeta(float(rng.uniform(0, 1)),
                                    float(rng.uniform(0, 1))), (PowerCurve(b),))
        e1 = float(rng.uniform(-0.8, 1.0))
        e2 = e1 + float(rng.uniform(0.05, 0.5))
        v1 = kernel_power_integral(k, [e1]).value
        v2 = kernel_power_integral(k, [e2]).value
        assert v2 <= v1 * (1.0 + 1e-12)


def test_cutoff_dominance():
    # kind COMMUTATOR_COR <= COMMUTATOR_COR_PLAIN whenever both converge
    rng = np.random.default_rng(17)
    for _ in range(15):
        e = make(q_i=[float(rng.uniform(1, 3))], p_i=[1.0],
                 gamma_i=[float(rng.uniform(-0.5, 1.0))],
                 lambda_i=[float(rng.uniform(0, 1))])
        kernel = KernelSpec(1, PowerBeta(float(rng.uniform(0.5, 2.0)),
                                         float(rng.uniform(0, 1))),
                            (PowerCurve(1.0),))
        cor = kernel_constant(ConstantKind.COMMUTATOR_COR, e, kernel)
        plain = kernel_constant(ConstantKind.COMMUTATOR_COR_PLAIN, e, kernel)
        if plain.status is IntegralStatus.CONVERGED:
            assert cor.status is IntegralStatus.CONVERGED
            assert cor.value <= plain.value * (1.0 + 1e-12)


def test_c_upper_examples():
    assert structural_constant(StructuralKind.C_UPPER,
                               make(alpha_i=[1.0], lambda_i=[1.0])) == 2.0
    val = structural_constant(StructuralKind.C_UPPER,
                              make(p_i=[0.5], lambda_i=[1.0], q_i=[1.0]))
    assert val == pytest.approx(18.0 + 12.0 * math.sqrt(2.0), rel=1e-12)
    with pytest.raises(ValueError):
        structural_constant(StructuralKind.C_UPPER, make(p_i=[0.5]))  # p<1, lam=0


def test_d_lower_trivial_for_single_factor():
    e = make(p_i=[1.5], q_i=[2.0], lambda_i=[1.0], alpha_i=[0.2], gamma_i=[0.5])
    w = [HomogeneousWeight.power(0.5, 1.7, 1)]
    assert structural_constant(StructuralKind.D_LOWER, e, w) == pytest.approx(1.0, rel=1e-12)


def test_d_lower_rejections():
    e = make(lambda_i=[0.5], alpha_i=[0.6], p_i=[1.0], q_i=[1.0])
    w = [HomogeneousWeight.power(0.0, 1.0, 1)]
    with pytest.raises(ValueError):
        structural_constant(StructuralKind.D_LOWER, e, w)
    with pytest.raises(ValueError):
        structural_constant(StructuralKind.D_LOWER, e, None)


def test_e_lower_symmetric_example():
    e = make(m=2)
    w = [HomogeneousWeight.power(0.0, 1.0, 1)] * 2
    assert structural_constant(StructuralKind.E_LOWER, e, w) == pytest.approx(1.0, rel=1e-12)


def test_e_lower_single_factor_is_one():
    e = make(p_i=[2.0], q_i=[2.0])
    w = [HomogeneousWeight.power(0.0, 1.0, 1)]
    assert structural_constant(StructuralKind.E_LOWER, e, w) == pytest.approx(1.0, rel=1e-12)


def test_kernel_kind_m_checks():
    e2 = make(m=2)
    k2 = KernelSpec(1, PowerBeta(0.0, 0.0), (PowerCurve(1.0), PowerCurve(1.0)))
    with pytest.raises(ValueError):
        kernel_constant(ConstantKind.XIAO, e2, k2)
    with pytest.raises(ValueError):
        kernel_constant(ConstantKind.A1, e2, IDENTITY)
    with pytest.raises(ValueError):
        kernel_constant(ConstantKind.COMMUTATOR_MH, make(), IDENTITY)  # no beta_i
