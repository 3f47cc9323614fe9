"""
Closed-form approximations of the one- and two-dimensional Q-functions.

Both two-dimensional forms come from substituting an exponential model of the
inner Q into the single-integral representation
Q(x, y; rho) = (1/sqrt(2 pi)) int_x^inf e^{-v^2/2} Q((y - rho v)/sqrt(1 - rho^2)) dv
and integrating term by term with the Gaussian tail kernel. The trailing Q is
the exact one.
"""

import math
from typing import Callable, List

import numpy as np

from ..constants import (
    EXP_LINEAR_DEN,
    EXP_LINEAR_NUM,
    EXP_WEIGHT,
    SQRT_2PI,
    THREE_EXP_TERMS,
)
from ..schemas import EvalPoint, FirstFormConstants, SecondFormConstants, TailKernelParams
from .special import gauss_tail_kernel, q1


def q1_approx_exp(x: float) -> float:
    """Q(x) ~ 0.49 exp(-8x/13) exp(-x^2/2), intended for x >= 0."""
    return EXP_WEIGHT * math.exp(-(EXP_LINEAR_NUM * x) / EXP_LINEAR_DEN - 0.5 * x * x)


def q1_approx_3exp(x: float) -> float:
    """Q(x) ~ 0.208 e^{-0.876 x^2} + 0.13 e^{-0.525 x^2} + 0.14 e^{-7.25 x^2}, x >= 0."""
    return sum(weight * math.exp(-kappa * x * x) for weight, kappa in THREE_EXP_TERMS)


def first_form_constants(rho: float, y: float) -> FirstFormConstants:
    """A = 1/(1 - rho^2) and B = 8 rho/(13 sqrt(1 - rho^2)) + rho y/(1 - rho^2)."""
    one_minus = 1.0 - rho * rho
    return FirstFormConstants(
        A=1.0 / one_minus,
        B=EXP_LINEAR_NUM * rho / (EXP_LINEAR_DEN * math.sqrt(one_minus))
        + rho * y / one_minus,
    )


def second_form_constants(rho: float) -> SecondFormConstants:
    """
    Exponent constants 1/2 + kappa rho^2/(1 - rho^2) and linear constants
    2 kappa rho/(1 - rho^2) for the three kappas of the three-exponential model.
    """
    one_minus = 1.0 - rho * rho
    values = []
    for _, kappa in THREE_EXP_TERMS:
        values.append(0.5 + kappa * rho * rho / one_minus)
        values.append(2.0 * kappa * rho / one_minus)
    a, b, c, d, f, g = values
    return SecondFormConstants(a=a, b=b, c=c, d=d, f=f, g=g)


def q2_approx_first(p: EvalPoint) -> float:
    """
    Single-exponential closed form:
    (0.49/sqrt(A)) e^{-8y/(13 sqrt(1-rho^2))} e^{-y^2/(2(1-rho^2))} e^{B^2/(2A)}
    Q(x sqrt(A) - B/sqrt(A)).
    """
    one_minus = 1.0 - p.rho * p.rho
    scale = math.sqrt(one_minus)
    constants = first_form_constants(p.rho, p.y)
    A, B = constants.A, constants.B
    root_a = math.sqrt(A)
    exponent = (
        -(EXP_LINEAR_NUM * p.y) / (EXP_LINEAR_DEN * scale)
        - p.y * p.y / (2.0 * one_minus)
        + B * B / (2.0 * A)
    )
    return EXP_WEIGHT / root_a * math.exp(exponent) * q1(p.x * root_a - B / root_a)


def second_form_terms(p: EvalPoint) -> List[float]:
    """
    The three terms w/sqrt(2a) e^{-kappa y^2/(1-rho^2)} e^{b^2 y^2/(4a)}
    Q(x sqrt(2a) - b y/sqrt(2a)), paired (a, b), (c, d), (f, g).
    """
    one_minus = 1.0 - p.rho * p.rho
    constants = second_form_constants(p.rho)
    terms = []
    for (weight, kappa), (quad, linear) in zip(THREE_EXP_TERMS, constants.pairs()):
        root = math.sqrt(2.0 * quad)
        exponent = -kappa * p.y * p.y / one_minus + (linear * p.y) ** 2 / (4.0 * quad)
        terms.append(
            weight / root * math.exp(exponent) * q1(p.x * root - linear * p.y / root)
        )
    return terms


def q2_approx_second(p: EvalPoint) -> float:
    """Three-exponential closed form, the sum of second_form_terms."""
    return sum(second_form_terms(p))


def first_form_kernel_value(p: EvalPoint) -> float:
    """
    The first form rebuilt from the tail kernel: the approximate integrand is
    a constant times exp(-(A/2) v^2 + B v) on [x, inf).
    """
    one_minus = 1.0 - p.rho * p.rho
    scale = math.sqrt(one_minus)
    constants = first_form_constants(p.rho, p.y)
    prefactor = math.exp(
        -(EXP_LINEAR_NUM * p.y) / (EXP_LINEAR_DEN * scale) - p.y * p.y / (2.0 * one_minus)
    )
    kernel = gauss_tail_kernel(
        TailKernelParams(alpha=0.5 * constants.A, beta=constants.B, lower=p.x)
    )
    return EXP_WEIGHT / SQRT_2PI * prefactor * kernel


def second_form_kernel_terms(p: EvalPoint) -> List[float]:
    """Per-term tail-kernel evaluation of the three-integral expression."""
    one_minus = 1.0 - p.rho * p.rho
    constants = second_form_constants(p.rho)
    terms = []
    for (weight, kappa), (quad, linear) in zip(THREE_EXP_TERMS, constants.pairs()):
        prefactor = math.exp(-kappa * p.y * p.y / one_minus)
        kernel = gauss_tail_kernel(
            TailKernelParams(alpha=quad, beta=linear * p.y, lower=p.x)
        )
        terms.append(weight / SQRT_2PI * prefactor * kernel)
    return terms


def first_form_integrand(p: EvalPoint) -> Callable[[np.ndarray], np.ndarray]:
    """e^{-v^2/2}/sqrt(2 pi) times the single-exponential model of the inner Q."""
    scale = math.sqrt(1.0 - p.rho * p.rho)

    def integrand(v: np.ndarray) -> np.ndarray:
        z = (p.y - p.rho * v) / scale
        inner = EXP_WEIGHT * np.exp(-(EXP_LINEAR_NUM * z) / EXP_LINEAR_DEN - 0.5 * z * z)
        return np.exp(-0.5 * v * v) / SQRT_2PI * inner

    return integrand


def second_form_integrand(p: EvalPoint) -> Callable[[np.ndarray], np.ndarray]:
    """e^{-v^2/2}/sqrt(2 pi) times the three-exponential model of the inner Q."""
    scale = math.sqrt(1.0 - p.rho * p.rho)

    def integrand(v: np.ndarray) -> np.ndarray:
        z = (p.y - p.rho * v) / scale
        inner = sum(weight * np.exp(-kappa * z * z) for weight, kappa in THREE_EXP_TERMS)
        return np.exp(-0.5 * v * v) / SQRT_2PI * inner

    return integrand
