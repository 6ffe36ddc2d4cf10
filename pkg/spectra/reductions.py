"""
Executable forms of the objects that reduce W_{f_alpha}(beta) to sums over GF(q).

Notation follows the module docstrings of ``fields`` and ``permutation``:
chi(a) = (-1)^Tr_q(a), H0 = {u : Tr_q(u) = 0}, the trace-one set
TT = {A : Tr_q(A) = 1}, and for beta outside GF(q) the frame
beta = b (c + theta), kappa = alpha / b^3.

Shell quantities are kept at integer scale: U_delta(u) is half of
T_delta(u) - q[u=0], and the Hadamard value 2 * sum chi(cu) U_delta(u)
is W_{f_alpha}(b (c + theta)) when delta = kappa. The unit-scale word is
this divided by 2 * sqrt(q) = 2^(e/2 + 1).
"""

import logging
from dataclasses import dataclass
from functools import cache

import numpy as np

from spectra.exceptions import (
    AlphaNotCube,
    InvariantViolation,
    NotInBaseField,
    NotInMu,
    NotTraceOne,
    ZeroArgument,
)

logger = logging.getLogger(__name__)


# -- P_alpha and Q_beta on mu_{q+1} -----------------------------------------


def _require_mu(ctx, z):
    if z == 0 or ctx.pow2(z, ctx.q + 1) != 1:
        raise NotInMu(f"{ctx.format2(z)} is not a (q+1)-th root of unity")


def _base_array(ctx, values, label):
    if (values >> ctx.e).any():
        raise InvariantViolation(f"{label} left GF(2^{ctx.e})")

    return values


@cache
def mu_array(ctx):
    return np.array(ctx.mu, dtype=np.int64)


def p_alpha(ctx, alpha, z):
    """alpha (z^9 + z^-9)."""
    _require_mu(ctx, z)
    z9 = ctx.pow2(z, 9)
    return ctx.to_base(ctx.scale(alpha, z9 ^ ctx.inv2(z9)))


def q_beta(ctx, beta, z):
    """beta z^3 + conj(beta) z^-3 + (beta + conj(beta)) (z + z^-1)."""
    _require_mu(ctx, z)
    beta_bar = ctx.conj(beta)
    z3 = ctx.pow2(z, 3)
    value = (
        ctx.mul2(beta, z3)
        ^ ctx.mul2(beta_bar, ctx.inv2(z3))
        ^ ctx.mul2(beta ^ beta_bar, z ^ ctx.inv2(z))
    )

    return ctx.to_base(value)


def p_alpha_array(ctx, alpha, zs):
    z9 = ctx.pow2_array(zs, 9)
    return _base_array(ctx, ctx.mul2_array(z9 ^ ctx.pow2_array(z9, -1), alpha), "P_alpha")


def q_beta_array(ctx, beta, zs):
    beta_bar = ctx.conj(beta)
    z3 = ctx.pow2_array(zs, 3)
    values = (
        ctx.mul2_array(z3, beta)
        ^ ctx.mul2_array(ctx.pow2_array(z3, -1), beta_bar)
        ^ ctx.mul2_array(zs ^ ctx.pow2_array(zs, -1), beta ^ beta_bar)
    )

    return _base_array(ctx, values, "Q_beta")


def basic_reduction_sum(ctx, alpha, beta):
    """sum over (y, z) in GF(q) x mu_{q+1} of chi(P_alpha(z) y^3 + Q_beta(z) y), minus q."""
    zs = mu_array(ctx)
    ys = np.arange(ctx.q, dtype=np.int64)
    cubes = ctx.pow_array(ys, 3)
    exponents = ctx.mul_array(
        p_alpha_array(ctx, alpha, zs)[:, None], cubes[None, :]
    ) ^ ctx.mul_array(q_beta_array(ctx, beta, zs)[:, None], ys[None, :])
    terms = exponents.size

    return int(terms - 2 * int(ctx.tr_array(exponents).sum())) - ctx.q


# -- the frame beta = b (c + theta) -----------------------------------------


@dataclass(frozen=True)
class BetaFrame:
    beta: int
    b: int
    c: int
    kappa: int


def beta_frame(ctx, alpha, beta):
    b = ctx.to_base(beta ^ ctx.conj(beta))
    if b == 0:
        raise NotInBaseField(f"{ctx.format2(beta)} lies in GF(q); it has no outer frame")

    a0, _ = ctx.split(beta)
    c = ctx.div(a0, b)
    frame = BetaFrame(beta=beta, b=b, c=c, kappa=ctx.mul(alpha, ctx.pow(b, -3)))
    if ctx.scale(b, ctx.join(c, 1)) != beta:
        raise InvariantViolation(f"frame of {ctx.format2(beta)} does not reconstruct it")

    return frame


# -- the parametrisation x -> z_x of mu_{q+1} minus 1 -----------------------


@dataclass(frozen=True)
class ParamPoint:
    x: int
    a: int
    z: int
    t: int
    s: int
    phi: int


def artin_schreier(ctx, x):
    return ctx.mul(x, x) ^ x


def phi_value(ctx, a):
    """A + A^-1 + A^-2; the map P on the trace-one set."""
    return a ^ ctx.inv(a) ^ ctx.pow(a, -2)


def param_point(ctx, x):
    a = artin_schreier(ctx, x) ^ ctx.lam
    root = ctx.sqrt(a ^ 1)
    z = ctx.scale(ctx.inv(root), ctx.join(x, 1))
    z3 = ctx.pow2(z, 3)

    return ParamPoint(
        x=x,
        a=a,
        z=z,
        t=ctx.to_base(z ^ ctx.inv2(z)),
        s=ctx.to_base(z3 ^ ctx.inv2(z3)),
        phi=phi_value(ctx, a),
    )


@cache
def param_points(ctx):
    return tuple(param_point(ctx, x) for x in range(ctx.q))


@cache
def phi_table(ctx):
    """Phi(x) for every x in GF(q), indexed by x."""
    return np.array([point.phi for point in param_points(ctx)], dtype=np.int64)


# -- T and TT ----------------------------------------------------------------


def t_set_image(ctx):
    """{z + z^-1 : z in mu_{q+1}, z != 1}."""
    return {ctx.to_base(z ^ ctx.inv2(z)) for z in ctx.mu[1:]}


def t_set_trace(ctx):
    """{t in GF(q)^* : Tr_q(1/t) = 1}."""
    return {t for t in ctx.nonzero() if ctx.tr(ctx.inv(t)) == 1}


def t_set(ctx):
    image = t_set_image(ctx)
    if image != t_set_trace(ctx):
        raise InvariantViolation(f"the two constructions of T differ for e={ctx.e}")

    return image


@cache
def trace_one_set(ctx):
    """TT = {A : Tr_q(A) = 1} in ascending order with P(A) alongside."""
    elements = [a for a in range(ctx.q) if ctx.tr(a)]
    images = [phi_value(ctx, a) for a in elements]

    return np.array(elements, dtype=np.int64), np.array(images, dtype=np.int64)


def p_map(ctx, a):
    if ctx.tr(a) != 1:
        raise NotTraceOne(f"{a:#x} does not have trace one")

    return phi_value(ctx, a)


# -- the trace-zero space and L ----------------------------------------------


@dataclass(frozen=True)
class TraceZeroSpace:
    h0: tuple
    coset_reps: tuple
    l_map: dict
    l_inverse: dict


def l_map(ctx, v):
    """v + F_2 -> v^(q/2) + v."""
    return ctx.sqrt(v) ^ v


def coset_rep(v):
    """Smaller encoding of {v, v + 1}."""
    return min(v, v ^ 1)


@cache
def trace_zero_space(ctx):
    h0 = tuple(u for u in range(ctx.q) if ctx.tr(u) == 0)
    reps = tuple(sorted({coset_rep(v) for v in range(ctx.q)}))
    forward = {v: l_map(ctx, v) for v in reps}
    inverse = {u: v for v, u in forward.items()}
    if len(inverse) != len(h0) or set(inverse) != set(h0):
        raise InvariantViolation(f"L is not a bijection onto H0 for e={ctx.e}")

    return TraceZeroSpace(h0=h0, coset_reps=reps, l_map=forward, l_inverse=inverse)


# -- T_delta, h_delta and the shell word -------------------------------------


def _require_delta(delta):
    if delta == 0:
        raise ZeroArgument("delta must be nonzero")


def t_delta(ctx, delta, u):
    """sum over x in GF(q) of chi(delta Phi(x) u^3 + (x + 1) u)."""
    return int(t_delta_array(ctx, delta, [u])[0])


def t_delta_array(ctx, delta, us):
    _require_delta(delta)
    us = np.asarray(us, dtype=np.int64)
    xs = np.arange(ctx.q, dtype=np.int64)
    cubic = ctx.mul_array(ctx.pow_array(us, 3), delta)
    exponents = ctx.mul_array(cubic[:, None], phi_table(ctx)[None, :]) ^ ctx.mul_array(
        us[:, None], (xs ^ 1)[None, :]
    )

    return ctx.q - 2 * ctx.tr_array(exponents).sum(axis=1)


def h_hat(ctx, delta, v):
    """sum over A in TT of chi(delta P(A) + v A)."""
    return int(h_hat_array(ctx, delta, [v])[0])


def h_hat_array(ctx, delta, vs):
    elements, images = trace_one_set(ctx)
    vs = np.asarray(vs, dtype=np.int64)
    exponents = ctx.mul_array(images, delta)[None, :] ^ ctx.mul_array(
        vs[:, None], elements[None, :]
    )

    return elements.size - 2 * ctx.tr_array(exponents).sum(axis=1)


def char(ctx, a):
    return 1 - 2 * ctx.tr(a)


CUBE = "cube"
NONCUBE = "noncube"


@dataclass(frozen=True, eq=False)
class ShellWord:
    """U_delta on H0, by ascending u."""

    delta: int
    h0: np.ndarray
    values: np.ndarray
    branch: str

    def as_dict(self):
        return {int(u): int(value) for u, value in zip(self.h0, self.values)}


@cache
def shell_word(ctx, delta):
    space = trace_zero_space(ctx)
    h0 = np.array(space.h0, dtype=np.int64)
    shifted = t_delta_array(ctx, delta, h0) - np.where(h0 == 0, ctx.q, 0)
    if (shifted % 2).any():
        raise InvariantViolation(f"T_delta has an odd value for delta={delta:#x}")

    return ShellWord(
        delta=delta,
        h0=h0,
        values=shifted // 2,
        branch=CUBE if ctx.is_cube(delta) else NONCUBE,
    )


def shell_hadamard(ctx, word, c):
    """2 * sum over u in H0 of chi(cu) U_delta(u)."""
    signs = 1 - 2 * ctx.tr_array(ctx.mul_array(word.h0, c))
    return int(2 * (signs * word.values).sum())


def shell_hadamard_all(ctx, word):
    """shell_hadamard at every c in GF(q), indexed by c."""
    cs = np.arange(ctx.q, dtype=np.int64)
    signs = 1 - 2 * ctx.tr_array(ctx.mul_array(cs[:, None], word.h0[None, :]))

    return 2 * signs @ word.values


def normalization(ctx):
    """Factor taking integer-scale Hadamard values to the unit-scale word."""
    return f"1/{2 ** (ctx.e // 2 + 1)}"


# -- W on GF(q) for cube alpha -----------------------------------------------


def inverse_cube_roots(ctx, alpha):
    """(y1, omega y1, omega^2 y1) with alpha y^3 = 1 and y1 the smallest root."""
    if alpha == 0 or not ctx.is_cube(alpha):
        raise AlphaNotCube(f"alpha={alpha:#x} is not a nonzero cube")

    y1 = next(y for y in ctx.nonzero() if ctx.mul(alpha, ctx.pow(y, 3)) == 1)
    y2 = ctx.mul(ctx.omega, y1)

    return y1, y2, ctx.mul(ctx.omega, y2)


def trace_triple(ctx, roots, beta):
    return tuple(ctx.tr(ctx.mul(beta, y)) for y in roots)


def predict_inner_walsh(ctx, alpha, beta):
    """-2q when beta is orthogonal to all three roots, 2q otherwise."""
    if not 0 <= beta < ctx.q:
        raise NotInBaseField(f"beta={beta:#x} is not an element of GF(2^{ctx.e})")

    roots = inverse_cube_roots(ctx, alpha)
    if any(trace_triple(ctx, roots, beta)):
        return 2 * ctx.q

    return -2 * ctx.q


def inner_key_sums(ctx, alpha):
    """
    W(beta) for every beta in GF(q) from the one-variable reduction

        sum_y chi(alpha lambda y^3 + beta y) * sum_x chi(alpha x^2 y^3 (1 + alpha y^3))
    """
    ys = np.arange(ctx.q, dtype=np.int64)
    scaled_cubes = ctx.mul_array(ctx.pow_array(ys, 3), alpha)
    coefficient = ctx.mul_array(scaled_cubes, scaled_cubes ^ 1)
    squares = ctx.pow_array(ys, 2)
    inner = ctx.q - 2 * ctx.tr_array(
        ctx.mul_array(coefficient[:, None], squares[None, :])
    ).sum(axis=1)

    betas = ys
    outer_exponents = ctx.mul_array(scaled_cubes, ctx.lam)[None, :] ^ ctx.mul_array(
        betas[:, None], ys[None, :]
    )
    outer_signs = 1 - 2 * ctx.tr_array(outer_exponents)

    return outer_signs @ inner


def predict_inner_spectrum(ctx, alpha):
    """predict_inner_walsh at every beta in GF(q), indexed by beta."""
    roots = np.array(inverse_cube_roots(ctx, alpha), dtype=np.int64)
    betas = np.arange(ctx.q, dtype=np.int64)
    traces = ctx.tr_array(ctx.mul_array(betas[:, None], roots[None, :]))

    return np.where(traces.any(axis=1), 2 * ctx.q, -2 * ctx.q)
