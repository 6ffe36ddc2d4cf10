"""
The permutation sigma(X) = X + X^d + X^(dq) of GF(q^2), d = (q^2+q+1)/3, its
inverse, and the Boolean functions built from that inverse:

    f_alpha(x) = Tr_{q^2}(alpha * sigma^-1(x)^3)
    g_alpha(x) = Tr_{q^2}(alpha * u^(6i) / (1 + u^(2i) + u^(-2i))^3 * x^3),  x in u^i GF(q)^*

Truth tables are indexed by the tower encoding of x (a0 in the low bits).
"""

import logging
from dataclasses import dataclass
from functools import cache

import numpy as np

from spectra.exceptions import NotAPermutation, NotInBaseField, NotInMu, ZeroAlpha
from spectra.fields import has_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SigmaTable:
    forward: np.ndarray
    backward: np.ndarray


@dataclass(frozen=True, eq=False)
class TruthTable:
    bits: np.ndarray
    e: int
    alpha: int
    family: str = "f"

    def __len__(self):
        return self.bits.size

    def weight(self):
        return int(self.bits.sum())

    def to_hex(self):
        """Bit i of the returned integer is the value at the element encoded as i."""
        packed = np.packbits(self.bits.astype(np.uint8), bitorder="little")
        value = int.from_bytes(packed.tobytes(), "little")

        return format(value, f"0{2 * packed.size}x")


def sigma_eval(ctx, x):
    xd = ctx.pow2(x, ctx.d)
    return x ^ xd ^ ctx.conj(xd)


def sigma_forward_array(ctx):
    xs = ctx.elements2
    xd = ctx.pow2_array(xs, ctx.d)

    return xs ^ xd ^ ctx.conj_array(xd)


@cache
def sigma_inverse_table(ctx):
    forward = sigma_forward_array(ctx)
    if np.unique(forward).size != ctx.order:
        raise NotAPermutation(f"sigma is not injective on GF(2^{2 * ctx.e})")

    backward = np.empty(ctx.order, dtype=np.int64)
    backward[forward] = ctx.elements2
    logger.debug("built sigma tables for e=%d", ctx.e)

    return SigmaTable(forward=forward, backward=backward)


def coset_denominator(ctx, z):
    """1 + z^2 + z^-2 for z in mu_{q+1}; always a nonzero element of GF(q)."""
    z2 = ctx.mul2(z, z)
    return ctx.to_base(1 ^ z2 ^ ctx.inv2(z2))


def coset_multiplier(ctx, i):
    """z^2 / (1 + z^2 + z^-2) for z = u^i."""
    z = ctx.mu[i]
    return ctx.scale(ctx.inv(coset_denominator(ctx, z)), ctx.mul2(z, z))


@cache
def coset_multipliers(ctx):
    return np.array([coset_multiplier(ctx, i) for i in range(ctx.q + 1)], dtype=np.int64)


def cyclotomic_coefficient(ctx, j, generator=None):
    """v^(6j) / (1 + v^(2j) + v^(-2j))^3, the coefficient of x^3 in g_alpha on v^j GF(q)^*.

    ``v`` is ``generator`` when given and the context's ``u`` otherwise.
    """
    v = ctx.u if generator is None else generator
    v2j = ctx.pow2(v, 2 * j)
    denominator = ctx.to_base(1 ^ v2j ^ ctx.pow2(v, -2 * j))

    return ctx.scale(ctx.pow(denominator, -3), ctx.pow2(v, 6 * j))


def generator_exponents(ctx, generator):
    """j with generator^j = u^i, listed by i; refuses anything that does not generate mu."""
    if not has_order(ctx.pow2, generator, ctx.q + 1):
        raise NotInMu(f"{ctx.format2(generator)} does not generate the (q+1)-th roots of unity")

    position = {z: i for i, z in enumerate(ctx.mu)}
    exponents = [0] * (ctx.q + 1)
    z = 1
    for j in range(ctx.q + 1):
        exponents[position[z]] = j
        z = ctx.mul2(z, generator)

    return exponents


@cache
def cyclotomic_coefficients(ctx, generator=None):
    """Coefficients by coset index i of x in u^i GF(q)^*, written in powers of ``generator``."""
    if generator is None:
        exponents = range(ctx.q + 1)
    else:
        exponents = generator_exponents(ctx, generator)

    return np.array(
        [cyclotomic_coefficient(ctx, j, generator) for j in exponents], dtype=np.int64
    )


def sigma_inverse_closed(ctx, x):
    if x == 0:
        return 0

    return ctx.mul2(coset_multiplier(ctx, ctx.coset_index(x)), x)


def sigma_inverse_closed_array(ctx):
    xs = ctx.elements2
    nonzero = xs[1:]
    result = np.zeros(ctx.order, dtype=np.int64)
    multipliers = coset_multipliers(ctx)[ctx.coset_index_array(nonzero)]
    result[1:] = ctx.mul2_array(multipliers, nonzero)

    return result


def _check_alpha(ctx, alpha):
    if alpha == 0:
        raise ZeroAlpha()
    if not 0 < alpha < ctx.q:
        raise NotInBaseField(f"alpha={alpha:#x} is not an element of GF(2^{ctx.e})")


def f_alpha_table(ctx, alpha):
    _check_alpha(ctx, alpha)
    preimage_cubes = ctx.pow2_array(sigma_inverse_table(ctx).backward, 3)
    bits = ctx.tr2_array(ctx.mul2_array(preimage_cubes, alpha))

    return TruthTable(bits=bits.astype(np.uint8), e=ctx.e, alpha=alpha, family="f")


def g_alpha_table(ctx, alpha, generator=None):
    _check_alpha(ctx, alpha)
    nonzero = ctx.elements2[1:]
    coefficients = cyclotomic_coefficients(ctx, generator)[ctx.coset_index_array(nonzero)]
    scaled = ctx.mul2_array(coefficients, alpha)
    bits = np.zeros(ctx.order, dtype=np.uint8)
    bits[1:] = ctx.tr2_array(ctx.mul2_array(scaled, ctx.pow2_array(nonzero, 3)))

    return TruthTable(bits=bits, e=ctx.e, alpha=alpha, family="g")


def family_table(ctx, alpha, family="f"):
    if family == "g":
        return g_alpha_table(ctx, alpha)

    return f_alpha_table(ctx, alpha)
