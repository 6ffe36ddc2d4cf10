"""
Walsh transforms of truth tables on GF(q^2), exact in int64.

The fast transform is the usual butterfly over the bits of the tower
encoding. Its output index is a GF(2)-linear functional, not a field element:
Tr_{q^2}(beta x) = <G enc(beta), enc(x)> with G the Gram matrix of the trace
form on the encoding basis, and ``functional_index`` maps every beta to the
transform slot that holds W(beta).
"""

import logging
from dataclasses import dataclass
from functools import cache

import numpy as np

logger = logging.getLogger(__name__)

# bit counts of every byte, for popcounts of packed sign vectors
BYTE_WEIGHTS = np.unpackbits(
    np.arange(256, dtype=np.uint8)[:, None], axis=1
).sum(axis=1).astype(np.int64)

# element budget per chunk of beta-by-x products in the naive sums
CHUNK_ELEMENTS = 1 << 21


@dataclass(frozen=True, eq=False)
class Spectrum:
    e: int
    coeffs: np.ndarray
    histogram: dict
    inner: dict
    outer: dict

    @property
    def q(self):
        return 1 << self.e


def histogram_of(values):
    """Value -> multiplicity, keys ascending."""
    keys, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
    return {int(k): int(c) for k, c in zip(keys, counts)}


def labelled(histogram):
    """JSON-ready histogram: decimal string keys, ascending by value."""
    return {str(value): count for value, count in sorted(histogram.items())}


def gram_matrix(ctx):
    """G[i][j] = Tr_{q^2}(b_i b_j) for the encoding basis b_i = 1 << i."""
    size = 2 * ctx.e
    gram = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            gram[i, j] = ctx.tr2(ctx.mul2(1 << i, 1 << j))

    return gram


@cache
def functional_index(ctx):
    """For each beta (by encoding), the transform slot holding W(beta)."""
    size = 2 * ctx.e
    shifts = np.arange(size, dtype=np.int64)
    beta_bits = (ctx.elements2[:, None] >> shifts[None, :]) & 1
    functional_bits = (beta_bits @ gram_matrix(ctx)) & 1

    return functional_bits @ (np.int64(1) << shifts)


def fwht(values):
    """Unnormalised Walsh-Hadamard transform of a length-2^n integer vector."""
    data = np.array(values, dtype=np.int64)
    size = data.size
    half = 1
    while half < size:
        data = data.reshape(-1, 2, half)
        data = np.stack((data[:, 0] + data[:, 1], data[:, 0] - data[:, 1]), axis=1)
        half *= 2

    return data.reshape(-1)


def signs(tt):
    return 1 - 2 * tt.bits.astype(np.int64)


def walsh_naive(ctx, tt, beta):
    """W_f(beta) straight from the definition."""
    exponents = tt.bits ^ ctx.tr2_array(ctx.mul2_array(ctx.elements2, beta))
    return int(ctx.order - 2 * int(exponents.sum()))


class CharacterBank:
    """
    Packed bits of x -> Tr_{q^2}(beta x) for a fixed set of betas.

    The bank does not depend on the function, so one bank serves every alpha:
    W(beta) = q^2 - 2 * weight(f xor Tr(beta .)).
    """

    def __init__(self, ctx, betas):
        self.ctx = ctx
        self.betas = np.atleast_1d(np.asarray(betas, dtype=np.int64))
        chunk = max(1, CHUNK_ELEMENTS // ctx.order)
        rows = []
        for start in range(0, self.betas.size, chunk):
            block = self.betas[start : start + chunk]
            chars = ctx.tr2_array(ctx.mul2_array(block[:, None], ctx.elements2[None, :]))
            rows.append(np.packbits(chars.astype(np.uint8), axis=1))
        self.packed = (
            np.concatenate(rows)
            if rows
            else np.zeros((0, ctx.order // 8), dtype=np.uint8)
        )

    def walsh(self, tt):
        packed_f = np.packbits(tt.bits.astype(np.uint8))
        disagreements = BYTE_WEIGHTS[self.packed ^ packed_f[None, :]].sum(axis=1)

        return self.ctx.order - 2 * disagreements


def walsh_naive_batch(ctx, tt, betas):
    return CharacterBank(ctx, betas).walsh(tt)


@cache
def base_field_mask(ctx):
    """True at the encodings of GF(q) inside GF(q^2)."""
    return ctx.conj_array(ctx.elements2) == ctx.elements2


def split_inner_outer(ctx, spectrum):
    """Histograms over beta in GF(q) and over beta in GF(q^2) minus GF(q)."""
    fixed = base_field_mask(ctx)
    return histogram_of(spectrum.coeffs[fixed]), histogram_of(spectrum.coeffs[~fixed])


def walsh_full(ctx, tt):
    coeffs = fwht(signs(tt))[functional_index(ctx)]
    fixed = base_field_mask(ctx)

    return Spectrum(
        e=ctx.e,
        coeffs=coeffs,
        histogram=histogram_of(coeffs),
        inner=histogram_of(coeffs[fixed]),
        outer=histogram_of(coeffs[~fixed]),
    )


def is_bent(spectrum):
    return set(spectrum.histogram) <= {spectrum.q, -spectrum.q}


def orthogonality_sums(spectrum):
    """(sum of W, sum of W^2); q^2 and q^4 for every f with f(0) = 0."""
    return int(spectrum.coeffs.sum()), int((spectrum.coeffs * spectrum.coeffs).sum())


def predicted_distribution(e, cube):
    q = 1 << e
    if not cube:
        return {-q: q * (q - 1) // 2, q: q * (q + 1) // 2}
    if e == 2:
        return {-2 * q: q // 4, 0: q * q - q, 2 * q: 3 * q // 4}

    return {-2 * q: q * (q - 2) // 8, 0: 3 * q * q // 4, 2 * q: q * (q + 2) // 8}


def predicted_value_sets(e, cube):
    """(values on GF(q), values off GF(q))."""
    q = 1 << e
    if not cube:
        return {q}, {-q, q}
    if e == 2:
        return {-2 * q, 2 * q}, {0}

    return {-2 * q, 2 * q}, {-2 * q, 0, 2 * q}
