"""
Exact arithmetic in GF(2^e) and in the quadratic tower GF(2^2e) = GF(2^e)[theta].

A base-field element is an int whose bits are its coordinates in the power
basis of the context's modulus (constant term in bit 0). A tower element
a0 + a1*theta is the int ``a0 | (a1 << e)``, so addition is XOR in both fields
and base-field elements embed into the tower unchanged. theta is a root of
X^2 + X + lambda + 1 with Tr(lambda) = 1, hence theta^q = theta + 1.

Scalar operations work for every even e up to 16. The vectorised ``*_array``
operations use numpy discrete-log tables; the tower tables hold 2^2e entries
and are only built for e <= 8.
"""

import logging
import math
from functools import cache, cached_property

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from spectra.exceptions import (
    DivisionByZero,
    FieldTooLarge,
    InvariantViolation,
    NotInBaseField,
    OddExtensionDegree,
    ZeroArgument,
)

logger = logging.getLogger(__name__)

MAX_DEGREE = 16
TABLE_MAX_DEGREE = 8


def clmul(a, b):
    """Carry-less product of two GF(2)[X] polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1

    return result


def poly_mod(a, modulus):
    degree = modulus.bit_length() - 1
    while a.bit_length() > degree:
        a ^= modulus << (a.bit_length() - 1 - degree)

    return a


def is_irreducible(poly):
    """Irreducibility over GF(2) of the polynomial whose bit i is the X^i coefficient."""
    degree = poly.bit_length() - 1
    if degree < 1:
        return False

    coefficients = [(poly >> i) & 1 for i in range(degree, -1, -1)]
    return gf_irreducible_p(coefficients, 2, ZZ)


def smallest_irreducible(e):
    for poly in range(1 << e, 1 << (e + 1)):
        if is_irreducible(poly):
            return poly

    # there is always an irreducible polynomial of every degree
    raise AssertionError(f"no irreducible polynomial of degree {e}")


def has_order(power, element, order):
    """True when ``element`` has multiplicative order exactly ``order``."""
    if power(element, order) != 1:
        return False

    return all(power(element, order // p) != 1 for p in factorint(order))


def format_elem(a):
    return f"{a:x}"


def parse_elem(text):
    return int(text.strip().lower().removeprefix("0x"), 16)


class FieldContext:
    """
    Immutable description of GF(q), q = 2^e, and its tower GF(q^2).

    Construction is deterministic: the modulus is the smallest irreducible
    polynomial of degree e, lambda the smallest trace-one element, g the
    smallest primitive element of GF(q), g2 the smallest primitive element
    of GF(q^2) in tower encoding, u = g2^(q-1) and omega = g^((q-1)/3).
    """

    def __init__(self, e):
        if e < 2 or e % 2:
            raise OddExtensionDegree(e)
        if e > MAX_DEGREE:
            raise FieldTooLarge(f"e={e} exceeds the supported maximum {MAX_DEGREE}")

        self.e = e
        self.q = 1 << e
        self.mask = self.q - 1
        self.order = self.q * self.q
        self.d = (self.q * self.q + self.q + 1) // 3
        self.d_prime = self.q * self.q - self.q + 1

        self.modulus = smallest_irreducible(e)
        self.generator = next(
            a
            for a in range(2, self.q)
            if has_order(self._slow_pow, a, self.q - 1)
        )
        self._build_base_tables()

        self.lam = next(a for a in range(self.q) if self.tr(a) == 1)
        self.lam_plus_one = self.lam ^ 1
        self.omega = self.pow(self.generator, (self.q - 1) // 3)

        self.generator2 = next(
            x
            for x in range(2, self.order)
            if has_order(self.pow2, x, self.order - 1)
        )
        self.u = self.pow2(self.generator2, self.q - 1)

        self._check_invariants()
        logger.debug(
            "built GF(2^%d): modulus=%s lambda=%s g=%s g2=%s u=%s",
            e,
            format_elem(self.modulus),
            format_elem(self.lam),
            format_elem(self.generator),
            format_elem(self.generator2),
            self.format2(self.u),
        )

    def __repr__(self):
        return f"<FieldContext e={self.e} modulus={self.modulus:#x}>"

    def _slow_pow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = poly_mod(clmul(result, a), self.modulus)
            a = poly_mod(clmul(a, a), self.modulus)
            n >>= 1

        return result

    def _build_base_tables(self):
        exp = [0] * (self.q - 1)
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            x = poly_mod(clmul(x, self.generator), self.modulus)

        log = [0] * self.q
        for i, value in enumerate(exp):
            log[value] = i

        self._exp = exp
        self._log = log
        self.exp_table = np.array(exp, dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)

        self.trace_mask = 0
        for i in range(self.e):
            self.trace_mask |= self._conjugate_sum(1 << i) << i
        self.trace_table = np.array(
            [self.tr(a) for a in range(self.q)], dtype=np.int64
        )

    def _conjugate_sum(self, a):
        total, x = 0, a
        for _ in range(self.e):
            total ^= x
            x = self.mul(x, x)
        if total not in (0, 1):
            raise InvariantViolation(f"trace of {a:#x} left GF(2)")

        return total

    def _check_invariants(self):
        q = self.q
        failures = []
        if self.tr(1) != 0:
            failures.append("Tr_q(1) != 0")
        if self.tr(self.lam) != 1:
            failures.append("Tr_q(lambda) != 1")
        if not has_order(self.pow, self.generator, q - 1):
            failures.append("g does not have order q-1")
        if not has_order(self.pow2, self.u, q + 1):
            failures.append("u does not have order q+1")
        if self.mul(self.omega, self.omega) ^ self.omega ^ 1:
            failures.append("omega^2 + omega + 1 != 0")
        if 3 * self.d != q * q + q + 1:
            failures.append("3d != q^2 + q + 1")
        if math.gcd(3, q + 1) != 1 or math.gcd(3, q - 1) != 3:
            failures.append("gcd facts fail")

        if failures:
            raise InvariantViolation(f"GF(2^{self.e}): " + "; ".join(failures))

    # -- GF(q) -------------------------------------------------------------

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0

        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("zero has no inverse in GF(2^e)")

        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if a == 0:
            if n > 0:
                return 0
            if n == 0:
                return 1
            raise DivisionByZero("negative power of zero")

        return self._exp[self._log[a] * n % (self.q - 1)]

    def sqrt(self, a):
        """The unique square root a^(q/2)."""
        return self.pow(a, self.q // 2)

    def tr(self, a):
        """Absolute trace GF(q) -> GF(2); linear, so a parity of masked bits."""
        return (a & self.trace_mask).bit_count() & 1

    def is_cube(self, a):
        if a == 0:
            raise ZeroArgument("cubic residuacity is only defined on GF(q)^*")

        return self.pow(a, (self.q - 1) // 3) == 1

    def nonzero(self):
        return range(1, self.q)

    # -- GF(q^2) as GF(q)[theta] ---------------------------------------------

    def join(self, a0, a1):
        return a0 | (a1 << self.e)

    def split(self, x):
        return x & self.mask, x >> self.e

    def in_base(self, x):
        return x >> self.e == 0

    def to_base(self, x):
        if not self.in_base(x):
            raise NotInBaseField(f"{self.format2(x)} is not fixed by Frobenius")

        return x

    def conj(self, x):
        """Frobenius x -> x^q; theta^q = theta + 1."""
        a0, a1 = self.split(x)
        return self.join(a0 ^ a1, a1)

    def scale(self, a, x):
        a0, a1 = self.split(x)
        return self.join(self.mul(a, a0), self.mul(a, a1))

    def mul2(self, x, y):
        a0, a1 = self.split(x)
        b0, b1 = self.split(y)
        high = self.mul(a1, b1)
        c0 = self.mul(a0, b0) ^ self.mul(high, self.lam_plus_one)
        c1 = self.mul(a0, b1) ^ self.mul(a1, b0) ^ high

        return self.join(c0, c1)

    def norm(self, x):
        return self.to_base(self.mul2(x, self.conj(x)))

    def inv2(self, x):
        if x == 0:
            raise DivisionByZero("zero has no inverse in GF(2^2e)")

        return self.scale(self.inv(self.norm(x)), self.conj(x))

    def pow2(self, x, n):
        if n < 0:
            x = self.inv2(x)
            n = -n

        result = 1
        while n:
            if n & 1:
                result = self.mul2(result, x)
            x = self.mul2(x, x)
            n >>= 1

        return result

    def tr2(self, x):
        """Tr_{q^2}(x) = Tr_q(x + x^q), and x + x^q is the theta coordinate."""
        return self.tr(x >> self.e)

    def tr2_direct(self, x):
        """Tr_{q^2}(x) as the sum of all 2e Frobenius conjugates."""
        total, y = 0, x
        for _ in range(2 * self.e):
            total ^= y
            y = self.mul2(y, y)
        if total not in (0, 1):
            raise InvariantViolation(f"trace of {self.format2(x)} left GF(2)")

        return total

    def format2(self, x):
        a0, a1 = self.split(x)
        return f"{a0:x}+{a1:x}*t"

    # -- mu_{q+1} and the decomposition x = y * u^i ------------------------

    @cached_property
    def mu(self):
        """u^0, ..., u^q."""
        elements = [1]
        for _ in range(self.q):
            elements.append(self.mul2(elements[-1], self.u))

        return elements

    @cached_property
    def _mu_log(self):
        # z -> z^(q-1) permutes mu_{q+1}; index by powers of u^(q-1)
        step = self.pow2(self.u, self.q - 1)
        index = {}
        w = 1
        for i in range(self.q + 1):
            index[w] = i
            w = self.mul2(w, step)

        return index

    def coset_index(self, x):
        """The unique i in [0, q] with x in u^i * GF(q)^*."""
        if x == 0:
            raise ZeroArgument("zero lies in no coset u^i GF(q)^*")

        return self._mu_log[self.pow2(x, self.q - 1)]

    def decompose(self, x):
        """Split nonzero x as y * u^i with y in GF(q)^*; returns (y, i)."""
        i = self.coset_index(x)
        y = self.to_base(self.mul2(x, self.inv2(self.mu[i])))

        return y, i

    # -- vectorised GF(q) ----------------------------------------------------

    def mul_array(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        product = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

        return np.where((a == 0) | (b == 0), 0, product)

    def pow_array(self, a, n):
        a = np.asarray(a, dtype=np.int64)
        zero = a == 0
        if n < 0 and zero.any():
            raise DivisionByZero("negative power of zero")

        power = self.exp_table[(self.log_table[a] * n) % (self.q - 1)]
        return np.where(zero, 0 if n > 0 else 1, power)

    def tr_array(self, a):
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    # -- vectorised GF(q^2) --------------------------------------------------

    @cached_property
    def elements2(self):
        """Every element of GF(q^2) in encoding order."""
        self._require_tables()
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def tower_tables(self):
        """(exp2, log2) for the generator g2 of GF(q^2)^*."""
        self._require_tables()
        n = self.order - 1
        exp2 = np.empty(n, dtype=np.int64)
        exp2[0] = 1
        filled = 1
        while filled < n:
            block = min(filled, n - filled)
            step = self.pow2(self.generator2, filled)
            exp2[filled : filled + block] = self._tower_mul_array(exp2[:block], step)
            filled += block

        log2 = np.zeros(self.order, dtype=np.int64)
        log2[exp2] = np.arange(n, dtype=np.int64)
        if np.unique(exp2).size != n:
            raise InvariantViolation("g2 is not a generator of GF(q^2)^*")

        logger.debug("built GF(2^%d) log tables (%d entries)", 2 * self.e, n)
        return exp2, log2

    def _require_tables(self):
        if self.e > TABLE_MAX_DEGREE:
            raise FieldTooLarge(
                f"tables over GF(2^{2 * self.e}) need e <= {TABLE_MAX_DEGREE}"
            )

    def _tower_mul_array(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        a0, a1 = x & self.mask, x >> self.e
        b0, b1 = y & self.mask, y >> self.e
        high = self.mul_array(a1, b1)
        c0 = self.mul_array(a0, b0) ^ self.mul_array(high, self.lam_plus_one)
        c1 = self.mul_array(a0, b1) ^ self.mul_array(a1, b0) ^ high

        return c0 | (c1 << self.e)

    def mul2_array(self, x, y):
        exp2, log2 = self.tower_tables
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        product = exp2[(log2[x] + log2[y]) % (self.order - 1)]

        return np.where((x == 0) | (y == 0), 0, product)

    def pow2_array(self, x, n):
        exp2, log2 = self.tower_tables
        x = np.asarray(x, dtype=np.int64)
        zero = x == 0
        if n < 0 and zero.any():
            raise DivisionByZero("negative power of zero")

        power = exp2[(log2[x] * n) % (self.order - 1)]
        return np.where(zero, 0 if n > 0 else 1, power)

    def conj_array(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x ^ (x >> self.e)

    def tr2_array(self, x):
        return self.trace_table[np.asarray(x, dtype=np.int64) >> self.e]

    def coset_index_array(self, x):
        """Vectorised coset_index; x must be nonzero."""
        _, log2 = self.tower_tables
        # x = g2^k lies in u^i GF(q)^* iff (q-1) i = k mod (q+1), and q-1 = -2 there
        k = log2[np.asarray(x, dtype=np.int64)]
        return (-k * ((self.q + 2) // 2)) % (self.q + 1)


@cache
def field_context(e):
    """Shared, immutable context for GF(2^e); same e gives the same object."""
    return FieldContext(e)


def context_summary(ctx):
    return {
        "e": ctx.e,
        "q": ctx.q,
        "modulus": format_elem(ctx.modulus),
        "lambda": format_elem(ctx.lam),
        "g": format_elem(ctx.generator),
        "g2": ctx.format2(ctx.generator2),
        "u": ctx.format2(ctx.u),
        "omega": format_elem(ctx.omega),
        "d": ctx.d,
        "d_prime": ctx.d_prime,
    }
