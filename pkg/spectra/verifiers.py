"""
Lemma-by-lemma verification.

Each check recomputes one identity exactly and returns a ``CheckResult``
with the number of instances it looked at and the first counterexample, if
any. Small fields (e <= EXHAUSTIVE_MAX_E) are checked exhaustively; larger
ones are exhaustive over alpha and sampled over beta, with a generator seeded
from (seed, lemma id) so that each check draws the same sample however the
suite is scheduled.
"""

import hashlib
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from spectra.conf import get_setting
from spectra.exceptions import SpectraError
from spectra.fields import clmul, format_elem, poly_mod
from spectra.permutation import (
    coset_denominator,
    coset_multipliers,
    family_table,
    g_alpha_table,
    sigma_eval,
    sigma_inverse_closed,
    sigma_inverse_closed_array,
    sigma_inverse_table,
)
from spectra.pool import ordered_map
from spectra.reductions import (
    CUBE,
    artin_schreier,
    basic_reduction_sum,
    beta_frame,
    char,
    h_hat,
    h_hat_array,
    inner_key_sums,
    inverse_cube_roots,
    mu_array,
    p_alpha_array,
    p_map,
    param_points,
    phi_table,
    predict_inner_spectrum,
    predict_inner_walsh,
    q_beta_array,
    shell_hadamard,
    shell_hadamard_all,
    shell_word,
    t_delta_array,
    t_set_image,
    t_set_trace,
    trace_one_set,
    trace_triple,
    trace_zero_space,
)
from spectra.walsh import (
    CharacterBank,
    is_bent,
    labelled,
    orthogonality_sums,
    predicted_distribution,
    predicted_value_sets,
    walsh_full,
    walsh_naive,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

SUITES = ("theorems", "lemmas", "shells")

# lemma id -> (suite, method name)
CHECKS = {}

# sample floor for the trace-transitivity check at large e
TRACE_SAMPLE_FLOOR = 10_000


def check(lemma_id, suite):
    def register(method):
        CHECKS[lemma_id] = (suite, method.__name__)
        return method

    return register


def suite_ids(suite="all"):
    if suite == "all":
        return sorted(CHECKS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")

    return sorted(lemma_id for lemma_id, (owner, _) in CHECKS.items() if owner == suite)


def stable_key(text):
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "little")


@dataclass
class CheckResult:
    lemma_id: str
    status: str
    checked: int
    failures: int = 0
    counterexample: dict | None = None

    @property
    def passed(self):
        return self.status != FAIL

    def to_record(self):
        return {
            "lemma_id": self.lemma_id,
            "status": self.status,
            "checked": self.checked,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


class Tally:
    """Instance counter for one check; keeps the first few counterexamples."""

    def __init__(self, lemma_id, limit=1):
        self.lemma_id = lemma_id
        self.limit = max(limit, 1)
        self.checked = 0
        self.failures = 0
        self.counterexamples = []
        self.skip_reason = None

    def _keep(self, details):
        if len(self.counterexamples) < self.limit:
            self.counterexamples.append(details)

    def expect(self, ok, **details):
        self.checked += 1
        if not ok:
            self.failures += 1
            self._keep(details)

    def expect_all(self, oks, describe):
        """Vector form of ``expect``; ``describe(i)`` explains the i-th entry."""
        oks = np.asarray(oks, dtype=bool).reshape(-1)
        self.checked += oks.size
        bad = np.flatnonzero(~oks)
        self.failures += bad.size
        for index in bad[: self.limit]:
            self._keep(describe(int(index)))

    def error(self, err):
        """A library error raised mid-check counts as one failed instance."""
        self.failures += 1
        self._keep({"error": type(err).__name__, "message": str(err)})

    def skip(self, reason):
        self.skip_reason = reason

    def result(self):
        if self.failures:
            status = FAIL
        elif self.skip_reason is not None and not self.checked:
            status = SKIP
        else:
            status = PASS

        return CheckResult(
            lemma_id=self.lemma_id,
            status=status,
            checked=self.checked,
            failures=self.failures,
            counterexample=self.counterexamples[0] if self.counterexamples else None,
        )


class Verifier:
    """Runs checks against one field context, sharing tables between them."""

    def __init__(self, ctx, seed=None, samples=None):
        self.ctx = ctx
        self.seed = get_setting("DEFAULT_SEED") if seed is None else seed
        self.samples = samples or get_setting("SAMPLE_SIZE")
        self.exhaustive = ctx.e <= get_setting("EXHAUSTIVE_MAX_E")
        self.limit = get_setting("COUNTEREXAMPLE_LIMIT")
        self.alphas = list(ctx.nonzero())
        self.cube_alphas = [a for a in self.alphas if ctx.is_cube(a)]
        self._tables = {}
        self._spectra = {}
        self._banks = {}

    # -- shared state --------------------------------------------------------

    def rng(self, lemma_id):
        return np.random.default_rng([self.seed, stable_key(lemma_id)])

    def table(self, alpha, family="f"):
        key = (alpha, family)
        if key not in self._tables:
            self._tables[key] = family_table(self.ctx, alpha, family)

        return self._tables[key]

    def spectrum(self, alpha):
        if alpha not in self._spectra:
            self._spectra[alpha] = walsh_full(self.ctx, self.table(alpha))

        return self._spectra[alpha]

    def inner_bank(self):
        if "inner" not in self._banks:
            self._banks["inner"] = CharacterBank(self.ctx, np.arange(self.ctx.q))

        return self._banks["inner"]

    def sample(self, rng, population, count):
        """All of ``population`` when exhaustive, else ``count`` draws without replacement."""
        population = np.asarray(population, dtype=np.int64)
        if self.exhaustive or count >= population.size:
            return population

        return np.sort(rng.choice(population, size=count, replace=False))

    def outer_betas(self):
        xs = self.ctx.elements2
        return xs[(xs >> self.ctx.e) != 0]

    def pairs(self, rng, population):
        """(alpha, beta) pairs: every alpha, and about ``samples`` pairs in total."""
        per_alpha = math.ceil(self.samples / len(self.alphas))
        return [
            (alpha, int(beta))
            for alpha in self.alphas
            for beta in self.sample(rng, population, per_alpha)
        ]

    # -- runner ----------------------------------------------------------------

    def run(self, lemma_id):
        _, method = CHECKS[lemma_id]
        tally = Tally(lemma_id, self.limit)
        started = time.perf_counter()
        try:
            getattr(self, method)(tally, self.rng(lemma_id))
        except SpectraError as err:
            tally.error(err)

        result = tally.result()
        logger.info(
            "%s: %s (%d checked) in %.3fs",
            lemma_id,
            result.status,
            result.checked,
            time.perf_counter() - started,
        )
        if tally.skip_reason and result.status == SKIP:
            logger.info("%s skipped: %s", lemma_id, tally.skip_reason)
        for details in tally.counterexamples:
            logger.warning("%s counterexample: %s", lemma_id, details)

        return result

    # -- main theorems ---------------------------------------------------------

    @check("bentness", "theorems")
    def check_bentness(self, tally, rng):
        for alpha in self.alphas:
            cube = self.ctx.is_cube(alpha)
            spectrum = self.spectrum(alpha)
            tally.expect(
                is_bent(spectrum) != cube,
                alpha=format_elem(alpha),
                cube=cube,
                histogram=labelled(spectrum.histogram),
            )

    @check("distribution", "theorems")
    def check_distribution(self, tally, rng):
        for alpha in self.alphas:
            cube = self.ctx.is_cube(alpha)
            spectrum = self.spectrum(alpha)
            expected = predicted_distribution(self.ctx.e, cube)
            tally.expect(
                spectrum.histogram == expected,
                alpha=format_elem(alpha),
                expected=labelled(expected),
                computed=labelled(spectrum.histogram),
            )

    @check("inner-outer-sets", "theorems")
    def check_inner_outer_sets(self, tally, rng):
        q = self.ctx.q
        for alpha in self.alphas:
            spectrum = self.spectrum(alpha)
            inner, outer = predicted_value_sets(self.ctx.e, self.ctx.is_cube(alpha))
            tally.expect(
                set(spectrum.inner) == inner
                and set(spectrum.outer) == outer
                and sum(spectrum.inner.values()) == q
                and sum(spectrum.outer.values()) == q * q - q,
                alpha=format_elem(alpha),
                inner=labelled(spectrum.inner),
                outer=labelled(spectrum.outer),
            )

    @check("orthogonality", "theorems")
    def check_orthogonality(self, tally, rng):
        q = self.ctx.q
        for alpha in self.alphas:
            spectrum = self.spectrum(alpha)
            total, squares = orthogonality_sums(spectrum)
            tally.expect(
                total == q * q and squares == q**4 and not (spectrum.coeffs % 2).any(),
                alpha=format_elem(alpha),
                sum=total,
                sum_of_squares=squares,
            )

    @check("fast-naive", "theorems")
    def check_fast_naive(self, tally, rng):
        ctx = self.ctx
        betas = self.sample(rng, ctx.elements2, self.samples)
        bank = CharacterBank(ctx, betas)
        for alpha in self.alphas:
            tt = self.table(alpha)
            fast = self.spectrum(alpha).coeffs[betas]
            naive = bank.walsh(tt)
            tally.expect_all(
                naive == fast,
                lambda i: {
                    "alpha": format_elem(alpha),
                    "beta": ctx.format2(int(betas[i])),
                    "fast": int(fast[i]),
                    "naive": int(naive[i]),
                },
            )
            first = int(betas[0])
            tally.expect(
                walsh_naive(ctx, tt, first) == int(fast[0]),
                alpha=format_elem(alpha),
                beta=ctx.format2(first),
            )

    @check("outer-counts", "theorems")
    def check_outer_counts(self, tally, rng):
        q = self.ctx.q
        for alpha in self.cube_alphas:
            outer = self.spectrum(alpha).outer
            nonzero = sum(count for value, count in outer.items() if value)
            tally.expect(
                nonzero == q * (q - 4) // 4
                and outer.get(2 * q, 0) == q * (q - 4) // 8
                and outer.get(-2 * q, 0) == q * (q - 4) // 8,
                alpha=format_elem(alpha),
                outer=labelled(outer),
            )

    @check("cyclotomic-inverse", "theorems")
    def check_cyclotomic_inverse(self, tally, rng):
        ctx = self.ctx
        backward = sigma_inverse_table(ctx).backward
        closed = sigma_inverse_closed_array(ctx)
        tally.expect_all(
            closed == backward,
            lambda i: {
                "x": ctx.format2(i),
                "table": ctx.format2(int(backward[i])),
                "closed": ctx.format2(int(closed[i])),
            },
        )
        for x in self.sample(rng, ctx.elements2, self.samples):
            x = int(x)
            tally.expect(
                sigma_inverse_closed(ctx, x) == int(backward[x]),
                x=ctx.format2(x),
                scalar=ctx.format2(sigma_inverse_closed(ctx, x)),
            )
        for i, z in enumerate(ctx.mu):
            tally.expect(coset_denominator(ctx, z) != 0, i=i, z=ctx.format2(z))

    @check("cyclotomic-family", "theorems")
    def check_cyclotomic_family(self, tally, rng):
        ctx = self.ctx
        k = next(k for k in range(2, ctx.q + 1) if math.gcd(k, ctx.q + 1) == 1)
        generators = {
            "u": None,
            "u^-1": ctx.inv2(ctx.u),
            f"u^{k}": ctx.pow2(ctx.u, k),
        }
        for alpha in self.alphas:
            f_bits = self.table(alpha).bits
            for name, generator in generators.items():
                if generator is None:
                    g_bits = self.table(alpha, "g").bits
                else:
                    g_bits = g_alpha_table(ctx, alpha, generator).bits
                tally.expect_all(
                    f_bits == g_bits,
                    lambda i: {
                        "alpha": format_elem(alpha),
                        "generator": name,
                        "x": ctx.format2(i),
                        "f": int(f_bits[i]),
                        "g": int(g_bits[i]),
                    },
                )

    @check("cyclotomic-bentness", "theorems")
    def check_cyclotomic_bentness(self, tally, rng):
        for alpha in self.alphas:
            cube = self.ctx.is_cube(alpha)
            spectrum = walsh_full(self.ctx, self.table(alpha, "g"))
            tally.expect(
                is_bent(spectrum) != cube,
                alpha=format_elem(alpha),
                cube=cube,
                histogram=labelled(spectrum.histogram),
            )

    # -- field and permutation facts -----------------------------------------

    @check("field-axioms", "lemmas")
    def check_field_axioms(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        base = np.arange(q, dtype=np.int64)

        for a in range(q):
            for b in range(q):
                tally.expect(
                    ctx.mul(a, b) == poly_mod(clmul(a, b), ctx.modulus),
                    property="table multiplication",
                    a=format_elem(a),
                    b=format_elem(b),
                )
        for a in ctx.nonzero():
            tally.expect(ctx.mul(a, ctx.inv(a)) == 1, property="inverse", a=format_elem(a))
            tally.expect(ctx.pow(a, q - 1) == 1, property="order divides q-1", a=format_elem(a))
        for a in range(q):
            root = ctx.sqrt(a)
            tally.expect(ctx.mul(root, root) == a, property="square root", a=format_elem(a))

        cubes = {ctx.pow(y, 3) for y in ctx.nonzero()}
        tally.expect(len(cubes) == (q - 1) // 3, property="cube count", cubes=len(cubes))
        for a in ctx.nonzero():
            tally.expect(ctx.is_cube(a) == (a in cubes), property="cube test", a=format_elem(a))

        images = set((ctx.mul_array(base, base) ^ base).tolist())
        h0 = {u for u in range(q) if ctx.tr(u) == 0}
        tally.expect(images == h0, property="Artin-Schreier image is H0")

        mu = mu_array(ctx)
        tally.expect(np.unique(mu).size == q + 1, property="|mu| = q+1")
        tally.expect_all(
            (ctx.pow2_array(mu, q + 1) == 1)
            & (ctx.conj_array(mu) == ctx.pow2_array(mu, -1)),
            lambda i: {"property": "z^(q+1) = 1 and z^q = 1/z", "z": ctx.format2(int(mu[i]))},
        )
        tally.expect(
            set(ctx.pow2_array(mu, 3).tolist()) == set(mu.tolist()), property="cubing permutes mu"
        )

        products = ctx.mul2_array(base[1:, None], mu[None, :]).reshape(-1)
        tally.expect(
            np.unique(products).size == ctx.order - 1 and not (products == 0).any(),
            property="(y, z) -> yz is a bijection onto GF(q^2)^*",
        )

        count = max(self.samples, TRACE_SAMPLE_FLOOR)
        xs = self.sample(rng, ctx.elements2, count)
        ys = rng.permutation(xs)
        tally.expect_all(
            ctx.conj_array(ctx.mul2_array(xs, ys))
            == ctx.mul2_array(ctx.conj_array(xs), ctx.conj_array(ys)),
            lambda i: {
                "property": "Frobenius is multiplicative",
                "x": ctx.format2(int(xs[i])),
                "y": ctx.format2(int(ys[i])),
            },
        )
        tally.expect_all(
            ctx.conj_array(xs ^ ys) == ctx.conj_array(xs) ^ ctx.conj_array(ys),
            lambda i: {"property": "Frobenius is additive", "x": ctx.format2(int(xs[i]))},
        )
        for x, y in zip(xs[:500].tolist(), ys[:500].tolist()):
            tally.expect(
                ctx.mul2(x, y) == int(ctx.mul2_array(x, y)),
                property="tower formula matches log tables",
                x=ctx.format2(x),
                y=ctx.format2(y),
            )
        for x in xs.tolist():
            tally.expect(
                ctx.tr2_direct(x) == ctx.tr(ctx.to_base(x ^ ctx.conj(x))) == ctx.tr2(x),
                property="trace transitivity",
                x=ctx.format2(x),
            )

    @check("exponent-facts", "lemmas")
    def check_exponent_facts(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        group = ctx.order - 1
        tally.expect(ctx.d * ctx.d_prime % group == 1, property="d d' = 1 mod q^2-1")
        tally.expect(math.gcd(ctx.d_prime, group) == 1, property="gcd(d', q^2-1) = 1")
        tally.expect(3 * ctx.d == q * q + q + 1, property="3d = q^2+q+1")

        base = np.arange(q, dtype=np.int64)
        tally.expect_all(
            ctx.pow_array(base, ctx.d) == base,
            lambda i: {"property": "a^d = a on GF(q)", "a": format_elem(i)},
        )
        mu = mu_array(ctx)
        tally.expect_all(
            ctx.pow2_array(mu, 3 * ctx.d) == mu,
            lambda i: {"property": "z^(3d) = z on mu", "z": ctx.format2(int(mu[i]))},
        )
        ys = base[1:]
        products = ctx.mul2_array(ys[:, None], mu[None, :])
        expected = ctx.mul2_array(ys[:, None], ctx.pow2_array(mu, 3)[None, :])
        tally.expect_all(
            ctx.pow2_array(products, ctx.d_prime) == expected,
            lambda i: {
                "property": "(yz)^d' = y z^3",
                "y": format_elem(int(ys[i // mu.size])),
                "z": ctx.format2(int(mu[i % mu.size])),
            },
        )

    @check("sigma-permutation", "lemmas")
    def check_sigma_permutation(self, tally, rng):
        ctx = self.ctx
        table = sigma_inverse_table(ctx)
        xs = ctx.elements2
        tally.expect(np.unique(table.forward).size == ctx.order, property="sigma is injective")
        tally.expect(int(table.forward[0]) == 0, property="sigma(0) = 0")
        tally.expect_all(
            table.backward[table.forward] == xs,
            lambda i: {"property": "backward after forward", "x": ctx.format2(i)},
        )
        for x in self.sample(rng, xs, self.samples).tolist():
            tally.expect(
                sigma_eval(ctx, x) == int(table.forward[x]),
                property="scalar sigma matches table",
                x=ctx.format2(x),
            )

    @check("coset-multiplier", "lemmas")
    def check_coset_multiplier(self, tally, rng):
        ctx = self.ctx
        nonzero = ctx.elements2[1:]
        ratios = ctx.mul2_array(
            sigma_inverse_table(ctx).backward[1:], ctx.pow2_array(nonzero, -1)
        )
        expected = coset_multipliers(ctx)[ctx.coset_index_array(nonzero)]
        tally.expect_all(
            ratios == expected,
            lambda i: {"property": "ratio is the coset multiplier", "x": ctx.format2(i + 1)},
        )
        for c in ctx.nonzero():
            moved = ctx.mul2_array(nonzero, c)
            tally.expect_all(
                ratios[moved - 1] == ratios,
                lambda i: {
                    "property": "ratio is constant on cosets",
                    "x": ctx.format2(i + 1),
                    "c": format_elem(c),
                },
            )

    # -- the reduction chain -------------------------------------------------

    @check("basic-reduction", "lemmas")
    def check_basic_reduction(self, tally, rng):
        ctx = self.ctx
        for alpha, beta in self.pairs(rng, ctx.elements2):
            naive = walsh_naive(ctx, self.table(alpha), beta)
            reduced = basic_reduction_sum(ctx, alpha, beta)
            tally.expect(
                naive == reduced,
                alpha=format_elem(alpha),
                beta=ctx.format2(beta),
                naive=naive,
                reduced=reduced,
            )

    @check("t-set", "lemmas")
    def check_t_set(self, tally, rng):
        ctx = self.ctx
        image = t_set_image(ctx)
        trace_form = t_set_trace(ctx)
        tally.expect(
            image == trace_form,
            image=sorted(map(format_elem, image)),
            trace_form=sorted(map(format_elem, trace_form)),
        )
        tally.expect(len(image) == ctx.q // 2, size=len(image))
        preimages = Counter(ctx.to_base(z ^ ctx.inv2(z)) for z in ctx.mu[1:])
        for t, count in sorted(preimages.items()):
            tally.expect(count == 2 and t != 0, t=format_elem(t), preimages=count)

    @check("parametrization", "lemmas")
    def check_parametrization(self, tally, rng):
        ctx = self.ctx
        points = param_points(ctx)
        zs = np.array([point.z for point in points], dtype=np.int64)
        tally.expect(
            len(set(zs.tolist())) == ctx.q and set(zs.tolist()) == set(ctx.mu[1:]),
            property="x -> z_x is a bijection onto mu minus 1",
        )
        for point in points:
            a, s = point.a, point.s
            root = ctx.sqrt(a ^ 1)
            details = {"x": format_elem(point.x)}
            tally.expect(a != 0 and a ^ 1 != 0, property="A_x and A_x+1 nonzero", **details)
            tally.expect(
                ctx.norm(point.z) == 1 and point.z != 1, property="z_x in mu minus 1", **details
            )
            tally.expect(point.t == ctx.inv(root), property="t_x = (A_x+1)^(-1/2)", **details)
            tally.expect(
                s != 0 and s == ctx.mul(a, ctx.pow(root, -3)),
                property="s_x = A_x (A_x+1)^(-3/2)",
                **details,
            )
            tally.expect(
                ctx.inv(ctx.mul(s, s)) ^ 1 == point.phi, property="1 + s_x^-2 = Phi(x)", **details
            )
            tally.expect(
                points[point.x ^ 1].z == ctx.inv2(point.z),
                property="z_(x+1) = 1/z_x",
                **details,
            )

        xs = np.arange(ctx.q, dtype=np.int64)
        ss = np.array([point.s for point in points], dtype=np.int64)
        s_cubed_plus_s = ctx.pow_array(ss, 3) ^ ss
        for alpha in self.alphas:
            tally.expect_all(
                p_alpha_array(ctx, alpha, zs) == ctx.mul_array(s_cubed_plus_s, alpha),
                lambda i: {
                    "property": "P_alpha(z_x) = alpha (s^3 + s)",
                    "alpha": format_elem(alpha),
                    "x": format_elem(i),
                },
            )
        for beta in self.sample(rng, self.outer_betas(), self.samples).tolist():
            frame = beta_frame(ctx, 1, beta)
            expected = ctx.mul_array(ctx.mul_array(xs ^ frame.c ^ 1, frame.b), ss)
            tally.expect_all(
                q_beta_array(ctx, beta, zs) == expected,
                lambda i: {
                    "property": "Q_beta(z_x) = b (c + x + 1) s_x",
                    "beta": ctx.format2(beta),
                    "x": format_elem(i),
                },
            )

    @check("p-permutes", "lemmas")
    def check_p_permutes(self, tally, rng):
        ctx = self.ctx
        elements, images = trace_one_set(ctx)
        tally.expect_all(
            ctx.tr_array(images) == 1,
            lambda i: {"property": "Tr(P(A)) = 1", "A": format_elem(int(elements[i]))},
        )
        tally.expect(
            set(images.tolist()) == set(elements.tolist()),
            property="P permutes the trace-one set",
            image_size=len(set(images.tolist())),
        )

        def sigma1(t):
            return 1 ^ ctx.inv(ctx.mul(t, t))

        def sigma2(t):
            return ctx.pow(t, 3) ^ t

        t_values = sorted(t_set_image(ctx))
        tally.expect(
            {sigma1(t) for t in t_values} == set(elements.tolist()),
            property="sigma1 maps T onto the trace-one set",
        )
        tally.expect(
            {sigma2(t) for t in t_values} == set(t_values),
            property="sigma2 permutes T",
        )
        for z in ctx.mu[1:]:
            z3 = ctx.pow2(z, 3)
            tally.expect(
                sigma2(ctx.to_base(z ^ ctx.inv2(z))) == ctx.to_base(z3 ^ ctx.inv2(z3)),
                property="sigma2(z + 1/z) = z^3 + 1/z^3",
                z=ctx.format2(z),
            )
        for a in elements.tolist():
            t = ctx.inv(ctx.sqrt(a ^ 1))
            tally.expect(
                p_map(ctx, a) == sigma1(sigma2(t)),
                property="P = sigma1 sigma2 sigma1^-1",
                A=format_elem(a),
            )

    @check("trace-zero-reduction", "lemmas")
    def check_trace_zero_reduction(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        space = trace_zero_space(ctx)
        us = np.arange(q, dtype=np.int64)
        reps = np.array(space.coset_reps, dtype=np.int64)
        phi = phi_table(ctx)
        trace_u = ctx.tr_array(us)

        tally.expect_all(
            phi[us ^ 1] == phi,
            lambda i: {"property": "Phi(x+1) = Phi(x)", "x": format_elem(i)},
        )
        a_values = Counter((artin_schreier(ctx, x) ^ ctx.lam) for x in range(q))
        elements, _ = trace_one_set(ctx)
        tally.expect(
            set(a_values) == set(elements.tolist())
            and set(a_values.values()) == {2},
            property="x -> A_x is two-to-one onto the trace-one set",
        )

        for delta in ctx.nonzero():
            values = t_delta_array(ctx, delta, us)
            tally.expect_all(
                (values[trace_u == 1] == 0),
                lambda i: {"property": "T vanishes off H0", "delta": format_elem(delta)},
            )
            tally.expect(
                int(values[0]) == q and not (values % 2).any(),
                property="T(0) = q and T is even",
                delta=format_elem(delta),
            )
            cubic = ctx.mul_array(ctx.pow_array(us, 3), delta)
            exponents = ctx.mul_array(cubic[:, None], phi[reps][None, :]) ^ ctx.mul_array(
                us[:, None], (reps ^ 1)[None, :]
            )
            half_sums = reps.size - 2 * ctx.tr_array(exponents).sum(axis=1)
            tally.expect_all(
                values == (2 - 2 * trace_u) * half_sums,
                lambda i: {
                    "property": "pairing x with x+1",
                    "delta": format_elem(delta),
                    "u": format_elem(i),
                },
            )
            for u in space.h0:
                v = space.l_inverse[u]
                twisted = ctx.mul(delta, ctx.pow(u, 3))
                expected = 2 * char(ctx, ctx.mul(ctx.lam, v)) * h_hat(ctx, twisted, v)
                tally.expect(
                    int(values[u]) == expected,
                    property="T_delta(u) = 2 chi(lambda v) h_(delta u^3)(v)",
                    delta=format_elem(delta),
                    u=format_elem(u),
                )

        for alpha, beta in self.pairs(rng, self.outer_betas()):
            frame = beta_frame(ctx, alpha, beta)
            values = t_delta_array(ctx, frame.kappa, us)
            signs = 1 - 2 * ctx.tr_array(ctx.mul_array(us, frame.c))
            naive = walsh_naive(ctx, self.table(alpha), beta)
            tally.expect(
                naive + q == int((signs * values).sum()),
                property="W(beta) + q = sum chi(cu) T_kappa(u)",
                alpha=format_elem(alpha),
                beta=ctx.format2(beta),
            )

    @check("l-map", "lemmas")
    def check_l_map(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        space = trace_zero_space(ctx)
        vs = np.arange(q, dtype=np.int64)
        images = ctx.pow_array(vs, q // 2) ^ vs

        tally.expect_all(
            images[vs[:, None] ^ vs[None, :]] == images[:, None] ^ images[None, :],
            lambda i: {
                "property": "L is additive",
                "v": format_elem(i // q),
                "w": format_elem(i % q),
            },
        )
        tally.expect_all(
            ctx.tr_array(images) == 0,
            lambda i: {"property": "Tr(L(v)) = 0", "v": format_elem(i)},
        )
        tally.expect_all(
            images[vs ^ 1] == images,
            lambda i: {"property": "L(v+1) = L(v)", "v": format_elem(i)},
        )
        rep_images = [int(images[v]) for v in space.coset_reps]
        tally.expect(
            len(set(rep_images)) == q // 2 and set(rep_images) == set(space.h0),
            property="L is a bijection V -> H0",
        )

        as_images = ctx.mul_array(vs, vs) ^ vs
        left = ctx.tr_array(ctx.mul_array(as_images[:, None], vs[None, :]))
        right = ctx.tr_array(ctx.mul_array(vs[:, None], images[None, :]))
        tally.expect_all(
            left == right,
            lambda i: {
                "property": "Tr((x^2+x) v) = Tr(x L(v))",
                "x": format_elem(i // q),
                "v": format_elem(i % q),
            },
        )

        h0 = np.array(space.h0, dtype=np.int64)
        pairing = ctx.tr_array(ctx.mul_array(h0[:, None], vs[None, :]))
        tally.expect_all(
            pairing[:, 2:].any(axis=0),
            lambda i: {"property": "no v outside F2 is orthogonal to H0", "v": format_elem(i + 2)},
        )
        nonzero_h0 = h0[h0 != 0]
        tally.expect_all(
            pairing[h0 != 0].any(axis=1),
            lambda i: {
                "property": "no nonzero u in H0 is orthogonal to V",
                "u": format_elem(int(nonzero_h0[i])),
            },
        )

    @check("sign-flip", "lemmas")
    def check_sign_flip(self, tally, rng):
        ctx = self.ctx
        vs = np.arange(ctx.q, dtype=np.int64)
        for delta in range(ctx.q):
            values = h_hat_array(ctx, delta, vs)
            tally.expect_all(
                values[vs ^ 1] == -values,
                lambda i: {
                    "property": "h(v+1) = -h(v)",
                    "delta": format_elem(delta),
                    "v": format_elem(i),
                },
            )
        lam_signs = 1 - 2 * ctx.tr_array(ctx.mul_array(vs, ctx.lam))
        tally.expect_all(
            lam_signs[vs ^ 1] == -lam_signs,
            lambda i: {"property": "chi(lambda (v+1)) = -chi(lambda v)", "v": format_elem(i)},
        )

    @check("branch-invariance", "lemmas")
    def check_branch_invariance(self, tally, rng):
        ctx = self.ctx
        base = np.arange(1, ctx.q, dtype=np.int64)
        kappas = ctx.mul_array(base[:, None], ctx.pow_array(base, -3)[None, :])
        exponent = (ctx.q - 1) // 3
        tally.expect_all(
            (ctx.pow_array(kappas, exponent) == 1)
            == (ctx.pow_array(base, exponent) == 1)[:, None],
            lambda i: {
                "property": "alpha b^-3 is a cube iff alpha is",
                "alpha": format_elem(int(base[i // base.size])),
                "b": format_elem(int(base[i % base.size])),
            },
        )
        for alpha, beta in self.pairs(rng, self.outer_betas()):
            frame = beta_frame(ctx, alpha, beta)
            tally.expect(
                ctx.is_cube(frame.kappa) == ctx.is_cube(alpha),
                alpha=format_elem(alpha),
                beta=ctx.format2(beta),
                kappa=format_elem(frame.kappa),
            )

    # -- values on GF(q) -------------------------------------------------------

    @check("inner-structure", "lemmas")
    def check_inner_structure(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        for alpha in self.cube_alphas:
            roots = inverse_cube_roots(ctx, alpha)
            all_roots = {y for y in ctx.nonzero() if ctx.mul(alpha, ctx.pow(y, 3)) == 1}
            tally.expect(
                set(roots) == all_roots and len(all_roots) == 3,
                property="three roots y1, omega y1, omega^2 y1",
                alpha=format_elem(alpha),
            )
            tally.expect(
                roots[0] ^ roots[1] ^ roots[2] == 0,
                property="y1 + y2 + y3 = 0",
                alpha=format_elem(alpha),
            )
            kernel = set()
            for beta in range(q):
                triple = trace_triple(ctx, roots, beta)
                tally.expect(
                    sum(triple) % 2 == 0,
                    property="trace triple has even parity",
                    alpha=format_elem(alpha),
                    beta=format_elem(beta),
                )
                if not any(triple):
                    kernel.add(beta)
            tally.expect(
                len(kernel) == q // 4 and all(a ^ b in kernel for a in kernel for b in kernel),
                property="W1 is a subspace of size q/4",
                alpha=format_elem(alpha),
                size=len(kernel),
            )

    @check("inner-prediction", "lemmas")
    def check_inner_prediction(self, tally, rng):
        ctx = self.ctx
        bank = self.inner_bank()
        for alpha in self.cube_alphas:
            naive = bank.walsh(self.table(alpha))
            predicted = predict_inner_spectrum(ctx, alpha)
            for beta in self.sample(rng, np.arange(ctx.q), 16).tolist():
                tally.expect(
                    predict_inner_walsh(ctx, alpha, beta) == int(predicted[beta]),
                    property="scalar prediction",
                    alpha=format_elem(alpha),
                    beta=format_elem(beta),
                )
            tally.expect_all(
                predicted == naive,
                lambda i: {
                    "alpha": format_elem(alpha),
                    "beta": format_elem(i),
                    "predicted": int(predicted[i]),
                    "naive": int(naive[i]),
                },
            )
            tally.expect(
                int((predicted == -2 * ctx.q).sum()) == ctx.q // 4,
                alpha=format_elem(alpha),
                property="|W1| = q/4",
            )

    @check("inner-key-identity", "lemmas")
    def check_inner_key_identity(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        for alpha in self.alphas:
            coeffs = self.spectrum(alpha).coeffs[:q]
            reduced = inner_key_sums(ctx, alpha)
            tally.expect_all(
                reduced == coeffs,
                lambda i: {
                    "alpha": format_elem(alpha),
                    "beta": format_elem(i),
                    "reduced": int(reduced[i]),
                    "walsh": int(coeffs[i]),
                },
            )
            if not ctx.is_cube(alpha):
                tally.expect(
                    bool((coeffs == q).all()),
                    property="noncube alpha gives W = q on GF(q)",
                    alpha=format_elem(alpha),
                )

    # -- shell words -----------------------------------------------------------

    @check("shell-well-defined", "shells")
    def check_shell_well_defined(self, tally, rng):
        ctx = self.ctx
        space = trace_zero_space(ctx)
        for delta in ctx.nonzero():
            word = shell_word(ctx, delta)
            tally.expect(
                int(word.values[word.h0 == 0][0]) == 0,
                property="U(0) = 0",
                delta=format_elem(delta),
            )
            for u in space.h0:
                if u == 0:
                    continue
                v = space.l_inverse[u]
                twisted = ctx.mul(delta, ctx.pow(u, 3))
                first = char(ctx, ctx.mul(ctx.lam, v)) * h_hat(ctx, twisted, v)
                second = char(ctx, ctx.mul(ctx.lam, v ^ 1)) * h_hat(ctx, twisted, v ^ 1)
                tally.expect(
                    first == second,
                    property="independent of the coset representative",
                    delta=format_elem(delta),
                    u=format_elem(u),
                )

    @check("dictionary", "shells")
    def check_dictionary(self, tally, rng):
        ctx = self.ctx
        space = trace_zero_space(ctx)
        cs = np.arange(ctx.q, dtype=np.int64)
        for delta in ctx.nonzero():
            word = shell_word(ctx, delta)
            values = word.as_dict()
            cube = ctx.is_cube(delta)
            for u in space.h0:
                if u == 0:
                    continue
                v = space.l_inverse[u]
                twisted = ctx.mul(delta, ctx.pow(u, 3))
                tally.expect(
                    values[u] == char(ctx, ctx.mul(ctx.lam, v)) * h_hat(ctx, twisted, v),
                    property="U(u) = chi(lambda v) h_(delta u^3)(v)",
                    delta=format_elem(delta),
                    u=format_elem(u),
                )
                tally.expect(
                    ctx.is_cube(twisted) == cube,
                    property="delta u^3 is a cube iff delta is",
                    delta=format_elem(delta),
                    u=format_elem(u),
                )

            # the same Hadamard values read through V
            l_values = np.array([space.l_map[v] for v in space.coset_reps], dtype=np.int64)
            on_v = np.array([values[u] for u in l_values.tolist()], dtype=np.int64)
            signs = 1 - 2 * ctx.tr_array(ctx.mul_array(cs[:, None], l_values[None, :]))
            through_v = 2 * signs @ on_v
            through_h0 = shell_hadamard_all(ctx, word)
            tally.expect_all(
                through_v == through_h0,
                lambda i: {
                    "property": "Hadamard over V equals Hadamard over H0",
                    "delta": format_elem(delta),
                    "c": format_elem(i),
                },
            )

    @check("shell-branch", "shells")
    def check_shell_branch(self, tally, rng):
        ctx = self.ctx
        q = ctx.q
        cube_allowed = {0} if ctx.e == 2 else {-2 * q, 0, 2 * q}
        seen = {True: set(), False: set()}
        for delta in ctx.nonzero():
            word = shell_word(ctx, delta)
            cube = word.branch == CUBE
            values = set(shell_hadamard_all(ctx, word).tolist())
            allowed = cube_allowed if cube else {-q, q}
            seen[cube] |= values
            tally.expect(
                values <= allowed,
                delta=format_elem(delta),
                branch=word.branch,
                values=sorted(values),
            )
        tally.expect(seen[True] == cube_allowed, property="cube values", values=sorted(seen[True]))
        tally.expect(seen[False] == {-q, q}, property="noncube values", values=sorted(seen[False]))

    @check("shell-degenerate", "shells")
    def check_shell_degenerate(self, tally, rng):
        ctx = self.ctx
        if ctx.e != 2:
            tally.skip("only e=2 has vanishing cube words")
            return

        omega = ctx.omega
        omega2 = ctx.mul(omega, omega)
        elements, _ = trace_one_set(ctx)
        tally.expect(set(elements.tolist()) == {omega, omega2}, property="TT = {omega, omega^2}")
        tally.expect(p_map(ctx, omega) == omega2, property="P(omega) = omega^2")
        tally.expect(p_map(ctx, omega2) == omega, property="P(omega^2) = omega")
        tally.expect(h_hat(ctx, 1, omega) == 0, property="h_1(omega) = 0")
        for delta in ctx.nonzero():
            if ctx.is_cube(delta):
                word = shell_word(ctx, delta)
                tally.expect(
                    not word.values.any(),
                    property="cube word vanishes",
                    delta=format_elem(delta),
                )

    @check("triple-agreement", "shells")
    def check_triple_agreement(self, tally, rng):
        ctx = self.ctx
        for alpha, beta in self.pairs(rng, self.outer_betas()):
            frame = beta_frame(ctx, alpha, beta)
            naive = walsh_naive(ctx, self.table(alpha), beta)
            reduced = basic_reduction_sum(ctx, alpha, beta)
            shell = shell_hadamard(ctx, shell_word(ctx, frame.kappa), frame.c)
            tally.expect(
                naive == reduced == shell,
                alpha=format_elem(alpha),
                beta=ctx.format2(beta),
                naive=naive,
                reduced=reduced,
                shell=shell,
            )


def run_suite(ctx, suite="all", seed=None, samples=None, workers=1):
    """Run every check of ``suite``; results sorted by lemma id."""
    verifier = Verifier(ctx, seed=seed, samples=samples)
    return ordered_map(verifier.run, suite_ids(suite), workers)


def run_check(ctx, lemma_id, seed=None, samples=None):
    return Verifier(ctx, seed=seed, samples=samples).run(lemma_id)
