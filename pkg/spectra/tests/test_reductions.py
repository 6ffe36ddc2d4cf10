import numpy as np
from django.test import SimpleTestCase

from spectra.exceptions import AlphaNotCube, NotInBaseField, NotInMu, NotTraceOne, ZeroArgument
from spectra.fields import field_context
from spectra.permutation import f_alpha_table
from spectra.reductions import (
    CUBE,
    NONCUBE,
    basic_reduction_sum,
    beta_frame,
    h_hat,
    inner_key_sums,
    inverse_cube_roots,
    mu_array,
    normalization,
    p_alpha,
    p_map,
    param_points,
    predict_inner_spectrum,
    predict_inner_walsh,
    q_beta,
    shell_hadamard,
    shell_hadamard_all,
    shell_word,
    t_delta,
    t_delta_array,
    t_set,
    trace_one_set,
    trace_zero_space,
)
from spectra.walsh import walsh_full, walsh_naive


class UnitCircleTests(SimpleTestCase):
    def setUp(self):
        self.ctx = field_context(2)
        self.ctx4 = field_context(4)

    def test_p_and_q_at_one(self):
        """Is P_alpha(1) = 0, with Q_beta(1) = 0 inside GF(q) and b outside?"""
        ctx = self.ctx4
        self.assertEqual(p_alpha(ctx, 5, 1), 0)
        self.assertEqual(q_beta(ctx, 0x07, 1), 0)
        beta = 0x3A
        self.assertEqual(q_beta(ctx, beta, 1), beta_frame(ctx, 1, beta).b)

    def test_requires_unit_circle(self):
        """Are points off mu_{q+1} refused?"""
        with self.assertRaises(NotInMu):
            p_alpha(self.ctx, 1, 2)
        with self.assertRaises(NotInMu):
            q_beta(self.ctx, 4, 0)

    def test_mu_array(self):
        """Does the cached array list the q+1 roots of unity?"""
        self.assertEqual(mu_array(self.ctx4).tolist(), list(self.ctx4.mu))

    def test_basic_reduction(self):
        """Does the double sum over GF(q) x mu reproduce every W on GF(16)?"""
        ctx = self.ctx
        for alpha in ctx.nonzero():
            tt = f_alpha_table(ctx, alpha)
            for beta in range(ctx.order):
                self.assertEqual(
                    basic_reduction_sum(ctx, alpha, beta), walsh_naive(ctx, tt, beta)
                )


class FrameTests(SimpleTestCase):
    def setUp(self):
        self.ctx4 = field_context(4)

    def test_frame_reconstructs_beta(self):
        """Is every outer beta equal to b (c + theta) with kappa = alpha / b^3?"""
        ctx = self.ctx4
        for beta in range(ctx.q, ctx.order):
            frame = beta_frame(ctx, 3, beta)
            self.assertNotEqual(frame.b, 0)
            self.assertEqual(ctx.scale(frame.b, ctx.join(frame.c, 1)), beta)
            self.assertEqual(ctx.mul(frame.kappa, ctx.pow(frame.b, 3)), 3)

    def test_inner_beta_has_no_frame(self):
        """Is beta in GF(q) refused?"""
        with self.assertRaises(NotInBaseField):
            beta_frame(self.ctx4, 1, 0x0F)


class ParametrisationTests(SimpleTestCase):
    def setUp(self):
        self.ctx = field_context(2)
        self.ctx4 = field_context(4)

    def test_t_set(self):
        """Does T have q/2 elements, {omega, omega^2} when e = 2?"""
        self.assertEqual(t_set(self.ctx), {2, 3})
        self.assertEqual(len(t_set(self.ctx4)), 8)

    def test_param_points(self):
        """Does x -> z_x hit mu minus 1 once each, with t_x and s_x in GF(q)^*?"""
        ctx = self.ctx4
        points = param_points(ctx)
        self.assertEqual({point.z for point in points}, set(ctx.mu[1:]))
        for point in points:
            self.assertEqual(ctx.norm(point.z), 1)
            self.assertNotEqual(point.t, 0)
            self.assertNotEqual(point.s, 0)
            self.assertEqual(ctx.inv(ctx.mul(point.s, point.s)) ^ 1, point.phi)
            self.assertEqual(points[point.x ^ 1].z, ctx.inv2(point.z))

    def test_trace_one_set(self):
        """Is P a permutation of the trace-one set swapping omega and omega^2 at e = 2?"""
        ctx = self.ctx
        elements, images = trace_one_set(ctx)
        self.assertEqual(elements.tolist(), [2, 3])
        self.assertEqual(p_map(ctx, 2), 3)
        self.assertEqual(p_map(ctx, 3), 2)
        elements, images = trace_one_set(self.ctx4)
        self.assertEqual(sorted(images.tolist()), elements.tolist())

    def test_p_map_domain(self):
        """Is an argument of trace zero refused?"""
        with self.assertRaises(NotTraceOne):
            p_map(self.ctx, 1)

    def test_trace_zero_space(self):
        """Is L a bijection from GF(q)/F_2 onto H0?"""
        space = trace_zero_space(self.ctx)
        self.assertEqual(space.h0, (0, 1))
        self.assertEqual(space.coset_reps, (0, 2))
        self.assertEqual(space.l_map, {0: 0, 2: 1})
        space = trace_zero_space(self.ctx4)
        self.assertEqual(sorted(space.l_inverse), list(space.h0))
        self.assertEqual(len(space.h0), 8)


class ShellTests(SimpleTestCase):
    def setUp(self):
        self.ctx = field_context(2)
        self.ctx4 = field_context(4)

    def test_t_delta_at_zero(self):
        """Is T_delta(0) = q?"""
        for delta in self.ctx4.nonzero():
            self.assertEqual(t_delta(self.ctx4, delta, 0), 16)

    def test_t_delta_vanishes_off_h0(self):
        """Is T_delta(u) = 0 whenever Tr(u) = 1?"""
        ctx = self.ctx4
        us = [u for u in range(ctx.q) if ctx.tr(u)]
        for delta in ctx.nonzero():
            self.assertFalse(t_delta_array(ctx, delta, us).any())

    def test_t_delta_needs_nonzero_delta(self):
        """Is T_delta refused for delta = 0?"""
        with self.assertRaises(ZeroArgument):
            t_delta(self.ctx, 0, 1)

    def test_degenerate_cube_word(self):
        """Is the cube word identically zero at e = 2, with h_1(omega) = 0?"""
        ctx = self.ctx
        word = shell_word(ctx, 1)
        self.assertEqual(word.branch, CUBE)
        self.assertEqual(word.as_dict(), {0: 0, 1: 0})
        self.assertEqual(h_hat(ctx, 1, ctx.omega), 0)
        self.assertEqual(shell_word(ctx, 2).branch, NONCUBE)

    def test_shell_value_sets(self):
        """Are shell Hadamard values in {+-q} for noncube delta and {0, +-2q} for cubes?"""
        ctx = self.ctx4
        for delta in ctx.nonzero():
            values = set(shell_hadamard_all(ctx, shell_word(ctx, delta)).tolist())
            if ctx.is_cube(delta):
                self.assertLessEqual(values, {-32, 0, 32})
            else:
                self.assertLessEqual(values, {-16, 16})

    def test_triple_agreement(self):
        """Do the definition, the double sum and the shell word agree on outer beta?"""
        ctx = self.ctx
        for alpha in ctx.nonzero():
            tt = f_alpha_table(ctx, alpha)
            for beta in range(ctx.q, ctx.order):
                frame = beta_frame(ctx, alpha, beta)
                shell = shell_hadamard(ctx, shell_word(ctx, frame.kappa), frame.c)
                self.assertEqual(walsh_naive(ctx, tt, beta), shell)
                self.assertEqual(basic_reduction_sum(ctx, alpha, beta), shell)

    def test_normalization(self):
        """Is the unit-scale factor 1/2^(e/2+1), so 1/4 at e = 2 and 1/8 at e = 4?"""
        self.assertEqual(normalization(self.ctx), "1/4")
        self.assertEqual(normalization(self.ctx4), "1/8")


class InnerValueTests(SimpleTestCase):
    def setUp(self):
        self.ctx = field_context(2)
        self.ctx4 = field_context(4)

    def test_prediction_e2(self):
        """Is W(0) = -8 the only negative inner value of f_1 on GF(16)?"""
        ctx = self.ctx
        self.assertEqual(predict_inner_walsh(ctx, 1, 0), -8)
        values = [predict_inner_walsh(ctx, 1, beta) for beta in range(ctx.q)]
        self.assertEqual(values.count(-8), 1)
        self.assertEqual(values.count(8), 3)

    def test_noncube_alpha_refused(self):
        """Is a noncube alpha refused by the root finder?"""
        with self.assertRaises(AlphaNotCube):
            inverse_cube_roots(self.ctx, 2)
        with self.assertRaises(NotInBaseField):
            predict_inner_walsh(self.ctx, 1, 4)

    def test_roots(self):
        """Are the roots y1, omega y1, omega^2 y1 with alpha y^3 = 1?"""
        ctx = self.ctx4
        for alpha in ctx.nonzero():
            if not ctx.is_cube(alpha):
                continue
            roots = inverse_cube_roots(ctx, alpha)
            self.assertEqual(len(set(roots)), 3)
            for y in roots:
                self.assertEqual(ctx.mul(alpha, ctx.pow(y, 3)), 1)

    def test_prediction_matches_transform(self):
        """Does the predicted inner spectrum equal W on GF(q) for every cube alpha?"""
        ctx = self.ctx4
        for alpha in ctx.nonzero():
            if not ctx.is_cube(alpha):
                continue
            coeffs = walsh_full(ctx, f_alpha_table(ctx, alpha)).coeffs[: ctx.q]
            self.assertEqual(predict_inner_spectrum(ctx, alpha).tolist(), coeffs.tolist())
            self.assertEqual(int((coeffs == -32).sum()), 4)

    def test_key_identity(self):
        """Does the one-variable sum give W on GF(q) for every alpha?"""
        for ctx in (self.ctx, self.ctx4):
            for alpha in ctx.nonzero():
                coeffs = walsh_full(ctx, f_alpha_table(ctx, alpha)).coeffs[: ctx.q]
                self.assertTrue(np.array_equal(inner_key_sums(ctx, alpha), coeffs))
