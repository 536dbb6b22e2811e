import numpy as np
import pytest
import scipy.linalg as sla

from inropt import gallery
from inropt.definite import (crawford_number, eigenpair_backmap,
                             inner_numerical_radius, is_hyperbolic,
                             nearest_definite_pair, rotate_pair, saddle_shift)
from inropt.errors import NotPositiveDefiniteMass

from oracles import random_hermitian

TWO_PI = 2.0 * np.pi


class TestInnerNumericalRadius:
    def test_scalar_one(self):
        r = inner_numerical_radius(C=np.array([[1.0]]))
        assert r.zeta == pytest.approx(1.0, abs=1e-12)
        assert r.f_star == pytest.approx(-1.0, abs=1e-12)
        assert r.theta_star == pytest.approx(np.pi, abs=1e-4)
        assert not r.zero_in_fov
        # boundary point 1 * e^{i*0}: the set {1}
        assert min(r.phi, TWO_PI - r.phi) <= 1e-4

    def test_segment_through_origin(self):
        r = inner_numerical_radius(C=np.diag([1.0, -1.0]))
        assert r.zeta == pytest.approx(0.0, abs=1e-9)
        assert r.zero_in_fov

    def test_mass_spring4_linearization(self):
        A1, B1 = gallery.qep_linearization(*gallery.qep_mass_spring4())
        r = inner_numerical_radius(pair=(A1, B1), method="support")
        assert r.f_star == pytest.approx(-0.4897656697, abs=1e-8)
        # smooth minimizer: the angle is only sharp to ~sqrt(tol/curvature)
        assert r.theta_star == pytest.approx(2.56821, abs=1e-5)

    def test_methods_agree_on_dense_gallery(self):
        problems = []
        A, B = gallery.cheng_higham7()
        problems.append((A, B))
        problems.append((gallery.fiedler(24).astype(float),
                         gallery.moler(24).astype(float)))
        problems.append(gallery.hermitian_split(gallery.tridiag_nonsmooth(10)))
        A1, B1 = gallery.qep_linearization(*gallery.qep_mass_spring4())
        problems.append((A1, B1))
        for A, B in problems:
            rs = inner_numerical_radius(pair=(A, B), method="support")
            rl = inner_numerical_radius(pair=(A, B), method="levelset")
            assert rs.f_star == pytest.approx(rl.f_star, abs=1e-8)

    def test_zeta_scaling(self):
        rng = np.random.default_rng(40)
        C = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        z1 = inner_numerical_radius(C=C).zeta
        z2 = inner_numerical_radius(C=2.5 * C).zeta
        assert z2 == pytest.approx(2.5 * z1, abs=1e-8 * max(1.0, z1))

    def test_zeta_rotation_invariance(self):
        rng = np.random.default_rng(41)
        C = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        z1 = inner_numerical_radius(C=C).zeta
        for th in rng.uniform(0.0, TWO_PI, size=3):
            z2 = inner_numerical_radius(C=np.exp(-1j * th) * C).zeta
            assert z2 == pytest.approx(z1, abs=1e-8 * max(1.0, z1))


class TestCrawfordNumber:
    def test_identity_pair_definite(self):
        gamma, definite, _ = crawford_number(np.eye(3), np.zeros((3, 3)))
        assert definite
        assert gamma == pytest.approx(1.0, abs=1e-10)

    def test_indefinite_pair(self):
        gamma, definite, _ = crawford_number(np.diag([1.0, -1.0]),
                                             np.zeros((2, 2)))
        assert not definite
        assert gamma == 0.0


class TestNearestDefinitePair:
    def test_already_definite_distance_zero(self):
        rep = nearest_definite_pair(np.eye(3), np.zeros((3, 3)), delta=0.5)
        assert rep.distance == 0.0
        assert np.max(np.abs(rep.deltaA)) == 0.0
        assert np.max(np.abs(rep.deltaB)) == 0.0
        # psi still rotates the pair so B_tilde is definite at level gamma
        assert rep.crawford_after == pytest.approx(1.0, abs=1e-10)

    def test_zero_pair(self):
        rep = nearest_definite_pair(np.zeros((1, 1)), np.zeros((1, 1)),
                                    delta=0.5)
        assert rep.distance == pytest.approx(0.5, abs=1e-12)

    def test_cheng_higham_distance_value(self):
        # the distance adds the margin delta on top of the inner radius
        A, B = gallery.cheng_higham7()
        rep = nearest_definite_pair(A, B, delta=1e-8, method="support")
        assert rep.distance == pytest.approx(0.8118872239262367 + 1e-8,
                                             abs=1e-9)

    def test_perturbation_norm_is_distance(self):
        A, B = gallery.cheng_higham7()
        rep = nearest_definite_pair(A, B, delta=1e-2, method="support")
        norm = np.linalg.norm(np.hstack([rep.deltaA, rep.deltaB]), 2)
        assert norm == pytest.approx(rep.distance, abs=1e-10)

    def test_repair_certificate_random_pairs(self):
        # recompute the Crawford number of the repaired pair from scratch
        rng = np.random.default_rng(99)
        done = 0
        while done < 10:
            A = random_hermitian(6, rng).real
            B = random_hermitian(6, rng).real
            if crawford_number(A, B).is_definite:
                continue
            done += 1
            delta = 0.25
            rep = nearest_definite_pair(A, B, delta=delta)
            scale = max(1.0, np.linalg.norm(np.hstack([A, B]), 2))
            gam, definite, wit = crawford_number(A + rep.deltaA,
                                                 B + rep.deltaB)
            assert definite
            assert abs(gam - delta) <= 1e-7 * scale
            # the closest boundary point moves to the opposite angle
            diff = abs((wit.phi - (rep.theta_star + np.pi)) % TWO_PI)
            assert min(diff, TWO_PI - diff) <= 1e-6

    def test_uniform_variant(self):
        A, B = gallery.cheng_higham7()
        rep = nearest_definite_pair(A, B, delta=1e-2, method="support",
                                    variant="uniform")
        norm = np.linalg.norm(np.hstack([rep.deltaA, rep.deltaB]), 2)
        assert norm == pytest.approx(rep.distance, abs=1e-10)
        gam, definite, _ = crawford_number(A + rep.deltaA, B + rep.deltaB)
        assert definite
        assert gam == pytest.approx(1e-2, abs=1e-7)


class TestRotatePair:
    def test_theta_zero_identity(self):
        A, B = gallery.cheng_higham7()
        At, Bt = rotate_pair(A, B, 0.0)
        np.testing.assert_array_equal(At, A)
        np.testing.assert_array_equal(Bt, B)

    def test_rotation_identity_elementwise(self):
        rng = np.random.default_rng(50)
        A = random_hermitian(5, rng)
        B = random_hermitian(5, rng)
        for th in (0.3, 2.0):
            At, Bt = rotate_pair(A, B, th)
            err = np.max(np.abs((At + 1j * Bt)
                                - np.exp(-1j * th) * (A + 1j * B)))
            assert err <= 1e-14 * max(1.0, np.linalg.norm(A + 1j * B, 2))

    def test_backmap_determinant_residual(self):
        rng = np.random.default_rng(51)
        for _ in range(3):
            A = random_hermitian(3, rng)
            A += (2.0 + abs(np.linalg.eigvalsh(A)).max()) * np.eye(3)  # PD
            B = random_hermitian(3, rng)
            th = 0.8
            At, Bt = rotate_pair(A, B, th)
            lam = sla.eig(At, Bt, right=False)
            scale = np.linalg.norm(A, 2) ** 3
            for l in lam:
                if not np.isfinite(l):
                    continue
                u, v = eigenpair_backmap(l, 1.0, th)
                res = abs(np.linalg.det(v * A - u * B))
                assert res <= 1e-7 * scale * max(1.0, abs(l)) ** 3


class TestHyperbolic:
    def test_scalar_hyperbolic(self):
        hyp, _ = is_hyperbolic(np.eye(1), np.array([[3.0]]),
                               np.array([[1.0]]))
        assert hyp  # 9 > 4

    def test_scalar_not_hyperbolic(self):
        hyp, _ = is_hyperbolic(np.eye(1), np.array([[1.0]]),
                               np.array([[1.0]]))
        assert not hyp  # 1 < 4

    def test_mass_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteMass):
            is_hyperbolic(np.diag([1.0, -1.0]), np.eye(2), np.eye(2))

    def test_mass_spring4_is_hyperbolic(self):
        hyp, wit = is_hyperbolic(*gallery.qep_mass_spring4())
        assert hyp
        assert wit.f_star < 0


class TestSaddleShift:
    def test_two_by_two_definite(self):
        S = np.diag([2.0, -1.0])
        out = saddle_shift(S, 1, 1, method="support")
        assert out is not None
        mu, lam_min = out
        assert 1.0 < mu < 2.0
        assert lam_min > 0
        np.testing.assert_allclose(
            np.linalg.eigvalsh(S - mu * np.diag([1.0, -1.0]))[0], lam_min)

    def test_two_by_two_identity(self):
        out = saddle_shift(np.diag([1.0, 1.0]), 1, 1, method="support")
        assert out is not None
        mu, lam_min = out
        assert -1.0 < mu < 1.0
        assert lam_min > 0

    def test_indefinite_pair_returns_none(self):
        # S = J makes S*cos + J*sin ... the pair (J, J) has 0 in the range
        S = np.diag([1.0, -1.0])
        S[0, 0] = 1.0
        out = saddle_shift(np.diag([1.0, -3.0]) * 0.0, 1, 1,
                           method="support")
        assert out is None  # zero matrix pair with J is indefinite

    def test_synthetic_instance(self):
        S, J = gallery.synthetic_saddle(20, 8, seed=3)
        out = saddle_shift(S, 20, 8, method="support")
        assert out is not None
        mu, lam_min = out
        M = S - mu * J
        assert np.linalg.eigvalsh(M)[0] > 0
        assert lam_min == pytest.approx(np.linalg.eigvalsh(M)[0], rel=1e-10)
