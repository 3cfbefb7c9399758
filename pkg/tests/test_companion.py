import numpy as np
import pytest

from eigiter.companion import MonicPolynomial, char_poly_eval, companion_matrix, poly_roots
from eigiter.config import SolverConfig
from eigiter.errors import NoRealConvergence, UsageError


def test_companion_examples():
    np.testing.assert_array_equal(companion_matrix(MonicPolynomial([-5.0])), [[5.0]])
    # z^2 - 3z + 2: a0 = 2, a1 = -3
    np.testing.assert_array_equal(companion_matrix(MonicPolynomial([2.0, -3.0])),
                                  [[0.0, -2.0], [1.0, 3.0]])
    np.testing.assert_array_equal(companion_matrix(MonicPolynomial([0.0, 0.0, 0.0])),
                                  [[0, 0, 0], [1, 0, 0], [0, 1, 0]])


def test_companion_eigenvalues_of_factored_quadratic():
    c = companion_matrix(MonicPolynomial([2.0, -3.0]))
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(c).real), [1.0, 2.0])


def test_monic_polynomial_validation():
    with pytest.raises(UsageError):
        MonicPolynomial([])
    with pytest.raises(UsageError):
        MonicPolynomial([1.0, np.nan])


def test_from_roots_expansion():
    # (z-1)(z-2)(z-3)(z-4)(z-5) = z^5 - 15z^4 + 85z^3 - 225z^2 + 274z - 120
    p = MonicPolynomial.from_roots([1, 2, 3, 4, 5])
    assert p.coeffs == (-120.0, 274.0, -225.0, 85.0, -15.0)
    for r in range(1, 6):
        assert p(r) == 0.0


def test_char_poly_eval_examples():
    assert char_poly_eval(np.diag([1.0, 2.0]), 3.0) == pytest.approx(2.0)
    c = companion_matrix(MonicPolynomial([2.0, -3.0]))
    assert char_poly_eval(c, 0.0) == pytest.approx(2.0)


def test_char_poly_vanishes_at_eigenvalues():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert char_poly_eval(a, 3.0) == pytest.approx(0.0, abs=1e-8)
    assert char_poly_eval(a, 1.0) == pytest.approx(0.0, abs=1e-8)
    assert char_poly_eval(np.diag([1.0, 2.0]), 2.0) == 0.0


def test_char_poly_of_companion_is_the_polynomial():
    rng = np.random.default_rng(20)
    for _ in range(20):
        degree = int(rng.integers(1, 9))
        p = MonicPolynomial(rng.uniform(-3, 3, size=degree))
        c = companion_matrix(p)
        for x in rng.uniform(-4, 4, size=50):
            expected = p(x)
            got = char_poly_eval(c, x)
            scale = max(1.0, sum(abs(t) * abs(x) ** i for i, t in enumerate(p.coeffs + (1.0,))))
            assert got == pytest.approx(expected, rel=1e-8, abs=1e-8 * scale)


def test_roots_quadratic():
    res = poly_roots(MonicPolynomial([2.0, -3.0]))
    np.testing.assert_allclose(res.roots, [1.0, 2.0], atol=1e-8)


def test_roots_linear():
    assert poly_roots(MonicPolynomial([-5.0])).roots == [5.0]


def test_roots_quintic_and_vieta():
    p = MonicPolynomial.from_roots([1, 2, 3, 4, 5])
    cfg = SolverConfig()
    res = poly_roots(p, cfg)
    np.testing.assert_allclose(res.roots, [1, 2, 3, 4, 5], atol=1e-6)
    assert res.roots == sorted(res.roots)
    bound = cfg.tol * (1 + max(abs(a) for a in p.coeffs)) * p.degree
    assert all(abs(p(r)) <= bound for r in res.roots)
    assert sum(res.roots) == pytest.approx(-p.coeffs[-1], rel=1e-6)
    assert np.prod(res.roots) == pytest.approx((-1) ** 5 * p.coeffs[0], rel=1e-6)


def test_roots_negative_and_mixed():
    p = MonicPolynomial.from_roots([-3.0, 0.5, 2.0])
    np.testing.assert_allclose(poly_roots(p).roots, [-3.0, 0.5, 2.0], atol=1e-7)


def test_complex_roots_refused():
    with pytest.raises(NoRealConvergence) as info:
        poly_roots(MonicPolynomial([1.0, 0.0]), SolverConfig(max_iters=500))
    assert len(info.value.trajectory) == 500


def test_equal_magnitude_roots_refused():
    # z^2 - 1: roots +1 and -1
    with pytest.raises(NoRealConvergence):
        poly_roots(MonicPolynomial([-1.0, 0.0]), SolverConfig(max_iters=200))


def test_zero_root_is_refused_cleanly():
    with pytest.raises(NoRealConvergence):
        poly_roots(MonicPolynomial([0.0, -1.0]))
