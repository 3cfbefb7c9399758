import numpy as np
import pytest

from eigiter.companion import char_poly_eval


def random_symmetric(n, seed):
    m = np.random.default_rng(seed).standard_normal((n, n))
    return (m + m.T) / 2


def random_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def symmetric_with_ratio(n, seed, ratio=0.9):
    """Q diag(s_i * ratio**i) Q^T with random signs s_i."""
    rng = np.random.default_rng(seed)
    signs = rng.choice([-1.0, 1.0], size=n)
    spectrum = signs * ratio ** np.arange(n)
    q = random_orthogonal(n, rng)
    return (q * spectrum) @ q.T, spectrum


def gershgorin_bounds(a):
    radii = np.sum(np.abs(a), axis=1) - np.abs(np.diag(a))
    return float(np.min(np.diag(a) - radii)), float(np.max(np.diag(a) + radii))


def bisection_eigenvalues(a, grid=20000, xtol=1e-14):
    """Eigenvalues of symmetric ``a`` as sign changes of det(xI - A) between
    Gershgorin bounds, refined by bisection. Independent of every iterative
    solver in the package."""
    lo, hi = gershgorin_bounds(a)
    pad = 1e-6 * max(1.0, hi - lo)
    xs = np.linspace(lo - pad, hi + pad, grid)
    fs = np.array([char_poly_eval(a, x) for x in xs])
    roots = []
    for i in range(grid - 1):
        f0, f1 = fs[i], fs[i + 1]
        if f0 == 0.0:
            roots.append(xs[i])
            continue
        if f0 * f1 < 0:
            x0, x1 = xs[i], xs[i + 1]
            while x1 - x0 > xtol * max(1.0, abs(x0)):
                mid = 0.5 * (x0 + x1)
                fm = char_poly_eval(a, mid)
                if fm == 0.0:
                    x0 = x1 = mid
                    break
                if (fm < 0) == (f0 < 0):
                    x0 = mid
                else:
                    x1 = mid
            roots.append(0.5 * (x0 + x1))
    return np.array(roots)


@pytest.fixture
def sym2():
    return np.array([[2.0, 1.0], [1.0, 2.0]])


@pytest.fixture
def diag421():
    return np.diag([4.0, 2.0, 1.0])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
