"""Polynomial approximations of ``exp`` on a symmetric interval.

Two coefficient sources feed the fast bilateral filter:

* Taylor: ``c_n = 1/n!`` (accurate near the origin only).
* Chebyshev: interpolate ``exp`` at the zeros of ``T_{N+1}`` scaled to
  ``[-mu, mu]``, then convert the Chebyshev series to monomial form.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from ._validation import check_degree, check_positive

MAX_DEGREE = 40


def cheb_eval(l, x):
    """Evaluate ``T_l(x)`` with the three-term recurrence ``T_{l+1} = 2x T_l - T_{l-1}``.

    ``x`` may be a scalar or an array. Outside ``[-1, 1]`` the recurrence is
    still applied.
    """
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise ValueError(f"Chebyshev index must be a non-negative integer, got {l!r}")
    l = int(l)
    x = np.asarray(x, dtype=np.float64)
    prev, cur = np.ones_like(x), x.copy()
    if l == 0:
        return prev if prev.ndim else float(prev)
    for _ in range(l - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True, eq=False)
class ChebyshevTable:
    """Monomial coefficients of ``T_0 .. T_max_degree``.

    ``a[l, n]`` is the coefficient of ``x**n`` in ``T_l(x)``; entries with
    ``n > l`` are zero.
    """

    max_degree: int
    a: np.ndarray

    def row(self, l):
        return self.a[l, : l + 1]


@lru_cache(maxsize=None)
def cheb_monomial_table(n_max):
    """Build :class:`ChebyshevTable` up to degree ``n_max`` (at most 40).

    Uses the coefficient recurrence ``a[l+1, n] = 2 a[l, n-1] - a[l-1, n]``;
    every entry is an integer well inside the exactly representable range.
    """
    n_max = check_degree(n_max, MAX_DEGREE, "n_max")
    a = np.zeros((n_max + 1, n_max + 1))
    a[0, 0] = 1.0
    if n_max >= 1:
        a[1, 1] = 1.0
    for l in range(1, n_max):
        a[l + 1, 1:] = 2.0 * a[l, :-1]
        a[l + 1] -= a[l - 1]
    a.setflags(write=False)
    return ChebyshevTable(n_max, a)


def cheb_zeros(l):
    """Zeros ``cos(pi (2k - 1) / (2l))`` of ``T_l`` for ``k = 1..l``, in that order."""
    if isinstance(l, bool) or int(l) != l or l < 1:
        raise ValueError(f"need l >= 1 to have zeros, got {l!r}")
    l = int(l)
    k = np.arange(1, l + 1)
    # Sine form: the middle zero is exactly 0 and the set is exactly odd.
    return np.sin(np.pi * (l - 2 * k + 1) / (2 * l))


@dataclass(frozen=True, eq=False)
class ChebyshevFit:
    """Chebyshev series ``sum_l d[l] T_l(x / half_width)``."""

    degree: int
    half_width: float
    d: np.ndarray

    def __call__(self, x):
        t = np.asarray(x, dtype=np.float64) / self.half_width
        # Clenshaw recurrence
        b1 = np.zeros_like(t)
        b2 = np.zeros_like(t)
        for coef in self.d[:0:-1]:
            b1, b2 = 2.0 * t * b1 - b2 + coef, b1
        return t * b1 - b2 + self.d[0]


def fit_exp_chebyshev(n, mu):
    """Near-minimax degree-``n`` approximation of ``exp`` on ``[-mu, mu]``.

    ``exp`` is sampled at ``mu * xi_k`` for the ``n + 1`` zeros ``xi_k`` of
    ``T_{n+1}``; discrete orthogonality gives the series coefficients.
    """
    n = check_degree(n, MAX_DEGREE, "degree")
    mu = check_positive(mu, "mu")
    m = n + 1
    samples = np.exp(mu * cheb_zeros(m))
    # T_l(xi_k) = cos(pi l (2k - 1) / (2m)); reducing the integer angle modulo
    # 4m first keeps every cosine argument in [0, 2 pi).
    odd = 2 * np.arange(1, m + 1) - 1
    d = np.empty(m)
    d[0] = math.fsum(samples) / m
    for l in range(1, m):
        t = np.cos(np.pi * ((l * odd) % (4 * m)) / (2 * m))
        d[l] = 2.0 * math.fsum(samples * t) / m
    d.setflags(write=False)
    return ChebyshevFit(n, mu, d)


@dataclass(frozen=True, eq=False)
class MonomialExpansion:
    """Polynomial ``sum_n c[n] x**n`` standing in for ``exp(x)``."""

    degree: int
    c: np.ndarray
    provenance: str

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        acc = np.full_like(x, self.c[-1])
        for coef in self.c[-2::-1]:
            acc = acc * x + coef
        return acc


def monomial_from_chebyshev(fit, table=None):
    """Rewrite a :class:`ChebyshevFit` in the monomial basis.

    ``c_n = mu**-n * sum_{l >= n} d_l a[l, n]``.
    """
    if table is None:
        table = cheb_monomial_table(fit.degree)
    if table.max_degree < fit.degree:
        raise ValueError(
            f"table covers degree {table.max_degree}, fit needs {fit.degree}"
        )
    n_terms = fit.degree + 1
    inv_mu = 1.0 / fit.half_width
    c = np.empty(n_terms)
    for n in range(n_terms):
        acc = 0.0
        for l in range(n, n_terms):
            acc += fit.d[l] * table.a[l, n]
        c[n] = acc * inv_mu**n
    c.setflags(write=False)
    return MonomialExpansion(fit.degree, c, "chebyshev")


def taylor_coeffs(n):
    """Taylor coefficients ``1/k!`` of ``exp`` up to degree ``n``."""
    n = check_degree(n, MAX_DEGREE, "degree")
    c = np.empty(n + 1)
    c[0] = 1.0
    for k in range(1, n + 1):
        c[k] = c[k - 1] / k
    c.setflags(write=False)
    return MonomialExpansion(n, c, "taylor")


def exp_coefficients(scheme, degree, mu=None):
    """Monomial coefficients for the ``"taylor"`` or ``"chebyshev"`` scheme."""
    if scheme == "taylor":
        return taylor_coeffs(degree)
    if scheme == "chebyshev":
        if mu is None:
            raise ValueError("the chebyshev scheme needs the half-width mu")
        return monomial_from_chebyshev(fit_exp_chebyshev(degree, mu))
    raise ValueError(f"unknown approximation scheme {scheme!r}")


def approximation_errors(degree, mu, grid=100001):
    """Pointwise errors of the Taylor and Chebyshev approximants of ``exp``.

    Returns ``(x, taylor_err, cheb_err)`` on ``grid`` equispaced points of
    ``[-mu, mu]``; errors are ``approximant - exp``.
    """
    mu = check_positive(mu, "mu")
    if isinstance(grid, bool) or int(grid) != grid or grid < 2:
        raise ValueError(f"grid must be an integer >= 2, got {grid!r}")
    x = np.linspace(-mu, mu, int(grid))
    exact = np.exp(x)
    taylor = taylor_coeffs(degree)(x) - exact
    cheb = fit_exp_chebyshev(degree, mu)(x) - exact
    return x, taylor, cheb


def linf_errors(degree, mu, grid=100001):
    """``(taylor_linf, cheb_linf)`` over a dense grid of ``[-mu, mu]``."""
    _, taylor, cheb = approximation_errors(degree, mu, grid)
    return float(np.max(np.abs(taylor))), float(np.max(np.abs(cheb)))

