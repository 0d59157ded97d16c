"""Cyclotomic polynomials and their valuations in binomials 1 - q^m.

Construction never touches roots of unity: the n-th cyclotomic polynomial
is obtained by exactly dividing q^n - 1 by the cyclotomic polynomials of
the proper divisors of n, which keeps every intermediate an integer
polynomial.  Results are memoized; the fill is idempotent, so concurrent
workers may share the table without locking.
"""

from __future__ import annotations

from .polycore import Poly, div_rem_by_monic

_CACHE: dict[int, Poly] = {1: Poly((-1, 1))}


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending.

    >>> divisors(15)
    [1, 3, 5, 15]
    """
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    """Euler's totient by trial-division factorization."""
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic(n: int) -> Poly:
    """The monic integer polynomial with the primitive n-th roots of unity
    as roots, of degree euler_phi(n).

    >>> cyclotomic(1).coeffs
    (-1, 1)
    >>> cyclotomic(6).coeffs
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    cached = _CACHE.get(n)
    if cached is not None:
        return cached
    pol = Poly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n):
        if d < n:
            pol, rem = div_rem_by_monic(pol, cyclotomic(d))
            if not rem.is_zero():
                raise AssertionError(f"inexact cyclotomic division at n={n}")
    _CACHE[n] = pol
    return pol


def ord_cyclotomic_in_one_minus_pow(d: int, m: int) -> int:
    """Multiplicity of the d-th cyclotomic polynomial in 1 - q^m.

    Since q^m - 1 is the squarefree product of the cyclotomic polynomials
    over the divisors of m, the answer is 1 exactly when d divides m.
    """
    if d < 2:
        raise ValueError("cyclotomic index must be >= 2")
    if m < 1:
        raise ValueError("exponent must be >= 1")
    return 1 if m % d == 0 else 0


def q_integer_cyclotomic_factors(n: int) -> list[int]:
    """Indices d with 1 + q + ... + q^{n-1} = product of cyclotomic(d).

    >>> q_integer_cyclotomic_factors(9)
    [3, 9]
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return [d for d in divisors(n) if d > 1]
