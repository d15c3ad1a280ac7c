"""Exact integer and rational arithmetic primitives.

p-adic valuations, deterministic factorization, the Mobius function,
divisor windows on cubes, Bernoulli numbers and real zeta values.
Everything here is pure and exact except zeta_real, which carries an
explicit tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class DomainError(ValueError):
    """Argument outside an operation's domain."""


class CapacityError(RuntimeError):
    """A configured resource budget would be exceeded."""


# 2,3,5 wheel: candidate divisors 7, 11, 13, 17, 19, 23, 29, 31, ...
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (values up to ~1e12)."""
    if n < 2:
        return False
    for p in (2, 3, 5):
        if n % p == 0:
            return n == p
    d = 7
    i = 0
    while d * d <= n:
        if n % d == 0:
            return False
        d += _WHEEL[i]
        i = (i + 1) & 7
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray((n - p * p) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of excluded primes (the exceptional set)."""

    primes: frozenset

    def __post_init__(self):
        for p in self.primes:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")

    @classmethod
    def empty(cls) -> "PrimeSet":
        return cls(frozenset())

    @classmethod
    def of(cls, *ps: int) -> "PrimeSet":
        return cls(frozenset(ps))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse a comma-separated list; empty string means the empty set."""
        text = text.strip()
        if not text:
            return cls.empty()
        return cls(frozenset(int(t) for t in text.split(",")))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(sorted(self.primes))

    def __len__(self):
        return len(self.primes)

    def __str__(self):
        return ",".join(str(p) for p in sorted(self.primes))


@dataclass(frozen=True)
class Factorization:
    """value = prod p^e with primes strictly increasing and e >= 1."""

    value: int
    factors: tuple

    def __post_init__(self):
        if self.value < 1:
            raise DomainError("factorization of a nonpositive value")
        prod = 1
        last = 1
        for p, e in self.factors:
            if e < 1 or p <= last:
                raise DomainError("factors must be (increasing prime, exponent>=1)")
            last = p
            prod *= p ** e
        if prod != self.value:
            raise DomainError("factor list does not reconstruct the value")

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def cube(self) -> "Factorization":
        return Factorization(self.value ** 3, tuple((p, 3 * e) for p, e in self.factors))


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Deterministic trial division with a 2,3,5 wheel.

    Results are cached; Factorization is immutable so sharing is safe.
    """
    if n < 1:
        raise DomainError("factorize requires n >= 1")
    m = n
    out = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    d = 7
    i = 0
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += _WHEEL[i]
        i = (i + 1) & 7
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def vp(p: int, n: int) -> int:
    """Exponent of the largest power of p dividing n (n nonzero)."""
    if n == 0:
        raise DomainError("vp is undefined at 0")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(p: int, num: int, den: int) -> int:
    """Valuation of num/den; independent of common factors."""
    if num == 0 or den == 0:
        raise DomainError("vp_rational requires nonzero numerator and denominator")
    return vp(p, num) - vp(p, den)


def mobius(n: int) -> int:
    """0 on non-squarefree n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise DomainError("mobius requires n >= 1")
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def mobius_sieve(n: int) -> list[int]:
    """mu(0..n) as a list, by sieving with the smallest prime factor."""
    mu = [0] * (n + 1)
    if n >= 1:
        mu[1] = 1
    primes = []
    spf = [0] * (n + 1)
    for i in range(2, n + 1):
        if spf[i] == 0:
            spf[i] = i
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if p > spf[i] or i * p > n:
                break
            spf[i * p] = p
            mu[i * p] = 0 if p == spf[i] else -mu[i]
    return mu


def smallest_prime_factors(n: int) -> list[int]:
    """spf[i] = smallest prime factor of i, for 0 <= i <= n."""
    spf = list(range(n + 1))
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x)  # exact for floats, strings


def divisors_of_cube(n: int, lo, hi) -> list[Factorization]:
    """Divisors d of n^3 with lo < d <= hi, ascending, each factored.

    The window is half-open on the left.  Bounds may be int, Fraction or
    float; comparisons are exact (no floating point).
    """
    if n < 1:
        raise DomainError("divisors_of_cube requires n >= 1")
    lo = _as_fraction(lo)
    hi = _as_fraction(hi)
    if hi < lo:
        return []
    cube = factorize(n).cube()
    divs = [(1, ())]
    for p, e in cube.factors:
        grown = []
        for d, fs in divs:
            pe = 1
            for f in range(e + 1):
                if f:
                    pe *= p
                    grown.append((d * pe, fs + ((p, f),)))
                else:
                    grown.append((d, fs))
        divs = grown
    out = [
        Factorization(d, fs)
        for d, fs in sorted(divs)
        if lo < d <= hi
    ]
    return out


@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> tuple:
    """B_0..B_m as Fractions, convention B_1 = -1/2."""
    bs = [Fraction(1)]
    for r in range(1, m + 1):
        s = Fraction(0)
        for j in range(r):
            s += math.comb(r + 1, j) * bs[j]
        bs.append(-s / (r + 1))
    return tuple(bs)


def bernoulli(m: int) -> Fraction:
    """Exact B_m for even m >= 2 (B_2 = 1/6, B_4 = -1/30)."""
    if m < 2 or m % 2:
        raise DomainError("bernoulli requires even m >= 2")
    return _bernoulli_upto(m)[m]


def zeta_real(s: float, tol: float = 1e-12) -> float:
    """zeta(s) for real s > 1 by Euler-Maclaurin summation.

    The cutoff N grows until the first omitted correction term is below
    tol/10, so the result is within tol of the true value.  Deterministic
    for fixed (s, tol).
    """
    if s <= 1:
        raise DomainError("zeta_real requires s > 1")
    if tol <= 0:
        raise DomainError("tolerance must be positive")

    J = 8

    def correction(N: int, j: int) -> float:
        # B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(1-s-2j)
        c = float(bernoulli(2 * j)) / math.factorial(2 * j)
        rising = 1.0
        for i in range(2 * j - 1):
            rising *= s + i
        return c * rising * N ** (1.0 - s - 2 * j)

    N = 16
    while abs(correction(N, J + 1)) >= tol / 10:
        N *= 2

    total = sum(n ** (-s) for n in range(1, N))
    total += N ** (1.0 - s) / (s - 1.0) + 0.5 * N ** (-s)
    for j in range(1, J + 1):
        total += correction(N, j)
    return total
