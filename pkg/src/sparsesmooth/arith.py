"""Integer arithmetic substrate: primality, factorization, primorials, smoothness.

Everything here works on plain Python ints (arbitrary precision).  The prime
sieve is built once and grown on demand; all other state is per-call, so the
module is safe to use from several threads after the first sieve build.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

EULER_GAMMA = 0.5772156649015328606

# Hard ceiling for on-demand sieve growth; override via environment.
_SIEVE_CEILING = int(os.environ.get("SPARSE_SMOOTH_SIEVE_LIMIT", 10_000_000))

_sieve_limit = 0
_primes: list[int] = []


def _grow_sieve(limit: int) -> None:
    global _sieve_limit, _primes
    if limit <= _sieve_limit:
        return
    if limit > _SIEVE_CEILING:
        raise ValueError(
            f"sieve request {limit} exceeds ceiling {_SIEVE_CEILING} "
            "(set SPARSE_SMOOTH_SIEVE_LIMIT to raise it)"
        )
    limit = min(max(limit, 2 * _sieve_limit, 1 << 16), _SIEVE_CEILING)
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * len(range(start, limit + 1, p))
    _primes = [i for i, v in enumerate(sieve) if v]
    _sieve_limit = limit


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending.  Returns a fresh list safe to mutate."""
    if n < 2:
        return []
    _grow_sieve(n)
    from bisect import bisect_right

    return _primes[: bisect_right(_primes, n)]


def nth_primes(count: int) -> list[int]:
    """The first `count` primes 2, 3, 5, ..."""
    bound = 16
    while True:
        if count < 6:
            bound = 16
        else:
            # p_n < n(ln n + ln ln n) for n >= 6
            bound = int(count * (math.log(count) + math.log(math.log(count)))) + 10
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return ps[:count]
        bound *= 2
        _grow_sieve(bound)


# Deterministic strong-pseudoprime witnesses covering all n < 3.3e24 > 2^64.
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Beyond 2^64 the test is probabilistic: 64 fixed prime bases, so repeated
# calls always agree and the error probability is < 4^-64 per composite.
_LARGE_WITNESS_COUNT = 64
_TWO_64 = 1 << 64


def _strong_probable_prime(n: int, a: int) -> bool:
    if a % n == 0:
        return True
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2^64, 64-round strong PRP above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < _TWO_64:
        witnesses = _SMALL_WITNESSES
    else:
        witnesses = nth_primes(_LARGE_WITNESS_COUNT)
    return all(_strong_probable_prime(n, a) for a in witnesses)


@dataclass(frozen=True)
class FactorEffort:
    """Budget for `factor`: trial-division bound and Pollard-rho caps.

    rho uses x -> x^2 + c with c = 1, 2, 3, ... per restart, so runs are
    reproducible; `rho_iterations` caps each invocation, `rho_restarts` the
    number of c values tried before giving up on a composite piece.
    """

    trial_bound: int = 100_000
    rho_iterations: int = 1 << 24
    rho_restarts: int = 16


DEFAULT_EFFORT = FactorEffort()


@dataclass(frozen=True)
class Factorization:
    """Multiset of (prime, exponent) pairs plus an unfactored cofactor.

    cofactor == 1 means the factorization is complete; otherwise the
    cofactor is composite or of unknown status and `complete` is False.
    """

    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    def __post_init__(self) -> None:
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise ValueError("factors must be sorted by strictly increasing prime")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def product(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def largest_prime(self) -> int:
        """Largest certified prime factor (1 for an empty factorization)."""
        return self.factors[-1][0] if self.factors else 1


def _brent_rho(n: int, c: int, max_iters: int) -> int:
    """One Brent-cycle rho round on odd composite n; returns a factor or 1."""
    x = 2
    y = 2
    d = 1

    ys = y
    count = 0
    r = 1
    while count < max_iters:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and count < max_iters:
            ys = y
            q = 1
            for _ in range(min(128, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            count += min(128, r - k)
            d = math.gcd(q, n)
            if d != 1:
                break
            k += 128
        if d != 1:
            break
        r *= 2
    if d == n:
        # backtrack to isolate the factor the batched gcd skipped over
        while True:
            ys = (ys * ys + c) % n
            d = math.gcd(abs(x - ys), n)
            if d > 1:
                break
    return d if 1 < d < n else 1


def _split(n: int, effort: FactorEffort) -> tuple[int, int]:
    """Find a nontrivial factor of odd composite n; (1, n) on budget exhaustion."""
    for c in range(1, effort.rho_restarts + 1):
        d = _brent_rho(n, c, effort.rho_iterations)
        if 1 < d < n:
            return d, n // d
    return 1, n


def factor(n: int, effort: FactorEffort = DEFAULT_EFFORT) -> Factorization:
    """Factor n >= 1 by trial division then Pollard rho (Brent variant).

    The result is complete iff every piece succumbed within the budget;
    otherwise the remaining product of unsplit composites is returned as
    the cofactor.
    """
    if n < 1:
        raise ValueError("factor requires n >= 1")
    found: dict[int, int] = {}
    rest = n
    for p in primes_up_to(min(effort.trial_bound, math.isqrt(n) + 1)):
        if p * p > rest:
            break
        while rest % p == 0:
            found[p] = found.get(p, 0) + 1
            rest //= p
    stack = [rest] if rest > 1 else []
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        a, b = _split(m, effort)
        if a == 1:
            cofactor *= m
            continue
        stack.append(a)
        stack.append(b)
    return Factorization(tuple(sorted(found.items())), cofactor)


def smooth_part(n: int, y: int) -> tuple[int, int]:
    """Split n = smooth * rough with smooth the largest y-smooth divisor.

    The rough part has no prime factor <= y; n is y-smooth iff rough == 1.
    """
    if n < 1:
        raise ValueError("smooth_part requires n >= 1")
    if y < 2:
        raise ValueError("smooth_part requires y >= 2")
    smooth = 1
    rough = n
    for p in primes_up_to(y):
        if p * p > rough:
            break
        while rough % p == 0:
            smooth *= p
            rough //= p
    if 1 < rough <= y and is_prime(rough):
        # rough is prime here whenever p*p > rough ended the loop
        smooth *= rough
        rough = 1
    return smooth, rough


def is_smooth(n: int, y: int) -> bool:
    """True iff n has no prime factor exceeding y (1 is y-smooth for all y)."""
    return smooth_part(n, y)[1] == 1


@dataclass(frozen=True)
class OddPrimorial:
    """k = p_2 * p_3 * ... * p_r, the product of the first r-1 odd primes."""

    r: int
    k: int
    largest_prime: int

    @property
    def prime_list(self) -> tuple[int, ...]:
        return tuple(nth_primes(self.r)[1:])


def odd_primorial(r: int) -> OddPrimorial:
    """Product of the odd primes p_2..p_r (r >= 2); r=2 gives k=3."""
    if r < 2:
        raise ValueError("odd_primorial requires r >= 2")
    ps = nth_primes(r)[1:]
    k = 1
    for p in ps:
        k *= p
    return OddPrimorial(r=r, k=k, largest_prime=ps[-1])


def euler_phi(f: Factorization) -> int:
    """Euler totient from a complete factorization."""
    if not f.complete:
        raise ValueError("euler_phi requires a complete factorization")
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def tau(f: Factorization) -> int:
    """Divisor count from a complete factorization."""
    if not f.complete:
        raise ValueError("tau requires a complete factorization")
    out = 1
    for _, e in f.factors:
        out *= e + 1
    return out


@dataclass(frozen=True)
class MertensProduct:
    """prod_{p<=x} (1 - 1/p) together with its ratio to e^-gamma / log x."""

    x: int
    product: float
    reference: float
    ratio: float


def mertens_product(x: int) -> MertensProduct:
    """Evaluate the Mertens product over primes <= x in double precision."""
    if x < 2:
        raise ValueError("mertens_product requires x >= 2")
    prod = 1.0
    for p in primes_up_to(x):
        prod *= 1.0 - 1.0 / p
    ref = math.exp(-EULER_GAMMA) / math.log(x)
    return MertensProduct(x=x, product=prod, reference=ref, ratio=prod / ref)
