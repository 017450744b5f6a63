"""Integer factoring with an effort budget and the relative norm equation t^dag t = xi."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum

import gmpy2

from .bigring import LAMBDA, DOmega, DRoot2, ZOmega, ZRoot2

_SMALL_PRIMES: list[int] = []


def _small_primes(limit: int = 10_000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, math.isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES.extend(i for i in range(limit + 1) if sieve[i])
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Strong base-2 probable prime plus strong Lucas test (BPSW)."""
    if n < 2:
        return False
    for p in _small_primes()[:25]:
        if n % p == 0:
            return n == p
    return bool(gmpy2.is_strong_bpsw_prp(n))


class FactorStatus(Enum):
    COMPLETE = "complete"
    ABANDONED = "abandoned"


@dataclass
class FactorizationOutcome:
    n: int
    factors: dict[int, int] = field(default_factory=dict)
    status: FactorStatus = FactorStatus.COMPLETE

    @property
    def complete(self) -> bool:
        return self.status is FactorStatus.COMPLETE


def _brent(n: int, budget: int, rng: random.Random) -> int | None:
    """One nontrivial factor of composite n, or None when the budget runs out."""
    if n % 2 == 0:
        return 2
    nz = gmpy2.mpz(n)
    spent = 0
    while spent < budget:
        y = gmpy2.mpz(rng.randrange(1, n))
        c = gmpy2.mpz(rng.randrange(1, n))
        m = 128
        g = r = q = gmpy2.mpz(1)
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % nz
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % nz
                    q = q * abs(x - y) % nz
                g = gmpy2.gcd(q, nz)
                k += m
            spent += r
            r *= 2
        if g == nz:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % nz
                g = gmpy2.gcd(abs(x - ys), nz)
        if 1 < g < nz:
            return int(g)
    return None


def default_budget(n: int) -> int:
    """Pollard-Brent iteration budget.

    Bit-length squared, raised to 2**21 below 128 bits so that products of two
    40-bit primes still split.
    """
    bits = n.bit_length()
    return max(bits * bits, 1 << 21) if bits <= 128 else bits * bits


def factor(n: int, budget: int | None = None, seed: int = 0) -> FactorizationOutcome:
    if n == 0:
        raise ValueError("cannot factor 0")
    m = abs(n)
    out = FactorizationOutcome(n)
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            out.factors[p] = out.factors.get(p, 0) + 1
            m //= p
    if m == 1:
        return out
    budget = default_budget(m) if budget is None else budget
    rng = random.Random(seed)
    stack = [m]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            out.factors[x] = out.factors.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        d = _brent(x, budget, rng)
        if d is None:
            out.status = FactorStatus.ABANDONED
            return out
        stack += [d, x // d]
    return out


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root of a modulo an odd prime p."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# -- Euclidean algorithms --------------------------------------------------

def _rdiv(x: int, n: int) -> int:
    return (2 * x + n) // (2 * n)


def gcd_zroot2(a: ZRoot2, b: ZRoot2) -> ZRoot2:
    while b:
        n = b.norm()
        p = a * b.conj2()
        if n < 0:
            p, n = -p, -n
        q = ZRoot2(_rdiv(p.a, n), _rdiv(p.b, n))
        a, b = b, a - q * b
    return a


def _zomega_mod(a: ZOmega, b: ZOmega) -> ZOmega:
    nb = b.norm()
    r = a - a.round_div(b) * b
    if r.norm() < nb:
        return r
    # ties at exactly one half: try neighbouring quotients
    base = a.round_div(b)
    for da in (0, -1, 1):
        for db in (0, -1, 1):
            for dc in (0, -1, 1):
                for dd in (0, -1, 1):
                    q = base + ZOmega(da, db, dc, dd)
                    r = a - q * b
                    if r.norm() < nb:
                        return r
    raise ArithmeticError("Euclidean step failed in Z[omega]")


def gcd_zomega(a: ZOmega, b: ZOmega) -> ZOmega:
    while b:
        a, b = b, _zomega_mod(a, b)
    return a


# -- norm equation ---------------------------------------------------------

class NormStatus(Enum):
    SOLVED = "solved"
    NO_SOLUTION = "no_solution"
    ABANDONED = "abandoned"


@dataclass
class NormResult:
    status: NormStatus
    t: DOmega | None = None


_DELTA = ZOmega(0, 0, 1, 1)  # 1 + omega, with delta^dag delta = sqrt2 * lambda
_SQRT_M2 = ZOmega(1, 0, 1, 0)  # omega + omega^3 = sqrt(-2)
_I = ZOmega(0, 1, 0, 0)


def _count_div(x: ZRoot2, d: ZRoot2) -> tuple[int, ZRoot2]:
    e = 0
    while x and d.divides(x):
        x = x.exact_div(d)
        e += 1
    return e, x


def _count_div_int(x: ZRoot2, p: int) -> tuple[int, ZRoot2]:
    e = 0
    while x and x.a % p == 0 and x.b % p == 0:
        x = ZRoot2(x.a // p, x.b // p)
        e += 1
    return e, x


def _unit_sqrt(q: ZRoot2) -> ZRoot2 | None:
    """lambda^m with lambda^(2m) = q, or None if q is not such a unit."""
    if q.norm() != 1 or q.sign() <= 0 or q.conj2().sign() <= 0:
        return None
    # q = lambda^(2m); lambda^2 = 3 + 2 sqrt2 has log2 ~ 2.543
    size = max(abs(q.a), 1).bit_length()
    m = round(size / 2.5431066)
    if q < 1:
        m = -m
    for cand in (m, m - 1, m + 1, m - 2, m + 2):
        r = LAMBDA ** cand
        if r * r == q:
            return r
    return None


def solve_norm_equation(xi: DRoot2 | ZRoot2 | int, budget: int | None = None, seed: int = 0) -> NormResult:
    """Find t in D[omega] with t^dag t = xi exactly."""
    xi = DRoot2.lift(xi)
    if xi.sign() < 0 or xi.conj2().sign() < 0:
        return NormResult(NormStatus.NO_SOLUTION)
    if not xi.z:
        return NormResult(NormStatus.SOLVED, DOmega(0))
    j = xi.k
    m = (j + 1) // 2
    eta = xi.z.mul_sqrt2() if 2 * m - j else xi.z
    n = eta.norm()
    fact = factor(n, budget, seed)
    if not fact.complete:
        return NormResult(NormStatus.ABANDONED)
    s = ZOmega(0, 0, 0, 1)
    rem = eta
    e2 = 0
    while rem.divisible_by_sqrt2():
        rem = rem.div_sqrt2()
        e2 += 1
    s = s * _DELTA ** e2
    for p, _mult in sorted(fact.factors.items()):
        if p == 2:
            continue
        r8 = p % 8
        if r8 in (3, 5):
            e, rem = _count_div_int(rem, p)
            if e == 0:
                continue
            x = sqrt_mod(-2 if r8 == 3 else -1, p)
            gen = ZOmega(0, 0, 0, x) + (_SQRT_M2 if r8 == 3 else _I)
            sp = gcd_zomega(ZOmega(0, 0, 0, p), gen)
            s = s * sp ** e
            continue
        x = sqrt_mod(2, p)
        pi = gcd_zroot2(ZRoot2(p), ZRoot2(x, 1))
        for prime in (pi, pi.conj2()):
            e, rem = _count_div(rem, prime)
            if e == 0:
                continue
            if r8 == 7:
                if e % 2:
                    return NormResult(NormStatus.NO_SOLUTION)
                s = s * prime.to_zomega() ** (e // 2)
            else:
                h = sqrt_mod(-1, p)
                sigma = gcd_zomega(prime.to_zomega(), ZOmega(0, 1, 0, h))
                s = s * sigma ** e
    # eta = unit * s^dag s
    ss = s.conj() * s
    q_zw = ZOmega.lift(eta)
    if not ss.divides(q_zw):
        return NormResult(NormStatus.NO_SOLUTION)
    q = q_zw.exact_div(ss)
    if not q.is_real():
        return NormResult(NormStatus.NO_SOLUTION)
    lam_m = _unit_sqrt(q.to_zroot2())
    if lam_m is None:
        return NormResult(NormStatus.NO_SOLUTION)
    t = DOmega(s * lam_m.to_zomega(), m)
    if t.conj() * t != DOmega.lift(xi):
        raise AssertionError("norm equation solution failed exact verification")
    return NormResult(NormStatus.SOLVED, t)
