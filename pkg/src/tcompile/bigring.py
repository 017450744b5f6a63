"""Exact arithmetic in D, Z[sqrt2], D[sqrt2], Z[omega] and D[omega].

Elements of Z[omega] are stored in the (omega^3, omega^2, omega, 1) basis with
omega = exp(i*pi/4), so ``ZOmega(a, b, c, d)`` is a*w^3 + b*w^2 + c*w + d.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Union

import mpmath

IntLike = Union[int, "ZRoot2", "ZOmega"]


def _isqrt_floor(n: int) -> int:
    from math import isqrt

    return isqrt(n)


@total_ordering
class Dyadic:
    """m / 2**l with m odd or zero."""

    __slots__ = ("m", "l")

    def __init__(self, m: int, l: int = 0):
        if m == 0:
            l = 0
        else:
            while l > 0 and m % 2 == 0:
                m //= 2
                l -= 1
            while l < 0:
                m *= 2
                l += 1
        self.m = m
        self.l = l

    def __add__(self, other: "Dyadic | int") -> "Dyadic":
        other = _as_dyadic(other)
        l = max(self.l, other.l)
        return Dyadic((self.m << (l - self.l)) + (other.m << (l - other.l)), l)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.l)

    def __sub__(self, other: "Dyadic | int") -> "Dyadic":
        return self + (-_as_dyadic(other))

    def __rsub__(self, other: "Dyadic | int") -> "Dyadic":
        return _as_dyadic(other) - self

    def __mul__(self, other: "Dyadic | int") -> "Dyadic":
        other = _as_dyadic(other)
        return Dyadic(self.m * other.m, self.l + other.l)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.m == other.m and self.l == other.l

    def __lt__(self, other: "Dyadic | int") -> bool:
        other = _as_dyadic(other)
        l = max(self.l, other.l)
        return self.m * 2 ** (l - self.l) < other.m * 2 ** (l - other.l)

    def __hash__(self) -> int:
        return hash((self.m, self.l))

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.ldexp(mpmath.mpf(self.m), -self.l)

    def __repr__(self) -> str:
        return f"Dyadic({self.m}, {self.l})"


def _as_dyadic(x: "Dyadic | int") -> Dyadic:
    return x if isinstance(x, Dyadic) else Dyadic(int(x))


class ZRoot2:
    """a + b*sqrt2 with integer a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a
        self.b = b

    @staticmethod
    def lift(x: "ZRoot2 | int") -> "ZRoot2":
        return x if isinstance(x, ZRoot2) else ZRoot2(int(x), 0)

    def __add__(self, other: "ZRoot2 | int") -> "ZRoot2":
        o = ZRoot2.lift(other)
        return ZRoot2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: "ZRoot2 | int") -> "ZRoot2":
        o = ZRoot2.lift(other)
        return ZRoot2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: "ZRoot2 | int") -> "ZRoot2":
        return ZRoot2.lift(other) - self

    def __neg__(self) -> "ZRoot2":
        return ZRoot2(-self.a, -self.b)

    def __mul__(self, other: "ZRoot2 | int") -> "ZRoot2":
        if isinstance(other, int):
            return ZRoot2(self.a * other, self.b * other)
        if not isinstance(other, ZRoot2):
            return NotImplemented
        return ZRoot2(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZRoot2":
        if n < 0:
            return self.inv_unit() ** (-n)
        result, base = ZRoot2(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if not isinstance(other, ZRoot2):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash(("zr2", self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def conj2(self) -> "ZRoot2":
        return ZRoot2(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt2."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        d = a * a - 2 * b * b
        return sa if d > 0 else (sb if d < 0 else 0)

    def __lt__(self, other: "ZRoot2 | int") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "ZRoot2 | int") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "ZRoot2 | int") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "ZRoot2 | int") -> bool:
        return (self - other).sign() >= 0

    def divisible_by_sqrt2(self) -> bool:
        return self.a % 2 == 0

    def div_sqrt2(self) -> "ZRoot2":
        if self.a % 2:
            raise ArithmeticError(f"{self} not divisible by sqrt2")
        return ZRoot2(self.b, self.a // 2)

    def mul_sqrt2(self) -> "ZRoot2":
        return ZRoot2(2 * self.b, self.a)

    def divides(self, other: "ZRoot2") -> bool:
        n = self.norm()
        if n == 0:
            return not other
        p = other * self.conj2()
        return p.a % n == 0 and p.b % n == 0

    def exact_div(self, other: "ZRoot2 | int") -> "ZRoot2":
        o = ZRoot2.lift(other)
        n = o.norm()
        p = self * o.conj2()
        if n == 0 or p.a % n or p.b % n:
            raise ArithmeticError(f"{o} does not divide {self}")
        return ZRoot2(p.a // n, p.b // n)

    def inv_unit(self) -> "ZRoot2":
        n = self.norm()
        if n not in (1, -1):
            raise ArithmeticError(f"{self} is not a unit")
        c = self.conj2()
        return c if n == 1 else -c

    def to_mpf(self) -> mpmath.mpf:
        return self.a + self.b * mpmath.sqrt(2)

    def to_zomega(self) -> "ZOmega":
        # sqrt2 = w - w^3
        return ZOmega(-self.b, 0, self.b, self.a)

    def __repr__(self) -> str:
        return f"ZRoot2({self.a}, {self.b})"


LAMBDA = ZRoot2(1, 1)
LAMBDA_INV = ZRoot2(-1, 1)


class DRoot2:
    """z / sqrt2**k with z in Z[sqrt2]; kept with minimal k >= 0."""

    __slots__ = ("z", "k")

    def __init__(self, z: "ZRoot2 | int", k: int = 0, reduce: bool = True):
        z = ZRoot2.lift(z)
        if reduce:
            while k > 0 and z.a % 2 == 0 and z:
                z = ZRoot2(z.b, z.a // 2)
                k -= 1
            if not z:
                k = 0
        self.z = z
        self.k = k

    @staticmethod
    def lift(x: "DRoot2 | ZRoot2 | int") -> "DRoot2":
        return x if isinstance(x, DRoot2) else DRoot2(ZRoot2.lift(x), 0)

    @staticmethod
    def from_dyadics(a: Dyadic | int, b: Dyadic | int) -> "DRoot2":
        a, b = _as_dyadic(a), _as_dyadic(b)
        l = max(a.l, b.l)
        za = a.m * 2 ** (l - a.l)
        zb = b.m * 2 ** (l - b.l)
        return DRoot2(ZRoot2(za, zb), 2 * l)

    @property
    def a(self) -> Dyadic:
        # z/sqrt2^k = z * sqrt2^k / 2^k
        return self._coeffs()[0]

    @property
    def b(self) -> Dyadic:
        return self._coeffs()[1]

    def _coeffs(self) -> tuple[Dyadic, Dyadic]:
        z, k = self.z, self.k
        if k % 2:
            z = z.mul_sqrt2()
            k += 1
        l = k // 2
        return Dyadic(z.a, l), Dyadic(z.b, l)

    def _scaled(self, k: int) -> ZRoot2:
        z = self.z
        d = k - self.k
        if d % 2:
            z = z.mul_sqrt2()
            d -= 1
        return z * (1 << (d // 2)) if d else z

    def __add__(self, other: "DRoot2 | ZRoot2 | int") -> "DRoot2":
        o = DRoot2.lift(other)
        k = max(self.k, o.k)
        return DRoot2(self._scaled(k) + o._scaled(k), k)

    __radd__ = __add__

    def __neg__(self) -> "DRoot2":
        return DRoot2(-self.z, self.k, reduce=False)

    def __sub__(self, other: "DRoot2 | ZRoot2 | int") -> "DRoot2":
        return self + (-DRoot2.lift(other))

    def __rsub__(self, other: "DRoot2 | ZRoot2 | int") -> "DRoot2":
        return DRoot2.lift(other) - self

    def __mul__(self, other: "DRoot2 | ZRoot2 | int") -> "DRoot2":
        o = DRoot2.lift(other)
        return DRoot2(self.z * o.z, self.k + o.k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, ZRoot2)):
            other = DRoot2.lift(other)
        if not isinstance(other, DRoot2):
            return NotImplemented
        return self.k == other.k and self.z == other.z

    def __hash__(self) -> int:
        return hash(("dr2", self.z.a, self.z.b, self.k))

    def conj2(self) -> "DRoot2":
        # (z / sqrt2^k)^bullet = z^bullet / (-sqrt2)^k
        c = self.z.conj2()
        return DRoot2(-c if self.k % 2 else c, self.k, reduce=False)

    def sign(self) -> int:
        return self.z.sign()

    def to_mpf(self) -> mpmath.mpf:
        return self.z.to_mpf() / mpmath.sqrt(2) ** self.k

    def to_domega(self) -> "DOmega":
        return DOmega(self.z.to_zomega(), self.k)

    def __repr__(self) -> str:
        return f"DRoot2({self.z.a}, {self.z.b}, k={self.k})"


class ZOmega:
    """a*w^3 + b*w^2 + c*w + d with integer coefficients."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @staticmethod
    def lift(x: "ZOmega | ZRoot2 | int") -> "ZOmega":
        if isinstance(x, ZOmega):
            return x
        if isinstance(x, ZRoot2):
            return x.to_zomega()
        return ZOmega(0, 0, 0, int(x))

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other: "ZOmega | ZRoot2 | int") -> "ZOmega":
        o = ZOmega.lift(other)
        return ZOmega(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other: "ZOmega | ZRoot2 | int") -> "ZOmega":
        o = ZOmega.lift(other)
        return ZOmega(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other: "ZOmega | ZRoot2 | int") -> "ZOmega":
        return ZOmega.lift(other) - self

    def __neg__(self) -> "ZOmega":
        return ZOmega(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "ZOmega | ZRoot2 | int") -> "ZOmega":
        if isinstance(other, int):
            return ZOmega(self.a * other, self.b * other, self.c * other, self.d * other)
        if isinstance(other, ZRoot2):
            other = other.to_zomega()
        if not isinstance(other, ZOmega):
            return NotImplemented
        # powers 0..3 are d, c, b, a; negacyclic since w^4 = -1
        p0, p1, p2, p3 = self.d, self.c, self.b, self.a
        q0, q1, q2, q3 = other.d, other.c, other.b, other.a
        r0 = p0 * q0 - p1 * q3 - p2 * q2 - p3 * q1
        r1 = p0 * q1 + p1 * q0 - p2 * q3 - p3 * q2
        r2 = p0 * q2 + p1 * q1 + p2 * q0 - p3 * q3
        r3 = p0 * q3 + p1 * q2 + p2 * q1 + p3 * q0
        return ZOmega(r3, r2, r1, r0)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZOmega":
        result, base = ZOmega(0, 0, 0, 1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, ZRoot2)):
            other = ZOmega.lift(other)
        if not isinstance(other, ZOmega):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d

    def __hash__(self) -> int:
        return hash(("zw", self.a, self.b, self.c, self.d))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def mul_omega(self, n: int = 1) -> "ZOmega":
        a, b, c, d = self.a, self.b, self.c, self.d
        for _ in range(n % 8):
            a, b, c, d = b, c, d, -a
        return ZOmega(a, b, c, d)

    def conj(self) -> "ZOmega":
        return ZOmega(-self.c, -self.b, -self.a, self.d)

    def conj2(self) -> "ZOmega":
        return ZOmega(-self.a, self.b, -self.c, self.d)

    def norm_sqrt2(self) -> ZRoot2:
        """z^dagger z as an element of Z[sqrt2]."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZRoot2(a * a + b * b + c * c + d * d, c * d + b * c + a * b - d * a)

    def norm(self) -> int:
        """Absolute norm: product of the four Galois conjugates."""
        return self.norm_sqrt2().norm()

    def divisible_by_sqrt2(self) -> bool:
        return (self.a - self.c) % 2 == 0 and (self.b - self.d) % 2 == 0

    def div_sqrt2(self) -> "ZOmega":
        a, b, c, d = self.a, self.b, self.c, self.d
        if (a - c) % 2 or (b - d) % 2:
            raise ArithmeticError(f"{self} not divisible by sqrt2")
        return ZOmega((b - d) // 2, (c + a) // 2, (d + b) // 2, (c - a) // 2)

    def mul_sqrt2(self) -> "ZOmega":
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZOmega(b - d, c + a, d + b, c - a)

    def is_real(self) -> bool:
        return self.b == 0 and self.a == -self.c

    def to_zroot2(self) -> ZRoot2:
        if not self.is_real():
            raise ValueError(f"{self} is not in Z[sqrt2]")
        return ZRoot2(self.d, self.c)

    def re_im_parts(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Real and imaginary parts as (p, q) meaning p + q/sqrt2."""
        return (self.d, self.c - self.a), (self.b, self.c + self.a)

    def to_mpc(self) -> mpmath.mpc:
        (rp, rq), (ip, iq) = self.re_im_parts()
        s = mpmath.sqrt(2)
        return mpmath.mpc(rp + rq / s, ip + iq / s)

    def divides(self, other: "ZOmega") -> bool:
        n = self.norm()
        if n == 0:
            return not other
        p = other * self._cofactor()
        return all(x % n == 0 for x in p.coeffs())

    def _cofactor(self) -> "ZOmega":
        """Product of the three other Galois conjugates; z * cofactor = norm."""
        c = self.conj()
        b = self.conj2()
        return c * b * b.conj()

    def exact_div(self, other: "ZOmega | ZRoot2 | int") -> "ZOmega":
        o = ZOmega.lift(other)
        n = o.norm()
        p = self * o._cofactor()
        if n == 0 or any(x % n for x in p.coeffs()):
            raise ArithmeticError(f"{o} does not divide {self}")
        return ZOmega(*(x // n for x in p.coeffs()))

    def round_div(self, other: "ZOmega") -> "ZOmega":
        o = ZOmega.lift(other)
        n = o.norm()
        p = self * o._cofactor()
        return ZOmega(*(_round_div(x, n) for x in p.coeffs()))

    def __repr__(self) -> str:
        return f"ZOmega({self.a}, {self.b}, {self.c}, {self.d})"


def _round_div(x: int, n: int) -> int:
    if n < 0:
        x, n = -x, -n
    return (2 * x + n) // (2 * n)


OMEGA = ZOmega(0, 0, 1, 0)
SQRT2_ZW = ZOmega(-1, 0, 1, 0)


class DOmega:
    """z / sqrt2**k with z in Z[omega]."""

    __slots__ = ("z", "k")

    def __init__(self, z: "ZOmega | ZRoot2 | int", k: int = 0, reduce: bool = True):
        z = ZOmega.lift(z)
        if reduce:
            while k > 0 and z.divisible_by_sqrt2() and z:
                z = z.div_sqrt2()
                k -= 1
            if not z:
                k = 0
        self.z = z
        self.k = k

    @staticmethod
    def lift(x: "DOmega | ZOmega | ZRoot2 | DRoot2 | int") -> "DOmega":
        if isinstance(x, DOmega):
            return x
        if isinstance(x, DRoot2):
            return x.to_domega()
        return DOmega(ZOmega.lift(x), 0)

    @staticmethod
    def from_coeffs(a: int, b: int, c: int, d: int, k: int = 0) -> "DOmega":
        return DOmega(ZOmega(a, b, c, d), k)

    def scaled(self, k: int) -> ZOmega:
        """Numerator with respect to denominator sqrt2**k (k >= self.k)."""
        z = self.z
        d = k - self.k
        if d < 0:
            raise ValueError("cannot lower the denominator exponent")
        if d % 2:
            z = z.mul_sqrt2()
            d -= 1
        return z * (1 << (d // 2)) if d else z

    def __add__(self, other: "DOmega | ZOmega | int") -> "DOmega":
        o = DOmega.lift(other)
        k = max(self.k, o.k)
        return DOmega(self.scaled(k) + o.scaled(k), k)

    __radd__ = __add__

    def __neg__(self) -> "DOmega":
        return DOmega(-self.z, self.k, reduce=False)

    def __sub__(self, other: "DOmega | ZOmega | int") -> "DOmega":
        return self + (-DOmega.lift(other))

    def __rsub__(self, other: "DOmega | ZOmega | int") -> "DOmega":
        return DOmega.lift(other) - self

    def __mul__(self, other: "DOmega | ZOmega | int") -> "DOmega":
        o = DOmega.lift(other)
        return DOmega(self.z * o.z, self.k + o.k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, ZOmega, ZRoot2, DRoot2)):
            other = DOmega.lift(other)
        if not isinstance(other, DOmega):
            return NotImplemented
        return self.k == other.k and self.z == other.z

    def __hash__(self) -> int:
        return hash(("dw", self.z.a, self.z.b, self.z.c, self.z.d, self.k))

    def __bool__(self) -> bool:
        return bool(self.z)

    def mul_omega(self, n: int = 1) -> "DOmega":
        return DOmega(self.z.mul_omega(n), self.k, reduce=False)

    def conj(self) -> "DOmega":
        return DOmega(self.z.conj(), self.k, reduce=False)

    def conj2(self) -> "DOmega":
        c = self.z.conj2()
        return DOmega(-c if self.k % 2 else c, self.k, reduce=False)

    def norm_sqrt2(self) -> DRoot2:
        return DRoot2(self.z.norm_sqrt2(), 2 * self.k)

    def is_real(self) -> bool:
        return self.z.is_real()

    def to_droot2(self) -> DRoot2:
        return DRoot2(self.z.to_zroot2(), self.k)

    def to_mpc(self) -> mpmath.mpc:
        v = self.z.to_mpc()
        if self.k:
            v = v / mpmath.sqrt(2) ** self.k
        return v

    def text(self) -> str:
        return f"{self.z.a},{self.z.b},{self.z.c},{self.z.d}/{self.k}"

    def __repr__(self) -> str:
        return f"DOmega({self.text()})"


def conj_complex(u: DOmega) -> DOmega:
    return DOmega.lift(u).conj()


def conj_root2(u: "DOmega | DRoot2") -> "DOmega | DRoot2":
    if isinstance(u, DRoot2):
        return u.conj2()
    return DOmega.lift(u).conj2()


def reduce_lde(u: DOmega) -> DOmega:
    u = DOmega.lift(u)
    return DOmega(u.z, u.k)


def embed(u: "DOmega | ZOmega | DRoot2 | ZRoot2 | int", precision: int = 50) -> mpmath.mpc:
    """Numerical value of a ring element, computed at ``precision`` digits plus guard."""
    if precision < 16:
        raise ValueError("precision must be at least 16 digits")
    with mpmath.workdps(precision + 10):
        if isinstance(u, (DRoot2, ZRoot2)):
            val = mpmath.mpc(u.to_mpf())
        else:
            val = DOmega.lift(u).to_mpc()
    return +val
