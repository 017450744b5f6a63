"""Exact 2x2 unitaries over D[omega] and the single-qubit Clifford+T gate matrices."""

from __future__ import annotations

import mpmath

from .bigring import DOmega, ZOmega

_ZERO = DOmega(0)
_ONE = DOmega(1)


def _omega_pow(k: int) -> DOmega:
    return DOmega(ZOmega(0, 0, 0, 1).mul_omega(k % 8), 0)


class DOmegaUnitary:
    """Exact unitary [[u, -t^dag w^k], [t, u^dag w^k]] with det = w^k.

    Stored as the four entries; ``u``, ``t`` and ``k`` are derived views.
    """

    __slots__ = ("e",)

    def __init__(self, a: DOmega, b: DOmega, c: DOmega, d: DOmega):
        self.e = (DOmega.lift(a), DOmega.lift(b), DOmega.lift(c), DOmega.lift(d))

    @staticmethod
    def from_ut(u: DOmega, t: DOmega, k: int = 0) -> "DOmegaUnitary":
        w = _omega_pow(k)
        u, t = DOmega.lift(u), DOmega.lift(t)
        return DOmegaUnitary(u, -(t.conj() * w), t, u.conj() * w)

    @staticmethod
    def identity() -> "DOmegaUnitary":
        return DOmegaUnitary(_ONE, _ZERO, _ZERO, _ONE)

    @property
    def u(self) -> DOmega:
        return self.e[0]

    @property
    def t(self) -> DOmega:
        return self.e[2]

    @property
    def k(self) -> int:
        """Exponent of omega in the determinant."""
        d = self.det()
        for j in range(8):
            if d == _omega_pow(j):
                return j
        raise ArithmeticError(f"determinant {d} is not a power of omega")

    def det(self) -> DOmega:
        a, b, c, d = self.e
        return a * d - b * c

    def __matmul__(self, other: "DOmegaUnitary") -> "DOmegaUnitary":
        a, b, c, d = self.e
        p, q, r, s = other.e
        return DOmegaUnitary(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def dagger(self) -> "DOmegaUnitary":
        a, b, c, d = self.e
        return DOmegaUnitary(a.conj(), c.conj(), b.conj(), d.conj())

    def scale_omega(self, j: int) -> "DOmegaUnitary":
        return DOmegaUnitary(*(x.mul_omega(j) for x in self.e))

    def lde(self) -> int:
        return max(x.k for x in self.e)

    def sde_u2(self) -> int:
        """Denominator exponent (in powers of sqrt2) of |u|^2."""
        return self.e[0].norm_sqrt2().k

    def check_unitary(self) -> None:
        a, b, c, d = self.e
        rows = [
            (a.conj() * a + c.conj() * c, _ONE, "|u|^2 + |t|^2 = 1"),
            (a.conj() * b + c.conj() * d, _ZERO, "column orthogonality"),
            (b.conj() * b + d.conj() * d, _ONE, "second column norm = 1"),
        ]
        for got, want, name in rows:
            if got != want:
                raise ValueError(f"not unitary: {name} fails ({got.text()})")

    def key(self) -> tuple:
        return tuple((x.z.a, x.z.b, x.z.c, x.z.d, x.k) for x in self.e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DOmegaUnitary):
            return NotImplemented
        return self.e == other.e

    def __hash__(self) -> int:
        return hash(self.key())

    def equal_up_to_phase(self, other: "DOmegaUnitary") -> bool:
        return any(self.scale_omega(j) == other for j in range(8))

    def to_mpmath(self) -> mpmath.matrix:
        a, b, c, d = self.e
        return mpmath.matrix([[a.to_mpc(), b.to_mpc()], [c.to_mpc(), d.to_mpc()]])

    def __repr__(self) -> str:
        return "DOmegaUnitary(" + "; ".join(x.text() for x in self.e) + ")"


_INV_SQRT2 = DOmega(1, 1)
_I = DOmega(ZOmega(0, 1, 0, 0))
_W = DOmega(ZOmega(0, 0, 1, 0))

GATES: dict[str, DOmegaUnitary] = {
    "H": DOmegaUnitary(_INV_SQRT2, _INV_SQRT2, _INV_SQRT2, -_INV_SQRT2),
    "S": DOmegaUnitary(_ONE, _ZERO, _ZERO, _I),
    "T": DOmegaUnitary(_ONE, _ZERO, _ZERO, _W),
    "X": DOmegaUnitary(_ZERO, _ONE, _ONE, _ZERO),
    "Z": DOmegaUnitary(_ONE, _ZERO, _ZERO, -_ONE),
    "W": DOmegaUnitary(_W, _ZERO, _ZERO, _W),
}


def word_matrix(word: str) -> DOmegaUnitary:
    """Exact matrix of a gate word written in application order."""
    m = DOmegaUnitary.identity()
    for g in word:
        m = GATES[g] @ m
    return m
