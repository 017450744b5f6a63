"""One- and two-dimensional grid problems over Z[sqrt2] and Z[omega].

The 2-D solver follows the usual recipe: enclose the target set in an ellipse,
find a grid operator that makes the ellipse pair nearly upright, then sweep
bounding boxes with the 1-D solver for each denominator exponent k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import mpmath

from .bigring import LAMBDA, LAMBDA_INV, DOmega, DRoot2, ZOmega, ZRoot2

Interval = tuple  # (lo, hi) of mpf


# -- 1-D grid problem ------------------------------------------------------

def _odgp_base(x0, x1, y0, y1) -> list[ZRoot2]:
    s2 = mpmath.sqrt(2)
    out = []
    blo = int(mpmath.ceil((x0 - y1) / (2 * s2))) - 1
    bhi = int(mpmath.floor((x1 - y0) / (2 * s2))) + 1
    for b in range(blo, bhi + 1):
        bs = b * s2
        lo = max(x0 - bs, y0 + bs)
        hi = min(x1 - bs, y1 + bs)
        if hi < lo - 2:
            continue
        for a in range(int(mpmath.ceil(lo)) - 1, int(mpmath.floor(hi)) + 2):
            v, vc = a + bs, a - bs
            if x0 <= v <= x1 and y0 <= vc <= y1:
                out.append(ZRoot2(a, b))
    return out


def solve_odgp(a_int: Interval, b_int: Interval) -> list[ZRoot2]:
    """All alpha in Z[sqrt2] with alpha in A and alpha^bullet in B, sorted by value."""
    x0, x1 = (mpmath.mpf(v) for v in a_int)
    y0, y1 = (mpmath.mpf(v) for v in b_int)
    if x1 < x0 or y1 < y0:
        return []
    wa, wb = x1 - x0, y1 - y0
    n = 0
    if wa > 0 and wb > 0:
        n = int(mpmath.nint(mpmath.log(wb / wa) / (2 * mpmath.log(1 + mpmath.sqrt(2)))))
    if n == 0:
        sols = _odgp_base(x0, x1, y0, y1)
        return _filter_sorted(sols, x0, x1, y0, y1)
    # lambda^n has coefficients near lambda^|n|; evaluating them cancels that many digits
    with mpmath.workdps(mpmath.mp.dps + int(abs(n) * 0.3829) + 10):
        lam = 1 + mpmath.sqrt(2)
        ln, lnc = lam ** n, (-1 / lam) ** n
        ax = sorted((x0 * ln, x1 * ln))
        by = sorted((y0 * lnc, y1 * lnc))
        # loosen by a few ulps so boundary solutions survive the rounding; the filter is exact
        pa = (abs(ax[0]) + abs(ax[1])) * mpmath.eps * 16
        pb = (abs(by[0]) + abs(by[1])) * mpmath.eps * 16
        inv = LAMBDA ** (-n)
        sols = [inv * s for s in _odgp_base(ax[0] - pa, ax[1] + pa, by[0] - pb, by[1] + pb)]
        return _filter_sorted(sols, x0, x1, y0, y1)


def _filter_sorted(sols, x0, x1, y0, y1) -> list[ZRoot2]:
    sols = [s for s in sols if x0 <= s.to_mpf() <= x1 and y0 <= s.conj2().to_mpf() <= y1]
    sols.sort(key=lambda s: s.to_mpf())
    return sols


# -- ellipses and regions --------------------------------------------------

@dataclass
class Ellipse:
    """{v : (v - c)^T D (v - c) <= 1} with D = [[d11, d12], [d12, d22]]."""

    d11: mpmath.mpf
    d12: mpmath.mpf
    d22: mpmath.mpf
    cx: mpmath.mpf
    cy: mpmath.mpf

    def det(self):
        return self.d11 * self.d22 - self.d12 * self.d12

    def value(self, x, y):
        dx, dy = x - self.cx, y - self.cy
        return self.d11 * dx * dx + 2 * self.d12 * dx * dy + self.d22 * dy * dy


@dataclass
class EpsilonRegion:
    """Unit-disk cap {u : |u| <= 1, Re(u e^{i phi/2}) >= d}, d = sqrt(1 - eps^2/4).

    The cap is exactly the set of u for which [[u, -t^dag], [t, u^dag]] lies
    within diamond distance eps of R_Z(phi) (up to the sign of u).
    """

    phi: mpmath.mpf
    eps: mpmath.mpf

    @property
    def d(self):
        return mpmath.sqrt(1 - self.eps ** 2 / 4)

    def direction(self):
        h = -self.phi / 2
        return mpmath.cos(h), mpmath.sin(h)

    def contains(self, x, y) -> bool:
        zx, zy = self.direction()
        return x * zx + y * zy >= self.d and x * x + y * y <= 1

    def margin(self, x, y):
        """Non-negative exactly when (x, y) lies in the region."""
        zx, zy = self.direction()
        return min(x * zx + y * zy - self.d, 1 - x * x - y * y)

    def ellipse(self) -> Ellipse:
        d = self.d
        h = 1 - d
        w = mpmath.sqrt(1 - d * d)
        zx, zy = self.direction()
        ap, aq = h / mpmath.sqrt(2), w * mpmath.sqrt(2)
        pc = (1 + d) / 2
        # boundary samples in (p, q) coordinates; grow the ellipse to contain all
        pts = []
        n = 64
        for i in range(n + 1):
            q = -w + 2 * w * i / n
            pts.append((mpmath.sqrt(max(1 - q * q, 0)), q))
            pts.append((d, q))
        worst = max(((p - pc) / ap) ** 2 + (q / aq) ** 2 for p, q in pts)
        grow = mpmath.sqrt(max(worst, 1)) * mpmath.mpf("1.05")
        ap, aq = ap * grow, aq * grow
        # D = R diag(1/ap^2, 1/aq^2) R^T with R columns (z, z_perp)
        ip, iq = 1 / ap ** 2, 1 / aq ** 2
        d11 = ip * zx * zx + iq * zy * zy
        d22 = ip * zy * zy + iq * zx * zx
        d12 = (ip - iq) * zx * zy
        return Ellipse(d11, d12, d22, pc * zx, pc * zy)


@dataclass
class DiskRegion:
    radius: mpmath.mpf = mpmath.mpf(1)

    def contains(self, x, y) -> bool:
        return x * x + y * y <= self.radius ** 2

    def margin(self, x, y):
        return self.radius ** 2 - x * x - y * y

    def ellipse(self) -> Ellipse:
        r2 = 1 / mpmath.mpf(self.radius) ** 2
        return Ellipse(r2, mpmath.mpf(0), r2, mpmath.mpf(0), mpmath.mpf(0))


# -- grid operators --------------------------------------------------------

_H = DRoot2(1, 1)  # 1/sqrt2
_ONE = DRoot2(1)
_ZERO = DRoot2(0)


class GridOp:
    """2x2 real matrix with D[sqrt2] entries mapping Z[omega] into itself."""

    __slots__ = ("m",)

    def __init__(self, a, b, c, d):
        self.m = tuple(DRoot2.lift(x) for x in (a, b, c, d))

    def __matmul__(self, o: "GridOp") -> "GridOp":
        a, b, c, d = self.m
        p, q, r, s = o.m
        return GridOp(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def bullet(self) -> "GridOp":
        return GridOp(*(x.conj2() for x in self.m))

    def numeric(self):
        return tuple(x.to_mpf() for x in self.m)

    def shifted(self, k: int) -> "GridOp":
        """sigma^k G sigma^k, again a grid operator."""
        a, b, c, d = self.m
        lk = DRoot2(LAMBDA ** k if k >= 0 else LAMBDA_INV ** (-k))
        lmk = DRoot2(LAMBDA ** (-k) if k <= 0 else LAMBDA_INV ** k)
        return GridOp(lk * a, b, c, lmk * d)

    def apply(self, w: DOmega) -> DOmega:
        """Exact action on an element of D[omega] viewed as a point of R^2."""
        z, k = w.z, w.k
        x = DRoot2(ZRoot2(z.c - z.a, z.d), 1)
        y = DRoot2(ZRoot2(z.c + z.a, z.b), 1)
        a, b, c, d = self.m
        nx, ny = a * x + b * y, c * x + d * y
        out = nx.to_domega() + DOmega(ZOmega(0, 1, 0, 0)) * ny.to_domega()
        return DOmega(out.z, out.k + k) if k else out

    def __repr__(self) -> str:
        return "GridOp(" + ", ".join(repr(x) for x in self.m) + ")"


def _lam(n: int) -> DRoot2:
    return DRoot2(LAMBDA ** n if n >= 0 else LAMBDA_INV ** (-n))


OP_I = GridOp(_ONE, _ZERO, _ZERO, _ONE)
OP_R = GridOp(_H, -_H, _H, _H)
OP_X = GridOp(_ZERO, _ONE, _ONE, _ZERO)
OP_Z = GridOp(_ONE, _ZERO, _ZERO, -_ONE)
OP_K = GridOp(_H * (-_lam(-1)), -_H, _H * _lam(1), _H)
OP_KB = OP_K.bullet()


def op_a(n: int) -> GridOp:
    return GridOp(_ONE, DRoot2(-2 * n), _ZERO, _ONE)


def op_b(n: int) -> GridOp:
    return GridOp(_ONE, DRoot2(ZRoot2(0, n)), _ZERO, _ONE)


# -- skew reduction --------------------------------------------------------

def _congruence(e: tuple, g: tuple) -> tuple:
    """G^T D G for symmetric D = (d11, d12, d22)."""
    d11, d12, d22 = e
    a, b, c, d = g
    n11 = a * (a * d11 + c * d12) + c * (a * d12 + c * d22)
    n12 = a * (b * d11 + d * d12) + c * (b * d12 + d * d22)
    n22 = b * (b * d11 + d * d12) + d * (b * d12 + d * d22)
    return (n11, n12, n22)


def _normalize(e: tuple) -> tuple:
    s = mpmath.sqrt(e[0] * e[2] - e[1] * e[1])
    return (e[0] / s, e[1] / s, e[2] / s)


def _params(e: tuple):
    """(skew b^2, b, z) with e = [[E l^-z, b], [b, E l^z]]."""
    d11, d12, d22 = e
    z = mpmath.log(d22 / d11) / (2 * mpmath.log(1 + mpmath.sqrt(2)))
    return d12 * d12, d12, z


def _skew(st) -> mpmath.mpf:
    return st[0][1] ** 2 + st[1][1] ** 2


def _act(st, g: GridOp):
    return (_normalize(_congruence(st[0], g.numeric())), _normalize(_congruence(st[1], g.bullet().numeric())))


def _step_op(st) -> GridOp:
    """Operator from the step lemma for a state with bias shifted into [-1, 1]."""
    _, b, z = _params(st[0])
    _, beta, zeta = _params(st[1])
    k = int(mpmath.nint((z - zeta) / 2))
    # shifted frame
    z, zeta = z - k, zeta + k
    if k % 2:
        beta = -beta
    pre = OP_I
    if beta < 0:
        pre = pre @ OP_Z
        b, beta = -b, -beta
    if z + zeta < 0:
        pre = pre @ OP_X
        z, zeta = -z, -zeta
    lam = 1 + mpmath.sqrt(2)
    lo, hi = mpmath.mpf("-0.8"), mpmath.mpf("0.8")
    if lo <= z <= hi and lo <= zeta <= hi:
        op = OP_R
    elif b >= 0:
        if z <= 0.3 and zeta >= 0.8:
            op = OP_K
        elif z >= 0.8 and zeta <= 0.3:
            op = OP_KB
        else:
            n = max(1, int(mpmath.floor(lam ** min(z, zeta) / 2)))
            op = op_a(n)
    else:
        n = max(1, int(mpmath.floor(lam ** min(z, zeta) / mpmath.sqrt(2))))
        op = op_b(n)
    return (pre @ op).shifted(k)


def _fallback_ops(st) -> list[GridOp]:
    _, _, z = _params(st[0])
    _, _, zeta = _params(st[1])
    k0 = int(mpmath.nint((z - zeta) / 2))
    base = [OP_R, OP_K, OP_KB, OP_X, OP_Z]
    for n in (1, 2, 3, 5, 8):
        base += [op_a(n), op_a(-n), op_b(n), op_b(-n)]
    ops = []
    for k in (k0 - 1, k0, k0 + 1):
        ops += [g.shifted(k) for g in base]
    return ops


def reduce_skew(e_a: Ellipse, e_b: Ellipse, max_steps: int = 20000) -> GridOp:
    """Grid operator G with skew(G^T D_A G, G^bT D_B G^b) <= 15."""
    st = (_normalize((e_a.d11, e_a.d12, e_a.d22)), _normalize((e_b.d11, e_b.d12, e_b.d22)))
    g = OP_I
    for _ in range(max_steps):
        sk = _skew(st)
        if sk <= 15:
            return g
        op = _step_op(st)
        nst = _act(st, op)
        if _skew(nst) > sk * mpmath.mpf("0.9"):
            best = min(((_skew(s2), o, s2) for o in _fallback_ops(st) for s2 in [_act(st, o)]), key=lambda t: t[0])
            if best[0] >= sk:
                return g
            op, nst = best[1], best[2]
        g = g @ op
        st = nst
    return g


# -- 2-D grid problem ------------------------------------------------------

def _inv2(g):
    a, b, c, d = g
    det = a * d - b * c
    return (d / det, -b / det, -c / det, a / det)


def _bbox(e: Ellipse, g: tuple, scale):
    """Bounding box of G^{-1}(scale * E) as (x0, x1, y0, y1)."""
    m = _congruence((e.d11, e.d12, e.d22), g)
    det = m[0] * m[2] - m[1] * m[1]
    hx = scale * mpmath.sqrt(m[2] / det)
    hy = scale * mpmath.sqrt(m[0] / det)
    gi = _inv2(g)
    cx = gi[0] * e.cx * scale + gi[1] * e.cy * scale
    cy = gi[2] * e.cx * scale + gi[3] * e.cy * scale
    return cx - hx, cx + hx, cy - hy, cy + hy


def _zroot2_pair_to_zomega(x: ZRoot2, y: ZRoot2) -> ZOmega:
    # x + i y with sqrt2 = w - w^3 and i = w^2
    return ZOmega(y.b - x.b, y.a, x.b + y.b, x.a)


def _cond_digits(e: Ellipse) -> int:
    tr = e.d11 + e.d22
    det = e.d11 * e.d22 - e.d12 * e.d12
    return max(0, int(mpmath.ceil(mpmath.log10(tr * tr / det))))


@dataclass
class GridCandidate:
    u: DOmega
    k: int


class TwoDimGridSolver:
    """Lazy enumeration of u in D[omega] with u in A and u^bullet in B, by k.

    Regions provide ``ellipse()`` (an enclosing ellipse) and ``margin(x, y)``
    (non-negative inside). Margins within 10 guard digits of zero are
    re-evaluated at doubled precision instead of being trusted.
    """

    def __init__(self, a_region, b_region):
        self.a_region = a_region
        self.b_region = b_region
        # congruence by the reducing operator cancels about log10(cond D) digits
        self.dps = mpmath.mp.dps + max(_cond_digits(a_region.ellipse()), _cond_digits(b_region.ellipse())) + 10
        with mpmath.workdps(self.dps):
            self.e_a = a_region.ellipse()
            self.e_b = b_region.ellipse()
            self.g = reduce_skew(self.e_a, self.e_b)
            self.gn = self.g.numeric()
            self.gbn = self.g.bullet().numeric()
        self.rechecks = 0

    def candidates_at(self, k: int) -> list[DOmega]:
        with mpmath.workdps(self.dps):
            return self._candidates_at(k)

    def _candidates_at(self, k: int) -> list[DOmega]:
        s = mpmath.sqrt(2) ** k
        ax0, ax1, ay0, ay1 = _bbox(self.e_a, self.gn, s)
        bx0, bx1, by0, by1 = _bbox(self.e_b, self.gbn, s)
        r = 1 / mpmath.sqrt(2)
        out = []
        for off in (0, 1):
            o, ob = (r, -r) if off else (0, 0)
            xs = solve_odgp((ax0 - o, ax1 - o), (bx0 - ob, bx1 - ob))
            if not xs:
                continue
            ys = solve_odgp((ay0 - o, ay1 - o), (by0 - ob, by1 - ob))
            for x in xs:
                for y in ys:
                    w = _zroot2_pair_to_zomega(x, y)
                    if off:
                        w = w + ZOmega(0, 0, 1, 0)
                    z = self.g.apply(DOmega(w))
                    if z.k:
                        raise AssertionError("grid operator left Z[omega]")
                    zz = z.z
                    if k > 0 and zz.divisible_by_sqrt2():
                        continue
                    u = DOmega(zz, k, reduce=False)
                    if self._accept(u):
                        out.append(u)
        out.sort(key=lambda u: u.z.coeffs())
        return out

    def _accept(self, u: DOmega) -> bool:
        # the disk conditions are exact in Z[sqrt2]
        two_k = ZRoot2(1 << u.k)
        n = u.z.norm_sqrt2()
        if n > two_k or n.conj2() > two_k:
            return False
        return self._check(self.a_region, u) and self._check(self.b_region, u.conj2())

    def _check(self, region, v: DOmega) -> bool:
        c = v.to_mpc()
        m = region.margin(c.real, c.imag)
        if abs(m) > mpmath.mpf(10) ** (10 - mpmath.mp.dps):
            return m >= 0
        self.rechecks += 1
        with mpmath.workdps(2 * mpmath.mp.dps):
            c = v.to_mpc()
            return region.margin(c.real, c.imag) >= 0

    def stream(self, k_start: int = 0, k_max: int | None = None) -> Iterator[GridCandidate]:
        k = k_start
        while k_max is None or k <= k_max:
            for u in self.candidates_at(k):
                yield GridCandidate(u, k)
            k += 1


def solve_tdgp(region: EpsilonRegion, disk: DiskRegion | None = None, k_max: int | None = None) -> Iterator[GridCandidate]:
    return TwoDimGridSolver(region, disk or DiskRegion()).stream(0, k_max)
