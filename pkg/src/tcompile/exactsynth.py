"""Exact synthesis of D[omega] unitaries into Clifford+T words.

Words are written in application order: the word ``w`` denotes the matrix
M(w[-1]) ... M(w[0]). Output is in the normal form (T|e)(HT|SHT)* C where C
is a canonical Clifford word over {H, S, X, W} free of ``SS`` and ``HH``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .ringmat import GATES, DOmegaUnitary, word_matrix

_T = GATES["T"]
_T_INV = _T.dagger()
_H = GATES["H"]
_HS = GATES["H"] @ GATES["S"]
_I = DOmegaUnitary.identity()
_INV_SQRT2 = GATES["H"].e[0]

# syllable matrices R with word forms; T R is "HT" or "SHT"
_COSET_REPS = (("", _I), ("H", _H), ("SH", _HS))


def _is_monomial(m: DOmegaUnitary) -> bool:
    a, b, c, d = m.e
    return (not b and not c) or (not a and not d)


@lru_cache(maxsize=None)
def clifford_table() -> dict[tuple, str]:
    """Shortest, then lexicographically least, word for each of the 192 Cliffords."""
    letters = "HSXW"
    start = _I
    table: dict[tuple, str] = {start.key(): ""}
    seen = {(start.key(), "")}
    frontier = deque([("", start)])
    while frontier:
        word, m = frontier.popleft()
        for g in letters:
            if word and word[-1] == g and g in "SH":
                continue
            nm = GATES[g] @ m
            state = (nm.key(), g)
            if state in seen:
                continue
            seen.add(state)
            nw = word + g
            table.setdefault(nm.key(), nw)
            frontier.append((nw, nm))
    return table


def clifford_word(c: DOmegaUnitary, up_to_phase: bool = False) -> str:
    try:
        w = clifford_table()[c.key()]
    except KeyError:
        raise ValueError(f"not a Clifford: {c}") from None
    return w.replace("W", "") if up_to_phase else w


@lru_cache(maxsize=None)
def _clifford_group() -> tuple:
    """Index tables for the 192 Cliffords so the normal form never multiplies ring matrices.

    Returns (keys, index, left, t_step, words) where ``left[g][i]`` is the index of
    G * C_i, and ``t_step[i]`` describes T C_i as below.
    """
    table = clifford_table()
    keys = list(table)
    index = {k: i for i, k in enumerate(keys)}
    mats = [word_matrix(table[k]) for k in keys]
    left = {g: [index[(GATES[g] @ m).key()] for m in mats] for g in "HSXW"}
    t_step = []
    for m in mats:
        # T C = T n R = (T n T^-1) T R with n monomial
        for rword, r in _COSET_REPS:
            n = m @ r.dagger()
            if _is_monomial(n):
                break
        else:
            raise AssertionError("Clifford outside the three cosets")
        n2 = _T @ n @ _T_INV
        # the merged forms used when the new T meets a previous one
        merge = {w: index[(n2 @ GATES["S"] @ rm).key()] for w, rm in (("", _I), ("H", _H), ("SH", _HS))}
        t_step.append((rword, index[n2.key()], merge))
    words = [table[k] for k in keys]
    return keys, index, left, t_step, words


class _NormalForm:
    """Incremental normal form: U = C * (T R_m) ... (T R_1) * [T]."""

    def __init__(self) -> None:
        keys, index, self._left, self._t_step, self._words = _clifford_group()
        self.lead_t = False
        self.syllables: list[str] = []  # word of R: "H" or "SH"
        self.c = index[_I.key()]

    def push(self, g: str) -> None:
        if g != "T":
            self.c = self._left[g][self.c]
            return
        rword, n2, merge = self._t_step[self.c]
        if rword:
            self.syllables.append(rword)
            self.c = n2
        elif self.syllables:
            # T T R_m = S R_m
            self.c = merge[self.syllables.pop()]
        elif self.lead_t:
            self.lead_t = False
            self.c = merge[""]
        else:
            self.lead_t = True
            self.c = n2

    def tcount(self) -> int:
        return len(self.syllables) + int(self.lead_t)

    def word(self, up_to_phase: bool) -> str:
        parts = ["T"] if self.lead_t else []
        parts += [r + "T" for r in self.syllables]
        w = self._words[self.c]
        parts.append(w.replace("W", "") if up_to_phase else w)
        return "".join(parts)


def normalize(word: str, up_to_phase: bool = False) -> str:
    nf = _NormalForm()
    for g in word:
        if g == "Z":
            nf.push("S")
            nf.push("S")
        else:
            nf.push(g)
    return nf.word(up_to_phase)


@lru_cache(maxsize=None)
def _tail_table(max_t: int = 4) -> dict[tuple, str]:
    """All normal forms with T-count <= max_t keyed by exact matrix."""
    table: dict[tuple, str] = {}
    cliffords = [(w, word_matrix(w)) for w in clifford_table().values()]
    bodies = [""]
    layer = [""]
    for _ in range(max_t):
        layer = [b + syl for b in layer for syl in ("HT", "SHT")]
        bodies += layer
    prefixes = [lead + b for lead in ("", "T") for b in bodies if (lead + b).count("T") <= max_t]
    for p in prefixes:
        pm = word_matrix(p)
        for cw, cm in cliffords:
            table.setdefault((cm @ pm).key(), p + cw)
    return table


def _reduce(u: DOmegaUnitary) -> tuple[list[str], DOmegaUnitary]:
    """Peel H T^m factors until sde(|u|^2) < 4. Returns (word pieces, residual)."""
    pieces: list[str] = []
    s = u.sde_u2()
    powers = [_I]
    for _ in range(3):
        powers.append(_T @ powers[-1])
    while s >= 4:
        a, _, c, _ = u.e
        for m in range(4):
            # top-left entry of H T^m u, checked before forming the full product
            top = (a + c.mul_omega(m)) * _INV_SQRT2
            if top.norm_sqrt2().k == s - 1:
                cand = _H @ powers[m] @ u
                break
        else:
            raise AssertionError(f"no reducing prefix at sde {s}")
        # u = T^-m H cand, so cand is applied first
        pieces.append("H" + "T" * ((8 - m) % 8))
        u = cand
        s -= 1
    return pieces, u


def decompose_domega_unitary(u: DOmegaUnitary, fix_phase: bool = True) -> str:
    """Clifford+T word for an exact unitary; W gates carry the global phase when fix_phase."""
    u.check_unitary()
    pieces, rest = _reduce(u)
    tail = _tail_table().get(rest.key())
    if tail is None:
        raise AssertionError("residual unitary missing from the tail table")
    raw = tail + "".join(reversed(pieces))
    return normalize(raw, up_to_phase=not fix_phase)


def tcount_word(word: str) -> int:
    return word.count("T")


def predicted_tcount(u: DOmegaUnitary) -> int:
    """T-count read off the ring: max sde(|.00|^2) over {I, H} u {I, H}, minus 2.

    The normal form is T-optimal, so this is also its T-count.
    """
    cands = (u, u @ _H, _H @ u, _H @ u @ _H)
    return max(c.sde_u2() for c in cands) - 2
