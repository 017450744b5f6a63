import json

import mpmath
from hypothesis import given, strategies as st

from tcompile.circuit import Circuit, Gate, cx_matrix
from tcompile.mpnum import kron, max_abs
from tcompile.ringmat import GATES, word_matrix

words = st.text(alphabet="HSTXZW", max_size=40)


@given(words)
def test_one_wire_matches_ring(w):
    c = Circuit(1)
    c.add_word(w, 0)
    assert c.exact_unitary() == word_matrix(w)
    assert max_abs(c.unitary() - word_matrix(w).to_mpmath()) < mpmath.mpf(10) ** -50
    assert c.word().replace("W", "") == w.replace("W", "")


def test_wire_order_and_cx():
    h = GATES["H"].to_mpmath()
    c = Circuit(2)
    c.append("H", 0)
    assert max_abs(c.unitary() - kron(h, mpmath.eye(2))) < mpmath.mpf(10) ** -50
    c = Circuit(2)
    c.append("CX", 0, 1)
    assert max_abs(c.unitary() - cx_matrix()) == 0


def test_application_order():
    c = Circuit(1)
    c.append("H", 0)
    c.append("T", 0)
    expected = GATES["T"].to_mpmath() * GATES["H"].to_mpmath()
    assert max_abs(c.unitary() - expected) < mpmath.mpf(10) ** -50


def test_json_roundtrip():
    c = Circuit(3)
    c.append("H", 1)
    c.append("CX", 2, 0)
    c.append("RZ", 0, param=mpmath.mpf("0.25"))
    c.phase_w = 3
    d = Circuit.from_json(json.loads(c.dumps()))
    assert d.to_json() == c.to_json()
    assert max_abs(d.unitary() - c.unitary()) < mpmath.mpf(10) ** -50
    assert c.counts() == {"H": 1, "CX": 1, "RZ": 1}
    assert not c.is_clifford_t()
    assert Gate.from_json({"g": "T", "w": [0]}) == Gate("T", (0,))
