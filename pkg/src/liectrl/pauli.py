"""Exact algebra of n-qubit Pauli strings.

Letters are encoded as I=0, X=1, Y=2, Z=3 and a string is the base-4 integer
with the leftmost qubit most significant.  In this encoding the letterwise
product of two strings is the bitwise XOR of their codes, so only the phase
needs real work.

A :class:`PauliExpr` with coefficients ``c_k`` stands for the skew-Hermitian
matrix ``sum_k c_k * (-i/2) * P_k``.  With that normalisation the bracket of
two basis elements is again a rational combination of basis elements, so all
qubit Lie algebra computations stay in exact rational arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

LETTERS = "IXYZ"
_LETTER_CODE = {ch: i for i, ch in enumerate(LETTERS)}

DENSE_QUBIT_CAP = 12

Rational = Union[int, Fraction, str]


@lru_cache(maxsize=None)
def _low_mask(n: int) -> int:
    return int("01" * n, 2) if n else 0


def _xz(code: int, n: int) -> tuple[int, int]:
    """Split a code into interleaved x and z bit masks (bits at even positions)."""
    low = _low_mask(n)
    return (code ^ (code >> 1)) & low, (code >> 1) & low


def product_phase(a: int, b: int, n: int) -> int:
    """Exponent k (mod 4) such that P_a P_b = i^k P_{a^b}."""
    xa, za = _xz(a, n)
    xb, zb = _xz(b, n)
    xc, zc = xa ^ xb, za ^ zb
    k = (xa & za).bit_count() + (xb & zb).bit_count() + 2 * (za & xb).bit_count()
    return (k - (xc & zc).bit_count()) % 4


def commutes(a: int, b: int, n: int) -> bool:
    xa, za = _xz(a, n)
    xb, zb = _xz(b, n)
    return ((xa & zb).bit_count() + (za & xb).bit_count()) % 2 == 0


@dataclass(frozen=True, order=True)
class Phase:
    """A power of i, stored as the exponent modulo 4."""

    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    @property
    def value(self) -> complex:
        return (1, 1j, -1, -1j)[self.exponent]

    def __repr__(self) -> str:
        return ("+1", "+i", "-1", "-i")[self.exponent]


@dataclass(frozen=True, order=True)
class PauliTerm:
    """A Pauli string on ``n`` qubits identified by its base-4 code."""

    n: int
    code: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli term needs at least one qubit")
        if not 0 <= self.code < 4**self.n:
            raise ValueError(f"code {self.code} out of range for n={self.n}")

    @classmethod
    def from_label(cls, label: str) -> "PauliTerm":
        label = label.strip().upper()
        if not label:
            raise ValueError("empty Pauli label")
        code = 0
        for ch in label:
            if ch not in _LETTER_CODE:
                raise ValueError(f"unknown Pauli letter {ch!r} in {label!r}")
            code = 4 * code + _LETTER_CODE[ch]
        return cls(len(label), code)

    @property
    def letters(self) -> str:
        return encode_letters(self.code, self.n)

    @property
    def weight(self) -> int:
        return sum(ch != "I" for ch in self.letters)

    def support(self) -> frozenset[int]:
        """Qubit indices (0-based) carrying a non-identity letter."""
        return support_of(self.code, self.n)

    def __str__(self) -> str:
        return self.letters


def encode_letters(code: int, n: int) -> str:
    out = []
    for _ in range(n):
        out.append(LETTERS[code & 3])
        code >>= 2
    return "".join(reversed(out))


def support_of(code: int, n: int) -> frozenset[int]:
    return frozenset(q for q in range(n) if (code >> (2 * (n - 1 - q))) & 3)


def multiply_terms(a: PauliTerm, b: PauliTerm) -> tuple[Phase, PauliTerm]:
    """Return ``(phase, c)`` with ``a @ b == phase * c`` as matrices."""
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} vs {b.n}")
    return Phase(product_phase(a.code, b.code, a.n)), PauliTerm(a.n, a.code ^ b.code)


def _to_fraction(value: Rational) -> Fraction:
    try:
        return Fraction(value)
    except ZeroDivisionError as exc:
        raise ValueError(f"invalid coefficient {value!r}: zero denominator") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid coefficient {value!r}") from exc


class PauliExpr:
    """Real-rational combination of Pauli strings in the ``-i/2`` convention.

    Instances are immutable.  ``terms`` maps codes to nonzero Fractions and is
    kept sorted by code so that iteration order is canonical.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, Rational] | None = None):
        if n < 1:
            raise ValueError("a Pauli expression needs at least one qubit")
        clean: dict[int, Fraction] = {}
        for code, c in (terms or {}).items():
            if not 0 <= code < 4**n:
                raise ValueError(f"code {code} out of range for n={n}")
            c = _to_fraction(c)
            if c:
                clean[code] = c
        self.n = n
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Fraction]) -> "PauliExpr":
        # trusted constructor: terms already nonzero Fractions
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Rational, str]]) -> "PauliExpr":
        items = list(items)
        if not items:
            raise ValueError("cannot infer n from an empty term list")
        n = None
        acc: dict[int, Fraction] = {}
        for coeff, label in items:
            t = PauliTerm.from_label(label)
            if n is None:
                n = t.n
            elif t.n != n:
                raise ValueError(f"term {label!r} has length {t.n}, expected {n}")
            acc[t.code] = acc.get(t.code, Fraction(0)) + _to_fraction(coeff)
        return cls(n, acc)

    @classmethod
    def term(cls, label: str, coeff: Rational = 1) -> "PauliExpr":
        t = PauliTerm.from_label(label)
        return cls(t.n, {t.code: coeff})

    @classmethod
    def zero(cls, n: int) -> "PauliExpr":
        return cls(n)

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[PauliTerm, Fraction]]:
        for code, c in self._terms.items():
            yield PauliTerm(self.n, code), c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "PauliExpr"):
        if not isinstance(other, PauliExpr):
            raise TypeError(f"expected PauliExpr, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"qubit count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PauliExpr") -> "PauliExpr":
        self._check(other)
        acc = dict(self._terms)
        for code, c in other._terms.items():
            v = acc.get(code, 0) + c
            if v:
                acc[code] = v
            else:
                acc.pop(code, None)
        return PauliExpr._raw(self.n, acc)

    def __neg__(self) -> "PauliExpr":
        return PauliExpr._raw(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "PauliExpr") -> "PauliExpr":
        return self + (-other)

    def scale(self, factor: Rational) -> "PauliExpr":
        f = _to_fraction(factor)
        if not f:
            return PauliExpr(self.n)
        return PauliExpr._raw(self.n, {k: v * f for k, v in self._terms.items()})

    def __mul__(self, factor: Rational) -> "PauliExpr":
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliExpr):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"PauliExpr({self.to_text()!r})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for code, c in self._terms.items():
            label = encode_letters(code, self.n)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = label if mag == 1 else f"{mag} {label}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[dict]:
        return [
            {"coeff": f"{c.numerator}/{c.denominator}", "pauli": encode_letters(code, self.n)}
            for code, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data: list, n: int | None = None) -> "PauliExpr":
        if not isinstance(data, list):
            raise ValueError("expression must be a JSON array of terms")
        if not data:
            if n is None:
                raise ValueError("cannot infer n from an empty expression")
            return cls(n)
        items = []
        for i, t in enumerate(data):
            if not isinstance(t, dict) or set(t) != {"coeff", "pauli"}:
                raise ValueError(f"term {i}: expected keys 'coeff' and 'pauli'")
            items.append((str(t["coeff"]), str(t["pauli"])))
        e = cls.from_terms(items)
        if n is not None and e.n != n:
            raise ValueError(f"term length {e.n} does not match n={n}")
        return e

    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for code in self._terms:
            out |= support_of(code, self.n)
        return frozenset(out)


_TOKEN = re.compile(r"\s*([+-])?\s*((?:\d+(?:/\d+)?)\s*\*?\s*)?([IXYZ]+)\s*")


def parse_expr(text: str) -> PauliExpr:
    """Parse text such as ``"XXI + YYI - 1/2 ZZZ"`` into an expression."""
    pos, items = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Pauli expression at {text[pos:]!r}")
        sign, coeff, label = m.groups()
        if items and sign is None:
            raise ValueError(f"missing operator before {label!r}")
        c = _to_fraction(coeff.replace("*", "").strip()) if coeff else Fraction(1)
        items.append((-c if sign == "-" else c, label))
        pos = m.end()
    return PauliExpr.from_terms(items)


def bracket(a: PauliExpr, b: PauliExpr) -> PauliExpr:
    """Exact commutator in the ``-i/2`` convention.

    For anticommuting strings ``PQ = i^k R`` with k odd, and
    ``[(-i/2)P, (-i/2)Q] = (-i)(i^k) * (-i/2)R``, i.e. coefficient +1 for k=1
    and -1 for k=3.
    """
    a._check(b)
    n = a.n
    low = _low_mask(n)
    bx = [((q ^ (q >> 1)) & low, (q >> 1) & low, q, cq) for q, cq in b._terms.items()]
    acc: dict[int, Fraction] = {}
    for p, cp in a._terms.items():
        xp, zp = (p ^ (p >> 1)) & low, (p >> 1) & low
        wp = (xp & zp).bit_count()
        for xq, zq, q, cq in bx:
            if ((xp & zq).bit_count() + (zp & xq).bit_count()) & 1 == 0:
                continue
            xr, zr = xp ^ xq, zp ^ zq
            k = (wp + (xq & zq).bit_count() + 2 * (zp & xq).bit_count() - (xr & zr).bit_count()) % 4
            r = p ^ q
            v = cp * cq if k == 1 else -(cp * cq)
            s = acc.get(r)
            if s is None:
                acc[r] = v
            else:
                s += v
                if s:
                    acc[r] = s
                else:
                    del acc[r]
    return PauliExpr._raw(n, acc)


def order(e: PauliExpr) -> int:
    """Largest number of non-identity letters over the terms of ``e``."""
    if e.is_zero():
        raise ValueError("order of the zero expression is undefined")
    return max(len(support_of(code, e.n)) for code in e.terms)


@lru_cache(maxsize=4096)
def _pauli_columns(code: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row index and value for each column of the Pauli matrix."""
    xs = zs = 0
    for q in range(n):
        d = (code >> (2 * (n - 1 - q))) & 3
        bit = 1 << (n - 1 - q)
        if d in (1, 2):
            xs |= bit
        if d in (2, 3):
            zs |= bit
    j = np.arange(2**n)
    parity = np.zeros(2**n, dtype=np.int64)
    z = j & zs
    while np.any(z):
        parity ^= z & 1
        z = z >> 1
    ny = (xs & zs).bit_count()
    vals = (1j**ny) * (1 - 2 * parity)
    rows = j ^ xs
    rows.setflags(write=False)
    vals.setflags(write=False)
    return rows, vals


def pauli_matrix(term: PauliTerm | str) -> np.ndarray:
    """Dense Hermitian matrix of a single Pauli string (no -i/2 factor)."""
    if isinstance(term, str):
        term = PauliTerm.from_label(term)
    if term.n > DENSE_QUBIT_CAP:
        raise ValueError(f"dense cap of {DENSE_QUBIT_CAP} qubits exceeded")
    rows, vals = _pauli_columns(term.code, term.n)
    m = np.zeros((2**term.n, 2**term.n), dtype=complex)
    m[rows, np.arange(2**term.n)] = vals
    return m


def to_matrix(e: PauliExpr, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense matrix of ``sum_k c_k (-i/2) P_k``."""
    if e.n > cap:
        raise ValueError(f"dense cap of {cap} qubits exceeded (n={e.n})")
    dim = 2**e.n
    m = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for code, c in e.terms.items():
        rows, vals = _pauli_columns(code, e.n)
        m[rows, cols] += (-0.5j * float(c)) * vals
    return m


def hermitian_matrix(e: PauliExpr, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense Hermitian ``sum_k c_k P_k``, so that ``to_matrix(e) == -(i/2) H``."""
    return 2j * to_matrix(e, cap)


def local_term(n: int, qubit: int, letter: str) -> PauliExpr:
    """Single-letter string on 0-based ``qubit`` of an ``n``-qubit register."""
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for n={n}")
    label = "I" * qubit + letter + "I" * (n - qubit - 1)
    return PauliExpr.term(label)


def place(n: int, letters: Mapping[int, str], coeff: Rational = 1) -> PauliExpr:
    """String with the given letters at 0-based positions, identity elsewhere."""
    chars = ["I"] * n
    for q, ch in letters.items():
        chars[q] = ch
    return PauliExpr.term("".join(chars), coeff)
