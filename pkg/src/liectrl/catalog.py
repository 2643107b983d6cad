"""Irreducible representations of the compact simple Lie algebras.

Highest weights use the Bourbaki node ordering.  Each algebra appears once:
A_l (l >= 1), B_l (l >= 2), C_l (l >= 3), D_l (l >= 4) and the exceptional
E6, E7, E8, F4, G2.  So sp(1) = su(2), sp(2) = so(5) and so(6) = su(4) are
not repeated; :func:`conventional_name` prints them the customary way.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterable, Sequence

from .matrep import ResourceCapError

LATTICE_CAP = 256
FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class AlgebraId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise ValueError(f"{self.family}{self.rank} is below the minimal rank {_MIN_RANK[self.family]}")
        elif self.rank not in _EXCEPTIONAL_RANKS[self.family]:
            raise ValueError(f"no exceptional algebra {self.family}{self.rank}")

    @property
    def name(self) -> str:
        f, l = self.family, self.rank
        if f == "A":
            return f"su({l + 1})"
        if f == "B":
            return f"so({2 * l + 1})"
        if f == "C":
            return f"sp({l})"
        if f == "D":
            return f"so({2 * l})"
        return f"{f.lower()}{l}"

    @property
    def dimension(self) -> int:
        """Dimension of the algebra itself."""
        return len(positive_roots(self)) * 2 + self.rank

    def __str__(self) -> str:
        return self.name


def su(n: int) -> AlgebraId:
    return AlgebraId("A", n - 1)


def so(n: int) -> AlgebraId:
    return AlgebraId("B", (n - 1) // 2) if n % 2 else AlgebraId("D", n // 2)


def sp(n: int) -> AlgebraId:
    return AlgebraId("C", n)


def parse_algebra(text: str) -> AlgebraId:
    """Accept ``su(5)``, ``so(7)``, ``sp(3)``, ``g2``, ``E6`` or ``A4``."""
    t = text.strip().lower().replace(" ", "")
    for prefix, ctor in (("su(", su), ("so(", so), ("sp(", sp)):
        if t.startswith(prefix) and t.endswith(")"):
            return ctor(int(t[len(prefix):-1]))
    if len(t) >= 2 and t[0].upper() in FAMILIES and t[1:].isdigit():
        return AlgebraId(t[0].upper(), int(t[1:]))
    raise ValueError(f"cannot parse algebra {text!r}")


# ---------------------------------------------------------------- root data


def _gram(alg: AlgebraId) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots, Bourbaki order."""
    f, l = alg.family, alg.rank
    g = [[0] * l for _ in range(l)]

    def link(i, j, v):
        g[i][j] = g[j][i] = v

    if f == "A":
        for i in range(l):
            g[i][i] = 2
        for i in range(l - 1):
            link(i, i + 1, -1)
    elif f == "B":
        for i in range(l):
            g[i][i] = 2
        g[l - 1][l - 1] = 1
        for i in range(l - 1):
            link(i, i + 1, -1)
    elif f == "C":
        for i in range(l):
            g[i][i] = 2
        g[l - 1][l - 1] = 4
        for i in range(l - 2):
            link(i, i + 1, -1)
        link(l - 2, l - 1, -2)
    elif f == "D":
        for i in range(l):
            g[i][i] = 2
        for i in range(l - 2):
            link(i, i + 1, -1)
        link(l - 3, l - 1, -1)
    elif f == "E":
        for i in range(l):
            g[i][i] = 2
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, l - 1):
            link(i, i + 1, -1)
    elif f == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif f == "G":
        g[0][0], g[1][1] = 2, 6
        link(0, 1, -3)
    return g


@lru_cache(maxsize=None)
def positive_roots(alg: AlgebraId) -> tuple[tuple[int, ...], ...]:
    """Positive roots as coefficient vectors in the simple roots (string construction)."""
    g = _gram(alg)
    l = alg.rank
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(simple)
    level = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(l):
                # <beta, alpha_i^vee>
                pair = 2 * sum(beta[j] * g[j][i] for j in range(l)) // g[i][i]
                q, down = 0, list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                if q - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        level = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def weyl_dimension(alg: AlgebraId, weight: Sequence[int]) -> int:
    """Weyl's formula prod_{alpha>0} (lambda+rho, alpha^vee) / (rho, alpha^vee), exactly."""
    x = _check_weight(alg, weight)
    g = _gram(alg)
    l = alg.rank
    num = den = 1
    for r in positive_roots(alg):
        # (lambda+rho, alpha^vee) = sum_j c_j (x_j+1) |alpha_j|^2 / |alpha|^2; |alpha|^2 cancels
        num *= sum(r[j] * (x[j] + 1) * g[j][j] for j in range(l))
        den *= sum(r[j] * g[j][j] for j in range(l))
    q = Fraction(num, den)
    if q.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension for {alg} {tuple(x)}")
    return int(q)


def _check_weight(alg: AlgebraId, weight: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(v) for v in weight)
    if len(x) != alg.rank:
        raise ValueError(f"{alg} needs a weight of length {alg.rank}, got {len(x)}")
    if any(v < 0 for v in x):
        raise ValueError("highest weights are nonnegative")
    return x


# ------------------------------------------------------ explicit formulas


class _Product:
    """Accumulates factors ``1 + a/b`` as an integer numerator and denominator."""

    def __init__(self, x: Sequence[int]):
        self.pre = list(itertools.accumulate(x, initial=0))
        self.num = self.den = 1

    def s(self, i: int, j: int) -> int:
        """x_i + ... + x_j with 1-based inclusive bounds (zero if j < i)."""
        return self.pre[j] - self.pre[i - 1] if j >= i else 0

    def mul(self, a: int, b: int):
        if not a:
            return
        self.num *= a + b
        self.den *= b

    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


def _dim_a(x):
    l, p = len(x), _Product(x)
    for i in range(1, l + 2):
        for j in range(i + 1, l + 2):
            p.mul(p.s(i, j - 1), j - i)
    return p.value()


def _dim_b(x):
    l, p = len(x), _Product(x)
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            p.mul(p.s(i, j - 1) + 2 * p.s(j, l - 1) + x[l - 1], 2 * l + 1 - i - j)
            p.mul(p.s(i, j - 1), j - i)
        p.mul(2 * p.s(i, l - 1) + x[l - 1], 2 * l + 1 - 2 * i)
    return p.value()


def _dim_c(x):
    l, p = len(x), _Product(x)
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            p.mul(p.s(i, j - 1), j - i)
            p.mul(p.s(i, j - 1) + 2 * p.s(j, l), 2 * l + 2 - i - j)
        p.mul(p.s(i, l), l + 1 - i)
    return p.value()


def _dim_d(x):
    l, p = len(x), _Product(x)
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            p.mul(p.s(i, j - 1), j - i)
    for i in range(1, l):
        p.mul(p.s(i, l - 2) + x[l - 1], l - i)
        for j in range(i + 1, l):
            p.mul(p.s(i, j - 1) + 2 * p.s(j, l - 2) + x[l - 2] + x[l - 1], 2 * l - i - j)
    return p.value()


def _dim_g2(x):
    x1, x2 = x
    return (
        (1 + x2) * (1 + x1) * (1 + Fraction(x1 + x2, 2)) * (1 + Fraction(x1 + 2 * x2, 3))
        * (1 + Fraction(x1 + 3 * x2, 4)) * (1 + Fraction(2 * x1 + 3 * x2, 5))
    )


# (coefficients of x1..x4, denominator) for the 24 positive-root factors of f4
_F4_FACTORS = (
    ((0, 0, 0, 1), 1), ((0, 0, 1, 0), 1), ((0, 1, 0, 0), 1), ((1, 0, 0, 0), 1),
    ((0, 0, 1, 1), 2), ((0, 1, 1, 0), 2), ((1, 1, 0, 0), 2),
    ((0, 1, 1, 1), 3), ((0, 2, 1, 0), 3), ((1, 1, 1, 0), 3),
    ((0, 2, 1, 1), 4), ((1, 1, 1, 1), 4), ((1, 2, 1, 0), 4),
    ((0, 2, 2, 1), 5), ((1, 2, 1, 1), 5), ((2, 2, 1, 0), 5),
    ((1, 2, 2, 1), 6), ((2, 2, 1, 1), 6),
    ((1, 3, 2, 1), 7), ((2, 2, 2, 1), 7),
    ((2, 3, 2, 1), 8), ((2, 4, 2, 1), 9),
    ((2, 4, 3, 1), 10), ((2, 4, 3, 2), 11),
)


def _dim_f4(x):
    return prod((1 + Fraction(sum(c * v for c, v in zip(cs, x)), d) for cs, d in _F4_FACTORS), start=Fraction(1))


_EXPLICIT = {"A": _dim_a, "B": _dim_b, "C": _dim_c, "D": _dim_d, "G": _dim_g2, "F": _dim_f4}


def explicit_dimension(alg: AlgebraId, weight: Sequence[int]) -> int:
    """Closed product formula, evaluated factor by factor."""
    x = _check_weight(alg, weight)
    if alg.family not in _EXPLICIT:
        raise ValueError(f"no explicit formula for {alg}")
    q = _EXPLICIT[alg.family](x)
    if q.denominator != 1:
        raise ArithmeticError(f"non-integral dimension for {alg} {x}")
    return int(q)


def irrep_dimension(alg: AlgebraId, weight: Sequence[int]) -> int:
    if alg.family == "E":
        return weyl_dimension(alg, weight)
    return explicit_dimension(alg, weight)


# ------------------------------------------------------- Malcev, orbits


def malcev_type(alg: AlgebraId, weight: Sequence[int]) -> str:
    """'s' (symplectic), 'o' (orthogonal) or 'u' (unitary)."""
    x = _check_weight(alg, weight)
    f, l = alg.family, alg.rank
    if f == "A":
        if x != x[::-1]:
            return "u"
        if l % 4 == 1 and x[(l - 1) // 2] % 2 == 1:
            return "s"
        return "o"
    if f == "B":
        return "s" if l % 4 in (1, 2) and x[l - 1] % 2 == 1 else "o"
    if f == "C":
        return "s" if sum(x[0::2]) % 2 == 1 else "o"
    if f == "D":
        if l % 2 == 1:
            return "o" if x[l - 2] == x[l - 1] else "u"
        if l % 4 == 2 and (x[l - 2] + x[l - 1]) % 2 == 1:
            return "s"
        return "o"
    if f == "E" and l == 6:
        return "o" if x[0] == x[5] and x[2] == x[4] else "u"
    if f == "E" and l == 7:
        return "s" if (x[1] + x[4] + x[6]) % 2 == 1 else "o"
    return "o"


def _diagram_automorphisms(alg: AlgebraId) -> list[tuple[int, ...]]:
    """Node permutations preserving the Dynkin diagram (including the identity)."""
    f, l = alg.family, alg.rank
    ident = tuple(range(l))
    if f == "A" and l >= 2:
        return [ident, tuple(reversed(ident))]
    if f == "D" and l == 4:
        out = []
        for perm in itertools.permutations((0, 2, 3)):
            p = [0, 1, 2, 3]
            for src, dst in zip((0, 2, 3), perm):
                p[src] = dst
            out.append(tuple(p))
        return out
    if f == "D":
        return [ident, ident[:-2] + (l - 1, l - 2)]
    if f == "E" and l == 6:
        return [ident, (5, 1, 4, 3, 2, 0)]
    return [ident]


def outer_orbit(alg: AlgebraId, weight: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Distinct weights equivalent under diagram automorphisms, lexicographically descending."""
    x = _check_weight(alg, weight)
    orbit = {tuple(x[p[i]] for i in range(len(x))) for p in _diagram_automorphisms(alg)}
    return tuple(sorted(orbit, reverse=True))


@dataclass(frozen=True, order=True)
class HighestWeight:
    coefficients: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coefficients)) + ")"


@dataclass(frozen=True, order=True)
class IrrepRecord:
    dim: int
    algebra: AlgebraId
    weight: HighestWeight
    malcev: str = field(compare=False)
    outer_orbit: tuple = field(compare=False)

    @classmethod
    def make(cls, alg: AlgebraId, weight: Sequence[int]) -> "IrrepRecord":
        orbit = outer_orbit(alg, weight)
        return cls(irrep_dimension(alg, orbit[0]), alg, HighestWeight(orbit[0]), malcev_type(alg, orbit[0]), orbit)

    @property
    def key(self) -> tuple:
        return (self.algebra.family, self.algebra.rank, self.weight.coefficients)

    def label(self) -> str:
        name, weights = conventional_name(self)
        ws = "/".join("(" + ",".join(map(str, w)) + ")" for w in weights)
        return f"{name} {ws} [{self.malcev}]"

    def to_json(self) -> dict:
        name, weights = conventional_name(self)
        return {
            "dim": self.dim, "family": self.algebra.family, "rank": self.algebra.rank,
            "algebra": self.algebra.name, "weight": list(self.weight.coefficients),
            "orbit": [list(w) for w in self.outer_orbit], "type": self.malcev,
            "conventional_name": name, "conventional_weights": [list(w) for w in weights],
        }


def conventional_name(rec: IrrepRecord) -> tuple[str, tuple]:
    """Customary name for low-rank coincidences, chosen by representation type.

    B2 representations of symplectic type print as sp(2) with reversed
    weights; A3 representations of orthogonal type print as so(6) using the
    D3 node order (spinor, vector, spinor) -> (vector, spinor, spinor).
    """
    alg, orbit = rec.algebra, rec.outer_orbit
    if alg == AlgebraId("B", 2) and rec.malcev == "s":
        return "sp(2)", tuple(sorted({w[::-1] for w in orbit}, reverse=True))
    if alg == AlgebraId("A", 3) and rec.malcev == "o":
        return "so(6)", tuple(sorted({(w[1], w[0], w[2]) for w in orbit}, reverse=True))
    return alg.name, orbit


# ------------------------------------------------------------ enumeration


def _standard_dim(alg: AlgebraId) -> int:
    f, l = alg.family, alg.rank
    return {"A": l + 1, "B": 2 * l + 1, "C": 2 * l, "D": 2 * l}.get(f) or {
        ("E", 6): 27, ("E", 7): 56, ("E", 8): 248, ("F", 4): 26, ("G", 2): 7
    }[(f, l)]


def _lowest_dim(alg: AlgebraId) -> int:
    if alg == AlgebraId("B", 2):
        return 4
    return _standard_dim(alg)


def _second_lowest_dim(alg: AlgebraId) -> int | None:
    """Dimension of the second-lowest nontrivial irrep where a closed form is known."""
    f, l = alg.family, alg.rank
    if f == "A" and l >= 3:
        return l * (l + 1) // 2
    if f == "B" and l >= 7:
        return (2 * l + 1) * l
    if f == "C" and l >= 4:
        return 2 * l * l - l - 1
    if f == "D" and l >= 8:
        return 2 * l * l - l
    return None


def _standard_weights(alg: AlgebraId) -> list[tuple[int, ...]]:
    l = alg.rank
    # the standard irrep sits on the last node for e7, e8 and f4
    node = l - 1 if alg.family in ("E", "F") and l != 6 else 0
    return [tuple(int(i == node) for i in range(l))]


def candidate_algebras(max_dim: int) -> list[AlgebraId]:
    """Every simple algebra with a nontrivial irrep of dimension <= max_dim."""
    out = []
    for fam, minr in _MIN_RANK.items():
        l = minr
        while True:
            alg = AlgebraId(fam, l)
            if _lowest_dim(alg) > max_dim:
                break
            out.append(alg)
            l += 1
    for fam, ranks in _EXCEPTIONAL_RANKS.items():
        for l in ranks:
            alg = AlgebraId(fam, l)
            if _lowest_dim(alg) <= max_dim:
                out.append(alg)
    return out


def irreps_of(alg: AlgebraId, max_dim: int) -> list[IrrepRecord]:
    """All nontrivial irreps of one algebra with dim <= max_dim (one per outer orbit).

    Tree search from the fundamental weights, incrementing one entry at a
    time and pruning as soon as the dimension exceeds the bound; this is
    complete because dimensions increase strictly in every entry.
    """
    second = _second_lowest_dim(alg)
    if second is not None and second > max_dim:
        return [IrrepRecord.make(alg, w) for w in _standard_weights(alg) if irrep_dimension(alg, w) <= max_dim]
    l = alg.rank
    seen: set[tuple[int, ...]] = set()
    found: dict[tuple, IrrepRecord] = {}
    stack = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        if irrep_dimension(alg, x) > max_dim:
            continue
        rec = IrrepRecord.make(alg, x)
        found.setdefault(rec.key, rec)
        for i in range(l):
            y = x[:i] + (x[i] + 1,) + x[i + 1 :]
            if y not in seen:
                stack.append(y)
    return list(found.values())


@lru_cache(maxsize=32)
def _enumerate(max_dim: int) -> tuple[IrrepRecord, ...]:
    recs = []
    for alg in candidate_algebras(max_dim):
        recs.extend(irreps_of(alg, max_dim))
    return tuple(sorted(recs))


def enumerate_irreps(max_dim: int) -> list[IrrepRecord]:
    """Complete list of nontrivial irreps of all compact simple algebras with dim <= max_dim."""
    if max_dim < 2:
        raise ValueError("max_dim must be at least 2")
    return list(_enumerate(int(max_dim)))


def irreps_of_dim(n: int) -> list[IrrepRecord]:
    return [r for r in enumerate_irreps(max(n, 2)) if r.dim == n]


def coordinate_bounds(alg: AlgebraId, max_dim: int) -> list[int]:
    """Largest k with dim(k e_i) <= max_dim for each node (monotonicity bound)."""
    l = alg.rank
    out = []
    for i in range(l):
        k = 0
        while True:
            w = tuple(k + 1 if j == i else 0 for j in range(l))
            if irrep_dimension(alg, w) > max_dim:
                break
            k += 1
        out.append(k)
    return out


def enumerate_irreps_box(max_dim: int) -> list[IrrepRecord]:
    """Unpruned reference enumeration over the box of coordinate bounds."""
    recs = {}
    for alg in candidate_algebras(max_dim):
        bounds = coordinate_bounds(alg, max_dim)
        for x in itertools.product(*(range(b + 1) for b in bounds)):
            if not any(x):
                continue
            if irrep_dimension(alg, x) <= max_dim:
                r = IrrepRecord.make(alg, x)
                recs[r.key] = r
    return sorted(recs.values())


# ---------------------------------------------------------------- lattice


def _orbit_dim_so4k3(k: int, m: int) -> int:
    q = prod((Fraction(comb(m + 2 * s - 1, m), comb(m + s - 1, m)) for s in range(1, 2 * k + 2)), start=Fraction(1))
    return int(q)


def _unit(l: int, *idx: int, value: int = 1) -> tuple[int, ...]:
    return tuple(value if i in idx else 0 for i in range(l))


def exception_parent(alg: AlgebraId, weight: Sequence[int]) -> tuple[AlgebraId, tuple[int, ...]] | None:
    """Parent (algebra, weight) for irreps that are not maximal in su/sp/so(dim).

    Returns None for irreps that attach directly by their Malcev type.
    """
    orbit = set(outer_orbit(alg, weight))
    f, l = alg.family, alg.rank

    def hit(*ws):
        return any(tuple(w) in orbit for w in ws)

    if f == "A" and l >= 4 and hit((1, 0, 1) + (0,) * (l - 3)):
        m = l * (l + 1) // 2
        return su(m), _unit(m - 1, 1)
    if f == "A" and l >= 3 and hit((2, 1) + (0,) * (l - 2)):
        m = l * (l + 3) // 2 + 1
        return su(m), _unit(m - 1, 1)
    if f == "A" and l == 1 and hit((6,)):
        return AlgebraId("G", 2), (1, 0)
    if f == "A" and l == 5 and hit((0, 1, 0, 1, 0)):
        return sp(10), _unit(10, 1)
    if f == "B" and l % 2 == 1:
        # so(4k+3) with l = 2k+1
        k = (l - 1) // 2
        x = tuple(weight)
        if not any(x[:-1]) and x[-1] >= 1:
            m = x[-1]
            if not (k == 1 and m == 1):
                return so(4 * k + 4), _unit(2 * k + 2, 2 * k, value=m)
    if f == "B" and l == 4 and hit((1, 0, 0, 1)):
        return so(16), _unit(8, 6)
    if f == "C" and l == 3 and hit((0, 2, 0)):
        return sp(7), _unit(7, 1)
    if f == "C" and l == 3 and hit((0, 2, 1)):
        return sp(7), _unit(7, 2)
    if f == "D" and l == 5 and hit((0, 1, 0, 1, 0)):
        return su(16), _unit(15, 2)
    if f == "D" and l == 6 and hit((0, 0, 0, 1, 0, 0)):
        return sp(16), _unit(16, 1)
    if f == "D" and l == 6 and hit((0, 0, 1, 0, 1, 0)):
        return sp(16), _unit(16, 2)
    if f == "E" and l == 6 and hit((0, 0, 1, 0, 0, 0)):
        return su(27), _unit(26, 1)
    if f == "E" and l == 6 and hit((0, 1, 1, 0, 0, 0)):
        return su(27), _unit(26, 3)
    if f == "E" and l == 7:
        for w, j in (((0, 0, 0, 0, 0, 1, 0), 1), ((0, 0, 0, 0, 1, 0, 0), 2),
                     ((0, 0, 0, 1, 0, 0, 0), 3), ((0, 1, 1, 0, 0, 0, 0), 4)):
            if hit(w):
                return sp(28), _unit(28, j)
    if f == "G" and tuple(weight)[1] == 0 and tuple(weight)[0] >= 2:
        m = tuple(weight)[0]
        return so(7), (m, 0, 0)
    return None


@dataclass(frozen=True)
class LatticeNode:
    record: IrrepRecord
    root: str | None = None  # "su", "sp" or "so" for the three roots

    @property
    def key(self) -> tuple:
        return self.record.key

    def label(self) -> str:
        return self.record.label()


@dataclass(frozen=True)
class LatticeEdge:
    child: tuple
    parent: tuple


@dataclass(frozen=True)
class Lattice:
    N: int
    nodes: tuple[LatticeNode, ...]
    edges: tuple[LatticeEdge, ...]

    def node(self, key) -> LatticeNode:
        for n in self.nodes:
            if n.key == key:
                return n
        raise KeyError(key)

    def parents(self, key) -> list[tuple]:
        return [e.parent for e in self.edges if e.child == key]

    def labelled_edges(self) -> set[tuple[str, str]]:
        return {(self.node(e.child).label(), self.node(e.parent).label()) for e in self.edges}

    def to_dot(self) -> str:
        ids = {n.key: f"n{i}" for i, n in enumerate(self.nodes)}
        lines = [f"digraph su{self.N} {{", "  rankdir=BT;"]
        for n in self.nodes:
            shape = "box" if n.root else "ellipse"
            lines.append(f'  {ids[n.key]} [label="{n.label()}", shape={shape}];')
        for e in self.edges:
            lines.append(f"  {ids[e.child]} -> {ids[e.parent]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["dim", "family", "rank", "weight", "type", "parents"])
        for n in self.nodes:
            r = n.record
            parents = ";".join(self.node(p).label() for p in self.parents(n.key))
            w.writerow([r.dim, r.algebra.family, r.algebra.rank, str(r.weight), r.malcev, parents])
        return buf.getvalue()


def _root_records(n: int) -> dict[str, IrrepRecord]:
    roots = {"su": IrrepRecord.make(su(n), _unit(n - 1, 0))}
    if n % 2 == 0:
        h = n // 2
        if h >= 3:
            roots["sp"] = IrrepRecord.make(sp(h), _unit(h, 0))
        elif h == 2:
            roots["sp"] = IrrepRecord.make(AlgebraId("B", 2), (0, 1))
    if n >= 7:
        alg = so(n)
        roots["so"] = IrrepRecord.make(alg, _unit(alg.rank, 0))
    elif n == 6:
        roots["so"] = IrrepRecord.make(su(4), (0, 1, 0))
    elif n == 5:
        roots["so"] = IrrepRecord.make(AlgebraId("B", 2), (1, 0))
    elif n == 3:
        roots["so"] = IrrepRecord.make(su(2), (2,))
    # su(2) = sp(1) when N = 2; so(4) and so(2) are not simple
    return {k: v for k, v in roots.items() if k == "su" or v.key != roots["su"].key}


def build_lattice(n: int, cap: int = LATTICE_CAP) -> Lattice:
    """Inclusion DAG of the irreducible simple subalgebras of su(N)."""
    if n < 2:
        raise ValueError("N must be at least 2")
    if n > cap:
        raise ResourceCapError(f"lattice for N={n} exceeds the cap {cap}")
    recs = {r.key: r for r in irreps_of_dim(n)}
    roots = _root_records(n)
    root_of = {r.key: name for name, r in roots.items()}
    nodes = tuple(LatticeNode(r, root_of.get(k)) for k, r in sorted(recs.items(), key=lambda kv: kv[1]))
    edges = []
    for name in ("sp", "so"):
        if name in roots:
            edges.append(LatticeEdge(roots[name].key, roots["su"].key))
    by_type = {"u": "su", "s": "sp", "o": "so"}
    for key, r in recs.items():
        if key in root_of:
            continue
        exc = exception_parent(r.algebra, r.weight.coefficients)
        if exc is not None:
            palg, pw = exc
            parent = IrrepRecord.make(palg, pw)
            if parent.key not in recs:
                raise ArithmeticError(f"exception parent {parent.label()} is not an irrep of dim {n}")
            edges.append(LatticeEdge(key, parent.key))
            continue
        target = by_type[r.malcev]
        edges.append(LatticeEdge(key, roots[target].key if target in roots else roots["su"].key))
    return Lattice(n, nodes, tuple(edges))


def unitary_subalgebras_exist(n_qubits: int, cap: int = LATTICE_CAP) -> bool:
    """Does su(2^n) have a proper irreducible simple subalgebra of unitary type?"""
    n = 2**n_qubits
    if n > cap:
        raise ResourceCapError(f"N={n} exceeds the catalog cap {cap}")
    top = su(n)
    return any(r.malcev == "u" and r.algebra != top for r in irreps_of_dim(n))


def records_to_csv(records: Iterable[IrrepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["dim", "family", "rank", "weight", "type", "orbit"])
    for r in records:
        orbit = " ".join(str(HighestWeight(o)) for o in r.outer_orbit)
        w.writerow([r.dim, r.algebra.family, r.algebra.rank, str(r.weight), r.malcev, orbit])
    return buf.getvalue()
