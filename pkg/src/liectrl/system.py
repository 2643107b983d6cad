"""Bilinear control systems: a drift, a list of controls and a tensor structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .pauli import PauliExpr


@dataclass(frozen=True)
class TensorStructure:
    """Local dimensions ``d_1, ..., d_m`` of a tensor-product split of C^N.

    For qubit systems every ``d_j`` is a power of two and block ``j`` covers
    ``log2 d_j`` consecutive qubits.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("a tensor structure needs at least one factor")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, n: int) -> "TensorStructure":
        return cls((2,) * n)

    @property
    def N(self) -> int:
        return prod(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def qubit_blocks(self) -> list[tuple[int, ...]]:
        """Qubit indices (0-based, leftmost first) covered by each factor."""
        blocks, start = [], 0
        for d in self.dims:
            k = d.bit_length() - 1
            if 1 << k != d:
                raise ValueError(f"factor {d} is not a power of two")
            blocks.append(tuple(range(start, start + k)))
            start += k
        return blocks

    def prime_refinement(self) -> "TensorStructure":
        out = []
        for d in self.dims:
            p, m = 2, d
            while m > 1:
                while m % p == 0:
                    out.append(p)
                    m //= p
                p += 1
        return TensorStructure(tuple(out))

    def is_refinement_of(self, other: "TensorStructure") -> bool:
        """True if consecutive groups of our factors multiply to ``other``'s factors."""
        i = 0
        for d in other.dims:
            acc = 1
            while acc < d and i < len(self.dims):
                acc *= self.dims[i]
                i += 1
            if acc != d:
                return False
        return i == len(self.dims)


@dataclass(frozen=True)
class ControlSystem:
    """``H_d + sum_j u_j(t) H_j`` on n qubits with a declared tensor structure."""

    n: int
    drift: PauliExpr
    controls: tuple[PauliExpr, ...] = ()
    label: str = ""
    structure: TensorStructure | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        if self.n < 1:
            raise ValueError("n must be positive")
        for e in (self.drift, *self.controls):
            if e.n != self.n:
                raise ValueError(f"expression on {e.n} qubits in an {self.n}-qubit system")
        if not self.controls and self.drift.is_zero():
            raise ValueError("a system needs a control or a nonzero drift")
        st = self.structure or TensorStructure.qubits(self.n)
        if st.N != 2**self.n:
            raise ValueError(f"tensor structure {st.dims} does not multiply to 2^{self.n}")
        st.qubit_blocks()
        object.__setattr__(self, "structure", st)

    @property
    def N(self) -> int:
        return 2**self.n

    @property
    def dims(self) -> tuple[int, ...]:
        return self.structure.dims

    def generators(self) -> list[PauliExpr]:
        """Nonzero drift first, then the controls."""
        gens = [self.drift] if not self.drift.is_zero() else []
        return gens + [c for c in self.controls if not c.is_zero()]

    def with_structure(self, dims: Sequence[int]) -> "ControlSystem":
        return ControlSystem(self.n, self.drift, self.controls, self.label, TensorStructure(tuple(dims)))
