"""Finitely generated modules and subquotients ker/im of integer matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .matrix import IntMatrix, Ring
from .snf import SNFDecomposition, smith_normal_form

Vector = dict[int, int]


@dataclass(frozen=True)
class FGModule:
    """``A^free_rank ⊕ A/t_1 ⊕ ... ⊕ A/t_k`` with ``t_1 | t_2 | ...``."""

    ring: Ring = Ring.Z
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if self.ring is Ring.Z2 and torsion:
            raise ValueError("Z/2 modules are vector spaces; encode as free rank")
        if any(t < 2 for t in torsion):
            raise ValueError(f"torsion coefficients must be >= 2, got {torsion}")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {torsion} is not a divisibility chain")
        object.__setattr__(self, "torsion", torsion)

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        base = "Z" if self.ring is Ring.Z else "Z2"
        parts = [f"{base}^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def cokernel_presentation(A: IntMatrix, coeff: Ring = Ring.Z) -> FGModule:
    """The module ``coeff^rows / image(A)``."""
    snf = smith_normal_form(A.over(coeff), coeff, transforms=False)
    torsion = tuple(d for d in snf.diagonal if d > 1) if coeff is Ring.Z else ()
    return FGModule(coeff, A.rows - snf.rank, torsion)


@dataclass
class HomologyGroup:
    """``ker(d_out) / im(d_in)`` with explicit generators.

    Generators are cycle vectors in the ambient free module (length
    ``d_out.cols``). ``coordinates`` maps a cycle to its class: torsion
    coordinates (reduced mod their order) followed by free coordinates.
    """

    module: FGModule
    free_generators: list[Vector] = field(default_factory=list)
    torsion_generators: list[Vector] = field(default_factory=list)
    _kernel_rank_offset: int = 0
    _v_inv: IntMatrix | None = None
    _u_prime: IntMatrix | None = None
    _diag: tuple[int, ...] = ()
    _n: int = 0

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.free_rank

    @property
    def generators(self) -> list[Vector]:
        return self.torsion_generators + self.free_generators

    def coordinates(self, cycle: Mapping[int, int]) -> tuple[list[int], list[int]]:
        """Return ``(torsion_coords, free_coords)`` of a cycle's class.

        Raises ``ValueError`` when the vector is not a cycle.
        """
        ring = self.ring
        x = self._v_inv.apply({i: v for i, v in cycle.items() if v})
        r = self._kernel_rank_offset
        for i, v in x.items():
            if i < r and ring.reduce(v):
                raise ValueError("vector is not a cycle")
        z = {i - r: v for i, v in x.items() if i >= r}
        y = self._u_prime.apply(z)
        s = len(self._diag)
        torsion, free = [], []
        for i, d in enumerate(self._diag):
            if d > 1:
                torsion.append(y.get(i, 0) % d)
        for i in range(s, s + self.module.free_rank):
            free.append(ring.reduce(y.get(i, 0)))
        return torsion, free

    def is_boundary(self, cycle: Mapping[int, int]) -> bool:
        torsion, free = self.coordinates(cycle)
        return not any(torsion) and not any(free)

    def free_coordinate_matrix(self, cycles: list[Mapping[int, int]]) -> IntMatrix:
        """Columns are the free coordinates of the given cycles."""
        entries = {}
        for j, c in enumerate(cycles):
            _, free = self.coordinates(c)
            for i, v in enumerate(free):
                if v:
                    entries[(i, j)] = v
        return IntMatrix(self.module.free_rank, len(cycles), entries)

    def span_rank(self, cycles: list[Mapping[int, int]]) -> int:
        """Rank of the free part of the span of some cycle classes."""
        M = self.free_coordinate_matrix(cycles)
        return smith_normal_form(M, self.ring, transforms=False).rank


class ChainConditionError(ValueError):
    pass


def homology_of_pair(d_in: IntMatrix, d_out: IntMatrix, coeff: Ring = Ring.Z) -> HomologyGroup:
    """Homology ``ker(d_out) / im(d_in)`` at the middle term.

    ``d_in`` maps into the middle module, ``d_out`` maps out of it.
    """
    if d_in.rows != d_out.cols:
        raise ChainConditionError(
            f"incompatible shapes: d_in is {d_in.rows}x{d_in.cols}, d_out is {d_out.rows}x{d_out.cols}"
        )
    d_in = d_in.over(coeff)
    d_out = d_out.over(coeff)
    n = d_out.cols
    comp = (d_out @ d_in).over(coeff)
    if not comp.is_zero():
        raise ChainConditionError(f"d_out @ d_in != 0 ({len(comp.entries)} nonzero entries)")

    out: SNFDecomposition = smith_normal_form(d_out, coeff)
    r = out.rank
    z = n - r
    # d_in written in the kernel basis (columns r.. of V).
    moved = (out.V_inv @ d_in).over(coeff)
    B = IntMatrix(z, d_in.cols, {(i - r, j): v for (i, j), v in moved.entries.items() if i >= r})
    inner = smith_normal_form(B, coeff)
    s = inner.rank
    kernel_cols = out.V.columns()[r:]
    mix = inner.U_inv.columns()

    def lift(vec: Mapping[int, int]) -> Vector:
        acc: Vector = {}
        for k, c in vec.items():
            for row, v in kernel_cols[k].items():
                acc[row] = acc.get(row, 0) + c * v
        return {i: coeff.reduce(v) for i, v in acc.items() if coeff.reduce(v)}

    torsion_gens, free_gens, torsion = [], [], []
    for i, d in enumerate(inner.diagonal):
        if d > 1:
            torsion.append(d)
            torsion_gens.append(lift(mix[i]))
    for i in range(s, z):
        free_gens.append(lift(mix[i]))
    module = FGModule(coeff, z - s, tuple(torsion))
    return HomologyGroup(
        module,
        free_gens,
        torsion_gens,
        _kernel_rank_offset=r,
        _v_inv=out.V_inv,
        _u_prime=inner.U,
        _diag=inner.diagonal,
        _n=n,
    )
