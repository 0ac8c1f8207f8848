"""Künneth formula for torsion-free graded modules."""

from __future__ import annotations

from typing import Sequence

from ..exactalg import FGModule, Ring


class TorsionError(ValueError):
    pass


def kunneth_free(Mx: Sequence[FGModule], My: Sequence[FGModule]) -> tuple[FGModule, ...]:
    """Graded tensor product of two free graded modules.

    Tor terms are out of scope, so torsion in either input is rejected.
    """
    if not Mx or not My:
        return ()
    ring = Mx[0].ring
    for M in list(Mx) + list(My):
        if M.ring is not ring:
            raise ValueError("graded modules over different rings")
        if M.torsion:
            raise TorsionError(f"torsion {M.torsion} present; Tor terms are not computed")
    top = len(Mx) + len(My) - 2
    ranks = [0] * (top + 1)
    for i, a in enumerate(Mx):
        for j, b in enumerate(My):
            ranks[i + j] += a.free_rank * b.free_rank
    return tuple(FGModule(ring, r) for r in ranks)


def free_graded(ranks: Sequence[int], ring: Ring = Ring.Z) -> tuple[FGModule, ...]:
    return tuple(FGModule(ring, r) for r in ranks)


def sphere_homology(dims: Sequence[int], ring: Ring = Ring.Z) -> tuple[FGModule, ...]:
    """Homology of a product of spheres of the given dimensions."""
    out = free_graded([1], ring)
    for d in dims:
        out = kunneth_free(out, free_graded([1] + [0] * (d - 1) + [1], ring))
    return out
