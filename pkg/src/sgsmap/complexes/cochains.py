"""Simplicial cochains: coboundary, Alexander-Whitney cup and cap products,
Kronecker evaluation and pullback along vertex maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..exactalg import Ring
from .chains import Chain, clean
from .simplicial import Simplex, SimplicialComplex, Vertex


@dataclass(frozen=True)
class Cocycle:
    """A cochain of fixed degree, stored sparsely as simplex -> value."""

    degree: int
    values: Mapping[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", {s: v for s, v in self.values.items() if v})
        for s in self.values:
            if len(s) != self.degree + 1:
                raise ValueError(f"simplex {s} has the wrong degree for a {self.degree}-cochain")

    def __call__(self, s: Simplex) -> int:
        return self.values.get(s, 0)

    @classmethod
    def unit(cls, K: SimplicialComplex) -> "Cocycle":
        return cls(0, {s: 1 for s in K.simplices(0)})

    def scaled(self, c: int, coeff: Ring = Ring.Z) -> "Cocycle":
        return Cocycle(self.degree, {s: coeff.reduce(c * v) for s, v in self.values.items()})

    def plus(self, other: "Cocycle", coeff: Ring = Ring.Z) -> "Cocycle":
        if other.degree != self.degree:
            raise ValueError("cannot add cochains of different degree")
        out = dict(self.values)
        for s, v in other.values.items():
            out[s] = out.get(s, 0) + v
        return Cocycle(self.degree, {s: coeff.reduce(v) for s, v in out.items()})


def coboundary(K: SimplicialComplex, phi: Cocycle, coeff: Ring = Ring.Z) -> Cocycle:
    """``(delta phi)(s) = sum_i (-1)^i phi(d_i s)`` on the (k+1)-simplices of K."""
    k = phi.degree
    out = {}
    for s in K.simplices(k + 1):
        acc = 0
        for i in range(len(s)):
            v = phi.values.get(s[:i] + s[i + 1 :])
            if v:
                acc += -v if i & 1 else v
        acc = coeff.reduce(acc)
        if acc:
            out[s] = acc
    return Cocycle(k + 1, out)


def is_cocycle(K: SimplicialComplex, phi: Cocycle, coeff: Ring = Ring.Z) -> bool:
    return not coboundary(K, phi, coeff).values


class NotACocycleError(ValueError):
    pass


def cup_product(K: SimplicialComplex, a: Cocycle, b: Cocycle, coeff: Ring = Ring.Z, check: bool = True) -> Cocycle:
    """Alexander-Whitney cup product: front p-face times back q-face."""
    if check:
        for name, c in (("left", a), ("right", b)):
            if not is_cocycle(K, c, coeff):
                raise NotACocycleError(f"{name} factor of degree {c.degree} is not a cocycle")
    p, q = a.degree, b.degree
    out = {}
    av, bv = a.values, b.values
    if not av or not bv:
        return Cocycle(p + q, {})
    for s in K.simplices(p + q):
        x = av.get(s[: p + 1])
        if not x:
            continue
        y = bv.get(s[p:])
        if y:
            v = coeff.reduce(x * y)
            if v:
                out[s] = v
    return Cocycle(p + q, out)


def cup_cochains(K: SimplicialComplex, a: Cocycle, b: Cocycle, coeff: Ring = Ring.Z) -> Cocycle:
    """Cup product at cochain level with no cocycle check."""
    return cup_product(K, a, b, coeff, check=False)


def evaluate(phi: Cocycle, chain: Mapping[Simplex, int], coeff: Ring = Ring.Z) -> int:
    """Kronecker pairing ``<phi, chain>``."""
    total = sum(phi.values.get(s, 0) * c for s, c in chain.items())
    return coeff.reduce(total)


def cap_product(chain: Mapping[Simplex, int], phi: Cocycle, coeff: Ring = Ring.Z) -> Chain:
    """``s cap phi = phi(back p-face of s) * front (n-p)-face of s``."""
    p = phi.degree
    out: Chain = {}
    for s, c in chain.items():
        n = len(s) - 1
        if n < p:
            continue
        v = phi.values.get(s[n - p :])
        if v:
            front = s[: n - p + 1]
            out[front] = out.get(front, 0) + c * v
    return clean(out, coeff)


def pullback(f: Callable[[Vertex], Vertex], source: SimplicialComplex, phi: Cocycle, coeff: Ring = Ring.Z) -> Cocycle:
    """Pull a cochain back along an order-preserving simplicial vertex map.

    A simplex whose image is degenerate gets value zero.
    """
    k = phi.degree
    out = {}
    for s in source.simplices(k):
        img = tuple(f(v) for v in s)
        if len(set(img)) != len(img):
            continue
        if any(img[i] > img[i + 1] for i in range(len(img) - 1)):
            raise ValueError(f"vertex map does not preserve the order on {s}")
        v = phi.values.get(img)
        if v:
            out[s] = coeff.reduce(v)
    return Cocycle(k, {s: v for s, v in out.items() if v})
