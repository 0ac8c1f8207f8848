"""Pseudomanifold checks and fundamental classes by orientation propagation."""

from __future__ import annotations

from collections import deque

from ..exactalg import Ring
from .chains import Chain, boundary_of
from .simplicial import SimplicialComplex


class NotPseudomanifoldError(ValueError):
    pass


class NonOrientableError(ValueError):
    pass


def pseudomanifold_defects(K: SimplicialComplex, closed: bool = True) -> list[str]:
    """Reasons ``K`` fails to be a (closed) pseudomanifold; empty when it is one."""
    problems = []
    if not K.is_pure():
        problems.append("complex is not pure")
    inc = K.facet_incidence()
    for f, tops in sorted(inc.items()):
        n = len(tops)
        if n > 2 or (closed and n != 2):
            problems.append(f"facet {f} lies in {n} top simplices")
            if len(problems) > 20:
                break
    return problems


def is_closed_pseudomanifold(K: SimplicialComplex) -> bool:
    return not pseudomanifold_defects(K, closed=True)


def fundamental_class(K: SimplicialComplex, coeff: Ring = Ring.Z, relative: bool | None = None) -> Chain:
    """Coherently signed sum of the top simplices.

    A closed pseudomanifold gives an absolute cycle; with boundary faces
    (facets in one top simplex) the chain is a relative cycle whose
    boundary lies in ``K.boundary()``. Each facet-connected piece gets the
    sign ``+1`` on its least top simplex.
    """
    d = K.dim
    if d == 0:
        return {s: 1 for s in K.simplices(0)}
    inc = K.facet_incidence()
    has_boundary = any(len(t) == 1 for t in inc.values())
    if relative is None:
        relative = has_boundary
    for f, tops in sorted(inc.items()):
        if len(tops) > 2 or (len(tops) == 1 and not relative):
            raise NotPseudomanifoldError(f"not a pseudomanifold: facet {f} lies in {len(tops)} top simplices")
    if not K.is_pure():
        raise NotPseudomanifoldError("not a pseudomanifold: complex is not pure")
    if coeff is Ring.Z2:
        return {s: 1 for s in K.simplices(d)}

    sign: dict = {}
    for start in K.simplices(d):
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for i in range(len(s)):
                f = s[:i] + s[i + 1 :]
                induced = sign[s] * (-1 if i & 1 else 1)
                for t in inc[f]:
                    if t == s:
                        continue
                    j = t.index(next(v for v in t if v not in f))
                    want = -induced * (-1 if j & 1 else 1)
                    if t in sign:
                        if sign[t] != want:
                            raise NonOrientableError(f"non-orientable: orientation clash across facet {f}")
                    else:
                        sign[t] = want
                        queue.append(t)
    return sign


def is_orientable(K: SimplicialComplex) -> bool:
    try:
        fundamental_class(K)
    except NonOrientableError:
        return False
    return True


def check_fundamental_class(K: SimplicialComplex, chain: Chain, boundary: SimplicialComplex | None = None) -> bool:
    """Boundary of the chain vanishes, or lies in ``boundary`` if given."""
    b = boundary_of(chain)
    if boundary is None:
        return not b
    return all(s in boundary for s in b)
