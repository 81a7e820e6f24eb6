"""Very compressed ideals and k*-limits of point configurations.

An m-primary ideal squeezed between consecutive powers m^(s+1) < I < m^s is
determined by a subspace of the degree-s forms, so the family is a
Grassmannian; its dimension crosses the smoothable-component dimension 3d
first at d = 96.  The experimental side draws random integer point sets,
computes their vanishing ideals by Buchberger-Moller interpolation, and
degenerates them toward the origin: the flat limit under the scaling action
is the ideal generated by the top-degree forms of a degree-compatible
reduced Groebner basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InternalInvariantError
from .groebner import Ideal
from .localprops import degree, local_hilbert_function, standard_monomials
from .rings import RingContext

DEFAULT_RING = RingContext(["a", "b", "c"])


@dataclass(frozen=True)
class CompressedParams:
    """Numerics of the very compressed stratum for d points."""

    d: int
    s: int
    h: int  # codimension of the degree-s piece: d - C(s+2,3)
    space: int  # dim of the degree-s forms: C(s+2,2)
    dim: int  # Grassmannian dimension h*(space - h)
    hilbert_function: tuple


def very_compressed_params(d):
    """The unique s with C(s+2,3) < d <= C(s+3,3) and the induced invariants."""
    if d < 2:
        raise ValueError("very compressed parameters need d >= 2")
    s = 0
    while comb(s + 3, 3) < d:
        s += 1
    h = d - comb(s + 2, 3)
    space = comb(s + 2, 2)
    if not 0 < h <= space:
        raise InternalInvariantError(f"bad decomposition for d={d}: s={s}, h={h}")
    hf = tuple(comb(i + 2, 2) for i in range(s)) + (h,)
    if sum(hf) != d:
        raise InternalInvariantError(f"Hilbert function {hf} does not sum to {d}")
    return CompressedParams(d=d, s=s, h=h, space=space, dim=h * (space - h),
                            hilbert_function=hf)


def reducibility_threshold_scan(dmax):
    """Rows (d, s, h, dim, 3d, dim >= 3d) for 8 <= d <= dmax."""
    if dmax < 8:
        raise ValueError("scan needs dmax >= 8")
    rows = []
    for d in range(8, dmax + 1):
        p = very_compressed_params(d)
        rows.append((d, p.s, p.h, p.dim, 3 * d, p.dim >= 3 * d))
    return rows


# -- vanishing ideals of point sets ------------------------------------------------


def points_vanishing_ideal(points, ring=DEFAULT_RING):
    """Reduced Groebner basis of I(points) by Buchberger-Moller interpolation.

    Monomials are consumed in increasing order; those whose evaluation
    vector is dependent on the standard ones found so far yield basis
    elements supported on standard monomials, hence already tail-reduced.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    if any(len(p) != ring.nvars for p in pts):
        raise ValueError("point length does not match the ring")
    key = ring.monomial_key
    n = len(pts)

    def evaluate_monomial(mono):
        out = []
        for p in pts:
            value = Fraction(1)
            for x, e in zip(p, mono):
                if e:
                    value *= x ** e
            out.append(value)
        return out

    basis = []  # reduced generators
    std = []  # standard monomials, ascending
    rows = []  # (pivot index, evaluation vector, combination terms)
    candidates = {(0,) * ring.nvars}
    lead_set = []
    while candidates:
        mono = min(candidates, key=key)
        candidates.discard(mono)
        if any(all(x <= y for x, y in zip(lm, mono)) for lm in lead_set):
            continue
        vec = evaluate_monomial(mono)
        combo = {mono: Fraction(1)}
        for pivot, rvec, rcombo in rows:
            c = vec[pivot]
            if c:
                vec = [x - c * y for x, y in zip(vec, rvec)]
                for m2, c2 in rcombo.items():
                    new = combo.get(m2, 0) - c * c2
                    if new:
                        combo[m2] = new
                    else:
                        combo.pop(m2, None)
        if any(vec):
            pivot = next(i for i, x in enumerate(vec) if x)
            scale = vec[pivot]
            vec = [x / scale for x in vec]
            rows.append((pivot, vec, {m: c / scale for m, c in combo.items()}))
            std.append(mono)
            for i in range(ring.nvars):
                candidates.add(mono[:i] + (mono[i] + 1,) + mono[i + 1:])
        else:
            from .rings import Polynomial

            basis.append(Polynomial(ring, combo))
            lead_set.append(mono)
    ideal = Ideal(ring, basis)
    if degree(ideal) != n:
        raise InternalInvariantError("interpolation ideal has the wrong degree")
    for g in basis:
        for p in pts:
            if g.evaluate(p) != 0:
                raise InternalInvariantError(f"{g} fails to vanish at {p}")
    return ideal


# -- k*-limit experiments -----------------------------------------------------------


@dataclass(frozen=True)
class KstarResult:
    """One k*-limit draw: the limit ideal and its compressedness report."""

    d: int
    seed: int
    points: tuple
    limit: Ideal
    hilbert_function: tuple
    contains_next_power: bool  # m^(s+1) inside the limit
    inside_power: bool  # limit inside m^s
    degenerate: bool
    redraws: int

    @property
    def very_compressed(self):
        return self.contains_next_power and self.inside_power


def _draw_points(d, rng, box=20):
    pts = set()
    while len(pts) < d:
        pts.add(tuple(rng.randint(-box, box) for _ in range(3)))
    return tuple(sorted(pts))


def kstar_limit(d, seed, ring=DEFAULT_RING):
    """Single draw: vanishing ideal, scaling limit, compressedness flags.

    The flat limit of t.Gamma as t -> 0 is generated by the top-degree
    forms of a degree-compatible reduced basis of I(Gamma); its degree is
    always d.
    """
    if not 1 <= d <= 20:
        raise ValueError("desk-scale experiments need 1 <= d <= 20")
    rng = random.Random(seed)
    pts = _draw_points(d, rng)
    ideal = points_vanishing_ideal(pts, ring)
    limit = Ideal(ring, [g.leading_form() for g in ideal.groebner_basis()])
    if degree(limit) != d:
        raise InternalInvariantError("scaling limit changed the degree")
    hf = local_hilbert_function(limit)
    if d == 1:
        expected = (1,)
        s = 0
    else:
        params = very_compressed_params(d)
        expected = params.hilbert_function
        s = params.s
    contains = all(sum(m) <= s for m in standard_monomials(limit))
    inside = all(g.order_degree() >= s for g in limit.generators)
    return KstarResult(d=d, seed=seed, points=pts, limit=limit,
                       hilbert_function=hf,
                       contains_next_power=contains, inside_power=inside,
                       degenerate=hf != expected, redraws=0)


def kstar_experiment(d, seed, redraws=5, ring=DEFAULT_RING):
    """Redraw a degenerate configuration up to ``redraws`` times."""
    result = None
    for attempt in range(redraws + 1):
        result = kstar_limit(d, seed * 1000003 + attempt, ring)
        if not result.degenerate:
            break
    return KstarResult(d=result.d, seed=seed, points=result.points,
                       limit=result.limit,
                       hilbert_function=result.hilbert_function,
                       contains_next_power=result.contains_next_power,
                       inside_power=result.inside_power,
                       degenerate=result.degenerate,
                       redraws=attempt)
