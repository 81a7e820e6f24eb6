"""Macaulay duality: inverse systems, apolar ideals, leading-form systems.

An inverse system is a subspace of the symbol ring S = Q[x,y,z] closed
under differentiation; its annihilator in the operator ring T = Q[a,b,c] is
an ideal supported at the origin, and the two sides exchange leading-form
systems and lowest-form initial ideals.  This module computes closures and
their filtered Hilbert functions, annihilator ideals by exact kernel linear
algebra (with an ideal-intersection cross-check path), the dual action of a
non-linear coordinate change, and flat limits of one-parameter families of
inverse systems with symbolic rank certificates in the parameter.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError, RingMismatchError
from .groebner import (
    Ideal,
    maximal_ideal_power,
    saturate_by_element,
    specialize_parameter,
)
from .linalg import SparseEchelon, bareiss, kernel_basis
from .localprops import initial_ideal_lowest
from .polyops import RatFunc, divexact, polynomial_gcd
from .rings import Polynomial, RingContext, apolar_apply

_DUAL_NAMES = {"a": "x", "b": "y", "c": "z", "d": "w"}
_PRIMAL_NAMES = {v: k for k, v in _DUAL_NAMES.items()}

PARAMETER_RING = RingContext(["t"])


def dual_ring(ring):
    """The paired ring: operators a,b,c,... against symbols x,y,z,..."""
    if all(v in _DUAL_NAMES for v in ring.variables):
        names = [_DUAL_NAMES[v] for v in ring.variables]
    elif all(v in _PRIMAL_NAMES for v in ring.variables):
        names = [_PRIMAL_NAMES[v] for v in ring.variables]
    else:
        raise RingMismatchError(f"no dual naming convention for {ring.variables}")
    return RingContext(names, order=ring.order)


def dual_name_map(source, target):
    return {s: t for s, t in zip(source.variables, target.variables)}


# -- closures and filtered Hilbert functions -------------------------------------


@dataclass(frozen=True)
class InverseSystem:
    """A finite-dimensional derivative-closed subspace of the symbol ring.

    ``closure`` is the canonical reduced echelon basis (pivots on the top
    monomial in degree-then-grevlex order, descending), so equal systems
    have identical closures.
    """

    ring: RingContext
    generators: tuple
    closure: tuple
    hilbert_function: tuple

    @property
    def dimension(self):
        return len(self.closure)

    def top_degree(self):
        return len(self.hilbert_function) - 1

    def is_homogeneous(self):
        return all(f.is_homogeneous() for f in self.closure)

    def contains(self, f):
        ech = SparseEchelon(colkey=self.ring.monomial_key)
        for v in self.closure:
            ech.insert(dict(v.terms))
        return ech.contains(dict(f.terms))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:4])
        return f"InverseSystem(<{gens}>, dim={self.dimension})"


def inverse_system_closure(generators):
    """Span of the generators and all iterated partials, echelonized."""
    generators = tuple(g for g in generators)
    if not generators or all(g.is_zero() for g in generators):
        raise ValueError("an inverse system needs a nonzero generator")
    ring = generators[0].ring
    ops = dual_ring(ring).gens()
    ech = SparseEchelon(colkey=ring.monomial_key)
    queue = [g for g in generators if not g.is_zero()]
    while queue:
        f = queue.pop()
        if ech.insert(dict(f.terms)) is None:
            continue
        for op in ops:
            df = apolar_apply(op, f)
            if not df.is_zero():
                queue.append(df)
    closure = tuple(Polynomial(ring, vec) for vec in ech.basis())
    hf = _filtered_hilbert(closure)
    return InverseSystem(ring=ring, generators=generators, closure=closure,
                         hilbert_function=hf)


def _filtered_hilbert(closure):
    """h(k) = dim J_{<=k} - dim J_{<=k-1}, read off the echelon pivots."""
    counts = {}
    for f in closure:
        counts[f.total_degree()] = counts.get(f.total_degree(), 0) + 1
    if not counts:
        return ()
    top = max(counts)
    return tuple(counts.get(k, 0) for k in range(top + 1))


# -- apolar ideals ----------------------------------------------------------------


def apolar_ideal(forms, operator_ring=None):
    """The annihilator ideal of the span of ``forms`` and their partials.

    Kernel of the contraction map from operators of degree <= D, D the top
    generator degree, padded with the power m^(D+1); returned with its
    reduced Groebner basis ring.
    """
    if isinstance(forms, InverseSystem):
        forms = forms.generators
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("apolar ideal of the zero system is the unit ideal; "
                         "pass a nonzero form")
    s_ring = forms[0].ring
    t_ring = operator_ring or dual_ring(s_ring)
    top = max(f.total_degree() for f in forms)
    columns = t_ring.monomials_up_to_degree(top)
    row_index = {}
    rows = []

    def row_of(i, exps):
        key = (i, exps)
        if key not in row_index:
            row_index[key] = len(rows)
            rows.append([Fraction(0)] * len(columns))
        return rows[row_index[key]]

    for col, theta_exps in enumerate(columns):
        theta = t_ring.monomial(theta_exps)
        for i, f in enumerate(forms):
            image = apolar_apply(theta, f)
            for exps, coeff in image.terms.items():
                row_of(i, exps)[col] = coeff
    gens = []
    for vec in kernel_basis(rows, len(columns)):
        terms = {columns[j]: c for j, c in enumerate(vec) if c}
        gens.append(Polynomial(t_ring, terms).primitive())
    gens.extend(maximal_ideal_power(t_ring, top + 1))
    return Ideal(t_ring, gens)


def apolar_ideal_by_intersection(forms):
    """Cross-check path: intersect the annihilators of the single forms."""
    from .groebner import intersect

    if isinstance(forms, InverseSystem):
        forms = forms.generators
    forms = [f for f in forms if not f.is_zero()]
    result = None
    for f in forms:
        single = apolar_ideal([f])
        result = single if result is None else intersect(result, single)
    return result


# -- leading forms and the duality check ------------------------------------------


def lead_system(J):
    """The homogeneous system spanned by leading forms of all elements."""
    leads = [f.leading_form() for f in J.closure]
    out = inverse_system_closure(leads)
    if out.hilbert_function != J.hilbert_function:
        raise InternalInvariantError(
            "leading-form system changed the Hilbert function: "
            f"{out.hilbert_function} != {J.hilbert_function}")
    return out


def check_lead_init_duality(J):
    """Compare ann(lead(J)) with the lowest-form initial ideal of ann(J).

    Returns (ok, witness); the witness is the first reduced-basis element
    present on one side only.
    """
    lhs = apolar_ideal(lead_system(J))
    rhs = initial_ideal_lowest(apolar_ideal(J))
    if lhs == rhs:
        return True, None
    left = set(lhs.groebner_basis())
    right = set(rhs.groebner_basis())
    witness = sorted(left ^ right, key=str)[0]
    return False, witness


# -- dual action of non-linear coordinate changes ---------------------------------


def dual_transform(J, images):
    """Apply the dual of the substitution a->images[0], b->images[1], ...

    Each image must vanish at the origin and the linear parts must span the
    cotangent space; then for every generator f the transform is the finite
    sum over multi-indices of x^alpha/alpha! times (D^alpha . f), where D_i
    is the image minus the variable.
    """
    if isinstance(J, InverseSystem):
        s_ring = J.ring
        generators = J.generators
    else:
        generators = tuple(J)
        s_ring = generators[0].ring
    t_ring = images[0].ring
    if len(images) != t_ring.nvars or t_ring.nvars != s_ring.nvars:
        raise ValueError("need one substitution image per variable")
    lin_rows = []
    for img in images:
        if img.constant_term() != 0:
            raise ValueError(f"substitution image {img} has a constant term")
        lin_rows.append([img.coefficient(tuple(1 if j == i else 0
                                               for j in range(t_ring.nvars)))
                         for i in range(t_ring.nvars)])
    from .linalg import rank as matrix_rank

    if matrix_rank(lin_rows) != t_ring.nvars:
        raise ValueError("linear parts of the substitution are degenerate")
    differences = [img - v for img, v in zip(images, t_ring.gens())]
    transformed = []
    for f in generators:
        total = s_ring.zero()
        bound = f.total_degree()
        for alpha in s_ring.monomials_up_to_degree(bound):
            op = t_ring.one()
            for d_i, e in zip(differences, alpha):
                if e:
                    op = op * d_i ** e
            if op.is_zero():
                continue
            contracted = apolar_apply(op, f)
            if contracted.is_zero():
                continue
            scale = Fraction(1)
            for e in alpha:
                scale /= math.factorial(e)
            total = total + s_ring.monomial(alpha, scale) * contracted
        transformed.append(total)
    out = inverse_system_closure(transformed)
    before = inverse_system_closure(generators)
    if out.dimension != before.dimension:
        raise InternalInvariantError(
            "dual transform changed the dimension: "
            f"{out.dimension} != {before.dimension}")
    return out


# -- one-parameter families --------------------------------------------------------


@dataclass(frozen=True)
class FamilyLimitReport:
    """Outcome of a one-parameter inverse-system family check."""

    constant: bool
    hilbert_function: tuple
    sample_hilbert_functions: tuple  # ((sample, hf), ...)
    offending_samples: tuple  # two sample values on a jump, else ()
    pivot_polynomials: tuple  # str forms of the symbolic rank certificates
    uniform_for_all_nonzero_t: bool
    limit: object  # Ideal over the operator ring
    fiber_hilbert_function: tuple  # HF of <F(0)>
    limit_equals_fiber_annihilator: bool


def family_ring(parameter="t"):
    return RingContext(["x", "y", "z", parameter], parameter=parameter)


def _xyz_degree(f):
    t = f.ring.parameter_index
    return max((sum(e) - e[t] for e in f.terms), default=-1)


def _strip_parameter(f):
    """Split an S[t]-polynomial into {xyz-monomial: polynomial in t}."""
    t = f.ring.parameter_index
    out = {}
    for exps, coeff in f.terms.items():
        base = tuple(e for i, e in enumerate(exps) if i != t)
        poly = out.setdefault(base, {})
        poly[(exps[t],)] = poly.get((exps[t],), Fraction(0)) + coeff
    return {base: Polynomial(PARAMETER_RING, terms)
            for base, terms in out.items()}


def _symbolic_closure_vectors(generators):
    """Spanning vectors of the family's closure, coefficients in Q[t]."""
    ring = generators[0].ring
    t_index = ring.parameter_index
    partials = []
    for i in range(ring.nvars):
        if i == t_index:
            continue
        exps = tuple(1 if j == i else 0 for j in range(ring.nvars))
        partials.append(Polynomial(ring, {exps: Fraction(1)}))
    vectors = []
    seen = set()
    queue = list(generators)
    while queue:
        f = queue.pop()
        if f.is_zero():
            continue
        key = tuple(sorted(f.primitive().terms.items()))
        if key in seen:
            continue
        seen.add(key)
        vectors.append(f)
        for op in partials:
            queue.append(apolar_apply(op, f))
    return vectors


def symbolic_family_hilbert(generators):
    """Filtered HF of the family over Q(t), with Bareiss pivot certificates.

    One fraction-free elimination over Q[t] with columns sorted from the top
    degree down; the count of pivot columns above each degree cutoff yields
    the filtration ranks, and the recorded pivot polynomials certify every
    specialization at which they do not vanish.
    """
    ring = generators[0].ring
    vectors = _symbolic_closure_vectors(generators)
    stripped = [_strip_parameter(f) for f in vectors]
    base = RingContext([v for v in ring.variables if v != ring.parameter])
    columns = sorted({mono for vec in stripped for mono in vec},
                     key=base.monomial_key, reverse=True)
    col_index = {m: i for i, m in enumerate(columns)}
    zero = PARAMETER_RING.zero()
    matrix = []
    for vec in stripped:
        row = [zero] * len(columns)
        for mono, poly in vec.items():
            row[col_index[mono]] = poly
        matrix.append(row)
    # Column-ordered elimination: pivot columns of the first j columns give
    # the rank of that submatrix.
    pivot_cols, pivot_vals = _bareiss_column_profile(matrix, zero)
    top = max((sum(m) for m in columns), default=0)
    dims = []
    total = len(pivot_cols)
    for k in range(top + 1):
        above = sum(1 for c in pivot_cols if sum(columns[c]) > k)
        dims.append(total - above)
    hf = tuple(dims[k] - (dims[k - 1] if k else 0) for k in range(top + 1))
    pivots = tuple(str(p.primitive()) for p in pivot_vals)
    return hf, pivots


def _bareiss_column_profile(matrix, zero):
    """Fraction-free elimination, returning pivot column indices and values."""
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivot_cols = []
    pivot_vals = []
    prev = None
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                value = pivot * m[i][j] - m[i][c] * m[r][j]
                if prev is not None:
                    value = divexact(value, prev)
                m[i][j] = value
            m[i][c] = zero
        pivot_cols.append(c)
        pivot_vals.append(pivot)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return pivot_cols, pivot_vals


def _specialize_family(generators, value):
    ring = generators[0].ring
    base = RingContext([v for v in ring.variables if v != ring.parameter])
    t = ring.parameter_index
    out = []
    for g in generators:
        h = g.substitute_value(t, value)
        if not h.is_zero():
            out.append(h.project(base))
    return out


def _generic_annihilator_family(generators, operator_ring):
    """Ideal over T[t] whose generic fiber is the family's annihilator."""
    ring = generators[0].ring
    top = max(_xyz_degree(g) for g in generators)
    t_ext = RingContext(tuple(operator_ring.variables) + (ring.parameter,),
                        parameter=ring.parameter)
    columns = operator_ring.monomials_up_to_degree(top)
    zero = RatFunc.of(PARAMETER_RING.zero())
    one = RatFunc.of(PARAMETER_RING.one())
    row_map = {}
    rows = []
    t_index = ring.parameter_index
    for col, theta_exps in enumerate(columns):
        lifted = theta_exps[:t_index] + (0,) + theta_exps[t_index:]
        theta4 = Polynomial(ring, {lifted: Fraction(1)})
        for i, f in enumerate(generators):
            image = apolar_apply(theta4, f)
            for mono, poly in _strip_parameter(image).items():
                key = (i, mono)
                if key not in row_map:
                    row_map[key] = len(rows)
                    rows.append([zero] * len(columns))
                rows[row_map[key]][col] = RatFunc.of(poly)
    gens = []
    for vec in kernel_basis(rows, len(columns), zero=zero, one=one):
        denom = PARAMETER_RING.one()
        for entry in vec:
            if entry:
                g = polynomial_gcd(denom, entry.den)
                denom = divexact(denom * entry.den, g)
        terms = {}
        for j, entry in enumerate(vec):
            if not entry:
                continue
            coeff_poly = entry.num * divexact(denom, entry.den)
            for (e_t,), c in coeff_poly.terms.items():
                terms[columns[j] + (e_t,)] = c
        gens.append(Polynomial(t_ext, terms).primitive())
    gens.extend(maximal_ideal_power(t_ext, top + 1, exclude=(ring.parameter,)))
    return Ideal(t_ext, gens)


def family_limit_check(generators, samples=None, seed=0):
    """Verify constant Hilbert function along a family and compute its limit.

    ``generators`` live over the x,y,z,t ring with t the parameter.  The HF
    of the inverse system is computed at every nonzero sample and once
    symbolically over Q(t); the flat limit of the annihilator family is the
    t->0 fiber of its t-saturation, and it is compared against the
    annihilator of the t=0 inverse system (always containment, equality
    exactly when the fiber HF matches).
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("empty family")
    ring = generators[0].ring
    if ring.parameter is None:
        raise ValueError("family ring needs a parameter variable")
    if samples is None:
        samples = (1, 2, 3, random.Random(seed).randint(2, 97))
    samples = tuple(Fraction(s) for s in samples)
    if any(s == 0 for s in samples):
        raise ValueError("samples must avoid t = 0")

    sample_hfs = []
    for s in samples:
        fiber = _specialize_family(generators, s)
        hf = inverse_system_closure(fiber).hilbert_function if fiber else ()
        sample_hfs.append((s, hf))
    symbolic_hf, pivots = symbolic_family_hilbert(generators)
    offending = ()
    constant = True
    reference = symbolic_hf
    for s, hf in sample_hfs:
        if hf != reference:
            constant = False
            good = next((s2 for s2, hf2 in sample_hfs if hf2 == reference), None)
            offending = (good, s) if good is not None else (s,)
            break
    uniform = all(len(PARAMETER_RING.parse(p).terms) == 1 for p in pivots)

    operator_ring = dual_ring(RingContext(
        [v for v in ring.variables if v != ring.parameter]))
    family_ideal = _generic_annihilator_family(generators, operator_ring)
    t_name = ring.parameter
    saturated = saturate_by_element(family_ideal,
                                    family_ideal.ring.variable(t_name))
    limit = specialize_parameter(saturated, 0)

    fiber0 = _specialize_family(generators, 0)
    fiber_hf = inverse_system_closure(fiber0).hilbert_function if fiber0 else ()
    fiber_ann = apolar_ideal(fiber0, operator_ring) if fiber0 else None
    equals = False
    if fiber_ann is not None:
        if not fiber_ann.contains_ideal(limit):
            raise InternalInvariantError(
                "flat limit escaped the annihilator of the t=0 fiber")
        equals = fiber_ann == limit
        if constant and fiber_hf == symbolic_hf and not equals:
            raise InternalInvariantError(
                "constant Hilbert function but limit differs from the "
                "t=0 annihilator")
    return FamilyLimitReport(
        constant=constant,
        hilbert_function=symbolic_hf,
        sample_hilbert_functions=tuple(sample_hfs),
        offending_samples=offending,
        pivot_polynomials=pivots,
        uniform_for_all_nonzero_t=uniform,
        limit=limit,
        fiber_hilbert_function=fiber_hf,
        limit_equals_fiber_annihilator=equals,
    )
