"""Buchberger engine and ideal algebra.

Reduced Groebner bases with the normal (lowest lcm degree first) selection
strategy and Buchberger's coprime and chain criteria; intermediate basis
elements are kept as primitive integer polynomials, clearing denominators
and dividing by content after every reduction so big-integer growth stays
bounded.  On top of the engine: normal forms, ideal equality through the
canonical reduced basis, intersection and colon by the auxiliary-variable
elimination trick, parameter specialization, and Schreyer-style syzygies.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .errors import RingMismatchError
from .polyops import divexact
from .rings import (
    Polynomial,
    RingContext,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

# -- reduction ------------------------------------------------------------------


def _basis_info(basis):
    return [(g.leading_monomial(), g.leading_coefficient(), g.terms) for g in basis]


def _normal_form_terms(terms, info, ring, quotients=None):
    """Full remainder of a term-dict against prepared basis info."""
    key = ring.monomial_key
    work = dict(terms)
    remainder = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for idx, (lm, lc, gterms) in enumerate(info):
            if monomial_divides(lm, m):
                factor = c / lc
                shift = monomial_div(m, lm)
                for e, gc in gterms.items():
                    if e == lm:
                        continue
                    tgt = monomial_mul(e, shift)
                    new = work.get(tgt, 0) - factor * gc
                    if new:
                        work[tgt] = new
                    else:
                        work.pop(tgt, None)
                if quotients is not None:
                    q = quotients[idx]
                    q[shift] = q.get(shift, 0) + factor
                break
        else:
            remainder[m] = c
    return remainder


def normal_form(f, basis):
    """Remainder of f on division by ``basis`` (full tail reduction)."""
    if not basis:
        return f
    rem = _normal_form_terms(f.terms, _basis_info(basis), f.ring)
    return Polynomial(f.ring, rem)


def normal_form_with_quotients(f, basis):
    """Remainder plus quotients q_i with f = sum q_i b_i + remainder."""
    quotients = [{} for _ in basis]
    rem = _normal_form_terms(f.terms, _basis_info(basis), f.ring, quotients)
    return (Polynomial(f.ring, rem),
            [Polynomial(f.ring, q) for q in quotients])


def s_polynomial(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = monomial_lcm(lf, lg)
    mf = Polynomial(f.ring, {monomial_div(lcm, lf): 1 / f.leading_coefficient()})
    mg = Polynomial(g.ring, {monomial_div(lcm, lg): 1 / g.leading_coefficient()})
    return mf * f - mg * g


# -- Buchberger -----------------------------------------------------------------


def interreduce(polys):
    """Reduce each polynomial against the earlier kept ones (cheap pre-pass)."""
    if not polys:
        return []
    ring = polys[0].ring
    key = ring.monomial_key
    ordered = sorted((p.primitive() for p in polys if not p.is_zero()),
                     key=lambda g: key(g.leading_monomial()))
    kept = []
    info = []
    for p in ordered:
        r = Polynomial(ring, _normal_form_terms(p.terms, info, ring)) if info else p
        if not r.is_zero():
            r = r.primitive()
            kept.append(r)
            info.append((r.leading_monomial(), r.leading_coefficient(), r.terms))
    return kept


def buchberger(generators):
    """A (not yet reduced) Groebner basis of the generated ideal."""
    import heapq

    basis = interreduce(generators)
    if not basis:
        return []
    ring = basis[0].ring
    key = ring.monomial_key
    leads = [g.leading_monomial() for g in basis]
    info = [(g.leading_monomial(), g.leading_coefficient(), g.terms)
            for g in basis]

    heap = []
    pending = set()

    def push(i, j):
        lcm = monomial_lcm(leads[i], leads[j])
        heapq.heappush(heap, (sum(lcm), key(lcm), i, j))
        pending.add((i, j))

    for i in range(len(basis)):
        for j in range(i):
            push(j, i)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        lcm = monomial_lcm(li, lj)
        # Coprime leading terms: the S-polynomial reduces to zero.
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # Chain criterion: some k divides the lcm and both side pairs are done.
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not monomial_divides(leads[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and \
               (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j])
        r = Polynomial(ring, _normal_form_terms(s.terms, info, ring))
        if r.is_zero():
            continue
        r = r.primitive()
        n = len(basis)
        basis.append(r)
        leads.append(r.leading_monomial())
        info.append((r.leading_monomial(), r.leading_coefficient(), r.terms))
        for m in range(n):
            push(m, n)
    return basis


def reduce_groebner_basis(basis):
    """The unique reduced basis: minimal leading terms, reduced tails, monic."""
    if not basis:
        return []
    ring = basis[0].ring
    key = ring.monomial_key
    ordered = sorted(basis, key=lambda g: key(g.leading_monomial()))
    minimal = []
    for g in ordered:
        lm = g.leading_monomial()
        if any(monomial_divides(h.leading_monomial(), lm) for h in minimal):
            continue
        minimal.append(g)
    changed = True
    while changed:
        changed = False
        for idx in range(len(minimal)):
            others = minimal[:idx] + minimal[idx + 1:]
            reduced = normal_form(minimal[idx], others) if others else minimal[idx]
            reduced = reduced.monic()
            if reduced != minimal[idx]:
                minimal[idx] = reduced
                changed = True
    minimal.sort(key=lambda g: key(g.leading_monomial()), reverse=True)
    return minimal


def is_groebner_basis(basis):
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i):
            if not normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero():
                return False
    return True


# -- ideals ----------------------------------------------------------------------


class Ideal:
    """An ideal given by generators, with a cached reduced Groebner basis.

    The basis is computed at most once behind a lock; afterwards all reads
    are safe to share across threads.  Equality of ideals is equality of the
    canonical reduced bases.
    """

    __slots__ = ("ring", "generators", "_gb", "_nf_info", "_lock")

    def __init__(self, ring, generators):
        self.ring = ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError("generator over a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._nf_info = None
        self._lock = threading.Lock()

    def groebner_basis(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    gb = tuple(reduce_groebner_basis(buchberger(self.generators)))
                    self._nf_info = _basis_info(gb)
                    self._gb = gb
        return self._gb

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.groebner_basis()]

    def normal_form(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.ring != self.ring:
            raise RingMismatchError("polynomial over a different ring")
        gb = self.groebner_basis()
        if not gb:
            return f
        return Polynomial(self.ring, _normal_form_terms(f.terms, self._nf_info, self.ring))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def is_zero_ideal(self):
        return not self.groebner_basis()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:6])
        if len(self.generators) > 6:
            gens += ", ..."
        return f"Ideal({gens})"

    def with_extra_generators(self, polys):
        extra = [self.ring.parse(p) if isinstance(p, str) else p for p in polys]
        return Ideal(self.ring, list(self.generators) + extra)


def ideal(ring, *gens):
    flat = []
    for g in gens:
        if isinstance(g, (list, tuple)):
            flat.extend(g)
        else:
            flat.append(g)
    return Ideal(ring, flat)


def maximal_ideal_power(ring, power, exclude=()):
    """Generators of m^power, m the irrelevant ideal of the non-excluded variables."""
    names = [v for v in ring.variables if v not in exclude]
    idx = [ring.index[v] for v in names]
    gens = []
    for exps in _bounded_compositions(power, len(idx)):
        full = [0] * ring.nvars
        for slot, e in zip(idx, exps):
            full[slot] = e
        gens.append(ring.monomial(tuple(full)))
    return gens


def _bounded_compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _bounded_compositions(total - first, parts - 1):
            yield (first,) + rest


# -- elimination, intersection, colon, saturation ---------------------------------


def _fresh_variable_name(ring):
    for candidate in ("w", "u", "v", "s"):
        if candidate not in ring.index:
            return candidate
    raise ValueError("no free auxiliary variable name")


def eliminate_first_block(generators, elim_ring, target_ring, block):
    """GB of the elimination ideal, projected into ``target_ring``."""
    gb = reduce_groebner_basis(buchberger(generators))
    kept = []
    for g in gb:
        if all(all(e == 0 for e in exps[:block]) for exps in g.terms):
            kept.append(g.project(target_ring))
    return kept


def intersect(I, J):
    """I cap J through one auxiliary variable and a block elimination order."""
    if I.ring != J.ring:
        raise RingMismatchError("intersection needs a common ring")
    ring = I.ring
    w = _fresh_variable_name(ring)
    elim = RingContext((w,) + ring.variables, order="block", block=1)
    wvar = elim.variable(w)
    lifted = []
    for g in I.generators:
        lifted.append(wvar * g.project(elim))
    one_minus_w = elim.one() - wvar
    for g in J.generators:
        lifted.append(one_minus_w * g.project(elim))
    kept = eliminate_first_block(lifted, elim, ring, 1)
    return Ideal(ring, kept)


def colon_by_element(I, f):
    """(I : f) computed as (I cap (f)) divided by f."""
    if isinstance(f, str):
        f = I.ring.parse(f)
    if f.is_zero():
        raise ValueError("colon by the zero element")
    inter = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divexact(g, f) for g in inter.generators])


def saturate_by_element(I, f):
    """(I : f^infinity) by iterating the colon until it stabilizes."""
    current = I
    while True:
        succ = colon_by_element(current, f)
        if succ == current:
            return current
        current = succ


def specialize_parameter(I, value):
    """Substitute the ring's parameter variable and drop it from the ring."""
    ring = I.ring
    if ring.parameter is None:
        raise ValueError("ring has no declared parameter variable")
    t = ring.parameter_index
    target = RingContext(tuple(v for v in ring.variables if v != ring.parameter),
                         order=ring.order)
    gens = []
    for g in I.generators:
        h = g.substitute_value(t, value)
        if not h.is_zero():
            gens.append(h.project(target))
    return Ideal(target, gens)


def extend_with_parameter(ring, name="t"):
    """The ring with a trailing parameter variable adjoined."""
    if name in ring.index:
        raise ValueError(f"variable {name!r} already present")
    return RingContext(ring.variables + (name,), order=ring.order, parameter=name)


# -- syzygies ----------------------------------------------------------------------


class SyzygyVector:
    """A relation sum_i coords[i] * generators[i] = 0."""

    __slots__ = ("coordinates",)

    def __init__(self, coordinates):
        self.coordinates = tuple(coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def is_zero(self):
        return all(c.is_zero() for c in self.coordinates)

    def degree(self, generator_degrees):
        """Degree as an element of the shifted free module (homogeneous case)."""
        degs = {c.total_degree() + d
                for c, d in zip(self.coordinates, generator_degrees)
                if not c.is_zero()}
        if len(degs) > 1:
            raise ValueError("syzygy is not homogeneous")
        return degs.pop() if degs else None

    def __repr__(self):
        return "Syzygy(" + ", ".join(str(c) for c in self.coordinates) + ")"


def syzygies_of_basis(basis):
    """Schreyer generators of the syzygy module of a Groebner basis.

    Every S-pair is lifted through its reduction to zero; no pair criteria
    are applied here since pruned pairs still carry needed module generators.
    """
    if not basis:
        return []
    ring = basis[0].ring
    out = []
    for i in range(len(basis)):
        for j in range(i):
            li = basis[i].leading_monomial()
            lj = basis[j].leading_monomial()
            lcm = monomial_lcm(li, lj)
            mi = Polynomial(ring, {monomial_div(lcm, li):
                                   1 / basis[i].leading_coefficient()})
            mj = Polynomial(ring, {monomial_div(lcm, lj):
                                   1 / basis[j].leading_coefficient()})
            s = mi * basis[i] - mj * basis[j]
            r, quotients = normal_form_with_quotients(s, basis)
            if not r.is_zero():
                raise ValueError("input is not a Groebner basis")
            coords = [-q for q in quotients]
            coords[i] = coords[i] + mi
            coords[j] = coords[j] - mj
            vec = SyzygyVector(coords)
            if not vec.is_zero():
                out.append(vec)
    return out


def _buchberger_tracked(generators):
    """Groebner basis with coordinates on the original generators.

    Returns (basis, rows) with basis[k] = sum_j rows[k][j] * generators[j].
    """
    ring = generators[0].ring
    basis = []
    rows = []
    for idx, g in enumerate(generators):
        if g.is_zero():
            continue
        basis.append(g)
        unit = [ring.zero()] * len(generators)
        unit[idx] = ring.one()
        rows.append(unit)
    pending = {(j, i) for i in range(len(basis)) for j in range(i)}
    while pending:
        i, j = min(pending)
        pending.discard((i, j))
        li = basis[i].leading_monomial()
        lj = basis[j].leading_monomial()
        lcm = monomial_lcm(li, lj)
        mi = Polynomial(ring, {monomial_div(lcm, li):
                               1 / basis[i].leading_coefficient()})
        mj = Polynomial(ring, {monomial_div(lcm, lj):
                               1 / basis[j].leading_coefficient()})
        s = mi * basis[i] - mj * basis[j]
        r, quotients = normal_form_with_quotients(s, basis)
        if r.is_zero():
            continue
        row = [mi * a - mj * b for a, b in zip(rows[i], rows[j])]
        for q, qrow in zip(quotients, rows):
            if q.is_zero():
                continue
            row = [a - q * b for a, b in zip(row, qrow)]
        n = len(basis)
        basis.append(r)
        rows.append(row)
        pending.update((m, n) for m in range(n))
    return basis, rows


def syzygy_basis(I):
    """Generating syzygies on the ideal's own generator list.

    Combines the Schreyer syzygies of a tracked Groebner basis with the
    rows of (Id - C*A), where A expresses the basis on the generators and C
    the generators on the basis.
    """
    gens = list(I.generators)
    if not gens:
        return []
    ring = I.ring
    basis, rows = _buchberger_tracked(gens)
    division = []
    for g in gens:
        r, quotients = normal_form_with_quotients(g, basis)
        if not r.is_zero():
            raise ValueError("generator failed to reduce against its own basis")
        division.append(quotients)
    out = []
    for s in syzygies_of_basis(basis):
        coords = [ring.zero()] * len(gens)
        for k, sk in enumerate(s):
            if sk.is_zero():
                continue
            for j in range(len(gens)):
                if not rows[k][j].is_zero():
                    coords[j] = coords[j] + sk * rows[k][j]
        vec = SyzygyVector(coords)
        if not vec.is_zero():
            out.append(vec)
    for i in range(len(gens)):
        coords = [ring.zero()] * len(gens)
        coords[i] = ring.one()
        for k in range(len(basis)):
            q = division[i][k]
            if q.is_zero():
                continue
            for j in range(len(gens)):
                if not rows[k][j].is_zero():
                    coords[j] = coords[j] - q * rows[k][j]
        vec = SyzygyVector(coords)
        if not vec.is_zero():
            out.append(vec)
    for vec in out:
        total = ring.zero()
        for c, g in zip(vec, gens):
            total = total + c * g
        if not total.is_zero():
            raise ValueError("internal error: produced a non-syzygy")
    return out


def minimal_syzygy_degrees(I):
    """Degrees of a minimal generating set of the syzygy module.

    Requires homogeneous generators.  Returns a sorted list of (degree,
    count) pairs in the shifted grading deg(e_i) = deg(generator_i).
    """
    from .linalg import SparseEchelon

    gens = list(I.generators)
    if any(not g.is_homogeneous() for g in gens):
        raise ValueError("minimal syzygy degrees need homogeneous generators")
    gen_deg = [g.total_degree() for g in gens]
    raw = syzygy_basis(I)
    graded = []
    for vec in raw:
        # Split into homogeneous syzygies; component i of a degree-d syzygy
        # is homogeneous of degree d - deg(generator_i).
        buckets = {}
        for i, c in enumerate(vec):
            for d, piece in c.graded_parts():
                buckets.setdefault(d + gen_deg[i], {})[i] = piece
        for d, coords in buckets.items():
            full = [coords.get(i, I.ring.zero()) for i in range(len(gens))]
            vec_d = SyzygyVector(full)
            if not vec_d.is_zero():
                graded.append((d, vec_d))
    if not graded:
        return []
    ring = I.ring
    max_deg = max(d for d, _ in graded)

    def vector_coords(vec, degree):
        """Coordinates of a degree-``degree`` module element, sparse."""
        out = {}
        for i, c in enumerate(vec):
            for exps, coeff in c.terms.items():
                out[(i, exps)] = coeff
        return out

    def span_at(degree, vectors):
        ech = SparseEchelon(colkey=lambda col: (col[0], ring.monomial_key(col[1])))
        for d, vec in vectors:
            if d > degree:
                continue
            shift = degree - d
            for exps in ring.monomials_of_degree(shift):
                mono = Polynomial(ring, {exps: Fraction(1)})
                shifted = SyzygyVector([mono * c for c in vec])
                ech.insert(vector_coords(shifted, degree))
        return ech.dimension

    counts = []
    for degree in range(min(d for d, _ in graded), max_deg + 1):
        all_dim = span_at(degree, graded)
        lower_dim = span_at(degree, [(d, v) for d, v in graded if d < degree])
        if all_dim > lower_dim:
            counts.append((degree, all_dim - lower_dim))
    return counts
