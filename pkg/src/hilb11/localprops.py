"""Invariants of zero-dimensional ideals near the origin.

Degree and Krull-dimension-zero detection from the Groebner staircase, the
local Hilbert function of an ideal supported at the origin, the homogeneous
ideal of lowest-degree forms, socle dimension, and the tangent-space
dimension dim Hom(I, T/I) computed from Schreyer syzygies of the reduced
basis with exact fraction-free rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError, NotMPrimaryError, NotZeroDimensionalError
from .groebner import Ideal, maximal_ideal_power, syzygies_of_basis
from .linalg import SparseEchelon, fraction_rows_to_int, sparse_int_rank
from .rings import Polynomial, monomial_divides

M_PRIMARY_EXPONENT_CAP = 24


def _pure_power_variables(I):
    """Indices of variables having a pure power among the leading monomials."""
    found = set()
    for lm in I.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            found.add(support[0])
        elif not support:
            found.update(range(I.ring.nvars))  # unit ideal
    return found


def is_zero_dimensional(I):
    return len(_pure_power_variables(I)) == I.ring.nvars


def standard_monomials(I):
    """Monomials outside the leading-term staircase, a basis of T/I."""
    if not is_zero_dimensional(I):
        raise NotZeroDimensionalError(f"{I!r} is not zero-dimensional")
    leads = I.leading_monomials()
    n = I.ring.nvars
    seen = set()
    queue = [(0,) * n]
    out = []
    while queue:
        mono = queue.pop()
        if mono in seen:
            continue
        seen.add(mono)
        if any(monomial_divides(lm, mono) for lm in leads):
            continue
        out.append(mono)
        for i in range(n):
            queue.append(mono[:i] + (mono[i] + 1,) + mono[i + 1:])
    out.sort(key=I.ring.monomial_key)
    return out


def dimension_and_degree(I):
    """(is_zero_dimensional, degree); degree is None in positive dimension."""
    if not is_zero_dimensional(I):
        return False, None
    return True, len(standard_monomials(I))


def degree(I):
    zero_dim, d = dimension_and_degree(I)
    if not zero_dim:
        raise NotZeroDimensionalError(f"{I!r} is not zero-dimensional")
    return d


def m_primary_exponent(I):
    """Minimal N with m^N contained in I; certifies support = origin.

    Every monomial of candidate degree N is tested for membership, starting
    just above the top standard-monomial degree and capped at
    ``M_PRIMARY_EXPONENT_CAP``.  Raises NotMPrimaryError with a witness
    monomial otherwise.
    """
    ring = I.ring
    for g in I.generators:
        if g.constant_term() != 0:
            raise NotMPrimaryError(
                f"generator {g} does not vanish at the origin", witness=str(g))
    if not is_zero_dimensional(I):
        raise NotMPrimaryError("ideal is not zero-dimensional")
    std = standard_monomials(I)
    start = max(1, 1 + max((sum(m) for m in std), default=0))
    witness = None
    for n in range(start, M_PRIMARY_EXPONENT_CAP + 1):
        witness = None
        for exps in ring.monomials_of_degree(n):
            if not I.normal_form(ring.monomial(exps)).is_zero():
                witness = exps
                break
        if witness is None:
            return n
    raise NotMPrimaryError(
        f"m^{M_PRIMARY_EXPONENT_CAP} is not contained in the ideal; "
        f"witness monomial {Polynomial(ring, {witness: Fraction(1)})}",
        witness=str(Polynomial(ring, {witness: Fraction(1)})))


def is_m_primary(I):
    try:
        m_primary_exponent(I)
        return True
    except NotMPrimaryError:
        return False


def local_hilbert_function(I):
    """h(e) = dim (m^e + I)/(m^(e+1) + I), trimmed after the last positive entry.

    Computed inside T/m^N for the certified exponent N: the filtration step
    dimensions are ranks of normal forms of all monomials of degree >= e.
    """
    ring = I.ring
    n_exp = m_primary_exponent(I)
    key = ring.monomial_key
    ech = SparseEchelon(colkey=key)
    dims = [0] * (n_exp + 1)
    for e in range(n_exp - 1, -1, -1):
        for exps in ring.monomials_of_degree(e):
            nf = I.normal_form(ring.monomial(exps))
            if not nf.is_zero():
                ech.insert(dict(nf.terms))
        dims[e] = ech.dimension
    values = [dims[e] - dims[e + 1] for e in range(n_exp)]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _ideal_span_below(I, bound):
    """Echelon of the vector space { f in I : deg f < bound }.

    Products of reduced-basis elements by monomials of complementary degree
    span the space exactly, because division against a degree-compatible
    basis never raises the degree.
    """
    ring = I.ring
    ech = SparseEchelon(colkey=ring.monomial_key)
    for g in I.groebner_basis():
        dg = g.total_degree()
        for shift in range(bound - dg):
            for exps in ring.monomials_of_degree(shift):
                ech.insert(dict((Polynomial(ring, {exps: Fraction(1)}) * g).terms))
    return ech


class _ReversedKey:
    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return other.key < self.key

    def __eq__(self, other):
        return self.key == other.key


def initial_ideal_lowest(I):
    """The homogeneous ideal generated by lowest-degree forms of elements.

    Echelonizing I below the socle exponent with pivots on the *lowest*
    monomials makes the initial forms of the echelon vectors span the
    initial ideal degree by degree; m^N closes it off at the top.  The
    construction is guarded by the degree-preservation identity.
    """
    ring = I.ring
    n_exp = m_primary_exponent(I)
    ech = SparseEchelon(colkey=lambda m: _ReversedKey(ring.monomial_key(m)))
    for g in I.groebner_basis():
        dg = g.total_degree()
        for shift in range(n_exp - dg):
            for exps in ring.monomials_of_degree(shift):
                ech.insert(dict((Polynomial(ring, {exps: Fraction(1)}) * g).terms))
    gens = []
    for vec in ech.pivots.values():
        poly = Polynomial(ring, vec)
        gens.append(poly.initial_form())
    gens.extend(maximal_ideal_power(ring, n_exp))
    result = Ideal(ring, gens)
    if degree(result) != degree(I):
        raise InternalInvariantError(
            "initial ideal changed the degree: "
            f"{degree(result)} != {degree(I)}")
    return result


def embedding_dimension(I):
    """n minus the number of independent linear forms vanishing on the scheme."""
    hf = local_hilbert_function(I)
    return hf[1] if len(hf) > 1 else 0


@dataclass(frozen=True)
class LocalProfile:
    """Bundle of the local invariants of an m-primary ideal."""

    ideal: Ideal
    socle_exponent: int
    degree: int
    hilbert_function: tuple
    embedding_dimension: int


def local_profile(I):
    n_exp = m_primary_exponent(I)
    hf = local_hilbert_function(I)
    d = degree(I)
    if sum(hf) != d:
        raise InternalInvariantError(
            f"local Hilbert function {hf} does not sum to the degree {d}")
    return LocalProfile(ideal=I, socle_exponent=n_exp, degree=d,
                        hilbert_function=hf,
                        embedding_dimension=hf[1] if len(hf) > 1 else 0)


# -- linear algebra over the quotient algebra -----------------------------------


def _quotient_coordinates(I):
    std = standard_monomials(I)
    index = {m: i for i, m in enumerate(std)}
    return std, index


def _nf_cache(I):
    cache = {}

    def nf_monomial(exps):
        hit = cache.get(exps)
        if hit is None:
            hit = I.normal_form(I.ring.monomial(exps))
            cache[exps] = hit
        return hit

    return nf_monomial


def socle_dimension(I):
    """dim (I : m)/I, the socle of the local quotient algebra."""
    std, index = _quotient_coordinates(I)
    nf_monomial = _nf_cache(I)
    d = len(std)
    rows = []
    for var in range(I.ring.nvars):
        shift = tuple(1 if i == var else 0 for i in range(I.ring.nvars))
        for k in range(d):
            rows.append([Fraction(0)] * d)
        block = rows[-d:]
        for j, mono in enumerate(std):
            product = tuple(a + b for a, b in zip(mono, shift))
            for exps, coeff in nf_monomial(product).terms.items():
                block[index[exps]][j] = coeff
    from .linalg import kernel_basis

    return len(kernel_basis(rows, d))


def tangent_dimension(I):
    """dim Hom(I, T/I), the Zariski tangent space at the ideal.

    Unknowns are images of the reduced-basis generators in T/I; every
    Schreyer syzygy s imposes sum_i s_i v_i = 0 in T/I.  The answer is
    r*d - rank of that exact linear system.
    """
    zero_dim, d = dimension_and_degree(I)
    if not zero_dim:
        raise NotZeroDimensionalError("tangent dimension needs a zero-dimensional ideal")
    gb = list(I.groebner_basis())
    r = len(gb)
    if r == 0 or d == 0:
        return 0
    std, index = _quotient_coordinates(I)
    nf_monomial = _nf_cache(I)
    syzygies = syzygies_of_basis(gb)
    rows = []
    for syz in syzygies:
        # Row block: one constraint per standard monomial coordinate.
        block = {}
        for i, s_i in enumerate(syz):
            if s_i.is_zero():
                continue
            for j, mono in enumerate(std):
                acc = {}
                for exps, coeff in s_i.terms.items():
                    product = tuple(a + b for a, b in zip(exps, mono))
                    for e2, c2 in nf_monomial(product).terms.items():
                        value = acc.get(e2, 0) + coeff * c2
                        if value:
                            acc[e2] = value
                        else:
                            acc.pop(e2, None)
                for e2, value in acc.items():
                    block.setdefault(index[e2], {})[i * d + j] = value
        for row in block.values():
            if row:
                rows.append(row)
    rank = sparse_int_rank(fraction_rows_to_int(rows))
    return r * d - rank
