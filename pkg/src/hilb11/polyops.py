"""Polynomial utilities beyond ring arithmetic: exact division and gcd.

The gcd is the classical primitive-pseudo-remainder recursion; inputs in
this package are tiny (quadrics in three variables, univariate pivots in the
deformation parameter), so no subresultant refinements are needed.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Polynomial, monomial_div, monomial_divides


def divexact(f, g):
    """Return q with f = q*g, raising ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    quotient = {}
    rest = dict(f.terms)
    g_lead = g.leading_monomial()
    g_lc = g.leading_coefficient()
    key = ring.monomial_key
    while rest:
        lead = max(rest, key=key)
        if not monomial_divides(g_lead, lead):
            raise ValueError(f"{g} does not divide {f}")
        mono = monomial_div(lead, g_lead)
        coeff = rest[lead] / g_lc
        quotient[mono] = coeff
        for e, c in g.terms.items():
            target = tuple(x + y for x, y in zip(mono, e))
            new = rest.get(target, 0) - coeff * c
            if new:
                rest[target] = new
            else:
                rest.pop(target, None)
    return Polynomial(ring, quotient)


def divides(g, f):
    try:
        divexact(f, g)
        return True
    except ValueError:
        return False


def _coefficients_in(f, index):
    """View f as univariate in variable ``index``: degree -> coefficient poly."""
    buckets = {}
    for exps, coeff in f.terms.items():
        d = exps[index]
        reduced = exps[:index] + (0,) + exps[index + 1:]
        bucket = buckets.setdefault(d, {})
        bucket[reduced] = bucket.get(reduced, Fraction(0)) + coeff
    return {d: Polynomial(f.ring, t) for d, t in buckets.items() if any(t.values())}


def _attach(coeff_poly, index, power):
    terms = {}
    for exps, c in coeff_poly.terms.items():
        terms[exps[:index] + (power,) + exps[index + 1:]] = c
    return Polynomial(coeff_poly.ring, terms)


def _content_and_primitive(f, index):
    coeffs = _coefficients_in(f, index)
    content = None
    for part in coeffs.values():
        content = part if content is None else polynomial_gcd(content, part)
    return content, divexact(f, content)


def polynomial_gcd(f, g):
    """Gcd over Q[vars], normalized monic in the ring's monomial order."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    ring = f.ring
    main = None
    for i in range(ring.nvars):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            main = i
            break
    if main is None:
        return ring.one()
    cont_f, pp_f = _content_and_primitive(f, main)
    cont_g, pp_g = _content_and_primitive(g, main)
    cont = polynomial_gcd(cont_f, cont_g)
    a, b = pp_f, pp_g
    while not b.is_zero():
        a, b = b, _pseudo_remainder(a, b, main)
        if not b.is_zero():
            _, b = _content_and_primitive(b, main)
    if a.degree_in(main) == 0:
        # Primitive parts are coprime in the main variable.
        a = a.ring.one()
    else:
        _, a = _content_and_primitive(a, main)
    return (cont * a).monic()


class RatFunc:
    """Element of the fraction field of a polynomial ring.

    Normalized so the denominator is monic and coprime to the numerator;
    supports just enough arithmetic to run row reduction over Q(t).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = num.ring.one()
            else:
                g = polynomial_gcd(num, den)
                if not g.is_constant():
                    num = divexact(num, g)
                    den = divexact(den, g)
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def of(cls, poly):
        return cls(poly, None)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.num == self.den * other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __repr__(self):
        if self.den == self.den.ring.one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _pseudo_remainder(f, g, index):
    df = f.degree_in(index)
    dg = g.degree_in(index)
    if df < dg:
        return f
    g_coeffs = _coefficients_in(g, index)
    lc_g = g_coeffs[dg]
    while not f.is_zero() and f.degree_in(index) >= dg:
        df = f.degree_in(index)
        f_coeffs = _coefficients_in(f, index)
        lc_f = f_coeffs[df]
        shift = _attach(lc_f, index, df - dg)
        f = f * lc_g - g * shift
    return f
