"""Exact multivariate polynomials over the rationals.

Monomials are exponent tuples, coefficients are ``fractions.Fraction``, and
every polynomial is attached to a :class:`RingContext` fixing the variable
names and the monomial order.  Everything here is immutable after
construction, so values can be shared freely across threads.

The module also carries the two ring-level actions the rest of the package
is built on: the contraction (apolarity) action of a dual polynomial ring by
iterated partial differentiation, and the splitting of a polynomial into its
homogeneous layers (leading and initial forms).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ParseError, RingMismatchError

_EXPONENT_LIMIT = 1 << 16


class RingContext:
    """A polynomial ring Q[v1,...,vn] with a fixed monomial order.

    ``order`` is one of ``"grevlex"``, ``"lex"`` or ``"block"``; a block
    order eliminates the first ``block`` variables (grevlex inside each
    block).  ``parameter`` optionally names the deformation variable; it
    carries weight one under the total grading.
    """

    __slots__ = ("variables", "order", "block", "parameter", "index",
                 "_param_index", "_hash", "_degree_cache")

    def __init__(self, variables, order="grevlex", block=0, parameter=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if len(variables) > 8:
            raise ValueError("rings with more than 8 variables are not supported")
        if order not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {order!r}")
        if order == "block" and not 0 < block < len(variables):
            raise ValueError("block order needs 0 < block < number of variables")
        if parameter is not None and parameter not in variables:
            raise ValueError(f"parameter {parameter!r} is not a ring variable")
        self.variables = variables
        self.order = order
        self.block = block if order == "block" else 0
        self.parameter = parameter
        self.index = {v: i for i, v in enumerate(variables)}
        self._param_index = self.index[parameter] if parameter else None
        self._hash = hash((variables, order, self.block, parameter))
        self._degree_cache = {}

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def parameter_index(self):
        return self._param_index

    def __eq__(self, other):
        return (isinstance(other, RingContext)
                and self.variables == other.variables
                and self.order == other.order
                and self.block == other.block
                and self.parameter == other.parameter)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        extra = f", parameter={self.parameter!r}" if self.parameter else ""
        if self.order == "block":
            extra += f", block={self.block}"
        return f"RingContext({list(self.variables)!r}, order={self.order!r}{extra})"

    # -- monomial order ---------------------------------------------------

    def monomial_key(self, exps):
        """Sort key: larger key means larger monomial in this order."""
        if self.order == "lex":
            return exps
        if self.order == "grevlex":
            return _grevlex_key(exps)
        k = self.block
        return (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))

    # -- element constructors ---------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, value):
        value = Fraction(value)
        if value == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: value})

    def variable(self, name):
        exps = [0] * self.nvars
        exps[self.index[name]] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self):
        return [self.variable(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingMismatchError(f"expected {self.nvars} exponents, got {len(exps)}")
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {exps: coeff})

    def monomials_of_degree(self, degree):
        """All exponent tuples of the given total degree, order-descending."""
        cached = self._degree_cache.get(degree)
        if cached is None:
            out = list(_compositions(degree, self.nvars))
            out.sort(key=self.monomial_key, reverse=True)
            cached = tuple(out)
            self._degree_cache[degree] = cached
        return list(cached)

    def monomials_up_to_degree(self, degree):
        out = []
        for d in range(degree + 1):
            out.extend(_compositions(d, self.nvars))
        out.sort(key=self.monomial_key, reverse=True)
        return out

    def parse(self, text):
        return parse_polynomial(text, self)


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a):
    return sum(a)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        clean = {}
        for exps, coeff in terms.items():
            if coeff == 0:
                continue
            if len(exps) != ring.nvars:
                raise RingMismatchError("exponent tuple length mismatch")
            if any(e < 0 or e >= _EXPONENT_LIMIT for e in exps):
                raise ValueError(f"exponent out of range in {exps}")
            clean[exps] = coeff if type(coeff) is Fraction else Fraction(coeff)
        self.terms = clean
        self._sorted = None
        self._hash = None

    # -- views -------------------------------------------------------------

    def sorted_terms(self):
        """Terms as (exponents, coefficient), descending in the ring order."""
        if self._sorted is None:
            key = self.ring.monomial_key
            self._sorted = tuple(sorted(self.terms.items(),
                                        key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self):
        """Top total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order_degree(self):
        """Lowest total degree among terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def is_monomial(self):
        return len(self.terms) == 1

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.sorted_terms()[0][0]

    def leading_coefficient(self):
        return self.sorted_terms()[0][1]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def degree_in(self, index):
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def variables_used(self):
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(self.ring.variables[i])
        return used

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials over different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        self._check_ring(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = terms.get(exps, 0) + coeff
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: c * q for e, c in self.terms.items()})
        self._check_ring(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = monomial_mul(ea, eb)
                c = terms.get(e, 0) + ca * cb
                if c:
                    terms[e] = c
                else:
                    terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        q = Fraction(scalar)
        return Polynomial(self.ring, {e: c / q for e, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.constant(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self / lc

    def primitive(self):
        """Integer-content-free scalar multiple with positive leading coefficient."""
        if not self.terms:
            return self
        denom = math.lcm(*(c.denominator for c in self.terms.values()))
        numer = math.gcd(*(c.numerator * denom // c.denominator
                           for c in self.terms.values()))
        scale = Fraction(denom, numer)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    def map_coefficients(self, fn):
        return Polynomial(self.ring, {e: Fraction(fn(c)) for e, c in self.terms.items()})

    # -- grading -------------------------------------------------------------

    def graded_parts(self):
        """Homogeneous components as (degree, part), degree ascending."""
        buckets = {}
        for exps, coeff in self.terms.items():
            buckets.setdefault(sum(exps), {})[exps] = coeff
        return [(d, Polynomial(self.ring, t)) for d, t in sorted(buckets.items())]

    def leading_form(self):
        """Highest-degree homogeneous part."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading form")
        return self.graded_parts()[-1][1]

    def initial_form(self):
        """Lowest-degree homogeneous part."""
        if not self.terms:
            raise ValueError("zero polynomial has no initial form")
        return self.graded_parts()[0][1]

    # -- maps ----------------------------------------------------------------

    def evaluate(self, point):
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, "
                             f"ring has {self.ring.nvars} variables")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, exps):
                if e:
                    value *= x ** e
            total += value
        return total

    def substitute_value(self, index, value):
        """Substitute a rational for the variable at ``index`` (same ring)."""
        value = Fraction(value)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            c = coeff * value ** e if e else coeff
            if c == 0:
                continue
            new = exps[:index] + (0,) + exps[index + 1:]
            c_total = terms.get(new, 0) + c
            if c_total:
                terms[new] = c_total
            else:
                terms.pop(new, None)
        return Polynomial(self.ring, terms)

    def substitute_polynomials(self, images):
        """Ring map sending variable i to images[i] (all over one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        out = target.zero()
        for exps, coeff in self.terms.items():
            term = target.constant(coeff)
            for img, e in zip(images, exps):
                if e:
                    term = term * img ** e
            out = out + term
        return out

    def project(self, target, var_map=None):
        """Reinterpret over ``target``; dropped variables must not occur.

        ``var_map`` optionally maps source names to target names; by default
        names are matched verbatim.
        """
        slot = []
        for i, v in enumerate(self.ring.variables):
            name = (var_map or {}).get(v, v)
            slot.append(target.index.get(name))
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * target.nvars
            for i, e in enumerate(exps):
                if not e:
                    continue
                if slot[i] is None:
                    raise RingMismatchError(
                        f"variable {self.ring.variables[i]!r} does not exist in target ring")
                new[slot[i]] = e
            key = tuple(new)
            c = terms.get(key, 0) + coeff
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return Polynomial(target, terms)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        names = self.ring.variables
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = [first_body if first_sign == "+" else "-" + first_body]
        for sign, body in chunks[1:]:
            out.append(sign + body)
        return "".join(out)

    def __repr__(self):
        return f"<{self} over {'/'.join(self.ring.variables)}>"


# -- the apolarity (contraction) action --------------------------------------


def apolar_apply(theta, f):
    """Contract ``f`` by the differential operator ``theta``.

    ``theta`` lives in the dual ring acting by partial differentiation, so a
    dual monomial with exponents ``a`` sends ``x^b`` to
    ``prod_i b_i!/(b_i-a_i)! * x^(b-a)`` (zero unless ``a <= b``).  The result
    lives in the ring of ``f``.
    """
    if theta.ring.nvars != f.ring.nvars:
        raise RingMismatchError(
            f"operator ring has {theta.ring.nvars} variables, "
            f"argument ring has {f.ring.nvars}")
    terms = {}
    for a, ca in theta.terms.items():
        for b, cb in f.terms.items():
            if not monomial_divides(a, b):
                continue
            scale = 1
            for ai, bi in zip(a, b):
                if ai:
                    scale *= math.perm(bi, ai)
            e = monomial_div(b, a)
            c = terms.get(e, 0) + ca * cb * scale
            if c:
                terms[e] = c
            else:
                terms.pop(e, None)
    return Polynomial(f.ring, terms)


def apolar_pairing(theta, f):
    """The perfect pairing T_d x S_d -> Q: constant term of theta . f."""
    return apolar_apply(theta, f).constant_term()


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z])(?:\^(?P<exp>\d+))?"
                    r"|(?P<op>[+*-]))")


def parse_polynomial(text, ring):
    """Parse the shared text grammar into a polynomial over ``ring``.

    Coefficients are integers or ``p/q``; ``^`` marks powers; ``*`` between
    factors is optional; terms are separated by ``+`` and ``-``.
    """
    if not text or not text.strip():
        raise ParseError("empty polynomial text")
    pos = 0
    result = ring.zero()
    # Current term state; None marks "no term under construction".
    coeff = None
    exps = None
    sign = 1
    pending_sign = 1
    dangling_op = False

    def flush():
        nonlocal result, coeff, exps, sign
        if coeff is None:
            return
        term = Polynomial(ring, {tuple(exps): Fraction(coeff) * sign})
        result = result + term
        coeff = None
        exps = None
        sign = 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                if coeff is None:
                    raise ParseError(f"misplaced '*' in {text!r}")
                continue
            flush()
            pending_sign = -pending_sign if op == "-" else pending_sign
            dangling_op = True
            continue
        dangling_op = False
        if coeff is None:
            coeff = Fraction(1)
            exps = [0] * ring.nvars
            sign = pending_sign
            pending_sign = 1
        if m.group("num"):
            coeff *= Fraction(m.group("num"))
        else:
            name = m.group("var")
            if name not in ring.index:
                raise ParseError(f"unknown variable {name!r} for ring "
                                 f"{'/'.join(ring.variables)}")
            exps[ring.index[name]] += int(m.group("exp") or 1)
    if dangling_op:
        raise ParseError(f"dangling sign in {text!r}")
    flush()
    return result


def parse_generators(text, ring, separator=","):
    """Parse a separator-delimited list of polynomials."""
    return [parse_polynomial(part, ring) for part in text.split(separator) if part.strip()]
