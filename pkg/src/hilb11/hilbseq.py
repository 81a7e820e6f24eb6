"""Hilbert-function combinatorics.

Binomial expansions and the Macaulay growth bound, the eventual
nonincreasing rule for small values, persistence onset, enumeration of the
admissible local Hilbert functions for a given length, and the cubic-span
analysis for a set of quadric generators (dimension bound plus common
linear factor detection).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .linalg import SparseEchelon
from .polyops import polynomial_gcd


def trim(values):
    values = list(values)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class BinomialExpansion:
    """h = sum comb(k_i, i) with k_d > k_{d-1} > ... > k_delta >= delta >= 1."""

    value: int
    pairs: tuple  # ((k_d, d), ..., (k_delta, delta)), top index first

    def __post_init__(self):
        total = sum(comb(k, i) for k, i in self.pairs)
        if total != self.value:
            raise ValueError(f"expansion does not reconstruct {self.value}")

    def shifted_sum(self):
        return sum(comb(k + 1, i + 1) for k, i in self.pairs)


def binomial_expansion(h, d):
    """Greedy d-binomial expansion of a positive integer."""
    if h < 1:
        raise ValueError("binomial expansion needs h >= 1")
    if d < 1:
        raise ValueError("binomial expansion needs d >= 1")
    pairs = []
    remaining = h
    index = d
    while remaining > 0:
        k = index
        while comb(k + 1, index) <= remaining:
            k += 1
        pairs.append((k, index))
        remaining -= comb(k, index)
        index -= 1
        if index == 0 and remaining > 0:
            raise AssertionError("greedy expansion failed to terminate")
    return BinomialExpansion(value=h, pairs=tuple(pairs))


def macaulay_growth(h, d):
    """The bound h^<d> on the next Hilbert function value."""
    if h == 0:
        return 0
    return binomial_expansion(h, d).shifted_sum()


def check_admissible(values, n):
    """Macaulay's bound at every step: h(i+1) <= h(i)^<i> for i >= 1.

    Returns (ok, first violating index or None).  Requires h(0) = 1 and
    h(1) <= n.
    """
    values = trim(values)
    if not values or values[0] != 1:
        raise ValueError("a local Hilbert function starts with 1")
    if len(values) > 1 and values[1] > n:
        raise ValueError(f"h(1) = {values[1]} exceeds the embedding bound {n}")
    for i in range(1, len(values) - 1):
        if values[i + 1] > macaulay_growth(values[i], i):
            return False, i
    return True, None


def respects_nonincreasing_rule(values):
    """Once h(i) <= i for some i >= 1, the sequence must not increase again.

    Returns (ok, first violating index or None).
    """
    values = trim(values)
    triggered = False
    for i in range(1, len(values)):
        if triggered and values[i] > values[i - 1]:
            return False, i
        if values[i] <= i:
            triggered = True
    return True, None


def is_admissible_local(values, n):
    """Both the Macaulay bound and the nonincreasing rule."""
    ok_m, _ = check_admissible(values, n)
    ok_c, _ = respects_nonincreasing_rule(values)
    return ok_m and ok_c


def persistence_onset(values, d):
    """True when the Macaulay bound is attained at step d.

    Together with generation in degrees <= d this forces the bound to be
    attained forever after (persistence); callers supply the generation
    hypothesis.
    """
    values = trim(values)
    if d + 1 >= len(values):
        return False
    return values[d + 1] == macaulay_growth(values[d], d)


def enumerate_local_hilbert_functions(n, d):
    """All sequences (1, n, ...) summing to d that pass both growth rules.

    Depth-first search; each h(i+1) ranges over 1..min(remaining budget,
    Macaulay bound), capped by the previous value once some h(i) <= i has
    occurred.
    """
    if d < 1 + n:
        return []
    results = []

    def extend(seq, remaining, triggered):
        if remaining == 0:
            results.append(tuple(seq))
            return
        i = len(seq) - 1
        bound = macaulay_growth(seq[-1], i)
        if triggered:
            bound = min(bound, seq[-1])
        for value in range(min(bound, remaining), 0, -1):
            extend(seq + [value], remaining - value,
                   triggered or value <= i + 1)
        return

    extend([1, n], d - 1 - n, n <= 1)
    return sorted(results)


@dataclass(frozen=True)
class QuadricSpanReport:
    """Cubic span of a set of quadrics against the nk - C(k,2) bound."""

    count: int
    cubic_dimension: int
    lower_bound: int
    common_factor: object  # Polynomial or None

    @property
    def attains_bound(self):
        return self.cubic_dimension == self.lower_bound


def quadric_span_analysis(quadrics, n=None):
    """dim of the cubic part of (q_1..q_k), plus a shared linear factor if any.

    The dimension always satisfies dim >= nk - C(k,2); equality holds
    exactly when a common linear factor exists, which is detected by an
    exact gcd chain.
    """
    quadrics = list(quadrics)
    if not quadrics:
        raise ValueError("need at least one quadric")
    ring = quadrics[0].ring
    if n is None:
        n = ring.nvars
    if n != ring.nvars:
        raise ValueError("variable count does not match the ring")
    for q in quadrics:
        if q.is_zero() or not q.is_homogeneous() or q.total_degree() != 2:
            raise ValueError(f"{q} is not a nonzero homogeneous quadric")
    key = ring.monomial_key
    independence = SparseEchelon(colkey=key)
    for q in quadrics:
        if independence.insert(dict(q.terms)) is None:
            raise ValueError("quadrics are linearly dependent")
    k = len(quadrics)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    span = SparseEchelon(colkey=key)
    for q in quadrics:
        for v in ring.gens():
            span.insert(dict((v * q).terms))
    factor = quadrics[0]
    for q in quadrics[1:]:
        factor = polynomial_gcd(factor, q)
        if factor.is_constant():
            factor = None
            break
    if factor is not None and factor.total_degree() != 1:
        factor = None
    report = QuadricSpanReport(count=k, cubic_dimension=span.dimension,
                               lower_bound=n * k - comb(k, 2),
                               common_factor=factor)
    if report.cubic_dimension < report.lower_bound:
        raise AssertionError("cubic span fell below the proven lower bound")
    if report.attains_bound != (factor is not None):
        raise AssertionError("bound attainment disagrees with factor detection")
    return report
