"""Exact linear algebra: RREF and kernels over a field, fraction-free ranks.

Three representations are used, matched to the callers:

* dense rows of ``Fraction`` (or any exact field element) for kernels of
  contraction matrices,
* sparse dict-vectors keyed by arbitrary hashable columns for echelon spans
  of polynomial collections,
* sparse integer rows for the large syzygy-constraint ranks, eliminated
  fraction-free with content reduction after every update.

``bareiss`` is the classical one-step fraction-free elimination; it works
over any integral domain given an exact-division callback and reports the
pivot entries, which the deformation-family checks record as certificates
that a specialization preserves rank.
"""

from __future__ import annotations

import math
from fractions import Fraction


# -- dense RREF over a field ---------------------------------------------------


def rref(rows, zero=Fraction(0)):
    """Reduced row echelon form in place; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def kernel_basis(rows, ncols, zero=Fraction(0), one=Fraction(1)):
    """Right-kernel basis of the matrix given as dense rows."""
    work = [list(row) for row in rows]
    pivots = rref(work, zero=zero)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            value = work[r][fc]
            if value != zero:
                vec[pc] = zero - value
        basis.append(vec)
    return basis


def rank(rows, zero=Fraction(0)):
    work = [list(row) for row in rows]
    return len(rref(work, zero=zero))


# -- sparse reduced echelon over Fraction --------------------------------------


class SparseEchelon:
    """Canonical reduced echelon basis of dict-vectors.

    Columns are arbitrary hashable keys ordered by ``colkey``; the pivot of a
    vector is its largest column.  The resulting basis is independent of
    insertion order, which makes spans syntactically comparable.
    """

    def __init__(self, colkey):
        self.colkey = colkey
        self.pivots = {}  # pivot column -> reduced vector with coeff 1 there

    def reduce(self, vector):
        """Fully reduce ``vector`` against the basis (a fresh dict).

        Every pivot column is cleared, not just the leading one, so inserting
        reduced vectors yields a genuinely canonical reduced echelon basis.
        """
        vec = {c: x for c, x in vector.items() if x}
        while vec:
            reducible = [c for c in vec if c in self.pivots]
            if not reducible:
                return vec
            top = max(reducible, key=self.colkey)
            row = self.pivots[top]
            factor = vec[top]
            for c, x in row.items():
                new = vec.get(c, 0) - factor * x
                if new:
                    vec[c] = new
                else:
                    vec.pop(c, None)
        return vec

    def insert(self, vector):
        """Insert; returns the new pivot column or None if dependent."""
        vec = self.reduce(vector)
        if not vec:
            return None
        top = max(vec, key=self.colkey)
        inv = vec[top]
        vec = {c: x / inv for c, x in vec.items()}
        for row in self.pivots.values():
            if top in row:
                factor = row[top]
                for c, x in vec.items():
                    new = row.get(c, 0) - factor * x
                    if new:
                        row[c] = new
                    else:
                        row.pop(c, None)
        self.pivots[top] = vec
        return top

    def extend(self, vectors):
        for v in vectors:
            self.insert(v)

    def contains(self, vector):
        return not self.reduce(vector)

    @property
    def dimension(self):
        return len(self.pivots)

    def basis(self):
        """Vectors sorted by descending pivot column."""
        return [self.pivots[c] for c in sorted(self.pivots, key=self.colkey, reverse=True)]


# -- sparse fraction-free integer rank ----------------------------------------


def _content_normalize(row):
    g = 0
    for x in row.values():
        g = math.gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {c: x // g for c, x in row.items()}
    return row


def sparse_int_rank(rows):
    """Rank of integer dict-rows by fraction-free cross-multiplication.

    Pivot rows are chosen shortest-first and every update divides by the
    integer content, keeping entries near minor size without rational
    arithmetic.
    """
    work = [_content_normalize({c: x for c, x in row.items() if x})
            for row in rows]
    work = [row for row in work if row]
    rank_count = 0
    # column -> number of rows touching it, for a cheap Markowitz pivot choice
    while work:
        occupancy = {}
        for row in work:
            for c in row:
                occupancy[c] = occupancy.get(c, 0) + 1
        work.sort(key=len)
        pivot_row = work.pop(0)
        pivot_col = min(pivot_row, key=lambda c: (occupancy[c], abs(pivot_row[c])))
        pivot_val = pivot_row[pivot_col]
        rank_count += 1
        updated = []
        for row in work:
            if pivot_col in row:
                factor = row[pivot_col]
                g = math.gcd(pivot_val, factor)
                a, b = pivot_val // g, factor // g
                new = {}
                keys = set(row) | set(pivot_row)
                for c in keys:
                    value = a * row.get(c, 0) - b * pivot_row.get(c, 0)
                    if value:
                        new[c] = value
                if new:
                    updated.append(_content_normalize(new))
            elif row:
                updated.append(row)
        work = updated
    return rank_count


def fraction_rows_to_int(rows):
    """Clear denominators row by row (rank preserving)."""
    out = []
    for row in rows:
        denom = 1
        for x in row.values():
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        out.append({c: int(x * denom) for c, x in row.items()})
    return out


# -- Bareiss fraction-free elimination over an integral domain -----------------


def bareiss(matrix, divexact_fn, is_zero, zero=0):
    """One-step Bareiss elimination; returns (rank, pivot entries).

    ``matrix`` is a dense list of lists over an integral domain; entries are
    combined as ``(pivot*x - a*b) / previous_pivot`` where the division is
    exact.  The returned pivots are, up to sign, the leading nonzero minors,
    so a specialization that keeps every pivot nonzero keeps the rank.
    """
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    prev = None
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not is_zero(m[i][c]):
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
                    value = divexact_fn(value, prev)
                m[i][j] = value
            m[i][c] = zero
        pivots.append(pivot)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return len(pivots), pivots
