"""Machine-checkable smoothability certificates and the shipped corpus.

Four certificate kinds, stored as JSON documents with polynomials in the
shared text grammar:

* ``flat_family``: a one-parameter ideal over Q[a,b,c,t] whose colon by t
  reproduces itself (flatness), whose t=0 fiber matches the declared
  special fiber, and whose general fiber visibly vanishes on at least two
  distinct witness points, so the special fiber cleaves.
* ``cleavability``: a distinguished variable x and exponent c with
  x^c*(other variables) inside the ideal but x^c not in the ideal plus the
  other variables; the union-of-line variant checks the two degree-2
  products directly (for length at most 11).
* ``smooth_point``: tangent dimension exactly 3*degree together with one
  smoothability justification (monomial or Gorenstein socle axioms, an
  embedded flat family, or an embedded cleavability check).
* ``fiber_param``: a coefficient template for ideals with a prescribed
  lowest-form ideal; random integer solutions of the constraint equations
  must reproduce the base ideal as their initial ideal at full degree.

Every check emits a (locus, check, status, detail) entry; the corpus runner
aggregates entries in corpus order regardless of execution order.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
import random

from .errors import NotMPrimaryError, ParseError
from .groebner import (
    Ideal,
    colon_by_element,
    extend_with_parameter,
    intersect,
    maximal_ideal_power,
    specialize_parameter,
)
from .invsystems import apolar_ideal, dual_ring
from .localprops import (
    degree,
    initial_ideal_lowest,
    is_m_primary,
    local_hilbert_function,
    socle_dimension,
    tangent_dimension,
)
from .rings import RingContext, parse_polynomial


# -- report plumbing ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckEntry:
    locus: str
    check: str
    status: str  # "pass" | "fail" | "degenerate"
    detail: str = ""


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, locus, check, ok, detail=""):
        status = "pass" if ok else "fail"
        self.entries.append(CheckEntry(locus, check, status, detail))
        return ok

    def extend(self, entries):
        self.entries.extend(entries)

    @property
    def failures(self):
        return [e for e in self.entries if e.status == "fail"]

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        counts = {"pass": 0, "fail": 0, "degenerate": 0}
        for e in self.entries:
            counts[e.status] = counts.get(e.status, 0) + 1
        return counts

    def render(self, fmt="text"):
        lines = []
        if fmt == "tsv":
            for e in self.entries:
                lines.append("\t".join([e.locus, e.check, e.status, e.detail]))
        else:
            for e in self.entries:
                mark = {"pass": "ok", "fail": "FAIL", "degenerate": "DEGENERATE"}
                suffix = f"  ({e.detail})" if e.detail else ""
                lines.append(f"[{mark[e.status]:>10}] {e.locus} :: {e.check}{suffix}")
            counts = self.summary()
            lines.append(f"{counts['pass']} passed, {counts['fail']} failed, "
                         f"{counts['degenerate']} degenerate")
        return "\n".join(lines)


# -- certificate model ---------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str
    locus: str
    data: dict

    @property
    def ring(self):
        return RingContext(self.data.get("ring", ["a", "b", "c"]))


def parse_certificate(document):
    if "kind" not in document or "locus" not in document:
        raise ParseError("certificate needs 'kind' and 'locus' fields")
    kind = document["kind"]
    if kind not in ("flat_family", "cleavability", "smooth_point", "fiber_param"):
        raise ParseError(f"unknown certificate kind {kind!r}")
    return Certificate(kind=kind, locus=document["locus"], data=dict(document))


def load_certificate_file(path):
    with open(path, "r", encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return parse_certificate(document)


def corpus_dir():
    return resources.files("hilb11") / "corpus"


def load_corpus(directory=None):
    """All shipped (or overridden) certificates, ordered by file name."""
    certs = []
    if directory is None:
        root = corpus_dir()
        names = sorted(entry.name for entry in root.iterdir()
                       if entry.name.endswith(".cert"))
        for name in names:
            document = json.loads((root / name).read_text(encoding="utf-8"))
            certs.append(parse_certificate(document))
    else:
        names = sorted(n for n in os.listdir(directory) if n.endswith(".cert"))
        for name in names:
            certs.append(load_certificate_file(os.path.join(directory, name)))
    return certs


# -- flat families ---------------------------------------------------------------------


def _family_ideal(cert_data, ring):
    family_ring = extend_with_parameter(ring, "t")
    gens = [parse_polynomial(s, family_ring) for s in cert_data["family"]]
    return Ideal(family_ring, gens), family_ring


def verify_flat_family(cert, report=None, locus=None, fiber_ideal=None):
    """The four-clause flatness certificate; see the module docstring."""
    report = report if report is not None else Report()
    locus = locus or cert.locus
    data = cert.data if isinstance(cert, Certificate) else cert
    ring = RingContext(data.get("ring", ["a", "b", "c"]))
    K, family_ring = _family_ideal(data, ring)
    t = family_ring.variable("t")

    if fiber_ideal is None:
        fiber_ideal = Ideal(ring, [parse_polynomial(s, ring)
                                   for s in data["special_fiber"]])

    colon = colon_by_element(K, t)
    if colon == K:
        report.add(locus, "flat:colon", True)
    else:
        extra = [g for g in colon.groebner_basis() if not K.contains(g)]
        report.add(locus, "flat:colon", False,
                   f"(K:t) gained {extra[0] if extra else '?'}")

    fiber0 = specialize_parameter(K, 0)
    report.add(locus, "flat:specialization", fiber0 == fiber_ideal,
               "t=0 fiber differs from the declared special fiber"
               if fiber0 != fiber_ideal else "")

    if "inverse_system" in data:
        s_ring = dual_ring(ring)
        forms = [parse_polynomial(s, s_ring) for s in data["inverse_system"]]
        ann = apolar_ideal(forms, operator_ring=ring)
        report.add(locus, "flat:apolar-fiber", ann == fiber_ideal,
                   "annihilator of the inverse system differs from the fiber"
                   if ann != fiber_ideal else "")

    value = Fraction(data.get("witness_parameter", "1"))
    points = [tuple(Fraction(x) for x in p) for p in data["witness_points"]]
    ok_points = value != 0 and len(points) >= 2 and len(set(points)) == len(points)
    detail = "" if ok_points else "need >= 2 distinct points and t != 0"
    if ok_points:
        fiber_t = specialize_parameter(K, value)
        for g in fiber_t.generators:
            for p in points:
                if g.evaluate(p) != 0:
                    ok_points = False
                    detail = f"{g} does not vanish at {tuple(map(str, p))}"
                    break
            if not ok_points:
                break
    report.add(locus, "flat:witnesses", ok_points, detail)

    declared = int(data.get("degree", 11))
    actual = degree(fiber_ideal)
    report.add(locus, "flat:degree", actual == declared,
               f"degree {actual} != declared {declared}" if actual != declared else "")
    return report


# -- cleavability ------------------------------------------------------------------------


def verify_cleavability(cert, report=None, locus=None, ideal_obj=None):
    report = report if report is not None else Report()
    locus = locus or cert.locus
    data = cert.data if isinstance(cert, Certificate) else cert
    ring = RingContext(data.get("ring", ["a", "b", "c"]))
    if ideal_obj is None:
        ideal_obj = Ideal(ring, [parse_polynomial(s, ring) for s in data["ideal"]])
    variable = data["variable"]
    exponent = int(data.get("exponent", 1))
    variant = data.get("variant", "general")
    others = [v for v in ring.variables if v != variable]

    try:
        primary = is_m_primary(ideal_obj)
    except NotMPrimaryError:
        primary = False
    report.add(locus, "cleave:m-primary", primary)
    if not primary:
        return report

    x = ring.variable(variable)
    if variant == "union_of_line":
        ok = True
        detail = ""
        for other in others:
            product = x * ring.variable(other)
            if not ideal_obj.contains(product):
                ok = False
                detail = f"{product} is not in the ideal"
                break
        report.add(locus, "cleave:line-products", ok, detail)
        d = degree(ideal_obj)
        report.add(locus, "cleave:length", d <= 11,
                   f"length {d} exceeds 11" if d > 11 else "")
        return report

    ok = True
    detail = ""
    for other in others:
        product = x ** exponent * ring.variable(other)
        if not ideal_obj.contains(product):
            ok = False
            detail = f"{product} is not in the ideal"
            break
    report.add(locus, f"cleave:products(c={exponent})", ok, detail)
    extended = ideal_obj.with_extra_generators([ring.variable(v) for v in others])
    outside = not extended.contains(x ** exponent)
    report.add(locus, "cleave:power-survives", outside,
               "" if outside else
               f"{variable}^{exponent} lies in the ideal plus the other variables")
    return report


# -- smooth and smoothable points -----------------------------------------------------------


def verify_smooth_point(cert, report=None):
    report = report if report is not None else Report()
    locus = cert.locus
    data = cert.data
    ring = RingContext(data.get("ring", ["a", "b", "c"]))
    I = Ideal(ring, [parse_polynomial(s, ring) for s in data["ideal"]])

    declared_degree = int(data.get("degree", 11))
    actual = degree(I)
    report.add(locus, "point:degree", actual == declared_degree,
               f"degree {actual} != {declared_degree}"
               if actual != declared_degree else "")

    if "inverse_system" in data:
        s_ring = dual_ring(ring)
        forms = [parse_polynomial(s, s_ring) for s in data["inverse_system"]]
        ann = apolar_ideal(forms, operator_ring=ring)
        report.add(locus, "point:apolar", ann == I,
                   "annihilator of the inverse system differs from the ideal"
                   if ann != I else "")

    if "hilbert_function" in data:
        expected_hf = tuple(data["hilbert_function"])
        hf = local_hilbert_function(I)
        report.add(locus, "point:hilbert-function", hf == expected_hf,
                   f"{hf} != {expected_hf}" if hf != expected_hf else "")

    expected_tangent = int(data["expected_tangent"])
    tangent = tangent_dimension(I)
    report.add(locus, "point:tangent", tangent == expected_tangent,
               f"tangent {tangent} != {expected_tangent}"
               if tangent != expected_tangent else "")

    justification = data["justification"]
    j_kind = justification["kind"]
    if j_kind == "monomial":
        monomial = all(g.is_monomial() for g in I.groebner_basis())
        report.add(locus, "point:monomial-axiom", monomial,
                   "" if monomial else "reduced basis has a non-monomial element")
    elif j_kind == "gorenstein":
        socle = socle_dimension(I)
        report.add(locus, "point:gorenstein-axiom", socle == 1,
                   f"socle dimension {socle}" if socle != 1 else "")
    elif j_kind == "flat_family":
        embedded = dict(justification)
        embedded.setdefault("ring", data.get("ring", ["a", "b", "c"]))
        embedded.setdefault("degree", declared_degree)
        verify_flat_family(embedded, report=report, locus=locus, fiber_ideal=I)
    elif j_kind == "cleavability":
        embedded = dict(justification)
        embedded.setdefault("ring", data.get("ring", ["a", "b", "c"]))
        verify_cleavability(embedded, report=report, locus=locus, ideal_obj=I)
    else:
        report.add(locus, "point:justification", False,
                   f"unknown justification {j_kind!r}")
    return report


# -- fiber parametrizations -------------------------------------------------------------------


_SYMBOL_TERM = re.compile(r"^([a-z]\d+)(?:\^(\d+))?$")


def _evaluate_symbol_expression(text, assignment):
    """Evaluate expressions like '-a1*a2' or '-a2^2' over an assignment."""
    text = text.strip().replace(" ", "")
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    elif text.startswith("+"):
        text = text[1:]
    value = Fraction(sign)
    for factor in text.split("*"):
        m = _SYMBOL_TERM.match(factor)
        if not m:
            raise ParseError(f"cannot evaluate coefficient expression {text!r}")
        symbol, power = m.group(1), int(m.group(2) or 1)
        if symbol not in assignment:
            raise ParseError(f"unknown coefficient symbol {symbol!r}")
        value *= assignment[symbol] ** power
    return value


def instantiate_fiber_ideal(cert, assignment):
    """Build I' from a full coefficient assignment."""
    data = cert.data if isinstance(cert, Certificate) else cert
    ring = RingContext(data.get("ring", ["a", "b", "c"]))
    gens = []
    for entry in data["template"]:
        f = parse_polynomial(entry["base"], ring)
        for mono_text, symbol in entry.get("perturbation", []):
            f = f + parse_polynomial(mono_text, ring) * assignment[symbol]
        gens.append(f)
    gens.extend(maximal_ideal_power(ring, int(data["power_truncation"])))
    return Ideal(ring, gens)


def solve_fiber_assignment(cert, free_values):
    data = cert.data if isinstance(cert, Certificate) else cert
    assignment = dict(free_values)
    for symbol in data.get("zero", []):
        assignment[symbol] = Fraction(0)
    for symbol, expression in data.get("solve", {}).items():
        assignment[symbol] = _evaluate_symbol_expression(expression, assignment)
    return assignment


def verify_fiber_param(cert, seed=0, trials=20, report=None):
    """Random constraint solutions must keep degree and the initial ideal."""
    report = report if report is not None else Report()
    data = cert.data
    ring = RingContext(data.get("ring", ["a", "b", "c"]))
    base = Ideal(ring, [parse_polynomial(s, ring) for s in data["base_ideal"]])
    declared_degree = int(data.get("degree", 11))
    report.add(cert.locus, "fiber:base-degree", degree(base) == declared_degree,
               f"base degree {degree(base)}"
               if degree(base) != declared_degree else "")

    rng = random.Random(seed)
    free = list(data["free"])
    failures = []
    zero_assignment = solve_fiber_assignment(cert, {s: Fraction(0) for s in free})
    trials_list = [zero_assignment]
    for _ in range(trials):
        values = {s: Fraction(rng.randint(-9, 9)) for s in free}
        trials_list.append(solve_fiber_assignment(cert, values))
    for index, assignment in enumerate(trials_list):
        fiber = instantiate_fiber_ideal(cert, assignment)
        if degree(fiber) != declared_degree:
            failures.append((index, "degree", assignment))
            continue
        if initial_ideal_lowest(fiber) != base:
            failures.append((index, "initial ideal", assignment))
    detail = ""
    if failures:
        index, what, assignment = failures[0]
        shown = {k: str(v) for k, v in sorted(assignment.items()) if v}
        detail = f"trial {index} failed the {what} check at {shown}"
    report.add(cert.locus, f"fiber:samples(seed={seed},n={trials})",
               not failures, detail)
    return report


# -- ray families -----------------------------------------------------------------------------


def ray_family(I, variable):
    """The explicit cleaving family along the axis of ``variable``.

    With r minimal such that variable^r generates the image of I on the
    axis, and f an ideal element restricting to variable^r there, the
    family is I(R union axis) + (variable^r - t*variable^(r-1) - q) with
    q = variable^r - f.  Returns (family ideal over the t-extended ring, r).
    """
    ring = I.ring
    others = [v for v in ring.variables if v != variable]
    on_axis = I.with_extra_generators([ring.variable(v) for v in others])
    r = None
    index = ring.index[variable]
    for g in on_axis.groebner_basis():
        exps = g.leading_monomial()
        if sum(exps) == exps[index] and g.is_monomial():
            r = exps[index]
    if r is None or r == 0:
        raise ValueError(f"ideal does not cut the {variable}-axis in a finite scheme")
    f = None
    for g in I.groebner_basis():
        image = g
        for v in others:
            image = image.substitute_value(ring.index[v], 0)
        if not image.is_zero() and image.is_monomial() \
                and image.leading_monomial()[index] == r:
            f = g / image.leading_coefficient()
            break
    if f is None:
        raise ValueError("no ideal element restricts to the axis power")
    q = ring.variable(variable) ** r - f
    axis_ideal = Ideal(ring, [ring.variable(v) for v in others])
    union = intersect(I, axis_ideal)
    family_ring = extend_with_parameter(ring, "t")
    t = family_ring.variable("t")
    var_l = family_ring.variable(variable)
    moving = var_l ** r - t * var_l ** (r - 1) - q.project(family_ring)
    gens = [g.project(family_ring) for g in union.generators] + [moving]
    return Ideal(family_ring, gens), r


# -- corpus runner ------------------------------------------------------------------------------


def verify_certificate(cert, seed=0, trials=20):
    if cert.kind == "flat_family":
        return verify_flat_family(cert)
    if cert.kind == "cleavability":
        return verify_cleavability(cert)
    if cert.kind == "smooth_point":
        return verify_smooth_point(cert)
    if cert.kind == "fiber_param":
        return verify_fiber_param(cert, seed=seed, trials=trials)
    raise ParseError(f"unknown certificate kind {cert.kind!r}")


def run_corpus(certs, jobs=1, seed=0, trials=20, locus_filter=None):
    """Verify certificates, aggregating entries in corpus order."""
    selected = [c for c in certs
                if locus_filter is None or locus_filter in c.locus]
    report = Report()
    if jobs <= 1:
        parts = [verify_certificate(c, seed=seed, trials=trials)
                 for c in selected]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(
                lambda c: verify_certificate(c, seed=seed, trials=trials),
                selected))
    for part in parts:
        report.extend(part.entries)
    return report
