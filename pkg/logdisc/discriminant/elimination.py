"""Logarithmic discriminant by iterated resultants.

The cleared critical equations (u_n set to 1) are reduced to one polynomial
E(x1, u) by eliminating x_d, ..., x_2 with Sylvester resultants. Wall
components and common leading coefficients are divided out at every step.
The discriminant of E in x1 vanishes on the logarithmic discriminant, but also
where two critical points share an x1 coordinate; a second, randomly sheared
coordinate system removes that part by a gcd. Known spurious linear forms in u
are stripped, the rest is split into squarefree pieces, and each piece is
certified by sampling its zero set with the numerical solver. Every factor
divided out along the way is kept in the result ledger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import logging
import math

import numpy as np

from logdisc.algebra import linalg
from logdisc.algebra.polykernel import (
    content,
    split_by_support,
    squarefree_factors,
    strip_common,
    sylvester_resultant,
    trial_divide,
    univariate_discriminant,
)
from logdisc.config import DEFAULT_ELIMINATION, DEFAULT_SOLVER, DEFAULT_TOLERANCES, EliminationSettings, SolverSettings, Tolerances
from logdisc.discriminant.certify import certify_factor
from logdisc.discriminant.degree import expected_degree
from logdisc.discriminant.pointline import logdisc_d1
from logdisc.errors import LogdiscError
from logdisc.matroid.validate import irreducibility_hypothesis
from logdisc.model.arrangement import Arrangement, affine_change
from logdisc.model.discriminant import DiscriminantResult, Factor, LedgerEntry, Method
from logdisc.model.poly import Poly
from logdisc.numeric.critical import cleared_equations

logger = logging.getLogger(__name__)


class EliminationError(LogdiscError):
    """Raised when elimination cannot proceed."""


class _Blowup(Exception):
    def __init__(self, poly: Poly, stage: str) -> None:
        super().__init__(stage)
        self.poly = poly
        self.stage = stage


@dataclass(slots=True)
class Projection:
    """Outcome of eliminating down to x1 in one coordinate system."""

    eliminant: Poly
    content: Poly
    discriminant: Poly | None
    notes: list[str] = field(default_factory=list)
    ledger: list[LedgerEntry] = field(default_factory=list)


def _guard(poly: Poly, stage: str, settings: EliminationSettings) -> Poly:
    if poly.term_count() > settings.max_intermediate_terms:
        raise _Blowup(poly, stage)
    return poly


def _project_walls(walls: list[Poly], var: str) -> list[Poly]:
    """Traces of the walls after eliminating `var`: untouched forms plus pairwise resultants."""
    kept = [w for w in walls if w.degree(var) <= 0]
    moving = [w for w in walls if w.degree(var) > 0]
    for a, b in combinations(moving, 2):
        r = sylvester_resultant(a, b, var)
        rest = tuple(v for v in a.vars if v != var)
        r = r.with_vars(rest)
        if not r.is_constant():
            kept.append(r.canonical())
    unique: list[Poly] = []
    for w in kept:
        if w.is_constant():
            continue
        w = w.with_vars(tuple(v for v in w.vars if v != var)) if var in w.vars else w
        if not any(w == other for other in unique):
            unique.append(w)
    return unique


def _strip_walls(poly: Poly, walls: list[Poly], stage: str, ledger: list[LedgerEntry]) -> Poly:
    for wall in walls:
        if wall.is_constant():
            continue
        poly, k = trial_divide(poly, wall)
        if k:
            ledger.append(LedgerEntry(wall, k, f"wall trace, {stage}"))
    return poly


def _dehomogenized_equations(arr: Arrangement) -> list[Poly]:
    last = arr.u_names[-1]
    names = arr.x_names + arr.u_names[:-1]
    return [eq.partial({last: 1}).with_vars(names) for eq in cleared_equations(arr)]


def eliminate_to_x1(
    arr: Arrangement,
    settings: EliminationSettings = DEFAULT_ELIMINATION,
    ledger: list[LedgerEntry] | None = None,
    label: str = "",
) -> Projection:
    """Eliminate x_d, ..., x_2; removed factors are appended to `ledger`."""
    ledger = [] if ledger is None else ledger
    polys = _dehomogenized_equations(arr)
    walls = [form for form in arr.forms()]
    notes: list[str] = []
    for j in range(arr.d, 1, -1):
        var = f"x{j}"
        involved = [p for p in polys if p.degree(var) > 0]
        rest = [p for p in polys if p.degree(var) <= 0]
        walls = _project_walls(walls, var)
        if len(involved) < 2:
            notes.append(f"{var} occurs in {len(involved)} equation(s); dropped")
            polys = rest
            continue
        pivot = min(involved, key=lambda p: (p.degree(var), p.term_count()))
        logger.info("eliminating %s: pivot degree %d, %d partner(s)", var, pivot.degree(var), len(involved) - 1)
        produced = []
        for q in involved:
            if q is pivot:
                continue
            r = _guard(sylvester_resultant(pivot, q, var, settings), f"resultant in {var}", settings)
            if r.is_zero():
                raise EliminationError(f"Resultant in {var} vanished identically")
            lead = pivot.leading_coeff_in(var).gcd(q.leading_coeff_in(var))
            lead = lead.with_vars(tuple(v for v in lead.vars if v != var))
            if not lead.is_constant():
                r, removed = strip_common(r, lead)
                if not removed.is_constant():
                    ledger.append(LedgerEntry(removed.canonical(), 1, f"{label}leading coefficient, resultant in {var}"))
            produced.append(_strip_walls(r, walls, f"{label}resultant in {var}", ledger))
        polys = rest + produced

    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise EliminationError("Elimination left no equation")
    eliminant = nonzero[0]
    for p in nonzero[1:]:
        common = eliminant.gcd(p)
        if common.degree("x1") > 0:
            eliminant = common
        else:
            notes.append("several eliminants without common factor; keeping the first")
    eliminant = _strip_walls(eliminant, walls, f"{label}eliminant in x1", ledger)

    c = content(eliminant, "x1")
    primitive = eliminant.exact_div(c) if not c.is_zero() else eliminant
    if primitive is None:
        raise EliminationError("content does not divide the eliminant")
    u_names = tuple(v for v in eliminant.vars if v.startswith("u"))
    c = c.with_vars(u_names)
    squarefree = Poly.one(primitive.vars)
    for piece, _ in squarefree_factors(primitive):
        if piece.degree("x1") > 0:
            squarefree = squarefree * piece
        else:
            c = c * piece.with_vars(u_names)
    discriminant = None
    if squarefree.degree("x1") >= 2:
        discriminant = _guard(univariate_discriminant(squarefree, "x1", settings), "discriminant in x1", settings)
        discriminant = discriminant.with_vars(u_names)
    else:
        notes.append(f"eliminant has degree {max(squarefree.degree('x1'), 0)} in x1")
    return Projection(eliminant=squarefree, content=c, discriminant=discriminant, notes=notes, ledger=ledger)


def _shear(arr: Arrangement, rng: np.random.Generator) -> Arrangement:
    M = [[Fraction(1 if i == j else 0) for j in range(arr.d)] for i in range(arr.d)]
    for j in range(1, arr.d):
        M[0][j] = Fraction(int(rng.integers(1, 8)) * int(rng.choice([-1, 1])))
    return affine_change(arr, M, [0] * arr.d)


def spurious_linear_forms(arr: Arrangement) -> list[list[int]]:
    """Index sets whose u-sums are stripped: singletons, everything, coordinate supports, proper flats."""
    sets: list[list[int]] = [[i] for i in range(arr.n_plus_1)]
    sets.append(list(range(arr.n_plus_1)))
    for j in range(arr.d):
        sets.append(arr.involved(j))
    L = arr.L_rows
    for size in range(1, arr.d + 1):
        for subset in combinations(range(arr.n_plus_1), size):
            base = linalg.rank([L[i] for i in subset])
            closure = [i for i in range(arr.n_plus_1) if linalg.rank([L[k] for k in subset] + [L[i]]) == base]
            if 2 <= len(closure) < arr.n_plus_1:
                sets.append(closure)
    unique: list[list[int]] = []
    for s in sets:
        key = sorted(set(s))
        if key not in unique:
            unique.append(key)
    return unique


def _spurious_polys(arr: Arrangement, sheared: Arrangement | None) -> list[Poly]:
    names = arr.u_names[:-1]
    index_sets = spurious_linear_forms(arr)
    if sheared is not None:
        index_sets += [s for s in spurious_linear_forms(sheared) if s not in index_sets]
    polys = []
    for s in index_sets:
        terms = {}
        constant = Fraction(0)
        for i in s:
            if i == arr.n:
                constant += 1
            else:
                exponent = [0] * len(names)
                exponent[i] = 1
                terms[tuple(exponent)] = Fraction(1)
        if constant:
            terms[tuple([0] * len(names))] = constant
        poly = Poly.from_terms(names, terms)
        if not poly.is_constant():
            polys.append(poly)
    return polys


def _record_quotient(ledger: list[LedgerEntry], full: Poly, kept: Poly, reason: str) -> None:
    if full.is_zero() or kept.is_zero():
        return
    dropped = full.exact_div(kept)
    if dropped is not None and not dropped.is_constant():
        ledger.append(LedgerEntry(dropped.canonical(), 1, reason))


def default_degree_bound(arr: Arrangement) -> int:
    expected = expected_degree(arr)
    if isinstance(expected, int):
        return expected
    return 4 * arr.d * math.comb(arr.n - 1, arr.d)


def _rehomogenize(piece: Poly, arr: Arrangement) -> Poly:
    names = arr.u_names
    base = piece.with_vars(names[:-1])
    return base.homogenize(names[-1]).with_vars(names).canonical()


def logdisc_elim(
    arr: Arrangement,
    degree_bound: int | None = None,
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    solver: SolverSettings = DEFAULT_SOLVER,
    settings: EliminationSettings = DEFAULT_ELIMINATION,
    certify: bool = True,
) -> DiscriminantResult:
    rng = np.random.default_rng(seed)
    bound = degree_bound if degree_bound is not None else default_degree_bound(arr)
    expected = expected_degree(arr)
    notes: list[str] = []
    if arr.d >= 3:
        notes.append("d >= 3: best effort")
    witness = irreducibility_hypothesis(arr)
    if witness is not None:
        notes.append(f"irreducibility hypothesis holds on forms {witness}")
    names = arr.u_names[:-1]

    sheared: Arrangement | None = None
    ledger: list[LedgerEntry] = []
    try:
        first = eliminate_to_x1(arr, settings, ledger)
        notes += first.notes
        candidate = first.discriminant
        contents = first.content
        if arr.d >= 2:
            sheared = _shear(arr, rng)
            second = eliminate_to_x1(sheared, settings, ledger, label="sheared: ")
            notes += [f"sheared: {note}" for note in second.notes]
            if candidate is not None and second.discriminant is not None:
                shared = candidate.gcd(second.discriminant)
                _record_quotient(ledger, candidate, shared, "x1 collision, absent after shearing")
                candidate = shared
            elif second.discriminant is None:
                candidate = None
            shared = contents.gcd(second.content)
            _record_quotient(ledger, contents, shared, "content, absent after shearing")
            contents = shared
    except _Blowup as blowup:
        logger.warning("elimination blowup at %s (%d terms)", blowup.stage, blowup.poly.term_count())
        return DiscriminantResult(
            factors=[],
            method=Method.ELIMINATION,
            leftover=blowup.poly,
            expected_degree=expected if isinstance(expected, int) else None,
            notes=notes + [f"unresolved: blowup at {blowup.stage}"],
            partial=True,
            ledger=ledger,
        )

    total = Poly.one(names)
    if candidate is not None and not candidate.is_zero():
        total = total * candidate.with_vars(names)
    if not contents.is_zero():
        total = total * contents.with_vars(names)
    for form in _spurious_polys(arr, sheared):
        total, k = trial_divide(total, form)
        if k:
            logger.debug("stripped %s^%d", form.render(compact=True), k)
            ledger.append(LedgerEntry(form, k, "linear form in u"))

    pieces: list[Poly] = []
    if not total.is_constant():
        for part, _ in squarefree_factors(total):
            pieces.extend(split_by_support(part))
    homogeneous = [_rehomogenize(p, arr) for p in pieces]
    candidate_degree = sum(p.degree() for p in homogeneous)
    if candidate_degree > bound:
        notes.append(f"candidate degree {candidate_degree} exceeds the bound {bound}")

    factors: list[Factor] = []
    leftover: Poly | None = None
    for piece in homogeneous:
        certified = True
        if certify:
            certified = certify_factor(arr, piece, rng, tolerances, solver, settings).certified
        if certified:
            factors.append(Factor(poly=piece, multiplicity=1, certified=True))
        else:
            leftover = piece if leftover is None else leftover * piece
    if leftover is not None:
        notes.append("possible higher-codimension component")
    factors.sort(key=lambda f: (f.degree, f.poly.render()))
    return DiscriminantResult(
        factors=factors,
        method=Method.ELIMINATION,
        leftover=leftover,
        expected_degree=expected if isinstance(expected, int) else None,
        notes=notes,
        ledger=ledger,
    )


def compute_discriminant(
    arr: Arrangement,
    method: str = "auto",
    seed: int = 0,
    degree_bound: int | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    solver: SolverSettings = DEFAULT_SOLVER,
    settings: EliminationSettings = DEFAULT_ELIMINATION,
) -> DiscriminantResult:
    """Dispatch on `method`: auto picks the closed form on the line and elimination otherwise."""
    if method not in ("auto", "d1", "res", "elim"):
        raise EliminationError(f"Unknown method {method!r}")
    if method in ("d1", "res") or (method == "auto" and arr.d == 1):
        if arr.d != 1:
            raise EliminationError(f"Closed form needs d = 1, got d = {arr.d}")
        points = [-bi / row[0] for bi, row in zip(arr.b, arr.A)]
        return logdisc_d1(points, seed, via_resultant=method == "res")
    return logdisc_elim(arr, degree_bound, seed, tolerances, solver, settings)
