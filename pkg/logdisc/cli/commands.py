"""Subcommand parsers and handlers for the logdisc command line."""

from __future__ import annotations

import argparse
import difflib
from fractions import Fraction
import logging
from pathlib import Path
import re
from typing import Any, Callable, NoReturn

from logdisc import __version__
from logdisc.config import DEFAULT_SOLVER, DEFAULT_TOLERANCES, Tolerances
from logdisc.discriminant.degree import expected_degree, positivity_scan
from logdisc.discriminant.elimination import compute_discriminant
from logdisc.geometry.polytope import f_vector, face_of, facet_normals, initial_form, newton_polytope
from logdisc.geometry.reciprocal import circuit_generators
from logdisc.io.loader import load_arrangement, load_poly
from logdisc.io.writer import arrangement_document
from logdisc.matroid.characteristic import characteristic_polynomial, ml_degree, region_counts
from logdisc.matroid.validate import irreducibility_hypothesis, validate
from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import Poly, PolyError, poly_document, to_fraction
from logdisc.moduli.gram import gram_minor_check
from logdisc.moduli.m0m import ModuliError, m05_discriminant, m0m_arrangement, m0m_deletion, relabel_for_swap
from logdisc.moduli.softlimit import SOFT_PARTICLE, soft_limit_m06, soft_limit_weight
from logdisc.numeric.critical import solve_critical
from logdisc.numeric.membership import membership_numeric, varchenko_check
from logdisc.state.session import RunSession

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, RunSession], dict[str, Any]]

_INVALID_CHOICE = re.compile(r"invalid choice: '?([^'\s(]+)")
_UNRECOGNIZED = re.compile(r"unrecognized arguments: (.+)$")


class LogdiscArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors carry a close-match suggestion."""

    def error(self, message: str) -> NoReturn:
        suggestion = self._suggestion(message)
        if suggestion:
            message = f"{message} (did you mean {suggestion!r}?)"
        super().error(message)

    def _known_words(self) -> tuple[list[str], list[str]]:
        commands: list[str] = []
        options: list[str] = []
        for action in self._actions:
            options.extend(action.option_strings)
            if isinstance(action, argparse._SubParsersAction):
                for name, sub in action.choices.items():
                    commands.append(name)
                    for sub_action in sub._actions:
                        options.extend(sub_action.option_strings)
        return commands, sorted(set(options))

    def _suggestion(self, message: str) -> str | None:
        commands, options = self._known_words()
        if match := _INVALID_CHOICE.search(message):
            close = difflib.get_close_matches(match.group(1), commands, n=1)
            return close[0] if close else None
        if match := _UNRECOGNIZED.search(message):
            for token in match.group(1).split():
                if token.startswith("-"):
                    close = difflib.get_close_matches(token.split("=", 1)[0], options, n=1)
                    if close:
                        return close[0]
        return None


def rational_list(text: str) -> list[Fraction]:
    """Comma-separated rationals: '2,3,5,7,-1' or '1/2,1'."""
    values = []
    for token in text.split(","):
        try:
            values.append(to_fraction(token))
        except PolyError as exc:
            raise argparse.ArgumentTypeError(f"not a rational: {token!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def tolerances_from(args: argparse.Namespace) -> Tolerances:
    return DEFAULT_TOLERANCES.with_overrides(
        residual=args.tol_res,
        wall=args.tol_wall,
        degenerate=args.tol_deg,
        collision=args.tol_collision,
    )


def _arrangement(args: argparse.Namespace, session: RunSession) -> Arrangement:
    with session.stage("load"):
        arr = load_arrangement(args.arrangement)
    session.record_input(args.arrangement)
    return arr


def _poly(args: argparse.Namespace, session: RunSession) -> Poly:
    with session.stage("load"):
        f = load_poly(args.poly)
    session.record_input(args.poly)
    return f


def _document(f: Poly, pretty: bool) -> dict[str, Any]:
    doc = poly_document(f)
    if pretty:
        doc["text"] = f.render()
    return doc


# -- handlers ----------------------------------------------------------


def run_check(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    with session.stage("validate"):
        report = validate(arr)
        witness = irreducibility_hypothesis(arr)
    return {
        "arrangement": arrangement_document(arr),
        "validation": report.to_dict(),
        "expected_degree": expected_degree(arr),
        "irreducibility_witness": witness,
    }


def run_chi(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    with session.stage("characteristic"):
        chi = characteristic_polynomial(arr)
        regions, bounded = region_counts(arr)
    return {"chi": chi.render(compact=True), "regions": regions, "bounded": bounded, "ml_degree": ml_degree(arr)}


def run_crit(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    tolerances = tolerances_from(args)
    with session.stage("critical"):
        solutions = solve_critical(arr, args.u, session.seed_for("crit"), tolerances, DEFAULT_SOLVER)
    outputs = solutions.to_dict()
    if args.varchenko:
        with session.stage("varchenko"):
            report = varchenko_check(arr, args.u, session.seed_for("varchenko"), tolerances, DEFAULT_SOLVER)
        outputs["varchenko"] = report.to_dict()
    return outputs


def run_disc(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    with session.stage("discriminant"):
        result = compute_discriminant(
            arr,
            method=args.method,
            seed=session.seed_for("disc"),
            degree_bound=args.degree_bound,
            tolerances=tolerances_from(args),
        )
    outputs = result.to_dict(args.pretty)
    product = result.product()
    if args.positivity and product is not None:
        with session.stage("positivity"):
            scan = positivity_scan(product, args.positivity, session.seed_for("positivity"))
        outputs["positivity"] = scan.to_dict()
    return outputs


def run_member(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    with session.stage("membership"):
        result = membership_numeric(arr, args.u, session.seed_for("member"), tolerances_from(args), DEFAULT_SOLVER)
    return result.to_dict()


def run_newton(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    f = _poly(args, session)
    with session.stage("hull"):
        P = newton_polytope(f)
        counts = f_vector(P)
    return {
        "polytope": P.to_dict(),
        "f_vector": counts,
        "facet_normals": [list(normal) for normal in facet_normals(P)],
    }


def run_initial(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    f = _poly(args, session)
    with session.stage("initial"):
        form = initial_form(f, args.w)
        face = face_of(newton_polytope(f), args.w)
    return {
        "w": [str(v) for v in args.w],
        "initial_form": _document(form, args.pretty),
        "face": [list(point) for point in face],
    }


def run_circuits(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    arr = _arrangement(args, session)
    with session.stage("circuits"):
        generators = circuit_generators(arr)
    return {"circuits": {"_".join(map(str, g.support)): g.to_dict(args.pretty) for g in generators}}


def run_m0m(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    if args.delete is None:
        arr, mmap = m0m_arrangement(args.m)
    else:
        arr, mmap = m0m_deletion(args.m, args.delete)
    return {
        "m": args.m,
        "deleted": args.delete,
        "arrangement": arrangement_document(arr),
        "labels": list(mmap.labels),
        "pairs": [list(pair) for pair in mmap.pairs],
        "ml_degree": ml_degree(arr),
    }


def run_gram(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    with session.stage("gram"):
        return gram_minor_check(args.u).to_dict()


def run_softlimit(args: argparse.Namespace, session: RunSession) -> dict[str, Any]:
    weight = soft_limit_weight(args.m, args.k)
    arr, mmap = m0m_arrangement(args.m)
    outputs: dict[str, Any] = {"m": args.m, "k": args.k, "weight": weight, "labels": list(mmap.labels)}
    if args.m == 5:
        with session.stage("initial"):
            form = initial_form(m05_discriminant(arr.u_names), weight)
        outputs["initial_form"] = _document(form, args.pretty)
        return outputs
    if args.m != 6:
        raise ModuliError(f"soft-limit recipes exist for m = 5 and m = 6, got m = {args.m}")
    with session.stage("softlimit"):
        report = soft_limit_m06(session.seed_for("softlimit"))
    if args.k != SOFT_PARTICLE:
        # Swapping marked points k and 5 permutes the Mandelstam coordinates.
        image = relabel_for_swap(mmap, args.k, SOFT_PARTICLE)
        names = arr.u_names
        mapping = {names[p]: names[q] for p, q in enumerate(image)}
        report.base = report.base.rename(mapping).with_vars(names).canonical()
        if report.second_factor is not None:
            report.second_factor = report.second_factor.rename(mapping).with_vars(names).canonical()
        report.notes.append(f"obtained from particle {SOFT_PARTICLE} by swapping marked points {args.k} and {SOFT_PARTICLE}")
    session.timings.update({f"softlimit/{stage}": seconds for stage, seconds in report.stages.items()})
    outputs.update(report.to_dict(args.pretty))
    return outputs


# -- parser ------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Root seed of every random stream (default: 0).")
    common.add_argument("--out", type=Path, default=None, help="Write the JSON report here instead of stdout.")
    common.add_argument("--pretty", action="store_true", help="Add human-readable polynomial text.")
    tolerances = common.add_argument_group("tolerances")
    tolerances.add_argument("--tol-res", type=float, default=None, help="Residual acceptance.")
    tolerances.add_argument("--tol-wall", type=float, default=None, help="Distance to a hyperplane.")
    tolerances.add_argument("--tol-deg", type=float, default=None, help="Relative Hessian degeneracy.")
    tolerances.add_argument("--tol-collision", type=float, default=None, help="Critical point collision.")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only.")
    return common


def build_parser() -> LogdiscArgumentParser:
    parser = LogdiscArgumentParser(prog="logdisc", description="Logarithmic discriminants of hyperplane arrangements.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    common = _common_options()

    def command(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
        sub.set_defaults(handler=handler)
        return sub

    check = command("check", run_check, "Validate an arrangement and report uniformity.")
    check.add_argument("arrangement", type=Path)

    chi = command("chi", run_chi, "Characteristic polynomial, region counts and ML degree.")
    chi.add_argument("arrangement", type=Path)

    crit = command("crit", run_crit, "Critical points of the log-likelihood at exponents u.")
    crit.add_argument("arrangement", type=Path)
    crit.add_argument("--u", type=rational_list, required=True, help="Exponents, e.g. 2,3,5,7,-1.")
    crit.add_argument("--varchenko", action="store_true", help="Also check reality for positive u.")

    disc = command("disc", run_disc, "Logarithmic discriminant polynomial.")
    disc.add_argument("arrangement", type=Path)
    disc.add_argument("--method", choices=("auto", "d1", "res", "elim"), default="auto")
    disc.add_argument("--degree-bound", type=int, default=None)
    disc.add_argument("--positivity", type=int, default=0, metavar="N", help="Sign scan on N positive samples.")

    member = command("member", run_member, "Numerical membership of u in the discriminant.")
    member.add_argument("arrangement", type=Path)
    member.add_argument("--u", type=rational_list, required=True)

    newton = command("newton", run_newton, "Newton polytope of a polynomial document.")
    newton.add_argument("poly", type=Path)

    initial = command("initial", run_initial, "Initial form with respect to a weight vector.")
    initial.add_argument("poly", type=Path)
    initial.add_argument("--w", type=rational_list, required=True, help="Weight vector, e.g. 0,1,0,1,1.")

    circuits = command("circuits", run_circuits, "Circuit generators of the reciprocal linear space.")
    circuits.add_argument("arrangement", type=Path)

    m0m = command("m0m", run_m0m, "The M0,m arrangement with Mandelstam labels.")
    m0m.add_argument("--m", type=int, required=True)
    m0m.add_argument("--delete", type=int, default=None, metavar="K", help="Forget marked point K.")

    gram = command("gram", run_gram, "Gram principal minors against the M0,5 discriminant.")
    gram.add_argument("--u", type=rational_list, required=True, help="Values of s13,s14,s23,s24,s34.")

    softlimit = command("softlimit", run_softlimit, "Soft limit of particle k.")
    softlimit.add_argument("--m", type=int, required=True)
    softlimit.add_argument("--k", type=int, required=True)
    return parser
