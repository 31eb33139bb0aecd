"""
Command-line front end.

    polyspace betti --m 1,1,1,1,1
    polyspace fano --m 1,1,1,1,1,2 --json
    polyspace intersect --m 1,1,1,1,1 --J 1,2 --p 0 --oracle both
    polyspace survey --sample --n 4,5,6 --count 10 --seed 7

Exit codes: 0 ok, 1 internal fault, 2 invalid weights, 3 wall, 4 bad arguments.
"""
import argparse
import contextlib
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import pandas as pd

from .formatting import dump_json, number, numbers, render_betti, render_dims, yes_no
from .parsing import parse_coefficients, parse_element, parse_index_list, parse_monomial
from cohomology.poincare import betti_numbers, poincare_polynomial
from cohomology.ring import Monomial, RingElement, hilbert_function, presentation
from geometry.sampling import sample_chambers
from geometry.weights import (
    SubsetClass,
    WeightVector,
    chamber_signature,
    crossed_walls,
    format_rational,
    massive_points,
    render_subset,
    require_smooth,
    subset_census,
)
from intersection.pairing import ORACLES, evaluate, intersect_monomial
from positivity.fano import anticanonical_degree, fano_verdict, is_ample, maximal_degenerations
from positivity.quadrangles import DivisorCoefficients, quadrangles
from utils.config import ConfigManager
from utils.errors import (
    InternalFault,
    NonPositiveEntry,
    NotSmooth,
    PolygonInequalityViolated,
    PolyspaceError,
    TooFewSides,
    TooManySides,
    UsageError,
    WeightParseError,
    WrongDegree,
)
from utils.monitoring import ComputationMonitor, PolyspaceLogger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID_WEIGHTS = 2
EXIT_WALL = 3
EXIT_USAGE = 4

WEIGHT_ERRORS = (WeightParseError, NonPositiveEntry, TooFewSides, TooManySides, PolygonInequalityViolated)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

Result = Tuple[str, dict]


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so bad arguments map to exit code 4."""

    def error(self, message):
        raise UsageError(message)


@dataclass
class Session:
    args: argparse.Namespace
    config: ConfigManager
    out: TextIO
    threads: int

    def write(self, text: str) -> None:
        print(text, file=self.out)


def read_weight_file(path: str, max_n: int) -> List[WeightVector]:
    """One weight vector per line; blank lines and ``#`` comments are skipped."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    vectors = []
    for line in lines:
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            vectors.append(WeightVector.from_text(stripped, max_n=max_n))
    if not vectors:
        raise UsageError(f"{path} holds no weight vectors")
    return vectors


def load_weights(session: Session) -> List[WeightVector]:
    args = session.args
    if (args.m is None) == (args.file is None):
        raise UsageError("give exactly one of --m or --file")
    if args.m is not None:
        return [WeightVector.from_text(args.m, max_n=session.config.max_n)]
    return read_weight_file(args.file, session.config.max_n)


# Per-vector commands

def cmd_validate(session: Session, m: WeightVector) -> Result:
    require_smooth(m)
    census = subset_census(m)
    massive = massive_points(m).labels()
    lines = [
        f"n: {m.n}",
        f"total: {format_rational(m.total)}",
        "smooth: yes",
        f"short: {census[SubsetClass.SHORT]}",
        f"long: {census[SubsetClass.LONG]}",
        f"massive: {' '.join(massive)}",
    ]
    payload = {
        'smooth': True,
        'n': number(m.n),
        'total': number(m.total),
        'short': number(census[SubsetClass.SHORT]),
        'long': number(census[SubsetClass.LONG]),
        'massive': massive,
    }
    return "\n".join(lines), payload


def cmd_poincare(session: Session, m: WeightVector) -> Result:
    polynomial = poincare_polynomial(m, session.threads)
    return polynomial.render(), {
        'poincare': polynomial.to_json(),
        'palindromic': polynomial.is_palindromic(),
    }


def cmd_betti(session: Session, m: WeightVector) -> Result:
    betti = betti_numbers(m, session.threads)
    return render_betti(betti), {'betti': numbers(betti), 'euler': number(sum(betti))}


def cmd_relations(session: Session, m: WeightVector) -> Result:
    ring = presentation(m)
    lines = [f"{render_subset(bits)}: {relation.render()}" for bits, relation in ring.pairs()]
    payload = {'relations': ring.to_json()}
    if session.args.dims:
        dims = hilbert_function(m)
        lines.append(render_dims(dims))
        payload['dims'] = numbers(dims)
    return "\n".join(lines), payload


def _monomial_argument(session: Session, m: WeightVector) -> Monomial:
    args = session.args
    if args.monomial is not None:
        if args.J is not None or args.p is not None:
            raise UsageError("--monomial cannot be combined with --J or --p")
        return parse_monomial(args.monomial, m.n)
    power = args.p if args.p is not None else 0
    if power < 0:
        raise UsageError(f"--p must be non-negative, got {power}")
    return Monomial.of(parse_index_list(args.J or "", m.n), power)


def cmd_intersect(session: Session, m: WeightVector) -> Result:
    require_smooth(m)
    monomial = _monomial_argument(session, m)
    if monomial.degree != m.n - 3:
        raise WrongDegree(monomial.degree, m.n - 3)
    value = intersect_monomial(m, monomial, session.args.oracle, session.threads)
    return str(value), {
        'monomial': monomial.render(),
        'oracle': session.args.oracle,
        'value': number(value),
    }


def _coefficients(text: str, n: int) -> DivisorCoefficients:
    values = parse_coefficients(text)
    if len(values) != n:
        raise UsageError(f"--coeffs needs {n} values, got {len(values)}")
    return DivisorCoefficients.of(values, n)


def cmd_evaluate(session: Session, m: WeightVector) -> Result:
    args = session.args
    require_smooth(m)
    if (args.expr is None) == (args.coeffs is None):
        raise UsageError("give exactly one of --expr or --coeffs")
    if args.expr is not None:
        element = parse_element(args.expr, m.n)
    else:
        a = _coefficients(args.coeffs, m.n)
        divisor = RingElement.zero()
        for i, coefficient in enumerate(a.a, start=1):
            divisor = divisor + RingElement.l(i).scale(coefficient)
        element = divisor ** (m.n - 3)
    value = evaluate(m, element, args.oracle, session.threads)
    return format_rational(value), {'class': element.render(), 'value': number(value)}


def cmd_ample(session: Session, m: WeightVector) -> Result:
    if session.args.coeffs is None:
        a = DivisorCoefficients(m.entries)
    else:
        a = _coefficients(session.args.coeffs, m.n)
    verdict = is_ample(m, a)
    lines = [f"ample: {yes_no(verdict.ample)}"]
    if not verdict.ample:
        lines.append(f"certificate: {verdict.certificate.render()}")
        lines.append(f"degree: {format_rational(verdict.degree)}")
    return "\n".join(lines), {**verdict.to_json(), 'coeffs': numbers(a.a)}


def cmd_fano(session: Session, m: WeightVector) -> Result:
    verdict = fano_verdict(m)
    lines = [
        f"fano: {yes_no(verdict.fano)}",
        f"quadrangle: {yes_no(verdict.method_quadrangle)}",
        f"maximal: {yes_no(verdict.method_maximal)}",
    ]
    lines.extend(f"witness: {witness}" for witness in verdict.witnesses)
    return "\n".join(lines), verdict.to_json()


def cmd_maximal(session: Session, m: WeightVector) -> Result:
    found = maximal_degenerations(m)
    text = "\n".join(d.render() for d in found) or "none"
    payload = {'maximal': [{'set': list(d.subset.indices), 'dimension': number(d.dimension)} for d in found]}
    return text, payload


def cmd_quadrangles(session: Session, m: WeightVector) -> Result:
    found = quadrangles(m)
    text = "\n".join(q.render() for q in found) or "none"
    return text, {'count': number(len(found)), 'quadrangles': [q.to_json() for q in found]}


def cmd_chamber(session: Session, m: WeightVector) -> Result:
    signature = chamber_signature(m)
    lines = [f"n: {m.n}", f"short: {len(signature.short_sets)}"]
    payload = signature.to_json()
    if session.args.compare is not None:
        other = WeightVector.from_text(session.args.compare, max_n=session.config.max_n)
        if other.n != m.n:
            raise UsageError(f"--compare has n={other.n}, expected {m.n}")
        walls = crossed_walls(m, other)
        lines.append("crossed: " + (" ".join(str(w) for w in walls) or "none"))
        payload['crossed'] = [list(w.indices) for w in walls]
    return "\n".join(lines), payload


# Survey

def survey_frame(vectors: Sequence[WeightVector], oracle: str = "signs", threads: int = 1) -> pd.DataFrame:
    """Invariants of every vector as a table; numeric cells are decimal strings."""
    rows = []
    for m in vectors:
        row = {
            'm': str(m),
            'n': number(m.n),
            'smooth': m.wall is None,
            'wall': render_subset(m.wall) if m.wall is not None else None,
            'betti': None,
            'euler': None,
            'fano': None,
            'fano_quadrangle': None,
            'fano_maximal': None,
            'c1_degree': None,
        }
        if row['smooth']:
            betti = betti_numbers(m, threads)
            verdict = fano_verdict(m)
            row.update(
                betti=" ".join(str(b) for b in betti),
                euler=number(sum(betti)),
                fano=verdict.fano,
                fano_quadrangle=verdict.method_quadrangle,
                fano_maximal=verdict.method_maximal,
            )
            if m.n >= 4:
                row['c1_degree'] = number(anticanonical_degree(m, oracle, threads))
        rows.append(row)
    logger.info(f"surveyed {len(rows)} weight vectors")
    return pd.DataFrame(rows)


def _survey_vectors(session: Session) -> List[WeightVector]:
    args = session.args
    if not args.sample:
        return load_weights(session)
    if args.m is not None or args.file is not None:
        raise UsageError("--sample cannot be combined with --m or --file")
    n_values = parse_index_list(args.n)
    if any(n < 3 or n > session.config.max_n for n in n_values):
        raise UsageError(f"--n values must lie in 3..{session.config.max_n}")
    if args.count < 1:
        raise UsageError("--count must be positive")
    seed = args.seed if args.seed is not None else session.config.get('sampling', 'seed')
    return sample_chambers(
        n_values,
        args.count,
        seed,
        max_weight=session.config.get('sampling', 'max_weight'),
        max_attempts=session.config.get('sampling', 'max_attempts'),
    )


def run_survey(session: Session) -> None:
    frame = survey_frame(_survey_vectors(session), session.args.oracle, session.threads)
    if session.args.json:
        # round trip through pandas JSON so numpy scalars become plain values
        session.write(dump_json(json.loads(frame.to_json(orient="records"))))
    else:
        session.write(frame.to_string(index=False))


COMMANDS: Dict[str, Tuple[Callable[[Session, WeightVector], Result], str]] = {
    'validate': (cmd_validate, "check weights and report the chamber type"),
    'poincare': (cmd_poincare, "Poincaré polynomial"),
    'betti': (cmd_betti, "even Betti numbers"),
    'relations': (cmd_relations, "ring relations, one per Long set"),
    'intersect': (cmd_intersect, "top intersection number of l_J p^k"),
    'evaluate': (cmd_evaluate, "evaluate a top-degree class"),
    'ample': (cmd_ample, "ampleness of sum a_i l_i"),
    'fano': (cmd_fano, "Fano verdict by both criteria"),
    'maximal': (cmd_maximal, "maximal degenerations"),
    'quadrangles': (cmd_quadrangles, "quadrangle curves with their type"),
    'chamber': (cmd_chamber, "chamber signature and crossed walls"),
}


def build_parser() -> CommandParser:
    common = CommandParser(add_help=False)
    common.add_argument("--m", help="weight vector, e.g. 1,1,1,3/2")
    common.add_argument("--file", help="file with one weight vector per line")
    common.add_argument("--json", action="store_true", help="emit JSON (numbers as decimal strings)")
    common.add_argument("--threads", type=int, help="worker threads for subset and sign enumeration")
    common.add_argument("--config", "-c", help="path to a JSON configuration file")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="logging level (stderr)")
    common.add_argument("--profile", action="store_true", help="report operation timings on stderr")

    parser = CommandParser(prog="polyspace", description="Invariants of polygon spaces M_n(m)")
    subcommands = parser.add_subparsers(dest="command", metavar="command")
    subcommands.required = True

    parsers = {}
    for name, (handler, help_text) in COMMANDS.items():
        sub = subcommands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        parsers[name] = sub

    parsers['relations'].add_argument("--dims", action="store_true", help="also print graded dimensions")
    intersect = parsers['intersect']
    intersect.add_argument("--J", help="indices of the l-part, e.g. 1,2")
    intersect.add_argument("--p", type=int, help="power of p")
    intersect.add_argument("--monomial", help="monomial such as l1*l2*p^2")
    for name in ('intersect', 'evaluate'):
        parsers[name].add_argument("--oracle", choices=ORACLES, default="signs",
                                   help="sign sum, cycle reduction, or both with a cross-check")
    parsers['evaluate'].add_argument("--expr", help="class such as 'l1*l2 + 1/2*p'")
    parsers['evaluate'].add_argument("--coeffs", help="a_1,...,a_n: evaluate (sum a_i l_i)^(n-3)")
    parsers['ample'].add_argument("--coeffs", help="a_1,...,a_n (defaults to the weights)")
    parsers['chamber'].add_argument("--compare", help="second weight vector with the same n")

    survey = subcommands.add_parser('survey', parents=[common], help="tabulate invariants")
    survey.set_defaults(handler=None)
    survey.add_argument("--sample", action="store_true", help="draw a seeded sample of chambers")
    survey.add_argument("--n", default="4,5,6", help="side counts to sample")
    survey.add_argument("--count", type=int, default=5, help="chambers per side count")
    survey.add_argument("--seed", type=int, help="sampling seed (defaults to the config)")
    survey.add_argument("--oracle", choices=ORACLES, default="signs")
    return parser


def _dispatch(session: Session) -> None:
    args = session.args
    if args.handler is None:
        run_survey(session)
        return
    vectors = load_weights(session)
    for m in vectors:
        text, payload = args.handler(session, m)
        payload = {**payload, 'm': str(m)}
        PolyspaceLogger.log_result({'command': args.command, **payload})
        if args.json:
            session.write(dump_json(payload))
        else:
            if len(vectors) > 1:
                session.write(f"# {m}")
            session.write(text)


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Parse ``argv``, run one subcommand and return the exit code.

    Diagnostics go to stderr; ``stdout`` receives the command output.
    """
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        config = ConfigManager(args.config)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    PolyspaceLogger(
        log_dir=config.get('logging', 'log_dir'),
        log_level=args.log_level or config.get('logging', 'level'),
    )

    threads = args.threads if args.threads is not None else config.threads
    if threads < 1:
        print(f"error: --threads must be positive, got {threads}", file=sys.stderr)
        return EXIT_USAGE

    monitor = ComputationMonitor(output_dir=config.get('logging', 'log_dir')) if args.profile else None
    session = Session(args=args, config=config, out=out, threads=threads)
    try:
        with monitor.track(args.command) if monitor else contextlib.nullcontext():
            _dispatch(session)
    except InternalFault as e:
        PolyspaceLogger.log_error(e, context=f"{args.command} failed")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except WEIGHT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_WEIGHTS
    except NotSmooth as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_WALL
    except PolyspaceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        PolyspaceLogger.log_error(e, context=f"{args.command} failed")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if monitor:
            print(dump_json(monitor.generate_report()), file=sys.stderr)
            monitor.save_report()
    return EXIT_OK


def main() -> None:
    sys.exit(run())
