"""Batch command line front end.

Every subcommand parses its operands over the configured alphabet, runs one
library operation and writes the result to stdout, as text or JSON. Logs and
errors go to stderr.
"""

import argparse
import logging
import sys
from collections.abc import Callable
from collections.abc import Sequence
from fractions import Fraction
from typing import TYPE_CHECKING
from typing import TextIO

from pydantic import BaseModel

from .checks import run_suite
from .checks import suite_names
from .context import new_correlation_id
from .enums import AntipodeKind
from .enums import ExitStatus
from .enums import OutputFormat
from .enums import ProductMode
from .enums import SeriesName
from .evaluators import Evaluator
from .evaluators import make_evaluator
from .exceptions import ApplicationError
from .exceptions import ConfigError
from .exceptions import ParseError
from .exceptions import UnknownNameError
from .hopf import TensorElement
from .hopf import antipode
from .hopf import antipode_explicit
from .hopf import deconcat
from .hopf import derivation_d
from .hopf import exp_rd
from .hopf import reduced_deconcat
from .lambda_series import IdentityParams
from .lambda_series import LambdaLinComb
from .lambda_series import check_identity
from .lambda_series import identity_names
from .parser import parse_letter
from .parser import parse_letters
from .parser import parse_poly
from .parser import parse_scalar
from .scalars import make_ring
from .scalars import parse_rational
from .schemas import ApplicationErrorModel
from .schemas import EvalResult
from .schemas import PolyPayload
from .schemas import PolyTerm
from .schemas import TensorPayload
from .schemas import TensorTerm
from .series_maps import NamedSeries
from .series_maps import PsiMap
from .series_maps import named_map
from .series_maps import parse_pipeline
from .tools import ORJSONSerializer
from .word_algebra import Alphabet
from .word_algebra import EulerAlphabet
from .word_algebra import NcPoly
from .word_algebra import display_key
from .word_algebra import make_alphabet
from .word_algebra import product_many

if TYPE_CHECKING:
    from config import Settings

logger = logging.getLogger(__name__)

# flag -> settings field
OVERRIDES = {
    "alphabet": "ALPHABET",
    "coeff": "COEFF",
    "trunc": "TRUNC",
    "format": "FORMAT",
    "seed": "SEED",
    "maxlen": "MAXLEN",
    "letters": "LETTER_INDEX_MAX",
    "samples": "SAMPLES",
    "debug": "DEBUG",
}


def build_alphabet(alphabet: str, coeff: str | None) -> Alphabet:
    """Alphabet plus coefficient ring; the ring defaults to what the alphabet needs."""
    return make_alphabet(alphabet, make_ring(coeff) if coeff else None)


def poly_payload(source: str, x: NcPoly) -> PolyPayload:
    terms = [
        PolyTerm(coeff=x.ring.format(x.coefficient(word)), word=[list(a) for a in word])
        for word in sorted(x.words(), key=display_key)
    ]
    return PolyPayload(input=source, terms=terms)


def tensor_payload(source: str, t: TensorElement) -> TensorPayload:
    terms = [
        TensorTerm(coeff=t.alphabet.ring.format(c), left=[list(a) for a in u], right=[list(a) for a in v])
        for (u, v), c in sorted(t.items(), key=lambda kv: (display_key(kv[0][0]), display_key(kv[0][1])))
    ]
    return TensorPayload(input=source, terms=terms)


def product_mode(text: str) -> ProductMode:
    try:
        return ProductMode.parse(text)
    except ValueError:
        raise UnknownNameError(detail=f"Unknown product {text}") from None


def parse_parameter(text: str | None) -> Fraction | str | None:
    """``"1/2"`` -> Fraction, ``"s"`` -> the name of a ring variable."""
    if text is None:
        return None
    text = text.strip()
    return text if text.isidentifier() else parse_rational(text)


class Application:
    """The ``qshuffle`` command; :meth:`run` maps one command line to an exit status."""

    def __init__(self, settings: "Settings", stdout: TextIO | None = None, stderr: TextIO | None = None):
        self.settings = settings
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.parser = self.build_parser()

    def build_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
        common.add_argument("--alphabet", help="z | q | euler:<r> | zero")
        common.add_argument("--coeff", help="rational | poly:<vars> | qseries:<M>")
        common.add_argument("--trunc", type=int, help="truncation order in λ")
        common.add_argument("--format", choices=[f.value for f in OutputFormat])
        common.add_argument("--seed", type=int)
        common.add_argument("--maxlen", type=int, help="longest word in verification universes")
        common.add_argument("--letters", type=int, help="largest letter index in verification universes")
        common.add_argument("--samples", type=int, help="random draws per law in verification suites")
        common.add_argument("--debug", action="store_true")

        parser = argparse.ArgumentParser(prog=self.settings.APP_NAME, description="Quasi-shuffle algebra toolkit")
        parser.add_argument("--version", action="version", version=f"%(prog)s {self.settings.VERSION}")
        commands = parser.add_subparsers(dest="command", required=True)

        prod = commands.add_parser("prod", parents=[common], help="product of two or more elements")
        prod.add_argument("--op", default="qsh", help="qsh|*|star, qsh-star|bigstar, shuffle, diamond, concat")
        prod.add_argument("operands", nargs="+")
        prod.set_defaults(handler=self.prod)

        mapping = commands.add_parser("map", parents=[common], help="apply a pipeline of linear maps")
        mapping.add_argument("--series", required=True, help='maps in composition order, e.g. "exp T log T"')
        mapping.add_argument("expr")
        mapping.set_defaults(handler=self.map)

        coproduct = commands.add_parser("coproduct", parents=[common], help="deconcatenation coproduct")
        coproduct.add_argument("--reduced", action="store_true", help="drop the w ⊗ 1 and 1 ⊗ w terms")
        coproduct.add_argument("expr")
        coproduct.set_defaults(handler=self.coproduct)

        anti = commands.add_parser("antipode", parents=[common], help="antipode of * or ⋆, or the ⋄ antipode")
        anti.add_argument("--which", default=AntipodeKind.QSH.value, choices=[k.value for k in AntipodeKind])
        anti.add_argument("--explicit", action="store_true", help="use the composition sum formula")
        anti.add_argument("expr")
        anti.set_defaults(handler=self.antipode)

        derivation = commands.add_parser("derivation", parents=[common], help="the derivation D or exp(ρD)")
        derivation.add_argument("--exp", dest="rho", default=None, help="apply exp(ρD) instead of D")
        derivation.add_argument("expr")
        derivation.set_defaults(handler=self.derivation)

        gf = commands.add_parser("gf", parents=[common], help="check a generating-function identity")
        gf.add_argument("--identity", required=True, help=", ".join(identity_names()))
        gf.add_argument("--z", help='letter combinations per power of λ, e.g. "z1; z3"')
        gf.add_argument("--y")
        gf.add_argument("--a", help="single letter")
        gf.add_argument("--b", help="single letter")
        for name in ("s", "p", "r"):
            gf.add_argument(f"--{name}", help="rational or a ring variable")
        gf.add_argument("--with-series", dest="series", help="series token, e.g. log or series[1,1/2]")
        gf.add_argument("--mode", help="restrict to one product")
        gf.set_defaults(handler=self.gf)

        ev = commands.add_parser("eval", parents=[common], help="evaluate through a homomorphism")
        ev.add_argument("--evaluator", required=True, help="harmonic:n=8 | qzeta:order=20 | mzv | t | polylog:r=2")
        ev.add_argument("--interp", help="r=<rat>: evaluate Σ^r of the input")
        ev.add_argument("--star", action="store_true", help="evaluate Σ of the input")
        ev.add_argument("expr")
        ev.set_defaults(handler=self.eval)

        check = commands.add_parser("check", parents=[common], help="run a verification suite")
        check.add_argument("suite", help=", ".join(suite_names()))
        check.set_defaults(handler=self.check)
        return parser

    def configure(self, args: argparse.Namespace) -> Alphabet:
        update = {field: getattr(args, flag) for flag, field in OVERRIDES.items() if hasattr(args, flag)}
        if update:
            self.settings = self.settings.model_copy(update=update)
        if self.settings.DEBUG:
            logging.getLogger("qshuffle").setLevel(logging.DEBUG)
        if self.settings.TRUNC < 1:
            raise ConfigError(detail="Truncation order must be >= 1")
        if self.settings.SAMPLES is not None and self.settings.SAMPLES < 1:
            raise ConfigError(detail="Samples per law must be >= 1")
        return build_alphabet(self.settings.ALPHABET, self.settings.COEFF)

    @property
    def json(self) -> bool:
        return self.settings.FORMAT == OutputFormat.JSON

    def emit(self, text: str, payload: BaseModel | None = None) -> None:
        if self.json and payload is not None:
            text = ORJSONSerializer.encode(payload.serializable_dict())
        print(text, file=self.stdout)

    def error(self, exc: ApplicationError) -> int:
        code = getattr(exc.code, "value", exc.code)
        if self.json:
            body = ApplicationErrorModel(message=str(exc), code=code)
            print(ORJSONSerializer.encode(body.model_dump()), file=self.stderr)
        else:
            print(f"error[{code}]: {exc}", file=self.stderr)
            if isinstance(exc, ParseError) and exc.source is not None and exc.position is not None:
                prefix = exc.source.encode()[: exc.position].decode(errors="ignore")
                print(f"  {exc.source}\n  {' ' * len(prefix)}^", file=self.stderr)
        return exc.exit_code

    def run(self, argv: Sequence[str] | None = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return ExitStatus.OK if not e.code else ExitStatus.USAGE
        handler: Callable[[argparse.Namespace, Alphabet], int] = args.handler
        new_correlation_id()
        try:
            alphabet = self.configure(args)
            logger.info("Command %s started over %s with %s coefficients", args.command, alphabet, alphabet.ring)
            status = handler(args, alphabet)
        except ApplicationError as e:
            logger.info("Command %s stopped: %s", args.command, e.detail)
            return self.error(e)
        logger.info("Command %s finished with status %d", args.command, status)
        return status

    def prod(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        mode = product_mode(args.op)
        factors = [parse_poly(operand, alphabet) for operand in args.operands]
        result = product_many(mode, factors)
        self.emit(str(result), poly_payload(f" {args.op} ".join(args.operands), result))
        return ExitStatus.OK

    def map(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        mapping = parse_pipeline(args.series)
        result = mapping(parse_poly(args.expr, alphabet))
        self.emit(str(result), poly_payload(args.expr, result))
        return ExitStatus.OK

    def coproduct(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        x = parse_poly(args.expr, alphabet)
        result = reduced_deconcat(x) if args.reduced else deconcat(x)
        self.emit(str(result), tensor_payload(args.expr, result))
        return ExitStatus.OK

    def antipode(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        x = parse_poly(args.expr, alphabet)
        if args.explicit:
            if args.which != AntipodeKind.QSH:
                raise ConfigError(detail="The composition sum formula is only available for the * antipode")
            result = antipode_explicit(x)
        else:
            result = antipode(args.which, x)
        self.emit(str(result), poly_payload(args.expr, result))
        return ExitStatus.OK

    def derivation(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        x = parse_poly(args.expr, alphabet)
        if args.rho is None:
            result = derivation_d(x)
        else:
            result = exp_rd(parse_scalar(args.rho, alphabet), x)
        self.emit(str(result), poly_payload(args.expr, result))
        return ExitStatus.OK

    def identity_params(self, args: argparse.Namespace, alphabet: Alphabet) -> IdentityParams:
        def letter_series(text: str | None) -> LambdaLinComb | None:
            return LambdaLinComb.of(*parse_letters(text, alphabet)) if text else None

        series = None
        if args.series:
            mapping = named_map(args.series)
            series = mapping.series if isinstance(mapping, PsiMap) else NamedSeries(SeriesName.IDENTITY)
        return IdentityParams(
            alphabet=alphabet,
            order=self.settings.TRUNC,
            z=letter_series(args.z),
            y=letter_series(args.y),
            a=parse_letter(args.a, alphabet) if args.a else None,
            b=parse_letter(args.b, alphabet) if args.b else None,
            s=parse_parameter(args.s),
            p=parse_parameter(args.p),
            r=parse_parameter(args.r),
            series=series,
            mode=product_mode(args.mode) if args.mode else None,
        )

    def gf(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        report = check_identity(args.identity, self.identity_params(args, alphabet))
        if report.ok:
            text = f"{report.name}: ok to order {report.order} ({len(report.parts)} parts)"
        else:
            text = "\n".join(
                [
                    f"{report.name}: FAILED at degree {report.degree}",
                    f"  part: {report.parts[-1]}",
                    f"  difference: {report.difference}",
                ]
            )
        self.emit(text, report)
        return ExitStatus.OK if report.ok else ExitStatus.FAILURE

    def evaluator(self, spec: str, alphabet: Alphabet) -> Evaluator:
        s = self.settings
        defaults = {
            "harmonic": {"n": s.HARMONIC_N},
            "qzeta": {"order": s.QZETA_ORDER},
            "mzv": {"cutoff": s.MZV_CUTOFF},
            "t": {"cutoff": s.MZV_CUTOFF},
            "polylog": {"cutoff": s.POLYLOG_CUTOFF},
        }
        if isinstance(alphabet, EulerAlphabet):
            defaults["polylog"]["r"] = alphabet.r
        return make_evaluator(spec, defaults)

    def eval(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        evaluator = self.evaluator(args.evaluator, alphabet)
        x = parse_poly(args.expr, evaluator.alphabet_for(alphabet.ring))
        if args.interp:
            name, _, value = args.interp.partition("=")
            if name.strip() != "r" or not value:
                raise ParseError(detail=f"Expected r=<rational>, found {args.interp!r}", source=args.interp)
            value = evaluator.evaluate_interpolated(parse_rational(value), x)
        elif args.star:
            value = evaluator.evaluate_sigma(x)
        else:
            value = evaluator.evaluate(x)
        text = evaluator.format(value)
        self.emit(text, EvalResult(input=args.expr, value=text, kind=evaluator.kind))
        return ExitStatus.OK

    def check(self, args: argparse.Namespace, alphabet: Alphabet) -> int:
        s = self.settings
        report = run_suite(
            args.suite,
            alphabet,
            maxlen=s.MAXLEN,
            seed=s.SEED,
            letter_index_max=s.LETTER_INDEX_MAX,
            samples=s.SAMPLES,
            qzeta_order=s.QZETA_ORDER,
        )
        status = "ok" if report.ok else "FAILED"
        lines = [f"{report.suite}: {status} ({report.checked} cases, {len(report.laws)} laws)"]
        for failure in report.failures:
            lines.append(f"  {failure.law}: {failure.input}")
            lines.append(f"    left:  {failure.left}")
            lines.append(f"    right: {failure.right}")
        self.emit("\n".join(lines), report)
        return ExitStatus.OK if report.ok else ExitStatus.FAILURE
