"""Command-line interface.

Results are written to standard output as JSON (or CSV for ``roots --format csv``),
diagnostics go to standard error. Exit codes: 0 success or a true predicate,
1 a false predicate, 2 bad input, 3 a nilpotency check ran out of its cap.
"""

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from dotenv import load_dotenv

from trinomial_lnd import __version__
from trinomial_lnd.config import EngineConfig
from trinomial_lnd.engine.workspace import Workspace
from trinomial_lnd.errors import ConfigError
from trinomial_lnd.utils.output import dumps

logger = logging.getLogger("trinomial_lnd")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3


def _emit(payload: Any) -> None:
    sys.stdout.write(dumps(payload) + "\n")


def _failed(result: Dict[str, Any]) -> Optional[int]:
    if result["result"] == "error":
        print(f"error: {result['error']}", file=sys.stderr)
        return EXIT_INPUT
    return None


def _undecided(verdict: Dict[str, Any]) -> bool:
    return verdict["nilpotency"]["nilpotent"] is None


def cmd_info(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.info(args.spec)
    code = _failed(result)
    if code is not None:
        return code
    _emit(result["info"])
    return EXIT_OK


def cmd_elementary(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.elementary(args.spec, listing=args.list)
    code = _failed(result)
    if code is not None:
        return code
    result.pop("result")
    _emit(result)
    return EXIT_OK


def cmd_is_root(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.is_root(args.degree, args.spec)
    code = _failed(result)
    if code is not None:
        return code
    _emit(result["root"])
    return EXIT_OK if result["root"]["is_root"] else EXIT_FALSE


def cmd_witness(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.witness(args.degree, args.spec)
    code = _failed(result)
    if code is not None:
        return code
    result.pop("result")
    _emit(result)
    if not result["root"]["is_root"]:
        return EXIT_FALSE
    if any(_undecided(entry) for entry in result["derivations"]):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_roots(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.roots(args.box, args.spec, output_format=args.format)
    code = _failed(result)
    if code is not None:
        return code
    if args.format == "csv":
        sys.stdout.write(result["csv"])
    else:
        _emit(result["roots"])
    return EXIT_OK


def cmd_verify(ws: Workspace, args: argparse.Namespace) -> int:
    try:
        with open(args.derivation, encoding="utf-8") as f:
            derivation_text = f.read()
    except UnicodeDecodeError as e:
        print(f"error: {args.derivation} is not valid UTF-8: {e.reason}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: cannot read {args.derivation}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    result = ws.verify(derivation_text, args.spec, nilpotency_cap=args.nilpotency_cap)
    code = _failed(result)
    if code is not None:
        return code
    result.pop("result")
    _emit(result)
    if _undecided(result):
        return EXIT_UNKNOWN
    accepted = result["well_defined"] and result["homogeneous"] and result["elementary"] is not None
    return EXIT_OK if accepted else EXIT_FALSE


def cmd_oracle(ws: Workspace, args: argparse.Namespace) -> int:
    result = ws.oracle(
        args.spec,
        degrees=args.degree,
        window=tuple(args.window) if args.window else None,
        cap=args.cap,
        samples=args.samples,
        seed=args.seed,
        nilpotency_cap=args.nilpotency_cap,
    )
    code = _failed(result)
    if code is not None:
        return code
    _emit(result["report"])
    return EXIT_OK if result["report"]["ok"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=True, help="spec file naming the trinomial")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="trinomial-lnd",
        description="Locally nilpotent derivations and roots of trinomial algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", parents=[common], help="grading group and generator degrees")
    info.set_defaults(handler=cmd_info)

    elementary = commands.add_parser("elementary", parents=[common], help="classes of elementary derivations")
    mode = elementary.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="only the number of classes (default)")
    mode.add_argument("--list", action="store_true", help="every class with its image formulas")
    elementary.set_defaults(handler=cmd_elementary)

    degree_help = "coordinates in the active basis; torsion residues follow a ';'"
    is_root = commands.add_parser("is-root", parents=[common], help="decide whether a degree is a root")
    is_root.add_argument("--degree", nargs="+", required=True, help=degree_help)
    is_root.set_defaults(handler=cmd_is_root)

    witness = commands.add_parser("witness", parents=[common], help="elementary derivations of a root degree")
    witness.add_argument("--degree", nargs="+", required=True, help=degree_help)
    witness.set_defaults(handler=cmd_witness)

    roots = commands.add_parser("roots", parents=[common], help="all roots in a coordinate box")
    roots.add_argument(
        "--box", nargs=2, type=int, action="append", required=True, metavar=("LO", "HI"), help="one per coordinate"
    )
    roots.add_argument("--format", choices=("json", "csv"), default="json")
    roots.set_defaults(handler=cmd_roots)

    verify = commands.add_parser("verify", parents=[common], help="check a derivation file")
    verify.add_argument("derivation", help="derivation file, one 'T(i,j) -> expression' per line")
    verify.add_argument("--nilpotency-cap", type=int, help="powers tried before giving up")
    verify.set_defaults(handler=cmd_verify)

    oracle = commands.add_parser("oracle", parents=[common], help="brute-force check on small degrees")
    oracle.add_argument("--degree", nargs="+", action="append", help=degree_help + "; repeatable")
    oracle.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), help="ψ-window when no --degree")
    oracle.add_argument("--cap", type=int, help="total-degree bound on images")
    oracle.add_argument("--samples", type=int, help="random combinations per space")
    oracle.add_argument("--seed", type=int)
    oracle.add_argument("--nilpotency-cap", type=int, help="powers tried before giving up")
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def configure_logging(config: EngineConfig, verbosity: int) -> None:
    level = getattr(logging, config.log_level.upper())
    if verbosity == 1:
        level = min(level, logging.INFO)
    elif verbosity >= 2:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        config = EngineConfig.from_env()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    configure_logging(config, args.verbose)
    workspace = Workspace(config)
    workspace.initialize()
    try:
        return args.handler(workspace, args)
    finally:
        workspace.close()


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
