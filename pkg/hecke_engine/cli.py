"""
Command-line interface for the Hecke engine

Every command is a thin adapter over the engine modules: it parses flags,
calls one engine operation and prints the result as text or, with
--machine, as a single JSON record.

Exit codes: 0 success, 2 parse/config error, 3 invariant violation,
4 verification failure, 1 unexpected error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from hecke_engine.config import settings
from hecke_engine.errors import ConfigurationError, HeckeEngineError, VerificationError
from hecke_engine.expression import parse_expression, parse_integer_list
from hecke_engine.hecke import he_basis, he_replay, he_to_record, he_to_text
from hecke_engine.kl import KLTable, kl_cache_load, kl_cache_save, kl_canonical
from hecke_engine.models import (
    BruhatRecord,
    CompositionsRecord,
    ErrorRecord,
    FactorRecord,
    KLRecord,
    KLTableRecord,
    LengthRecord,
    MatrixRecord,
)
from hecke_engine.verification import run_check
from hecke_engine.weyl import (
    AffinePerm,
    ap_bruhat_leq,
    ap_dominance_leq,
    ap_enumerate,
    ap_from_window,
    ap_label,
    ap_length,
    ap_matrix_block,
    ap_reduced_word,
    ap_replay,
    enumerate_compositions,
    label_name,
)

logger = logging.getLogger(__name__)


class CliConfig(BaseModel):
    """Options shared by every command"""
    d: int = Field(..., ge=3, description="Rank")
    machine: bool = Field(False, description="Emit one JSON record instead of text")
    cache_path: Optional[str] = Field(None, description="KL cache file")
    verify: bool = Field(False, description="Run the oracle suites in `check`")
    max_length: Optional[int] = Field(None, ge=0, description="Length bound L")


def _config(args: argparse.Namespace) -> CliConfig:
    try:
        return CliConfig(
            d=args.d,
            machine=args.machine,
            cache_path=getattr(args, "cache", None) or settings.cache_path,
            verify=getattr(args, "verify", False),
            max_length=getattr(args, "upto_length", None),
        )
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        raise ConfigurationError(f"invalid {field}: {error['msg']}") from e


def _window(d: int, text: str) -> AffinePerm:
    return ap_from_window(d, parse_integer_list(text))


def _emit(config: CliConfig, record: BaseModel, text: str) -> None:
    print(record.model_dump_json() if config.machine else text)


# Commands

def cmd_mult(args: argparse.Namespace) -> int:
    config = _config(args)
    product = parse_expression(config.d, " * ".join(args.expressions))
    _emit(config, he_to_record(product), he_to_text(product))
    return 0


def cmd_factor(args: argparse.Namespace) -> int:
    config = _config(args)
    w = _window(config.d, args.w)
    reduced_word = ap_reduced_word(w)
    replayed = None
    if args.replay:
        replayed = ap_replay(config.d, reduced_word) == w and he_replay(w) == he_basis(w)
    record = FactorRecord(
        d=config.d,
        w=list(w.window),
        rho_prefix=reduced_word.rho_prefix,
        word=[label_name(g) for g in reduced_word.word],
        monomial=reduced_word.render(),
        replayed=replayed,
    )
    _emit(config, record, reduced_word.render())
    if replayed is False:
        raise VerificationError(f"replaying {reduced_word.render()} does not give exactly [{ap_label(w)}]")
    return 0


def cmd_length(args: argparse.Namespace) -> int:
    config = _config(args)
    w = _window(config.d, args.w)
    length = ap_length(w)
    _emit(config, LengthRecord(d=config.d, w=list(w.window), length=length), str(length))
    return 0


def _bruhat_verdict(y_leq_w: bool, w_leq_y: bool) -> str:
    if y_leq_w and w_leq_y:
        return "y = w"
    if y_leq_w:
        return "y < w"
    if w_leq_y:
        return "w < y"
    return "incomparable"


def cmd_bruhat(args: argparse.Namespace) -> int:
    config = _config(args)
    y = _window(config.d, args.y)
    w = _window(config.d, args.w)
    record = BruhatRecord(
        d=config.d,
        y=list(y.window),
        w=list(w.window),
        y_leq_w=ap_bruhat_leq(y, w),
        w_leq_y=ap_bruhat_leq(w, y),
        y_dominated_by_w=ap_dominance_leq(y, w),
    )
    _emit(config, record, _bruhat_verdict(record.y_leq_w, record.w_leq_y))
    return 0


def _load_table(d: int, cache_path: Optional[str]) -> KLTable:
    table = KLTable(d)
    if cache_path and Path(cache_path).exists():
        kl_cache_load(cache_path, into=table)
        logger.info(f"Loaded {len(table)} KL entries from {cache_path}")
    return table


def cmd_kl(args: argparse.Namespace) -> int:
    config = _config(args)
    table = _load_table(config.d, config.cache_path)
    for w in ap_enumerate(config.d, config.max_length):
        kl_canonical(w, table)
    if config.cache_path:
        kl_cache_save(table, config.cache_path)
    entries = [(y, w, p) for y, w, p in table.entries() if ap_length(w) <= config.max_length]
    record = KLTableRecord(
        d=config.d,
        entries=[KLRecord(d=config.d, y=list(y.window), w=list(w.window), p=p.to_pairs()) for y, w, p in entries],
    )
    text = "\n".join(f"P({ap_label(y)}, {ap_label(w)}) = {p}" for y, w, p in entries)
    _emit(config, record, text)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_check(config.d, config.max_length, verify=config.verify)
    lines = []
    for suite in report.suites:
        lines.append(f"{suite.name}: {'PASS' if suite.passed else 'FAIL'} ({suite.checked} checks)")
        lines.extend(f"  {failure}" for failure in suite.failures)
    _emit(config, report, "\n".join(lines))
    if not report.passed:
        failed = [suite.name for suite in report.suites if not suite.passed]
        logger.warning(f"Verification failed: {', '.join(failed)}")
        return VerificationError.exit_code
    return 0


def cmd_compositions(args: argparse.Namespace) -> int:
    config = _config(args)
    compositions = enumerate_compositions(args.n, config.d)
    record = CompositionsRecord(n=args.n, d=config.d, compositions=[list(c.lam) for c in compositions])
    _emit(config, record, "\n".join(",".join(str(part) for part in c.lam) for c in compositions))
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    config = _config(args)
    w = _window(config.d, args.w)
    rows = list(range(1, 2 * config.d + 1))
    block = ap_matrix_block(w, rows, rows)
    record = MatrixRecord(d=config.d, w=list(w.window), rows=rows, cols=rows, block=block)
    _emit(config, record, "\n".join(" ".join(str(x) for x in row) for row in block))
    return 0


def cmd_cache(args: argparse.Namespace) -> int:
    config = _config(args)
    if not config.cache_path:
        raise ConfigurationError("no cache file: pass --cache or set HECKE_CACHE_PATH")
    if args.action == "validate":
        if not Path(config.cache_path).exists():
            raise ConfigurationError(f"cache file {config.cache_path} does not exist")
        table = kl_cache_load(config.cache_path)
    else:
        if not args.sources:
            raise ConfigurationError("cache merge needs at least one source file")
        table = _load_table(config.d, config.cache_path)
        for source in args.sources:
            kl_cache_load(source, into=table)
        kl_cache_save(table, config.cache_path)
    record = KLTableRecord(
        d=table.d,
        entries=[KLRecord(d=table.d, y=list(y.window), w=list(w.window), p=p.to_pairs()) for y, w, p in table.entries()],
    )
    _emit(config, record, f"{config.cache_path}: {len(table)} entries, d={table.d}")
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "mult": cmd_mult,
    "factor": cmd_factor,
    "length": cmd_length,
    "bruhat": cmd_bruhat,
    "kl": cmd_kl,
    "check": cmd_check,
    "compositions": cmd_compositions,
    "matrix": cmd_matrix,
    "cache": cmd_cache,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=settings.default_rank, help="rank d >= 3")
    common.add_argument("--machine", action="store_true", help="print one JSON record")

    parser = argparse.ArgumentParser(
        prog="hecke_engine",
        description="Exact arithmetic in the extended affine Hecke algebra of type D",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    mult = commands.add_parser("mult", parents=[common], help="multiply element expressions")
    mult.add_argument("expressions", nargs="+", help='e.g. "Trho * T1 * Trho" or "(v^2-1) * [w=1,2,3,4,5,6]"')

    factor = commands.add_parser("factor", parents=[common], help="reduced word of a window")
    factor.add_argument("--w", required=True, help="window a1,...,aD (use --w=-1,... for a leading minus)")
    factor.add_argument("--replay", action="store_true", help="re-multiply the word and require an exact match")

    length = commands.add_parser("length", parents=[common], help="length of a window")
    length.add_argument("--w", required=True)

    bruhat = commands.add_parser("bruhat", parents=[common], help="compare two windows in the Bruhat order")
    bruhat.add_argument("--y", required=True)
    bruhat.add_argument("--w", required=True)

    kl = commands.add_parser("kl", parents=[common], help="KL polynomials up to a length")
    kl.add_argument("--upto-length", type=int, required=True)
    kl.add_argument("--cache", help="cache file to extend (default HECKE_CACHE_PATH)")

    check = commands.add_parser("check", parents=[common], help="verify relations and, with --verify, the oracle suites")
    check.add_argument("--verify", action="store_true")
    check.add_argument("--upto-length", type=int, default=None, help="default HECKE_CHECK_MAX_LENGTH")

    compositions = commands.add_parser("compositions", parents=[common], help="palindromic weights of size 2d")
    compositions.add_argument("--n", type=int, required=True)

    matrix = commands.add_parser("matrix", parents=[common], help="period block of the monomial matrix")
    matrix.add_argument("--w", required=True)

    cache = commands.add_parser("cache", parents=[common], help="validate or merge KL cache files")
    cache.add_argument("action", choices=["validate", "merge"])
    cache.add_argument("sources", nargs="*", help="files to merge into the cache")
    cache.add_argument("--cache", help="cache file (default HECKE_CACHE_PATH)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=settings.log_level)
    parser = build_parser()
    args = parser.parse_args(argv)
    machine = args.machine
    try:
        return COMMANDS[args.command](args)
    except HeckeEngineError as e:
        logger.debug(f"{args.command} failed with {e.kind}: {e.message}")
        if machine:
            print(ErrorRecord(error=e.kind, detail=e.message, exit_code=e.exit_code).model_dump_json())
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        if machine:
            print(ErrorRecord(error=type(e).__name__, detail=str(e), exit_code=1).model_dump_json())
        return 1


if __name__ == "__main__":
    sys.exit(main())
