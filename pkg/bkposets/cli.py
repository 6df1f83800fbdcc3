"""
Command-line front end.

Every command writes its result to stdout (or ``--out``) and logs to stderr,
so output stays byte-stable across runs and worker counts. Exit codes are
listed in :data:`utils.constants.EXIT`.

Usage:
    bkposets linext count ferrers:3,2
    bkposets relations report "osum(antichain:3,antichain:1)" --witnesses
    bkposets scan --n 4 --connected --exclude-property le-cactus
    bkposets verify --max-size 5
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, Literal, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from bkposets.errors import BKError, DegreeCapError, LabelIndexError
from bkposets.linext import count_extensions, enumerate_extensions, export_dot, linext_graph
from bkposets.models import (
    ExtensionList,
    GroupReport,
    PosetDocument,
    RelationReportDocument,
    StructureReport,
    TableauDocument,
    load_poset,
    load_tableau,
)
from bkposets.permgroup import bk_group
from bkposets.poset import Poset, ordinal_decomposition, structure
from bkposets.relations import relation_report
from bkposets.scan import PROPERTIES, ScanFilter, classify
from bkposets.spec_parser import parse_spec
from bkposets.tableau import cst_bk_move
from bkposets.verify import verify_suite
from config import settings
from utils.constants import EXIT

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-30s | %(message)s"


class CliConfig(BaseModel):
    """Per-run overrides of the engine settings."""

    model_config = ConfigDict(frozen=True)

    degree_cap: int = Field(default_factory=lambda: settings.max_degree, ge=1)
    threads: int = Field(default_factory=lambda: settings.threads, ge=1)
    output: Path | None = None
    format: Literal["json", "text", "dot"] = "json"
    log_level: str = Field(default_factory=lambda: settings.log_level)

    @contextmanager
    def applied(self) -> Iterator[None]:
        """Run with ``degree_cap`` and ``threads`` in force, restoring the settings after."""
        saved = settings.max_degree, settings.threads
        settings.max_degree, settings.threads = self.degree_cap, self.threads
        try:
            yield
        finally:
            settings.max_degree, settings.threads = saved


class UsageError(Exception):
    """Bad command-line input that argparse itself accepts."""


def _emit(config: CliConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if config.output is None:
        sys.stdout.write(text)
    else:
        config.output.write_text(text, encoding="utf-8")
        logger.info(f"📝 Wrote {config.output}")


def _dump(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def read_poset(argument: str) -> Poset:
    """A path to an existing ``.json`` poset document, or a family-spec string."""
    path = Path(argument)
    if argument.endswith(".json") and path.is_file():
        return load_poset(path.read_text(encoding="utf-8"))
    return parse_spec(argument)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _poset_build(args: argparse.Namespace, config: CliConfig) -> int:
    if (args.spec is None) == (args.file is None):
        raise UsageError("poset build needs exactly one of --spec or --file")
    if args.spec is not None:
        poset = parse_spec(args.spec)
    else:
        poset = load_poset(Path(args.file).read_text(encoding="utf-8"))
    _emit(config, _dump(PosetDocument.from_poset(poset)))
    return EXIT.OK


def _poset_info(args: argparse.Namespace, config: CliConfig) -> int:
    poset = read_poset(args.poset)
    decomposition = ordinal_decomposition(poset)
    try:
        extensions: int | None = count_extensions(poset)
    except (OverflowError, RecursionError):
        extensions = None
    report = StructureReport.build(
        poset, structure(poset), decomposition.summands, decomposition.split_points, extensions
    )
    _emit(config, _dump(report))
    return EXIT.OK


def _linext(args: argparse.Namespace, config: CliConfig) -> int:
    poset = read_poset(args.poset)
    if args.action == "count":
        _emit(config, str(len(enumerate_extensions(poset))))
        return EXIT.OK
    if args.action == "list":
        space = enumerate_extensions(poset)
        if config.format == "text":
            _emit(config, "\n".join(str(ext) for ext in space))
        else:
            _emit(config, ExtensionList(words=space.word_lists()).dump())
        return EXIT.OK

    graph = linext_graph(poset)
    if config.format == "dot":
        _emit(config, export_dot(graph))
    else:
        data = {
            "nodes": [{"id": node, "word": list(graph.nodes[node]["word"])} for node in sorted(graph.nodes)],
            "edges": [
                {"source": a, "target": b, "label": graph.edges[a, b]["label"]}
                for a, b in sorted(tuple(sorted(edge)) for edge in graph.edges)
            ],
        }
        _emit(config, json.dumps(data, indent=2))
    return EXIT.OK


def _group_report(args: argparse.Namespace, config: CliConfig) -> int:
    group = bk_group(read_poset(args.poset))
    _emit(config, _dump(GroupReport.from_group(group)))
    return EXIT.OK


def _relations_report(args: argparse.Namespace, config: CliConfig) -> int:
    poset = read_poset(args.poset)
    report = relation_report(poset)
    witness_words = enumerate_extensions(poset).word_lists() if args.witnesses else None
    _emit(config, _dump(RelationReportDocument.from_report(report, witness_words)))
    return EXIT.OK


def _scan(args: argparse.Namespace, config: CliConfig) -> int:
    connected = True if args.connected else False if args.disconnected else None
    filters = ScanFilter(
        connected=connected,
        series_parallel=True if args.series_parallel else None,
        require=tuple(args.property),
        exclude=tuple(args.exclude_property),
    )
    records = classify(args.n, filters, threads=config.threads)
    lines = [record.model_dump_json() for record in records]
    _emit(config, "\n".join(lines))
    logger.info(f"✅ {len(records)} classes written")
    return EXIT.OK


def _verify(args: argparse.Namespace, config: CliConfig) -> int:
    report = verify_suite(args.max_size, args.budget)
    _emit(config, _dump(report))
    return EXIT.OK if report.passed else EXIT.VERIFY_FAILED


def _tableau_bk(args: argparse.Namespace, config: CliConfig) -> int:
    tableau = load_tableau(Path(args.file).read_text(encoding="utf-8"))
    if args.i < 1:
        raise LabelIndexError(f"BK move index must be >= 1, got {args.i}")
    _emit(config, _dump(TableauDocument.from_tableau(cst_bk_move(tableau, args.i))))
    return EXIT.OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-degree", type=int, default=None, help="Degree cap (default BK_MAX_DEGREE).")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (default BK_THREADS).")
    parser.add_argument("--out", default=None, help="Write output to this file instead of stdout.")
    parser.add_argument("--format", choices=("json", "text", "dot"), default="json")
    parser.add_argument("--log-level", default=None, help="Log level on stderr (default BK_LOG_LEVEL).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bkposets", description="Bender-Knuth moves on linear extensions.")
    commands = parser.add_subparsers(dest="command", required=True)

    poset = commands.add_parser("poset", help="Build or describe a poset.")
    poset_actions = poset.add_subparsers(dest="action", required=True)
    build = poset_actions.add_parser("build", help="Emit the poset JSON document.")
    build.add_argument("--spec", default=None, help='Family spec, e.g. "ferrers:3,2".')
    build.add_argument("--file", default=None, help="Poset JSON document.")
    _add_common_args(build)
    build.set_defaults(func=_poset_build)
    info = poset_actions.add_parser("info", help="Structure record.")
    info.add_argument("poset")
    _add_common_args(info)
    info.set_defaults(func=_poset_info)

    linext = commands.add_parser("linext", help="Linear extensions and their graph.")
    linext.add_argument("action", choices=("count", "list", "graph"))
    linext.add_argument("poset")
    _add_common_args(linext)
    linext.set_defaults(func=_linext)

    group = commands.add_parser("group", help="The BK group of a poset.")
    group.add_argument("action", choices=("report",))
    group.add_argument("poset")
    _add_common_args(group)
    group.set_defaults(func=_group_report)

    relations = commands.add_parser("relations", help="Relation report of a poset.")
    relations.add_argument("action", choices=("report",))
    relations.add_argument("poset")
    relations.add_argument("--witnesses", action="store_true", help="Attach witnessing extensions.")
    _add_common_args(relations)
    relations.set_defaults(func=_relations_report)

    scan = commands.add_parser("scan", help="Classify every poset on n elements (JSON lines).")
    scan.add_argument("--n", type=int, required=True)
    shape = scan.add_mutually_exclusive_group()
    shape.add_argument("--connected", action="store_true")
    shape.add_argument("--disconnected", action="store_true")
    scan.add_argument("--series-parallel", action="store_true")
    scan.add_argument("--property", action="append", default=[], choices=PROPERTIES)
    scan.add_argument("--exclude-property", action="append", default=[], choices=PROPERTIES)
    _add_common_args(scan)
    scan.set_defaults(func=_scan)

    verify = commands.add_parser("verify", help="Run the verification battery.")
    verify.add_argument("--suite", choices=("paper", "full"), default="paper", help="\"full\" is an alias of \"paper\".")
    verify.add_argument("--max-size", type=int, default=None)
    verify.add_argument("--budget", type=float, default=None, help="Seconds before remaining checks are skipped.")
    _add_common_args(verify)
    verify.set_defaults(func=_verify)

    tableau = commands.add_parser("tableau", help="BK moves on column-strict tableaux.")
    tableau.add_argument("action", choices=("bk",))
    tableau.add_argument("--file", required=True, help="Tableau JSON document.")
    tableau.add_argument("--i", type=int, required=True)
    _add_common_args(tableau)
    tableau.set_defaults(func=_tableau_bk)

    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    overrides = {
        "degree_cap": args.max_degree,
        "threads": args.threads,
        "output": args.out,
        "format": args.format,
        "log_level": args.log_level,
    }
    return CliConfig(**{key: value for key, value in overrides.items() if value is not None})


def _configure_logging(level: str) -> None:
    logging.basicConfig(stream=sys.stderr, level=level.upper(), format=LOG_FORMAT, force=True)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the command and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    try:
        config = _config(args)
    except ValidationError as error:
        print(f"bkposets: invalid option: {error.errors()[0]['msg']}", file=sys.stderr)
        return EXIT.USAGE
    _configure_logging(config.log_level)
    command: Callable[[argparse.Namespace, CliConfig], int] = args.func
    try:
        with config.applied():
            return command(args, config)
    except DegreeCapError as error:
        print(f"bkposets: {error}", file=sys.stderr)
        return EXIT.DEGREE_CAP
    except (BKError, UsageError, OSError) as error:
        print(f"bkposets: {error}", file=sys.stderr)
        return EXIT.USAGE


def main() -> None:
    sys.exit(run())
