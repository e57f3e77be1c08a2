"""Main entry point for vpgkit.

    vpgkit pipeline run pipelines/padded.vpg
    vpgkit vpa union u a b --builtin a=anbn --builtin b=anbn-le3 --save u=u.json
    vpgkit stallings build H F aa b abA --builtin F=free2
    vpgkit catalog list
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.logging import RichHandler

from .config.settings import settings
from .container import Container, create_container
from .domain.enums import ArtifactKind
from .domain.errors import PipelineError, VpgkitError, WordSyntaxError
from .service import catalog

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_ERROR = 2
EXIT_ASSERTION = 3


def _same(*verbs: str) -> Dict[str, str]:
    return {verb: verb for verb in verbs}


CONGRUENCE_VERBS = _same("reduce", "classes", "profile", "distinguish")
EQUATION_VERBS = _same("solve")

# noun -> {command-line verb: script verb}
NOUN_VERBS: Dict[str, Dict[str, str]] = {
    "vpa": _same(
        "validate", "run", "words", "empty", "equiv", "determinize", "complete", "track",
        "union", "intersect", "concat", "complement", "star", "rename", "quotient",
    ),
    "congruence": CONGRUENCE_VERBS,
    "cong": CONGRUENCE_VERBS,
    "group": _same(
        "stallings", "index", "member", "witness", "preimage", "wpdfa", "coword",
        "decompose", "embed", "symmetric", "lift",
    ),
    "stallings": {
        "build": "stallings",
        "index": "index",
        "member": "member",
        "dfa": "preimage",
        "witness": "witness",
    },
    "equation": EQUATION_VERBS,
    "eqn": EQUATION_VERBS,
}


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(prog="vpgkit", description="Visibly pushdown languages and groups toolkit")
    parser.add_argument("--verbose", "-v", action="store_true", help="log to stderr and show result panels")
    parser.add_argument("--jobs", "-j", type=int, default=None, help="worker threads (default: VPGKIT_JOBS)")
    nouns = parser.add_subparsers(dest="noun", required=True)

    pipeline = nouns.add_parser("pipeline", help="run pipeline scripts")
    pipeline_verbs = pipeline.add_subparsers(dest="verb", required=True)
    run = pipeline_verbs.add_parser("run", help="run scripts and print their reports")
    run.add_argument("scripts", nargs="+", type=Path)
    pipeline_verbs.add_parser("verbs", help="list script verbs")

    catalog_parser = nouns.add_parser("catalog", help="built-in automata, groups and oracles")
    catalog_verbs = catalog_parser.add_subparsers(dest="verb", required=True)
    catalog_verbs.add_parser("list", help="list catalog entries")
    export = catalog_verbs.add_parser("export", help="write a catalog entry to a file")
    export.add_argument("entry")
    export.add_argument("path")

    for noun, verbs in NOUN_VERBS.items():
        noun_parser = nouns.add_parser(noun, help=f"{noun} verbs: {', '.join(verbs)}")
        noun_parser.add_argument("verb", choices=list(verbs))
        noun_parser.add_argument("args", nargs="*", help="verb arguments, as in pipeline scripts")
        noun_parser.add_argument(
            "--load", action="append", default=[], metavar="NAME=KIND:PATH", help="load an artifact first"
        )
        noun_parser.add_argument(
            "--builtin", action="append", default=[], metavar="NAME=ENTRY", help="bind a catalog entry first"
        )
        noun_parser.add_argument(
            "--save", action="append", default=[], metavar="NAME=PATH", help="save an artifact afterwards"
        )
        noun_parser.add_argument(
            "--dot", action="append", default=[], metavar="NAME=PATH", help="export DOT afterwards"
        )
    return parser.parse_args(argv)


def configure_logging(verbose: bool) -> None:
    handlers: List[logging.Handler] = []
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    if verbose:
        handlers.append(RichHandler(console=Console(stderr=True), show_path=False))
    if not handlers:
        handlers.append(logging.NullHandler())
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def _pair(text: str, option: str) -> Tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name or not value:
        raise WordSyntaxError(f"--{option} expects NAME=VALUE, got {text!r}")
    return name, value


class Application:
    """Command dispatch over one container."""

    def __init__(self, container: Container):
        self._container = container

    def run(self, args: argparse.Namespace) -> int:
        if args.noun == "pipeline":
            if args.verb == "verbs":
                return self._list_verbs()
            return self._run_pipelines(args.scripts)
        if args.noun == "catalog":
            if args.verb == "list":
                return self._list_catalog()
            return self._export_entry(args.entry, args.path)
        return self._run_verb(args)

    def _run_pipelines(self, scripts: List[Path]) -> int:
        display = self._container.display
        runner = self._container.pipeline_runner
        exit_code = EXIT_OK
        for script in [path.resolve() for path in scripts]:
            try:
                report = runner.run_pipeline(self._container.workspace.read_text(str(script)), base_dir=script.parent)
            except PipelineError as e:
                if e.report is not None:
                    display.show_text(e.report.render())
                display.show_error(f"{script}: {e}")
                return EXIT_ERROR
            display.show_text(report.render())
            if settings.verbose:
                display.show_report_summary(report)
            if not report.ok:
                exit_code = EXIT_ASSERTION
        return exit_code

    def _list_verbs(self) -> int:
        self._container.display.show_text("".join(f"{verb}\n" for verb in self._container.service_facade.verbs))
        return EXIT_OK

    def _list_catalog(self) -> int:
        rows = [(name, entry.kind.value, entry.description) for name, entry in catalog.CATALOG.items()]
        self._container.display.show_table("catalog", ("entry", "kind", "description"), rows)
        return EXIT_OK

    def _export_entry(self, entry: str, path: str) -> int:
        kind, artifact = catalog.build(entry)
        if kind is ArtifactKind.ORACLE:
            raise WordSyntaxError(f"{entry} is an oracle and has no file form")
        workspace = self._container.workspace
        workspace.add(entry, kind, artifact, replace=True)
        workspace.save(entry, path)
        self._container.display.show_result(f"catalog export {entry}", f"{entry} -> {path}")
        return EXIT_OK

    def _run_verb(self, args: argparse.Namespace) -> int:
        workspace = self._container.workspace
        facade = self._container.service_facade
        for item in args.builtin:
            name, entry = _pair(item, "builtin")
            facade.execute("builtin", [name, entry])
        for item in args.load:
            name, source = _pair(item, "load")
            kind, sep, path = source.partition(":")
            if not sep:
                raise WordSyntaxError(f"--load expects NAME=KIND:PATH, got {item!r}")
            facade.execute("load", [name, kind, path])
        text = facade.execute(NOUN_VERBS[args.noun][args.verb], args.args)
        for item in args.save:
            workspace.save(*_pair(item, "save"))
        for item in args.dot:
            workspace.export_dot(*_pair(item, "dot"))
        self._container.display.show_result(f"{args.noun} {args.verb}", text)
        return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = parse_args(argv)

    # Runtime flags live on the global settings
    settings.verbose = args.verbose
    if args.jobs is not None:
        settings.jobs = max(1, args.jobs)
    configure_logging(args.verbose)

    container = create_container()
    try:
        return Application(container).run(args)
    except VpgkitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        container.display.show_error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"Application error: {e}", exc_info=True)
        container.display.show_error(f"unexpected error: {e}")
        return EXIT_UNEXPECTED


def run() -> None:
    """Run the application."""
    sys.exit(main())


if __name__ == "__main__":
    run()
