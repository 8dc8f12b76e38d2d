"""Command line: ``cnsalign align | eval | synth``.

Exit codes: 0 ok, 1 usage, 2 alignment or evaluation error, 3 I/O or input format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .anchors import GazetteerError, load_gazetteer
from .config import AlignConfig, ConfigError
from .evaluation import (
    EvaluationError, GoldAlignment, GoldFormatError, aggregate, evaluate, parse_gold,
)
from .paragraphs import NoValidAlignment
from .pipeline import Mode, pair_id_for, run_batch, run_pipeline
from .report import parse_report, render_json, render_report
from .synth import SynthError, SynthParams, generate_corpus, write_corpus

EXIT_OK, EXIT_USAGE, EXIT_ALIGN, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cnsalign", description="Paragraph and clause alignment of English-Chinese news text.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("align", help="align one document pair, or a directory of pairs")
    a.add_argument("--english", type=Path)
    a.add_argument("--chinese", type=Path)
    a.add_argument("--batch", type=Path, metavar="DIR", help="align every <id>.en.txt / <id>.zh.txt pair in DIR")
    a.add_argument("--gazetteer", type=Path, help="place-name TSV (default: bundled list)")
    a.add_argument("--config", type=Path, help="JSON file of AlignConfig fields")
    a.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override one config field")
    a.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.BOTH.value)
    a.add_argument("--out", type=Path, help="JSON report file, or output directory with --batch")
    a.add_argument("--render", choices=("text", "json"), help="print the report to stdout")
    a.add_argument("--pair-id")
    a.add_argument("--workers", type=int, default=1)

    e = sub.add_parser("eval", help="score predicted alignments against gold")
    e.add_argument("--pred", type=Path, required=True, help="JSON report, or a directory of them")
    e.add_argument("--gold", type=Path, required=True, help="gold file (or report JSON), or a directory")
    e.add_argument("--json", action="store_true", help="print metrics as JSON")

    s = sub.add_parser("synth", help="generate a synthetic corpus with gold alignments")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--pairs", type=int, required=True)
    s.add_argument("--merge", type=float, default=SynthParams.merge)
    s.add_argument("--split", type=float, default=SynthParams.split)
    s.add_argument("--drop", type=float, default=SynthParams.drop)
    s.add_argument("--anchors", type=float, default=SynthParams.anchors)
    s.add_argument("--paragraphs", type=int, default=SynthParams.paragraphs)
    s.add_argument("--gazetteer", type=Path)
    s.add_argument("--out-dir", type=Path, required=True)
    return parser


def _config(args) -> AlignConfig:
    values = {}
    if args.config is not None:
        values.update(json.loads(args.config.read_text(encoding="utf-8")))
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        values[key.strip()] = value
    return AlignConfig.from_mapping(values)


def _cmd_align(args) -> int:
    if args.batch is None and (args.english is None or args.chinese is None):
        raise UsageError("align needs --english and --chinese, or --batch")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    cfg = _config(args)
    gaz = load_gazetteer(args.gazetteer)

    if args.batch is None:
        report = run_pipeline(args.english, args.chinese, gaz, cfg, args.mode, args.pair_id)
        if args.out is not None:
            args.out.write_bytes(render_json(report))
        if args.render:
            sys.stdout.buffer.write(render_report(report, args.render))
        return EXIT_OK

    jobs = []
    for pe in sorted(args.batch.glob("*.en.txt")):
        pc = pe.with_name(pe.name[: -len(".en.txt")] + ".zh.txt")
        if not pc.exists():
            raise FileNotFoundError(f"no Chinese file for {pe.name}")
        jobs.append((pair_id_for(pe), pe, pc))
    reports = run_batch(jobs, gaz, cfg, args.mode, args.workers)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        for r in reports:
            (args.out / f"{r.pair_id}.json").write_bytes(render_json(r))
    if args.render:
        for r in reports:
            sys.stdout.buffer.write(render_report(r, args.render))
    return EXIT_OK


def _load_gold(path: Path) -> GoldAlignment:
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return GoldAlignment.from_report(parse_report(text))
    return parse_gold(text)


def _cmd_eval(args) -> int:
    if args.pred.is_dir():
        results = []
        for pred in sorted(args.pred.glob("*.json")):
            pid = pair_id_for(pred)
            gold = args.gold / f"{pid}.gold"
            if not gold.exists():
                gold = args.gold / f"{pid}.json"
            results.append(evaluate(parse_report(pred.read_bytes()), _load_gold(gold)))
        ev = aggregate(results)
    else:
        ev = evaluate(parse_report(args.pred.read_bytes()), _load_gold(args.gold))
    metrics = ev.as_dict()
    if args.json:
        print(json.dumps(metrics, indent=2))
    else:
        for key, value in metrics.items():
            print(f"{key}: {value:.4f}" if isinstance(value, float) else f"{key}: {value}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.pairs < 0:
        raise UsageError("--pairs must be non-negative")
    params = SynthParams(paragraphs=args.paragraphs, merge=args.merge, split=args.split,
                         drop=args.drop, anchors=args.anchors)
    try:
        params.validate()
    except SynthError as exc:
        raise UsageError(str(exc)) from None
    gaz = load_gazetteer(args.gazetteer)
    written = write_corpus(args.out_dir, generate_corpus(args.seed, args.pairs, params, gaz))
    print(f"wrote {len(written)} pairs to {args.out_dir}")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"align": _cmd_align, "eval": _cmd_eval, "synth": _cmd_synth}[args.command]
        return handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"cnsalign: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoValidAlignment, EvaluationError) as exc:
        print(f"cnsalign: {exc}", file=sys.stderr)
        return EXIT_ALIGN
    except (OSError, GazetteerError, GoldFormatError, json.JSONDecodeError, KeyError) as exc:
        print(f"cnsalign: input error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
