"""Command-line interface.

Subcommands mirror the pipeline entry points: ``summarize``, ``evaluate``,
``baseline``, ``analyze``, ``extract-graph``, ``parse-check``.  A run is
configured by flags, by a JSON config file (``--config``), or both; flags
win.  Exit codes: 0 clean, 1 when some documents failed or a reference
check missed, 2 for configuration or external-tool protocol errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from .corpus import _iter_blocks
from .exceptions import (
    AmrSumError,
    ConfigurationError,
    CorpusFormatError,
    ExternalToolError,
    PenmanSyntaxError,
)
from .graph import parse_penman, serialize_penman
from .pipeline import (
    REFERENCE_RESULTS,
    REFERENCE_TOLERANCE,
    DocumentFailure,
    RunConfig,
    analysis_payload,
    check_against_reference,
    failures_payload,
    prepare_corpus,
    reference_numbers_from_analysis,
    reference_numbers_from_evaluation,
    report_envelope,
    run_analysis,
    run_baseline,
    run_evaluate,
    run_summarize,
    summarize_one,
    summarize_payload,
    make_generator,
)

_CONFIG_FLAGS = (
    "corpus_path",
    "corpus_kind",
    "split_file",
    "method",
    "n",
    "generator",
    "parser",
    "rouge_variants",
    "sample_size",
    "seed",
    "timeout",
)


def _add_run_flags(p: argparse.ArgumentParser, *, verify: bool = False) -> None:
    p.add_argument("--config", metavar="FILE", help="JSON config file; flags override it")
    p.add_argument("--corpus", dest="corpus_path", metavar="PATH", help="corpus file or directory")
    p.add_argument(
        "--kind",
        dest="corpus_kind",
        choices=("amr-bank", "cnn-dm"),
        help="corpus layout (default amr-bank)",
    )
    p.add_argument("--split", dest="split_file", metavar="FILE", help="restrict to ids listed in FILE")
    p.add_argument(
        "--method",
        choices=("first_n", "cooccurrence_plus_first", "oracle"),
        help="sentence selection strategy",
    )
    p.add_argument("--n", type=int, help="sentence count for first_n and baselines")
    p.add_argument(
        "--generator",
        metavar="CMD",
        help="'alignment' or an external graph-to-text command",
    )
    p.add_argument(
        "--parser",
        metavar="CMD",
        help="'gold' (graphs must be in the corpus) or an external parser command",
    )
    p.add_argument(
        "--rouge-variants",
        metavar="LIST",
        help="comma-separated subset of rouge-1,rouge-2,rouge-l",
    )
    p.add_argument("--seed", type=int, help="RNG seed for sampling (default 42)")
    p.add_argument("--sample-size", type=int, help="sample this many summary sentences")
    p.add_argument("--micro", action="store_true", default=None, help="pool counts across documents instead of macro-averaging")
    p.add_argument("--partial-names", action="store_true", default=None, help="match entity names by word subset")
    p.add_argument("--timeout", type=float, help="seconds per sentence/graph for external tools")
    p.add_argument("--format", choices=("json", "table"), default="json", help="output format")
    p.add_argument("--output", metavar="FILE", help="write output here instead of stdout")
    if verify:
        p.add_argument(
            "--verify-paper",
            metavar="TARGET",
            choices=sorted(REFERENCE_RESULTS),
            help="compare aggregates against a published row "
            f"(±{REFERENCE_TOLERANCE} point): " + ", ".join(sorted(REFERENCE_RESULTS)),
        )


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="amrsum",
        description="Summarize stories through their semantic graphs and score the results.",
    )
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="run the three-step pipeline")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("evaluate", help="summarize then score against references")
    _add_run_flags(p, verify=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("baseline", help="score Lead-n and Lead-n-AMR")
    _add_run_flags(p, verify=True)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("analyze", help="best-match extractiveness analysis")
    _add_run_flags(p, verify=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("extract-graph", help="emit extracted summary graphs as PENMAN blocks")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_extract_graph)

    p = sub.add_parser("parse-check", help="validate PENMAN files block by block")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=_cmd_parse_check)
    return top


def build_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigurationError(f"cannot read config: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"config is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError("config file must hold a JSON object")
    for name in _CONFIG_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    for name in ("micro", "partial_names"):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if isinstance(data.get("rouge_variants"), str):
        data["rouge_variants"] = [
            v.strip() for v in data["rouge_variants"].split(",") if v.strip()
        ]
    if "corpus_path" not in data:
        raise ConfigurationError("no corpus given; use --corpus or a config file")
    return RunConfig.from_dict(data)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _emit_json(envelope: dict, output: str | None) -> None:
    _emit(json.dumps(envelope, indent=2, sort_keys=True), output)


def _failure_lines(failures: list[dict]) -> str:
    return "\n".join(
        f"FAILED {f['id']} [{f['stage']}] {f['message']}" for f in failures
    )


def _verify_lines(checks) -> tuple[str, bool]:
    lines = []
    all_ok = True
    for c in checks:
        mark = "ok" if c.ok else "FAIL"
        all_ok &= c.ok
        lines.append(
            f"{mark:4s} {c.name}: expected {c.expected:.1f} ± "
            f"{REFERENCE_TOLERANCE:.1f}, got {c.actual:.2f}"
        )
    return "\n".join(lines), all_ok


def _cmd_summarize(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    result = run_summarize(cfg)
    payload = summarize_payload(result)
    if args.format == "json":
        _emit_json(report_envelope("summarize", cfg, payload), args.output)
    else:
        lines = [f"{d['id']}\t{d['summary']}" for d in payload["documents"]]
        if payload["failures"]:
            lines.append(_failure_lines(payload["failures"]))
        _emit("\n".join(lines), args.output)
    return 1 if result.failures else 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    res = run_evaluate(cfg)
    payload = res.report.to_json_dict()
    payload["failures"] = failures_payload(res.summarize.failures)
    code = 1 if res.summarize.failures else 0
    if getattr(args, "verify_paper", None):
        numbers = reference_numbers_from_evaluation(res.report)
        text, ok = _verify_lines(
            check_against_reference(args.verify_paper, numbers)
        )
        _emit(text, args.output)
        return code if ok else 1
    if args.format == "json":
        _emit_json(report_envelope("evaluation", cfg, payload), args.output)
    else:
        text = res.report.format_table()
        if payload["failures"]:
            text += "\n" + _failure_lines(payload["failures"])
        _emit(text, args.output)
    return code


def _cmd_baseline(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    result = run_baseline(cfg, args.n if args.n is not None else cfg.n)
    payload = {
        "n": result.n,
        "lead": result.lead.to_json_dict(),
        "lead_amr": result.lead_amr.to_json_dict(),
        "failures": failures_payload(result.failures),
    }
    code = 1 if result.failures else 0
    if getattr(args, "verify_paper", None):
        numbers = reference_numbers_from_evaluation(result.lead_amr)
        text, ok = _verify_lines(
            check_against_reference(args.verify_paper, numbers)
        )
        _emit(text, args.output)
        return code if ok else 1
    if args.format == "json":
        _emit_json(report_envelope("baseline", cfg, payload), args.output)
    else:
        text = (
            f"lead-{result.n}\n{result.lead.format_table()}\n\n"
            f"lead-{result.n}-amr\n{result.lead_amr.format_table()}"
        )
        if payload["failures"]:
            text += "\n" + _failure_lines(payload["failures"])
        _emit(text, args.output)
    return code


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    report = run_analysis(cfg)
    if getattr(args, "verify_paper", None):
        numbers = reference_numbers_from_analysis(report)
        text, ok = _verify_lines(
            check_against_reference(args.verify_paper, numbers)
        )
        _emit(text, args.output)
        return 0 if ok else 1
    if args.format == "json":
        _emit_json(
            report_envelope("analysis", cfg, analysis_payload(report)),
            args.output,
        )
    else:
        lines = [
            f"summary sentences scored: {len(report.matches)}",
            f"mean best recall: {report.mean:.4f}",
            f"fraction >= 0.5: {report.fraction_at_least_half:.4f}",
            "",
            "best-recall  cumulative-%",
        ]
        lines += [
            f"{b:11.2f}  {p:12.1f}" for b, p in report.cumulative_table()
        ]
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_extract_graph(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    corpus, failures = prepare_corpus(cfg)
    generator = make_generator(cfg)
    blocks: list[str] = []
    records: list[dict] = []
    collected = list(failures)
    for doc in corpus:
        try:
            result = summarize_one(
                doc,
                generator,
                method=cfg.method,
                n=cfg.n,
                partial_names=cfg.partial_names,
            )
        except AmrSumError as e:
            collected.append(
                DocumentFailure(document_id=doc.id, stage="extract", message=str(e))
            )
            continue
        doc_records = []
        for e in result.extractions:
            header = [
                f"# ::id {doc.id}.{e.sentence_index}",
                f"# ::src-sentence {doc.story[e.sentence_index].text}",
                f"# ::anchor-entity {e.anchor_entity if e.anchor_entity else '-'}",
                f"# ::anchor-verb {e.anchor_verb if e.anchor_verb else '-'}",
                f"# ::fallback {e.fallback}",
            ]
            blocks.append("\n".join(header) + "\n" + serialize_penman(e.graph, pretty=True))
            doc_records.append(
                {
                    "sentence_index": e.sentence_index,
                    "anchor_entity": e.anchor_entity,
                    "anchor_verb": e.anchor_verb,
                    "fallback": e.fallback,
                    "penman": serialize_penman(e.graph),
                }
            )
        records.append({"id": doc.id, "extractions": doc_records})
    if args.format == "json":
        payload = {
            "documents": records,
            "failures": failures_payload(collected),
        }
        _emit_json(report_envelope("extract-graph", cfg, payload), args.output)
    else:
        text = "\n\n".join(blocks)
        if collected:
            text += "\n\n" + _failure_lines(failures_payload(collected))
        _emit(text, args.output)
    return 1 if collected else 0


def _cmd_parse_check(args: argparse.Namespace) -> int:
    checks: list[dict] = []
    for name in args.files:
        try:
            text = Path(name).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"cannot read {name}: {e}") from e
        count = 0
        for block in _iter_blocks(text):
            count += 1
            label = f"{name}:{count}"
            graph_lines = []
            for line in block:
                stripped = line.lstrip()
                if stripped.startswith("# ::id"):
                    parts = stripped.split(maxsplit=2)
                    if len(parts) > 2:
                        label = parts[2].split()[0]
                if stripped.startswith("#"):
                    continue
                graph_lines.append(line)
            if not graph_lines:
                checks.append(
                    {"label": label, "ok": False, "error": "no graph text"}
                )
                continue
            try:
                parse_penman("\n".join(graph_lines))
                checks.append({"label": label, "ok": True, "error": None})
            except PenmanSyntaxError as e:
                checks.append({"label": label, "ok": False, "error": str(e)})
        if count == 0:
            checks.append(
                {"label": name, "ok": False, "error": "empty file"}
            )
    if args.format == "json":
        _emit_json({"kind": "parse-check", "version": __version__, "checks": checks}, args.output)
    else:
        lines = [
            (f"ok   {c['label']}" if c["ok"] else f"FAIL {c['label']}: {c['error']}")
            for c in checks
        ]
        _emit("\n".join(lines), args.output)
    return 0 if all(c["ok"] for c in checks) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        return args.func(args)
    except (ConfigurationError, CorpusFormatError, ExternalToolError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AmrSumError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
