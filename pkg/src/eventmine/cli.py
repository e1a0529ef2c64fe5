"""Command-line entry point for the mining/build/evaluation pipeline."""

from __future__ import annotations

import dataclasses
import json
import logging
import sys
from pathlib import Path

import click

from . import records as rec
from .conllu import ConlluError
from .connectives import LexiconError, default_lexicon, dump_lexicon, load_lexicon
from .evalharness import ClosePrediction, OpenPrediction, accuracy, evaluate_open
from .extraction import MiningConfig
from .instructions import TemplateError, build_dataset, dump_templates, load_templates
from .negatives import build_pool
from .pipeline import mine_corpus, parse_corpus
from .stats import (
    event_pattern,
    frequency_table,
    histogram_table,
    length_histogram,
    pattern_table,
    sentence_event,
    verb_frequencies,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


@dataclasses.dataclass(frozen=True)
class RunConfig:
    global_seed: int = 0
    lexicon_path: str | None = None
    template_path: str | None = None
    max_context_sentences: int = 5
    event_length_bounds: tuple = (2, 10)
    context_length_bounds: tuple = (10, 50)
    strict_parse: bool = False
    worker_count: int = 1

    def __post_init__(self):
        for lo, hi in (self.event_length_bounds, self.context_length_bounds):
            if lo > hi:
                raise ValueError(f"bounds out of order: [{lo}, {hi}]")

    def mining_config(self) -> MiningConfig:
        return MiningConfig(
            max_context_sentences=self.max_context_sentences,
            event_length_bounds=tuple(self.event_length_bounds),
            context_length_bounds=tuple(self.context_length_bounds),
        )

    def header(self) -> str:
        payload = dataclasses.asdict(self)
        payload["event_length_bounds"] = list(payload["event_length_bounds"])
        payload["context_length_bounds"] = list(payload["context_length_bounds"])
        # worker count affects wall time only; keeping it out of the header
        # keeps outputs byte-identical across parallelism settings
        payload.pop("worker_count")
        return "config: " + json.dumps(payload, sort_keys=True)


def resolve_config(config_path, **flags) -> RunConfig:
    """Precedence: explicit flags > config file > built-in defaults."""
    values = {}
    if config_path:
        with open(config_path, encoding="utf-8") as f:
            file_values = json.load(f)
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(file_values) - known
        if unknown:
            raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update(file_values)
    values.update({k: v for k, v in flags.items() if v is not None})
    for key in ("event_length_bounds", "context_length_bounds"):
        if key in values:
            values[key] = tuple(values[key])
    return RunConfig(**values)


def _lexicon(config: RunConfig):
    return load_lexicon(config.lexicon_path) if config.lexicon_path else default_lexicon()


def _templates(config: RunConfig):
    return load_templates(config.template_path)


def config_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True), help="JSON config file.")(fn)
    fn = click.option("--seed", "global_seed", type=int, default=None, help="Global RNG seed.")(fn)
    fn = click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)(fn)
    fn = click.option("--templates", "template_path", type=click.Path(exists=True), default=None)(fn)
    fn = click.option("--max-context-sentences", type=int, default=None)(fn)
    fn = click.option("--strict", "strict_parse", is_flag=True, default=None)(fn)
    fn = click.option("--workers", "worker_count", type=int, default=None)(fn)
    return fn


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def cli(verbose):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


@cli.command("mine")
@click.argument("inputs", nargs=-1, required=False, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), required=True, help="Output quadruple JSONL file.")
@config_options
def cmd_mine(inputs, out, config_path, **flags):
    """Mine event quadruples from CoNLL-U INPUTS."""
    config = resolve_config(config_path, **flags)
    documents = parse_corpus(inputs, strict=config.strict_parse)
    quadruples, stats = mine_corpus(documents, _lexicon(config), config.mining_config(), config.worker_count)
    rec.write_jsonl(out, (rec.quadruple_to_record(q) for q in quadruples), header_comment=config.header())
    click.echo(f"documents: {len(documents)}")
    click.echo(f"matches: {stats.matches}")
    click.echo(f"tail_hits: {stats.tail_hits}")
    click.echo(f"head_hits: {stats.head_hits}")
    click.echo(f"accepts: {stats.accepts}")
    for reason in sorted(stats.rejects):
        click.echo(f"rejects[{reason}]: {stats.rejects[reason]}")


@cli.command("build-dataset")
@click.argument("quads_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), required=True, help="Output instruction JSONL file.")
@click.option("--wrapped", is_flag=True, help="Emit Alpaca-wrapped text records instead.")
@config_options
def cmd_build_dataset(quads_file, out, wrapped, config_path, **flags):
    """Build an instruction-tuning dataset from a mined quadruple file."""
    config = resolve_config(config_path, **flags)
    quadruples = [rec.quadruple_from_record(r) for r in rec.read_jsonl(quads_file)]
    pool = build_pool(quadruples)
    bank = _templates(config)
    instances, dropped = build_dataset(quadruples, pool, bank, config.global_seed)
    to_record = rec.instance_to_wrapped_record if wrapped else rec.instance_to_record
    rec.write_jsonl(out, (to_record(i) for i in instances), header_comment=config.header())
    kinds: dict[tuple, int] = {}
    for inst in instances:
        key = (inst.meta["relation"], inst.meta["formulation"], inst.meta["has_context"])
        kinds[key] = kinds.get(key, 0) + 1
    click.echo(f"instances: {len(instances)}")
    click.echo(f"dropped: {dropped}")
    for (relation, formulation, has_context), n in sorted(kinds.items()):
        ctx = "ctx" if has_context else "noctx"
        click.echo(f"kind[{relation}/{formulation}/{ctx}]: {n}")


@cli.command("evaluate")
@click.argument("predictions_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None, help="Report JSON file (default stdout).")
@click.option("--strict", is_flag=True, help="Abort on malformed prediction records.")
def cmd_evaluate(predictions_file, out, strict):
    """Score a prediction file: accuracy for close tasks, ROUGE-L for open tasks."""
    close: list[ClosePrediction] = []
    open_: list[OpenPrediction] = []
    for i, record in enumerate(rec.read_jsonl(predictions_file), start=1):
        try:
            task = record["task"]
            if task == "close":
                close.append(
                    ClosePrediction(
                        raw_output=record["raw_output"],
                        candidates=tuple(record["candidates"]),
                        gold_index=int(record["gold_index"]),
                    )
                )
            elif task == "open":
                open_.append(OpenPrediction(raw_output=record["raw_output"], reference=record["reference"]))
            else:
                raise rec.RecordError(f"unknown task {task!r}")
        except (KeyError, TypeError, ValueError, rec.RecordError) as exc:
            if strict:
                raise rec.RecordError(f"{predictions_file}: record {i}: {exc}") from None
            logger.warning("skipping malformed record %d: %s", i, exc)
    reports = []
    if close:
        reports.append(accuracy(close).to_dict())
    if open_:
        reports.append(evaluate_open(open_).to_dict())
    payload = json.dumps({"reports": reports}, indent=2, ensure_ascii=False)
    if out:
        Path(out).write_text(payload + "\n", encoding="utf-8")
    else:
        click.echo(payload)


@cli.command("stats")
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--conllu", "is_conllu", is_flag=True, help="Input is CoNLL-U; emit structure patterns of sentence events.")
@click.option("--top-k", type=int, default=None, help="Truncate the verb frequency table.")
@click.option("--out", type=click.Path(), default=None, help="Directory for TSV tables (default stdout).")
def cmd_stats(input_file, is_conllu, top_k, out):
    """Emit event statistics tables from a quadruple file or CoNLL-U corpus."""
    tables: dict[str, str] = {}
    if is_conllu:
        documents = parse_corpus([input_file])
        events = []
        patterns: dict[str, int] = {}
        for doc in documents:
            for sentence in doc.sentences:
                event = sentence_event(sentence, doc.doc_id)
                if event is None:
                    continue
                events.append(event)
                pattern = event_pattern(event, sentence)
                patterns[pattern] = patterns.get(pattern, 0) + 1
        tables["patterns.tsv"] = pattern_table(patterns)
    else:
        quadruples = [rec.quadruple_from_record(r) for r in rec.read_jsonl(input_file)]
        events = [q.head for q in quadruples] + [q.tail for q in quadruples]
    tables["lengths.tsv"] = histogram_table(length_histogram(events))
    tables["verbs.tsv"] = frequency_table(verb_frequencies(events, top_k))
    if out:
        outdir = Path(out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, text in tables.items():
            (outdir / name).write_text(text, encoding="utf-8")
    else:
        for name, text in sorted(tables.items()):
            click.echo(f"== {name}")
            click.echo(text.rstrip("\n"))


@cli.command("dump-lexicon")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
def cmd_dump_lexicon(lexicon_path):
    """Print the active connective lexicon."""
    entries = load_lexicon(lexicon_path) if lexicon_path else default_lexicon()
    click.echo(dump_lexicon(entries), nl=False)


@cli.command("dump-templates")
@click.option("--templates", "template_path", type=click.Path(exists=True), default=None)
def cmd_dump_templates(template_path):
    """Print the active instruction template bank."""
    click.echo(dump_templates(load_templates(template_path)), nl=False)


@cli.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except (ConlluError, LexiconError, TemplateError, rec.RecordError, OSError, json.JSONDecodeError, ValueError) as exc:
        click.echo(f"data error: {exc}", err=True)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover
        logger.exception("internal error")
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
