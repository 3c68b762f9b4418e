"""Command-line entry points: extract, eval, ingest, serve.

Resource paths resolve from flags first, then environment variables
(TWEETLOC_GAZETTEER, TWEETLOC_UNIGRAMS, TWEETLOC_PARSES, TWEETLOC_STORE),
then the bundled fixtures.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .evalkit import MatchRule, evaluate, load_gold_corpus
from .extract import GraphSource
from .pipeline import Mode, PipelineConfig, Resources, extract_locations
from .records import mention_to_obj, parse_batch, tweet_from_obj
from .service import TweetStore, run_server

logger = logging.getLogger(__name__)


def _env_default(flag_value, env_name):
    return flag_value if flag_value is not None else os.environ.get(env_name)


def _add_resource_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gazetteer", help="GeoNames dump path (default: bundled India sample)")
    parser.add_argument("--country", default=None, help="country filter for the gazetteer load")
    parser.add_argument("--unigrams", help="unigram model path (default: bundled)")
    parser.add_argument("--parses", help="CoNLL-U parse file keyed by sent_id (default: bundled)")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[m.value.lower() for m in Mode], default="geoloc")
    parser.add_argument("--theta-jw", type=float, default=0.90,
                        help="fuzzy suffix similarity threshold")
    parser.add_argument("--d-max", type=int, default=3,
                        help="max dependency hops from an emergency word")
    parser.add_argument("--no-guard", action="store_true",
                        help="disable the common-word ambiguity guard")
    parser.add_argument("--token-window", action="store_true",
                        help="ignore supplied parses; use the adjacency fallback graph")


def _resources(args) -> Resources:
    return Resources.load(
        gazetteer_path=_env_default(args.gazetteer, "TWEETLOC_GAZETTEER"),
        unigram_path=_env_default(args.unigrams, "TWEETLOC_UNIGRAMS"),
        parse_path=_env_default(args.parses, "TWEETLOC_PARSES"),
        country_filter=args.country,
    )


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        theta_jw=args.theta_jw,
        d_max=args.d_max,
        guard_enabled=not args.no_guard,
        dependency_source=(
            GraphSource.TOKEN_WINDOW_FALLBACK if args.token_window else GraphSource.SUPPLIED
        ),
        mode=Mode(args.mode.upper()),
    )


def _cmd_extract(args) -> int:
    resources = _resources(args)
    cfg = _config(args)
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    objs, bad = parse_batch(text)
    if bad:
        logger.warning("%d undecodable input lines skipped", bad)
    for obj in objs:
        try:
            tweet, upos = tweet_from_obj(obj)
        except ValueError as exc:
            logger.warning("record skipped: %s", exc)
            continue
        result = extract_locations(tweet, cfg, resources, upos=upos)
        print(json.dumps({
            "id": result.tweet_id,
            "untagged": result.untagged,
            "mentions": [mention_to_obj(m) for m in result.mentions],
        }, sort_keys=True))
    return 0


def _cmd_eval(args) -> int:
    resources = _resources(args)
    cfg = _config(args)
    with open(args.corpus, encoding="utf-8") as f:
        corpus = load_gold_corpus(f)
    report = evaluate(
        corpus,
        lambda tweet: extract_locations(tweet, cfg, resources),
        matching=MatchRule(args.match_rule.upper()),
        index=resources.index,
    )
    print(f"{'Method':<10} {'Precision':>9} {'Recall':>9} {'F-score':>9} {'Timing (s)':>11}")
    print(f"{cfg.mode.value:<10} {report.precision:>9.4f} {report.recall:>9.4f} "
          f"{report.f_score:>9.4f} {report.total_elapsed:>11.4f}")
    if args.report:
        payload = {
            "method": cfg.mode.value,
            "precision": report.precision,
            "recall": report.recall,
            "f_score": report.f_score,
            "timing_s": report.total_elapsed,
            "tweets_evaluated": report.tweets_evaluated,
            "errors": report.errors,
        }
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
    return 0


def _store(args) -> TweetStore:
    path = _env_default(args.store, "TWEETLOC_STORE") or "tweetloc-store.jsonl"
    return TweetStore(path, cfg=_config(args), resources=_resources(args),
                      english_fraction=args.english_fraction)


def _cmd_ingest(args) -> int:
    store = _store(args)
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    objs, bad = parse_batch(text)
    report = store.ingest(objs)
    print(json.dumps({
        "accepted": report.accepted,
        "duplicates": report.duplicates,
        "errors": report.errors + bad,
    }, sort_keys=True))
    return 0


def _cmd_serve(args) -> int:
    store = _store(args)
    server = run_server(store, host=args.host, port=args.port)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port} (store: {store.path})", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tweetloc",
        description="Real-time location extraction from microblog text",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract locations from tweet records")
    p.add_argument("input", nargs="?", default="-", help="records file (JSONL or array); '-' for stdin")
    _add_resource_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("eval", help="score an extractor against a gold corpus")
    p.add_argument("corpus", help="gold corpus (JSONL with id/text/created_at/gold)")
    p.add_argument("--match-rule", choices=["exact", "alternates"], default="alternates")
    p.add_argument("--report", help="write a machine-readable report file here")
    _add_resource_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("ingest", help="run records through the pipeline into a store")
    p.add_argument("input", nargs="?", default="-", help="records file; '-' for stdin")
    p.add_argument("--store", help="store log path (env TWEETLOC_STORE)")
    p.add_argument("--english-fraction", type=float, default=None,
                   help="drop tweets whose known-word fraction is below this")
    _add_resource_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("serve", help="serve the query API over a store")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8040)
    p.add_argument("--store", help="store log path (env TWEETLOC_STORE)")
    p.add_argument("--english-fraction", type=float, default=None)
    _add_resource_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
