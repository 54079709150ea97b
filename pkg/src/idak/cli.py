"""Command-line front end.

Every command emits exactly one JSON document to stdout (or --out) and a
one-line human summary to stderr. Output is a pure function of the flags:
rerunning a command with identical flags reproduces identical bytes.
Exit status is 0 whenever the run completes; whether an attack succeeded
is data in the JSON, not an exit code.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .attacks import (
    XChoice,
    run_dlog_extract_adversary,
    run_kci_attempt,
    run_master_key_break,
    run_uks,
)
from .ecksim import freshness_truth_table, run_random_guess_adversary
from .group import DEFAULT_Q, GroupParams, is_prime
from .kgc import KGC
from .protocol import Role, Variant, complete_session, start_session, transcript_record


def _prime_order(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a decimal integer") from None
    if value <= 3 or value >= 1 << 64 or not is_prime(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime in (3, 2^64)")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a decimal integer") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _trials(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a decimal integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("trials must be at least 1")
    return value


def _add_common(cmd: argparse.ArgumentParser, trials: bool = False) -> None:
    cmd.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.HARDENED.value,
        help="protocol variant (default: hardened)",
    )
    cmd.add_argument("--seed", type=_seed, default=0, help="RNG seed (default: 0)")
    cmd.add_argument(
        "--q", type=_prime_order, default=DEFAULT_Q, help=f"group order, a prime (default: {DEFAULT_Q})"
    )
    if trials:
        cmd.add_argument(
            "--trials", type=_trials, default=1000, help="number of seeded trials (default: 1000)"
        )
    cmd.add_argument("--out", default=None, help="write the JSON document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idak",
        description="identity-based key agreement toy: handshakes, attacks, and the distinguishing game",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("handshake", help="honest two-party run"))
    _add_common(sub.add_parser("uks", help="identity-misbinding interception"))
    _add_common(sub.add_parser("mkbreak", help="passive break with the master key"))
    _add_common(sub.add_parser("kci", help="key-compromise impersonation attempt matrix"))
    _add_common(sub.add_parser("dlog-adv", help="discrete-log distinguishing adversary"))
    _add_common(sub.add_parser("eck-batch", help="random-guess calibration batch"), trials=True)
    _add_common(sub.add_parser("freshness-table", help="exhaustive freshness truth table"))
    return parser


def _cmd_handshake(args: argparse.Namespace) -> tuple[dict, str]:
    variant = Variant(args.variant)
    rng = random.Random(args.seed)
    group = GroupParams(args.q)
    kgc = KGC(rng, group)
    alice = kgc.extract("alice")
    bob = kgc.extract("bob")
    a_sess, r_a = start_session(kgc.params, alice, "bob", Role.INITIATOR, variant, rng)
    b_sess, r_b = start_session(kgc.params, bob, "alice", Role.RESPONDER, variant, rng)
    complete_session(b_sess, r_a, bob, kgc.params)
    complete_session(a_sess, r_b, alice, kgc.params)
    doc = {
        "command": "handshake",
        "seed": args.seed,
        "group": group.to_json(),
        "digest": kgc.params.digest,
    }
    doc.update(transcript_record(a_sess, b_sess))
    match = doc["initiator_key_digest"] == doc["responder_key_digest"]
    return doc, f"handshake ({variant.value}): keys match: {match}"


def _cmd_uks(args: argparse.Namespace) -> tuple[dict, str]:
    report = run_uks(Variant(args.variant), args.seed, args.q)
    return report.to_json(), f"uks ({args.variant}): success: {report.success}"


def _cmd_mkbreak(args: argparse.Namespace) -> tuple[dict, str]:
    report = run_master_key_break(Variant(args.variant), args.seed, args.q)
    return report.to_json(), f"mkbreak ({args.variant}): success: {report.success}"


def _cmd_kci(args: argparse.Namespace) -> tuple[dict, str]:
    cells = []
    successes = 0
    for x_choice in XChoice:
        for corrupt_b in (False, True):
            report = run_kci_attempt(args.seed, x_choice, corrupt_b, args.q)
            successes += report.success
            cells.append(
                {
                    "x_choice": x_choice.value,
                    "corrupt_b": corrupt_b,
                    "report": report.to_json(),
                }
            )
    doc = {"command": "kci", "seed": args.seed, "q": str(args.q), "cells": cells}
    return doc, f"kci: {successes} of {len(cells)} cells succeeded"


def _cmd_dlog_adv(args: argparse.Namespace) -> tuple[dict, str]:
    report = run_dlog_extract_adversary(Variant(args.variant), args.seed, args.q)
    return report, f"dlog-adv ({args.variant}): verdict: {report['verdict']}"


def _cmd_eck_batch(args: argparse.Namespace) -> tuple[dict, str]:
    counts = {"win": 0, "lose": 0, "invalid": 0}
    for i in range(args.trials):
        report = run_random_guess_adversary(Variant(args.variant), args.seed + i, args.q)
        counts[report["verdict"]] += 1
    doc = {
        "command": "eck-batch",
        "adversary": "random-guess",
        "variant": args.variant,
        "seed": args.seed,
        "q": str(args.q),
        "trials": args.trials,
        "wins": counts["win"],
        "losses": counts["lose"],
        "invalid": counts["invalid"],
        "win_rate": counts["win"] / args.trials,
    }
    return doc, f"eck-batch ({args.variant}): win rate {doc['win_rate']:.4f} over {args.trials} trials"


def _cmd_freshness_table(args: argparse.Namespace) -> tuple[dict, str]:
    rows = freshness_truth_table(args.seed, Variant(args.variant), args.q)
    doc = {
        "command": "freshness-table",
        "variant": args.variant,
        "seed": args.seed,
        "q": str(args.q),
        "rows": rows,
    }
    fresh = sum(1 for row in rows if row["fresh"])
    return doc, f"freshness-table: {len(rows)} rows, {fresh} fresh"


_COMMANDS = {
    "handshake": _cmd_handshake,
    "uks": _cmd_uks,
    "mkbreak": _cmd_mkbreak,
    "kci": _cmd_kci,
    "dlog-adv": _cmd_dlog_adv,
    "eck-batch": _cmd_eck_batch,
    "freshness-table": _cmd_freshness_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    doc, summary = _COMMANDS[args.command](args)
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
