#!/usr/bin/env python3
"""Deterministic line-JSON scorer used by the test suite.

Speaks the scorer protocol: one handshake line, then one response per
request line, flushed immediately. Scores are hash-derived so they are
stable across runs and platforms without any chemistry dependency.

Misbehavior flags let tests exercise client error paths:
  --no-handshake      start answering without the hello line
  --bad-handshake     send a hello line with the wrong version
  --die-after N       exit abruptly after N responses
  --swallow-id K      never answer request id K
  --shuffle-window K  buffer K requests, answer them newest-first
  --garbage-after N   emit a non-JSON line after N responses
  --error-substring S respond with an error for SMILES containing S
  --delay-ms D        sleep D ms before each response
"""

import argparse
import hashlib
import json
import sys
import time


def stable_unit(smiles: str, letter: str) -> float:
    digest = hashlib.sha256(f"{letter}:{smiles}".encode()).digest()
    return int.from_bytes(digest[:8], "big") / 2.0**64


def score(smiles: str, letter: str) -> float:
    u = stable_unit(smiles, letter)
    if letter == "P":
        return -10.0 + 15.0 * u
    if letter == "S":
        return 1.0 + 9.0 * u
    return u


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--props", default="BDHMPQS")
    ap.add_argument("--no-handshake", action="store_true")
    ap.add_argument("--bad-handshake", action="store_true")
    ap.add_argument("--die-after", type=int, default=-1)
    ap.add_argument("--swallow-id", type=int, default=-1)
    ap.add_argument("--shuffle-window", type=int, default=0)
    ap.add_argument("--garbage-after", type=int, default=-1)
    ap.add_argument("--error-substring", default="!")
    ap.add_argument("--delay-ms", type=float, default=0.0)
    args = ap.parse_args()

    out = sys.stdout

    def emit(obj) -> None:
        out.write(json.dumps(obj) + "\n")
        out.flush()

    if args.bad_handshake:
        emit({"hello": "scorer", "version": 99, "props": list(args.props)})
    elif not args.no_handshake:
        emit({"hello": "scorer", "version": 1, "props": list(args.props)})

    answered = 0
    held = []

    def respond(req) -> None:
        nonlocal answered
        if args.delay_ms > 0:
            time.sleep(args.delay_ms / 1000.0)
        if args.garbage_after >= 0 and answered == args.garbage_after:
            out.write("this is not json\n")
            out.flush()
        rid = req.get("id")
        if rid == args.swallow_id:
            return
        smiles = req.get("smiles", "")
        if args.error_substring and args.error_substring in smiles:
            emit({"id": rid, "error": f"cannot score {smiles!r}"})
        else:
            emit(
                {
                    "id": rid,
                    "scores": {p: score(smiles, p) for p in req.get("props", [])},
                }
            )
        answered += 1
        if args.die_after >= 0 and answered >= args.die_after:
            sys.exit(3)

    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        req = json.loads(line)
        if args.shuffle_window > 1:
            held.append(req)
            if len(held) >= args.shuffle_window:
                while held:
                    respond(held.pop())
        else:
            respond(req)
    while held:
        respond(held.pop())
    return 0


if __name__ == "__main__":
    sys.exit(main())
