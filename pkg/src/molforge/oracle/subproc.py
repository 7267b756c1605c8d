"""Scorer subprocess client.

Drives an external scorer over line-delimited JSON on stdio. The scorer
speaks first with a handshake line; after that each request line gets
exactly one response line carrying the same id, in any order. Requests
are pipelined up to a fixed window so a slow scorer still sees batches.

Per-molecule failures (scorer said "error", timeout, process died) come
back as error instances in the result list; only protocol violations
raise, because after one of those the stream can't be trusted.
"""

from __future__ import annotations

import json
import queue
import subprocess
import threading
import time
from numbers import Real

from molforge.errors import (
    ProtocolViolation,
    ScorerError,
    ScorerExited,
    ScorerTimeout,
)

_EOF = object()

HANDSHAKE_NAME = "scorer"
PROTOCOL_VERSION = 1
DEFAULT_WINDOW = 64


class SubprocessScorer:
    """Backend that scores molecules via a child process."""

    def __init__(
        self,
        command: list[str],
        *,
        timeout: float = 10.0,
        window: int = DEFAULT_WINDOW,
    ):
        if window < 1:
            raise ValueError("window must be >= 1")
        self.command = list(command)
        self.timeout = timeout
        self.window = window
        self._lock = threading.Lock()
        self._next_id = 0
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            bufsize=1,
        )
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self._props = self._read_handshake()

    def _pump(self) -> None:
        assert self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(_EOF)

    def _read_handshake(self) -> tuple[str, ...]:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            self.close()
            raise ProtocolViolation("no handshake within timeout") from None
        if line is _EOF:
            raise ScorerExited("scorer exited before handshake")
        try:
            msg = json.loads(line)
        except json.JSONDecodeError as exc:
            self.close()
            raise ProtocolViolation(f"bad handshake line: {line!r}") from exc
        if (
            not isinstance(msg, dict)
            or msg.get("hello") != HANDSHAKE_NAME
            or msg.get("version") != PROTOCOL_VERSION
            or not isinstance(msg.get("props"), list)
        ):
            self.close()
            raise ProtocolViolation(f"bad handshake: {line!r}")
        return tuple(str(p) for p in msg["props"])

    @property
    def identity(self) -> str:
        return "scorer:" + " ".join(self.command)

    @property
    def properties(self) -> tuple[str, ...]:
        return self._props

    def score_items(self, items, letters):
        """items: list of (raw text, canonical or None).

        Sends the canonical form when available so the scorer sees one
        spelling per molecule. Returns one entry per item, same order.
        """
        with self._lock:
            return self._score_locked(items, letters)

    def _score_locked(self, items, letters):
        n = len(items)
        results: list = [None] * n
        letters = list(letters)
        pending: dict[int, int] = {}  # request id -> item index
        deadlines: dict[int, float] = {}
        expired: set[int] = set()
        sent = 0
        done = 0

        def fail_rest(exc_factory) -> None:
            nonlocal done, sent
            for rid, idx in pending.items():
                results[idx] = exc_factory()
                done += 1
            pending.clear()
            deadlines.clear()
            while sent < n:
                results[sent] = exc_factory()
                sent += 1
                done += 1

        while done < n:
            while sent < n and len(pending) < self.window and self._alive():
                raw, key = items[sent]
                rid = self._next_id
                self._next_id += 1
                req = {"id": rid, "smiles": key or raw, "props": letters}
                try:
                    assert self._proc.stdin is not None
                    self._proc.stdin.write(
                        json.dumps(req, ensure_ascii=False) + "\n"
                    )
                    self._proc.stdin.flush()
                except (BrokenPipeError, OSError):
                    fail_rest(lambda: ScorerExited("scorer pipe closed"))
                    return results
                pending[rid] = sent
                deadlines[rid] = time.monotonic() + self.timeout
                sent += 1
            if not pending:
                if sent < n:
                    fail_rest(lambda: ScorerExited("scorer exited"))
                continue

            wait = min(deadlines.values()) - time.monotonic()
            try:
                line = self._lines.get(timeout=max(wait, 0.0))
            except queue.Empty:
                now = time.monotonic()
                for rid in [r for r, d in deadlines.items() if d <= now]:
                    idx = pending.pop(rid)
                    del deadlines[rid]
                    expired.add(rid)
                    results[idx] = ScorerTimeout(
                        f"no response within {self.timeout}s"
                    )
                    done += 1
                continue
            if line is _EOF:
                fail_rest(lambda: ScorerExited("scorer exited"))
                return results

            try:
                msg = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ProtocolViolation(f"bad response line: {line!r}") from exc
            if not isinstance(msg, dict) or not isinstance(msg.get("id"), int):
                raise ProtocolViolation(f"response without id: {line!r}")
            rid = msg["id"]
            if rid in expired:
                continue  # answered too late; already reported as timeout
            if rid not in pending:
                raise ProtocolViolation(f"unknown response id {rid}")
            idx = pending.pop(rid)
            del deadlines[rid]
            results[idx] = self._interpret(msg, letters)
            done += 1
        return results

    @staticmethod
    def _interpret(msg: dict, letters: list[str]):
        if "error" in msg:
            return ScorerError(str(msg["error"]))
        scores = msg.get("scores")
        if not isinstance(scores, dict):
            raise ProtocolViolation(f"response without scores or error: {msg}")
        out = {}
        for letter in letters:
            value = scores.get(letter)
            if not isinstance(value, Real) or isinstance(value, bool):
                return ScorerError(f"missing or non-numeric score {letter!r}")
            out[letter] = float(value)
        return out

    def _alive(self) -> bool:
        return self._proc.poll() is None

    def close(self) -> None:
        if self._proc.stdin is not None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
        try:
            self._proc.wait(timeout=2.0)
        except subprocess.TimeoutExpired:
            self._proc.kill()
            self._proc.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
