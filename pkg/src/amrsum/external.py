"""Line-oriented subprocess protocol shared by external tool adapters.

Both external tools (sentence-to-graph parser, graph-to-sentence
generator) speak the same shape: one request per input line, one response
per output line, order-preserving, non-zero exit status means the whole
batch failed.
"""

from __future__ import annotations

import shlex
import subprocess
from typing import Sequence

from .exceptions import ExternalToolError


def as_argv(cmd: str | Sequence[str]) -> list[str]:
    """Normalize a command template to an argv list."""
    argv = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
    if not argv:
        raise ExternalToolError("empty command")
    return argv


def run_line_protocol(
    cmd: str | Sequence[str],
    lines: Sequence[str],
    *,
    timeout: float | None = None,
) -> list[str]:
    """Send ``lines`` to ``cmd`` on stdin, one per line; return stdout lines.

    Raises :class:`ExternalToolError` when the tool cannot be spawned,
    exceeds ``timeout`` (seconds, for the whole batch), exits non-zero, or
    answers with a different number of lines than it was asked.
    """
    argv = as_argv(cmd)
    if any("\n" in line for line in lines):
        raise ExternalToolError("protocol forbids newlines inside a request")
    payload = "".join(line + "\n" for line in lines)
    try:
        proc = subprocess.run(
            argv,
            input=payload,
            capture_output=True,
            text=True,
            timeout=timeout,
        )
    except FileNotFoundError as e:
        raise ExternalToolError(f"cannot run {argv[0]!r}: {e}") from e
    except subprocess.TimeoutExpired as e:
        raise ExternalToolError(
            f"{argv[0]!r} timed out after {timeout}s on a {len(lines)}-line batch"
        ) from e
    if proc.returncode != 0:
        detail = proc.stderr.strip().splitlines()
        tail = f": {detail[-1]}" if detail else ""
        raise ExternalToolError(
            f"{argv[0]!r} exited with status {proc.returncode}{tail}"
        )
    out = proc.stdout.splitlines()
    if len(out) != len(lines):
        raise ExternalToolError(
            f"{argv[0]!r} answered {len(out)} lines for {len(lines)} requests"
        )
    return out
