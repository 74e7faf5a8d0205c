"""Machine-readable run reports.

A report is one JSON document with a fixed section order: ``format_version``,
``command``, ``config``, ``checks``, ``branches``, ``verdict``.  Nothing
time- or host-dependent goes in, so equal inputs give byte-identical files.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

FORMAT_VERSION = 1
OUTPUT_DIR_ENV = "BRAIDKIT_OUTPUT_DIR"


def make_report(command: str, config: dict, checks=(), branches=(), verdict: dict | None = None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config": dict(config),
        "checks": [c if isinstance(c, dict) else c.to_dict() for c in checks],
        "branches": [b if isinstance(b, dict) else b.to_dict() for b in branches],
        "verdict": dict(verdict or {}),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    report = json.loads(text)
    if report.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported report format_version {report.get('format_version')!r}")
    return report


def default_path(stem: str) -> Path | None:
    """Report path under $BRAIDKIT_OUTPUT_DIR, if that is set."""
    root = os.environ.get(OUTPUT_DIR_ENV)
    if not root:
        return None
    return Path(root) / f"{stem}.json"


def write(report: dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(report), encoding="utf-8")
    return path


def summary_lines(report: dict) -> list:
    """Human-readable digest: one line per check, then the verdict."""
    lines = []
    for c in report["checks"]:
        label = c.get("axiom") or c.get("check") or "check"
        target = c.get("structure") or c.get("presentation") or ""
        lines.append(f"{c.get('status', '?'):8} {label} [{target}]")
        for w in c.get("witnesses", [])[:3]:
            lines.append(f"         witness {w}")
    if report["branches"]:
        lines.append(f"branches: {len(report['branches'])}")
    for k, v in report["verdict"].items():
        lines.append(f"{k}: {v}")
    return lines
