# Run history - records every CLI invocation
# Keeps a rolling JSON history plus a daily text log next to it.

import json
import sys
from datetime import datetime, timedelta
from pathlib import Path
from typing import Optional

from src.env_config import log_dir, run_history_enabled

HISTORY_FILE_NAME = "run_history.json"
MAX_HISTORY_ENTRIES = 90


def ensure_log_dir() -> Path:
    """Create the log directory if needed."""
    path = log_dir()
    path.mkdir(parents=True, exist_ok=True)
    return path


def load_history() -> list:
    """Load the run history."""
    history_file = ensure_log_dir() / HISTORY_FILE_NAME
    if history_file.exists():
        try:
            return json.loads(history_file.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return []
    return []


def save_history(history: list):
    """Save the run history."""
    history_file = ensure_log_dir() / HISTORY_FILE_NAME
    history_file.write_text(json.dumps(history, ensure_ascii=False, indent=2), encoding="utf-8")


def log_execution(
    command: str,
    parameters: dict,
    summary: dict,
    output_files: list,
    error: Optional[str] = None
):
    """
    Record one CLI run.

    Args:
        command: subcommand, e.g. "tonnetz analyze"
        parameters: parsed flags {name: value}
        summary: headline results {name: value}
        output_files: files written by the run
        error: error message, if the run failed

    Returns:
        the history entry, or None when history is disabled
    """
    if not run_history_enabled():
        return None

    now = datetime.now()
    entry = {
        "timestamp": now.isoformat(),
        "date": now.strftime("%Y-%m-%d"),
        "time": now.strftime("%H:%M:%S"),
        "command": command,
        "parameters": parameters,
        "summary": summary,
        "output_files": output_files,
        "success": error is None,
        "error": error
    }

    try:
        history = load_history()
        history.append(entry)

        # keep the most recent entries only
        if len(history) > MAX_HISTORY_ENTRIES:
            history = history[-MAX_HISTORY_ENTRIES:]

        save_history(history)

        daily_log_file = ensure_log_dir() / f"log_{now.strftime('%Y%m%d')}.txt"
        with open(daily_log_file, 'a', encoding='utf-8') as f:
            f.write(f"\n{'='*60}\n")
            f.write(f"Run time: {entry['timestamp']}\n")
            f.write(f"Command: {command}\n")

            if parameters:
                f.write("\n[Parameters]\n")
                for name, value in sorted(parameters.items()):
                    f.write(f"  - {name}: {value}\n")

            if summary:
                f.write("\n[Summary]\n")
                for name, value in sorted(summary.items()):
                    f.write(f"  - {name}: {value}\n")

            for path in output_files:
                f.write(f"Output: {path}\n")

            if error:
                f.write(f"\n[ERROR] {error}\n")

            f.write(f"{'='*60}\n")
    except OSError as e:
        print(f"[WARN] Failed to write run history: {e}", file=sys.stderr)

    return entry


def get_recent_executions(days: int = 7) -> list:
    """Return history entries from the last N days."""
    history = load_history()
    cutoff = (datetime.now() - timedelta(days=days)).isoformat()
    return [h for h in history if h.get("timestamp", "") >= cutoff]


def print_summary():
    """Print a summary of recent runs."""
    recent = get_recent_executions(7)

    if not recent:
        print("[INFO] No runs recorded in the last 7 days.")
        return

    print("\n" + "=" * 60)
    print("Runs in the last 7 days")
    print("=" * 60)

    success_count = sum(1 for r in recent if r.get("success", False))
    print(f"\nRuns: {len(recent)} (succeeded: {success_count})")

    print("\n[Latest]")
    for r in recent[-7:]:
        status = "OK " if r.get("success") else "ERR"
        print(f"  {r.get('date', 'N/A')} {r.get('time', '')}: {status} {r.get('command', '')}")

    print("=" * 60)


if __name__ == "__main__":
    print_summary()
