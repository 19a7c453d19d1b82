# Semigame - Input/Output Utilities
# JSON and CSV writers, cache directory helpers

import json
import shutil
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

import pandas as pd


def size_label(size: int) -> str:
    """Cache listing size: whole bytes below 1 KiB, one decimal in KiB or MiB above"""
    if size < 1024:
        return f"{size} B"
    scaled, unit = size / 1024, "KiB"
    if scaled >= 1024:
        scaled, unit = scaled / 1024, "MiB"
    return f"{scaled:.1f} {unit}"


def ensure_directory(path: str) -> Path:
    """Create `path` (and parents) if missing and return it"""
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def dump_json(payload: Any) -> str:
    """Serialize payload as indented JSON text"""
    return json.dumps(payload, indent=2)


def write_json(payload: Any, out: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """
    Write a JSON document to a file path or a text stream

    Args:
        payload: JSON-serializable object
        out: file path; takes precedence over stream
        stream: text stream (stdout when both are None)
    """
    text = dump_json(payload) + "\n"
    if out:
        target = Path(out)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    else:
        (stream or sys.stdout).write(text)


def write_table(frame: pd.DataFrame, out: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """Write a DataFrame as CSV (no index) to a file path or a text stream"""
    if out:
        target = Path(out)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(target, index=False)
    else:
        frame.to_csv(stream or sys.stdout, index=False)


def list_cache_files(cache_dir: str) -> List[Dict[str, Any]]:
    """
    List value-table cache files in a directory

    Args:
        cache_dir: cache directory

    Returns:
        list: dictionaries with name, path, size and size_human, sorted by name
    """
    directory = Path(cache_dir)
    if not directory.exists():
        return []

    entries = []
    for item in sorted(directory.glob("*.csv")):
        try:
            size = item.stat().st_size
        except OSError:
            continue
        entries.append({
            'name': item.name,
            'path': str(item),
            'size': size,
            'size_human': size_label(size),
        })
    return entries


def clear_cache(cache_dir: str, confirm: bool = False) -> Tuple[bool, str]:
    """
    Remove every cache file from a directory

    Args:
        cache_dir: cache directory
        confirm: must be True to actually delete

    Returns:
        Tuple[bool, str]: (success, message)
    """
    if not confirm:
        return False, "❌ Refusing to clear cache without confirmation"

    directory = Path(cache_dir)
    if not directory.exists():
        return True, "No cache directory found"

    removed = 0
    for item in directory.glob("*.csv"):
        try:
            item.unlink()
            removed += 1
        except OSError as e:
            return False, f"❌ Could not remove {item}: {e}"

    if not any(directory.iterdir()):
        shutil.rmtree(directory, ignore_errors=True)

    return True, f"✅ Removed {removed} cache files"
