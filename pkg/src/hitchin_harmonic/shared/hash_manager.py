"""
Content hashing for configs and reports.

The manifest maps report name -> {"sha256", "config_hash"} so a rerun can say
whether a report moved and whether the configuration behind it did.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

# Configure logging
logger = logging.getLogger(__name__)

# Keys that vary between identical runs and never enter a hash
VOLATILE_KEYS = ("execution_time",)

MANIFEST_NAME = "report_hashes.json"


def canonical_json(content: Any) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(content, sort_keys=True, separators=(',', ':'), default=str)


def strip_volatile(content: Any) -> Any:
    """Recursively drop volatile keys so reruns hash identically."""
    if isinstance(content, dict):
        return {k: strip_volatile(v) for k, v in content.items() if k not in VOLATILE_KEYS}
    if isinstance(content, list):
        return [strip_volatile(v) for v in content]
    return content


def sha256_of(content: Any) -> str:
    """SHA-256 of a JSON-able document after volatile keys are removed."""
    return hashlib.sha256(canonical_json(strip_volatile(content)).encode('utf-8')).hexdigest()


def config_hash(config_dict: Dict[str, Any]) -> str:
    """SHA-256 of a configuration dictionary."""
    return sha256_of(config_dict)


class HashManager:
    """Report manifest kept in the run's cache directory."""

    def __init__(self, cache_dir: Path):
        self.path = Path(cache_dir) / MANIFEST_NAME
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.entries: Dict[str, Dict[str, str]] = self._read()

    def _read(self) -> Dict[str, Dict[str, str]]:
        if not self.path.exists():
            return {}
        try:
            data = json.loads(self.path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"⚠️ Ignoring unreadable report manifest {self.path}: {e}")
            return {}
        return {k: v for k, v in data.items() if isinstance(v, dict)}

    def _write(self):
        self.path.write_text(json.dumps(self.entries, indent=2, sort_keys=True) + '\n')

    def has_changed(self, name: str, document: Any, run_config_hash: Optional[str] = None) -> bool:
        """Record a report's hash; True when it differs from the previous run."""
        digest = sha256_of(document)
        previous = self.entries.get(name, {})
        if previous.get("sha256") == digest:
            return False
        if previous and run_config_hash and previous.get("config_hash") == run_config_hash:
            logger.warning(f"⚠️ Report {name} changed under an unchanged configuration")
        self.entries[name] = {"sha256": digest, "config_hash": run_config_hash or ""}
        self._write()
        return True

    def get_hash(self, name: str) -> Optional[str]:
        return self.entries.get(name, {}).get("sha256")

    def clear(self):
        self.entries = {}
        if self.path.exists():
            self.path.unlink()
