"""Run manifests: every emitted file listed with its content digest."""
from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

SCHEMA = "chronopath/1"


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass(frozen=True, slots=True)
class RunManifest:
    command: str
    params: dict
    outputs: list          # [{"path": rel, "sha256": hex}]
    version: str
    timestamp: str

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "params": self.params,
            "outputs": self.outputs,
            "version": self.version,
            "timestamp": self.timestamp,
        }


def write_manifest(out_dir: Path, command: str, params: dict, files: list[Path]) -> RunManifest:
    """Digest the emitted files and write manifest.json next to them.

    Re-running a deterministic command yields identical digests; only the
    timestamp field varies between runs.
    """
    from . import __version__

    out_dir = Path(out_dir)
    outputs = [
        {"path": str(Path(f).relative_to(out_dir)), "sha256": sha256_file(Path(f))}
        for f in sorted(files, key=lambda p: str(p))
    ]
    manifest = RunManifest(
        command=command,
        params={k: params[k] for k in sorted(params)},
        outputs=outputs,
        version=__version__,
        timestamp=datetime.datetime.now(datetime.timezone.utc)
        .replace(microsecond=0)
        .isoformat(),
    )
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest.as_dict(), indent=2, sort_keys=True) + "\n")
    return manifest
