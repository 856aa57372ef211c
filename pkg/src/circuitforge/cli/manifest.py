"""Reproducibility manifests for CLI runs.

A manifest captures everything that determines a run's outputs —
subcommand, resolved configuration, input-file digests, tool version,
seed — and deliberately nothing else (no timestamps, no hostnames).
Identical manifests guarantee byte-identical output trees.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .. import __version__

MANIFEST_FILENAME = "manifest.json"


def digest_file(path) -> str:
    hasher = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(65536), b""):
            hasher.update(block)
    return f"sha256:{hasher.hexdigest()}"


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    config: dict
    inputs: dict
    version: str
    seed: int

    @classmethod
    def build(cls, subcommand: str, config: dict, input_paths,
              seed: int) -> "RunManifest":
        inputs = {str(p): digest_file(p) for p in input_paths}
        return cls(subcommand=subcommand, config=dict(sorted(config.items())),
                   inputs=dict(sorted(inputs.items())), version=__version__,
                   seed=seed)

    def to_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "config": self.config,
            "inputs": self.inputs,
            "version": self.version,
            "seed": self.seed,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, directory) -> Path:
        target = Path(directory) / MANIFEST_FILENAME
        target.write_text(self.to_json(), encoding="utf-8")
        return target
