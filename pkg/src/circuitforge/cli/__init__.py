"""Command-line front end for the circuitforge toolkit."""

from .main import build_parser, main
from .manifest import MANIFEST_FILENAME, RunManifest, digest_file

__all__ = [
    "MANIFEST_FILENAME",
    "RunManifest",
    "build_parser",
    "digest_file",
    "main",
]
