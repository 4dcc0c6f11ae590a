"""JSON Lines persistence for residual certificates."""

from __future__ import annotations

import json
import os

from lbounds.certify import ResidualCertificate, certificate_records
from report_integrity import write_fingerprint


def default_output_path(kind: str) -> str:
    return f"certificate-{kind}.jsonl"


def write_certificate(path: str, certificate: ResidualCertificate) -> str:
    """One JSON object per line: header, cells, summary. Returns the SHA-256 fingerprint."""

    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        for record in certificate_records(certificate):
            file.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            file.write("\n")
    return write_fingerprint(path)


def read_certificate(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as file:
        return [json.loads(line) for line in file if line.strip()]
