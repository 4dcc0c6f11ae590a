import logging
import os

from cryptography.hazmat.primitives import hashes

HASH_ALGORITHM = hashes.SHA256()
SIDECAR_SUFFIX = '.sha256'
READ_CHUNK_SIZE = 1 << 16


def fingerprint_bytes(data):
    digest = hashes.Hash(HASH_ALGORITHM)
    digest.update(data)
    return digest.finalize().hex()


def fingerprint_file(path):
    digest = hashes.Hash(HASH_ALGORITHM)
    with open(path, 'rb') as file:
        for chunk in iter(lambda: file.read(READ_CHUNK_SIZE), b''):
            digest.update(chunk)
    return digest.finalize().hex()


def sidecar_path(path):
    return f'{path}{SIDECAR_SUFFIX}'


def write_fingerprint(path):
    """Write ``<hex>  <file name>`` next to the report and return the hex digest."""

    fingerprint = fingerprint_file(path)
    with open(sidecar_path(path), 'w', encoding='utf-8', newline='\n') as file:
        file.write(f'{fingerprint}  {os.path.basename(path)}\n')
    logging.info('SHA-256 of %s: %s', path, fingerprint)
    return fingerprint


def verify_fingerprint(path):
    try:
        with open(sidecar_path(path), 'r', encoding='utf-8') as file:
            recorded = file.read().split()[0]
        return recorded == fingerprint_file(path)
    except (FileNotFoundError, IndexError):
        return False
