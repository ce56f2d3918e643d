"""
Digests for catalog entries.
Entries are stored with a SHA-256 digest of their canonical verification
record and checked with a constant-time comparison on load.
"""
import hashlib
import json
import secrets
from typing import Any


def canonical_json(payload: Any) -> str:
    """JSON with sorted keys and no whitespace, so equal payloads hash equally."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest_payload(payload: Any) -> str:
    """
    Hash a JSON-serializable payload using SHA-256.

    Args:
        payload: The verification record

    Returns:
        Hex digest of its canonical JSON
    """
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def verify_digest(payload: Any, stored_digest: str) -> bool:
    """
    Check a payload against its stored digest.

    Args:
        payload: The freshly recomputed verification record
        stored_digest: The digest recorded in the catalog index

    Returns:
        True if the payload still hashes to the stored digest
    """
    return secrets.compare_digest(digest_payload(payload), stored_digest)
