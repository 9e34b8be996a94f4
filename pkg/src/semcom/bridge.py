"""Client side of the model bridge: swap synthetic emulation for real models.

The bridge is an optional HTTP microservice fronting a real object
detector, captioner, and text-to-image generator. This module holds the
client, the protocol contract, and an in-process mock implementing the
same interface, so nothing in the main suite ever needs a live server.

Wire protocol (JSON over HTTP/1.1):

    POST /v1/detect   {"image": b64, "classes": [..]}  -> {"counts": {class: int}}
    POST /v1/caption  {"image": b64, "k": int}         -> {"captions": [..]}
    POST /v1/generate {"caption": str}                 -> {"image": b64}

Errors arrive as {"error": {"code": int, "message": str}}; a response
carries either a result or an error, never both.
"""

from __future__ import annotations

import json
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence

from .errors import BridgeError, UnknownClass
from .scene import ClassVocabulary, SemanticVector

DEFAULT_TIMEOUT_S = 30.0


class ModelBridge(Protocol):
    """What the harness needs from any bridge, remote or in-process."""

    def detect(self, image_b64: str, classes: Sequence[str]) -> dict[str, int]: ...

    def caption(self, image_b64: str, k: int) -> list[str]: ...

    def generate(self, caption: str) -> str: ...


def counts_to_vector(counts: Mapping[str, float], vocab: ClassVocabulary) -> SemanticVector:
    """Convert a bridge counts map to a SemanticVector in vocabulary order."""
    for name in counts:
        if name not in vocab:
            raise UnknownClass(name)
    return SemanticVector.from_mapping(counts, vocab)


@dataclass
class MockBridge:
    """In-process stand-in configured with fixture responses.

    detect echoes the configured counts for the requested classes (zero
    for classes without a fixture); requesting a class outside ``labels``
    fails exactly like the wire protocol does.
    """

    counts: dict[str, int] = field(default_factory=dict)
    captions: list[str] = field(default_factory=list)
    image_b64: str = ""
    labels: tuple[str, ...] | None = None

    def _known(self) -> set[str]:
        return set(self.labels) if self.labels is not None else set(self.counts)

    def detect(self, image_b64: str, classes: Sequence[str]) -> dict[str, int]:
        known = self._known()
        for name in classes:
            if name not in known:
                raise BridgeError(422, f"unknown class {name!r}")
        if image_b64 == "":
            return {name: 0 for name in classes}
        return {name: int(self.counts.get(name, 0)) for name in classes}

    def caption(self, image_b64: str, k: int) -> list[str]:
        if k < 1:
            raise BridgeError(400, "k must be >= 1")
        if not self.captions:
            raise BridgeError(503, "no caption model configured")
        return [self.captions[i % len(self.captions)] for i in range(k)]

    def generate(self, caption: str) -> str:
        if not caption:
            raise BridgeError(400, "caption must not be empty")
        return self.image_b64


class BridgeClient:
    """HTTP client for a running model-bridge server."""

    def __init__(self, base_url: str, timeout_s: float = DEFAULT_TIMEOUT_S):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s

    def _post(self, path: str, body: dict) -> dict:
        request = urllib.request.Request(
            f"{self.base_url}{path}",
            data=json.dumps(body).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout_s) as response:
                payload = json.loads(response.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            raw = exc.read().decode("utf-8", errors="replace")
            try:
                envelope = json.loads(raw).get("error", {})
            except json.JSONDecodeError:
                envelope = {}
            raise BridgeError(envelope.get("code", exc.code),
                              envelope.get("message", raw or exc.reason)) from None
        except urllib.error.URLError as exc:
            raise BridgeError(503, f"bridge unreachable: {exc.reason}") from None
        except TimeoutError:
            raise BridgeError(504, f"bridge timed out after {self.timeout_s}s") from None
        if "error" in payload:
            envelope = payload["error"]
            raise BridgeError(envelope.get("code", 500), envelope.get("message", "unknown error"))
        return payload

    def detect(self, image_b64: str, classes: Sequence[str]) -> dict[str, int]:
        payload = self._post("/v1/detect", {"image": image_b64, "classes": list(classes)})
        return {name: int(count) for name, count in payload["counts"].items()}

    def caption(self, image_b64: str, k: int) -> list[str]:
        payload = self._post("/v1/caption", {"image": image_b64, "k": k})
        return list(payload["captions"])

    def generate(self, caption: str) -> str:
        payload = self._post("/v1/generate", {"caption": caption})
        return payload["image"]
