"""Minimal WebSocket endpoint + static file server for the browser demo.

Implements the server side of the WebSocket framing protocol directly on
top of ``http.server`` so the demo needs no third-party dependencies: an
HTTP GET with an upgrade header on the bridge path becomes a bidirectional
NDJSON message channel into a :class:`gazekit.pipeline.GazePipeline`; every
other GET serves files from the frontend directory.

Only what a local single-tab demo needs is supported: text frames, ping/pong,
close, client-side masking, and fragmented messages. No extensions, no TLS.
"""

from __future__ import annotations

import base64
import hashlib
import json
import socket
import struct
import threading
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer

from gazekit.pipeline import GazePipeline

WS_MAGIC = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"
WS_PATH = "/ws"

OP_CONT = 0x0
OP_TEXT = 0x1
OP_BINARY = 0x2
OP_CLOSE = 0x8
OP_PING = 0x9
OP_PONG = 0xA


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + WS_MAGIC).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def encode_frame(payload: bytes, opcode: int = OP_TEXT) -> bytes:
    """Server-to-client frame: FIN set, never masked."""
    head = bytes([0x80 | opcode])
    n = len(payload)
    if n < 126:
        head += bytes([n])
    elif n < 1 << 16:
        head += bytes([126]) + struct.pack("!H", n)
    else:
        head += bytes([127]) + struct.pack("!Q", n)
    return head + payload


def encode_text(text: str) -> bytes:
    return encode_frame(text.encode("utf-8"), OP_TEXT)


def read_frame(rfile) -> tuple[int, bool, bytes] | None:
    """Read one frame; returns (opcode, fin, payload) or None on EOF."""
    head = rfile.read(2)
    if len(head) < 2:
        return None
    fin = bool(head[0] & 0x80)
    opcode = head[0] & 0x0F
    masked = bool(head[1] & 0x80)
    n = head[1] & 0x7F
    if n == 126:
        n = struct.unpack("!H", rfile.read(2))[0]
    elif n == 127:
        n = struct.unpack("!Q", rfile.read(8))[0]
    mask = rfile.read(4) if masked else b""
    payload = rfile.read(n) if n else b""
    if len(payload) < n:
        return None
    if masked:
        payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
    return opcode, fin, payload


def read_message(rfile) -> tuple[int, bytes] | None:
    """Reassemble one message (joining continuation frames)."""
    first = read_frame(rfile)
    if first is None:
        return None
    opcode, fin, payload = first
    parts = [payload]
    while not fin:
        nxt = read_frame(rfile)
        if nxt is None:
            return None
        _, fin, chunk = nxt
        parts.append(chunk)
    return opcode, b"".join(parts)


class BridgeHandler(SimpleHTTPRequestHandler):
    """Static files everywhere except the upgrade path."""

    # set by make_server()
    pipeline_factory = staticmethod(GazePipeline)
    ws_path = WS_PATH

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def do_GET(self):
        if self.path.split("?")[0] == self.ws_path:
            self._upgrade()
        else:
            super().do_GET()

    def _upgrade(self):
        key = self.headers.get("Sec-WebSocket-Key")
        if (
            self.headers.get("Upgrade", "").lower() != "websocket"
            or key is None
        ):
            self.send_error(400, "expected a websocket upgrade")
            return
        self.send_response(101, "Switching Protocols")
        self.send_header("Upgrade", "websocket")
        self.send_header("Connection", "Upgrade")
        self.send_header("Sec-WebSocket-Accept", accept_key(key))
        self.end_headers()
        self.close_connection = True
        self._serve_ws()

    def _serve_ws(self):
        pipeline = self.pipeline_factory()
        lock = threading.Lock()

        def send_text(text: str) -> None:
            with lock:
                self.wfile.write(encode_text(text))
                self.wfile.flush()

        for msg in pipeline.hello():
            send_text(json.dumps(msg))
        try:
            while True:
                message = read_message(self.rfile)
                if message is None:
                    break
                opcode, payload = message
                if opcode == OP_CLOSE:
                    with lock:
                        self.wfile.write(encode_frame(payload[:2], OP_CLOSE))
                    break
                if opcode == OP_PING:
                    with lock:
                        self.wfile.write(encode_frame(payload, OP_PONG))
                    continue
                if opcode != OP_TEXT:
                    continue
                for line in pipeline.on_line(payload.decode("utf-8")):
                    send_text(line)
        except (ConnectionError, socket.timeout, OSError):
            pass


def make_server(
    host: str, port: int, frontend_dir: str, pipeline_factory=GazePipeline
) -> ThreadingHTTPServer:
    handler = type(
        "BoundBridgeHandler",
        (BridgeHandler,),
        {"pipeline_factory": staticmethod(pipeline_factory)},
    )
    return ThreadingHTTPServer((host, port), partial(handler, directory=frontend_dir))
