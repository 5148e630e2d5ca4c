import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest


class MockEndpoint:
    """Tiny scriptable HTTP server for remote-classifier and crawler tests.

    ``responder`` is a callable (method, path, body, handler) -> (status,
    headers, payload); payload may be a dict/list (sent as JSON) or bytes.
    """

    def __init__(self, responder):
        self.responder = responder
        self.requests = []
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def _serve(self, method):
                length = int(self.headers.get("Content-Length") or 0)
                body = self.rfile.read(length) if length else b""
                outer.requests.append((method, self.path, body))
                status, headers, payload = outer.responder(method, self.path, body, self)
                if not isinstance(payload, bytes):
                    payload = json.dumps(payload).encode()
                self.send_response(status)
                for k, v in headers.items():
                    self.send_header(k, v)
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

            def do_GET(self):
                self._serve("GET")

            def do_POST(self):
                self._serve("POST")

            def log_message(self, *args):
                pass

        self.server = HTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.server.server_port}"
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def mock_endpoint():
    """Factory fixture: ``mock_endpoint(responder)`` yields a running server."""
    servers = []

    def factory(responder):
        srv = MockEndpoint(responder)
        srv.__enter__()
        servers.append(srv)
        return srv

    yield factory
    for srv in servers:
        srv.__exit__()
