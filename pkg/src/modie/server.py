"""Read-only local HTTP server for generated JSON and the UI bundle.

Routes: ``/api/scenes`` lists accessions with a scene document,
``/data/<file>`` serves generated outputs, everything else is served from
the UI bundle directory.
"""

from __future__ import annotations

import json
import logging
import urllib.parse
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

log = logging.getLogger(__name__)


def list_scene_accessions(data_dir: Path) -> list[str]:
    return sorted(p.name[: -len(".scene.json")] for p in Path(data_dir).glob("*.scene.json"))


class DataRequestHandler(SimpleHTTPRequestHandler):
    data_dir: Path
    ui_dir: Optional[Path]

    def do_GET(self):
        if urllib.parse.urlparse(self.path).path.rstrip("/") == "/api/scenes":
            payload = json.dumps(list_scene_accessions(self.data_dir)).encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)
            return
        super().do_GET()

    def translate_path(self, path: str) -> str:
        clean = urllib.parse.urlparse(path).path
        if clean.startswith("/data/"):
            self.directory = str(self.data_dir)
            path = clean[len("/data") :]
        else:
            self.directory = str(self.ui_dir) if self.ui_dir else str(self.data_dir)
        # parent resolves against self.directory and drops '..' components
        return super().translate_path(path)

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        log.debug("%s - %s", self.address_string(), format % args)


def make_server(
    data_dir: Path, ui_dir: Path | None, port: int, host: str = "127.0.0.1"
) -> ThreadingHTTPServer:
    """Bind the server; raises OSError when the port is busy."""
    handler = type(
        "BoundHandler",
        (DataRequestHandler,),
        {"data_dir": Path(data_dir), "ui_dir": Path(ui_dir) if ui_dir else None},
    )
    return ThreadingHTTPServer((host, port), handler)
