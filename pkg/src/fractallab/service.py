"""Stateless HTTP service exposing render, orbit, and knot endpoints.

Endpoints (all GET, parameters in the query string):

    /api/v1/render  fractal=mandelbrot|newton cx cy scale w h max_iter
                    [k a_re a_im]            -> PGM or PPM bytes
    /api/v1/orbit   fractal x y max_iter [k a_re a_im]  -> JSON
    /api/v1/knots   depth k a_re a_im                   -> JSON knot tree
    /api/v1/meta                                        -> JSON capabilities

JSON replies carry a top-level "ok"; failures are {"ok": false, "error": ...}
with status 400.  Image bytes are identical to what the CLI writes for the
same parameters, so clients can treat either as the golden source.  CORS is
open: this is a local tool.
"""

from __future__ import annotations

import json
import math
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import __version__, mandel, newtonlab, raster
from .errors import DomainError, ResourceLimitError

DEFAULT_PORT = 8642
MAX_PIXELS = 4_000_000
MAX_ITER_LIMIT = 100_000
MAX_DEPTH = 7
ORBIT_POINT_CAP = 500

LIMITS = {
    "max_pixels": MAX_PIXELS,
    "max_iter": MAX_ITER_LIMIT,
    "max_depth": MAX_DEPTH,
    "orbit_point_cap": ORBIT_POINT_CAP,
}


class BadRequest(Exception):
    pass


def _one(params: dict, name: str) -> str:
    values = params.get(name)
    if not values:
        raise BadRequest(f"missing parameter: {name}")
    return values[0]


def _float(params, name) -> float:
    raw = _one(params, name)
    try:
        value = float(raw)
    except ValueError:
        raise BadRequest(f"parameter {name} is not a number: {raw!r}")
    if not math.isfinite(value):
        raise BadRequest(f"parameter {name} must be finite")
    return value


def _int(params, name, lo, hi) -> int:
    raw = _one(params, name)
    try:
        value = int(raw)
    except ValueError:
        raise BadRequest(f"parameter {name} is not an integer: {raw!r}")
    if not lo <= value <= hi:
        raise BadRequest(f"parameter {name} must be in [{lo}, {hi}]")
    return value


def _newton_args(params) -> tuple[int, complex]:
    k = _int(params, "k", 2, 6)
    a = complex(_float(params, "a_re"), _float(params, "a_im"))
    if a == 0:
        raise BadRequest("parameter a must be nonzero")
    return k, a


def render_response(params: dict) -> tuple[bytes, str]:
    """(image bytes, format tag) for a /render query."""
    fractal = _one(params, "fractal")
    if fractal not in ("mandelbrot", "newton"):
        raise BadRequest("fractal must be mandelbrot or newton")
    w = _int(params, "w", 1, MAX_PIXELS)
    h = _int(params, "h", 1, MAX_PIXELS)
    if w * h > MAX_PIXELS:
        raise BadRequest(f"image too large: w*h must be <= {MAX_PIXELS}")
    max_iter = _int(params, "max_iter", 1, MAX_ITER_LIMIT)
    scale = _float(params, "scale")
    if scale <= 0:
        raise BadRequest("scale must be positive")
    rp = mandel.RenderParams(
        center=complex(_float(params, "cx"), _float(params, "cy")),
        scale=scale,
        width=w,
        height=h,
        max_iter=max_iter,
    )
    if fractal == "mandelbrot":
        return raster.write_pgm(mandel.render_mandel(rp)), "pgm"
    k, a = _newton_args(params)
    return raster.write_ppm(newtonlab.render_newton(rp, k, a)), "ppm"


def orbit_response(params: dict) -> dict:
    fractal = _one(params, "fractal")
    x = _float(params, "x")
    y = _float(params, "y")
    max_iter = _int(params, "max_iter", 1, MAX_ITER_LIMIT)
    if fractal == "mandelbrot":
        orbit = mandel.mandel_orbit(complex(x, y), max_iter)
        points = orbit.points[:ORBIT_POINT_CAP]
        doc = {
            "ok": True,
            "points": [[p.real, p.imag] for p in points],
            "classification": "escaped" if orbit.escaped else "bounded",
        }
        if orbit.escaped:
            doc["escape_iter"] = orbit.escaped_at
        return doc
    if fractal == "newton":
        k, a = _newton_args(params)
        points, result = newtonlab.newton_orbit(complex(x, y), k, a, max_iter)
        doc = {
            "ok": True,
            "points": [[p.real, p.imag] for p in points[:ORBIT_POINT_CAP]],
            "classification": result.kind,
        }
        if result.kind == "converged":
            doc["root_index"] = result.root_index
            doc["iters"] = result.iters
        elif result.kind == "hit_zero":
            doc["step"] = result.step
        return doc
    raise BadRequest("fractal must be mandelbrot or newton")


def knots_response(params: dict) -> dict:
    depth = _int(params, "depth", 0, MAX_DEPTH)
    k, a = _newton_args(params)
    tree = newtonlab.knot_tree(depth, k, a)
    doc = tree.to_dict()
    doc["ok"] = True
    return doc


def meta_response() -> dict:
    return {
        "ok": True,
        "version": __version__,
        "fractals": ["mandelbrot", "newton"],
        "limits": LIMITS,
    }


class ExplorerHandler(BaseHTTPRequestHandler):
    server_version = f"fractallab-explorerd/{__version__}"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _reply(self, status: int, body: bytes, content_type: str,
               extra: dict | None = None) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        for name, value in (extra or {}).items():
            self.send_header(name, value)
        self.end_headers()
        self.wfile.write(body)

    def _reply_json(self, doc: dict, status: int = 200) -> None:
        self._reply(status, json.dumps(doc).encode(), "application/json; charset=utf-8")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "*")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        url = urlparse(self.path)
        params = parse_qs(url.query)
        try:
            if url.path == "/api/v1/render":
                body, fmt = render_response(params)
                self._reply(200, body, "application/octet-stream",
                            {"X-Image-Format": fmt})
            elif url.path == "/api/v1/orbit":
                self._reply_json(orbit_response(params))
            elif url.path == "/api/v1/knots":
                self._reply_json(knots_response(params))
            elif url.path == "/api/v1/meta":
                self._reply_json(meta_response())
            else:
                self._reply_json({"ok": False, "error": "not found"}, status=404)
        except BadRequest as exc:
            self._reply_json({"ok": False, "error": str(exc)}, status=400)
        except (DomainError, ResourceLimitError) as exc:
            self._reply_json({"ok": False, "error": str(exc)}, status=400)


def create_server(host: str = "127.0.0.1", port: int = DEFAULT_PORT) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), ExplorerHandler)


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT) -> None:
    server = create_server(host, port)
    print(f"explorerd listening on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
