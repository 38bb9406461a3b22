"""Image container and deterministic file emitters: PGM, PPM, SVG, DOT.

Binary netpbm was chosen over compressed formats so golden tests can compare
raw bytes with no codec in the loop.  Identical inputs must always produce
byte-identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Image:
    """Row-major byte image, 1 (gray) or 3 (RGB) channels."""

    width: int
    height: int
    channels: int
    pixels: bytes

    def __post_init__(self):
        if self.channels not in (1, 3):
            raise DomainError("channels must be 1 or 3")
        if self.width < 1 or self.height < 1:
            raise DomainError("image must be at least 1x1")
        expected = self.width * self.height * self.channels
        if len(self.pixels) != expected:
            raise DomainError(
                f"pixel buffer is {len(self.pixels)} bytes, expected {expected}"
            )


def write_pgm(img: Image) -> bytes:
    """Binary P5 (one byte per pixel, maxval 255)."""
    if img.channels != 1:
        raise DomainError("PGM requires a single-channel image")
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.pixels


def write_ppm(img: Image) -> bytes:
    """Binary P6 (three bytes per pixel, maxval 255)."""
    if img.channels != 3:
        raise DomainError("PPM requires a three-channel image")
    return b"P6\n%d %d\n255\n" % (img.width, img.height) + img.pixels


_NETPBM_HEADER = re.compile(rb"^(P[56])\n(\d+) (\d+)\n255\n")


def _read_netpbm(data: bytes, magic: bytes, channels: int) -> Image:
    m = _NETPBM_HEADER.match(data)
    if not m or m.group(1) != magic:
        raise DomainError(f"not a {magic.decode()} stream")
    width = int(m.group(2))
    height = int(m.group(3))
    pixels = data[m.end():]
    return Image(width, height, channels, pixels)


def read_pgm(data: bytes) -> Image:
    return _read_netpbm(data, b"P5", 1)


def read_ppm(data: bytes) -> Image:
    return _read_netpbm(data, b"P6", 3)


def _fmt(v: float) -> str:
    # Shortest round-trip float form, with integral values compacted.
    if v == int(v):
        return str(int(v))
    return repr(v)


def polyline_to_svg(points, stroke_width: float = 0.1) -> str:
    """Single-path SVG of a polyline, y-axis flipped to screen orientation.

    The viewBox is the bounding box padded by the stroke width.
    """
    if len(points) < 2:
        raise DomainError("polyline needs at least 2 points")
    flipped = [(float(x), float(-y)) for x, y in points]
    xs = [p[0] for p in flipped]
    ys = [p[1] for p in flipped]
    pad = stroke_width
    min_x = min(xs) - pad
    min_y = min(ys) - pad
    vb_w = (max(xs) - min(xs)) + 2 * pad
    vb_h = (max(ys) - min(ys)) + 2 * pad
    d = "M " + " L ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in flipped)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(min_x)} {_fmt(min_y)} {_fmt(vb_w)} {_fmt(vb_h)}">\n'
        f'  <path d="{d}" fill="none" stroke="black" '
        f'stroke-width="{_fmt(stroke_width)}" stroke-linecap="square" '
        'stroke-linejoin="miter"/>\n'
        "</svg>\n"
    )


def _dot_label(value: complex) -> str:
    re_part = value.real + 0.0  # normalize -0.0
    im_part = value.imag + 0.0
    return f"{re_part:.4f}{im_part:+.4f}i"


def knots_to_dot(tree) -> str:
    """DOT digraph of a knot tree (any node with .value and .children).

    Nodes are labeled by their complex value to 4 decimals and emitted in
    preorder, children in their canonical (argument) order.
    """
    lines = ["digraph knots {", '  node [shape=ellipse, fontname="monospace"];']

    def walk(node, name):
        lines.append(f'  {name} [label="{_dot_label(node.value)}"];')
        for idx, child in enumerate(node.children):
            child_name = f"{name}_{idx}"
            walk(child, child_name)
            lines.append(f"  {name} -> {child_name};")

    walk(tree, "n0")
    lines.append("}")
    return "\n".join(lines) + "\n"
