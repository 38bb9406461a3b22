"""Acceptance gate: every release criterion, one test each, at its stated
tolerance and runtime budget.  Each test prints a PASS line on success (run
with -s or check the captured output) so the gate reads as a checklist.
"""

import hashlib
import math
import random
import threading
import time
import urllib.request
from fractions import Fraction as F

import pytest

from fractallab import (
    curves,
    dragonlab,
    mandel,
    meshforge,
    newtonlab,
    raster,
    service,
)
from fractallab.rationals import geom_sum_finite, geom_sum_infinite

MANDEL_64_SHA256 = "f970f48b820fc800f9ecf44fab67a2483de7a83008ddc03285383b84de34b419"
NEWTON_64_SHA256 = "89e46ff96e0888d86f2e342a3d8e225f3cfd069e8ff89fc9261d9e7b91308144"


def report(name):
    print(f"ACCEPTANCE PASS: {name}")


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.perf_counter() - self.t0
            assert elapsed < self.seconds, f"over budget: {elapsed:.2f}s"


def test_exact_series():
    with Budget(1.0):
        for a in range(2, 51):
            assert geom_sum_infinite(F(1, a), F(1, a)) == F(1, a - 1)
        assert geom_sum_finite(F(1, 2), F(1, 2), 10) == F(1023, 1024)
    report("exact series: 1/(a-1) for a=2..50; 10-day sum 1023/1024; < 1 s")


def test_koch_lengths():
    for n in range(1, 13):
        assert curves.koch_length(n) == F(4, 3) ** (n - 1)
    for n in range(1, 9):
        pts = curves.koch_polyline(n)
        arc = sum(math.dist(p, q) for p, q in zip(pts, pts[1:]))
        exact = float(curves.koch_length(n))
        assert abs(arc - exact) <= 1e-9 * exact
    report("koch: exact (4/3)^(n-1) for n<=12; arc length within 1e-9 for n<=8")


def test_snowflake_area():
    for n in range(1, 13):
        gap = F(8, 5) - curves.snowflake_area(n)
        assert gap == F(3, 5) * F(4, 9) ** (n - 1)
    parts = curves.snowflake_decomposition()
    assert (parts["t"], parts["u"], parts["U"], parts["A"]) == (
        F(1, 3), F(1, 15), F(1, 5), F(8, 5),
    )
    assert curves.snowflake_area_limit() == F(8, 5)
    report("snowflake: A_n -> 8/5 with exact gap; decomposition t,u,U,A reproduced")


def test_carpet_and_cantor():
    for d in range(0, 9):
        assert curves.carpet_area(d) == F(8, 9) ** d
    for d in range(0, 21):
        assert curves.cantor_measure(d) == F(2, 3) ** d
    assert curves.in_cantor(F(1, 4)) is True
    assert curves.in_cantor(F(1, 2)) is False
    assert curves.in_cantor(F(1, 3)) is True

    def descent_member(q, depth=30):
        lo, hi = F(0), F(1)
        for _ in range(depth):
            third = (hi - lo) / 3
            if q <= lo + third:
                hi = lo + third
            elif q >= hi - third:
                lo = hi - third
            else:
                return False
        return True

    rng = random.Random(31415)
    for _ in range(500):
        den = rng.randrange(1, 3**15)
        q = F(rng.randrange(0, den + 1), den)
        assert curves.in_cantor(q) == descent_member(q)
    report("carpet (8/9)^d, cantor (2/3)^d; membership matches depth-30 oracle x500")


def test_mandelbrot_real_axis():
    with Budget(5.0):
        for k in range(100):
            x = 0.25 * k / 99
            assert not mandel.mandel_orbit(x, 10_000).escaped
        quarter = mandel.mandel_orbit(0.25, 10_000)
        assert max(p.real for p in quarter.points) <= 0.5 + 1e-12
        for k in range(1, 101):
            assert mandel.mandel_orbit(0.25 + k / 100, 10_000).escaped
        assert not mandel.mandel_orbit(-2, 10_000).escaped
        assert mandel.mandel_orbit(0.26, 10_000).escaped
    report("real axis: [0,0.25] bounded, x=0.25 <= 1/2+1e-12, beyond escapes; < 5 s")


def test_escape_theorems():
    with Budget(30.0):
        rng = random.Random(20260810)
        exercised = 0
        for _ in range(10_000):
            c = complex(rng.uniform(-2.5, 1.0), rng.uniform(-1.5, 1.5))
            mags = mandel.orbit_magnitudes(c, 200)
            first = next((i for i, m in enumerate(mags) if m > 2.0), None)
            if first is None:
                continue
            exercised += 1
            r = mags[first] - 2.0
            for k, m in enumerate(mags[first:]):
                assert m > 2.0, "orbit re-entered the bailout disk"
                assert m >= 2.0 + r * 3.0**k, "excess growth law violated"
        assert exercised > 5000
    report("once past modulus 2 orbits never return and grow >= 2 + r*3^m; < 30 s")


def test_boundary_polynomials():
    with Budget(5.0):
        polys = mandel.boundary_polys(5)
        assert polys[1].coeffs == (2, 3, 1)
        assert polys[2].coeffs == (2, 11, 13, 6, 1)
        assert polys[3].coeffs == (2, 43, 173, 310, 305, 178, 62, 12, 1)
        assert polys[4].coeffs == (
            2, 171, 2541, 16118, 57809, 134202, 217186, 256068, 225873,
            151258, 77290, 30012, 8726, 1844, 268, 24, 1,
        )
        assert mandel.linear_coeffs(5) == [3, 11, 43, 171]
        assert mandel.linear_coeff_recurrence_check(11)
    report("boundary polys p2..p5 exact; coeffs 3,11,43,171; 4a-1 and >=3^n to n=10")


def test_heron_and_roots():
    seq = newtonlab.heron_sequence(newtonlab.HeronParams(2, 2, 1), 5)
    assert abs(seq[3] - 577 / 408) < 1e-12
    assert abs(seq[4] - math.sqrt(2)) < 1e-11
    cube = newtonlab.heron_sequence(newtonlab.HeronParams(3, 8, 1), 16)
    assert abs(cube[-1] - 2) < 1e-12
    for a, root in ((8, 2), (27, 3), (1000, 10)):
        x = 1 + 0j
        for _ in range(60):
            x = newtonlab.student_variant_step(x, a)
        assert abs(x - root) < 1e-9
    z = 0.5 - (math.sqrt(3) / 2) * 1j
    assert abs(z**3 - (-1)) < 1e-12
    report("heron: 577/408 then sqrt2 to 1e-11; cube roots; student variant; "
           "(1/2 - sqrt3/2 i)^3 = -1")


def test_knot_tree():
    tree = newtonlab.knot_tree(5, 3, 8)
    assert tree.level_sizes() == [3**d for d in range(6)]

    def worst(node):
        w = 0.0
        for child in node.children:
            w = max(w, abs(newtonlab.heron_step(child.value, 3, 8) - node.value))
            w = max(w, worst(child))
        return w

    assert worst(tree) <= 1e-7
    for child in tree.children:
        assert abs(child.value**3 - (-4)) <= 1e-10
    report("knot tree depth 5: 3^d per level, child steps onto parent <= 1e-7, "
           "children of 0 cube to -4")


def test_dragon_verification():
    with Budget(60.0):
        for n in range(0, 19):
            assert dragonlab.check_non_overlap(n).max_edge_multiplicity <= 1
        sides = []
        for n in range(1, 15):
            union = dragonlab.four_copy_union(n)
            assert max(union.values()) == 1
            assert sum(union.values()) == 4 * 2**n
            sides.append(dragonlab.max_filled_square(union).side)
        assert sides == sorted(sides)
        first_at_4 = next(n for n, s in enumerate(sides, start=1) if s >= 4)
        assert first_at_4 == 3  # golden under the fixed chirality
        assert first_at_4 <= 10
    report("dragon: no repeated edge to n=18; 4 copies disjoint to n=14; filled "
           "side nondecreasing, >=4 first at n=3; < 60 s")


def test_printable_mesh():
    with Budget(30.0):
        mesh = meshforge.extrude_dragon(7, wall=2, height=10.0, unit=10.0)
        rep = meshforge.validate_mesh(mesh)
        assert rep.closed and rep.oriented and rep.degenerate_triangles == 0
        assert rep.components == 1
        cells = len(meshforge.dragon_occupancy(7, 2))
        expected = cells * 2.5**2 * 10.0
        assert abs(rep.volume - expected) <= 1e-6 * expected
        stl = meshforge.write_stl_binary(mesh)
        assert len(stl) == 84 + 50 * len(mesh.triangles)
        stacked = meshforge.stack_iterations(1, 4)
        srep = meshforge.validate_mesh(stacked)
        assert srep.components == 1 and srep.closed
    report("mesh: iteration-7 extrusion watertight with exact volume; STL sized "
           "84+50T; stack(1,4) connected; < 30 s")


def test_determinism_and_goldens():
    params = mandel.RenderParams(complex(-0.5, 0), 3 / 64, 64, 64, 100)
    pgm1 = raster.write_pgm(mandel.render_mandel(params))
    pgm2 = raster.write_pgm(mandel.render_mandel(params))
    assert pgm1 == pgm2
    assert hashlib.sha256(pgm1).hexdigest() == MANDEL_64_SHA256

    nparams = mandel.RenderParams(0j, 6 / 64, 64, 64, 200)
    ppm1 = raster.write_ppm(newtonlab.render_newton(nparams, 3, 8))
    ppm2 = raster.write_ppm(newtonlab.render_newton(nparams, 3, 8))
    assert ppm1 == ppm2
    assert hashlib.sha256(ppm1).hexdigest() == NEWTON_64_SHA256

    mesh = meshforge.extrude_dragon(4)
    assert meshforge.write_stl_binary(mesh) == meshforge.write_stl_binary(mesh)
    report("determinism: renders, emitters, and 64x64 goldens byte-stable")


def test_service_parity():
    srv = service.create_server("127.0.0.1", 0)
    port = srv.server_address[1]
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    try:
        def fetch(path):
            with urllib.request.urlopen(base + path, timeout=30) as resp:
                return resp.read()

        rng = random.Random(555)
        for _ in range(20):
            cx = round(rng.uniform(-2, 1), 4)
            cy = round(rng.uniform(-1, 1), 4)
            scale = round(rng.uniform(0.01, 0.08), 5)
            w = rng.randrange(8, 40)
            h = rng.randrange(8, 40)
            iters = rng.randrange(20, 120)
            params = mandel.RenderParams(complex(cx, cy), scale, w, h, iters)
            if rng.random() < 0.5:
                want = raster.write_pgm(mandel.render_mandel(params))
                got = fetch(
                    f"/api/v1/render?fractal=mandelbrot&cx={cx}&cy={cy}"
                    f"&scale={scale}&w={w}&h={h}&max_iter={iters}"
                )
            else:
                want = raster.write_ppm(newtonlab.render_newton(params, 3, 8))
                got = fetch(
                    f"/api/v1/render?fractal=newton&cx={cx}&cy={cy}"
                    f"&scale={scale}&w={w}&h={h}&max_iter={iters}"
                    "&k=3&a_re=8&a_im=0"
                )
            assert got == want

        import json

        for x, expected in ((-2, "bounded"), (0.26, "escaped"), (0.25, "bounded")):
            doc = json.loads(fetch(
                f"/api/v1/orbit?fractal=mandelbrot&x={x}&y=0&max_iter=10000"
            ))
            assert doc["classification"] == expected
    finally:
        srv.shutdown()
        srv.server_close()
    report("service parity: 20 random renders byte-equal to CLI; orbit "
           "classifications for -2, 0.26, 0.25")
