import hashlib
import random

import pytest

from fractallab import mandel
from fractallab.errors import DomainError, ResourceLimitError
from fractallab.raster import write_pgm

# Transcribed coefficient lists (ascending powers of r) for the first five
# expressions of the -2 - r orbit.
P2 = (2, 3, 1)
P3 = (2, 11, 13, 6, 1)
P4 = (2, 43, 173, 310, 305, 178, 62, 12, 1)
P5 = (2, 171, 2541, 16118, 57809, 134202, 217186, 256068, 225873,
      151258, 77290, 30012, 8726, 1844, 268, 24, 1)

MANDEL_64_SHA256 = "f970f48b820fc800f9ecf44fab67a2483de7a83008ddc03285383b84de34b419"


class TestOrbit:
    def test_zero_stays_put(self):
        orbit = mandel.mandel_orbit(0, 20)
        assert not orbit.escaped
        assert all(p == 0 for p in orbit.points)

    def test_minus_two_is_bounded(self):
        orbit = mandel.mandel_orbit(-2, 100)
        assert not orbit.escaped
        assert orbit.points[:3] == (-2, 2, 2)

    def test_quarter_plus_epsilon_escapes(self):
        assert mandel.mandel_orbit(0.26, 10_000).escaped

    def test_one_escapes_at_three(self):
        orbit = mandel.mandel_orbit(1, 50)
        assert orbit.points == (1, 2, 5)
        assert orbit.escaped_at == 3

    def test_orbit_respects_max_iter(self):
        orbit = mandel.mandel_orbit(-1, 7)
        assert len(orbit.points) == 7
        assert not orbit.escaped


class TestEscapeTheorems:
    """Desk-scale versions of the bailout theorems: past modulus 2 an orbit
    never returns and its excess over 2 at least triples per step."""

    def test_no_return_and_growth_law(self):
        rng = random.Random(20260810)
        escaped = 0
        for _ in range(10_000):
            c = complex(rng.uniform(-2.5, 1.0), rng.uniform(-1.5, 1.5))
            mags = mandel.orbit_magnitudes(c, 200)
            first = next((i for i, m in enumerate(mags) if m > 2.0), None)
            if first is None:
                continue
            escaped += 1
            r = mags[first] - 2.0
            for k, m in enumerate(mags[first:]):
                assert m > 2.0
                assert m >= 2.0 + r * 3.0**k
        assert escaped > 5000  # the sample must actually exercise the law

    def test_magnitude_cap(self):
        mags = mandel.orbit_magnitudes(3, 1000)
        assert mags[-1] > mandel.OVERFLOW_CAP
        assert all(m <= mandel.OVERFLOW_CAP for m in mags[:-1])


class TestRealAxis:
    def test_fixed_points(self):
        assert mandel.real_fixed_points(0.0) == (0.0, 1.0)
        assert mandel.real_fixed_points(0.25) == (0.5,)
        assert mandel.real_fixed_points(0.3) == ()

    def test_interval_is_bounded(self):
        for k in range(100):
            x = 0.25 * k / 99
            assert not mandel.mandel_orbit(x, 10_000).escaped

    def test_quarter_orbit_below_half(self):
        orbit = mandel.mandel_orbit(0.25, 10_000)
        assert not orbit.escaped
        assert max(p.real for p in orbit.points) <= 0.5 + 1e-12

    def test_monotone_on_the_interval(self):
        rng = random.Random(7)
        for _ in range(25):
            x = rng.uniform(1e-6, 0.25)
            pts = mandel.mandel_orbit(x, 10_000).points
            assert all(b.real >= a.real for a, b in zip(pts, pts[1:]))

    def test_beyond_quarter_escapes(self):
        for k in range(1, 101):
            assert mandel.mandel_orbit(0.25 + k / 100, 10_000).escaped


class TestBoundaryPolys:
    def test_seed(self):
        assert mandel.boundary_polys(1)[0].coeffs == (-2, -1)

    def test_known_expansions(self):
        polys = mandel.boundary_polys(5)
        assert polys[1].coeffs == P2
        assert polys[2].coeffs == P3
        assert polys[3].coeffs == P4
        assert polys[4].coeffs == P5

    def test_degrees_and_constant_terms(self):
        polys = mandel.boundary_polys(10)
        for i, p in enumerate(polys, start=1):
            assert p.degree == 2 ** (i - 1)
        assert all(p.coeffs[0] == 2 for p in polys[1:])

    def test_linear_coefficients(self):
        assert mandel.linear_coeffs(5) == [3, 11, 43, 171]

    def test_recurrence_and_lower_bound(self):
        assert mandel.linear_coeff_recurrence_check(5)
        assert mandel.linear_coeff_recurrence_check(11)

    def test_closed_form(self):
        # a_n = (2 * 4**n + 1) / 3 solves a_{n+1} = 4 a_n - 1 with a_1 = 3
        seq = mandel.linear_coeffs(11)
        for n, a in enumerate(seq, start=1):
            assert 3 * a == 2 * 4**n + 1

    def test_symbolic_iteration_oracle(self):
        # independent route: substitute-and-expand with plain dicts
        def poly_mul(p, q):
            out = {}
            for i, a in p.items():
                for j, b in q.items():
                    out[i + j] = out.get(i + j, 0) + a * b
            return out

        expr = {0: -2, 1: -1}
        expected = []
        for _ in range(9):
            expr = poly_mul(expr, expr)
            expr[0] = expr.get(0, 0) - 2
            expr[1] = expr.get(1, 0) - 1
            expected.append(expr.get(1, 0))
        assert mandel.linear_coeffs(10) == expected

    def test_pretty_printer(self):
        assert str(mandel.boundary_polys(2)[1]) == "r^2 + 3r + 2"

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            mandel.boundary_polys(13)


class TestRender:
    def test_params_validation(self):
        with pytest.raises(DomainError):
            mandel.RenderParams(0j, 0.1, 0, 64, 10)
        with pytest.raises(DomainError):
            mandel.RenderParams(0j, -1.0, 64, 64, 10)

    def test_pixel_mapping(self):
        params = mandel.RenderParams(complex(-0.5, 0), 3 / 64, 64, 64, 100)
        assert params.pixel_to_c(32, 32) == complex(-0.5, 0)

    def test_center_pixel_black(self):
        params = mandel.RenderParams(0j, 3 / 64, 64, 64, 100)
        img = mandel.render_mandel(params)
        assert img.pixels[32 * 64 + 32] == 0

    def test_escaping_pixel_nonzero(self):
        params = mandel.RenderParams(complex(1, 0), 0.01, 1, 1, 100)
        img = mandel.render_mandel(params)
        assert img.pixels[0] != 0

    def test_golden_checksum(self):
        params = mandel.RenderParams(complex(-0.5, 0), 3 / 64, 64, 64, 100)
        data = write_pgm(mandel.render_mandel(params))
        assert hashlib.sha256(data).hexdigest() == MANDEL_64_SHA256

    def test_deterministic(self):
        params = mandel.RenderParams(complex(-0.75, 0.1), 0.002, 48, 32, 150)
        a = mandel.render_mandel(params)
        b = mandel.render_mandel(params)
        assert a.pixels == b.pixels
