import numpy as np
import pytest

from pixtile.engine import check_directed, run
from pixtile.generators import gen_uniform, uniform_oracle, color_for_value
from pixtile.image import (
    BLACK,
    DimensionCapError,
    PpmHeaderError,
    PpmTruncatedError,
    RasterImage,
    UnsupportedFormatError,
    compile_image,
    downscale_nearest,
    load_image,
    pack_argb,
    render,
    to_ppm,
    unpack_argb,
    verify_roundtrip,
)
from pixtile.model import Assembly, Site

from conftest import random_image


RED = -16842752   # 0xFEFF0000
BLUE = -33554177  # 0xFE0000FF


class TestArgb:
    def test_pack_signed(self):
        assert pack_argb(0xFE, 0, 0, 0xFF) == BLUE
        assert pack_argb(0xFE, 0xFF, 0, 0) == RED

    def test_unpack(self):
        assert unpack_argb(BLUE) == (0xFE, 0, 0, 0xFF)
        assert unpack_argb(RED) == (0xFE, 0xFF, 0, 0)


class TestLoad:
    def test_p3_fixture(self, rb2x2_bytes):
        img = load_image(rb2x2_bytes)
        assert (img.width, img.height) == (2, 2)
        assert img.pixel(0, 0) == RED and img.pixel(1, 0) == BLUE
        assert img.pixel(0, 1) == BLUE and img.pixel(1, 1) == RED

    def test_single_pixel(self):
        img = load_image(b"P3 1 1 255\n1 2 3\n")
        assert img.pixel(0, 0) == pack_argb(0xFE, 1, 2, 3)

    def test_p6_truncated(self):
        with pytest.raises(PpmTruncatedError) as err:
            load_image(b"P6 4 4 255\n" + b"\x00" * 45)
        assert err.value.offset == 11 + 45

    def test_p3_truncated(self):
        with pytest.raises(PpmTruncatedError):
            load_image(b"P3 2 2 255\n1 2 3\n")

    def test_unsupported_magic(self):
        with pytest.raises(UnsupportedFormatError) as err:
            load_image(b"GIF89a....")
        assert err.value.offset == 0

    def test_sixteen_bit_rejected(self):
        with pytest.raises(UnsupportedFormatError):
            load_image(b"P6 1 1 65535\n\x00\x00\x00\x00\x00\x00")

    def test_bad_header(self):
        with pytest.raises(PpmHeaderError):
            load_image(b"P3 0 2 255\n1 2 3 4 5 6\n")

    def test_header_comments(self):
        img = load_image(b"P3 # hi\n2 1 # w h\n255\n1 2 3 4 5 6\n")
        assert (img.width, img.height) == (2, 1)

    def test_maxval_rescaled(self):
        img = load_image(b"P3 1 1 7\n7 0 3\n")
        a, r, g, b = unpack_argb(img.pixel(0, 0))
        assert (a, r, b) == (0xFE, 255, round(3 * 255 / 7))

    def test_sample_above_maxval(self):
        with pytest.raises(PpmHeaderError):
            load_image(b"P3 1 1 10\n11 0 0\n")

    def test_trailing_junk(self):
        with pytest.raises(PpmHeaderError):
            load_image(b"P3 1 1 255\n1 2 3\nmore")


class TestWrite:
    def test_p6_header_layout(self, rb2x2_bytes):
        data = to_ppm(load_image(rb2x2_bytes))
        assert data.startswith(b"P6 2 2 255\n")
        assert len(data) == 11 + 12

    def test_p3_golden(self):
        img = RasterImage(2, 1, [pack_argb(0xFE, 1, 2, 3),
                                 pack_argb(0xFE, 4, 5, 6)])
        assert to_ppm(img, binary=False) == b"P3 2 1 255\n1 2 3 4 5 6\n"

    def test_write_read_identity(self):
        rng = np.random.default_rng(11)
        img = random_image(rng, 9, 5)
        assert load_image(to_ppm(img)) == img
        assert load_image(to_ppm(img, binary=False)) == img


class TestDownscale:
    def test_identity_on_target_size(self):
        rng = np.random.default_rng(1)
        img = random_image(rng, 32, 32)
        assert downscale_nearest(img, 32, 32) == img

    def test_64_picks_odd_samples(self):
        rng = np.random.default_rng(2)
        img = random_image(rng, 64, 64)
        small = downscale_nearest(img, 32, 32)
        for x, y in ((0, 0), (13, 7), (31, 31)):
            assert small.pixel(x, y) == img.pixel(2 * x + 1, 2 * y + 1)

    def test_constant_from_single_pixel(self):
        img = RasterImage(1, 1, [RED])
        up = downscale_nearest(img, 32, 32)
        assert (up.width, up.height) == (32, 32)
        assert np.all(up.pixels == RED)

    def test_idempotent_at_32(self):
        rng = np.random.default_rng(3)
        img = random_image(rng, 50, 40)
        once = downscale_nearest(img, 32, 32)
        assert downscale_nearest(once, 32, 32) == once


class TestCompile:
    def test_counts_4x4(self):
        img = RasterImage(4, 4, [BLACK] * 16)
        system = compile_image(img)
        assert len(system.tiles) == 16
        assert system.num_glues == 2 * 4 * 4 - 4 - 4 == 24

    def test_single_pixel(self):
        system = compile_image(RasterImage(1, 1, [RED]))
        assert len(system.tiles) == 1
        assert system.num_glues == 0
        assert system.tiles[0].edges == (0, 0, 0, 0)

    def test_rapid_always_1024(self):
        rng = np.random.default_rng(4)
        system = compile_image(random_image(rng, 640, 480), "rapid")
        assert len(system.tiles) == 1024

    def test_dimension_cap(self):
        rng = np.random.default_rng(5)
        img = random_image(rng, 257, 4)
        with pytest.raises(DimensionCapError, match="max_dim"):
            compile_image(img)
        assert len(compile_image(img, max_dim=300).tiles) == 257 * 4

    def test_compiled_systems_are_directed(self, backend):
        rng = np.random.default_rng(6)
        for w, h in ((1, 1), (3, 1), (1, 4), (5, 7)):
            ok, report = check_directed(compile_image(random_image(rng, w, h)),
                                        backend=backend)
            assert ok, report

    def test_duplicate_colors_still_one_tile_per_pixel(self):
        img = RasterImage(3, 3, [RED] * 9)
        assert len(compile_image(img).tiles) == 9


class TestRender:
    def test_seed_only(self):
        system = compile_image(RasterImage(1, 1, [BLUE]))
        img = render(Assembly({Site(0, 0): 0}), system)
        assert (img.width, img.height) == (1, 1)
        assert img.pixel(0, 0) == BLUE

    def test_roundtrip_4x4(self, backend):
        rng = np.random.default_rng(7)
        img = random_image(rng, 4, 4)
        system = compile_image(img)
        result = run(system, backend=backend)
        assert render(result.assembly, system) == img

    def test_uniform_assembly_alternates_palette(self, backend):
        system, _ = gen_uniform(4, 1)
        result = run(system, backend=backend)
        img = render(result.assembly, system)
        assert (img.width, img.height) == (4, 4)
        # mirrored columns: site (r, c) lands at x = 3 - c, y = 3 - r
        for r in range(4):
            for c in range(4):
                want = color_for_value(uniform_oracle(4, 1, r, c))
                assert img.pixel(3 - c, 3 - r) == want

    def test_background_fills_gaps(self):
        system, _ = gen_uniform(4, 1)
        asm = Assembly({Site(0, 0): 0, Site(2, 2): 7})
        img = render(asm, system, background=RED)
        assert img.pixel(0, 2) == RED  # unoccupied corner

    def test_empty_assembly_rejected(self):
        system, _ = gen_uniform(4, 1)
        with pytest.raises(ValueError):
            render(Assembly(), system)


class TestRoundTrip:
    def test_16x16_normal(self, backend):
        rng = np.random.default_rng(8)
        report = verify_roundtrip(random_image(rng, 16, 16), backend=backend)
        assert report.ok
        assert report.tile_types == 256
        assert report.steps == 255

    def test_single_pixel(self):
        assert verify_roundtrip(RasterImage(1, 1, [RED])).ok

    def test_64_rapid_matches_downscale(self, backend):
        rng = np.random.default_rng(9)
        report = verify_roundtrip(random_image(rng, 64, 64), "rapid",
                                  backend=backend)
        assert report.ok and report.tile_types == 1024

    def test_mismatch_reported(self):
        # sabotage a tile color after compiling and check detection
        rng = np.random.default_rng(10)
        img = random_image(rng, 3, 3)
        system = compile_image(img)
        tiles = list(system.tiles)
        t = tiles[4]
        from pixtile.model import TileSystem, TileType
        tiles[4] = TileType(t.id, t.edges, t.color ^ 1, t.label)
        broken = TileSystem(tiles=tuple(tiles), strengths=system.strengths,
                            seed_id=0, temperature=2,
                            comments=system.comments)
        result = run(broken)
        got = render(result.assembly, broken)
        assert got != img
