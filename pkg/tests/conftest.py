import pathlib

import numpy as np
import pytest

from pixtile.engine import available_backends
from pixtile.image import RasterImage

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(params=available_backends())
def backend(request):
    """Run a test against every built simulation kernel."""
    return request.param


@pytest.fixture
def raw_listing() -> str:
    return (DATA / "listing_n4_s1.tile").read_text()


@pytest.fixture
def rb2x2_bytes() -> bytes:
    return (DATA / "rb2x2.ppm").read_bytes()


def random_image(rng: np.random.Generator, width: int, height: int) -> RasterImage:
    pix = (np.uint32(0xFE000000)
           | rng.integers(0, 1 << 24, size=width * height, dtype=np.uint32))
    return RasterImage(width, height, pix)
