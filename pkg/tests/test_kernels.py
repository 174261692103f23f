import numpy as np
import pytest

from pmcsn import rng
from pmcsn._kernels import BACKEND, HAVE_NUMBA, reach_numpy
from pmcsn.network import sample_diffusion_network
from pmcsn.synth import synthetic_social


def test_backend_selected():
    assert BACKEND in ("numba", "numpy")


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")
def test_backends_bit_identical():
    from pmcsn._kernels import reach_numba
    g = synthetic_social(150, 10.0, seed=5)
    net = sample_diffusion_network(g, 4, rng.stream(1, "k"))
    gen = np.random.default_rng(99)
    for _ in range(100):
        live = gen.random(net.arc_count) < 0.3
        seeds = gen.integers(0, g.n, size=4).astype(np.int64)
        a = np.zeros(g.n, dtype=np.uint8)
        b = np.zeros(g.n, dtype=np.uint8)
        reach_numba(net.indptr, net.indices, live, seeds, a)
        reach_numpy(net.indptr, net.indices, live, seeds, b)
        assert np.array_equal(a, b)


def test_numpy_kernel_respects_existing_active():
    g = synthetic_social(40, 5.0, seed=3)
    net = sample_diffusion_network(g, 3, rng.stream(2, "k"))
    live = np.ones(net.arc_count, dtype=bool)
    pre = np.zeros(g.n, dtype=np.uint8)
    pre[:10] = 1
    out = reach_numpy(net.indptr, net.indices, live, np.array([0], dtype=np.int64), pre.copy())
    # pre-activated nodes stay active and are not re-expanded into the frontier count
    assert np.all(out[:10] == 1)
