import os
import subprocess
import sys

import numpy as np
import pytest

from hodge_psh import _kernels
from hodge_psh.chart import _pairing_matrix
from hodge_psh.hodge_core import build_model
from oracles import wedge_dense


def _random(rng, n, d):
    return rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))


def test_wedge_batch_matches_dense_oracle():
    m = build_model("Minimal", 5)
    rng = np.random.default_rng(0)
    X, Y = _random(rng, 20, m.dimV), _random(rng, 20, m.dimV)
    I, J = m.wedge.pair_arrays
    got = _kernels.wedge_batch(X, Y, I, J)
    ref = np.array([wedge_dense(x, y) for x, y in zip(X, Y)])
    assert np.allclose(got, ref, rtol=0, atol=1e-14)


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")
@pytest.mark.parametrize("kind", ["Minimal", "Third", "HodgeTate"])
def test_numba_and_numpy_kernels_agree(kind):
    m = build_model(kind, 6)
    rng = np.random.default_rng(1)
    n, d = 64, m.wedge.dimH
    E0, dE0, EI, dEI = (_random(rng, n, d) for _ in range(4))
    M = _pairing_matrix(kind, 6)
    a = _kernels.pairing_jets(E0, dE0, EI, dEI, M, use_numba=True)
    b = _kernels.pairing_jets_numpy(E0, dE0, EI, dEI, M)
    for x, y in zip(a, b):
        assert np.allclose(x, y, rtol=1e-13, atol=1e-12)
    I, J = m.wedge.pair_arrays
    X, Y = _random(rng, n, m.dimV), _random(rng, n, m.dimV)
    assert np.allclose(_kernels.wedge_batch_numba(X, Y, I, J), _kernels.wedge_batch_numpy(X, Y, I, J))


def test_environment_switch_disables_numba():
    code = ("from hodge_psh import _kernels, chart, hodge_core\n"
            "import numpy as np\n"
            "d = chart.make_horizontal_disc(hodge_core.build_model('Minimal', 4), 3)\n"
            "print(_kernels.backend(), repr(float(chart.hodge_norms(d, np.array([0.02])).h0[0])))\n")
    env = dict(os.environ, HODGE_PSH_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value = out.stdout.split()
    assert backend == "numpy"
    from hodge_psh import chart
    d = chart.make_horizontal_disc(build_model("Minimal", 4), 3)
    assert float(value) == pytest.approx(chart.hodge_norms(d, np.array([0.02])).h0[0], rel=1e-13)
