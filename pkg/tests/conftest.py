import os
import shutil
import pytest
import numpy as np
from cement.utils import fs
from nucorrelate.core.oscillation.dynamics import OscillationParams


@pytest.fixture(scope="function")
def tmp(request):
    t = fs.Tmp()
    yield t

    # cleanup
    if os.path.exists(t.dir) and t.cleanup is True:
        shutil.rmtree(t.dir)


@pytest.fixture(scope="function")
def rng(request):
    yield np.random.default_rng(20240101)


@pytest.fixture(scope="session")
def params(request):
    yield OscillationParams.from_experiment()


@pytest.fixture(scope="session")
def pmns(params):
    yield params.pmns()
