import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 40


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300)


def run_cli(*argv):
    """(exit code, stdout, stderr) of an in-process CLI call."""
    import io

    from darboux.cli import main

    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="session")
def verify_run():
    import json

    code, out, _ = run_cli("verify")
    return code, json.loads(out)


@pytest.fixture(scope="session")
def corrupted_run():
    import json

    code, out, _ = run_cli("verify", "--inject-corruption")
    return code, json.loads(out)
