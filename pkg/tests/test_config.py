import numpy as np
import pytest

from stefanvar.config import ConfigError, load, parse_text
from stefanvar.errors import ValidationError
from stefanvar.model import Boundary


def test_dimensionless_lists():
    run = parse_text("ste = 0.5\ndelta = 5\np = 1, 5, 10  # three curves\n")
    assert run.ps == [1.0, 5.0, 10.0]
    assert run.gammas == [] and not run.dimensional
    assert run.config(5.0).p == 5.0


def test_dimensional_reduces():
    run = parse_text("rho=1\nc0=1\nk0=1\nlatent=20\nT0=10\nTf=0\nh=25\ndelta=1\np=1\n",
                     Boundary.ROBIN)
    assert run.dimensional
    assert run.ste == pytest.approx(0.5)
    assert run.gammas == [pytest.approx(50.0)]


def test_lattice_axes():
    run = parse_text("ste=0.5\nT0=10\nTf=0\nx_points=0:2:5\nt_points=0.5, 1\n")
    assert np.allclose(run.x_points, [0, 0.5, 1, 1.5, 2])
    assert np.allclose(run.t_points, [0.5, 1.0])
    assert run.has_lattice
    assert run.spec.T0 == 10.0


def test_synthetic_spec_reproduces_parameters():
    from stefanvar.model import reduce
    run = parse_text("ste=0.8\na=1.5\nT0=3\nTf=-1\ndelta=2\np=2\n")
    red = reduce(run.spec)
    assert red.ste == pytest.approx(0.8)
    assert red.diffusivity_a == pytest.approx(1.5)


@pytest.mark.parametrize("text,field", [
    ("ste=0.5\nrho=1\n", "ste"),
    ("ste=0.5\nbogus=1\n", "bogus"),
    ("ste=abc\n", "ste"),
    ("delta=1\n", "ste"),
    ("ste=0.5\nste=0.6\n", "ste"),
    ("ste=0.5\ngamma=\n", "gamma"),
    ("ste=0.5\nx_points=0:1:3\n", "t_points"),
    ("ste=0.5\nx_points=0:1:3\nt_points=1\n", "T0"),
    ("ste=0.5\nT0=1\nTf=0\nx_points=0:1:3\nt_points=0, 1\n", "t_points"),
    ("ste=0.5\ndelta=1, 2\n", "delta"),
    ("ste=0.5\nT0=1\n", "Tf"),
])
def test_config_errors(text, field):
    with pytest.raises(ConfigError) as info:
        parse_text(text)
    assert info.value.field == field


def test_robin_needs_gamma():
    with pytest.raises(ConfigError) as info:
        parse_text("ste=0.5\n", Boundary.ROBIN)
    assert info.value.field == "gamma"


def test_physical_invariants_surface_as_validation_errors():
    with pytest.raises(ValidationError):
        parse_text("ste=0.5\ndelta=-1\n")
    with pytest.raises(ValidationError):
        parse_text("ste=0.5\ngamma=1, -2\n")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load(tmp_path / "nope.cfg")
