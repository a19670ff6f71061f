import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def run_dir(tmp_path_factory):
    """CSV output of a short simulator run at default model parameters."""
    out = tmp_path_factory.mktemp("run")
    cfg = out / "run.cfg"
    cfg.write_text("T=0.05\nsnapshot_times=0.05\n")
    proc = subprocess.run(
        [sys.executable, "-m", "trafficadp.cli", "--mode", "adp",
         "--config", str(cfg), "--out-dir", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return out


@pytest.fixture
def synthetic_dir(tmp_path):
    """Hand-written CSVs matching the simulator's schemas."""
    (tmp_path / "spatial.csv").write_text(
        "t,y1,r1,j,vbulk\n"
        "0.0,0.5,1.0,0.1,0.1\n0.0,1.5,2.0,0.4,0.2\n0.0,2.5,1.0,0.1,0.1\n"
        "1.0,0.5,1.5,0.3,0.2\n1.0,1.5,1.0,0.2,0.2\n1.0,2.5,1.5,0.3,\n")
    (tmp_path / "weights.csv").write_text(
        "t,a_00,a_01,b_00,b_01\n0.0,0.1,0.1,0.1,0.1\n1.0,0.1,0.1,0.1,0.1\n")
    (tmp_path / "speed_marginal.csv").write_text(
        "t,y2,r2\n0.0,0.1,4.0\n0.0,0.2,6.0\n1.0,0.1,3.0\n1.0,0.2,7.0\n")
    (tmp_path / "error.csv").write_text(
        "t,E\n0.0,0.05\n0.5,0.03\n1.0,0.02\n")
    return tmp_path
