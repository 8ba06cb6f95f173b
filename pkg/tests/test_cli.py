"""Command-line reports: exit codes, grammar, determinism."""
import subprocess
import sys

import pytest

import gproximity as gp
from gproximity.cli import main


@pytest.fixture()
def saved_instance(tmp_path):
    path = tmp_path / "inst.gpx"
    gp.save_instance(gp.random_instance(7, 10, 10), path)
    return str(path)


@pytest.fixture()
def contraction_file(tmp_path):
    path = tmp_path / "ring.gpx"
    gp.save_instance(gp.contraction_instance(3), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def keys(out):
    return [line.split(":", 1)[0] for line in out.splitlines()]


class TestValidate:
    def test_clean_instance(self, capsys, saved_instance):
        code, out = run(capsys, "validate", saved_instance)
        assert code == 0
        assert "metric-valid: true" in out
        assert "cyclic-valid: true" in out

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["validate", str(tmp_path / "nope.gpx")])
        assert err.value.code == 2


class TestClassify:
    def test_contraction_report(self, capsys, contraction_file):
        code, out = run(capsys, "classify", contraction_file)
        assert code == 0
        assert "contraction-factor: 0." in out
        assert "nonexpansive: true" in out
        assert "crr-params: alpha=" in out

    def test_alpha_probe(self, capsys, contraction_file):
        code, out = run(capsys, "classify", contraction_file, "--alpha", "0.9")
        assert "g-contraction(0.9): true" in out


class TestSolve:
    def test_single_mode(self, capsys, contraction_file):
        code, out = run(capsys, "--tol", "1e-9", "solve", contraction_file,
                        "--start", "1", "--epsilon", "0.05")
        assert code == 0
        assert "status: found" in out
        assert "witness:" in out
        assert "crr-iteration-bound:" in out

    def test_exhaustion_is_negative_exit(self, capsys, tmp_path):
        path = tmp_path / "refl.gpx"
        gp.save_instance(gp.reflection_instance(1), path)
        code, out = run(capsys, "solve", str(path), "--epsilon", "1e-6",
                        "--max-iter", "5")
        assert code == 1
        assert "status: exhausted" in out

    def test_alternating_needs_constants(self, capsys, tmp_path):
        path = tmp_path / "seg.gpx"
        gp.save_instance(gp.segments_example(0.25), path)
        code = main(["solve", str(path), "--mode", "alternating"])
        assert code == 2


class TestEnumerate:
    def test_members_listed(self, capsys, saved_instance):
        code, out = run(capsys, "enumerate", saved_instance, "--epsilon", "1")
        assert code == 0
        assert "set-size:" in out

    def test_require_nonempty(self, capsys, tmp_path):
        # line points 0, 10 (A) and 4, 6 (B): every displacement is 6 while
        # d(A,B) = 4, so the exact proximity set is empty
        import numpy as np

        coords = np.array([[0.0], [10.0], [4.0], [6.0]])
        from scipy.spatial.distance import cdist

        inst = gp.Instance(
            "hollow", gp.TabulatedSpace(cdist(coords, coords)),
            gp.SubsetPair(a=(0, 1), b=(2, 3)), gp.complete_graph(),
            cyclic_map=gp.CyclicMap("swap-far", table=(3, 2, 1, 0)))
        path = tmp_path / "hollow.gpx"
        gp.save_instance(inst, path)
        code, out = run(capsys, "enumerate", str(path), "--epsilon", "0",
                        "--require-nonempty")
        assert code == 1
        assert "set-size: 0" in out


class TestDemo:
    def test_interval_exact_set(self, capsys):
        code, out = run(capsys, "demo", "interval", "--grid-step", "0.1")
        assert code == 0
        assert "member: (-1.0)" in out
        assert "member: (1.0)" in out
        assert "set-diameter: 2.0" in out

    def test_unknown_demo(self, capsys):
        assert main(["demo", "torus"]) == 2


class TestDeterminism:
    def _capture(self, argv):
        proc = subprocess.run([sys.executable, "-m", "gproximity"] + argv,
                              capture_output=True, text=True, check=False)
        return proc.stdout

    def test_repeat_runs_byte_identical(self, saved_instance):
        argv = ["classify", saved_instance]
        assert self._capture(argv) == self._capture(argv)

    def test_timing_goes_to_stderr(self, saved_instance):
        proc = subprocess.run([sys.executable, "-m", "gproximity",
                               "validate", saved_instance],
                              capture_output=True, text=True, check=False)
        assert "elapsed-seconds" in proc.stderr
        assert "elapsed-seconds" not in proc.stdout
