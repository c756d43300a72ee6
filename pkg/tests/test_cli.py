import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from freelevy.cli import main

FREE_POISSON = '{"a":0,"eta":1,"nu":{"kind":"atoms","atoms":[[1,1]]}}'


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_free_gamma_density_row(capsys):
    status, out, _ = run(capsys, "density", "--catalog", "free_gamma", "--params", "t=1,c=1", "--range", "0:6", "--n", "601")
    assert status == 0
    table = rows(out)
    assert len(table) == 601 and list(table[0]) == ["x", "f"]
    x = np.array([float(r["x"]) for r in table])
    f = np.array([float(r["f"]) for r in table])
    i = int(np.argmin(np.abs(x - 1)))
    assert f[i] == pytest.approx(1 / np.pi, abs=1e-6)
    assert "\r" not in out


def test_bdlp_with_levy_table(capsys, tmp_path):
    levy = tmp_path / "levy.csv"
    status, out, _ = run(
        capsys, "bdlp", "--catalog", "free_gamma", "--params", "t=1,c=1", "--emit-levy", "--levy-range", "0.1:3.9", "--levy-out", str(levy)
    )
    assert status == 0
    report = json.loads(out)
    assert report["cumulant_tag"] == "z/sqrt(1-4z)"
    table = rows(levy.read_text())
    x = np.array([float(r["x"]) for r in table])
    d = np.array([float(r["density"]) for r in table])
    np.testing.assert_allclose(d, 1 / (np.pi * x * np.sqrt(x * (4 - x))), rtol=1e-6)


@pytest.mark.parametrize("method", ["auto", "A", "B", "both"])
def test_sd_test_on_atomic_triplet(capsys, method):
    status, out, _ = run(capsys, "sd-test", "--triplet", FREE_POISSON, "--method", method)
    assert status == 0
    assert json.loads(out)["is_sd"] is False


def test_sd_test_on_free_gamma(capsys):
    status, out, _ = run(capsys, "sd-test", "--catalog", "free_gamma", "--method", "both")
    assert status == 0 and json.loads(out)["is_sd"] is True


def test_cumulant_csv(capsys):
    status, out, _ = run(capsys, "cumulant", "--catalog", "semicircle", "--points=-1j;0.5-2j")
    assert status == 0
    table = rows(out)
    assert list(table[0]) == ["re_z", "im_z", "re_C", "im_C"]
    got = [complex(float(r["re_C"]), float(r["im_C"])) for r in table]
    np.testing.assert_allclose(got, np.array([-1j, 0.5 - 2j]) ** 2, atol=1e-14)


def test_cumulant_reference_grid(capsys):
    status, out, _ = run(capsys, "cumulant", "--catalog", "mu_p", "--points", "reference")
    assert status == 0 and len(rows(out)) == 25


def test_convolve_and_dilate(capsys):
    status, out, _ = run(capsys, "convolve", "--catalog", "semicircle", "--with", "semicircle")
    assert status == 0
    assert json.loads(out)["triplet"]["a"] == 2.0
    status, out, _ = run(capsys, "dilate", "--catalog", "semicircle", "--c", "2")
    assert status == 0
    assert json.loads(out)["triplet"]["a"] == 4.0


@pytest.mark.parametrize("extra", [[], ["--inverse"]])
def test_bp_preserves_the_triplet(capsys, extra):
    status, out, _ = run(capsys, "bp", "--triplet", FREE_POISSON, *extra)
    assert status == 0
    t = json.loads(out)["triplet"]
    assert t["eta"] == 1.0 and t["a"] == 0.0


def test_marginal_and_increment(capsys):
    status, out, _ = run(capsys, "marginal", "--catalog", "semicircle", "--H", "0.5", "--t", "4")
    assert status == 0
    assert json.loads(out)["triplet"]["a"] == pytest.approx(4.0)
    status, out, _ = run(capsys, "increment", "--catalog", "semicircle", "--H", "0.5", "--s", "1", "--t", "4")
    assert status == 0
    cum = json.loads(out)["cumulant_on_reference_grid"]
    z = np.array(cum["re_z"]) + 1j * np.array(cum["im_z"])
    np.testing.assert_allclose(np.array(cum["re_C"]) + 1j * np.array(cum["im_C"]), 3 * z * z, atol=1e-13)


@pytest.mark.parametrize(
    "argv",
    [
        ["integrate", "--catalog", "free_gamma", "--H", "1", "--f", "power(-1)", "--interval", "1:2.718281828459045"],
        ["integrate", "--catalog", "free_gamma", "--process", "levy", "--f", "exp(-1)", "--interval", "0:inf"],
    ],
)
def test_integrate(capsys, argv):
    status, out, _ = run(capsys, *argv)
    assert status == 0
    assert "cumulant" in json.loads(out)


def test_rmt_writes_spectra_and_report(capsys, tmp_path):
    status, out, _ = run(capsys, "rmt", "--model", "gaussian_hermitian", "--n", "200", "--seeds", "0:3", "--out-dir", str(tmp_path))
    assert status == 0
    report = json.loads(out)
    assert len(report["ks"]) == 3
    files = sorted(tmp_path.glob("*.csv"))
    assert len(files) == 3
    assert files[0].read_text().splitlines()[1] == "value"


def test_verify_subset(capsys):
    status, out, _ = run(capsys, "verify", "--only", "7,9")
    assert status == 0
    assert out.count("PASS") == 2


@pytest.mark.parametrize(
    "argv, code",
    [
        (["density", "--catalog", "nope"], 1),
        (["density"], 1),
        (["density", "--catalog", "semicircle", "--triplet", FREE_POISSON], 1),
        (["cumulant", "--catalog", "semicircle", "--points", "1j"], 2),
        (["sd-test", "--triplet", "{not json"], 1),
        (["bdlp", "--catalog", "free_poisson"], 2),
        (["marginal", "--catalog", "free_poisson", "--H", "1", "--t", "2"], 2),
        (["density", "--catalog", "mu_p", "--params", "p=-0.5"], 2),
        (["integrate", "--catalog", "free_gamma", "--f", "power(-1)", "--interval", "1:50", "--tol", "1e-14", "--max-depth", "3"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    status, _, err = run(capsys, *argv)
    assert status == code
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "freelevy", "cumulant", "--catalog", "delta", "--params", "c=3", "--points=-0.5j"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    row = rows(proc.stdout)[0]
    assert complex(float(row["re_C"]), float(row["im_C"])) == pytest.approx(-1.5j)
