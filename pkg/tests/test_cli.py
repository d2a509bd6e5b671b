import subprocess
import sys
from pathlib import Path

from fractalframes.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ifs_info(capsys):
    code, out, _ = run(capsys, "ifs", "info", "--config", str(CONFIGS / "cantor3.cfg"))
    assert code == 0
    assert "N: 2" in out and "rho: 3.0" in out
    assert "hausdorff_dim: 0.6309297535714574" in out
    assert out.startswith("# run ifs-info fractalframes-0.1.0 config-")


def test_ifs_atoms_csv(capsys):
    code, out, _ = run(capsys, "ifs", "atoms", "--matrix", "3", "--digits", "0,2", "--level", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "index,x0,weight,first_digit"
    assert len(lines) == 5 and lines[1] == "0,0.0,0.25,0"


def test_ft_eval_columns(capsys):
    code, out, _ = run(capsys, "ft", "eval", "--matrix", "3", "--digits", "0,2", "--x", "1", "--x", "0.75")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x0,re,im,abs,terms_used,tail_bound"
    assert len(lines) == 3
    # 3/4 = 3 (2 * 0 + 1) / (2 * 2) is the first zero of the Cantor transform
    assert float(lines[2].split(",")[3]) <= 1e-10


def test_spectrum_gen(capsys):
    code, out, _ = run(capsys, "spectrum", "gen", "--config", str(CONFIGS / "jp.cfg"),
                       "--spectrum-level", "2", "--scale", "5")
    assert code == 0 and out.splitlines() == ["x0", "0.0", "5.0", "20.0", "25.0"]


def test_density_csv(capsys):
    code, out, err = run(capsys, "density", "--config", str(CONFIGS / "jp.cfg"),
                         "--spectrum-level", "10", "--r", "0.5")
    assert code == 0
    assert out.splitlines()[0] == "h,max_count,center,D_r"
    assert "fitted_dim=" in err and "D_r_at_hausdorff_dim=" in err


def test_density_points_file(capsys, tmp_path):
    pts = tmp_path / "z.csv"
    pts.write_text("x0\n" + "\n".join(str(float(i)) for i in range(1001)) + "\n")
    code, out, err = run(capsys, "density", "--points", str(pts), "--r", "1", "--format", "text")
    assert code == 0 and "[table]" in out and "fitted_dim:" in out


def test_frames_bounds_and_band(capsys):
    code, out, _ = run(capsys, "frames", "bounds", "--config", str(CONFIGS / "jp.cfg"), "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "lower,upper,level,size,method"
    code, out, _ = run(capsys, "frames", "bounds", "--config", str(CONFIGS / "jp.cfg"),
                       "--band", "0.999999,1.000001")
    assert code == 0 and "PASS bound[0]" in out
    code, out, _ = run(capsys, "frames", "bounds", "--config", str(CONFIGS / "jp.cfg"), "--band", "0.5,0.9")
    assert code == 2 and "FAIL bound[1]" in out


def test_frames_two_d(capsys):
    code, out, _ = run(capsys, "frames", "bounds", "--config", str(CONFIGS / "sierpinski_like.cfg"),
                       "--band", "0.999999,1.000001")
    assert code == 0


def test_frames_oversample_and_probe(capsys):
    code, out, _ = run(capsys, "frames", "oversample", "--config", str(CONFIGS / "jp.cfg"),
                       "--spectrum-level", "12", "--x", "0.3", "--band", "0.9,1.000001")
    assert code == 0 and out.splitlines()[0] == "x0,value"
    code, out, _ = run(capsys, "frames", "probe", "--K", "4")
    assert code == 0 and out.splitlines()[0] == "n,x,term"


def test_usage_errors(capsys):
    assert run(capsys, "nope")[0] == 1
    assert run(capsys, "ft", "eval", "--matrix", "3", "--digits", "0,2")[0] == 1
    code, _, err = run(capsys, "ifs", "info", "--config", "/no/such/file.cfg")
    assert code == 1 and "file not found" in err
    code, _, err = run(capsys, "ifs", "info", "--matrix", "1/2", "--digits", "0,1")
    assert code == 1 and "error:" in err


def test_schema_error_prints_schema(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("matrix = 3\ncolour = red\n")
    code, _, err = run(capsys, "ifs", "info", "--config", str(bad))
    assert code == 1 and "spectrum.points" in err


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--budget", "desk")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 10


def test_byte_identical_reruns(tmp_path):
    outs = []
    target = tmp_path / "run.txt"
    for _ in range(2):
        subprocess.run([sys.executable, "-m", "fractalframes", "density", "--config",
                        str(CONFIGS / "jp.cfg"), "--format", "text", "--output", str(target)],
                       check=True, capture_output=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] and outs[0].startswith(b"# run density")
