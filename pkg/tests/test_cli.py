import csv

import numpy as np
import pytest

from mprod import Tensor3, build_jl_map, pseudo_svd_truncated
from mprod.cli import main
from mprod.files import save_cube, snapshot_rgb, write_ppm


@pytest.fixture
def cube_path(tmp_path):
    rng = np.random.default_rng(0)
    path = tmp_path / "cube.tcube"
    save_cube(path, Tensor3(rng.standard_normal((9, 8, 6))))
    return path


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_compress_identity_full_rank_is_exact(cube_path, tmp_path):
    out = tmp_path / "report.csv"
    code = main(
        [
            "compress",
            "--input", str(cube_path),
            "--map", "identity",
            "--k", "8",
            "--s", "1,3,6",
            "--out", str(out),
        ]
    )
    assert code == 0
    rows = read_rows(out)
    assert [r["s"] for r in rows] == ["1", "3", "6"]
    assert all(float(r["re"]) <= 1e-12 for r in rows)
    assert all(r["map"] == "identity" for r in rows)
    assert (tmp_path / "report.png").exists()


def test_compress_jl_monotone_and_deterministic(cube_path, tmp_path):
    args = [
        "compress",
        "--input", str(cube_path),
        "--map", "jl",
        "--k", "1,4,8",
        "--s", "6",
        "--seed", "5",
        "--no-plot",
    ]
    out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    rows1, rows2 = read_rows(out1), read_rows(out2)
    res = [float(r["re"]) for r in rows1]
    assert res == sorted(res, reverse=True)
    assert not (tmp_path / "r1.png").exists()
    # deterministic apart from the timing column
    strip = lambda rows: [
        {k: v for k, v in row.items() if k != "seconds"} for row in rows
    ]
    assert strip(rows1) == strip(rows2)
    assert all(r["seed"] == "5" for r in rows1)


def test_compress_map_from_file(cube_path, tmp_path):
    map_path = tmp_path / "map.tcube"
    save_cube(map_path, Tensor3.from_slices([np.eye(6)]))
    out = tmp_path / "file_map.csv"
    code = main(
        [
            "compress",
            "--input", str(cube_path),
            "--map", f"file:{map_path}",
            "--k", "8",
            "--out", str(out),
            "--no-plot",
        ]
    )
    assert code == 0
    assert float(read_rows(out)[0]["re"]) <= 1e-12


def test_seed_env_fallback_and_flag_priority(cube_path, tmp_path, monkeypatch):
    monkeypatch.setenv("MPROD_SEED", "9")
    out_env = tmp_path / "env.csv"
    main(["compress", "--input", str(cube_path), "--map", "jl", "--k", "2",
          "--out", str(out_env), "--no-plot"])
    assert read_rows(out_env)[0]["seed"] == "9"

    out_flag = tmp_path / "flag.csv"
    main(["compress", "--input", str(cube_path), "--map", "jl", "--k", "2",
          "--seed", "4", "--out", str(out_flag), "--no-plot"])
    assert read_rows(out_flag)[0]["seed"] == "4"

    monkeypatch.setenv("MPROD_SEED", "not-a-number")
    assert main(["compress", "--input", str(cube_path), "--map", "jl", "--k", "2",
                 "--out", str(tmp_path / "bad.csv"), "--no-plot"]) == 2


def test_snapshot_full_rank_matches_original(cube_path, tmp_path):
    out = tmp_path / "snap.ppm"
    code = main(
        [
            "snapshot",
            "--input", str(cube_path),
            "--map", "jl",
            "--k", "8",
            "--channels", "5,3,1",
            "--seed", "2",
            "--out", str(out),
        ]
    )
    assert code == 0
    # writing the original cube's snapshot directly gives identical bytes
    rng = np.random.default_rng(0)
    cube = Tensor3(rng.standard_normal((9, 8, 6)))
    rec = pseudo_svd_truncated(cube, build_jl_map(6, 2), 8)
    ref = tmp_path / "ref.ppm"
    write_ppm(ref, snapshot_rgb(cube, (5, 3, 1)))
    got = tmp_path / "got.ppm"
    write_ppm(got, snapshot_rgb(rec, (5, 3, 1)))
    assert out.read_bytes() == got.read_bytes() == ref.read_bytes()


def test_snapshot_default_channels():
    from mprod.cli import build_parser

    args = build_parser().parse_args(
        ["snapshot", "--input", "x.tcube", "--k", "1", "--out", "y.ppm"]
    )
    assert args.channels == "26,16,8"


def test_snapshot_bad_channel(cube_path, tmp_path):
    code = main(
        [
            "snapshot",
            "--input", str(cube_path),
            "--map", "identity",
            "--k", "2",
            "--channels", "26,16,8",
            "--out", str(tmp_path / "x.ppm"),
        ]
    )
    assert code == 2  # channel 26 exceeds p = 6


def test_verify_passes():
    assert main(["verify"]) == 0


def test_verify_reports_failures_with_impossible_tolerance(capsys):
    code = main(["verify", "--tolerance", "1e-30"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_bench_smoke(tmp_path):
    out = tmp_path / "bench.csv"
    code = main(
        ["bench", "--sizes", "16,32", "--repeats", "2", "--out", str(out)]
    )
    assert code == 0
    rows = read_rows(out)
    assert {r["algo"] for r in rows} == {"naive", "strassen"}
    assert (tmp_path / "bench.png").exists()


def test_bench_rejects_non_power_sizes():
    assert main(["bench", "--sizes", "10,20", "--repeats", "1"]) == 2


def test_info(cube_path, capsys):
    assert main(["info", "--input", str(cube_path)]) == 0
    out = capsys.readouterr().out
    assert "9 x 8 x 6" in out


def test_unknown_map_flag(cube_path, tmp_path):
    code = main(
        ["compress", "--input", str(cube_path), "--map", "dft", "--k", "1",
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2


def test_bad_k_list(cube_path, tmp_path):
    code = main(
        ["compress", "--input", str(cube_path), "--map", "identity", "--k", "1,two",
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2
