import json
import multiprocessing as mp
from fractions import Fraction

import numpy as np
import pytest

from ampsum import __version__
from ampsum.errors import CacheCorrupt, ConfigError
from ampsum.harness import Cache, body_bytes, load_config, make_config, run_suite, summary_text, to_csv
from ampsum.harness.cli import main
from ampsum.harness.report import _clean
from ampsum.harness.suites import CHECKS, FAIL, PLANNERS, Outcome, Task, run_task


# -- config -----------------------------------------------------------------------------

def test_unknown_top_level_key(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"suite": "nu", "speed": 3}))
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_unknown_grid_key():
    with pytest.raises(ConfigError):
        make_config("nu", grid={"n_maxx": 3})


@pytest.mark.parametrize("grid", [{"n_max": 10**9}, {"n_max": 2.5}, {"n_max": 0}])
def test_table_limits(grid):
    with pytest.raises(ConfigError):
        make_config("nu", grid=grid)


def test_bad_values():
    with pytest.raises(ConfigError):
        make_config("poisson", grid={"tol": -1})
    with pytest.raises(ConfigError):
        make_config("nope")
    with pytest.raises(ConfigError):
        make_config("nu", workers=0)


def test_malformed_json(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_profiles_and_overrides(tmp_path):
    assert make_config("all").profile == "smoke"
    assert make_config("nu").grid["n_max"] == 500
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"suite": "nu", "grid": {"n_max": 99}, "seed": 3}))
    cfg = load_config(str(p), seed=5)
    assert cfg.grid["n_max"] == 99 and cfg.seed == 5


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("AMPSUM_CACHE_DIR", str(tmp_path))
    assert make_config("nu").cache_dir == str(tmp_path)


# -- cache ------------------------------------------------------------------------------

KEY = ("L", 7, 2, [0.5, 0.0, "smoothed_sum"])


def test_cache_roundtrip(tmp_path):
    c = Cache(tmp_path)
    assert c.get(KEY) is None
    c.put(KEY, {"value": [1.5, -2.0]})
    assert c.get(KEY) == {"value": [1.5, -2.0]}
    calls = []
    assert c.get_or_compute(KEY, lambda: calls.append(1)) == {"value": [1.5, -2.0]}
    assert not calls


def test_cache_version_bump_invalidates(tmp_path):
    Cache(tmp_path, version="1").put(KEY, 1)
    assert Cache(tmp_path, version="2").get(KEY) is None
    assert Cache(tmp_path, version="1").get(KEY) == 1


def test_cache_corrupt_record_recomputed(tmp_path):
    c = Cache(tmp_path)
    path = c.put(KEY, {"v": 1})
    path.write_text(path.read_text().replace('"v":1', '"v":2'))
    with pytest.raises(CacheCorrupt):
        c.get(KEY)
    assert c.get_or_compute(KEY, lambda: {"v": 3}) == {"v": 3}
    assert c.get(KEY) == {"v": 3}
    path.write_text("garbage")
    with pytest.raises(CacheCorrupt):
        c.get(KEY)


def _writer(root, n):
    c = Cache(root)
    for i in range(n):
        c.put(KEY, {"i": i, "pad": "x" * 5000})


def test_cache_concurrent_readers_see_complete_records(tmp_path):
    c = Cache(tmp_path)
    c.put(KEY, {"i": -1, "pad": "x" * 5000})
    procs = [mp.get_context("fork").Process(target=_writer, args=(str(tmp_path), 200)) for _ in range(2)]
    for p in procs:
        p.start()
    seen = 0
    while any(p.is_alive() for p in procs):
        rec = c.get(KEY)   # raises CacheCorrupt on a torn read
        assert rec["pad"] == "x" * 5000
        seen += 1
    for p in procs:
        p.join()
        assert p.exitcode == 0
    assert seen > 0 and c.get(KEY)["i"] == 199


# -- suites and reports ------------------------------------------------------------------

def test_every_suite_has_a_planner():
    from ampsum.harness.config import SUITES
    assert set(SUITES) == set(PLANNERS)


def test_module_errors_are_captured():
    CHECKS["_boom"] = lambda p, ctx: (_ for _ in ()).throw(ZeroDivisionError("x"))
    rec, _ = run_task(Task("nu", "boom", "_boom", {}), None)
    assert rec["status"] == FAIL and "ZeroDivisionError" in rec["details"]["error"]
    del CHECKS["_boom"]


def test_clean():
    out = _clean({"a": 1 + 2j, "b": Fraction(1, 3), "c": np.float64("inf"), "d": np.arange(2), "e": (np.bool_(True),)})
    assert out == {"a": [1.0, 2.0], "b": "1/3", "c": "inf", "d": [0, 1], "e": [True]}
    json.dumps(out)


def test_report_shape_and_determinism(tmp_path):
    cfg = make_config("nu", profile="smoke", seed=3, cache_dir=str(tmp_path))
    a, b = run_suite(cfg), run_suite(make_config("nu", profile="smoke", seed=3, cache_dir=str(tmp_path), workers=2))
    assert body_bytes(a) == body_bytes(b)
    body = a["body"]
    assert body["version"] == __version__ and body["config"]["seed"] == 3
    assert body["summary"]["failures"] == 0 and body["summary"]["checks"] == len(body["records"])
    assert set(body["records"][0]) == {"suite", "id", "params", "status", "residual", "details"}
    assert len(a["meta"]["runtimes"]) == len(body["records"])
    assert to_csv(a).splitlines()[0].startswith("suite,id,status")
    assert "passed" in summary_text(a)


def test_seed_changes_phase_samples(tmp_path):
    a = run_suite(make_config("phase", profile="smoke", seed=1, cache_dir=str(tmp_path)))
    b = run_suite(make_config("phase", profile="smoke", seed=2, cache_dir=str(tmp_path)))
    assert a["body"]["summary"]["failures"] == 0
    assert body_bytes(a) != body_bytes(b)


# -- CLI ----------------------------------------------------------------------------------

def test_cli_exit_codes(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AMPSUM_CACHE_DIR", str(tmp_path / "cache"))
    out = tmp_path / "r.json"
    assert main(["verify", "nu", "--profile", "smoke", "--out", str(out)]) == 0
    assert main(["report", "--in", str(out), "--summary"]) == 0
    assert "checks" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"suite": "nu", "grid": {"zzz": 1}}))
    assert main(["verify", "nu", "--config", str(bad), "--out", str(tmp_path / "x.json")]) == 2
    assert not (tmp_path / "x.json").exists()
    assert main(["report", "--in", str(tmp_path / "missing.json")]) == 2
    # the weighted a.d cancellation is a known failure, so the euler suite exits 1
    assert main(["verify", "euler", "--profile", "smoke", "--format", "csv", "--out", str(tmp_path / "e.csv")]) == 1
    assert "ad_cancel" in (tmp_path / "e.csv").read_text()


def test_cli_scan(capsys):
    assert main(["scan", "convexity", "--q-max", "60"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "report-only" and data["moduli"] > 5


# -- kernels: loop and numpy forms agree ---------------------------------------------------

def test_kernel_backends_agree():
    from ampsum import kernels
    from ampsum.arith import char_group

    chi = char_group(9)[2]
    vals = chi.value_table.astype(np.complex128)
    roots = np.exp(2j * np.pi * np.arange(45) / 45)
    assert abs(kernels.kloosterman_loop(vals, 9, 2, 7, 45, roots) - kernels._kloosterman_vec(vals, 9, 2, 7, 45, roots)) < 1e-10
    rows = [np.array(v, dtype=np.int64) for v in ([1, 3, 7], [1, 2, 3], [1, 5, -2])]
    assert np.array_equal(kernels.nu_counts_loop(105, *rows), kernels._nu_counts_vec(105, *rows))
    assert kernels.x_count_brute_loop(12, 18, 6) == kernels._x_count_brute_vec(12, 18, 6)
    ls = np.arange(-3, 4, dtype=np.int64)
    assert tuple(kernels.bijection_triple_loop(12, 18, 6, ls, ls)) == tuple(kernels._bijection_triple_vec(12, 18, 6, ls, ls))
