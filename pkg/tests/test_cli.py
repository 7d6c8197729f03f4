"""Command line interface, driven in process through main()."""

import io
import json
import types

import numpy as np

from vnet import cli
from vnet.discrepancy import average_bound, r_q
from vnet.fields import FieldTower
from vnet.nets import generate_points, read_points, vandermonde_net
from vnet.quality import corollary_floor, delta_q, existence_sigma
from vnet.search import cbc_search, explicit_alpha, theorem_bound


def _run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def _strip_ts(text):
    return "\n".join(
        ln for ln in text.splitlines() if '"generated_at"' not in ln
    )


def test_construct_explicit(capsys):
    code, out, err = _run(
        capsys, "construct", "--q", "3", "--m", "2", "--s", "4", "--explicit"
    )
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["command"] == "construct"
    assert rep["t"] == 0 and rep["rho"] == 2
    assert rep["construction"] == "explicit"
    assert len(rep["alpha"]) == 4
    assert "generated_at" in rep


def test_construct_alpha_and_points(capsys, tmp_path):
    pf = str(tmp_path / "pts.csv")
    code, out, _ = _run(
        capsys,
        "construct", "--q", "2", "--m", "2", "--alpha", "2,2",
        "--points", pf,
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["t"] == 0 and rep["s"] == 2
    assert rep["n_points"] == 4 and rep["points_file"] == pf
    pts = read_points(pf)
    assert pts.numerators.shape == (4, 2)


def test_points_roundtrip_stdout(capsys):
    code, out, _ = _run(
        capsys, "points", "--q", "2", "--m", "3", "--s", "3", "--explicit"
    )
    assert code == 0
    got = read_points(io.StringIO(out))
    ref = generate_points(vandermonde_net(explicit_alpha(2, 3, 3)))
    assert got.q == 2 and got.m == 3 and got.s == 3
    assert np.array_equal(got.numerators, ref.numerators)


def test_analyze_matches_library(capsys):
    code, out, _ = _run(
        capsys,
        "analyze", "--q", "2", "--m", "3", "--s", "2", "--explicit", "--dstar",
    )
    assert code == 0
    rep = json.loads(out)
    alpha = explicit_alpha(2, 3, 2)
    ws = r_q(alpha)
    assert abs(rep["discrepancy"]["r_q"] - ws.value) <= 1e-15
    assert rep["discrepancy"]["term_count"] == ws.term_count
    assert rep["discrepancy"]["avg_bound"] == average_bound(2, 3, 2)
    assert rep["t"] == 0 and rep["rho"] == 3
    assert rep["checks"]["equidist"] is True
    assert rep["checks"]["d_star_le_bound"] is True
    num, den = rep["discrepancy"]["d_star"].split("/")
    assert int(num) / int(den) <= rep["discrepancy"]["disc_bound"]
    assert rep["caps_hit"] == []


def test_analyze_witness_for_positive_t(capsys):
    # alpha = (1, 1): both components the multiplicative identity
    code, out, _ = _run(
        capsys, "analyze", "--q", "2", "--m", "2", "--alpha", "1,1"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["t"] == 1 and rep["rho"] == 1
    assert rep["witness"] is not None and len(rep["witness"]) == 2
    assert rep["rho_method"] == "d_prime_enum"


def test_analyze_partial_on_cap(capsys):
    # tiny point cap: equidist skipped, kernel work still done
    code, out, _ = _run(
        capsys,
        "analyze", "--q", "2", "--m", "3", "--s", "2", "--explicit",
        "--cap-points", "4",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["caps_hit"] == ["points"]
    assert rep["checks"]["equidist"] is None
    assert rep["discrepancy"]["r_q"] is not None


def test_analyze_strict_passes(capsys):
    code, out, _ = _run(
        capsys,
        "analyze", "--q", "2", "--m", "3", "--s", "2", "--explicit",
        "--dstar", "--strict",
    )
    assert code == 0


def test_cbc_report(capsys):
    code, out, _ = _run(capsys, "cbc", "--q", "2", "--m", "3", "--s", "3")
    assert code == 0
    rep = json.loads(out)
    res = cbc_search(2, 3, 3)
    assert rep["alpha"] == list(res.alpha.encodings())
    assert rep["per_dim_rq"] == [w.value for w in res.per_dim_rq]
    assert rep["term_counts"] == [w.term_count for w in res.per_dim_rq]
    assert rep["bounds"] == [theorem_bound(2, 3, d) for d in (1, 2, 3)]
    assert rep["bound_ok"] == [True, True, True]
    assert rep["seed"] == "irreducible"
    assert rep["ties_broken"] == res.ties_broken


def test_cbc_explicit_seed(capsys):
    code, out, _ = _run(
        capsys, "cbc", "--q", "2", "--m", "2", "--s", "4", "--seed", "explicit"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["seed"] == "explicit"
    assert len(rep["alpha"]) == 4


def test_bounds_csv(capsys):
    code, out, _ = _run(
        capsys,
        "bounds", "--q", "2,3", "--m-range", "1:4", "--s-range", "1:3",
        "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    assert header[:4] == ["q", "m", "s", "sigma"]
    assert len(lines) == 1 + 2 * 4 * 3
    for ln in lines[1:]:
        vals = dict(zip(header, ln.split(",")))
        q, m, s = int(vals["q"]), int(vals["m"]), int(vals["s"])
        sigma = existence_sigma(q, s, m)
        assert int(vals["sigma"]) == sigma
        if sigma >= 1:
            assert int(vals["delta"]) == delta_q(q, s, sigma)
        else:
            assert vals["delta"] == ""
        assert int(vals["floor"]) == corollary_floor(q, s, m)
        assert int(vals["t_guarantee"]) == m - sigma
        assert float(vals["avg_bound"]) == average_bound(q, m, s)


def test_bounds_json_nonprime_q(capsys):
    code, out, _ = _run(
        capsys, "bounds", "--q", "4", "--m-range", "2:2", "--s-range", "2:2"
    )
    assert code == 0
    rep = json.loads(out)
    row = rep["rows"][0]
    assert row["avg_bound"] is None
    assert row["sigma"] == existence_sigma(4, 2, 2)


def test_general_construction(capsys):
    # reducible modulus x^2 + 1 over F_2 is allowed on the general route
    code, out, _ = _run(
        capsys,
        "analyze", "--q", "2", "--m", "2", "--general",
        "--modulus", "1,0,1", "--g", "0,1", "--g", "1,1",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["construction"] == "general"
    assert rep["rho"] is None and rep["alpha"] is None
    assert rep["t"] in range(0, 3)
    assert rep["discrepancy"]["r_q"] is not None


def test_out_file(capsys, tmp_path):
    path = str(tmp_path / "rep.json")
    code, out, _ = _run(
        capsys,
        "construct", "--q", "2", "--m", "3", "--s", "2", "--explicit",
        "--out", path,
    )
    assert code == 0 and out == ""
    with open(path, encoding="utf-8") as fh:
        rep = json.load(fh)
    assert rep["t"] == 0


def test_determinism_across_runs_and_threads(capsys):
    argsets = [
        ("construct", "--q", "3", "--m", "2", "--s", "4", "--explicit"),
        ("analyze", "--q", "2", "--m", "3", "--s", "2", "--explicit", "--dstar"),
        ("cbc", "--q", "2", "--m", "3", "--s", "3"),
        ("points", "--q", "2", "--m", "3", "--s", "3", "--explicit"),
        ("bounds", "--q", "2,3", "--m-range", "1:3", "--s-range", "1:2",
         "--format", "csv"),
    ]
    for argv in argsets:
        outs = set()
        for threads in ("1", "8"):
            code, out, _ = _run(capsys, *argv, "--threads", threads)
            assert code == 0
            outs.add(_strip_ts(out))
        assert len(outs) == 1


def test_exit_usage_errors(capsys):
    # 6 is not a prime power
    code, _, err = _run(capsys, "construct", "--q", "6", "--m", "2", "--s", "2",
                        "--explicit")
    assert code == 2 and err != ""
    # cbc needs prime q
    code, _, _ = _run(capsys, "cbc", "--q", "4", "--m", "2", "--s", "2")
    assert code == 2
    # zero sources picked
    code, _, _ = _run(capsys, "analyze", "--q", "2", "--m", "2", "--s", "2")
    assert code == 2
    # two sources picked
    code, _, _ = _run(capsys, "analyze", "--q", "2", "--m", "2", "--s", "2",
                      "--explicit", "--alpha", "1,1")
    assert code == 2
    # bad thread count
    code, _, _ = _run(capsys, "points", "--q", "2", "--m", "2", "--s", "2",
                      "--explicit", "--threads", "0")
    assert code == 2
    # s mismatch against alpha length
    code, _, _ = _run(capsys, "construct", "--q", "2", "--m", "2", "--s", "3",
                      "--alpha", "1,1")
    assert code == 2
    # argparse rejects unknown subcommand with its own exit code 2
    code, _, _ = _run(capsys, "frobnicate")
    assert code == 2


def test_exit_cap(capsys):
    code, _, err = _run(
        capsys,
        "points", "--q", "2", "--m", "3", "--s", "2", "--explicit",
        "--cap-points", "4",
    )
    assert code == 3 and "cap" in err


def test_exit_internal_assertion(capsys, monkeypatch):
    fake = types.SimpleNamespace(t=99, rho=0, method="d_prime_enum", witness=None)
    monkeypatch.setattr(cli, "merit_dual_enum", lambda *a, **k: fake)
    code, _, err = _run(
        capsys, "analyze", "--q", "2", "--m", "2", "--alpha", "2,2"
    )
    assert code == 4 and "assertion" in err


def test_version_flag(capsys):
    code, out, _ = _run(capsys, "--version")
    assert code == 0
    assert out.startswith("vnet ")


def test_custom_modulus_flag(capsys):
    # same tower the library builds by hand
    code, out, _ = _run(
        capsys,
        "construct", "--q", "2", "--m", "3", "--s", "2", "--explicit",
        "--modulus", "1,1,0,1",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["f"] == [1, 1, 0, 1]
    tw = FieldTower(2, 1, 3, f=(1, 1, 0, 1))
    assert rep["alpha"] == list(explicit_alpha(2, 3, 2, tw).encodings())
