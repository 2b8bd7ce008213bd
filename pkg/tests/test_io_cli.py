import json
import subprocess
import sys

import pytest

from skewbrack.cyclo import CycNum
from skewbrack.cochain import Cochain
from skewbrack.io import (
    ParseError,
    cochain_to_json,
    format_cyc,
    load_cochain,
    load_group,
    parse_cyc,
    parse_poly,
)
from skewbrack.poly import Poly
from skewbrack.verify import random_cochain

D8_JSON = {
    "conductor": 4,
    "dim": 3,
    "generators": [
        [["0", "z", "0"], ["z", "0", "0"], ["0", "0", "1"]],
        [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]],
    ],
    "names": ["g", "h"],
}


def test_parse_cyc_round_trip():
    for text in ("1/2*z^3 - 2", "z", "-z^2 + 3", "0", "5/7", "2*z + 1/3"):
        val = parse_cyc(text, 8)
        again = parse_cyc(format_cyc(val), 8)
        assert val == again
    assert parse_cyc("z^2", 4) == CycNum.rational(-1)
    with pytest.raises(ParseError):
        parse_cyc("z +", 4)
    with pytest.raises(ParseError):
        parse_cyc("1/0", 4)


def test_parse_poly():
    f, kind = parse_poly("1/2*x1^2*x2 - x3", 3, 4)
    assert kind == "x"
    assert f.terms[(2, 1, 0)] == CycNum.rational(1, 4) / CycNum.rational(2, 4)
    assert f.terms[(0, 0, 1)] == CycNum.rational(-1, 4)
    g, kind = parse_poly("(z - 1)*w1*w2", 3, 4)
    assert kind == "w"
    assert g.terms[(1, 1, 0)] == CycNum.zeta(4) - CycNum.rational(1, 4)
    with pytest.raises(ParseError):
        parse_poly("x1*w2", 3, 4)
    with pytest.raises(ParseError):
        parse_poly("x9", 3, 4)


def test_load_group_and_errors(tmp_path):
    group = load_group(D8_JSON)
    assert group.order == 8
    with pytest.raises(ParseError):
        load_group({"dim": 3, "generators": []})
    bad = dict(D8_JSON)
    bad["generators"] = [[["1", "0"], ["0", "1"], ["0", "0"]]]
    with pytest.raises(ParseError):
        load_group(bad)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(D8_JSON))
    assert load_group(str(path)).order == 8


def test_cochain_round_trip(d8):
    import random

    rng = random.Random(3)
    for _ in range(10):
        c = random_cochain(d8, rng, 2, 3)
        data = cochain_to_json(d8, c)
        back = load_cochain(data, d8)
        assert back == c.to_std(d8)
        # serialization is deterministic
        assert json.dumps(cochain_to_json(d8, back)) == json.dumps(data)


def test_cochain_eigen_input(d8):
    rec = [
        {
            "support": "g",
            "poly": "w3",
            "wedge": [1, 2],
            "poly_basis": "eigen",
            "wedge_basis": "eigen",
        }
    ]
    c = load_cochain(rec, d8)
    gi = d8.generators[0]
    ed = d8.frame.base[gi]
    want = Cochain.build(
        3, 2, [(gi, Poly.monomial(3, (0, 0, 1), CycNum.rational(1, 4), ed.key), (0, 1))], d8.frame
    )
    assert c == want.to_std(d8)


def _run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "skewbrack.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture(scope="module")
def cli_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    (root / "d8.json").write_text(json.dumps(D8_JSON))
    (root / "alpha.json").write_text(
        json.dumps(
            [
                {
                    "support": "g",
                    "poly": "w3",
                    "wedge": [1, 2],
                    "poly_basis": "eigen",
                    "wedge_basis": "eigen",
                }
            ]
        )
    )
    (root / "beta.json").write_text(
        json.dumps([{"support": "h", "poly": "x1^3", "wedge": [2, 3]}])
    )
    (root / "broken.json").write_text("{not json")
    (root / "shear.json").write_text(
        json.dumps(
            {"conductor": 1, "dim": 2, "generators": [[["1", "1"], ["0", "1"]]]}
        )
    )
    (root / "singular.json").write_text(
        json.dumps(
            {"conductor": 1, "dim": 2, "generators": [[["1", "1"], ["1", "1"]]]}
        )
    )
    return root


def test_cli_group_info(cli_files):
    out = _run_cli(["group-info", "--group", "d8.json"], cli_files)
    assert out.returncode == 0
    assert "order 8" in out.stdout
    assert "5 conjugacy classes" in out.stdout


def test_cli_exit_codes(cli_files):
    assert _run_cli(["group-info", "--group", "broken.json"], cli_files).returncode == 2
    assert (
        _run_cli(
            ["--closure-cap", "64", "group-info", "--group", "shear.json"], cli_files
        ).returncode
        == 3
    )
    assert _run_cli(["group-info", "--group", "singular.json"], cli_files).returncode == 3
    out = _run_cli(
        [
            "mu1",
            "--group",
            "d8.json",
            "--cocycle",
            "alpha.json",
            "--left",
            "x1 @ 1",
            "--right",
            "x2 @ 1",
        ],
        cli_files,
    )
    assert out.returncode == 4  # not invariant


def test_cli_bracket_zero_flag(cli_files):
    out = _run_cli(
        [
            "bracket",
            "--group",
            "d8.json",
            "--cocycle",
            "alpha.json",
            "--cocycle",
            "beta.json",
        ],
        cli_files,
    )
    assert out.returncode == 0
    assert "zero in cohomology: True" in out.stdout


def test_cli_bracket_verbose_logs_pairs(cli_files):
    out = _run_cli(
        [
            "--verbosity",
            "2",
            "bracket",
            "--group",
            "d8.json",
            "--cocycle",
            "alpha.json",
            "--cocycle",
            "beta.json",
        ],
        cli_files,
    )
    assert out.returncode == 0
    assert "# pair a=1 b=1" in out.stderr


def test_cli_cohomology_basis_deterministic(cli_files):
    args = [
        "--format",
        "json",
        "cohomology-basis",
        "--group",
        "d8.json",
        "--degree",
        "2",
        "--poly-degree",
        "0",
    ]
    a = _run_cli(args, cli_files)
    b = _run_cli(args, cli_files)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    data = json.loads(a.stdout)
    assert data["dimension"] == 1


def test_cli_hecke_params(cli_files):
    out = _run_cli(["--format", "json", "hecke-params", "--group", "d8.json"], cli_files)
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data["total_dimension"] == 1


def test_cli_square_and_scan(cli_files):
    out = _run_cli(
        [
            "--format",
            "json",
            "poisson-scan",
            "--group",
            "d8.json",
            "--poly-degree",
            "1",
            "--samples",
            "2",
        ],
        cli_files,
    )
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert all(r["square_zero"] for r in data["results"] if r["support"] == "off-kernel")


def test_cli_verify(cli_files):
    out = _run_cli(["--jobs", "2", "verify", "--group", "d8.json"], cli_files)
    assert out.returncode == 0
    assert "all invariants hold" in out.stdout


def test_cli_mu1_success(cli_files):
    basis = _run_cli(
        [
            "--format",
            "json",
            "cohomology-basis",
            "--group",
            "d8.json",
            "--degree",
            "2",
            "--poly-degree",
            "0",
        ],
        cli_files,
    )
    data = json.loads(basis.stdout)
    (cli_files / "const.json").write_text(json.dumps(data["basis"][0]))
    out = _run_cli(
        [
            "--format",
            "json",
            "mu1",
            "--group",
            "d8.json",
            "--cocycle",
            "const.json",
            "--left",
            "x1 @ 1",
            "--right",
            "x2 @ 1",
        ],
        cli_files,
    )
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["constant_parameter"] and payload["poly_degree_shift"] == -2
    assert payload["value"]


def test_cli_scan_finds_kernel_nonzero(cli_files):
    (cli_files / "z2.json").write_text(
        json.dumps(
            {
                "conductor": 2,
                "dim": 3,
                "generators": [[["-1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]]],
            }
        )
    )
    out = _run_cli(
        [
            "--format",
            "json",
            "--jobs",
            "2",
            "poisson-scan",
            "--group",
            "z2.json",
            "--poly-degree",
            "4",
            "--samples",
            "6",
        ],
        cli_files,
    )
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert all(r["square_zero"] for r in data["results"] if r["support"] == "off-kernel")
    assert any(
        not r["square_zero"] for r in data["results"] if r["support"] == "on-kernel"
    )
